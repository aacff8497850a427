#include "netgames/graphgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "netgames/error.hpp"
#include "netgames/rng.hpp"

namespace netgames {

Graph make_reg(std::size_t side) {
  if (side == 0) {
    throw InvalidParameter("make_reg: side must be >= 1");
  }
  Graph g(side * side);
  auto id = [side](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * side + c); };
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      if (c + 1 < side) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < side) {
        g.add_edge(id(r, c), id(r + 1, c));
        if (c + 1 < side) g.add_edge(id(r, c), id(r + 1, c + 1));
        if (c > 0) g.add_edge(id(r, c), id(r + 1, c - 1));
      }
    }
  }
  return g;
}

Graph make_er(std::size_t n, double avg_degree, std::uint64_t seed, std::size_t max_attempts) {
  if (n < 2) {
    throw InvalidParameter("make_er: n must be >= 2");
  }
  if (!(avg_degree > 0.0) || avg_degree > static_cast<double>(n - 1)) {
    throw InvalidParameter("make_er: avg_degree must lie in (0, n-1]");
  }
  const double p = avg_degree / static_cast<double>(n - 1);
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g(n);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        if (uniform_unit(rng) < p) {
          g.add_edge(i, j);
        }
      }
    }
    if (g.is_connected()) {
      return g;
    }
  }
  throw GenerationFailure("make_er: no connected graph after " + std::to_string(max_attempts) +
                          " attempts");
}

Graph make_ba(std::size_t n, std::size_t m, std::size_t m0, std::uint64_t seed) {
  if (m == 0 || m > m0) {
    throw InvalidParameter("make_ba: require 1 <= m <= m0");
  }
  if (n < m0) {
    throw InvalidParameter("make_ba: require n >= m0");
  }
  Graph g(n);
  if (m0 == 2) {
    g.add_edge(0, 1);
  } else if (m0 >= 3) {
    for (NodeId i = 0; i < m0; ++i) {
      g.add_edge(i, static_cast<NodeId>((i + 1) % m0));
    }
  }

  Rng rng(seed);
  std::vector<NodeId> targets;
  std::vector<char> taken(n, 0);
  for (NodeId v = static_cast<NodeId>(m0); v < n; ++v) {
    targets.clear();
    for (std::size_t k = 0; k < m; ++k) {
      std::uint64_t total = 0;
      std::size_t free_nodes = 0;
      for (NodeId u = 0; u < v; ++u) {
        if (!taken[u]) {
          total += g.degree(u);
          ++free_nodes;
        }
      }
      NodeId pick = 0;
      if (total == 0) {
        // No degree mass left (only possible while bootstrapping from m0 < 3).
        std::uint64_t r = uniform_index(rng, free_nodes);
        for (NodeId u = 0; u < v; ++u) {
          if (!taken[u] && r-- == 0) {
            pick = u;
            break;
          }
        }
      } else {
        std::uint64_t r = uniform_index(rng, total);
        for (NodeId u = 0; u < v; ++u) {
          if (taken[u]) continue;
          if (r < g.degree(u)) {
            pick = u;
            break;
          }
          r -= g.degree(u);
        }
      }
      taken[pick] = 1;
      targets.push_back(pick);
    }
    for (NodeId t : targets) {
      g.add_edge(v, t);
      taken[t] = 0;
    }
  }
  return g;
}

Graph make_geo(std::size_t side, double perturbation, std::uint64_t seed) {
  if (side < 2) {
    throw InvalidParameter("make_geo: side must be >= 2");
  }
  if (!(perturbation >= 0.0) || perturbation >= 0.5) {
    throw InvalidParameter("make_geo: perturbation must lie in [0, 0.5)");
  }
  Rng rng(seed);
  std::vector<Point2D> points;
  points.reserve(side * side);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const double x = static_cast<double>(c) + uniform_real(rng, -perturbation, perturbation);
      const double y = static_cast<double>(r) + uniform_real(rng, -perturbation, perturbation);
      points.push_back({x, y});
    }
  }
  Graph g(points.size());
  for (const Edge& e : delaunay(points)) {
    g.add_edge(e.u, e.v);
  }
  g.set_positions(std::move(points));
  return g;
}

// ---------------------------------------------------------------------------
// Delaunay

double orient2d(const Point2D& a, const Point2D& b, const Point2D& c) noexcept {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

double incircle(const Point2D& a, const Point2D& b, const Point2D& c,
                const Point2D& d) noexcept {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  return alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
         clift * (adx * bdy - bdx * ady);
}

namespace {

constexpr NodeId kInfinite = std::numeric_limits<NodeId>::max();

// A triangle with c == kInfinite is a ghost: (a, b) is a hull edge and the
// exterior lies to the left of a -> b.
bool circumcircle_contains(std::span<const Point2D> pts, const Triangle& t, const Point2D& p) {
  const Point2D& a = pts[t.a];
  const Point2D& b = pts[t.b];
  if (t.c != kInfinite) {
    return incircle(a, b, pts[t.c], p) > 0.0;
  }
  const double o = orient2d(a, b, p);
  if (o != 0.0) {
    return o > 0.0;
  }
  // Collinear with the hull edge: inside only on the open segment.
  const double t1 = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  const double t2 = (p.x - b.x) * (a.x - b.x) + (p.y - b.y) * (a.y - b.y);
  return t1 > 0.0 && t2 > 0.0;
}

Triangle with_infinite_last(NodeId u, NodeId v, NodeId w) {
  if (u == kInfinite) return {v, w, u};
  if (v == kInfinite) return {w, u, v};
  return {u, v, w};
}

}  // namespace

std::vector<Triangle> delaunay_triangles(std::span<const Point2D> pts) {
  if (pts.size() < 3) {
    throw InvalidInput("delaunay: need at least 3 points");
  }
  if (pts.size() >= kInfinite) {
    throw InvalidInput("delaunay: too many points");
  }
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidInput("delaunay: non-finite coordinate");
    }
  }

  std::vector<NodeId> order(pts.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId i, NodeId j) {
    return std::pair(pts[i].x, pts[i].y) < std::pair(pts[j].x, pts[j].y);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (pts[order[i]] == pts[order[i - 1]]) {
      throw InvalidInput("delaunay: duplicate point " + std::to_string(order[i]));
    }
  }

  std::size_t third = 2;
  while (third < order.size() && orient2d(pts[order[0]], pts[order[1]], pts[order[third]]) == 0.0) {
    ++third;
  }
  if (third == order.size()) {
    throw InvalidInput("delaunay: all points are collinear");
  }

  NodeId a = order[0], b = order[1], c = order[third];
  if (orient2d(pts[a], pts[b], pts[c]) < 0.0) {
    std::swap(b, c);
  }
  std::vector<Triangle> tris{{a, b, c}, {b, a, kInfinite}, {c, b, kInfinite}, {a, c, kInfinite}};

  std::vector<Triangle> kept;
  std::vector<std::pair<NodeId, NodeId>> cavity_edges;
  std::set<std::pair<NodeId, NodeId>> directed;
  for (std::size_t k = 2; k < order.size(); ++k) {
    if (k == third) continue;
    const NodeId p = order[k];

    kept.clear();
    cavity_edges.clear();
    directed.clear();
    for (const Triangle& t : tris) {
      if (circumcircle_contains(pts, t, pts[p])) {
        for (auto e : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
          cavity_edges.push_back(e);
          directed.insert(e);
        }
      } else {
        kept.push_back(t);
      }
    }
    if (cavity_edges.empty()) {
      throw InvalidInput("delaunay: point " + std::to_string(p) + " not locatable");
    }
    for (const auto& [u, v] : cavity_edges) {
      if (!directed.contains({v, u})) {
        kept.push_back(with_infinite_last(u, v, p));
      }
    }
    tris.swap(kept);
  }

  std::erase_if(tris, [](const Triangle& t) { return t.c == kInfinite; });
  return tris;
}

std::vector<Edge> delaunay(std::span<const Point2D> points) {
  std::set<Edge> edges;
  auto add = [&](NodeId u, NodeId v) { edges.insert({std::min(u, v), std::max(u, v)}); };
  for (const Triangle& t : delaunay_triangles(points)) {
    add(t.a, t.b);
    add(t.b, t.c);
    add(t.c, t.a);
  }
  return {edges.begin(), edges.end()};
}

// ---------------------------------------------------------------------------

TopologySpec TopologySpec::defaults(TopologyKind kind) {
  TopologySpec s;
  s.kind = kind;
  return s;
}

Graph generate(const TopologySpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case TopologyKind::Reg:
      return make_reg(spec.side);
    case TopologyKind::Er:
      return make_er(spec.n, spec.avg_degree, seed);
    case TopologyKind::Ba:
      return make_ba(spec.n, spec.m, spec.m0, seed);
    case TopologyKind::Geo:
      return make_geo(spec.side, spec.perturbation, seed);
  }
  throw InvalidParameter("unknown topology kind");
}

std::string_view to_string(TopologyKind kind) noexcept {
  switch (kind) {
    case TopologyKind::Reg: return "REG";
    case TopologyKind::Er: return "ER";
    case TopologyKind::Ba: return "BA";
    case TopologyKind::Geo: return "GEO";
  }
  return "?";
}

TopologyKind parse_topology(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "reg") return TopologyKind::Reg;
  if (lower == "er") return TopologyKind::Er;
  if (lower == "ba") return TopologyKind::Ba;
  if (lower == "geo") return TopologyKind::Geo;
  throw InvalidParameter("unknown topology '" + std::string(name) + "' (expected reg, er, ba, geo)");
}

}  // namespace netgames
