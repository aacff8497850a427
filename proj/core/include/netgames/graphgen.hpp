#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netgames/graph.hpp"

namespace netgames {

/// side x side non-periodic Moore lattice (8-neighborhood).
Graph make_reg(std::size_t side);

/// Erdős–Rényi G(n, p) with p = avg_degree / (n - 1), redrawn until
/// connected. Throws GenerationFailure after `max_attempts` draws.
Graph make_er(std::size_t n, double avg_degree, std::uint64_t seed,
              std::size_t max_attempts = 10'000);

/// Barabási–Albert growth from an m0-node ring; every new node attaches m
/// edges to distinct existing nodes chosen with probability proportional to
/// degree.
Graph make_ba(std::size_t n, std::size_t m, std::size_t m0, std::uint64_t seed);

/// Delaunay graph of a side x side integer grid whose coordinates are
/// displaced independently by U[-perturbation, +perturbation]. Node positions
/// are attached to the returned graph.
Graph make_geo(std::size_t side, double perturbation, std::uint64_t seed);

struct Triangle {
  NodeId a, b, c;  // counter-clockwise
};

/// Delaunay triangulation by Bowyer–Watson insertion.
///
/// Points are inserted in lexicographic order. The hull is closed with a
/// single symbolic vertex at infinity instead of a finite super-triangle.
/// Cocircular configurations (in-circle determinant exactly zero) count as
/// "outside", so a degenerate quadrilateral keeps whichever diagonal exists
/// when its lexicographically last point is inserted.
///
/// Throws InvalidInput for fewer than 3 points, duplicate points, or an
/// all-collinear set.
std::vector<Triangle> delaunay_triangles(std::span<const Point2D> points);

/// Edge set (u < v, sorted) of the Delaunay triangulation.
std::vector<Edge> delaunay(std::span<const Point2D> points);

/// Twice the signed area of (a, b, c); positive when counter-clockwise.
double orient2d(const Point2D& a, const Point2D& b, const Point2D& c) noexcept;

/// Positive when d lies strictly inside the circumcircle of the
/// counter-clockwise triangle (a, b, c).
double incircle(const Point2D& a, const Point2D& b, const Point2D& c,
                const Point2D& d) noexcept;

// ---------------------------------------------------------------------------
// Topology descriptors shared by the batch runner and the CLI.

enum class TopologyKind : std::uint8_t { Reg = 0, Er = 1, Ba = 2, Geo = 3 };

struct TopologySpec {
  TopologyKind kind = TopologyKind::Reg;
  std::size_t side = 5;          // REG, GEO
  std::size_t n = 25;            // ER, BA
  double avg_degree = 5.0;       // ER
  std::size_t m = 2;             // BA
  std::size_t m0 = 3;            // BA
  double perturbation = 0.25;    // GEO

  static TopologySpec defaults(TopologyKind kind);
};

/// Builds the graph described by `spec`. REG ignores the seed.
Graph generate(const TopologySpec& spec, std::uint64_t seed);

std::string_view to_string(TopologyKind kind) noexcept;      // "REG", "ER", ...
TopologyKind parse_topology(std::string_view name);          // case-insensitive

inline constexpr TopologyKind kAllTopologies[] = {TopologyKind::Reg, TopologyKind::Er,
                                                  TopologyKind::Ba, TopologyKind::Geo};

}  // namespace netgames
