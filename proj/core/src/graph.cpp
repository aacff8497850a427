#include "netgames/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netgames/error.hpp"

namespace netgames {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

bool Graph::add_edge(NodeId a, NodeId b) {
  if (a == b) {
    throw InvalidParameter("self-loop on node " + std::to_string(a));
  }
  if (a >= node_count() || b >= node_count()) {
    throw InvalidParameter("edge {" + std::to_string(a) + "," + std::to_string(b) +
                           "} out of range for " + std::to_string(node_count()) + " nodes");
  }
  auto& na = adjacency_[a];
  auto it = std::lower_bound(na.begin(), na.end(), b);
  if (it != na.end() && *it == b) {
    return false;
  }
  na.insert(it, b);
  auto& nb = adjacency_[b];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  ++edge_count_;
  return true;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a >= node_count() || b >= node_count()) {
    return false;
  }
  const auto& na = adjacency_[a];
  return std::binary_search(na.begin(), na.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) {
        out.push_back({u, v});
      }
    }
  }
  return out;
}

double Graph::average_degree() const noexcept {
  if (adjacency_.empty()) {
    return 0.0;
  }
  return 2.0 * static_cast<double>(edge_count_) / static_cast<double>(node_count());
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out;
  out.reserve(node_count());
  for (const auto& nbrs : adjacency_) {
    out.push_back(nbrs.size());
  }
  return out;
}

bool Graph::is_connected() const {
  if (node_count() <= 1) {
    return true;
  }
  std::vector<char> seen(node_count(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    for (NodeId m : adjacency_[n]) {
      if (!seen[m]) {
        seen[m] = 1;
        ++reached;
        stack.push_back(m);
      }
    }
  }
  return reached == node_count();
}

void Graph::set_positions(std::vector<Point2D> positions) {
  if (positions.size() != node_count()) {
    throw InvalidParameter("expected " + std::to_string(node_count()) + " positions, got " +
                           std::to_string(positions.size()));
  }
  positions_ = std::move(positions);
}

void validate(const Graph& g) {
  std::size_t half_edges = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nbrs = g.neighbors(u);
    half_edges += nbrs.size();
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeId v = nbrs[i];
      if (v >= g.node_count()) {
        throw InvalidInput("neighbor id out of range at node " + std::to_string(u));
      }
      if (v == u) {
        throw InvalidInput("self-loop at node " + std::to_string(u));
      }
      if (i > 0 && nbrs[i - 1] >= v) {
        throw InvalidInput("duplicate or unsorted neighbor at node " + std::to_string(u));
      }
      if (!g.has_edge(v, u)) {
        throw InvalidInput("asymmetric adjacency between " + std::to_string(u) + " and " +
                           std::to_string(v));
      }
    }
  }
  if (half_edges != 2 * g.edge_count()) {
    throw InvalidInput("edge count does not match adjacency");
  }
  if (const auto& pos = g.positions()) {
    if (pos->size() != g.node_count()) {
      throw InvalidInput("position count does not match node count");
    }
    for (const auto& p : *pos) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw InvalidInput("non-finite node position");
      }
    }
  }
}

}  // namespace netgames
