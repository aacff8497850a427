#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace netgames {

using NodeId = std::uint32_t;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on nodes 0..node_count-1.
///
/// Neighbor lists are kept sorted so that anything iterating them (the game
/// engine in particular) behaves the same whether the graph was generated or
/// loaded from disk.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  /// Adds {a, b}. Returns false if the edge already exists.
  /// Throws InvalidParameter for self-loops and out-of-range ids.
  bool add_edge(NodeId a, NodeId b);

  [[nodiscard]] bool has_edge(NodeId a, NodeId b) const;

  [[nodiscard]] std::size_t node_count() const noexcept { return adjacency_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }
  [[nodiscard]] std::size_t degree(NodeId n) const { return adjacency_[n].size(); }
  [[nodiscard]] std::span<const NodeId> neighbors(NodeId n) const { return adjacency_[n]; }

  /// Edges with u < v in lexicographic order.
  [[nodiscard]] std::vector<Edge> edges() const;

  [[nodiscard]] double average_degree() const noexcept;
  [[nodiscard]] std::vector<std::size_t> degrees() const;
  [[nodiscard]] bool is_connected() const;

  [[nodiscard]] const std::optional<std::vector<Point2D>>& positions() const noexcept {
    return positions_;
  }
  void set_positions(std::vector<Point2D> positions);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
  std::optional<std::vector<Point2D>> positions_;
};

/// Throws InvalidInput if `g` violates a Graph invariant (self-loop,
/// duplicate edge, asymmetric adjacency, bad position count).
void validate(const Graph& g);

}  // namespace netgames
