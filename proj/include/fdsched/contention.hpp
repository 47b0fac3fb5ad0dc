// Full-duplex contention graph and the minimum-degree greedy independent set.
#ifndef FDSCHED_CONTENTION_HPP
#define FDSCHED_CONTENTION_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "fdsched/network.hpp"

namespace fdsched {

/// Two flows conflict when they share a transmitting station or a receiving
/// station. A station may be the transmitter of one flow and the receiver of
/// another in the same slot.
inline bool conflicts(const Flow& a, const Flow& b) { return a.tx == b.tx || a.rx == b.rx; }

class ContentionGraph {
 public:
  ContentionGraph() = default;

  /// Graph over explicit vertex labels; each edge is a pair of labels.
  /// Self-loops and duplicate edges are ignored.
  static ContentionGraph from_edges(std::vector<FlowId> vertices,
                                    std::span<const std::pair<FlowId, FlowId>> edges);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<FlowId>& vertices() const { return vertices_; }

  /// Neighbors of the vertex at position `v` (positions, not labels).
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }
  std::size_t edge_count() const;

  bool adjacent(FlowId a, FlowId b) const;

  /// Position of a label, or size() if absent.
  std::size_t index_of(FlowId f) const;

  /// Edge list, one "u v" line per edge with u < v, sorted.
  void write_edge_list(std::ostream& out) const;

 private:
  std::vector<FlowId> vertices_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Edge (a, b) iff conflicts(a, b). Vertex labels are the flow ids.
ContentionGraph build_graph(std::span<const Flow> flows);

struct MisResult {
  std::vector<FlowId> selected;   ///< in selection order
  std::vector<FlowId> remainder;  ///< vertex order of the graph
};

/// Minimum-degree greedy: repeatedly take the vertex of least residual
/// degree (ties: smaller xi, then smaller label), then delete it and its
/// neighbors. `xi` is indexed by vertex label.
///
/// O(V^2 + E): each round scans the live vertices and decrements degrees
/// of the deleted vertices' neighbors.
MisResult min_degree_mis(const ContentionGraph& graph, std::span<const std::int64_t> xi);

/// True if no two labels in `set` are adjacent.
bool is_independent(const ContentionGraph& graph, std::span<const FlowId> set);

/// True if every vertex outside `set` has a neighbor inside it.
bool is_maximal_independent(const ContentionGraph& graph, std::span<const FlowId> set);

}  // namespace fdsched

#endif  // FDSCHED_CONTENTION_HPP
