#include "fdsched/contention.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace fdsched {

ContentionGraph ContentionGraph::from_edges(std::vector<FlowId> vertices,
                                            std::span<const std::pair<FlowId, FlowId>> edges) {
  ContentionGraph g;
  g.vertices_ = std::move(vertices);
  g.adj_.assign(g.vertices_.size(), {});
  for (const auto& [a, b] : edges) {
    const std::size_t ia = g.index_of(a);
    const std::size_t ib = g.index_of(b);
    if (ia == g.size() || ib == g.size())
      throw std::invalid_argument("ContentionGraph: edge references an unknown vertex");
    if (ia == ib) continue;
    if (std::find(g.adj_[ia].begin(), g.adj_[ia].end(), ib) != g.adj_[ia].end()) continue;
    g.adj_[ia].push_back(ib);
    g.adj_[ib].push_back(ia);
  }
  for (auto& n : g.adj_) std::sort(n.begin(), n.end());
  return g;
}

std::size_t ContentionGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& n : adj_) twice += n.size();
  return twice / 2;
}

std::size_t ContentionGraph::index_of(FlowId f) const {
  return static_cast<std::size_t>(std::find(vertices_.begin(), vertices_.end(), f) -
                                  vertices_.begin());
}

bool ContentionGraph::adjacent(FlowId a, FlowId b) const {
  const std::size_t ia = index_of(a);
  const std::size_t ib = index_of(b);
  if (ia == size() || ib == size()) return false;
  return std::binary_search(adj_[ia].begin(), adj_[ia].end(), ib);
}

void ContentionGraph::write_edge_list(std::ostream& out) const {
  std::vector<std::pair<FlowId, FlowId>> edges;
  for (std::size_t v = 0; v < size(); ++v)
    for (std::size_t w : adj_[v]) {
      const FlowId a = vertices_[v], b = vertices_[w];
      if (a < b) edges.emplace_back(a, b);
    }
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) out << a << ' ' << b << '\n';
}

ContentionGraph build_graph(std::span<const Flow> flows) {
  std::vector<FlowId> vertices;
  std::vector<std::pair<FlowId, FlowId>> edges;
  for (const auto& f : flows) vertices.push_back(f.id);
  for (std::size_t a = 0; a < flows.size(); ++a)
    for (std::size_t b = a + 1; b < flows.size(); ++b)
      if (conflicts(flows[a], flows[b])) edges.emplace_back(flows[a].id, flows[b].id);
  return ContentionGraph::from_edges(std::move(vertices), edges);
}

MisResult min_degree_mis(const ContentionGraph& g, std::span<const std::int64_t> xi) {
  const std::size_t n = g.size();
  for (FlowId f : g.vertices())
    if (f >= xi.size()) throw std::invalid_argument("min_degree_mis: xi missing for a vertex");

  std::vector<bool> live(n, true);
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = g.degree(v);

  MisResult out;
  std::vector<bool> chosen(n, false);
  for (std::size_t remaining = n; remaining > 0;) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!live[v]) continue;
      if (best == n) {
        best = v;
        continue;
      }
      const auto key_v = std::tuple(degree[v], xi[g.vertices()[v]], g.vertices()[v]);
      const auto key_b = std::tuple(degree[best], xi[g.vertices()[best]], g.vertices()[best]);
      if (key_v < key_b) best = v;
    }
    chosen[best] = true;
    out.selected.push_back(g.vertices()[best]);
    std::vector<std::size_t> doomed{best};
    for (std::size_t w : g.neighbors(best))
      if (live[w]) doomed.push_back(w);
    for (std::size_t v : doomed) live[v] = false;
    for (std::size_t v : doomed)
      for (std::size_t w : g.neighbors(v))
        if (live[w]) --degree[w];
    remaining -= doomed.size();
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!chosen[v]) out.remainder.push_back(g.vertices()[v]);
  return out;
}

bool is_independent(const ContentionGraph& g, std::span<const FlowId> set) {
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b)
      if (set[a] == set[b] || g.adjacent(set[a], set[b])) return false;
  return true;
}

bool is_maximal_independent(const ContentionGraph& g, std::span<const FlowId> set) {
  if (!is_independent(g, set)) return false;
  for (FlowId v : g.vertices()) {
    if (std::find(set.begin(), set.end(), v) != set.end()) continue;
    bool covered = false;
    for (FlowId s : set)
      if (g.adjacent(v, s)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

}  // namespace fdsched
