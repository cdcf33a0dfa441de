#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "atc/graph.hpp"

namespace atc {

/// Mutable view of a parent Graph: a live vertex set and a live edge set, with
/// every live edge having both endpoints live. Deletions are appended to a log
/// so earlier states can be replayed.
class Subgraph {
 public:
  /// Whole graph.
  explicit Subgraph(const Graph& g);
  /// Induced subgraph G[S]. Throws std::out_of_range on bad ids.
  Subgraph(const Graph& g, std::span<const VertexId> vertices);
  /// Explicit vertex and edge sets; edges must join listed vertices.
  Subgraph(const Graph& g, std::span<const VertexId> vertices, std::span<const EdgeId> edges);

  const Graph& graph() const { return *graph_; }

  bool has_vertex(VertexId v) const { return vertex_alive_[v] != 0; }
  bool has_edge(EdgeId e) const { return edge_alive_[e] != 0; }
  std::uint32_t degree(VertexId v) const { return degree_[v]; }
  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return m_; }
  bool empty() const { return n_ == 0; }

  /// Sorted live vertex ids.
  std::vector<VertexId> vertices() const;
  /// Sorted live edge ids.
  std::vector<EdgeId> edges() const;

  /// Calls f(neighbor, edge) for every live incident edge of v.
  template <class F>
  void for_each_neighbor(VertexId v, F&& f) const {
    auto nb = graph_->neighbors(v);
    auto es = graph_->incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (edge_alive_[es[i]]) f(nb[i], es[i]);
  }

  /// Calls f(w, e_uw, e_vw) for every triangle {u,v,w} whose three edges are
  /// live, where e = (u,v) is live.
  template <class F>
  void for_each_triangle(EdgeId e, F&& f) const {
    auto [u, v] = graph_->endpoints(e);
    auto nu = graph_->neighbors(u), nv = graph_->neighbors(v);
    auto eu = graph_->incident_edges(u), ev = graph_->incident_edges(v);
    std::size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
      if (nu[i] < nv[j]) {
        ++i;
      } else if (nu[i] > nv[j]) {
        ++j;
      } else {
        if (edge_alive_[eu[i]] && edge_alive_[ev[j]]) f(nu[i], eu[i], ev[j]);
        ++i;
        ++j;
      }
    }
  }

  void remove_edge(EdgeId e);
  /// Removes v together with its live incident edges.
  void remove_vertex(VertexId v);

  /// Deletion log, in order of removal.
  const std::vector<VertexId>& removed_vertices() const { return removed_vertices_; }
  const std::vector<EdgeId>& removed_edges() const { return removed_edges_; }

 private:
  const Graph* graph_;
  std::vector<std::uint8_t> vertex_alive_;
  std::vector<std::uint8_t> edge_alive_;
  std::vector<std::uint32_t> degree_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<VertexId> removed_vertices_;
  std::vector<EdgeId> removed_edges_;
};

/// G[S]: edges of g with both endpoints in S.
Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

/// G_w: the subgraph induced by the holders of attribute w.
Subgraph project_on_attribute(const Graph& g, AttributeId w);

struct QueryDistances {
  /// Per parent vertex: max hop distance to a query node inside h; kInfinity
  /// for unreachable or non-live vertices.
  std::vector<std::uint32_t> per_vertex;
  /// Max over live vertices; kInfinity if any live vertex is unreachable.
  std::uint32_t graph_distance = 0;
};

/// dist_h(v, V_q) for every v, by one BFS per query node.
QueryDistances query_distance(const Subgraph& h, std::span<const VertexId> query);

/// Hop distances from `source` inside h (kInfinity when unreachable).
std::vector<std::uint32_t> bfs_distances(const Subgraph& h, VertexId source);

/// True when every live vertex is reachable from every other.
bool is_connected(const Subgraph& h);

}  // namespace atc
