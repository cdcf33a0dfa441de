#include "atc/subgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace atc {

Subgraph::Subgraph(const Graph& g)
    : graph_(&g),
      vertex_alive_(g.num_vertices(), 1),
      edge_alive_(g.num_edges(), 1),
      degree_(g.num_vertices()),
      n_(g.num_vertices()),
      m_(g.num_edges()) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) degree_[v] = static_cast<std::uint32_t>(g.degree(v));
}

Subgraph::Subgraph(const Graph& g, std::span<const VertexId> vertices)
    : graph_(&g), vertex_alive_(g.num_vertices(), 0), edge_alive_(g.num_edges(), 0), degree_(g.num_vertices(), 0) {
  for (auto v : vertices) {
    if (v >= g.num_vertices()) throw std::out_of_range("vertex id out of range");
    if (!vertex_alive_[v]) {
      vertex_alive_[v] = 1;
      ++n_;
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (vertex_alive_[u] && vertex_alive_[v]) {
      edge_alive_[e] = 1;
      ++degree_[u];
      ++degree_[v];
      ++m_;
    }
  }
}

Subgraph::Subgraph(const Graph& g, std::span<const VertexId> vertices, std::span<const EdgeId> edges)
    : graph_(&g), vertex_alive_(g.num_vertices(), 0), edge_alive_(g.num_edges(), 0), degree_(g.num_vertices(), 0) {
  for (auto v : vertices) {
    if (v >= g.num_vertices()) throw std::out_of_range("vertex id out of range");
    if (!vertex_alive_[v]) {
      vertex_alive_[v] = 1;
      ++n_;
    }
  }
  for (auto e : edges) {
    if (e >= g.num_edges()) throw std::out_of_range("edge id out of range");
    auto [u, v] = g.endpoints(e);
    if (!vertex_alive_[u] || !vertex_alive_[v]) throw std::invalid_argument("edge endpoint not in vertex set");
    if (!edge_alive_[e]) {
      edge_alive_[e] = 1;
      ++degree_[u];
      ++degree_[v];
      ++m_;
    }
  }
}

std::vector<VertexId> Subgraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(n_);
  for (VertexId v = 0; v < vertex_alive_.size(); ++v)
    if (vertex_alive_[v]) out.push_back(v);
  return out;
}

std::vector<EdgeId> Subgraph::edges() const {
  std::vector<EdgeId> out;
  out.reserve(m_);
  for (EdgeId e = 0; e < edge_alive_.size(); ++e)
    if (edge_alive_[e]) out.push_back(e);
  return out;
}

void Subgraph::remove_edge(EdgeId e) {
  if (!edge_alive_[e]) return;
  edge_alive_[e] = 0;
  auto [u, v] = graph_->endpoints(e);
  --degree_[u];
  --degree_[v];
  --m_;
  removed_edges_.push_back(e);
}

void Subgraph::remove_vertex(VertexId v) {
  if (!vertex_alive_[v]) return;
  auto es = graph_->incident_edges(v);
  for (auto e : es) remove_edge(e);
  vertex_alive_[v] = 0;
  --n_;
  removed_vertices_.push_back(v);
}

Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) { return Subgraph(g, vertices); }

Subgraph project_on_attribute(const Graph& g, AttributeId w) {
  if (w >= g.num_attributes()) throw std::out_of_range("unknown attribute id");
  return Subgraph(g, g.holders(w));
}

std::vector<std::uint32_t> bfs_distances(const Subgraph& h, VertexId source) {
  std::vector<std::uint32_t> dist(h.graph().num_vertices(), kInfinity);
  if (!h.has_vertex(source)) return dist;
  std::vector<VertexId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId x = queue[head];
    h.for_each_neighbor(x, [&](VertexId y, EdgeId) {
      if (dist[y] == kInfinity) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    });
  }
  return dist;
}

QueryDistances query_distance(const Subgraph& h, std::span<const VertexId> query) {
  QueryDistances out;
  const auto n = h.graph().num_vertices();
  out.per_vertex.assign(n, 0);
  for (VertexId v = 0; v < n; ++v)
    if (!h.has_vertex(v)) out.per_vertex[v] = kInfinity;
  for (auto q : query) {
    auto d = bfs_distances(h, q);
    for (VertexId v = 0; v < n; ++v) out.per_vertex[v] = std::max(out.per_vertex[v], d[v]);
  }
  out.graph_distance = 0;
  for (VertexId v = 0; v < n; ++v)
    if (h.has_vertex(v)) out.graph_distance = std::max(out.graph_distance, out.per_vertex[v]);
  return out;
}

bool is_connected(const Subgraph& h) {
  if (h.num_vertices() <= 1) return true;
  VertexId start = 0;
  while (!h.has_vertex(start)) ++start;
  auto d = bfs_distances(h, start);
  for (VertexId v = 0; v < d.size(); ++v)
    if (h.has_vertex(v) && d[v] == kInfinity) return false;
  return true;
}

}  // namespace atc
