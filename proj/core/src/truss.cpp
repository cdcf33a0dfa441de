#include "atc/truss.hpp"

#include <algorithm>
#include <stdexcept>

#include "atc/errors.hpp"

namespace atc {

SupportMap compute_supports(const Subgraph& h) {
  SupportMap sup(h.graph().num_edges(), 0);
  for (EdgeId e = 0; e < sup.size(); ++e) {
    if (!h.has_edge(e)) continue;
    std::uint32_t c = 0;
    h.for_each_triangle(e, [&](VertexId, EdgeId, EdgeId) { ++c; });
    sup[e] = c;
  }
  return sup;
}

TrussnessMap truss_decompose(const Subgraph& h) {
  const Graph& g = h.graph();
  TrussnessMap out;
  out.edge.assign(g.num_edges(), 0);
  out.vertex.assign(g.num_vertices(), 0);

  SupportMap sup = compute_supports(h);
  std::vector<EdgeId> live = h.edges();
  if (live.empty()) return out;

  std::uint32_t max_sup = 0;
  for (auto e : live) max_sup = std::max(max_sup, sup[e]);

  // Bin sort by support; within a bin, edges keep ascending id order.
  std::vector<std::size_t> bin(max_sup + 2, 0);
  for (auto e : live) ++bin[sup[e] + 1];
  for (std::size_t s = 1; s < bin.size(); ++s) bin[s] += bin[s - 1];
  std::vector<EdgeId> sorted(live.size());
  std::vector<std::size_t> pos(g.num_edges(), 0);
  {
    std::vector<std::size_t> fill(bin.begin(), bin.end() - 1);
    for (auto e : live) {
      pos[e] = fill[sup[e]]++;
      sorted[pos[e]] = e;
    }
  }

  std::vector<std::uint8_t> done(g.num_edges(), 0);
  auto decrement = [&](EdgeId x) {
    const std::uint32_t sx = sup[x];
    const std::size_t px = pos[x];
    const std::size_t pw = bin[sx];
    const EdgeId w = sorted[pw];
    if (w != x) {
      sorted[px] = w;
      pos[w] = px;
      sorted[pw] = x;
      pos[x] = pw;
    }
    ++bin[sx];
    --sup[x];
  };

  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const EdgeId e = sorted[i];
    const std::uint32_t s = sup[e];
    out.edge[e] = s + 2;
    h.for_each_triangle(e, [&](VertexId, EdgeId e1, EdgeId e2) {
      if (done[e1] || done[e2]) return;
      if (sup[e1] > s) decrement(e1);
      if (sup[e2] > s) decrement(e2);
    });
    done[e] = 1;
  }

  for (auto e : live) {
    auto [u, v] = g.endpoints(e);
    out.vertex[u] = std::max(out.vertex[u], out.edge[e]);
    out.vertex[v] = std::max(out.vertex[v], out.edge[e]);
    out.max_trussness = std::max(out.max_trussness, out.edge[e]);
  }
  return out;
}

TrussnessMap truss_decompose(const Graph& g) { return truss_decompose(Subgraph(g)); }

std::string_view to_string(TrussStatus s) {
  switch (s) {
    case TrussStatus::kOk:
      return "ok";
    case TrussStatus::kQueryNodePruned:
      return "query node pruned";
    case TrussStatus::kQueryDisconnected:
      return "query nodes disconnected";
  }
  return "unknown";
}

KdTruss::KdTruss(Subgraph h, std::vector<VertexId> query, std::uint32_t k, std::uint32_t d)
    : h_(std::move(h)), query_(std::move(query)), k_(k), d_(d) {
  if (query_.empty()) throw std::invalid_argument("query node set is empty");
  if (k_ < 2) throw std::invalid_argument("k must be at least 2");
  std::sort(query_.begin(), query_.end());
  query_.erase(std::unique(query_.begin(), query_.end()), query_.end());
  for (auto q : query_)
    if (q >= h_.graph().num_vertices()) throw std::out_of_range("query node id out of range");
  support_ = compute_supports(h_);
}

bool KdTruss::query_alive() const {
  return std::all_of(query_.begin(), query_.end(), [&](VertexId q) { return h_.has_vertex(q); });
}

void KdTruss::remove_edge(EdgeId e) {
  if (!h_.has_edge(e)) return;
  const std::uint32_t need = k_ - 2;
  h_.for_each_triangle(e, [&](VertexId, EdgeId e1, EdgeId e2) {
    if (support_[e1]-- == need) pending_.push_back(e1);
    if (support_[e2]-- == need) pending_.push_back(e2);
  });
  support_[e] = 0;
  h_.remove_edge(e);
}

void KdTruss::remove_vertex(VertexId v) {
  if (!h_.has_vertex(v)) return;
  for (auto e : h_.graph().incident_edges(v)) remove_edge(e);
  h_.remove_vertex(v);
}

TrussStatus KdTruss::maintain() {
  const std::uint32_t need = k_ - 2;
  const auto n = h_.graph().num_vertices();
  for (EdgeId e = 0; e < support_.size(); ++e)
    if (h_.has_edge(e) && support_[e] < need) pending_.push_back(e);

  while (true) {
    while (!pending_.empty()) {
      const EdgeId e = pending_.back();
      pending_.pop_back();
      if (h_.has_edge(e) && support_[e] < need) remove_edge(e);
    }
    for (VertexId v = 0; v < n; ++v)
      if (h_.has_vertex(v) && h_.degree(v) == 0) h_.remove_vertex(v);
    if (!query_alive()) return status_ = TrussStatus::kQueryNodePruned;

    auto dist = query_distance(h_, query_);
    for (auto q : query_)
      if (dist.per_vertex[q] == kInfinity) return status_ = TrussStatus::kQueryDisconnected;

    bool removed = false;
    for (VertexId v = 0; v < n; ++v) {
      if (h_.has_vertex(v) && dist.per_vertex[v] > d_) {
        remove_vertex(v);
        removed = true;
      }
    }
    if (!query_alive()) return status_ = TrussStatus::kQueryNodePruned;
    if (!removed && pending_.empty()) return status_ = TrussStatus::kOk;
  }
}

TrussStatus maintain_kd_truss(Subgraph& h, std::span<const VertexId> query, std::uint32_t k, std::uint32_t d) {
  KdTruss t(h, {query.begin(), query.end()}, k, d);
  for (auto q : t.query())
    if (!h.has_vertex(q)) return TrussStatus::kQueryNodePruned;
  auto status = t.maintain();
  h = t.subgraph();
  return status;
}

KdTruss maximal_kd_truss(const Subgraph& region, std::span<const VertexId> query, std::uint32_t k,
                         std::uint32_t d) {
  for (auto q : query)
    if (q >= region.graph().num_vertices()) throw std::out_of_range("query node id out of range");
  auto dist = query_distance(region, query);
  // Query nodes already apart: skip the distance ball so maintenance can say so.
  const bool apart = std::any_of(query.begin(), query.end(), [&](VertexId q) {
    return region.has_vertex(q) && dist.per_vertex[q] == kInfinity;
  });
  if (apart) {
    KdTruss t(region, {query.begin(), query.end()}, k, d);
    t.maintain();
    return t;
  }
  std::vector<VertexId> ball;
  for (VertexId v = 0; v < dist.per_vertex.size(); ++v)
    if (region.has_vertex(v) && dist.per_vertex[v] <= d) ball.push_back(v);
  std::vector<EdgeId> edges;
  for (auto e : region.edges()) {
    auto [u, v] = region.graph().endpoints(e);
    if (dist.per_vertex[u] <= d && dist.per_vertex[v] <= d) edges.push_back(e);
  }
  KdTruss t(Subgraph(region.graph(), ball, edges), {query.begin(), query.end()}, k, d);
  t.maintain();
  return t;
}

KdTruss maximal_kd_truss(const Graph& g, std::span<const VertexId> query, std::uint32_t k, std::uint32_t d) {
  return maximal_kd_truss(Subgraph(g), query, k, d);
}

MaxTrussResult max_trussness_connecting(const Subgraph& h, std::span<const VertexId> query) {
  if (query.empty()) throw std::invalid_argument("query node set is empty");
  const Graph& g = h.graph();
  for (auto q : query)
    if (q >= g.num_vertices() || !h.has_vertex(q)) throw NoFeasibleCommunity("query node not in graph");
  TrussnessMap tm = truss_decompose(h);

  std::vector<std::uint32_t> levels;
  for (auto e : h.edges()) levels.push_back(tm.edge[e]);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  for (auto k : levels) {
    if (tm.vertex[query.front()] < k) continue;
    std::vector<std::uint8_t> seen(g.num_vertices(), 0);
    std::vector<VertexId> comp{query.front()};
    seen[query.front()] = 1;
    std::vector<EdgeId> comp_edges;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      h.for_each_neighbor(comp[head], [&](VertexId y, EdgeId e) {
        if (tm.edge[e] < k) return;
        if (!seen[y]) {
          seen[y] = 1;
          comp.push_back(y);
        }
      });
    }
    if (!std::all_of(query.begin(), query.end(), [&](VertexId q) { return seen[q] != 0; })) continue;
    for (auto e : h.edges()) {
      auto [u, v] = g.endpoints(e);
      if (tm.edge[e] >= k && seen[u] && seen[v]) comp_edges.push_back(e);
    }
    std::sort(comp.begin(), comp.end());
    return {k, Subgraph(g, comp, comp_edges)};
  }
  throw NoFeasibleCommunity("query nodes are not connected by any truss");
}

MaxTrussResult max_trussness_connecting(const Graph& g, std::span<const VertexId> query) {
  return max_trussness_connecting(Subgraph(g), query);
}

std::uint32_t diameter(const Subgraph& h) {
  std::uint32_t best = 0;
  for (auto v : h.vertices()) {
    auto d = bfs_distances(h, v);
    for (auto u : h.vertices()) {
      if (d[u] == kInfinity) return kInfinity;
      best = std::max(best, d[u]);
    }
  }
  return best;
}

}  // namespace atc
