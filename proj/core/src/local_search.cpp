#include "atc/local_search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "atc/errors.hpp"
#include "atc/score.hpp"
#include "atc/truss.hpp"

namespace atc {
namespace {

void require_same_graph(const Graph& g, const ATIndex& idx) {
  if (idx.num_vertices() != g.num_vertices() || idx.num_edges() != g.num_edges())
    throw std::invalid_argument("index does not describe this graph");
}

std::int64_t shortfall(const ATIndex& idx, EdgeId e, std::span<const AttributeId> attrs) {
  const std::int64_t top = idx.tau_max();
  std::int64_t s = top - idx.structural_edge(e);
  for (auto w : attrs) {
    auto t = idx.attribute_edge(w, e);
    s += top - (t == kNotInProjection ? 2 : static_cast<std::int64_t>(t));
  }
  return s;
}

struct ShortestPaths {
  std::vector<std::int64_t> dist;
  std::vector<std::uint32_t> hops;
  std::vector<EdgeId> pred_edge;
  std::vector<VertexId> pred;
};

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

// Dijkstra ordered by (weight, hop count, vertex id); equal labels keep the
// smaller predecessor id.
ShortestPaths dijkstra(const Graph& g, const EdgeWeighting& w, VertexId src) {
  const std::size_t n = g.num_vertices();
  ShortestPaths sp{std::vector<std::int64_t>(n, kUnreached), std::vector<std::uint32_t>(n, kInfinity),
                   std::vector<EdgeId>(n, 0), std::vector<VertexId>(n, kInfinity)};
  using Item = std::tuple<std::int64_t, std::uint32_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  sp.dist[src] = 0;
  sp.hops[src] = 0;
  pq.emplace(0, 0, src);
  std::vector<std::uint8_t> done(n, 0);
  while (!pq.empty()) {
    auto [d, h, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    auto nb = g.neighbors(u);
    auto es = g.incident_edges(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const VertexId v = nb[i];
      if (done[v]) continue;
      const std::int64_t nd = d + w.scaled(es[i]);
      const std::uint32_t nh = h + 1;
      const auto cand = std::make_tuple(nd, nh, u);
      const auto cur = std::make_tuple(sp.dist[v], sp.hops[v], sp.pred[v]);
      if (cand < cur) {
        sp.dist[v] = nd;
        sp.hops[v] = nh;
        sp.pred[v] = u;
        sp.pred_edge[v] = es[i];
        pq.emplace(nd, nh, v);
      }
    }
  }
  return sp;
}

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

EdgeWeighting::EdgeWeighting(const ATIndex& idx, std::span<const AttributeId> query_attrs, const Rational& gamma)
    : scaled_(idx.num_edges()), scale_(gamma.den()) {
  if (gamma < Rational(0)) throw std::invalid_argument("gamma must be non-negative");
  for (auto w : query_attrs)
    if (w >= idx.num_attributes()) throw std::out_of_range("unknown query attribute id");
  for (EdgeId e = 0; e < idx.num_edges(); ++e)
    scaled_[e] = gamma.den() + gamma.num() * shortfall(idx, e, query_attrs);
}

Rational attribute_truss_distance(const ATIndex& idx, EdgeId e, std::span<const AttributeId> query_attrs,
                                  const Rational& gamma) {
  return Rational(1) + gamma * Rational(shortfall(idx, e, query_attrs));
}

SteinerSeed steiner_seed(const Graph& g, const EdgeWeighting& w, std::span<const VertexId> terminals) {
  std::vector<VertexId> term(terminals.begin(), terminals.end());
  std::sort(term.begin(), term.end());
  term.erase(std::unique(term.begin(), term.end()), term.end());
  if (term.empty()) throw std::invalid_argument("query node set is empty");
  for (auto t : term)
    if (t >= g.num_vertices()) throw std::out_of_range("unknown query node");
  if (term.size() == 1) return {term, {}, Rational(0)};

  const std::size_t l = term.size();
  std::vector<ShortestPaths> sp;
  sp.reserve(l);
  for (auto t : term) sp.push_back(dijkstra(g, w, t));
  for (std::size_t j = 1; j < l; ++j)
    if (sp[0].dist[term[j]] == kUnreached) throw NoFeasibleCommunity("query nodes are disconnected");

  // Prim over the terminal metric closure.
  std::vector<std::uint8_t> in_tree(l, 0);
  std::vector<std::int64_t> best(l, kUnreached);
  std::vector<std::size_t> link(l, 0);
  best[0] = 0;
  std::vector<std::pair<std::size_t, std::size_t>> closure_edges;
  for (std::size_t round = 0; round < l; ++round) {
    std::size_t pick = l;
    for (std::size_t i = 0; i < l; ++i)
      if (!in_tree[i] && (pick == l || best[i] < best[pick])) pick = i;
    in_tree[pick] = 1;
    if (round > 0) closure_edges.emplace_back(link[pick], pick);
    for (std::size_t i = 0; i < l; ++i) {
      if (in_tree[i]) continue;
      const auto d = sp[pick].dist[term[i]];
      if (d < best[i]) {
        best[i] = d;
        link[i] = pick;
      }
    }
  }

  // Expand closure edges into shortest paths.
  std::vector<EdgeId> union_edges;
  for (auto [a, b] : closure_edges) {
    for (VertexId v = term[b]; v != term[a]; v = sp[a].pred[v]) union_edges.push_back(sp[a].pred_edge[v]);
  }
  std::sort(union_edges.begin(), union_edges.end());
  union_edges.erase(std::unique(union_edges.begin(), union_edges.end()), union_edges.end());

  // Spanning tree of the union, then strip non-terminal leaves.
  std::sort(union_edges.begin(), union_edges.end(), [&](EdgeId x, EdgeId y) {
    return std::make_pair(w.scaled(x), x) < std::make_pair(w.scaled(y), y);
  });
  Dsu dsu(g.num_vertices());
  std::vector<EdgeId> tree;
  for (auto e : union_edges) {
    auto [u, v] = g.endpoints(e);
    if (dsu.unite(u, v)) tree.push_back(e);
  }

  std::vector<std::uint8_t> is_term(g.num_vertices(), 0);
  for (auto t : term) is_term[t] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::uint32_t> deg(g.num_vertices(), 0);
    for (auto e : tree) {
      auto [u, v] = g.endpoints(e);
      ++deg[u];
      ++deg[v];
    }
    std::vector<EdgeId> kept;
    for (auto e : tree) {
      auto [u, v] = g.endpoints(e);
      if ((deg[u] == 1 && !is_term[u]) || (deg[v] == 1 && !is_term[v])) {
        changed = true;
        continue;
      }
      kept.push_back(e);
    }
    tree = std::move(kept);
  }

  SteinerSeed seed;
  std::int64_t total = 0;
  for (auto e : tree) {
    auto [u, v] = g.endpoints(e);
    seed.vertices.push_back(u);
    seed.vertices.push_back(v);
    total += w.scaled(e);
  }
  std::sort(seed.vertices.begin(), seed.vertices.end());
  seed.vertices.erase(std::unique(seed.vertices.begin(), seed.vertices.end()), seed.vertices.end());
  std::sort(tree.begin(), tree.end());
  seed.edges = std::move(tree);
  seed.weight = Rational(total, w.scale());
  return seed;
}

SteinerSeed steiner_seed(const Graph& g, const ATIndex& idx, const QuerySpec& q) {
  require_same_graph(g, idx);
  return steiner_seed(g, EdgeWeighting(idx, q.attrs, q.gamma), q.nodes);
}

Subgraph expand_candidate(const Graph& g, const ATIndex& idx, const SteinerSeed& seed, const QuerySpec& q) {
  require_same_graph(g, idx);
  std::vector<std::uint8_t> in_set(g.num_vertices(), 0);
  std::vector<VertexId> members = seed.vertices;
  ScoreTracker tracker(g, q.attrs);
  for (auto v : members) {
    in_set[v] = 1;
    tracker.add_vertex(v);
  }

  struct Ranked {
    bool majority;
    std::size_t covered;
    std::uint32_t tau;
    VertexId v;
  };
  std::vector<VertexId> layer = members;
  std::vector<std::uint8_t> queued(g.num_vertices(), 0);
  while (!layer.empty() && members.size() < q.eta) {
    std::vector<Ranked> next;
    for (auto u : layer) {
      for (auto v : g.neighbors(u)) {
        if (in_set[v] || queued[v]) continue;
        queued[v] = 1;
        auto attrs = g.attributes(v);
        next.push_back({tracker.majority(attrs), tracker.query_attr_count(attrs), idx.structural_vertex(v), v});
      }
    }
    std::sort(next.begin(), next.end(), [](const Ranked& a, const Ranked& b) {
      return std::make_tuple(!a.majority, b.covered, b.tau, a.v) < std::make_tuple(!b.majority, a.covered, a.tau, b.v);
    });
    layer.clear();
    for (const auto& r : next) {
      if (members.size() >= q.eta) break;
#ifndef NDEBUG
      const bool majority = tracker.majority(g.attributes(r.v));
      const Rational before = tracker.score();
#endif
      tracker.add_vertex(r.v);
#ifndef NDEBUG
      assert(!majority || tracker.score() > before);
#endif
      in_set[r.v] = 1;
      members.push_back(r.v);
      layer.push_back(r.v);
    }
  }
  std::sort(members.begin(), members.end());
  return Subgraph(g, members);
}

AutoParams auto_params(const Subgraph& h, std::span<const VertexId> query) {
  MaxTrussResult mt = max_trussness_connecting(h, query);
  const auto d = query_distance(mt.truss, query).graph_distance;
  return {mt.k, d, std::move(mt.truss)};
}

SearchResult locatc_search(const Graph& g, const ATIndex& idx, const QuerySpec& q) {
  const auto start = std::chrono::steady_clock::now();
  q.validate(g);
  require_same_graph(g, idx);

  SteinerSeed seed = steiner_seed(g, idx, q);
  Subgraph candidate = expand_candidate(g, idx, seed, q);

  SearchResult r;
  if (q.auto_kd) {
    AutoParams ap = auto_params(candidate, q.nodes);
    QuerySpec tuned = q;
    tuned.k = ap.k;
    tuned.d = ap.d;
    try {
      r = bulk_search(ap.region, tuned).result;
    } catch (const NoFeasibleCommunity&) {
      if (ap.k <= 3) throw;
      tuned.k = ap.k - 1;
      r = bulk_search(ap.region, tuned).result;
    }
  } else {
    r = bulk_search(candidate, q).result;
  }
  r.algorithm = "local";
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<AttributeId> autocomplete_attrs(const Graph& g, std::span<const VertexId> query) {
  std::vector<AttributeId> out;
  for (auto v : query) {
    if (v >= g.num_vertices()) throw std::out_of_range("unknown query node");
    auto a = g.attributes(v);
    out.insert(out.end(), a.begin(), a.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view to_string(QueryVerdict v) {
  switch (v) {
    case QueryVerdict::kGood: return "good";
    case QueryVerdict::kDisconnected: return "disconnected";
    case QueryVerdict::kInfeasible: return "infeasible";
    case QueryVerdict::kZeroScore: return "zero_score";
  }
  return "unknown";
}

std::vector<QuerySpec> suggest_queries(const Graph& g, const QuerySpec& q) {
  std::vector<VertexId> remaining(q.nodes.begin(), q.nodes.end());
  std::sort(remaining.begin(), remaining.end());
  remaining.erase(std::unique(remaining.begin(), remaining.end()), remaining.end());
  std::vector<AttributeId> wanted(q.attrs.begin(), q.attrs.end());
  std::sort(wanted.begin(), wanted.end());

  std::vector<QuerySpec> out;
  const std::size_t rounds = remaining.size();
  for (std::size_t i = 0; i < rounds && !remaining.empty(); ++i) {
    const VertexId s = remaining.front();
    const std::vector<VertexId> single{s};
    KdTruss t = maximal_kd_truss(g, single, q.k, q.d);
    if (!t.valid()) {
      remaining.erase(remaining.begin());
      continue;
    }
    const Subgraph& h = t.subgraph();
    std::vector<VertexId> group, rest;
    for (auto v : remaining) (h.has_vertex(v) ? group : rest).push_back(v);

    std::vector<AttributeId> present;
    if (wanted.empty()) {
      present = autocomplete_attrs(g, group);
    } else {
      for (auto w : wanted) {
        auto holders = g.holders(w);
        if (std::any_of(holders.begin(), holders.end(), [&](VertexId v) { return h.has_vertex(v); }))
          present.push_back(w);
      }
    }
    QuerySpec sq = q;
    sq.nodes = std::move(group);
    sq.attrs = std::move(present);
    out.push_back(std::move(sq));
    remaining = std::move(rest);
  }
  return out;
}

QueryClassification classify_query(const Graph& g, const QuerySpec& q) {
  q.validate(g);
  QueryClassification c;
  const Subgraph whole(g);
  const auto reach = bfs_distances(whole, q.nodes.front());
  const bool connected =
      std::all_of(q.nodes.begin(), q.nodes.end(), [&](VertexId v) { return reach[v] != kInfinity; });

  if (!connected) {
    c.verdict = QueryVerdict::kDisconnected;
  } else {
    KdTruss t = maximal_kd_truss(g, q.nodes, q.k, q.d);
    if (!t.valid()) {
      c.verdict = t.status() == TrussStatus::kQueryDisconnected ? QueryVerdict::kDisconnected
                                                                 : QueryVerdict::kInfeasible;
    } else if (attribute_score(t.subgraph(), q.attrs).score() == Rational(0)) {
      c.verdict = QueryVerdict::kZeroScore;
    }
  }
  if (!c.good()) c.suggestions = suggest_queries(g, q);
  return c;
}

}  // namespace atc
