#include "atc/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>

#include "atc/errors.hpp"
#include "atc/score.hpp"
#include "atc/truss.hpp"

namespace atc {

Subgraph replay_candidate(const CandidateTrace& trace, std::size_t i) {
  if (i >= trace.steps.size()) throw std::out_of_range("candidate index out of range");
  Subgraph h(*trace.graph, trace.base_vertices, trace.base_edges);
  const auto& step = trace.steps[i];
  for (std::size_t j = 0; j < step.edge_end; ++j) h.remove_edge(trace.removed_edges[j]);
  for (std::size_t j = 0; j < step.vertex_end; ++j) h.remove_vertex(trace.removed_vertices[j]);
  return h;
}

std::size_t bulk_batch_size(const Rational& epsilon, std::size_t n) {
  // ceil(num n / (num + den))
  const Int128 num = static_cast<Int128>(epsilon.num()) * static_cast<Int128>(n);
  const Int128 den = static_cast<Int128>(epsilon.num()) + epsilon.den();
  const auto s = static_cast<std::size_t>((num + den - 1) / den);
  return std::max<std::size_t>(s, 1);
}

namespace {

using Selector = std::function<std::vector<VertexId>(const KdTruss&, const ScoreTracker&)>;

bool is_query(const QuerySpec& q, VertexId v) {
  return std::find(q.nodes.begin(), q.nodes.end(), v) != q.nodes.end();
}

SearchOutput peel(const Subgraph& region, const QuerySpec& q, const Selector& select, std::string name,
                  bool stop_below_k) {
  const auto start = std::chrono::steady_clock::now();
  q.validate(region.graph());

  KdTruss t = maximal_kd_truss(region, q.nodes, q.k, q.d);
  if (!t.valid()) throw NoFeasibleCommunity(std::string(to_string(t.status())));

  SearchOutput out;
  CandidateTrace& trace = out.trace;
  trace.graph = &region.graph();
  trace.base_vertices = t.subgraph().vertices();
  trace.base_edges = t.subgraph().edges();
  const std::size_t vlog0 = t.subgraph().removed_vertices().size();
  const std::size_t elog0 = t.subgraph().removed_edges().size();

  ScoreTracker tracker(t.subgraph(), q.attrs);
  trace.steps.push_back({0, 0, tracker.score()});

  std::size_t iterations = 0;
  std::size_t seen_vertices = vlog0;
  while (true) {
    if (stop_below_k && t.subgraph().num_vertices() < q.k) break;
    auto batch = select(t, tracker);
    if (batch.empty()) break;
    ++iterations;
    for (auto v : batch) t.remove_vertex(v);
    t.maintain();
    const auto& vlog = t.subgraph().removed_vertices();
    for (; seen_vertices < vlog.size(); ++seen_vertices) tracker.remove_vertex(vlog[seen_vertices]);
    if (!t.valid()) break;
    trace.steps.push_back(
        {vlog.size() - vlog0, t.subgraph().removed_edges().size() - elog0, tracker.score()});
  }

  const auto& last = trace.steps.back();
  const auto& vlog = t.subgraph().removed_vertices();
  const auto& elog = t.subgraph().removed_edges();
  trace.removed_vertices.assign(vlog.begin() + static_cast<std::ptrdiff_t>(vlog0),
                                vlog.begin() + static_cast<std::ptrdiff_t>(vlog0 + last.vertex_end));
  trace.removed_edges.assign(elog.begin() + static_cast<std::ptrdiff_t>(elog0),
                             elog.begin() + static_cast<std::ptrdiff_t>(elog0 + last.edge_end));

  for (std::size_t i = 1; i < trace.steps.size(); ++i)
    if (trace.steps[i].score >= trace.steps[trace.best].score) trace.best = i;

  Subgraph best = replay_candidate(trace, trace.best);
  SearchResult& r = out.result;
  r.vertices = best.vertices();
  r.edges = best.edges();
  r.score = trace.steps[trace.best].score;
  r.k = q.k;
  r.d = q.d;
  r.query_distance = query_distance(best, q.nodes).graph_distance;
  r.diameter = diameter(best);
  r.algorithm = std::move(name);
  r.iterations = iterations;
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<VertexId> select_basic(const QuerySpec& q, const KdTruss& t, const ScoreTracker& tracker) {
  std::optional<VertexId> best;
  std::int64_t best_c = 0;
  for (auto v : t.subgraph().vertices()) {
    if (is_query(q, v)) continue;
    const auto c = tracker.contribution(v);
    if (!best || c < best_c) {
      best = v;
      best_c = c;
    }
  }
  if (!best) return {};
  return {*best};
}

std::vector<VertexId> select_bulk(const QuerySpec& q, const KdTruss& t, const ScoreTracker& tracker) {
  const Subgraph& h = t.subgraph();
  const Rational current = tracker.score();
  std::vector<std::pair<Rational, VertexId>> ranked;
  for (auto v : h.vertices()) {
    if (is_query(q, v)) continue;
    auto p = local_peel_set(h, v, q.k);
    ranked.emplace_back(current - tracker.score_without(p), v);
  }
  const std::size_t s = std::min(bulk_batch_size(q.epsilon, h.num_vertices()), ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(s), ranked.end());
  std::vector<VertexId> batch;
  batch.reserve(s);
  for (std::size_t i = 0; i < s; ++i) batch.push_back(ranked[i].second);
  return batch;
}

}  // namespace

SearchOutput basic_search(const Subgraph& region, const QuerySpec& q) {
  return peel(
      region, q, [&](const KdTruss& t, const ScoreTracker& s) { return select_basic(q, t, s); }, "basic", false);
}

SearchOutput basic_search(const Graph& g, const QuerySpec& q) { return basic_search(Subgraph(g), q); }

SearchOutput bulk_search(const Subgraph& region, const QuerySpec& q) {
  return peel(
      region, q, [&](const KdTruss& t, const ScoreTracker& s) { return select_bulk(q, t, s); }, "bulk", true);
}

SearchOutput bulk_search(const Graph& g, const QuerySpec& q) { return bulk_search(Subgraph(g), q); }

}  // namespace atc
