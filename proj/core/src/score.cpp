#include "atc/score.hpp"

#include <algorithm>
#include <stdexcept>

namespace atc {

Rational ScoreBreakdown::theta(std::size_t slot) const {
  if (size == 0) return 0;
  return Rational(cover[slot], static_cast<std::int64_t>(size));
}

Rational ScoreBreakdown::score() const {
  if (size == 0) return 0;
  std::int64_t sum = 0;
  for (auto c : cover) sum += static_cast<std::int64_t>(c) * c;
  return Rational(sum, static_cast<std::int64_t>(size));
}

Rational attribute_score_value(const ScoreBreakdown& b) { return b.score(); }

ScoreTracker::ScoreTracker(const Graph& g, std::span<const AttributeId> query_attrs)
    : g_(&g), slot_(g.num_attributes(), -1) {
  b_.attrs.assign(query_attrs.begin(), query_attrs.end());
  std::sort(b_.attrs.begin(), b_.attrs.end());
  b_.attrs.erase(std::unique(b_.attrs.begin(), b_.attrs.end()), b_.attrs.end());
  for (std::size_t i = 0; i < b_.attrs.size(); ++i) {
    if (b_.attrs[i] >= g.num_attributes()) throw std::out_of_range("unknown query attribute id");
    slot_[b_.attrs[i]] = static_cast<std::int32_t>(i);
  }
  b_.cover.assign(b_.attrs.size(), 0);
}

ScoreTracker::ScoreTracker(const Subgraph& h, std::span<const AttributeId> query_attrs)
    : ScoreTracker(h.graph(), query_attrs) {
  for (auto v : h.vertices()) add_vertex(v);
}

void ScoreTracker::add_vertex(VertexId v) {
  for (auto w : g_->attributes(v)) {
    if (auto s = slot_[w]; s >= 0) {
      sum_sq_ += 2 * static_cast<std::int64_t>(b_.cover[s]) + 1;
      ++b_.cover[s];
    }
  }
  ++b_.size;
}

void ScoreTracker::remove_vertex(VertexId v) {
  for (auto w : g_->attributes(v)) {
    if (auto s = slot_[w]; s >= 0) {
      sum_sq_ -= 2 * static_cast<std::int64_t>(b_.cover[s]) - 1;
      --b_.cover[s];
    }
  }
  --b_.size;
}

std::int64_t ScoreTracker::contribution(VertexId v) const {
  std::int64_t c = 0;
  for (auto w : g_->attributes(v))
    if (auto s = slot_[w]; s >= 0) c += 2 * static_cast<std::int64_t>(b_.cover[s]) - 1;
  return c;
}

Rational ScoreTracker::score_without(std::span<const VertexId> removed) const {
  if (removed.size() >= b_.size) return 0;
  std::vector<std::pair<std::int32_t, std::uint32_t>> delta;  // small; linear scan
  for (auto v : removed) {
    for (auto w : g_->attributes(v)) {
      auto s = slot_[w];
      if (s < 0) continue;
      auto it = std::find_if(delta.begin(), delta.end(), [&](const auto& p) { return p.first == s; });
      if (it == delta.end())
        delta.emplace_back(s, 1);
      else
        ++it->second;
    }
  }
  std::int64_t sum = sum_sq_;
  for (auto [s, dc] : delta) {
    const std::int64_t c = b_.cover[s];
    sum += (c - dc) * (c - dc) - c * c;
  }
  return Rational(sum, static_cast<std::int64_t>(b_.size - removed.size()));
}

bool ScoreTracker::majority(std::span<const AttributeId> attrs) const { return is_majority(b_, attrs); }

std::size_t ScoreTracker::query_attr_count(std::span<const AttributeId> attrs) const {
  std::size_t c = 0;
  for (auto w : attrs)
    if (w < slot_.size() && slot_[w] >= 0) ++c;
  return c;
}

ScoreBreakdown attribute_score(const Subgraph& h, std::span<const AttributeId> query_attrs) {
  if (h.empty()) throw std::invalid_argument("attribute score of an empty vertex set");
  return ScoreTracker(h, query_attrs).breakdown();
}

ScoreBreakdown attribute_score(const Graph& g, std::span<const VertexId> vertices,
                               std::span<const AttributeId> query_attrs) {
  ScoreTracker t(g, query_attrs);
  for (auto v : vertices) t.add_vertex(v);
  return t.breakdown();
}

std::int64_t score_contribution(const Subgraph& h, VertexId v, std::span<const AttributeId> query_attrs) {
  if (v >= h.graph().num_vertices() || !h.has_vertex(v)) throw std::invalid_argument("vertex not in subgraph");
  return ScoreTracker(h, query_attrs).contribution(v);
}

std::vector<VertexId> local_peel_set(const Subgraph& h, VertexId v, std::uint32_t k) {
  std::vector<VertexId> p{v};
  h.for_each_neighbor(v, [&](VertexId u, EdgeId) {
    if (h.degree(u) == k - 1) p.push_back(u);
  });
  std::sort(p.begin(), p.end());
  return p;
}

Rational local_marginal_gain(const Subgraph& h, VertexId v, std::span<const AttributeId> query_attrs,
                             std::uint32_t k) {
  if (v >= h.graph().num_vertices() || !h.has_vertex(v)) throw std::invalid_argument("vertex not in subgraph");
  auto p = local_peel_set(h, v, k);
  if (p.size() >= h.num_vertices()) throw std::invalid_argument("removal would empty the graph");
  ScoreTracker t(h, query_attrs);
  return t.score() - t.score_without(p);
}

bool is_majority(const ScoreBreakdown& b, std::span<const AttributeId> attrs) {
  if (b.size == 0) return false;
  // 2 |V(H)| sum_{w in W_q ∩ X} c_w >= sum_w c_w^2, with W_q ∩ X non-empty.
  std::int64_t covered = 0;
  bool any = false;
  for (std::size_t i = 0; i < b.attrs.size(); ++i) {
    if (std::find(attrs.begin(), attrs.end(), b.attrs[i]) != attrs.end()) {
      covered += b.cover[i];
      any = true;
    }
  }
  if (!any) return false;
  std::int64_t sum_sq = 0;
  for (auto c : b.cover) sum_sq += static_cast<std::int64_t>(c) * c;
  return static_cast<Int128>(2) * static_cast<std::int64_t>(b.size) * covered >= sum_sq;
}

bool is_majority(const Subgraph& h, std::span<const AttributeId> attrs, std::span<const AttributeId> query_attrs) {
  if (h.empty()) throw std::invalid_argument("majority test on an empty vertex set");
  return is_majority(attribute_score(h, query_attrs), attrs);
}

}  // namespace atc
