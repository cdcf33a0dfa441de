#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "atc/graph.hpp"
#include "atc/rational.hpp"
#include "atc/subgraph.hpp"

namespace atc {

/// Cover counts c_w = |V_w ∩ V(H)| for each query attribute, and |V(H)|.
struct ScoreBreakdown {
  std::vector<AttributeId> attrs;    // sorted, unique
  std::vector<std::uint32_t> cover;  // aligned with attrs
  std::size_t size = 0;

  /// theta(H, w) = c_w / |V(H)|.
  Rational theta(std::size_t slot) const;
  /// f(H, W_q) = sum_w c_w^2 / |V(H)|; 0 for an empty vertex set.
  Rational score() const;
};

/// Any score over cover counts. Only the attribute score f is provided; the
/// greedy rules (contribution, marginal gain) are derived for f.
using ScoreFunction = std::function<Rational(const ScoreBreakdown&)>;
Rational attribute_score_value(const ScoreBreakdown& b);

ScoreBreakdown attribute_score(const Subgraph& h, std::span<const AttributeId> query_attrs);
ScoreBreakdown attribute_score(const Graph& g, std::span<const VertexId> vertices,
                               std::span<const AttributeId> query_attrs);

/// f_H(v, W_q) = sum over w in W_q ∩ attr(v) of (2 c_w - 1). Removing v gives
/// f(H - v) (|V(H)| - 1) = f(H) |V(H)| - f_H(v).
std::int64_t score_contribution(const Subgraph& h, VertexId v, std::span<const AttributeId> query_attrs);

/// f(H) - f(H - P_H(v)) with P_H(v) = {v} ∪ {u ∈ N_H(v) : deg_H(u) = k - 1}.
/// Throws std::invalid_argument if P_H(v) is all of H.
Rational local_marginal_gain(const Subgraph& h, VertexId v, std::span<const AttributeId> query_attrs,
                             std::uint32_t k);

/// P_H(v), sorted.
std::vector<VertexId> local_peel_set(const Subgraph& h, VertexId v, std::uint32_t k);

/// X includes majority attributes of H: W_q ∩ X is non-empty and
/// sum_{w ∈ W_q ∩ X} theta(H, w) >= f(H, W_q) / (2 |V(H)|).
bool is_majority(const Subgraph& h, std::span<const AttributeId> attrs, std::span<const AttributeId> query_attrs);
bool is_majority(const ScoreBreakdown& b, std::span<const AttributeId> attrs);

/// Incrementally maintained ScoreBreakdown over a changing vertex set.
class ScoreTracker {
 public:
  ScoreTracker(const Graph& g, std::span<const AttributeId> query_attrs);
  ScoreTracker(const Subgraph& h, std::span<const AttributeId> query_attrs);

  void add_vertex(VertexId v);
  void remove_vertex(VertexId v);

  std::size_t size() const { return b_.size; }
  const ScoreBreakdown& breakdown() const { return b_; }
  Rational score() const { return b_.score(); }

  std::int64_t contribution(VertexId v) const;
  /// Score after removing `removed` (distinct members of the tracked set).
  Rational score_without(std::span<const VertexId> removed) const;
  /// Majority test for a vertex carrying `attrs` against the tracked set.
  bool majority(std::span<const AttributeId> attrs) const;
  /// Number of query attributes in attrs.
  std::size_t query_attr_count(std::span<const AttributeId> attrs) const;

 private:
  const Graph* g_;
  std::vector<std::int32_t> slot_;  // attribute id -> index in b_.attrs, or -1
  ScoreBreakdown b_;
  std::int64_t sum_sq_ = 0;
};

}  // namespace atc
