#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "atc/at_index.hpp"
#include "atc/graph.hpp"
#include "atc/greedy.hpp"
#include "atc/query.hpp"
#include "atc/rational.hpp"
#include "atc/subgraph.hpp"

namespace atc {

/// Attribute truss distance of every edge of G under (W_q, gamma):
///   1 + gamma * sum over g in {G} ∪ {G_w : w in W_q} of (tau_max - tau_g(e)),
/// with tau_g(e) = 2 when e is not an edge of G_w. Weights are kept as
/// integers over gamma's denominator so path sums are exact.
class EdgeWeighting {
 public:
  EdgeWeighting(const ATIndex& idx, std::span<const AttributeId> query_attrs, const Rational& gamma);

  std::int64_t scaled(EdgeId e) const { return scaled_[e]; }
  std::int64_t scale() const { return scale_; }
  Rational weight(EdgeId e) const { return Rational(scaled_[e], scale_); }

 private:
  std::vector<std::int64_t> scaled_;
  std::int64_t scale_ = 1;
};

Rational attribute_truss_distance(const ATIndex& idx, EdgeId e, std::span<const AttributeId> query_attrs,
                                  const Rational& gamma);

struct SteinerSeed {
  std::vector<VertexId> vertices;  // sorted
  std::vector<EdgeId> edges;       // sorted
  Rational weight;
};

/// Metric-closure minimum spanning tree over the terminals, expanded into graph
/// paths, re-spanned and stripped of non-terminal leaves. At most twice the
/// optimal Steiner weight. Throws NoFeasibleCommunity when terminals are
/// disconnected.
SteinerSeed steiner_seed(const Graph& g, const EdgeWeighting& w, std::span<const VertexId> terminals);
SteinerSeed steiner_seed(const Graph& g, const ATIndex& idx, const QuerySpec& q);

/// Layered BFS from the seed. Each layer is ranked by (passes the majority
/// test, covered query attributes, structural trussness) descending, then id,
/// and inserted until eta vertices. Returns the induced subgraph.
Subgraph expand_candidate(const Graph& g, const ATIndex& idx, const SteinerSeed& seed, const QuerySpec& q);

struct AutoParams {
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  Subgraph region;  // connected k-truss containing the query nodes
};

/// k = largest trussness of a connected truss containing V_q inside h;
/// d = query distance of that truss.
AutoParams auto_params(const Subgraph& h, std::span<const VertexId> query);

/// Seed, expand, then BULK inside the candidate graph. With q.auto_kd the
/// candidate is first restricted to its k_max-truss.
SearchResult locatc_search(const Graph& g, const ATIndex& idx, const QuerySpec& q);

/// Union of the query nodes' attributes, sorted.
std::vector<AttributeId> autocomplete_attrs(const Graph& g, std::span<const VertexId> query);

enum class QueryVerdict { kGood, kDisconnected, kInfeasible, kZeroScore };
std::string_view to_string(QueryVerdict v);

struct QueryClassification {
  QueryVerdict verdict = QueryVerdict::kGood;
  bool good() const { return verdict == QueryVerdict::kGood; }
  std::vector<QuerySpec> suggestions;  // filled for bad queries
};

/// Splits the query nodes into groups that each share a (k,d)-truss community.
/// Every round seeds from the smallest remaining node; at most |V_q| rounds.
std::vector<QuerySpec> suggest_queries(const Graph& g, const QuerySpec& q);

QueryClassification classify_query(const Graph& g, const QuerySpec& q);

}  // namespace atc
