#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atc/at_index.hpp"
#include "atc/graph.hpp"
#include "atc/greedy.hpp"
#include "atc/query.hpp"
#include "atc/rational.hpp"

namespace atc {

struct Community {
  std::vector<VertexId> vertices;   // sorted
  std::vector<AttributeId> attrs;   // planted attributes, sorted
};

struct GroundTruth {
  std::vector<Community> communities;
};

/// Erdős–Rényi background plus planted dense communities whose internal pairs
/// are joined with probability p_in. Communities are disjoint random vertex
/// samples unless `overlap` is set, in which case each is drawn independently.
/// Vertices left isolated get one random edge.
struct GeneratorConfig {
  std::size_t n = 1000;
  std::size_t communities = 20;
  std::size_t min_size = 10;
  std::size_t max_size = 30;
  Rational p_in{9, 10};
  Rational background_degree{4};  // expected background degree
  bool overlap = false;
  std::uint64_t seed = 1;
};

struct PlantedGraph {
  Graph graph;
  GroundTruth truth;
};

PlantedGraph generate_planted_graph(const GeneratorConfig& cfg);

struct PlantConfig {
  std::uint32_t coverage = 80;  // percent of each community carrying its attributes
  std::size_t attrs_per_community = 3;
  std::size_t noise_lo = 1;
  std::size_t noise_hi = 5;
  Rational pool_ratio{1, 200};
  std::uint64_t seed = 1;
};

/// Attribute pool size: max(attrs_per_community, floor(pool_ratio * n)).
std::size_t attribute_pool_size(std::size_t n, const PlantConfig& cfg);

/// Replaces the attribute table of g: every community draws attrs_per_community
/// distinct labels from the pool for coverage% of its members, and every vertex
/// receives a uniform [noise_lo, noise_hi] count of distinct pool labels.
/// Fills gt.communities[i].attrs. Throws std::invalid_argument.
Graph plant_attributes(const Graph& g, GroundTruth& gt, const PlantConfig& cfg);

struct GeneratedQuery {
  std::size_t community = 0;
  QuerySpec query;
};

/// Query nodes: a uniform [nodes_lo, min(nodes_hi, |C|)] sample from one
/// random community. Query attributes: the attrs_per_query most
/// representative attributes of that community.
std::vector<GeneratedQuery> gen_queries(const Graph& g, const GroundTruth& gt, std::size_t count,
                                        std::size_t nodes_lo, std::size_t nodes_hi, std::size_t attrs_per_query,
                                        std::uint64_t seed);

/// Attributes of community c ordered by in/out frequency ratio (desc), then
/// in-community frequency (desc), then label.
std::vector<AttributeId> representative_attrs(const Graph& g, std::span<const VertexId> community);

struct F1Score {
  Rational precision;
  Rational recall;
  Rational f1;
};

/// Exact precision/recall/F1 of `found` against `truth` (both sorted sets).
/// Empty `found` scores zero. Throws std::invalid_argument on empty truth.
F1Score f1(std::span<const VertexId> found, std::span<const VertexId> truth);

/// BULK with W_q = ∅: peeling driven by structure alone.
SearchResult structure_baseline(const Graph& g, const QuerySpec& q);

inline constexpr std::size_t kBruteForceMaxVertices = 14;

/// Exhaustive ATC: the vertex set S ⊇ V_q of maximum f for which maintenance
/// of G[S] keeps every vertex. Ties go to the smaller, then lexicographically
/// smaller set. std::nullopt when infeasible. Throws std::invalid_argument
/// above kBruteForceMaxVertices vertices.
std::optional<SearchResult> brute_force_atc(const Graph& g, const QuerySpec& q);

struct QueryOutcome {
  std::size_t community = 0;
  std::string status;  // ok | infeasible
  F1Score score;
  double runtime_ms = 0;
};

struct EvalReport {
  std::string algorithm;
  std::vector<QueryOutcome> queries;
  double mean_f1() const;
  double mean_runtime_ms() const;
};

/// Runs `algorithm` (basic, bulk, local, baseline) on every query. idx is
/// required for local. Queries are spread over `threads` workers; the report
/// order follows the input.
EvalReport run_eval(const Graph& g, const ATIndex* idx, const GroundTruth& gt,
                    const std::vector<GeneratedQuery>& queries, const std::string& algorithm, unsigned threads = 1);

SearchResult run_algorithm(const Graph& g, const ATIndex* idx, const QuerySpec& q, const std::string& algorithm);

/// TAB-separated rows plus a final mean row. Runtime columns only with timing.
void write_report(std::ostream& out, const EvalReport& r, bool timing);

/// One community per line, TAB-separated external ids.
void write_truth(std::ostream& out, const Graph& g, const GroundTruth& gt);
GroundTruth read_truth(std::istream& in, const Graph& g);

/// "community<TAB>v1,v2,...<TAB>label1,label2,..." with external ids.
void write_queries(std::ostream& out, const Graph& g, const std::vector<GeneratedQuery>& qs);
std::vector<GeneratedQuery> read_queries(std::istream& in, const Graph& g);

}  // namespace atc
