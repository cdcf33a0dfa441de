#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atc/graph.hpp"
#include "atc/query.hpp"
#include "atc/rational.hpp"
#include "atc/subgraph.hpp"

namespace atc {

/// Candidates G_0, G_1, ... of one peeling run, stored as G_0 plus the
/// deletion log; candidate i is G_0 minus the first steps[i] log entries.
struct CandidateTrace {
  struct Step {
    std::size_t vertex_end = 0;  // prefix of removed_vertices
    std::size_t edge_end = 0;    // prefix of removed_edges
    Rational score;
  };

  const Graph* graph = nullptr;
  std::vector<VertexId> base_vertices;
  std::vector<EdgeId> base_edges;
  std::vector<VertexId> removed_vertices;
  std::vector<EdgeId> removed_edges;
  std::vector<Step> steps;
  std::size_t best = 0;

  std::size_t size() const { return steps.size(); }
};

/// Rebuilds candidate i. Throws std::out_of_range.
Subgraph replay_candidate(const CandidateTrace& trace, std::size_t i);

struct SearchResult {
  std::vector<VertexId> vertices;  // sorted internal ids
  std::vector<EdgeId> edges;       // sorted
  Rational score;
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::uint32_t query_distance = 0;
  std::uint32_t diameter = 0;
  std::string algorithm;
  std::size_t iterations = 0;
  double wall_ms = 0;
};

struct SearchOutput {
  SearchResult result;
  CandidateTrace trace;
};

/// Single-vertex peeling by smallest attribute score contribution, starting
/// from the maximal (k,d)-truss. Returns the best-scoring candidate (ties go to
/// the later, smaller candidate). Throws NoFeasibleCommunity.
SearchOutput basic_search(const Graph& g, const QuerySpec& q);
SearchOutput basic_search(const Subgraph& region, const QuerySpec& q);

/// Batch peeling: each round removes ceil(eps/(1+eps) |V(G_l)|) non-query
/// vertices of smallest local marginal gain, ranked once against G_l.
SearchOutput bulk_search(const Graph& g, const QuerySpec& q);
SearchOutput bulk_search(const Subgraph& region, const QuerySpec& q);

/// ceil(eps / (1 + eps) * n), at least 1.
std::size_t bulk_batch_size(const Rational& epsilon, std::size_t n);

}  // namespace atc
