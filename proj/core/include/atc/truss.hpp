#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "atc/graph.hpp"
#include "atc/subgraph.hpp"

namespace atc {

/// Per-edge triangle counts, indexed by parent edge id (0 for dead edges).
using SupportMap = std::vector<std::uint32_t>;

/// Edge and vertex trussness indexed by parent ids. 0 marks an edge that is
/// not part of the decomposed subgraph, or a vertex with no live edge.
struct TrussnessMap {
  std::vector<std::uint32_t> edge;
  std::vector<std::uint32_t> vertex;
  /// Largest edge trussness (0 when there are no edges).
  std::uint32_t max_trussness = 0;
};

SupportMap compute_supports(const Subgraph& h);

/// Bucket-queue peeling of minimum-support edges.
TrussnessMap truss_decompose(const Subgraph& h);
TrussnessMap truss_decompose(const Graph& g);

enum class TrussStatus { kOk, kQueryNodePruned, kQueryDisconnected };

std::string_view to_string(TrussStatus s);

/// A subgraph kept as a connected (k,d)-truss around the query nodes under
/// deletions. Supports are maintained incrementally.
class KdTruss {
 public:
  KdTruss(Subgraph h, std::vector<VertexId> query, std::uint32_t k, std::uint32_t d);

  /// Prunes edges with support < k-2, vertices left without edges, and
  /// vertices with query distance > d until nothing changes. Distances are
  /// recomputed after each edge-pruning round. The result is the unique
  /// maximal such subgraph of the current state.
  TrussStatus maintain();

  void remove_vertex(VertexId v);
  void remove_edge(EdgeId e);

  const Subgraph& subgraph() const { return h_; }
  std::span<const VertexId> query() const { return query_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t support(EdgeId e) const { return support_[e]; }
  TrussStatus status() const { return status_; }
  bool valid() const { return status_ == TrussStatus::kOk; }

 private:
  bool query_alive() const;

  Subgraph h_;
  std::vector<VertexId> query_;
  std::uint32_t k_;
  std::uint32_t d_;
  SupportMap support_;
  std::vector<EdgeId> pending_;
  TrussStatus status_ = TrussStatus::kOk;
};

/// In-place maintenance of h; returns the final status.
TrussStatus maintain_kd_truss(Subgraph& h, std::span<const VertexId> query, std::uint32_t k, std::uint32_t d);

/// G_0: maintenance applied to the subgraph of `region` induced by the vertices
/// within query distance d.
KdTruss maximal_kd_truss(const Subgraph& region, std::span<const VertexId> query, std::uint32_t k,
                         std::uint32_t d);
KdTruss maximal_kd_truss(const Graph& g, std::span<const VertexId> query, std::uint32_t k, std::uint32_t d);

struct MaxTrussResult {
  std::uint32_t k = 0;
  Subgraph truss;
};

/// Largest k such that one connected k-truss of h contains every query node,
/// and that truss. Throws NoFeasibleCommunity if no such k >= 2 exists.
MaxTrussResult max_trussness_connecting(const Subgraph& h, std::span<const VertexId> query);
MaxTrussResult max_trussness_connecting(const Graph& g, std::span<const VertexId> query);

/// Exact hop diameter by BFS from every live vertex; kInfinity if disconnected.
std::uint32_t diameter(const Subgraph& h);

}  // namespace atc
