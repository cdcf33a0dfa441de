#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace atc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using AttributeId = std::uint32_t;
using ExternalId = std::uint64_t;

/// Hop distance used for "unreachable"; larger than any real hop count.
inline constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();

struct LoadStats {
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

/// Immutable undirected simple graph with per-vertex attribute sets.
///
/// Internal vertex ids are dense (0..n-1) and assigned in increasing order of
/// external id. Edge ids are dense and ordered by (min endpoint, max endpoint).
/// Attribute labels are interned in lexicographic order.
class Graph {
 public:
  Graph() = default;

  /// Vertices 0..n-1 with external id == internal id. Self-loops and
  /// duplicates are dropped and counted in `stats`.
  static Graph from_edge_pairs(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
                               LoadStats* stats = nullptr);

  /// Vertex set is the set of endpoint ids; they are remapped densely.
  static Graph from_external_edges(std::span<const std::pair<ExternalId, ExternalId>> edges,
                                   LoadStats* stats = nullptr);

  /// Explicit sorted, distinct external ids; edges use internal ids.
  static Graph from_parts(std::vector<ExternalId> external_ids,
                          std::vector<std::pair<VertexId, VertexId>> edges);

  /// Same structure with attribute sets replaced; labels[v] lists the labels
  /// of internal vertex v (duplicates are merged).
  Graph with_attributes(const std::vector<std::vector<std::string>>& labels) const;

  std::size_t num_vertices() const { return external_ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_.data() + adj_offsets_[v], adj_.data() + adj_offsets_[v + 1]};
  }
  std::span<const EdgeId> incident_edges(VertexId v) const {
    return {adj_edges_.data() + adj_offsets_[v], adj_edges_.data() + adj_offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return adj_offsets_[v + 1] - adj_offsets_[v]; }
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return edges_[e]; }
  std::span<const std::pair<VertexId, VertexId>> edges() const { return edges_; }
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  ExternalId external_id(VertexId v) const { return external_ids_[v]; }
  std::optional<VertexId> internal_id(ExternalId ext) const;

  std::size_t num_attributes() const { return labels_.size(); }
  const std::string& attribute_label(AttributeId w) const { return labels_[w]; }
  std::optional<AttributeId> find_attribute(std::string_view label) const;
  std::span<const AttributeId> attributes(VertexId v) const {
    return {attrs_.data() + attr_offsets_[v], attrs_.data() + attr_offsets_[v + 1]};
  }
  /// V_w: sorted holders of attribute w.
  std::span<const VertexId> holders(AttributeId w) const {
    return {postings_.data() + posting_offsets_[w], postings_.data() + posting_offsets_[w + 1]};
  }
  bool has_attribute(VertexId v, AttributeId w) const;
  /// |attr(V)| = sum over vertices of |attr(v)|.
  std::size_t total_attribute_count() const { return attrs_.size(); }

 private:
  static Graph build(std::vector<ExternalId> external_ids,
                     std::vector<std::pair<VertexId, VertexId>> edges, LoadStats* stats);
  void rebuild_postings();

  std::vector<ExternalId> external_ids_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::size_t> adj_offsets_{0};
  std::vector<VertexId> adj_;
  std::vector<EdgeId> adj_edges_;

  std::vector<std::string> labels_;
  std::vector<std::size_t> attr_offsets_{0};
  std::vector<AttributeId> attrs_;
  std::vector<std::size_t> posting_offsets_{0};
  std::vector<VertexId> postings_;
};

/// Parses "u<ws>v" lines; '#' lines are comments, blank lines ignored.
Graph parse_edge_list(std::istream& in, LoadStats* stats = nullptr);
Graph load_edge_list(const std::string& path, LoadStats* stats = nullptr);

/// Parses "v<TAB>label1<TAB>label2..." lines against the vertices of `g`.
/// Multiple lines for one vertex are merged.
Graph parse_attributes(std::istream& in, const Graph& g);
Graph load_attributes(const std::string& path, const Graph& g);

void write_edge_list(std::ostream& out, const Graph& g);
void write_attributes(std::ostream& out, const Graph& g);

}  // namespace atc
