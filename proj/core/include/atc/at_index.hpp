#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "atc/graph.hpp"
#include "atc/truss.hpp"

namespace atc {

/// Returned by attribute lookups for an edge or vertex outside G_w.
inline constexpr std::uint32_t kNotInProjection = std::numeric_limits<std::uint32_t>::max();

inline constexpr int kIndexFormatVersion = 1;

class IndexError : public std::runtime_error {
 public:
  enum class Kind { kCorrupt, kVersionMismatch, kChecksumMismatch };
  IndexError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct InvertedEntry {
  VertexId vertex;
  std::uint32_t trussness;  // structural tau_G(v)
  friend bool operator==(const InvertedEntry&, const InvertedEntry&) = default;
};

/// Trussness of G_w, the subgraph induced by the holders of one attribute.
struct AttributeTruss {
  std::vector<std::pair<EdgeId, std::uint32_t>> edges;       // E(G_w), by edge id
  std::vector<std::pair<VertexId, std::uint32_t>> vertices;  // V_w, by vertex id; 0 = no edge in G_w
  friend bool operator==(const AttributeTruss&, const AttributeTruss&) = default;
};

/// Structural trussness of G, per-attribute projected trussness, and inverted
/// attribute lists sorted by decreasing structural vertex trussness.
class ATIndex {
 public:
  /// Per-attribute projections are decomposed independently on `threads`
  /// workers and merged in attribute order.
  static ATIndex build(const Graph& g, unsigned threads = 1);

  std::size_t num_vertices() const { return external_ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_attributes() const { return labels_.size(); }
  const std::string& attribute_label(AttributeId w) const { return labels_.at(w); }
  std::uint32_t tau_max() const { return structural_.max_trussness; }
  const TrussnessMap& structural() const { return structural_; }
  const AttributeTruss& attribute_truss(AttributeId w) const { return attr_.at(w); }

  std::uint32_t structural_edge(EdgeId e) const;
  std::uint32_t structural_edge(VertexId u, VertexId v) const;
  std::uint32_t structural_vertex(VertexId v) const;
  /// tau_{G_w}(e), or kNotInProjection when e is not an edge of G_w.
  std::uint32_t attribute_edge(AttributeId w, EdgeId e) const;
  std::uint32_t attribute_edge(AttributeId w, VertexId u, VertexId v) const;
  /// tau_{G_w}(v), or kNotInProjection when v does not hold w.
  std::uint32_t attribute_vertex(AttributeId w, VertexId v) const;
  std::span<const InvertedEntry> inverted(AttributeId w) const { return inverted_.at(w); }

  /// Stored rows: n + m + sum_w (|E(G_w)| + |V_w|).
  std::size_t entry_count() const;

  /// The indexed graph, with attributes recovered from the inverted lists.
  Graph to_graph() const;
  /// Same vertex ids, edges and attribute table as g.
  bool matches(const Graph& g) const;

  void save(std::ostream& out) const;
  void save(const std::string& path) const;
  /// Throws IndexError (corrupt / version mismatch / checksum mismatch).
  static ATIndex load(std::istream& in);
  static ATIndex load(const std::string& path);

  friend bool operator==(const ATIndex& a, const ATIndex& b);

 private:
  EdgeId edge_id(VertexId u, VertexId v) const;
  void finish();

  std::vector<ExternalId> external_ids_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::string> labels_;
  TrussnessMap structural_;
  std::vector<AttributeTruss> attr_;
  std::vector<std::vector<InvertedEntry>> inverted_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_lookup_;
  std::unordered_map<std::uint64_t, std::uint32_t> vertex_lookup_;
};

}  // namespace atc
