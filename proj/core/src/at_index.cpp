#include "atc/at_index.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace atc {
namespace {

std::uint64_t key(std::uint32_t w, std::uint32_t x) { return (static_cast<std::uint64_t>(w) << 32) | x; }

AttributeTruss decompose_projection(const Graph& g, AttributeId w) {
  auto holders = g.holders(w);
  auto local = [&](VertexId v) {
    return static_cast<VertexId>(std::lower_bound(holders.begin(), holders.end(), v) - holders.begin());
  };
  // Holders are sorted, so local edges come out in parent edge-id order.
  std::vector<std::pair<VertexId, VertexId>> local_edges;
  std::vector<EdgeId> parent_edges;
  for (auto u : holders) {
    auto nb = g.neighbors(u);
    auto es = g.incident_edges(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] > u && g.has_attribute(nb[i], w)) {
        local_edges.emplace_back(local(u), local(nb[i]));
        parent_edges.push_back(es[i]);
      }
    }
  }
  Graph gw = Graph::from_edge_pairs(holders.size(), local_edges);
  TrussnessMap tm = truss_decompose(gw);

  AttributeTruss out;
  out.edges.reserve(parent_edges.size());
  for (EdgeId le = 0; le < parent_edges.size(); ++le) out.edges.emplace_back(parent_edges[le], tm.edge[le]);
  out.vertices.reserve(holders.size());
  for (VertexId lv = 0; lv < holders.size(); ++lv) out.vertices.emplace_back(holders[lv], tm.vertex[lv]);
  return out;
}

std::vector<InvertedEntry> inverted_list(const Graph& g, const TrussnessMap& tm, AttributeId w) {
  std::vector<InvertedEntry> inv;
  for (auto v : g.holders(w)) inv.push_back({v, tm.vertex[v]});
  std::stable_sort(inv.begin(), inv.end(),
                   [](const InvertedEntry& a, const InvertedEntry& b) { return a.trussness > b.trussness; });
  return inv;
}

[[noreturn]] void corrupt(const std::string& what) { throw IndexError(IndexError::Kind::kCorrupt, what); }

/// Line reader that accumulates a CRC over each section's lines.
class SectionReader {
 public:
  explicit SectionReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) corrupt("unexpected end of index file");
    ++lineno_;
    crc_ = crc32(crc_, reinterpret_cast<const Bytef*>(line.data()), static_cast<uInt>(line.size()));
    crc_ = crc32(crc_, reinterpret_cast<const Bytef*>("\n"), 1);
    return line;
  }

  void check_crc() {
    const uLong expected = crc_;
    std::string line;
    if (!std::getline(in_, line)) corrupt("unexpected end of index file");
    ++lineno_;
    auto f = fields(line);
    if (f.size() != 2 || f[0] != "CRC32") corrupt("missing section checksum at line " + std::to_string(lineno_));
    if (to_u64(f[1]) != expected)
      throw IndexError(IndexError::Kind::kChecksumMismatch, "checksum mismatch at line " + std::to_string(lineno_));
    crc_ = crc32(0L, Z_NULL, 0);
  }

  std::vector<std::string_view> fields(std::string_view line) const {
    std::vector<std::string_view> out;
    while (true) {
      auto tab = line.find('\t');
      out.push_back(line.substr(0, tab));
      if (tab == std::string_view::npos) break;
      line.remove_prefix(tab + 1);
    }
    return out;
  }

  std::uint64_t to_u64(std::string_view s) const {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      corrupt("malformed number at line " + std::to_string(lineno_));
    return v;
  }

  std::vector<std::uint64_t> row(std::size_t width) {
    auto line = next();
    auto f = fields(line);
    if (f.size() != width) corrupt("malformed row at line " + std::to_string(lineno_));
    std::vector<std::uint64_t> out;
    for (auto x : f) out.push_back(to_u64(x));
    return out;
  }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
  uLong crc_ = crc32(0L, Z_NULL, 0);
};

class SectionWriter {
 public:
  explicit SectionWriter(std::ostream& out) : out_(out) {}
  void line(const std::string& s) {
    out_ << s << '\n';
    crc_ = crc32(crc_, reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size()));
    crc_ = crc32(crc_, reinterpret_cast<const Bytef*>("\n"), 1);
  }
  void end_section() {
    out_ << "CRC32\t" << crc_ << '\n';
    crc_ = crc32(0L, Z_NULL, 0);
  }

 private:
  std::ostream& out_;
  uLong crc_ = crc32(0L, Z_NULL, 0);
};

}  // namespace

ATIndex ATIndex::build(const Graph& g, unsigned threads) {
  ATIndex idx;
  idx.external_ids_.resize(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) idx.external_ids_[v] = g.external_id(v);
  idx.edges_.assign(g.edges().begin(), g.edges().end());
  idx.labels_.resize(g.num_attributes());
  for (AttributeId w = 0; w < g.num_attributes(); ++w) idx.labels_[w] = g.attribute_label(w);

  idx.structural_ = truss_decompose(g);

  const std::size_t a = g.num_attributes();
  idx.attr_.resize(a);
  idx.inverted_.resize(a);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t w = next++; w < a; w = next++) {
      idx.attr_[w] = decompose_projection(g, static_cast<AttributeId>(w));
      idx.inverted_[w] = inverted_list(g, idx.structural_, static_cast<AttributeId>(w));
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(a, 1))));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  idx.finish();
  return idx;
}

void ATIndex::finish() {
  edge_lookup_.clear();
  vertex_lookup_.clear();
  for (AttributeId w = 0; w < attr_.size(); ++w) {
    for (auto [e, t] : attr_[w].edges) edge_lookup_.emplace(key(w, e), t);
    for (auto [v, t] : attr_[w].vertices) vertex_lookup_.emplace(key(w, v), t);
  }
}

EdgeId ATIndex::edge_id(VertexId u, VertexId v) const {
  auto p = std::make_pair(std::min(u, v), std::max(u, v));
  auto it = std::lower_bound(edges_.begin(), edges_.end(), p);
  if (it == edges_.end() || *it != p) throw std::out_of_range("unknown edge");
  return static_cast<EdgeId>(it - edges_.begin());
}

std::uint32_t ATIndex::structural_edge(EdgeId e) const {
  if (e >= edges_.size()) throw std::out_of_range("unknown edge");
  return structural_.edge[e];
}

std::uint32_t ATIndex::structural_edge(VertexId u, VertexId v) const { return structural_.edge[edge_id(u, v)]; }

std::uint32_t ATIndex::structural_vertex(VertexId v) const {
  if (v >= external_ids_.size()) throw std::out_of_range("unknown vertex");
  return structural_.vertex[v];
}

std::uint32_t ATIndex::attribute_edge(AttributeId w, EdgeId e) const {
  if (w >= labels_.size()) throw std::out_of_range("unknown attribute");
  if (e >= edges_.size()) throw std::out_of_range("unknown edge");
  auto it = edge_lookup_.find(key(w, e));
  return it == edge_lookup_.end() ? kNotInProjection : it->second;
}

std::uint32_t ATIndex::attribute_edge(AttributeId w, VertexId u, VertexId v) const {
  return attribute_edge(w, edge_id(u, v));
}

std::uint32_t ATIndex::attribute_vertex(AttributeId w, VertexId v) const {
  if (w >= labels_.size()) throw std::out_of_range("unknown attribute");
  if (v >= external_ids_.size()) throw std::out_of_range("unknown vertex");
  auto it = vertex_lookup_.find(key(w, v));
  return it == vertex_lookup_.end() ? kNotInProjection : it->second;
}

std::size_t ATIndex::entry_count() const {
  std::size_t c = external_ids_.size() + edges_.size();
  for (std::size_t w = 0; w < attr_.size(); ++w) c += attr_[w].edges.size() + inverted_[w].size();
  return c;
}

Graph ATIndex::to_graph() const {
  Graph g = Graph::from_parts(external_ids_, edges_);
  std::vector<std::vector<std::string>> labels(external_ids_.size());
  for (AttributeId w = 0; w < inverted_.size(); ++w)
    for (const auto& entry : inverted_[w]) labels[entry.vertex].push_back(labels_[w]);
  return g.with_attributes(labels);
}

bool ATIndex::matches(const Graph& g) const {
  if (g.num_vertices() != external_ids_.size() || g.num_edges() != edges_.size() ||
      g.num_attributes() != labels_.size())
    return false;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.external_id(v) != external_ids_[v]) return false;
  if (!std::equal(edges_.begin(), edges_.end(), g.edges().begin())) return false;
  for (AttributeId w = 0; w < labels_.size(); ++w) {
    if (g.attribute_label(w) != labels_[w] || g.holders(w).size() != inverted_[w].size()) return false;
    for (const auto& entry : inverted_[w])
      if (!g.has_attribute(entry.vertex, w)) return false;
  }
  return true;
}

void ATIndex::save(std::ostream& out) const {
  out << "ATIDX\t" << kIndexFormatVersion << '\n';
  SectionWriter w(out);
  auto ext = [&](VertexId v) { return std::to_string(external_ids_[v]); };

  w.line("STRUCT_V\t" + std::to_string(external_ids_.size()));
  for (VertexId v = 0; v < external_ids_.size(); ++v) w.line(ext(v) + '\t' + std::to_string(structural_.vertex[v]));
  w.end_section();

  w.line("STRUCT_E\t" + std::to_string(edges_.size()));
  for (EdgeId e = 0; e < edges_.size(); ++e)
    w.line(ext(edges_[e].first) + '\t' + ext(edges_[e].second) + '\t' + std::to_string(structural_.edge[e]));
  w.end_section();

  for (AttributeId a = 0; a < labels_.size(); ++a) {
    w.line("ATTR\t" + labels_[a] + '\t' + std::to_string(attr_[a].edges.size()));
    for (auto [e, t] : attr_[a].edges)
      w.line(ext(edges_[e].first) + '\t' + ext(edges_[e].second) + '\t' + std::to_string(t));
    w.end_section();
    w.line("INV\t" + labels_[a] + '\t' + std::to_string(inverted_[a].size()));
    for (const auto& entry : inverted_[a]) w.line(ext(entry.vertex) + '\t' + std::to_string(entry.trussness));
    w.end_section();
  }
  out << "END\n";
}

void ATIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  save(out);
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

ATIndex ATIndex::load(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) corrupt("empty index file");
  if (header.rfind("ATIDX\t", 0) != 0) corrupt("bad magic");
  if (header != "ATIDX\t" + std::to_string(kIndexFormatVersion))
    throw IndexError(IndexError::Kind::kVersionMismatch, "unsupported index version: " + header.substr(6));

  SectionReader r(in);
  ATIndex idx;

  auto section = [&](std::string_view name, std::size_t width_with_label) {
    auto line = r.next();
    auto f = r.fields(line);
    if (f.size() != width_with_label || f[0] != name) corrupt("expected section " + std::string(name));
    return std::make_pair(std::string(width_with_label == 3 ? f[1] : std::string_view{}), r.to_u64(f.back()));
  };
  auto vertex = [&](std::uint64_t ext) {
    auto it = std::lower_bound(idx.external_ids_.begin(), idx.external_ids_.end(), ext);
    if (it == idx.external_ids_.end() || *it != ext) corrupt("unknown vertex id " + std::to_string(ext));
    return static_cast<VertexId>(it - idx.external_ids_.begin());
  };

  auto [unused_v, n] = section("STRUCT_V", 2);
  idx.structural_.vertex.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = r.row(2);
    if (i > 0 && row[0] <= idx.external_ids_.back()) corrupt("vertex ids not increasing");
    idx.external_ids_.push_back(row[0]);
    idx.structural_.vertex[i] = static_cast<std::uint32_t>(row[1]);
  }
  r.check_crc();

  auto [unused_e, m] = section("STRUCT_E", 2);
  idx.structural_.edge.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto row = r.row(3);
    const VertexId u = vertex(row[0]), v = vertex(row[1]);
    if (u >= v || (i > 0 && std::make_pair(u, v) <= idx.edges_.back())) corrupt("edges not in canonical order");
    idx.edges_.emplace_back(u, v);
    idx.structural_.edge[i] = static_cast<std::uint32_t>(row[2]);
    idx.structural_.max_trussness = std::max(idx.structural_.max_trussness, idx.structural_.edge[i]);
  }
  r.check_crc();

  while (true) {
    std::string line;
    if (in.peek() == 'E') {
      if (!std::getline(in, line) || line != "END") corrupt("bad trailer");
      break;
    }
    auto [label, count] = section("ATTR", 3);
    if (!idx.labels_.empty() && label <= idx.labels_.back()) corrupt("attribute sections not sorted");
    idx.labels_.push_back(label);
    AttributeTruss at;
    for (std::size_t i = 0; i < count; ++i) {
      auto row = r.row(3);
      at.edges.emplace_back(idx.edge_id(vertex(row[0]), vertex(row[1])), static_cast<std::uint32_t>(row[2]));
    }
    r.check_crc();

    auto [inv_label, inv_count] = section("INV", 3);
    if (inv_label != label) corrupt("INV section does not follow its ATTR section");
    std::vector<InvertedEntry> inv;
    for (std::size_t i = 0; i < inv_count; ++i) {
      auto row = r.row(2);
      inv.push_back({vertex(row[0]), static_cast<std::uint32_t>(row[1])});
    }
    r.check_crc();

    // Projected vertex trussness: max over incident projected edges.
    std::vector<std::pair<VertexId, std::uint32_t>> verts;
    for (const auto& entry : inv) verts.emplace_back(entry.vertex, 0);
    std::sort(verts.begin(), verts.end());
    for (auto [e, t] : at.edges) {
      for (VertexId x : {idx.edges_[e].first, idx.edges_[e].second}) {
        auto it = std::lower_bound(verts.begin(), verts.end(), std::make_pair(x, 0u));
        if (it == verts.end() || it->first != x) corrupt("projected edge endpoint missing from inverted list");
        it->second = std::max(it->second, t);
      }
    }
    at.vertices = std::move(verts);
    idx.attr_.push_back(std::move(at));
    idx.inverted_.push_back(std::move(inv));
  }
  idx.finish();
  return idx;
}

ATIndex ATIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load(in);
}

bool operator==(const ATIndex& a, const ATIndex& b) {
  return a.external_ids_ == b.external_ids_ && a.edges_ == b.edges_ && a.labels_ == b.labels_ &&
         a.structural_.edge == b.structural_.edge && a.structural_.vertex == b.structural_.vertex &&
         a.structural_.max_trussness == b.structural_.max_trussness && a.attr_ == b.attr_ &&
         a.inverted_ == b.inverted_;
}

}  // namespace atc
