#include "atc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "atc/errors.hpp"

namespace atc {

Graph Graph::build(std::vector<ExternalId> external_ids, std::vector<std::pair<VertexId, VertexId>> edges,
                   LoadStats* stats) {
  Graph g;
  g.external_ids_ = std::move(external_ids);
  const std::size_t n = g.external_ids_.size();

  std::size_t loops = 0;
  std::vector<std::pair<VertexId, VertexId>> clean;
  clean.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) {
      ++loops;
      continue;
    }
    clean.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(clean.begin(), clean.end());
  const auto before = clean.size();
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());
  if (stats) {
    stats->self_loops += loops;
    stats->duplicate_edges += before - clean.size();
  }
  g.edges_ = std::move(clean);

  std::vector<std::size_t> deg(n, 0);
  for (auto [u, v] : g.edges_) {
    ++deg[u];
    ++deg[v];
  }
  g.adj_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.adj_offsets_[v + 1] = g.adj_offsets_[v] + deg[v];
  g.adj_.resize(g.adj_offsets_[n]);
  g.adj_edges_.resize(g.adj_offsets_[n]);
  std::vector<std::size_t> fill(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
  // Edges are sorted by (u,v), so filling in edge order yields sorted lists for
  // the smaller endpoint; sort each list afterwards for the larger endpoint.
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    auto [u, v] = g.edges_[e];
    g.adj_[fill[u]] = v;
    g.adj_edges_[fill[u]++] = e;
    g.adj_[fill[v]] = u;
    g.adj_edges_[fill[v]++] = e;
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto b = g.adj_offsets_[v], e = g.adj_offsets_[v + 1];
    std::vector<std::pair<VertexId, EdgeId>> tmp;
    tmp.reserve(e - b);
    for (auto i = b; i < e; ++i) tmp.emplace_back(g.adj_[i], g.adj_edges_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (auto i = b; i < e; ++i) {
      g.adj_[i] = tmp[i - b].first;
      g.adj_edges_[i] = tmp[i - b].second;
    }
  }
  g.attr_offsets_.assign(n + 1, 0);
  g.rebuild_postings();
  return g;
}

Graph Graph::from_parts(std::vector<ExternalId> external_ids, std::vector<std::pair<VertexId, VertexId>> edges) {
  if (!std::is_sorted(external_ids.begin(), external_ids.end()) ||
      std::adjacent_find(external_ids.begin(), external_ids.end()) != external_ids.end())
    throw std::invalid_argument("external ids must be sorted and distinct");
  for (auto [u, v] : edges)
    if (u >= external_ids.size() || v >= external_ids.size()) throw std::invalid_argument("edge endpoint out of range");
  return build(std::move(external_ids), std::move(edges), nullptr);
}

Graph Graph::from_edge_pairs(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
                             LoadStats* stats) {
  std::vector<ExternalId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  for (auto [u, v] : edges)
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
  return build(std::move(ids), {edges.begin(), edges.end()}, stats);
}

Graph Graph::from_external_edges(std::span<const std::pair<ExternalId, ExternalId>> edges, LoadStats* stats) {
  std::vector<ExternalId> ids;
  ids.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto lookup = [&](ExternalId x) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };
  std::vector<std::pair<VertexId, VertexId>> internal;
  internal.reserve(edges.size());
  for (auto [u, v] : edges) internal.emplace_back(lookup(u), lookup(v));
  return build(std::move(ids), std::move(internal), stats);
}

Graph Graph::with_attributes(const std::vector<std::vector<std::string>>& labels) const {
  if (labels.size() != num_vertices()) throw std::invalid_argument("attribute table size mismatch");
  Graph g = *this;
  std::vector<std::string> all;
  for (const auto& ls : labels) all.insert(all.end(), ls.begin(), ls.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  g.labels_ = std::move(all);

  g.attr_offsets_.assign(num_vertices() + 1, 0);
  g.attrs_.clear();
  for (std::size_t v = 0; v < labels.size(); ++v) {
    std::vector<AttributeId> ids;
    for (const auto& l : labels[v])
      ids.push_back(static_cast<AttributeId>(std::lower_bound(g.labels_.begin(), g.labels_.end(), l) -
                                             g.labels_.begin()));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    g.attrs_.insert(g.attrs_.end(), ids.begin(), ids.end());
    g.attr_offsets_[v + 1] = g.attrs_.size();
  }
  g.rebuild_postings();
  return g;
}

void Graph::rebuild_postings() {
  const std::size_t a = labels_.size();
  std::vector<std::size_t> count(a, 0);
  for (auto w : attrs_) ++count[w];
  posting_offsets_.assign(a + 1, 0);
  for (std::size_t w = 0; w < a; ++w) posting_offsets_[w + 1] = posting_offsets_[w] + count[w];
  postings_.resize(attrs_.size());
  std::vector<std::size_t> fill(posting_offsets_.begin(), posting_offsets_.end() - 1);
  for (VertexId v = 0; v < num_vertices(); ++v)
    for (auto w : attributes(v)) postings_[fill[w]++] = v;
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  if (u >= num_vertices() || v >= num_vertices()) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::optional<VertexId> Graph::internal_id(ExternalId ext) const {
  auto it = std::lower_bound(external_ids_.begin(), external_ids_.end(), ext);
  if (it == external_ids_.end() || *it != ext) return std::nullopt;
  return static_cast<VertexId>(it - external_ids_.begin());
}

std::optional<AttributeId> Graph::find_attribute(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<AttributeId>(it - labels_.begin());
}

bool Graph::has_attribute(VertexId v, AttributeId w) const {
  auto as = attributes(v);
  return std::binary_search(as.begin(), as.end(), w);
}

namespace {

std::optional<ExternalId> parse_id(std::string_view tok) {
  ExternalId v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

}  // namespace

Graph parse_edge_list(std::istream& in, LoadStats* stats) {
  std::vector<std::pair<ExternalId, ExternalId>> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
      continue;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a >> b) || (ss >> extra)) throw InputError("malformed edge line", lineno);
    auto u = parse_id(a), v = parse_id(b);
    if (!u || !v) throw InputError("malformed edge line", lineno);
    edges.emplace_back(*u, *v);
  }
  if (in.bad()) throw InputError("read failure");
  Graph g = Graph::from_external_edges(edges, stats);
  if (g.num_edges() == 0) throw InputError("empty graph");
  return g;
}

Graph load_edge_list(const std::string& path, LoadStats* stats) {
  auto in = open_or_throw(path);
  return parse_edge_list(in, stats);
}

Graph parse_attributes(std::istream& in, const Graph& g) {
  std::vector<std::vector<std::string>> labels(g.num_vertices());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> toks;
    std::string_view rest = line;
    while (true) {
      auto tab = rest.find('\t');
      toks.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    auto ext = parse_id(toks.front());
    if (!ext) throw InputError("malformed vertex id in attribute file", lineno);
    auto v = g.internal_id(*ext);
    if (!v) throw InputError("unknown vertex " + std::string(toks.front()) + " in attribute file", lineno);
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (toks[i].empty()) throw InputError("empty attribute label", lineno);
      labels[*v].emplace_back(toks[i]);
    }
  }
  if (in.bad()) throw InputError("read failure");
  return g.with_attributes(labels);
}

Graph load_attributes(const std::string& path, const Graph& g) {
  auto in = open_or_throw(path);
  return parse_attributes(in, g);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << g.external_id(u) << '\t' << g.external_id(v) << '\n';
}

void write_attributes(std::ostream& out, const Graph& g) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto as = g.attributes(v);
    if (as.empty()) continue;
    out << g.external_id(v);
    for (auto w : as) out << '\t' << g.attribute_label(w);
    out << '\n';
  }
}

}  // namespace atc
