#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atc/graph.hpp"
#include "atc/subgraph.hpp"
#include "oracles.hpp"

namespace fixture {

inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bool coin(std::mt19937_64& rng, int num, int den) { return static_cast<int>(rng() % den) < num; }

/// G(n, num/den) edge list.
inline std::vector<oracle::Edge> random_edges(std::mt19937_64& rng, int n, int num, int den) {
  std::vector<oracle::Edge> out;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng, num, den)) out.emplace_back(u, v);
  return out;
}

/// Random attribute sets over labels a0..a{pool-1}.
inline std::vector<std::set<int>> random_attrs(std::mt19937_64& rng, int n, int pool, int num, int den) {
  std::vector<std::set<int>> out(n);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < pool; ++w)
      if (coin(rng, num, den)) out[v].insert(w);
  return out;
}

inline std::string label(int w) { return "a" + std::to_string(w); }

inline atc::Graph make_graph(int n, const std::vector<oracle::Edge>& edges,
                             const std::vector<std::set<int>>& attrs = {}) {
  std::vector<std::pair<atc::VertexId, atc::VertexId>> e;
  for (auto [u, v] : edges) e.emplace_back(u, v);
  atc::Graph g = atc::Graph::from_edge_pairs(static_cast<std::size_t>(n), e);
  if (attrs.empty()) return g;
  std::vector<std::vector<std::string>> labels(n);
  for (int v = 0; v < n; ++v)
    for (int w : attrs[v]) labels[v].push_back(label(w));
  return g.with_attributes(labels);
}

/// Attribute ids of the given oracle labels in g (absent labels skipped).
inline std::vector<atc::AttributeId> attr_ids(const atc::Graph& g, const std::vector<int>& ws) {
  std::vector<atc::AttributeId> out;
  for (int w : ws)
    if (auto id = g.find_attribute(label(w))) out.push_back(*id);
  return out;
}

inline std::vector<oracle::Edge> edge_pairs(const atc::Graph& g, const std::vector<atc::EdgeId>& edges) {
  std::vector<oracle::Edge> out;
  for (auto e : edges) {
    auto [u, v] = g.endpoints(e);
    out.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return out;
}

inline std::set<oracle::Edge> edge_set(const atc::Graph& g) {
  std::set<oracle::Edge> out;
  for (auto [u, v] : g.edges()) out.insert(oracle::norm(static_cast<int>(u), static_cast<int>(v)));
  return out;
}

inline std::vector<int> as_ints(const std::vector<atc::VertexId>& vs) { return {vs.begin(), vs.end()}; }

/// The attributed example graph used throughout the documentation: vertex
/// names map to ids in order of `names`.
struct Named {
  atc::Graph graph;
  std::vector<std::string> names;
  atc::VertexId id(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<atc::VertexId>(i);
    throw std::out_of_range(name);
  }
  atc::AttributeId attr(const std::string& l) const { return *graph.find_attribute(l); }
};

/// Collaboration-style example: vertices with topic labels, no edges needed
/// for score arithmetic.
inline Named topics_example() {
  Named n;
  n.names = {"q1", "q2", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10"};
  std::vector<std::vector<std::string>> labels = {
      {"DB", "DM", "ML"}, {"DB", "DM"}, {"DB"}, {"DB"}, {"DB"}, {"DB"}, {"DB"}, {"DB"},
      {"IR"},             {"ML"},       {},     {"ML"}};
  std::vector<std::pair<atc::VertexId, atc::VertexId>> none;
  n.graph = atc::Graph::from_edge_pairs(n.names.size(), none).with_attributes(labels);
  return n;
}

}  // namespace fixture
