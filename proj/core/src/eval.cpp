#include "atc/eval.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "atc/errors.hpp"
#include "atc/local_search.hpp"
#include "atc/score.hpp"
#include "atc/truss.hpp"

namespace atc {
namespace {

// Portable bounded draw: std::uniform_int_distribution is not specified
// bit-for-bit across standard libraries.
std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return lo + x % span;
}

bool bernoulli(std::mt19937_64& rng, const Rational& p) {
  return static_cast<std::int64_t>(uniform(rng, 0, static_cast<std::uint64_t>(p.den()) - 1)) < p.num();
}

// k distinct values from [0, n), in draw order.
std::vector<std::uint32_t> sample(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[uniform(rng, i, n - 1)]);
  pool.resize(k);
  return pool;
}

std::string pool_label(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "attr%03zu", i);
  return buf;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  while (true) {
    auto p = s.find(sep);
    out.push_back(s.substr(0, p));
    if (p == std::string_view::npos) break;
    s.remove_prefix(p + 1);
  }
  return out;
}

VertexId parse_vertex(const Graph& g, std::string_view tok, std::size_t line) {
  ExternalId ext = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), ext);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
    throw InputError("malformed vertex id '" + std::string(tok) + "'", line);
  auto v = g.internal_id(ext);
  if (!v) throw InputError("unknown vertex " + std::string(tok), line);
  return *v;
}

}  // namespace

PlantedGraph generate_planted_graph(const GeneratorConfig& cfg) {
  if (cfg.n < 3) throw std::invalid_argument("generator needs at least 3 vertices");
  if (cfg.min_size < 2 || cfg.min_size > cfg.max_size || cfg.max_size > cfg.n)
    throw std::invalid_argument("bad community size range");
  if (!cfg.overlap && cfg.communities * cfg.min_size > cfg.n)
    throw std::invalid_argument("disjoint communities do not fit in the vertex set");
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  PlantedGraph out;

  const auto order = sample(rng, cfg.n, cfg.n);
  std::size_t used = 0;
  for (std::size_t c = 0; c < cfg.communities; ++c) {
    auto size = uniform(rng, cfg.min_size, cfg.max_size);
    Community com;
    if (cfg.overlap) {
      com.vertices = sample(rng, cfg.n, size);
    } else {
      // Keep room for the remaining communities at their minimum size.
      const std::size_t reserve = (cfg.communities - c - 1) * cfg.min_size;
      size = std::min<std::uint64_t>(size, cfg.n - used - reserve);
      com.vertices.assign(order.begin() + static_cast<std::ptrdiff_t>(used),
                          order.begin() + static_cast<std::ptrdiff_t>(used + size));
      used += size;
    }
    std::sort(com.vertices.begin(), com.vertices.end());
    for (std::size_t i = 0; i < com.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < com.vertices.size(); ++j)
        if (bernoulli(rng, cfg.p_in)) edges.emplace_back(com.vertices[i], com.vertices[j]);
    out.truth.communities.push_back(std::move(com));
  }

  // Background: n * deg / 2 uniform pairs.
  const Rational target = cfg.background_degree * Rational(static_cast<std::int64_t>(cfg.n)) / Rational(2);
  const auto m_bg = static_cast<std::size_t>(target.num() / target.den());
  for (std::size_t i = 0; i < m_bg; ++i) {
    auto u = static_cast<VertexId>(uniform(rng, 0, cfg.n - 1));
    auto v = static_cast<VertexId>(uniform(rng, 0, cfg.n - 1));
    if (u != v) edges.emplace_back(u, v);
  }
  std::vector<std::uint8_t> touched(cfg.n, 0);
  for (auto [u, v] : edges) touched[u] = touched[v] = 1;
  for (VertexId v = 0; v < cfg.n; ++v) {
    if (touched[v]) continue;
    VertexId u;
    do u = static_cast<VertexId>(uniform(rng, 0, cfg.n - 1));
    while (u == v);
    edges.emplace_back(u, v);
    touched[u] = touched[v] = 1;
  }
  out.graph = Graph::from_edge_pairs(cfg.n, edges);
  return out;
}

std::size_t attribute_pool_size(std::size_t n, const PlantConfig& cfg) {
  const Rational scaled = cfg.pool_ratio * Rational(static_cast<std::int64_t>(n));
  return std::max<std::size_t>(cfg.attrs_per_community, static_cast<std::size_t>(scaled.num() / scaled.den()));
}

Graph plant_attributes(const Graph& g, GroundTruth& gt, const PlantConfig& cfg) {
  if (cfg.coverage > 100) throw std::invalid_argument("coverage is a percentage");
  if (cfg.noise_lo > cfg.noise_hi) throw std::invalid_argument("empty noise range");
  if (cfg.pool_ratio < Rational(0)) throw std::invalid_argument("pool ratio must be non-negative");
  const std::size_t pool = attribute_pool_size(g.num_vertices(), cfg);
  if (pool < cfg.attrs_per_community)
    throw std::invalid_argument("attribute pool smaller than the number of labels to draw");

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::vector<std::string>> labels(g.num_vertices());
  std::vector<std::vector<std::uint32_t>> planted(gt.communities.size());
  for (std::size_t c = 0; c < gt.communities.size(); ++c) {
    const auto& members = gt.communities[c].vertices;
    for (auto v : members)
      if (v >= g.num_vertices()) throw std::invalid_argument("community vertex outside the graph");
    planted[c] = sample(rng, pool, cfg.attrs_per_community);
    const std::size_t carriers = (members.size() * cfg.coverage + 50) / 100;
    for (auto i : sample(rng, members.size(), carriers))
      for (auto a : planted[c]) labels[members[i]].push_back(pool_label(a));
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    // Small graphs have pools narrower than the noise range; cap at the pool.
    const auto count = std::min<std::size_t>(uniform(rng, cfg.noise_lo, cfg.noise_hi), pool);
    for (auto a : sample(rng, pool, count)) labels[v].push_back(pool_label(a));
  }
  Graph out = g.with_attributes(labels);
  for (std::size_t c = 0; c < gt.communities.size(); ++c) {
    auto& attrs = gt.communities[c].attrs;
    attrs.clear();
    for (auto a : planted[c])
      if (auto id = out.find_attribute(pool_label(a))) attrs.push_back(*id);
    std::sort(attrs.begin(), attrs.end());
  }
  return out;
}

std::vector<AttributeId> representative_attrs(const Graph& g, std::span<const VertexId> community) {
  const std::int64_t in_size = static_cast<std::int64_t>(community.size());
  const std::int64_t out_size = static_cast<std::int64_t>(g.num_vertices()) - in_size;
  struct Row {
    AttributeId w;
    std::int64_t in, out;
  };
  std::vector<std::uint32_t> in_count(g.num_attributes(), 0);
  for (auto v : community)
    for (auto w : g.attributes(v)) ++in_count[w];
  std::vector<Row> rows;
  for (AttributeId w = 0; w < g.num_attributes(); ++w) {
    if (!in_count[w]) continue;
    rows.push_back({w, in_count[w], static_cast<std::int64_t>(g.holders(w).size()) - in_count[w]});
  }
  // ratio = (in / |C|) / (out / (n - |C|)); out == 0 ranks above everything.
  auto ratio_greater = [&](const Row& a, const Row& b) {
    if (a.out == 0 || b.out == 0) return a.out == 0 && b.out != 0;
    return static_cast<Int128>(a.in) * out_size * b.out * in_size > static_cast<Int128>(b.in) * out_size * a.out * in_size;
  };
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    if (ratio_greater(a, b)) return true;
    if (ratio_greater(b, a)) return false;
    if (a.in != b.in) return a.in > b.in;
    return g.attribute_label(a.w) < g.attribute_label(b.w);
  });
  std::vector<AttributeId> out;
  for (const auto& r : rows) out.push_back(r.w);
  return out;
}

std::vector<GeneratedQuery> gen_queries(const Graph& g, const GroundTruth& gt, std::size_t count,
                                        std::size_t nodes_lo, std::size_t nodes_hi, std::size_t attrs_per_query,
                                        std::uint64_t seed) {
  if (gt.communities.empty()) throw std::invalid_argument("no communities to query");
  if (nodes_lo < 1 || nodes_lo > nodes_hi) throw std::invalid_argument("bad query size range");
  std::mt19937_64 rng(seed);
  std::vector<GeneratedQuery> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto c = uniform(rng, 0, gt.communities.size() - 1);
    const auto& members = gt.communities[c].vertices;
    if (members.empty()) throw std::invalid_argument("empty community");
    const auto hi = std::min(nodes_hi, members.size());
    const auto size = uniform(rng, std::min(nodes_lo, hi), hi);
    GeneratedQuery gq;
    gq.community = c;
    for (auto j : sample(rng, members.size(), size)) gq.query.nodes.push_back(members[j]);
    std::sort(gq.query.nodes.begin(), gq.query.nodes.end());
    auto rep = representative_attrs(g, members);
    rep.resize(std::min(rep.size(), attrs_per_query));
    std::sort(rep.begin(), rep.end());
    gq.query.attrs = std::move(rep);
    out.push_back(std::move(gq));
  }
  return out;
}

F1Score f1(std::span<const VertexId> found, std::span<const VertexId> truth) {
  if (truth.empty()) throw std::invalid_argument("ground-truth community is empty");
  if (found.empty()) return {Rational(0), Rational(0), Rational(0)};
  std::vector<VertexId> common;
  std::set_intersection(found.begin(), found.end(), truth.begin(), truth.end(), std::back_inserter(common));
  const auto hit = static_cast<std::int64_t>(common.size());
  const auto nf = static_cast<std::int64_t>(found.size());
  const auto nt = static_cast<std::int64_t>(truth.size());
  return {Rational(hit, nf), Rational(hit, nt), Rational(2 * hit, nf + nt)};
}

SearchResult structure_baseline(const Graph& g, const QuerySpec& q) {
  QuerySpec blind = q;
  blind.attrs.clear();
  SearchResult r = bulk_search(g, blind).result;
  r.algorithm = "baseline";
  return r;
}

std::optional<SearchResult> brute_force_atc(const Graph& g, const QuerySpec& q) {
  const std::size_t n = g.num_vertices();
  if (n > kBruteForceMaxVertices) throw std::invalid_argument("exhaustive search is capped at 14 vertices");
  q.validate(g);
  std::uint32_t required = 0;
  for (auto v : q.nodes) required |= 1u << v;

  std::optional<SearchResult> best;
  std::vector<VertexId> members;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((mask & required) != required) continue;
    members.clear();
    for (VertexId v = 0; v < n; ++v)
      if (mask >> v & 1u) members.push_back(v);
    Subgraph h(g, members);
    if (maintain_kd_truss(h, q.nodes, q.k, q.d) != TrussStatus::kOk || h.num_vertices() != members.size())
      continue;
    const Rational f = attribute_score(h, q.attrs).score();
    if (best) {
      if (f < best->score) continue;
      if (f == best->score) {
        if (members.size() > best->vertices.size()) continue;
        if (members.size() == best->vertices.size() && members >= best->vertices) continue;
      }
    }
    SearchResult r;
    r.vertices = members;
    r.edges = h.edges();
    r.score = f;
    r.k = q.k;
    r.d = q.d;
    r.query_distance = query_distance(h, q.nodes).graph_distance;
    r.diameter = diameter(h);
    r.algorithm = "exact";
    best = std::move(r);
  }
  return best;
}

double EvalReport::mean_f1() const {
  if (queries.empty()) return 0;
  double s = 0;
  for (const auto& q : queries) s += q.score.f1.to_double();
  return s / static_cast<double>(queries.size());
}

double EvalReport::mean_runtime_ms() const {
  if (queries.empty()) return 0;
  double s = 0;
  for (const auto& q : queries) s += q.runtime_ms;
  return s / static_cast<double>(queries.size());
}

SearchResult run_algorithm(const Graph& g, const ATIndex* idx, const QuerySpec& q, const std::string& algorithm) {
  if (algorithm == "basic") return basic_search(g, q).result;
  if (algorithm == "bulk") return bulk_search(g, q).result;
  if (algorithm == "baseline") return structure_baseline(g, q);
  if (algorithm == "local") {
    if (!idx) throw std::invalid_argument("local search needs an index");
    return locatc_search(g, *idx, q);
  }
  throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
}

EvalReport run_eval(const Graph& g, const ATIndex* idx, const GroundTruth& gt,
                    const std::vector<GeneratedQuery>& queries, const std::string& algorithm, unsigned threads) {
  if (algorithm != "basic" && algorithm != "bulk" && algorithm != "local" && algorithm != "baseline")
    throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
  if (algorithm == "local" && !idx) throw std::invalid_argument("local search needs an index");
  EvalReport report;
  report.algorithm = algorithm;
  report.queries.resize(queries.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      const auto& gq = queries[i];
      if (gq.community >= gt.communities.size()) throw std::out_of_range("query names an unknown community");
      QueryOutcome& o = report.queries[i];
      o.community = gq.community;
      const auto start = std::chrono::steady_clock::now();
      try {
        SearchResult r = run_algorithm(g, idx, gq.query, algorithm);
        o.status = "ok";
        o.score = f1(r.vertices, gt.communities[gq.community].vertices);
      } catch (const NoFeasibleCommunity&) {
        o.status = "infeasible";
        o.score = {Rational(0), Rational(0), Rational(0)};
      }
      o.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return report;
}

void write_report(std::ostream& out, const EvalReport& r, bool timing) {
  out << "query\tcommunity\tstatus\tprecision\trecall\tf1";
  if (timing) out << "\truntime_ms";
  out << '\n';
  for (std::size_t i = 0; i < r.queries.size(); ++i) {
    const auto& q = r.queries[i];
    out << i << '\t' << q.community << '\t' << q.status << '\t' << q.score.precision.to_decimal() << '\t'
        << q.score.recall.to_decimal() << '\t' << q.score.f1.to_decimal();
    if (timing) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f", q.runtime_ms);
      out << '\t' << buf;
    }
    out << '\n';
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.mean_f1());
  out << "mean\t-\t" << r.algorithm << "\t-\t-\t" << buf;
  if (timing) {
    std::snprintf(buf, sizeof buf, "%.3f", r.mean_runtime_ms());
    out << '\t' << buf;
  }
  out << '\n';
}

void write_truth(std::ostream& out, const Graph& g, const GroundTruth& gt) {
  for (const auto& c : gt.communities) {
    for (std::size_t i = 0; i < c.vertices.size(); ++i) out << (i ? "\t" : "") << g.external_id(c.vertices[i]);
    out << '\n';
  }
}

GroundTruth read_truth(std::istream& in, const Graph& g) {
  GroundTruth gt;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    Community c;
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) c.vertices.push_back(parse_vertex(g, tok, lineno));
    std::sort(c.vertices.begin(), c.vertices.end());
    c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());
    gt.communities.push_back(std::move(c));
  }
  return gt;
}

void write_queries(std::ostream& out, const Graph& g, const std::vector<GeneratedQuery>& qs) {
  for (const auto& gq : qs) {
    out << gq.community << '\t';
    for (std::size_t i = 0; i < gq.query.nodes.size(); ++i) out << (i ? "," : "") << g.external_id(gq.query.nodes[i]);
    out << '\t';
    for (std::size_t i = 0; i < gq.query.attrs.size(); ++i) out << (i ? "," : "") << g.attribute_label(gq.query.attrs[i]);
    out << '\n';
  }
}

std::vector<GeneratedQuery> read_queries(std::istream& in, const Graph& g) {
  std::vector<GeneratedQuery> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() < 2 || f.size() > 3) throw InputError("malformed query line", lineno);
    GeneratedQuery gq;
    auto [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), gq.community);
    if (f[0].empty() || ec != std::errc() || ptr != f[0].data() + f[0].size())
      throw InputError("malformed community index", lineno);
    for (auto tok : split(f[1], ',')) gq.query.nodes.push_back(parse_vertex(g, tok, lineno));
    if (gq.query.nodes.empty()) throw InputError("query without nodes", lineno);
    if (f.size() == 3) {
      for (auto tok : split(f[2], ',')) {
        auto w = g.find_attribute(tok);
        if (!w) throw InputError("unknown attribute '" + std::string(tok) + "'", lineno);
        gq.query.attrs.push_back(*w);
      }
    }
    out.push_back(std::move(gq));
  }
  return out;
}

}  // namespace atc
