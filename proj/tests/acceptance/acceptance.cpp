// One PASS/FAIL line per acceptance criterion. argv[1] is the path of the
// `atc` executable (needed by the determinism check); an optional argv[2]
// runs a single criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "atc/at_index.hpp"
#include "atc/errors.hpp"
#include "atc/eval.hpp"
#include "atc/greedy.hpp"
#include "atc/local_search.hpp"
#include "atc/score.hpp"
#include "atc/truss.hpp"
#include "fixtures.hpp"

using namespace atc;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rational score_of(const Graph& g, std::vector<VertexId> vs, const std::vector<AttributeId>& wq) {
  std::sort(vs.begin(), vs.end());
  return attribute_score(g, vs, wq).score();
}

// ---------------------------------------------------------------- 1
Verdict score_fidelity() {
  std::vector<std::vector<std::string>> labels = {{"DB", "DM"}, {"DB", "DM"}, {"DB"}, {"DB"}, {"DB"},
                                                  {"DM"},       {"DM"},       {"DM"}};
  Graph g = Graph::from_edge_pairs(8, {}).with_attributes(labels);
  const std::vector<AttributeId> wq{*g.find_attribute("DB"), *g.find_attribute("DM")};
  const Rational five = score_of(g, {0, 1, 2, 3, 4}, wq);
  const Rational eight = score_of(g, {0, 1, 2, 3, 4, 5, 6, 7}, wq);

  auto ex = fixture::topics_example();
  const std::vector<AttributeId> tq{ex.attr("DB"), ex.attr("DM")};
  std::vector<VertexId> g1{ex.id("q1"), ex.id("v4")};
  std::vector<VertexId> g2{ex.id("q1"), ex.id("v4"), ex.id("v5")};
  auto gain = [&](std::vector<VertexId> base, const char* x) {
    const Rational before = score_of(ex.graph, base, tq);
    base.push_back(ex.id(x));
    return score_of(ex.graph, base, tq) - before;
  };
  const Rational a = gain(g1, "v6"), b = gain(g2, "v6"), c = gain(g1, "q2"), d = gain(g2, "q2");
  const bool ok = five == Rational(29, 5) && eight == Rational(25, 4) && a == Rational(5, 6) &&
                  b == Rational(11, 12) && c == Rational(11, 6) && d == Rational(5, 3) && b > a && d < c;
  return {ok, "f=" + text(five) + "," + text(eight) + " gains " + text(a) + "," + text(b) +
                  "," + text(c) + "," + text(d)};
}

// ---------------------------------------------------------------- 2
Verdict deletion_identity() {
  std::mt19937_64 rng(1002);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = fixture::draw(rng, 1, 50);
    auto attrs = fixture::random_attrs(rng, n, 6, 1, 3);
    Graph g = fixture::make_graph(n, fixture::random_edges(rng, n, 1, 8), attrs);
    std::vector<int> ws;
    for (int w = 0; w < 6; ++w)
      if (fixture::coin(rng, 1, 2)) ws.push_back(w);
    auto wq = fixture::attr_ids(g, ws);
    Subgraph h(g);
    const auto v = static_cast<VertexId>(fixture::draw(rng, 0, n - 1));
    // Oracle side: plain recount without the library score.
    std::vector<int> rest;
    for (int u = 0; u < n; ++u)
      if (u != static_cast<int>(v)) rest.push_back(u);
    std::vector<int> all(rest);
    all.push_back(static_cast<int>(v));
    auto [sum_all, n_all] = oracle::score_parts(all, attrs, ws);
    auto [sum_rest, n_rest] = oracle::score_parts(rest, attrs, ws);
    const std::int64_t contrib = score_contribution(h, v, wq);
    const Rational f_h = attribute_score(h, wq).score();
    const bool lib = f_h * Rational(n_all) == Rational(sum_all);
    const bool identity = sum_rest == sum_all - contrib;  // f(H-v)(|V|-1) = f(H)|V| - f_H(v)
    if (!lib || !identity) ++bad;
    (void)n_rest;
  }
  return {bad == 0, fmt("1000 triples, %d violations", bad)};
}

// ---------------------------------------------------------------- 3
Verdict truss_equivalence() {
  std::mt19937_64 rng(1003);
  long edges = 0, bad = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = fixture::draw(rng, 2, 20);
    auto e = fixture::random_edges(rng, n, fixture::draw(rng, 1, 4), 5);
    Graph g = fixture::make_graph(n, e);
    auto got = truss_decompose(g);
    auto want = oracle::truss_by_pruning(n, e);
    for (EdgeId x = 0; x < g.num_edges(); ++x) {
      auto [u, v] = g.endpoints(x);
      ++edges;
      if (got.edge[x] != static_cast<std::uint32_t>(want.at({static_cast<int>(u), static_cast<int>(v)}))) ++bad;
    }
  }
  return {bad == 0, fmt("200 graphs, %ld edges, %ld mismatches", edges, bad)};
}

// ---------------------------------------------------------------- 4
Verdict feasibility() {
  std::mt19937_64 rng(1004);
  int emitted = 0, violations = 0, empty = 0;
  std::string first;
  for (int i = 0; i < 500; ++i) {
    const int n = fixture::draw(rng, 15, 60);
    auto e = fixture::random_edges(rng, n, fixture::draw(rng, 1, 3), 10);
    auto attrs = fixture::random_attrs(rng, n, 5, 1, 3);
    Graph g = fixture::make_graph(n, e, attrs);
    ATIndex idx = ATIndex::build(g);
    QuerySpec q;
    q.nodes = {static_cast<VertexId>(fixture::draw(rng, 0, n - 1))};
    if (fixture::coin(rng, 1, 2)) q.nodes.push_back(static_cast<VertexId>(fixture::draw(rng, 0, n - 1)));
    std::sort(q.nodes.begin(), q.nodes.end());
    q.nodes.erase(std::unique(q.nodes.begin(), q.nodes.end()), q.nodes.end());
    q.attrs = fixture::attr_ids(g, {0, 1, 2});
    q.k = static_cast<std::uint32_t>(fixture::draw(rng, 3, 4));
    q.d = static_cast<std::uint32_t>(fixture::draw(rng, 1, 4));
    q.eta = static_cast<std::uint32_t>(fixture::draw(rng, 5, n));
    q.auto_kd = fixture::coin(rng, 1, 4);
    const auto graph_edges = fixture::edge_set(g);
    for (const char* algo : {"basic", "bulk", "local"}) {
      QuerySpec qa = q;
      if (std::string(algo) != "local") qa.auto_kd = false;
      try {
        SearchResult r = run_algorithm(g, &idx, qa, algo);
        ++emitted;
        auto why = oracle::verify_community(graph_edges, fixture::as_ints(r.vertices), fixture::edge_pairs(g, r.edges),
                                            fixture::as_ints(q.nodes), static_cast<int>(r.k), static_cast<int>(r.d));
        if (!why.empty()) {
          ++violations;
          if (first.empty()) first = std::string(algo) + ": " + why;
        }
      } catch (const NoFeasibleCommunity&) {
        ++empty;
      }
    }
  }
  return {violations == 0 && emitted > 300,
          fmt("500 queries x 3 algorithms: %d communities checked, %d infeasible queries, %d violations", emitted,
              empty, violations) +
              (first.empty() ? "" : " (" + first + ")")};
}

// ---------------------------------------------------------------- 5
// Small graphs with one dense group that carries both query attributes.
struct Homogeneous {
  int n;
  std::vector<oracle::Edge> edges;
  std::vector<std::set<int>> attrs;
  Graph g;
  QuerySpec q;
};

Homogeneous homogeneous_instance(std::mt19937_64& rng) {
  Homogeneous h;
  h.n = fixture::draw(rng, 7, 12);
  const int group = fixture::draw(rng, 4, std::min(7, h.n - 2));
  h.attrs.assign(h.n, {});
  for (int u = 0; u < h.n; ++u)
    for (int v = u + 1; v < h.n; ++v) {
      const bool inside = u < group && v < group;
      if (inside ? fixture::coin(rng, 9, 10) : fixture::coin(rng, 1, 4)) h.edges.emplace_back(u, v);
    }
  for (int v = 0; v < h.n; ++v) {
    if (v < group) {
      if (fixture::coin(rng, 4, 5)) h.attrs[v] = {0, 1};
    } else {
      if (fixture::coin(rng, 1, 4)) h.attrs[v].insert(fixture::draw(rng, 0, 1));
      if (fixture::coin(rng, 1, 2)) h.attrs[v].insert(2);
    }
  }
  h.g = fixture::make_graph(h.n, h.edges, h.attrs);
  h.q.nodes = {static_cast<VertexId>(fixture::draw(rng, 0, group - 1))};
  h.q.attrs = fixture::attr_ids(h.g, {0, 1});
  h.q.k = static_cast<std::uint32_t>(fixture::draw(rng, 3, 4));
  h.q.d = static_cast<std::uint32_t>(fixture::draw(rng, 2, 3));
  return h;
}

Verdict oracle_gap() {
  std::mt19937_64 rng(1005);
  int instances = 0, attempts = 0, failures = 0, violations = 0;
  double ratio_sum[3] = {0, 0, 0};
  int ratio_count = 0;
  const char* algos[3] = {"basic", "bulk", "local"};
  while (instances < 300 && attempts < 20000) {
    ++attempts;
    Homogeneous h = homogeneous_instance(rng);
    if (h.q.attrs.empty()) continue;
    auto opt = brute_force_atc(h.g, h.q);
    if (!opt) continue;
    ++instances;
    ATIndex idx = ATIndex::build(h.g);
    const auto graph_edges = fixture::edge_set(h.g);
    const bool positive = opt->score > Rational(0);
    double ratios[3] = {0, 0, 0};
    for (int a = 0; a < 3; ++a) {
      try {
        SearchResult r = run_algorithm(h.g, &idx, h.q, algos[a]);
        auto why = oracle::verify_community(graph_edges, fixture::as_ints(r.vertices),
                                            fixture::edge_pairs(h.g, r.edges), fixture::as_ints(h.q.nodes),
                                            static_cast<int>(r.k), static_cast<int>(r.d));
        if (!why.empty()) ++violations;
        if (r.score > opt->score) ++violations;  // nothing beats the exhaustive optimum
        if (positive) ratios[a] = (r.score / opt->score).to_double();
      } catch (const NoFeasibleCommunity&) {
        ++failures;
      }
    }
    if (positive) {
      ++ratio_count;
      for (int a = 0; a < 3; ++a) ratio_sum[a] += ratios[a];
    }
  }
  const double mean[3] = {ratio_sum[0] / std::max(1, ratio_count), ratio_sum[1] / std::max(1, ratio_count),
                          ratio_sum[2] / std::max(1, ratio_count)};
  const bool ok = instances == 300 && failures == 0 && violations == 0 && mean[2] >= 0.85;
  return {ok, fmt("%d feasible instances, %d empty answers, %d violations; mean f/f_opt basic=%.4f bulk=%.4f "
                  "local=%.4f (local target 0.85)",
                  instances, failures, violations, mean[0], mean[1], mean[2])};
}

// ---------------------------------------------------------------- 6
Verdict majority_insertions() {
  std::mt19937_64 rng(1006);
  int qualified = 0, bad = 0, tries = 0;
  while (qualified < 1000 && tries < 200000) {
    ++tries;
    const int n = fixture::draw(rng, 2, 30);
    auto attrs = fixture::random_attrs(rng, n, 5, 1, 2);
    Graph g = fixture::make_graph(n, {}, attrs);
    std::vector<int> ws;
    for (int w = 0; w < 5; ++w)
      if (fixture::coin(rng, 2, 3)) ws.push_back(w);
    auto wq = fixture::attr_ids(g, ws);
    std::vector<VertexId> members;
    for (int v = 1; v < n; ++v)
      if (fixture::coin(rng, 1, 2)) members.push_back(static_cast<VertexId>(v));
    if (members.empty()) continue;
    if (!is_majority(Subgraph(g, members), g.attributes(0), wq)) continue;
    ++qualified;
    std::vector<int> before(members.begin(), members.end());
    std::vector<int> after(before);
    after.push_back(0);
    auto [sb, nb] = oracle::score_parts(before, attrs, ws);
    auto [sa, na] = oracle::score_parts(after, attrs, ws);
    if (!(static_cast<__int128>(sa) * nb > static_cast<__int128>(sb) * na)) ++bad;
  }
  return {qualified == 1000 && bad == 0, fmt("%d qualified insertions, %d without strict increase", qualified, bad)};
}

// ---------------------------------------------------------------- 7
Verdict steiner_bound() {
  std::mt19937_64 rng(1007);
  int checked = 0, bad = 0, tries = 0;
  Rational worst(0);
  while (checked < 200 && tries < 5000) {
    ++tries;
    const int n = fixture::draw(rng, 4, 12);
    auto e = fixture::random_edges(rng, n, fixture::draw(rng, 2, 3), 6);
    auto attrs = fixture::random_attrs(rng, n, 3, 1, 2);
    Graph g = fixture::make_graph(n, e, attrs);
    ATIndex idx = ATIndex::build(g);
    QuerySpec q;
    const int t = fixture::draw(rng, 1, 3);
    for (int i = 0; i < t; ++i) q.nodes.push_back(static_cast<VertexId>(fixture::draw(rng, 0, n - 1)));
    std::sort(q.nodes.begin(), q.nodes.end());
    q.nodes.erase(std::unique(q.nodes.begin(), q.nodes.end()), q.nodes.end());
    q.attrs = fixture::attr_ids(g, {0, 1});
    q.gamma = Rational(fixture::draw(rng, 0, 5), 5);
    EdgeWeighting w(idx, q.attrs, q.gamma);
    std::vector<oracle::WeightedEdge> we;
    for (EdgeId x = 0; x < g.num_edges(); ++x) {
      auto [u, v] = g.endpoints(x);
      we.push_back({static_cast<int>(u), static_cast<int>(v), w.scaled(x)});
    }
    const auto opt = oracle::steiner_optimum(n, we, fixture::as_ints(q.nodes));
    if (opt < 0) continue;
    ++checked;
    SteinerSeed s = steiner_seed(g, idx, q);
    const Rational optimum(opt, w.scale());
    if (s.weight > Rational(2) * optimum) ++bad;
    if (opt > 0) worst = std::max(worst, s.weight / optimum);
  }
  return {checked == 200 && bad == 0,
          fmt("%d instances, %d above 2*OPT, worst ratio %s", checked, bad, worst.to_decimal().c_str())};
}

// ---------------------------------------------------------------- 8
Verdict index_correctness() {
  std::mt19937_64 rng(1008);
  int probes = 0, bad = 0, roundtrip_bad = 0, count_bad = 0;
  for (int graph = 0; graph < 50; ++graph) {
    const int n = fixture::draw(rng, 6, 25);
    auto e = fixture::random_edges(rng, n, fixture::draw(rng, 1, 3), 6);
    auto attrs = fixture::random_attrs(rng, n, 4, 1, 2);
    Graph g = fixture::make_graph(n, e, attrs);
    ATIndex idx = ATIndex::build(g, 2);
    auto tau = oracle::truss_by_pruning(n, e);

    std::size_t want_entries = static_cast<std::size_t>(n) + e.size();
    std::vector<std::map<oracle::Edge, int>> proj(4);
    std::vector<std::vector<int>> proj_v(4);
    for (int w = 0; w < 4; ++w) {
      std::vector<oracle::Edge> pe;
      for (auto [u, v] : e)
        if (attrs[u].count(w) && attrs[v].count(w)) pe.emplace_back(u, v);
      proj[w] = oracle::truss_by_pruning(n, pe);
      proj_v[w] = oracle::vertex_truss(n, proj[w]);
      std::size_t holders = 0;
      for (int v = 0; v < n; ++v) holders += attrs[v].count(w);
      want_entries += pe.size() + holders;
    }
    if (idx.entry_count() != want_entries) ++count_bad;

    for (int p = 0; p < 20; ++p) {
      ++probes;
      const int w = fixture::draw(rng, 0, 3);
      auto id = g.find_attribute(fixture::label(w));
      if (!e.empty() && fixture::coin(rng, 1, 2)) {
        const auto x = static_cast<EdgeId>(fixture::draw(rng, 0, static_cast<int>(g.num_edges()) - 1));
        auto [u, v] = g.endpoints(x);
        const oracle::Edge key{static_cast<int>(u), static_cast<int>(v)};
        if (idx.structural_edge(x) != static_cast<std::uint32_t>(tau.at(key))) ++bad;
        if (id) {
          auto it = proj[w].find(key);
          const auto want = it == proj[w].end() ? kNotInProjection : static_cast<std::uint32_t>(it->second);
          if (idx.attribute_edge(*id, x) != want) ++bad;
        }
      } else {
        const auto v = static_cast<VertexId>(fixture::draw(rng, 0, n - 1));
        if (id) {
          const auto want = attrs[v].count(w) ? static_cast<std::uint32_t>(proj_v[w][v]) : kNotInProjection;
          if (idx.attribute_vertex(*id, v) != want) ++bad;
        }
        if (idx.structural_vertex(v) != static_cast<std::uint32_t>(oracle::vertex_truss(n, tau)[v])) ++bad;
      }
    }

    std::ostringstream out;
    idx.save(out);
    std::istringstream in(out.str());
    ATIndex back = ATIndex::load(in);
    std::ostringstream again;
    back.save(again);
    if (!(back == idx) || again.str() != out.str()) ++roundtrip_bad;
  }
  return {probes == 1000 && bad == 0 && roundtrip_bad == 0 && count_bad == 0,
          fmt("%d probes, %d mismatches; round-trip failures %d; entry-count mismatches %d", probes, bad,
              roundtrip_bad, count_bad)};
}

// ---------------------------------------------------------------- 9
Verdict bulk_bound() {
  GeneratorConfig cfg;
  cfg.n = 1000;
  cfg.overlap = true;
  cfg.communities = 20;
  cfg.min_size = 20;
  cfg.max_size = 40;
  cfg.seed = 9;
  auto pg = generate_planted_graph(cfg);
  PlantConfig pc;
  pc.seed = 10;
  Graph g = plant_attributes(pg.graph, pg.truth, pc);
  auto qs = gen_queries(g, pg.truth, 40, 1, 3, 2, 11);
  int instances = 0, over = 0;
  std::size_t worst_iters = 0, worst_bound = 0;
  double basic_ms = 0, bulk_ms = 0;
  for (auto& gq : qs) {
    QuerySpec q = gq.query;
    q.k = 4;
    q.d = 4;
    q.epsilon = Rational(3, 100);
    if (!maximal_kd_truss(g, q.nodes, q.k, q.d).valid()) continue;
    ++instances;
    auto t0 = Clock::now();
    SearchOutput bulk = bulk_search(g, q);
    bulk_ms += ms_since(t0);
    t0 = Clock::now();
    SearchOutput basic = basic_search(g, q);
    basic_ms += ms_since(t0);
    (void)basic;
    const double start = static_cast<double>(replay_candidate(bulk.trace, 0).num_vertices());
    const auto bound =
        static_cast<std::size_t>(std::ceil(std::log(start / static_cast<double>(q.k)) / std::log(1.03))) + 2;
    if (bulk.result.iterations > bound) ++over;
    if (bulk.result.iterations >= worst_iters) {
      worst_iters = bulk.result.iterations;
      worst_bound = bound;
    }
  }
  return {instances >= 20 && over == 0 && bulk_ms < basic_ms,
          fmt("%d instances, %d above bound (max %zu iterations vs bound %zu); bulk %.1f ms vs basic %.1f ms",
              instances, over, worst_iters, worst_bound, bulk_ms, basic_ms)};
}

// ---------------------------------------------------------------- 10
Verdict end_to_end() {
  GeneratorConfig cfg;  // 1000 vertices, 20 communities
  auto pg = generate_planted_graph(cfg);
  PlantConfig pc;  // 80% coverage
  pc.seed = cfg.seed + 1;
  Graph g = plant_attributes(pg.graph, pg.truth, pc);
  auto qs = gen_queries(g, pg.truth, 100, 1, 16, 2, cfg.seed + 2);
  ATIndex idx = ATIndex::build(g);
  const auto t0 = Clock::now();
  const double local = run_eval(g, &idx, pg.truth, qs, "local").mean_f1();
  const double base = run_eval(g, &idx, pg.truth, qs, "baseline").mean_f1();
  return {local >= base + 0.05,
          fmt("mean F1 local=%.4f baseline=%.4f (margin %.4f, %.0f ms)", local, base, local - base, ms_since(t0))};
}

// ---------------------------------------------------------------- 11
struct Run {
  int code;
  std::string out;
};

Run shell(const std::string& cmd) {
  Run r{0, {}};
  FILE* p = ::popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return {-1, {}};
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  r.code = ::pclose(p);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism(const std::string& atc) {
  if (atc.empty()) return {false, "no atc executable given"};
  const fs::path dir = fs::temp_directory_path() / ("atc_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string exe = "'" + atc + "'";
  auto p = [&](const std::string& name) { return "'" + (dir / name).string() + "'"; };

  // Each entry: a command line writing its own files, plus the files it writes.
  struct Cmd {
    std::string name;
    std::function<std::string(const std::string&)> line;
    std::vector<std::string> files;
  };
  const std::string g = p("g.edges"), a = p("g.attrs");
  std::vector<Cmd> cmds{
      {"version", [&](const std::string&) { return exe + " --version"; }, {}},
      {"gen",
       [&](const std::string& r) { return exe + " gen --n 400 --communities 10 --queries 20 --seed 5 --out-prefix " + p("gen" + r); },
       {"gen.edges", "gen.attrs", "gen.truth", "gen.queries"}},
      {"decompose", [&](const std::string& r) { return exe + " decompose --graph " + g + " --out " + p("dec" + r); }, {"dec"}},
      {"index",
       [&](const std::string& r) { return exe + " index --graph " + g + " --attr-file " + a + " --threads 3 --out " + p("idx" + r); },
       {"idx"}},
  };
  for (const char* algo : {"basic", "bulk", "local", "baseline"})
    cmds.push_back({std::string("query ") + algo,
                    [&, algo](const std::string&) {
                      return exe + " query --algo " + algo + " --graph " + g + " --attr-file " + a +
                             " --nodes 0,1 --k 3 --d 3";
                    },
                    {}});
  cmds.push_back({"query index",
                  [&](const std::string&) { return exe + " query --index " + p("idx") + " --nodes 0 --auto-kd"; },
                  {}});
  cmds.push_back({"query bad",
                  [&](const std::string&) {
                    return exe + " query --graph " + g + " --attr-file " + a +
                           " --nodes 0,399 --k 6 --d 1 --suggest-on-bad --fail-on-empty";
                  },
                  {}});
  cmds.push_back({"eval",
                  [&](const std::string& r) {
                    return exe + " eval --graph " + g + " --attrs " + a + " --truth " + p("g.truth") + " --queries " +
                           p("g.queries") + " --index " + p("idx") + " --algo local --threads 2 --report " +
                           p("rep" + r);
                  },
                  {"rep"}});

  // Shared inputs for the commands above.
  auto seed_run = shell(exe + " gen --n 400 --communities 10 --queries 20 --seed 5 --out-prefix " + p("g"));
  auto idx_run = shell(exe + " index --graph " + g + " --attr-file " + a + " --out " + p("idx"));
  if (seed_run.code != 0 || idx_run.code != 0) {
    fs::remove_all(dir);
    return {false, "could not prepare inputs: " + seed_run.out + idx_run.out};
  }

  int differing = 0;
  std::string which;
  for (const auto& c : cmds) {
    Run first = shell(c.line("_1"));
    Run second = shell(c.line("_2"));
    bool same = first.code == second.code && first.out == second.out;
    for (const auto& f : c.files) {
      const auto dot = f.find('.');
      const std::string stem = dot == std::string::npos ? f : f.substr(0, dot);
      const std::string ext = dot == std::string::npos ? "" : f.substr(dot);
      same = same && slurp(dir / (stem + "_1" + ext)) == slurp(dir / (stem + "_2" + ext));
    }
    if (!same) {
      ++differing;
      which += " " + c.name;
    }
  }
  fs::remove_all(dir);
  return {differing == 0, fmt("%zu commands run twice, %d differing", cmds.size(), differing) + which};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string atc = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"score fidelity", score_fidelity},
      {"deletion identity", deletion_identity},
      {"truss oracle equivalence", truss_equivalence},
      {"(k,d)-truss feasibility", feasibility},
      {"oracle gap", oracle_gap},
      {"majority insertion", majority_insertions},
      {"steiner approximation", steiner_bound},
      {"index correctness", index_correctness},
      {"bulk iteration bound", bulk_bound},
      {"end-to-end quality", end_to_end},
      {"determinism", [&] { return determinism(atc); }},
  };
  const std::size_t only = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 0;
  if (only > criteria.size()) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && i + 1 != only) continue;
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << "criterion " << (i + 1) << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  "
              << v.detail << fmt("  [%.1f s]", ms_since(t0) / 1000) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
