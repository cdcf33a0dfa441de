#include "atc_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "atc/at_index.hpp"
#include "atc/errors.hpp"
#include "atc/eval.hpp"
#include "atc/graph.hpp"
#include "atc/greedy.hpp"
#include "atc/local_search.hpp"
#include "atc/query.hpp"
#include "atc/truss.hpp"

namespace atc::cli {
namespace {

using nlohmann::json;

// Raised for bad user input that parsed syntactically (unknown ids, labels).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QueryFlags {
  std::uint32_t k = 4;
  std::uint32_t d = 4;
  std::string epsilon = "0.03";
  std::string gamma = "0.2";
  std::uint32_t eta = 1000;
  bool auto_kd = false;
};

void add_query_flags(CLI::App* cmd, QueryFlags& f) {
  auto* k = cmd->add_option("--k", f.k, "Truss parameter k")->capture_default_str()->check(CLI::Range(2u, 1000000u));
  auto* d = cmd->add_option("--d", f.d, "Query distance bound d")->capture_default_str();
  cmd->add_flag("--auto-kd", f.auto_kd, "Derive k and d from the query nodes")->excludes(k)->excludes(d);
  cmd->add_option("--epsilon", f.epsilon, "BULK batch parameter")->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Attribute weight in the Steiner edge distance")->capture_default_str();
  cmd->add_option("--eta", f.eta, "Candidate graph size limit")->capture_default_str()->check(CLI::PositiveNumber);
}

Rational parse_rational(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid value for ") + flag + ": " + text);
  }
}

QuerySpec base_spec(const QueryFlags& f) {
  QuerySpec q;
  q.k = f.k;
  q.d = f.d;
  q.epsilon = parse_rational(f.epsilon, "--epsilon");
  q.gamma = parse_rational(f.gamma, "--gamma");
  q.eta = f.eta;
  q.auto_kd = f.auto_kd;
  if (q.epsilon <= Rational(0)) throw UsageError("--epsilon must be positive");
  if (q.gamma < Rational(0)) throw UsageError("--gamma must be non-negative");
  return q;
}

unsigned thread_count(const std::optional<unsigned>& flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("ATC_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("ATC_THREADS is not a number: ") + env);
    }
  }
  return 1;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Graph load_graph(const std::string& edges, const std::string& attrs) {
  Graph g = load_edge_list(edges);
  if (!attrs.empty()) g = load_attributes(attrs, g);
  return g;
}

std::vector<VertexId> resolve_nodes(const Graph& g, const std::string& list) {
  std::vector<VertexId> out;
  for (const auto& tok : split_list(list)) {
    ExternalId ext = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), ext);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw UsageError("malformed node id: " + tok);
    auto v = g.internal_id(ext);
    if (!v) throw InputError("unknown query node " + tok);
    out.push_back(*v);
  }
  if (out.empty()) throw UsageError("--nodes is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<AttributeId> resolve_attrs(const Graph& g, const std::string& list) {
  std::vector<AttributeId> out;
  for (const auto& label : split_list(list)) {
    auto w = g.find_attribute(label);
    if (!w) throw InputError("unknown attribute label " + label);
    out.push_back(*w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json node_list(const Graph& g, std::span<const VertexId> vs) {
  json a = json::array();
  for (auto v : vs) a.push_back(g.external_id(v));
  return a;
}

json label_list(const Graph& g, std::span<const AttributeId> ws) {
  json a = json::array();
  for (auto w : ws) a.push_back(g.attribute_label(w));
  return a;
}

// ---- index ---------------------------------------------------------------

struct IndexArgs {
  std::string graph, attrs, out;
  std::optional<unsigned> threads;
};

int cmd_index(const IndexArgs& a, std::ostream& out) {
  Graph g = load_graph(a.graph, a.attrs);
  ATIndex idx = ATIndex::build(g, thread_count(a.threads));
  idx.save(a.out);
  json j{{"attributes", idx.num_attributes()}, {"edges", idx.num_edges()}, {"entries", idx.entry_count()},
         {"tau_max", idx.tau_max()}, {"vertices", idx.num_vertices()}};
  out << j.dump() << '\n';
  return kSuccess;
}

// ---- decompose -----------------------------------------------------------

struct DecomposeArgs {
  std::string graph, out;
};

int cmd_decompose(const DecomposeArgs& a, std::ostream& out) {
  Graph g = load_edge_list(a.graph);
  TrussnessMap tm = truss_decompose(g);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw InputError("cannot write '" + a.out + "'");
    sink = &file;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    *sink << g.external_id(u) << '\t' << g.external_id(v) << '\t' << tm.edge[e] << '\n';
  }
  if (!a.out.empty()) out << json{{"edges", g.num_edges()}, {"tau_max", tm.max_trussness}}.dump() << '\n';
  return kSuccess;
}

// ---- query ---------------------------------------------------------------

struct QueryArgs {
  std::string algo = "local";
  std::string index, graph, attr_file, nodes, attrs;
  QueryFlags flags;
  bool suggest_on_bad = false;
  bool fail_on_empty = false;
  std::optional<unsigned> threads;
};

int cmd_query(const QueryArgs& a, std::ostream& out) {
  std::optional<ATIndex> idx;
  Graph g;
  if (!a.graph.empty()) {
    g = load_graph(a.graph, a.attr_file);
    if (!a.index.empty()) {
      idx = ATIndex::load(a.index);
      if (!idx->matches(g)) throw InputError("index does not match the graph");
    }
  } else if (!a.index.empty()) {
    idx = ATIndex::load(a.index);
    g = idx->to_graph();
  } else {
    throw UsageError("query needs --index or --graph");
  }
  if (a.algo == "local" && !idx) idx = ATIndex::build(g, thread_count(a.threads));

  QuerySpec q = base_spec(a.flags);
  q.nodes = resolve_nodes(g, a.nodes);
  q.attrs = a.attrs.empty() ? autocomplete_attrs(g, q.nodes) : resolve_attrs(g, a.attrs);

  json j{{"algo", a.algo}, {"d", q.d}, {"diameter", 0}, {"k", q.k}, {"score", Rational(0).to_decimal()},
         {"status", "ok"}, {"suggestions", json::array()}, {"vertices", json::array()}};

  QueryClassification c;
  if (q.auto_kd) {
    // Disconnected queries have no auto parameters; report them as bad.
    const auto reach = bfs_distances(Subgraph(g), q.nodes.front());
    if (!std::all_of(q.nodes.begin(), q.nodes.end(), [&](VertexId v) { return reach[v] != kInfinity; })) {
      c.verdict = QueryVerdict::kDisconnected;
      c.suggestions = suggest_queries(g, q);
    }
  } else {
    c = classify_query(g, q);
  }

  bool empty = false;
  if (!c.good()) {
    j["status"] = "bad_query";
    j["reason"] = std::string(to_string(c.verdict));
    if (a.suggest_on_bad) {
      for (const auto& s : c.suggestions)
        j["suggestions"].push_back(json{{"attrs", label_list(g, s.attrs)}, {"nodes", node_list(g, s.nodes)}});
    }
    empty = true;
  } else {
    try {
      SearchResult r;
      if (a.algo == "local") {
        r = locatc_search(g, *idx, q);
      } else {
        QuerySpec run = q;
        if (q.auto_kd) {
          AutoParams ap = auto_params(Subgraph(g), q.nodes);
          run.k = ap.k;
          run.d = ap.d;
        }
        r = run_algorithm(g, nullptr, run, a.algo);
      }
      j["vertices"] = node_list(g, r.vertices);
      j["score"] = r.score.to_decimal();
      j["k"] = r.k;
      j["d"] = r.d;
      j["diameter"] = r.diameter;
    } catch (const NoFeasibleCommunity&) {
      j["status"] = "infeasible";
      empty = true;
    }
  }
  out << j.dump() << '\n';
  return empty && a.fail_on_empty ? kEmpty : kSuccess;
}

// ---- gen -----------------------------------------------------------------

struct GenArgs {
  GeneratorConfig gen;
  PlantConfig plant;
  std::string prefix;
  std::size_t queries = 100;
  std::uint64_t seed = 1;
  std::string p_in = "0.9";
  std::string background = "4";
};

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << body;
  if (!f) throw InputError("write failure on '" + path + "'");
}

int cmd_gen(GenArgs a, std::ostream& out) {
  a.gen.seed = a.seed;
  a.plant.seed = a.seed + 1;
  a.gen.p_in = parse_rational(a.p_in, "--p-in");
  a.gen.background_degree = parse_rational(a.background, "--background-degree");
  if (a.gen.p_in < Rational(0) || a.gen.p_in > Rational(1)) throw UsageError("--p-in must lie in [0,1]");
  PlantedGraph pg = generate_planted_graph(a.gen);
  Graph g = plant_attributes(pg.graph, pg.truth, a.plant);
  auto qs = gen_queries(g, pg.truth, a.queries, 1, 16, 2, a.seed + 2);

  std::ostringstream edges, attrs, truth, queries;
  write_edge_list(edges, g);
  write_attributes(attrs, g);
  write_truth(truth, g, pg.truth);
  write_queries(queries, g, qs);
  write_file(a.prefix + ".edges", edges.str());
  write_file(a.prefix + ".attrs", attrs.str());
  write_file(a.prefix + ".truth", truth.str());
  write_file(a.prefix + ".queries", queries.str());
  out << json{{"attributes", g.num_attributes()}, {"communities", pg.truth.communities.size()},
              {"edges", g.num_edges()}, {"queries", qs.size()}, {"vertices", g.num_vertices()}}
             .dump()
      << '\n';
  return kSuccess;
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string graph, attrs, truth, queries, index, report;
  std::string algo = "local";
  QueryFlags flags;
  bool timing = false;
  std::optional<unsigned> threads;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  Graph g = load_graph(a.graph, a.attrs);
  std::ifstream tf(a.truth), qf(a.queries);
  if (!tf) throw InputError("cannot open '" + a.truth + "'");
  if (!qf) throw InputError("cannot open '" + a.queries + "'");
  GroundTruth gt = read_truth(tf, g);
  auto qs = read_queries(qf, g);
  const QuerySpec base = base_spec(a.flags);
  for (auto& gq : qs) {
    gq.query.k = base.k;
    gq.query.d = base.d;
    gq.query.epsilon = base.epsilon;
    gq.query.gamma = base.gamma;
    gq.query.eta = base.eta;
    gq.query.auto_kd = base.auto_kd;
    if (gq.community >= gt.communities.size()) throw InputError("query names an unknown community");
  }

  const unsigned threads = thread_count(a.threads);
  std::optional<ATIndex> idx;
  if (a.algo == "local") {
    if (!a.index.empty()) {
      idx = ATIndex::load(a.index);
      if (!idx->matches(g)) throw InputError("index does not match the graph");
    } else {
      idx = ATIndex::build(g, threads);
    }
  }
  EvalReport rep = run_eval(g, idx ? &*idx : nullptr, gt, qs, a.algo, threads);

  if (a.report.empty()) {
    write_report(out, rep, a.timing);
  } else {
    std::ostringstream body;
    write_report(body, rep, a.timing);
    write_file(a.report, body.str());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", rep.mean_f1());
    out << json{{"algo", a.algo}, {"mean_f1", buf}, {"queries", rep.queries.size()}}.dump() << '\n';
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attributed truss community search"};
  app.name("atc");
  app.set_version_flag("--version",
                       std::string("atc ") + ATC_VERSION + " (index format " + std::to_string(kIndexFormatVersion) + ")");
  app.require_subcommand(1);

  const std::vector<std::string> algos{"basic", "bulk", "local", "baseline"};

  IndexArgs ia;
  auto* index = app.add_subcommand("index", "Build an AT-index");
  index->add_option("--graph", ia.graph, "Edge list")->required();
  index->add_option("--attr-file,--attrs", ia.attrs, "Attribute file");
  index->add_option("--out", ia.out, "Index output path")->required();
  index->add_option("--threads", ia.threads, "Worker threads (default: ATC_THREADS or 1)");

  DecomposeArgs da;
  auto* decompose = app.add_subcommand("decompose", "Print the trussness of every edge");
  decompose->add_option("--graph", da.graph, "Edge list")->required();
  decompose->add_option("--out", da.out, "Write rows here instead of standard output");

  QueryArgs qa;
  auto* query = app.add_subcommand("query", "Search one community");
  query->add_option("--algo", qa.algo, "basic, bulk, local or baseline")
      ->capture_default_str()
      ->check(CLI::IsMember(algos));
  query->add_option("--index", qa.index, "AT-index file");
  query->add_option("--graph", qa.graph, "Edge list");
  query->add_option("--attr-file", qa.attr_file, "Attribute file");
  query->add_option("--nodes", qa.nodes, "Comma-separated query node ids")->required();
  query->add_option("--attrs", qa.attrs, "Comma-separated query attribute labels (default: union over the nodes)");
  add_query_flags(query, qa.flags);
  query->add_flag("--suggest-on-bad", qa.suggest_on_bad, "List split queries for bad queries");
  query->add_flag("--fail-on-empty", qa.fail_on_empty, "Exit 3 when no community is returned");
  query->add_option("--threads", qa.threads, "Worker threads for an in-memory index build");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a planted attributed graph with queries");
  gen->add_option("--n", ga.gen.n, "Vertices")->capture_default_str();
  gen->add_option("--communities", ga.gen.communities, "Planted communities")->capture_default_str();
  gen->add_option("--min-size", ga.gen.min_size, "Smallest community")->capture_default_str();
  gen->add_option("--max-size", ga.gen.max_size, "Largest community")->capture_default_str();
  gen->add_option("--p-in", ga.p_in, "Intra-community edge probability")->capture_default_str();
  gen->add_option("--background-degree", ga.background, "Expected background degree")->capture_default_str();
  gen->add_flag("--overlap", ga.gen.overlap, "Draw communities independently so they may share vertices");
  gen->add_option("--coverage", ga.plant.coverage, "Percent of members carrying planted attributes")
      ->capture_default_str()
      ->check(CLI::Range(0u, 100u));
  gen->add_option("--queries", ga.queries, "Queries to emit")->capture_default_str();
  gen->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
  gen->add_option("--out-prefix", ga.prefix, "Writes PREFIX.edges/.attrs/.truth/.queries")->required();

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Score an algorithm against ground truth");
  eval->add_option("--graph", ea.graph, "Edge list")->required();
  eval->add_option("--attrs,--attr-file", ea.attrs, "Attribute file")->required();
  eval->add_option("--truth", ea.truth, "Ground-truth communities")->required();
  eval->add_option("--queries", ea.queries, "Query file")->required();
  eval->add_option("--index", ea.index, "AT-index file (local only)");
  eval->add_option("--algo", ea.algo, "basic, bulk, local or baseline")
      ->capture_default_str()
      ->check(CLI::IsMember(algos));
  add_query_flags(eval, ea.flags);
  eval->add_option("--report", ea.report, "Write the TSV report here");
  eval->add_flag("--timing", ea.timing, "Add runtime columns (not reproducible)");
  eval->add_option("--threads", ea.threads, "Worker threads (default: ATC_THREADS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*index) return cmd_index(ia, out);
    if (*decompose) return cmd_decompose(da, out);
    if (*query) return cmd_query(qa, out);
    if (*gen) return cmd_gen(ga, out);
    if (*eval) return cmd_eval(ea, out);
  } catch (const UsageError& e) {
    err << "atc: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "atc: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    // Unreadable or malformed files, index errors, unknown ids.
    err << "atc: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}

}  // namespace atc::cli
