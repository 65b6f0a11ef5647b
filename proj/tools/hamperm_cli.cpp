#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "hamperm/ap.hpp"
#include "hamperm/graph.hpp"
#include "hamperm/perm.hpp"
#include "hamperm/prob.hpp"
#include "hamperm/random.hpp"
#include "hamperm/search.hpp"

using namespace hamperm;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitExhausted = 1;
constexpr int kExitInput = 2;
constexpr int kExitUsage = 64;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 0 quiet, 1 summary lines on stderr, 2 also the per-iteration trace.
int log_level() {
  const char* v = std::getenv("HAMPERM_LOG");
  if (!v) return 0;
  std::string s = v;
  if (s == "trace" || s == "2") return 2;
  if (s == "info" || s == "1") return 1;
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// FNV-1a; identifies the input in the run record, not a security digest.
std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

struct Output {
  bool json = false;
  bool timing = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

void print_value(std::ostream& o, const Json& v) {
  if (v.is_string())
    o << v.get<std::string>();
  else
    o << v.dump();
}

int emit(const Output& out, Json record, int code) {
  if (out.timing)
    record["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - out.start).count();
  if (out.json) {
    std::cout << record.dump(2) << "\n";
    return code;
  }
  for (auto& [key, value] : record.items()) {
    if (key == "schema") continue;
    if (value.is_object()) {
      for (auto& [k, v] : value.items()) {
        std::cout << std::left << std::setw(18) << k << ' ';
        print_value(std::cout, v);
        std::cout << "\n";
      }
    } else {
      std::cout << std::left << std::setw(18) << key << ' ';
      print_value(std::cout, value);
      std::cout << "\n";
    }
  }
  return code;
}

Json base_record(const std::string& sub) {
  Json r;
  r["schema"] = 1;
  r["subcommand"] = sub;
  return r;
}

long long parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError(std::string("cannot parse ") + what + " '" + text + "'");
  }
  if (used != text.size() || v < 1 || v != std::floor(v) || v > 9e15)
    throw InputError(std::string(what) + " must be a positive integer, got '" + text + "'");
  return static_cast<long long>(v);
}

std::vector<int> parse_circuit(const std::string& text, int n) {
  NCycle c;
  try {
    c = NCycle::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("bad circuit: ") + e.what());
  }
  if (c.n() != n)
    throw InputError("circuit has " + std::to_string(c.n()) + " vertices, the graph has " + std::to_string(n));
  return c.sequence(1);
}

std::string tour_text(const Permutation& p) { return NCycle::from_permutation(p).str(); }

double brute_force_derangement(const CostMatrix& m) {
  int n = m.n();
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  double best = kInf;
  do {
    double s = 0;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      ok = img[v] != v + 1;
      if (ok) s += m(v + 1, img[v]);
    }
    if (ok) best = std::min(best, s);
  } while (std::next_permutation(img.begin(), img.end()));
  return best;
}

double brute_force_tour(const CostMatrix& m) {
  int n = m.n();
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 2);
  double best = kInf;
  do {
    double s = m(1, rest.front()) + m(rest.back(), 1);
    for (int t = 0; t + 2 <= n - 1; ++t) s += m(rest[t], rest[t + 1]);
    best = std::min(best, s);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

Weights to_weights(const CostMatrix& m) {
  Weights w(m.n(), std::vector<double>(m.n(), 0));
  for (int a = 1; a <= m.n(); ++a)
    for (int b = 1; b <= m.n(); ++b)
      if (a != b) w[a - 1][b - 1] = m(a, b);
  return w;
}

Json cycles_json(const Permutation& p) {
  Json arr = Json::array();
  for (const auto& c : p.cycles()) arr.push_back(cycle_text(c));
  return arr;
}

constexpr int kOracleMaxN = 10;

// ---- subcommands -------------------------------------------------------------------------

struct GenOpts {
  std::string ensemble = "boll";
  int n = 0;
  int param = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenOpts& o, const Output& out) {
  EnsembleSpec spec;
  try {
    spec.kind = parse_ensemble(o.ensemble);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  spec.n = o.n;
  spec.param = o.param;
  spec.seed = o.seed;
  if (spec.param == 0) {
    if (spec.kind == EnsembleKind::KInKOut || spec.kind == EnsembleKind::RegularOut) spec.param = 2;
    if (spec.kind == EnsembleKind::ErdosRenyiM) spec.param = 2 * o.n;
  }
  Graph g;
  try {
    g = generate(spec);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::ostringstream text;
  text << "# ensemble=" << ensemble_name(spec.kind) << " n=" << spec.n << " seed=" << spec.seed << "\n"
       << format_graph(g);
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write " + o.out);
    f << text.str();
  }
  if (out.json) {
    Json r = base_record("gen");
    r["seed"] = spec.seed;
    r["config"] = {{"ensemble", ensemble_name(spec.kind)}, {"n", spec.n}, {"param", spec.param}};
    r["result"] = {{"directed", g.directed()}, {"edges", g.edge_count()}, {"graph", text.str()}};
    return emit(out, r, kExitOk);
  }
  if (o.out.empty()) std::cout << text.str();
  return kExitOk;
}

struct HamOpts {
  std::string graph;
  std::string algo = "g";
  std::uint64_t seed = 1;
  long max_iters = 0;
  std::string trace;
  int restarts = 1;
  int threads = 0;
};

int run_ham(const HamOpts& o, const Output& out) {
  std::string text = read_file(o.graph);
  Graph g;
  Algo algo;
  try {
    g = parse_graph(text);
    algo = parse_algo(o.algo);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (o.restarts < 1) throw InputError("--restarts must be at least 1");
  int level = log_level();
  SearchConfig cfg;
  cfg.seed = o.seed;
  cfg.max_iterations = o.max_iters;
  cfg.trace = !o.trace.empty() || level >= 2;

  Json r = base_record("ham");
  r["input_digest"] = digest(text);
  r["seed"] = o.seed;
  r["config"] = {{"algo", algo_name(algo)}, {"max_iters", o.max_iters}, {"restarts", o.restarts}};
  SearchResult res;
  std::string outcome;
  try {
    res = o.restarts > 1 ? search_with_restarts(algo, g, cfg, o.restarts, o.threads) : run_search(algo, g, cfg);
    outcome = res.found ? "found" : "exhausted";
  } catch (const NotHamiltonian& e) {
    outcome = "not-hamiltonian";
    res.note = e.what();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (!o.trace.empty()) {
    std::ofstream f(o.trace);
    if (!f) throw InputError("cannot write " + o.trace);
    for (const auto& line : res.trace) f << line << "\n";
  }
  if (level >= 2)
    for (const auto& line : res.trace) std::cerr << line << "\n";
  if (level >= 1)
    std::cerr << "ham: " << outcome << " after " << res.stats.iterations << " iterations (restart " << res.restart
              << ")\n";
  Json result;
  result["outcome"] = outcome;
  result["circuit"] = res.found ? cycle_text(res.circuit) : "";
  result["iterations"] = res.stats.iterations;
  result["seed"] = res.seed;
  result["restart"] = res.restart;
  result["rotations"] = res.stats.rotations;
  result["backtracks"] = res.stats.backtracks;
  result["reseeds"] = res.stats.reseeds;
  if (!res.note.empty()) result["note"] = res.note;
  r["result"] = result;
  return emit(out, r, res.found ? kExitOk : kExitExhausted);
}

struct VerifyOpts {
  std::string graph, circuit, circuit_file;
};

int run_verify(const VerifyOpts& o, const Output& out) {
  std::string text = read_file(o.graph);
  Graph g;
  try {
    g = parse_graph(text);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  std::string ctext = o.circuit;
  if (!o.circuit_file.empty()) ctext = read_file(o.circuit_file);
  if (ctext.empty()) throw InputError("give --circuit or --circuit-file");
  auto seq = parse_circuit(ctext, g.n());
  auto missing = verify_circuit(g, seq);
  Json r = base_record("verify");
  r["input_digest"] = digest(text);
  Json result;
  result["valid"] = !missing.has_value();
  result["circuit"] = cycle_text(seq);
  if (missing) {
    std::string sep = g.directed() ? "->" : "-";
    result["missing_edge"] = std::to_string(missing->u) + sep + std::to_string(missing->v);
    if (!out.json) std::cerr << "missing edge " << missing->u << sep << missing->v << "\n";
  }
  r["result"] = result;
  return emit(out, r, missing ? kExitExhausted : kExitOk);
}

struct ProbOpts {
  std::string what;
  long long n = 30;
  std::string kind = "potdtc";
  std::string trials = "1000000";
  std::uint64_t seed = 1;
  int threads = 1;
  std::string algo = "g";
  long long r = 0;
};

Json prob_json(const RationalProb& p) {
  std::ostringstream raw;
  raw << boost::multiprecision::numerator(p.raw) << "/" << boost::multiprecision::denominator(p.raw);
  return {{"exact", raw.str()}, {"value", p.approx()}, {"clamped", p.raw != p.value}};
}

int run_prob(const ProbOpts& o, const Output& out) {
  Json r = base_record("prob");
  Json cfg = {{"what", o.what}, {"n", o.n}};
  Json result;
  try {
    if (o.what == "p3" || o.what == "p22") {
      if (o.n > 1'000'000'000) throw InputError("n is too large");
      auto p = o.what == "p3" ? p3_exact(static_cast<int>(o.n)) : p22_exact(static_cast<int>(o.n));
      result = prob_json(p);
    } else if (o.what == "thm16") {
      result = prob_json(p_two_admissible(o.n));
    } else if (o.what == "pprime") {
      result = prob_json(p_prime(o.n));
    } else if (o.what == "pnet") {
      result = prob_json(p_net(o.n));
    } else if (o.what == "mc") {
      MoveKind kind;
      if (o.kind == "3cycle" || o.kind == "three")
        kind = MoveKind::ThreeCycle;
      else if (o.kind == "potdtc")
        kind = MoveKind::Potdtc;
      else
        throw InputError("--kind must be 3cycle or potdtc");
      long long trials = parse_count(o.trials, "--trials");
      if (o.n > 1'000'000'000) throw InputError("n is too large");
      int n = static_cast<int>(o.n);
      auto e = mc_admissible_rate(kind, n, trials, o.seed, o.threads);
      double closed = kind == MoveKind::ThreeCycle ? p3_exact(n).approx() : p22_exact(n).approx();
      r["seed"] = o.seed;
      cfg["kind"] = o.kind;
      cfg["trials"] = trials;
      result = {{"hits", e.hits},           {"mean", e.mean},
                {"std_error", e.std_error}, {"closed_form", closed},
                {"z", e.std_error > 0 ? (e.mean - closed) / e.std_error : 0.0}};
    } else if (o.what == "bounds") {
      BoundAlgo algo;
      if (o.algo == "g")
        algo = BoundAlgo::G;
      else if (o.algo == "d")
        algo = BoundAlgo::D;
      else
        throw InputError("--algo must be g or d");
      if (o.n > 1'000'000) throw InputError("n is too large");
      auto b = success_probability_bounds(static_cast<int>(o.n), algo);
      cfg["algo"] = o.algo;
      result = {{"one_minus_bound", b.one_minus}, {"log10_one_minus", b.log10_one_minus},
                {"log10_terms", b.log10_terms}};
      if (o.n >= 7) {
        result["p"] = b.p;
        result["p_prime"] = b.p_prime;
        result["p_net"] = b.p_net;
      }
    } else if (o.what == "occupancy") {
      if (o.n > 100000) throw InputError("n is too large");
      if (o.r < 0 || o.r > 100000) throw InputError("--r must lie in 0..100000");
      cfg["r"] = o.r;
      result = {{"value", occupancy_p0(o.r, static_cast<int>(o.n))}};
    } else {
      throw InputError("unknown quantity '" + o.what + "' (p3, p22, thm16, pprime, pnet, mc, bounds, occupancy)");
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  r["config"] = cfg;
  r["result"] = result;
  return emit(out, r, kExitOk);
}

struct MatrixOpts {
  std::string matrix;
  std::uint64_t seed = 1;
  bool oracle = false;
};

CostMatrix load_matrix(const std::string& text) {
  try {
    return CostMatrix::parse_csv(text);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

int run_ap(const MatrixOpts& o, const Output& out) {
  std::string text = read_file(o.matrix);
  auto m = load_matrix(text);
  ApConfig cfg;
  cfg.seed = o.seed;
  auto res = solve_assignment(m, cfg);
  Json r = base_record("ap");
  r["input_digest"] = digest(text);
  r["seed"] = o.seed;
  r["config"] = {{"n", m.n()}, {"oracle", o.oracle}};
  Json result;
  result["value"] = res.assignment.value;
  result["cycles"] = cycles_json(res.assignment.perm);
  result["optimal"] = true;  // phase 2 stops only when no negative cycle is left
  result["start_value"] = res.start.value;
  result["phase1_steps"] = res.phase1_steps;
  result["sweeps"] = res.sweeps;
  result["cycles_cancelled"] = res.cycles_cancelled;
  int code = kExitOk;
  if (o.oracle) {
    if (m.n() > kOracleMaxN) {
      result["oracle"] = "skipped: n > " + std::to_string(kOracleMaxN);
    } else {
      double best = brute_force_derangement(m);
      bool agree = std::abs(best - res.assignment.value) <= 1e-9 * (1 + std::abs(best));
      result["oracle_value"] = best;
      result["oracle_agrees"] = agree;
      if (!agree) code = kExitExhausted;
    }
  }
  r["result"] = result;
  return emit(out, r, code);
}

int run_tsp_fw(const MatrixOpts& o, const Output& out) {
  std::string text = read_file(o.matrix);
  auto m = load_matrix(text);
  ApConfig cfg;
  cfg.seed = o.seed;
  auto res = tsp_fw(m, cfg);
  Json r = base_record("tsp-fw");
  r["input_digest"] = digest(text);
  r["seed"] = o.seed;
  r["config"] = {{"n", m.n()}, {"oracle", o.oracle}};
  Json result;
  result["value"] = res.tsp.tour.value;
  result["tour"] = tour_text(res.tsp.tour.perm);
  result["optimal"] = res.tsp.optimal;
  result["exhausted"] = res.tsp.exhausted;
  result["assignment_value"] = res.ap.assignment.value;
  result["assignment_cycles"] = cycles_json(res.ap.assignment.perm);
  result["bounds"] = res.tsp.bounds;
  result["iterations"] = res.tsp.iterations;
  result["sweeps"] = res.ap.sweeps;
  int code = kExitOk;
  if (o.oracle) {
    if (m.n() > kOracleMaxN) {
      result["oracle"] = "skipped: n > " + std::to_string(kOracleMaxN);
    } else {
      double best = brute_force_tour(m);
      bool sound = res.tsp.tour.value >= best - 1e-9 &&
                   (!res.tsp.optimal || std::abs(res.tsp.tour.value - best) <= 1e-9 * (1 + std::abs(best)));
      result["oracle_value"] = best;
      result["oracle_agrees"] = sound;
      if (!sound) code = kExitExhausted;
    }
  }
  r["result"] = result;
  return emit(out, r, code);
}

int run_tsp_heur(const MatrixOpts& o, const Output& out) {
  std::string text = read_file(o.matrix);
  auto m = load_matrix(text);
  SearchConfig cfg;
  cfg.seed = o.seed;
  auto res = tsp_heuristic(to_weights(m), cfg);
  Json r = base_record("tsp-heur");
  r["input_digest"] = digest(text);
  r["seed"] = o.seed;
  r["config"] = {{"n", m.n()}, {"oracle", o.oracle}};
  Json result;
  result["value"] = res.weight;
  result["tour"] = cycle_text(res.tour);
  result["iterations"] = res.iterations;
  result["accepted_steps"] = res.accepted.size();
  int code = kExitOk;
  if (o.oracle) {
    if (m.n() > kOracleMaxN) {
      result["oracle"] = "skipped: n > " + std::to_string(kOracleMaxN);
    } else {
      double best = brute_force_tour(m);
      result["oracle_value"] = best;
      result["oracle_agrees"] = res.weight >= best - 1e-9;
      if (res.weight < best - 1e-9) code = kExitExhausted;
    }
  }
  r["result"] = result;
  return emit(out, r, code);
}

struct OracleOpts {
  std::string graph, start, target;
  long long budget = 5'000'000;
  bool any_vertex = false;
};

int run_oracle(const OracleOpts& o, const Output& out) {
  std::string text = read_file(o.graph);
  Graph g;
  try {
    g = parse_graph(text);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  std::vector<int> h0;
  if (o.start.empty()) {
    h0.resize(g.n());
    std::iota(h0.begin(), h0.end(), 1);
  } else {
    h0 = parse_circuit(o.start, g.n());
  }
  std::vector<int> target;
  if (!o.target.empty()) target = parse_circuit(o.target, g.n());
  ReachabilityResult res;
  try {
    res = reachability_oracle(g, h0, o.budget, target.empty() ? nullptr : &target, !o.any_vertex);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Json r = base_record("oracle");
  r["input_digest"] = digest(text);
  r["config"] = {{"start", cycle_text(h0)}, {"budget", o.budget}, {"pseudo_only", !o.any_vertex}};
  if (!target.empty()) r["config"]["target"] = cycle_text(target);
  Json moves = Json::array();
  for (const auto& mv : res.certificate) moves.push_back(mv.str());
  r["result"] = {{"found", res.found},
                 {"certificate", moves},
                 {"circuit", res.found ? cycle_text(res.circuit) : ""},
                 {"states", res.states}};
  return emit(out, r, res.found ? kExitOk : kExitExhausted);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Admissible-permutation tools for hamilton circuits, assignment and TSP"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.json, "Machine-readable output");
  app.add_flag("--timing", out.timing, "Add wall time to the record");

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "Generate a random graph or digraph");
  g->add_option("--ensemble", gen.ensemble, "boll, frieze-boll, k-in-k-out, regular-out, erdos-renyi-m");
  g->add_option("--n", gen.n, "Number of vertices")->required();
  g->add_option("--param", gen.param, "k, i or m for the ensembles that take one");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--out", gen.out, "Write the graph here instead of stdout");

  HamOpts ham;
  auto* h = app.add_subcommand("ham", "Search for a hamilton circuit");
  h->add_option("--graph", ham.graph, "Graph file")->required();
  h->add_option("--algo", ham.algo, "g, d, g-nor or g-heur");
  h->add_option("--seed", ham.seed, "Seed");
  h->add_option("--max-iters", ham.max_iters, "Iterations per phase (0 = default budget)");
  h->add_option("--trace", ham.trace, "Write one line per iteration to this file");
  h->add_option("--restarts", ham.restarts, "Independent seeded searches");
  h->add_option("--threads", ham.threads, "Worker threads for restarts (0 = hardware)");

  VerifyOpts ver;
  auto* v = app.add_subcommand("verify", "Check a circuit against a graph");
  v->add_option("--graph", ver.graph, "Graph file")->required();
  v->add_option("--circuit", ver.circuit, "Circuit text such as (1 3 2 4)");
  v->add_option("--circuit-file", ver.circuit_file, "File holding the circuit text");

  ProbOpts prob;
  auto* p = app.add_subcommand("prob", "Closed forms, Monte Carlo and bounds");
  p->add_option("what", prob.what, "p3, p22, thm16, pprime, pnet, mc, bounds, occupancy")->required();
  p->add_option("--n", prob.n, "Size");
  p->add_option("--kind", prob.kind, "3cycle or potdtc (mc)");
  p->add_option("--trials", prob.trials, "Trials, scientific notation allowed (mc)");
  p->add_option("--seed", prob.seed, "Seed (mc)");
  p->add_option("--threads", prob.threads, "Threads (mc)");
  p->add_option("--algo", prob.algo, "g or d (bounds)");
  p->add_option("--r", prob.r, "Balls (occupancy)");

  MatrixOpts ap, fw, heur;
  auto* a = app.add_subcommand("ap", "Assignment problem over derangements");
  a->add_option("--matrix", ap.matrix, "Cost matrix CSV")->required();
  a->add_option("--seed", ap.seed, "Seed");
  a->add_flag("--oracle", ap.oracle, "Cross-check against brute force (n <= 10)");
  auto* f = app.add_subcommand("tsp-fw", "TSP through the assignment pipeline");
  f->add_option("--matrix", fw.matrix, "Cost matrix CSV")->required();
  f->add_option("--seed", fw.seed, "Seed");
  f->add_flag("--oracle", fw.oracle, "Cross-check against brute force (n <= 10)");
  auto* t = app.add_subcommand("tsp-heur", "TSP local search with admissible 3-cycles");
  t->add_option("--matrix", heur.matrix, "Cost matrix CSV")->required();
  t->add_option("--seed", heur.seed, "Seed");
  t->add_flag("--oracle", heur.oracle, "Cross-check against brute force (n <= 10)");

  OracleOpts orc;
  auto* o = app.add_subcommand("oracle", "Breadth-first search for an admissible-move certificate");
  o->add_option("--graph", orc.graph, "Graph file")->required();
  o->add_option("--start", orc.start, "Starting circuit (default (1 2 ... n))");
  o->add_option("--target", orc.target, "Stop at this circuit instead of any hamilton circuit");
  o->add_option("--budget", orc.budget, "Maximum number of states");
  o->add_flag("--any-vertex", orc.any_vertex, "Allow moves through vertices that are not pseudo-arc vertices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (g->parsed()) return run_gen(gen, out);
    if (h->parsed()) return run_ham(ham, out);
    if (v->parsed()) return run_verify(ver, out);
    if (p->parsed()) return run_prob(prob, out);
    if (a->parsed()) return run_ap(ap, out);
    if (f->parsed()) return run_tsp_fw(fw, out);
    if (t->parsed()) return run_tsp_heur(heur, out);
    if (o->parsed()) return run_oracle(orc, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
