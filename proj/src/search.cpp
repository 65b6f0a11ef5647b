#include "hamperm/search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace hamperm {

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::G: return "g";
    case Algo::D: return "d";
    case Algo::GNoR: return "g-nor";
    case Algo::GHeuristic: return "g-heur";
  }
  return "?";
}

Algo parse_algo(const std::string& name) {
  for (Algo a : {Algo::G, Algo::D, Algo::GNoR, Algo::GHeuristic})
    if (algo_name(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected g, d, g-nor or g-heur)");
}

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  if (restart == 0) return seed;
  return mix64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(restart)));
}

namespace {

constexpr std::uint64_t kSearchStream = 6;
constexpr std::uint64_t kTourStream = 7;

double safe_ln(int n) { return std::log(static_cast<double>(std::max(n, 2))); }

long default_iterations(int n) { return std::max(1L, static_cast<long>(std::ceil(2.0 * n * safe_ln(n)))); }
int default_arcs(int n) { return static_cast<int>(std::ceil(safe_ln(n))) + 1; }
int default_depth(int n) { return std::max(1, static_cast<int>(std::ceil(safe_ln(n) * safe_ln(n)))); }

struct Cand {
  MoveSet m;
  int score = 0;
  bool deg2 = false;
  int maxdeg = 0;
  std::uint64_t tie = 0;
};

bool better(const Cand& x, const Cand& y) {
  if (x.score != y.score) return x.score > y.score;
  if (x.deg2 != y.deg2) return x.deg2;
  if (x.maxdeg != y.maxdeg) return x.maxdeg > y.maxdeg;
  return x.tie < y.tie;
}

std::vector<int> rotate_to_one(std::vector<int> seq) {
  auto it = std::find(seq.begin(), seq.end(), 1);
  std::rotate(seq.begin(), it, seq.end());
  return seq;
}

// Exhaustive answer for contracted graphs too small for the permutation machinery.
std::optional<std::vector<int>> tiny_circuit(const ContractedGraph& cg) {
  int m = cg.m();
  std::vector<int> rest;
  for (int v = 2; v <= m; ++v) rest.push_back(v);
  do {
    std::vector<int> order{1};
    order.insert(order.end(), rest.begin(), rest.end());
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<OrientedVertex> c;
      bool skip = false;
      for (int i = 0; i < m; ++i) {
        int s = (mask >> i) & 1 ? -1 : 1;
        if (s < 0 && (cg.directed() || !cg.is_r(order[i]))) skip = true;
        c.push_back({order[i], s});
      }
      if (skip) continue;
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        const auto& u = c[i];
        const auto& w = c[(i + 1) % m];
        if (m == 1)
          ok = cg.base().has_arc(cg.exit(u.id, u.sign), cg.entry(u.id, u.sign));
        else
          ok = cg.arc(u.id, u.sign, w.id, w.sign);
      }
      if (!ok) continue;
      auto seq = expand_sequence(cg, c);
      if (!verify_circuit(cg.base(), seq)) return rotate_to_one(seq);
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return std::nullopt;
}

class Engine {
 public:
  Engine(const ContractedGraph& cg, Algo algo, const SearchConfig& cfg, const std::atomic<bool>* stop)
      : cg_(cg), algo_(algo), cfg_(cfg), stop_(stop), rng_(cfg.seed, kSearchStream) {
    int n = cg.base().n();
    L_ = cfg.arcs_per_probe > 0 ? cfg.arcs_per_probe : default_arcs(n);
    depth_ = cfg.depth_budget > 0 ? cfg.depth_budget : default_depth(n);
    iters_ = cfg.max_iterations > 0 ? cfg.max_iterations : default_iterations(n);
    tabu_len_ = std::max(8, 2 * L_);
    res_.seed = cfg.seed;
  }

  SearchResult run() {
    if (cg_.forced_circuit()) {
      res_.found = true;
      res_.circuit = rotate_to_one(*cg_.forced_circuit());
      res_.note = "forced edges form the circuit";
      return res_;
    }
    if (cg_.m() < 4) {
      if (auto c = tiny_circuit(cg_)) {
        res_.found = true;
        res_.circuit = *c;
      } else {
        res_.note = "no hamilton circuit";
      }
      return res_;
    }
    reseed();
    int phases = std::max(1, cfg_.phases);
    for (int phase = 0; phase < phases; ++phase) {
      for (long it = 0; it < iters_; ++it) {
        if (st_->pseudo_count() == 0 && finish()) return res_;
        if (cancelled()) {
          res_.note = "cancelled";
          return res_;
        }
        ++res_.stats.iterations;
        step(phase);
        verify();
        tick();
      }
    }
    if (st_->pseudo_count() == 0 && finish()) return res_;
    res_.note = "iteration budget exhausted";
    return res_;
  }

 private:
  bool cancelled() const {
    return (cfg_.cancel && cfg_.cancel->load(std::memory_order_relaxed)) ||
           (stop_ && stop_->load(std::memory_order_relaxed));
  }
  bool rotations() const { return !cg_.directed() && (algo_ == Algo::G || algo_ == Algo::GHeuristic); }
  bool deep_backtrack() const { return algo_ == Algo::D || algo_ == Algo::GNoR; }

  void reseed() {
    bool fell_back = false;
    st_.emplace(HamState::random(cg_, rng_, cfg_.forced_complement, &fell_back, cfg_.rebuild_interval));
    st_->set_backtrack_limit(deep_backtrack() ? 0 : 1);
    snaps_.clear();
    tabu_.clear();
    focus_ = 0;
  }

  bool finish() {
    auto seq = rotate_to_one(expand_sequence(cg_, st_->circuit()));
    if (verify_circuit(cg_.base(), seq)) return false;
    res_.found = true;
    res_.circuit = seq;
    return true;
  }

  std::vector<int> out_nbrs(int v) const {
    std::vector<int> r;
    for (int w : cg_.reduced().out(cg_.exit(v, st_->sign(v)))) {
      int o = cg_.owner(w);
      if (o != v) r.push_back(o);
    }
    return r;
  }
  std::vector<int> in_nbrs(int v) const {
    std::vector<int> r;
    for (int w : cg_.reduced().in(cg_.entry(v, st_->sign(v)))) {
      int o = cg_.owner(w);
      if (o != v) r.push_back(o);
    }
    return r;
  }
  std::vector<int> sample(std::vector<int> xs, int k) {
    if (static_cast<int>(xs.size()) > k) {
      for (int i = 0; i < k; ++i) std::swap(xs[i], xs[i + rng_.below(xs.size() - i)]);
      xs.resize(k);
    }
    return xs;
  }

  // The move that would return to the previous circuit.
  bool undoes_head(const MoveSet& m) const {
    const auto& bt = st_->backtrack();
    return !bt.empty() && bt.back().kind == HamState::Undo::Kind::Move && bt.back().forward.inverse().same_as(m);
  }
  // Algorithm G never returns to the previous circuit. Algorithm D may, and then does so by
  // backtracking; the moves it recently applied or undid are otherwise barred.
  bool tabu(const MoveSet& m) const {
    if (!deep_backtrack()) return undoes_head(m);
    if (undoes_head(m)) return false;
    for (const auto& t : tabu_)
      if (t.same_as(m)) return true;
    return false;
  }
  void remember(const MoveSet& m) {
    if (!deep_backtrack()) return;
    tabu_.push_back(m);
    while (static_cast<int>(tabu_.size()) > tabu_len_) tabu_.pop_front();
  }

  void consider(const MoveSet& m, bool closing) {
    const auto& v = m.v;
    for (int i = 0; i < m.size(); ++i)
      for (int j = i + 1; j < m.size(); ++j)
        if (v[i] == v[j] || v[i] == 0 || v[j] == 0) return;
    if (!st_->admissible(m) || tabu(m)) return;
    if (closing)
      for (auto [u, w] : st_->witness_arcs(m))
        if (!st_->arc_real(u, w)) return;
    Cand c;
    c.m = m;
    c.score = st_->score(m);
    for (int i = 0; i < m.size(); ++i) {
      int d = st_->usable_degree(v[i]);
      if (d <= 2 && st_->is_pseudo(v[i])) c.deg2 = true;
      c.maxdeg = std::max(c.maxdeg, d);
    }
    c.tie = rng_();
    if (!best_ || better(c, *best_)) best_ = c;
  }

  // Candidate 3-cycles and POTDTCs through the focus vertex a.
  void probe(int a, bool closing) {
    best_.reset();
    auto ys = sample(out_nbrs(a), L_);
    int ha = st_->succ(a);
    auto into_ha = sample(in_nbrs(ha), L_);
    for (int y : ys) {
      int b = st_->pred(y);
      if (b == a) continue;
      for (int z : sample(out_nbrs(b), L_)) consider(MoveSet::three(a, b, st_->pred(z)), closing);
      for (int c : into_ha) consider(MoveSet::three(a, b, c), closing);
    }
    for (int c : into_ha) {
      if (c == a) continue;
      for (int b : sample(in_nbrs(st_->succ(c)), L_)) consider(MoveSet::three(a, b, c), closing);
    }
    if (closing) return;
    // POTDTC (a c)(b d): c from an arc out of a, b between a and c or another pseudo-arc vertex.
    int budget = depth_;
    auto pv = st_->pseudo_vertices();
    int n = st_->n();
    for (int y : ys) {
      int c = st_->pred(y);
      if (c == a) continue;
      std::vector<int> bs;
      int pa = st_->position(a), pc = st_->position(c);
      int fwd = (pc - pa + n) % n;
      int lo = fwd <= n - fwd ? pa : pc, len = std::min(fwd, n - fwd);
      for (int k = 0; k < L_ && len > 1; ++k) bs.push_back(st_->at(lo + 1 + static_cast<int>(rng_.below(len - 1))));
      for (int k = 0; k < L_ && !pv.empty(); ++k) bs.push_back(rng_.pick(pv));
      for (int b : bs) {
        if (b == a || b == c) continue;
        for (int z : sample(out_nbrs(b), L_)) {
          consider(MoveSet::potdtc(a, c, b, st_->pred(z)), false);
          if (--budget <= 0) return;
        }
      }
    }
  }

  int pick_focus() {
    if (focus_ && st_->is_pseudo(focus_)) {
      int f = focus_;
      focus_ = 0;
      return f;
    }
    focus_ = 0;
    if (random_focus_) {
      random_focus_ = false;
      auto pv = st_->pseudo_vertices();
      return rng_.pick(pv);
    }
    return st_->top_pseudo(rng_);
  }

  struct Rot {
    int x = 0, score = 0;
  };
  std::optional<Rot> best_rotation(int a) {
    int s = st_->succ(a);
    std::optional<Rot> best;
    int best_deg = -1;
    std::uint64_t best_tie = 0;
    bool any_positive = false;
    if (algo_ == Algo::GHeuristic)
      for (int x : cg_.neighbors(a))
        if (x != s && st_->rotation_score_positive(a, x)) any_positive = true;
    for (int x : cg_.neighbors(a)) {
      if (x == s) continue;
      int sc = st_->rotation_score(a, x);
      int deg = st_->usable_degree(x);
      if (algo_ == Algo::GHeuristic) {
        if (any_positive && !st_->rotation_score_positive(a, x)) continue;
        if (!any_positive) {
          deg = st_->usable_degree(st_->succ(x));
          sc = std::min(sc, 0);
        }
      }
      std::uint64_t tie = rng_();
      bool take = !best || sc > best->score || (sc == best->score && (deg > best_deg || (deg == best_deg && tie < best_tie)));
      if (take) {
        best = Rot{x, sc};
        best_deg = deg;
        best_tie = tie;
      }
    }
    if (best) best->score = st_->rotation_score(a, best->x);
    return best;
  }

  void trace(const std::string& move, int score) {
    if (!cfg_.trace) return;
    std::ostringstream o;
    o << "iter=" << res_.stats.iterations << " move=" << move << " score=" << score << " pseudo=" << st_->pseudo_count();
    res_.trace.push_back(o.str());
  }

  void apply(const Cand& c) {
    st_->apply_move(c.m);
    std::vector<int> touched;
    for (int i = 0; i < c.m.size(); ++i) {
      touched.push_back(c.m.v[i]);
      touched.push_back(st_->succ(c.m.v[i]));
    }
    st_->orient(touched);
    remember(c.m.inverse());
    trace(c.m.str(), c.score);
  }

  void rotate(int a, const Rot& r) {
    int s = st_->succ(a), t = st_->succ(r.x);
    st_->apply_rotation(a, r.x);
    st_->orient({a, r.x, s, t});
    ++res_.stats.rotations;
    if (st_->is_pseudo(s)) focus_ = s;
    trace("R(" + std::to_string(a) + " " + std::to_string(r.x) + ")", r.score);
  }

  void fail() {
    ++res_.stats.failures;
    random_focus_ = true;
    if (!deep_backtrack()) {
      trace("none", 0);
      return;
    }
    if (!st_->backtrack().empty()) {
      backtrack();
      return;
    }
    ++res_.stats.reseeds;
    reseed();
    trace("reseed", 0);
  }

  void backtrack() {
    auto head = st_->backtrack().back();
    st_->undo();
    ++res_.stats.backtracks;
    if (head.kind == HamState::Undo::Kind::Move) remember(head.forward);
    trace("undo", 0);
  }

  // The unique edge off the circuit at a pseudo-arc vertex of degree 2 must be used.
  bool forced_rotation(int a) {
    if (cg_.directed() || st_->usable_degree(a) != 2) return false;
    std::vector<int> off;
    for (int x : cg_.neighbors(a))
      if (x != st_->succ(a) && x != st_->pred(a)) off.push_back(x);
    if (off.empty()) return false;
    int x = rng_.pick(off);
    if (!st_->apply_rotation(a, x)) return false;
    ++res_.stats.rotations;
    trace("R(" + std::to_string(a) + " " + std::to_string(x) + ")", 0);
    return true;
  }

  void step(int phase) {
    pre_bt_ = st_->backtrack().size();
    if (cfg_.verify_state) pre_ = st_->circuit();
    undid_ = false;
    int before = st_->pseudo_count();
    int a = pick_focus();
    bool closing = phase > 0 && algo_ != Algo::D && algo_ != Algo::GNoR;
    probe(a, closing);
    if (closing && !(best_ && best_->score > 0)) probe(a, false);
    if (best_ && best_->score > 0) {
      apply(*best_);
    } else if (rotations()) {
      auto r = best_rotation(a);
      bool zero_move = best_ && best_->score == 0;
      if (r && r->score > 0 && !(cfg_.prefer_zero_move && zero_move))
        rotate(a, *r);
      else if (zero_move)
        apply(*best_);
      else if (r && r->score >= 0)
        rotate(a, *r);
      else
        fail();
    } else if (best_ && best_->score == 0 && undoes_head(best_->m)) {
      undid_ = true;
      backtrack();
    } else if (best_ && best_->score == 0) {
      apply(*best_);
    } else if (algo_ == Algo::GNoR && forced_rotation(a)) {
    } else {
      undid_ = deep_backtrack() && !st_->backtrack().empty();
      fail();
    }
    if (st_->pseudo_count() < before) ++res_.stats.successes;
  }

  void verify() {
    if (!cfg_.verify_state) return;
    ++res_.stats.integrity_checks;
    if (!st_->check_integrity()) ++res_.stats.integrity_failures;
    std::size_t now = st_->backtrack().size();
    if (undid_) {
      ++res_.stats.backtrack_checks;
      if (snaps_.empty() || snaps_.back() != st_->circuit()) ++res_.stats.backtrack_mismatches;
      if (!snaps_.empty()) snaps_.pop_back();
    } else if (now > pre_bt_) {
      snaps_.push_back(pre_);
    } else if (now == pre_bt_ && now > 0 && !deep_backtrack()) {
      // A bounded BACKTRACK dropped its oldest entry while recording the new one.
      snaps_.push_back(pre_);
    }
    while (snaps_.size() > now) snaps_.pop_front();
  }

  void tick() {
    if (!cfg_.verify_state) {
      st_->tick();
      return;
    }
    auto before = st_->circuit();
    int segs = st_->segment_count();
    st_->tick();
    if (segs > 1 && st_->segment_count() == 1) {
      ++res_.stats.rebuild_checks;
      if (st_->circuit() != before) ++res_.stats.rebuild_mismatches;
    } else if (st_->circuit() != before) {
      ++res_.stats.rebuild_mismatches;
    }
  }

  const ContractedGraph& cg_;
  Algo algo_;
  SearchConfig cfg_;
  const std::atomic<bool>* stop_;
  Rng rng_;
  int L_, depth_, tabu_len_;
  long iters_;
  std::optional<HamState> st_;
  std::optional<Cand> best_;
  std::deque<MoveSet> tabu_;
  std::deque<std::vector<OrientedVertex>> snaps_;
  std::vector<OrientedVertex> pre_;
  std::size_t pre_bt_ = 0;
  bool undid_ = false;
  int focus_ = 0;
  bool random_focus_ = false;
  SearchResult res_;
};

ContractedGraph prepare(Algo algo, const Graph& g) {
  if (g.n() < 3) throw std::invalid_argument("search needs at least 3 vertices");
  if ((algo == Algo::G || algo == Algo::GHeuristic || algo == Algo::GNoR) && g.directed())
    throw std::invalid_argument("algorithm " + algo_name(algo) + " needs an undirected graph");
  if (algo == Algo::D && !g.directed()) throw std::invalid_argument("algorithm d needs a digraph");
  return algo == Algo::GNoR ? ContractedGraph::trivial(g) : ContractedGraph::contract(g);
}

}  // namespace

SearchResult run_search(Algo algo, const Graph& g, const SearchConfig& cfg) {
  auto cg = prepare(algo, g);
  return Engine(cg, algo, cfg, nullptr).run();
}

SearchResult algorithm_g(const Graph& g, const SearchConfig& cfg) { return run_search(Algo::G, g, cfg); }
SearchResult algorithm_d(const Graph& d, const SearchConfig& cfg) { return run_search(Algo::D, d, cfg); }
SearchResult algorithm_g_no_r(const Graph& g, const SearchConfig& cfg) { return run_search(Algo::GNoR, g, cfg); }
SearchResult algorithm_g_heuristic(const Graph& g, const SearchConfig& cfg) {
  return run_search(Algo::GHeuristic, g, cfg);
}

SearchResult search_with_restarts(Algo algo, const Graph& g, const SearchConfig& cfg, int restarts, int threads) {
  restarts = std::max(1, restarts);
  auto cg = prepare(algo, g);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, restarts);
  std::vector<std::optional<SearchResult>> results(restarts);
  std::vector<std::atomic<bool>> stop(restarts);
  for (auto& s : stop) s = false;
  std::atomic<int> next{0};
  std::mutex mu;
  int winner = restarts;
  auto worker = [&] {
    for (;;) {
      int k = next.fetch_add(1);
      if (k >= restarts) return;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (k > winner) continue;
      }
      SearchConfig c = cfg;
      c.seed = restart_seed(cfg.seed, k);
      auto r = Engine(cg, algo, c, &stop[k]).run();
      r.restart = k;
      std::lock_guard<std::mutex> lock(mu);
      if (r.found && k < winner) {
        winner = k;
        for (int j = k + 1; j < restarts; ++j) stop[j] = true;
      }
      results[k] = std::move(r);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (winner < restarts) return *results[winner];
  SearchResult out = results[0] ? *results[0] : SearchResult{};
  for (int k = 1; k < restarts; ++k) {
    if (!results[k]) continue;
    out.stats.iterations += results[k]->stats.iterations;
    out.stats.failures += results[k]->stats.failures;
  }
  out.note = "no circuit in " + std::to_string(restarts) + " restarts";
  return out;
}

// ---- scripted replay ----

namespace {

std::vector<std::vector<std::string>> cycle_groups(const std::string& text) {
  std::vector<std::vector<std::string>> groups;
  std::size_t i = 0;
  while ((i = text.find('(', i)) != std::string::npos) {
    auto j = text.find(')', i);
    if (j == std::string::npos) throw std::runtime_error("unbalanced parenthesis");
    std::istringstream in(text.substr(i + 1, j - i - 1));
    std::vector<std::string> g;
    for (std::string t; in >> t;) g.push_back(t);
    groups.push_back(g);
    i = j + 1;
  }
  return groups;
}

}  // namespace

ReplayResult run_replay(const ContractedGraph& cg, const std::string& script) {
  std::optional<HamState> state;
  ReplayResult out;
  std::istringstream lines(script);
  std::string line;
  int lineno = 0;
  auto canon = [&](const std::vector<OrientedVertex>& c) { return format_contracted_circuit(cg, c); };
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream in(line);
    std::string cmd;
    if (!(in >> cmd)) continue;
    std::string rest;
    std::getline(in, rest);
    auto where = "replay line " + std::to_string(lineno) + ": ";
    try {
      if (cmd == "start") {
        state.emplace(cg, parse_contracted_circuit(cg, rest), -1);
        continue;
      }
      if (!state) throw std::runtime_error("the script must begin with a start line");
      auto& st = *state;
      if (cmd == "move" || cmd == "ord") {
        auto groups = cycle_groups(rest);
        auto id = [&](const std::string& t) { return cmd == "ord" ? st.ord_inv(std::stoi(t)) : cg.find_label(t).first; };
        MoveSet m;
        if (groups.size() == 1 && groups[0].size() == 3)
          m = MoveSet::three(id(groups[0][0]), id(groups[0][1]), id(groups[0][2]));
        else if (groups.size() == 2 && groups[0].size() == 2 && groups[1].size() == 2)
          m = MoveSet::potdtc(id(groups[0][0]), id(groups[0][1]), id(groups[1][0]), id(groups[1][1]));
        else
          throw std::runtime_error("expected a 3-cycle or two transpositions");
        if (!st.apply_move(m)) throw std::runtime_error("move " + m.str() + " is not admissible");
      } else if (cmd == "rotate" || cmd == "rotate-ord") {
        std::istringstream r(rest);
        std::string p, q;
        if (!(r >> p >> q)) throw std::runtime_error("rotate needs two vertices");
        int a = cmd == "rotate" ? cg.find_label(p).first : st.ord_inv(std::stoi(p));
        int x = cmd == "rotate" ? cg.find_label(q).first : st.ord_inv(std::stoi(q));
        if (!st.apply_rotation(a, x)) throw std::runtime_error("rotation is not possible");
      } else if (cmd == "rebuild") {
        st.rebuild();
      } else if (cmd == "expect") {
        auto want = canon(parse_contracted_circuit(cg, rest));
        auto got = canon(st.circuit());
        if (want != got) out.mismatches.push_back(where + "expected " + want + " got " + got);
      } else {
        throw std::runtime_error("unknown step '" + cmd + "'");
      }
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(where + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(where + e.what());
    }
  }
  if (!state) throw std::runtime_error("replay script has no start line");
  out.final_circuit = canon(state->circuit());
  out.pseudo_count = state->pseudo_count();
  return out;
}

// ---- reachability ----

ReachabilityResult reachability_oracle(const Graph& g, const std::vector<int>& h0, long budget,
                                       const std::vector<int>* target, bool pseudo_only) {
  int n = g.n();
  std::vector<int> sorted = h0;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
    if (sorted[i] != i + 1) sorted.clear();
  if (static_cast<int>(sorted.size()) != n || n > 250)
    throw std::invalid_argument("h0 must list every vertex once");
  using Key = std::string;
  auto key_of = [&](const std::vector<int>& seq) {
    auto r = rotate_to_one(seq);
    return Key(r.begin(), r.end());
  };
  std::optional<Key> want, want_rev;
  if (target) {
    want = key_of(*target);
    if (!g.directed()) {
      std::vector<int> rev(target->rbegin(), target->rend());
      want_rev = key_of(rev);
    }
  }
  auto is_goal = [&](const Key& k) {
    if (want) return k == *want || (want_rev && k == *want_rev);
    for (int i = 0; i < n; ++i)
      if (!g.has_arc(static_cast<unsigned char>(k[i]), static_cast<unsigned char>(k[(i + 1) % n]))) return false;
    return true;
  };
  struct Parent {
    Key from;
    MoveSet move;
  };
  std::unordered_map<Key, Parent> parent;
  std::deque<Key> queue;
  Key start = key_of(h0);
  parent.emplace(start, Parent{});
  queue.push_back(start);
  ReachabilityResult res;
  std::vector<int> succ(n + 1), pos(n + 1), img(n + 1);
  while (!queue.empty()) {
    Key cur = queue.front();
    queue.pop_front();
    ++res.states;
    if (is_goal(cur)) {
      res.found = true;
      res.circuit.assign(cur.begin(), cur.end());
      for (Key k = cur; k != start; k = parent[k].from) res.certificate.push_back(parent[k].move);
      std::reverse(res.certificate.begin(), res.certificate.end());
      return res;
    }
    if (res.states >= budget) break;
    for (int i = 0; i < n; ++i) {
      int v = static_cast<unsigned char>(cur[i]);
      succ[v] = static_cast<unsigned char>(cur[(i + 1) % n]);
      pos[v] = i;
    }
    auto movable = [&](int v) { return !pseudo_only || !g.has_arc(v, succ[v]); };
    auto push = [&](const MoveSet& m) {
      for (int v = 1; v <= n; ++v) img[v] = v;
      if (m.kind == MoveSet::Kind::ThreeCycle) {
        img[m.v[0]] = m.v[1];
        img[m.v[1]] = m.v[2];
        img[m.v[2]] = m.v[0];
      } else {
        std::swap(img[m.v[0]], img[m.v[1]]);
        std::swap(img[m.v[2]], img[m.v[3]]);
      }
      std::vector<int> seq{1};
      while (static_cast<int>(seq.size()) < n) seq.push_back(succ[img[seq.back()]]);
      Key k(seq.begin(), seq.end());
      if (parent.emplace(k, Parent{cur, m}).second) queue.push_back(k);
    };
    auto fwd = [&](int p, int q) { return (pos[q] - pos[p] + n) % n; };
    for (int a = 1; a <= n; ++a) {
      if (!movable(a)) continue;
      for (int b = a + 1; b <= n; ++b) {
        if (!movable(b)) continue;
        for (int c = a + 1; c <= n; ++c) {
          if (c == b || !movable(c)) continue;
          if (fwd(a, b) < fwd(a, c)) push(MoveSet::three(a, b, c));
        }
      }
    }
    for (int a = 1; a <= n; ++a)
      for (int c = a + 1; c <= n; ++c) {
        if (!movable(a) || !movable(c)) continue;
        for (int b = a + 1; b <= n; ++b)
          for (int d = b + 1; d <= n; ++d) {
            if (b == c || d == c || !movable(b) || !movable(d)) continue;
            if (positions_interleave(n, pos[a], pos[c], pos[b], pos[d])) push(MoveSet::potdtc(a, c, b, d));
          }
      }
  }
  return res;
}

// ---- weighted tours ----

double tour_weight(const Weights& w, const std::vector<int>& tour) {
  double s = 0;
  for (std::size_t i = 0; i < tour.size(); ++i) s += w[tour[i] - 1][tour[(i + 1) % tour.size()] - 1];
  return s;
}

namespace {

constexpr double kEps = 1e-9;

class Tour {
 public:
  Tour(const Weights& w, std::vector<int> seq) : w_(&w), seq_(std::move(seq)), pos_(seq_.size() + 1) { index(); }
  int n() const { return static_cast<int>(seq_.size()); }
  int succ(int v) const { return seq_[(pos_[v] + 1) % n()]; }
  int pred(int v) const { return seq_[(pos_[v] + n() - 1) % n()]; }
  int fwd(int p, int q) const { return (pos_[q] - pos_[p] + n()) % n(); }
  double w(int u, int v) const { return (*w_)[u - 1][v - 1]; }
  const std::vector<int>& seq() const { return seq_; }

  double rotation_delta(int x, int y) const {
    return w(x, y) + w(succ(x), succ(y)) - w(x, succ(x)) - w(y, succ(y));
  }
  // Reverses succ(x) .. y.
  void rotate(int x, int y) {
    int i = (pos_[x] + 1) % n(), len = fwd(x, y);
    for (int k = 0; k < len / 2; ++k) std::swap(seq_[(i + k) % n()], seq_[(i + len - 1 - k) % n()]);
    index();
  }
  // The admissible 3-cycle (a b c) with a, b, c clockwise exchanges the blocks after a and after b.
  double three_delta(int a, int b, int c) const {
    return w(a, succ(b)) + w(b, succ(c)) + w(c, succ(a)) - w(a, succ(a)) - w(b, succ(b)) - w(c, succ(c));
  }
  void three(int a, int b, int c) {
    std::vector<int> out{a};
    for (int v = succ(b);; v = succ(v)) {
      out.push_back(v);
      if (v == c) break;
    }
    for (int v = succ(a);; v = succ(v)) {
      out.push_back(v);
      if (v == b) break;
    }
    for (int v = succ(c); v != a; v = succ(v)) out.push_back(v);
    seq_ = out;
    index();
  }
  // Best good rotation, or delta >= 0 when none.
  std::pair<double, std::pair<int, int>> best_rotation() const {
    std::pair<double, std::pair<int, int>> best{0.0, {0, 0}};
    for (int x : seq_)
      for (int y : seq_) {
        if (y == x || y == succ(x) || x == succ(y)) continue;
        double d = rotation_delta(x, y);
        if (d < best.first - kEps) best = {d, {x, y}};
      }
    return best;
  }

 private:
  void index() {
    for (int i = 0; i < n(); ++i) pos_[seq_[i]] = i;
  }
  const Weights* w_;
  std::vector<int> seq_;
  std::vector<int> pos_;
};

}  // namespace

TourResult tsp_heuristic(const Weights& w, const SearchConfig& cfg) {
  int n = static_cast<int>(w.size());
  if (n < 3) throw std::invalid_argument("tsp_heuristic needs at least 3 cities");
  for (const auto& row : w)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("weight matrix must be square");
  Rng rng(cfg.seed, kTourStream);
  std::vector<int> start(n);
  for (int i = 0; i < n; ++i) start[i] = i + 1;
  rng.shuffle(start);
  Tour t(w, start);
  TourResult res;
  double cur = tour_weight(w, t.seq());
  res.accepted.push_back(cur);
  auto sweep = [&] {
    for (;;) {
      auto [d, xy] = t.best_rotation();
      if (d >= -kEps) return;
      t.rotate(xy.first, xy.second);
      cur = tour_weight(w, t.seq());
      res.accepted.push_back(cur);
    }
  };
  sweep();
  double best = cur;
  std::vector<int> best_tour = t.seq();
  int L = cfg.arcs_per_probe > 0 ? cfg.arcs_per_probe : default_arcs(n);
  L = std::min(L, n - 1);
  std::vector<std::vector<int>> near(n + 1);
  for (int v = 1; v <= n; ++v) {
    for (int u = 1; u <= n; ++u)
      if (u != v) near[v].push_back(u);
    std::stable_sort(near[v].begin(), near[v].end(), [&](int p, int q) { return w[v - 1][p - 1] < w[v - 1][q - 1]; });
    near[v].resize(L);
  }
  long window = std::max(1L, static_cast<long>(std::ceil(n * safe_ln(n))));
  long quiet = 0;
  long limit = cfg.max_iterations > 0 ? cfg.max_iterations : std::numeric_limits<long>::max();
  while (quiet < window && res.iterations < limit) {
    ++res.iterations;
    int a = static_cast<int>(rng.below(n)) + 1;
    struct Three {
      double d;
      int a, b, c;
    };
    std::vector<Three> cands;
    for (int y : near[a]) {
      int b = t.pred(y);
      if (b == a) continue;
      for (int z : near[b]) {
        int c = t.pred(z);
        if (c == a || c == b || t.fwd(a, b) >= t.fwd(a, c)) continue;
        cands.push_back({t.three_delta(a, b, c), a, b, c});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Three& p, const Three& q) { return p.d < q.d; });
    bool accepted = false;
    if (!cands.empty() && cands[0].d < -kEps) {
      t.three(cands[0].a, cands[0].b, cands[0].c);
      accepted = true;
    } else {
      for (std::size_t k = 0; k < std::min<std::size_t>(3, cands.size()) && !accepted; ++k) {
        Tour trial = t;
        trial.three(cands[k].a, cands[k].b, cands[k].c);
        auto [d, xy] = trial.best_rotation();
        if (cands[k].d + d < -kEps) {
          trial.rotate(xy.first, xy.second);
          t = trial;
          accepted = true;
        }
      }
    }
    if (accepted) {
      cur = tour_weight(w, t.seq());
      res.accepted.push_back(cur);
      sweep();
    }
    if (cur < best - kEps) {
      best = cur;
      best_tour = t.seq();
      quiet = 0;
    } else {
      ++quiet;
    }
    res.best.push_back(best);
  }
  res.tour = rotate_to_one(best_tour);
  res.weight = tour_weight(w, res.tour);
  return res;
}

}  // namespace hamperm
