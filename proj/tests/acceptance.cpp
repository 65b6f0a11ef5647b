// Acceptance checks; prints one PASS or FAIL line per criterion and exits nonzero on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hamperm/ap.hpp"
#include "hamperm/graph.hpp"
#include "hamperm/ham_state.hpp"
#include "hamperm/perm.hpp"
#include "hamperm/prob.hpp"
#include "hamperm/random.hpp"
#include "hamperm/search.hpp"

using namespace hamperm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string data(const std::string& name) { return std::string(HAMPERM_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs one criterion, turning an escaped exception into a failure.
void run(int id, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += " exception: ";
    detail += e.what();
  }
  report(id, ok, detail);
}

template <class F>
void for_each_sequence(int n, F f) {
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 2);
  do {
    std::vector<int> seq{1};
    seq.insert(seq.end(), rest.begin(), rest.end());
    f(seq);
  } while (std::next_permutation(rest.begin(), rest.end()));
}

std::vector<OrientedVertex> plain(const std::vector<int>& seq) {
  std::vector<OrientedVertex> c;
  for (int v : seq) c.push_back({v, 1});
  return c;
}

// Chords p-q and a-b cross with no shared endpoint, vertices 1..n around a circle.
bool chords_cross(int p, int q, int a, int b) {
  if (p == a || p == b || q == a || q == b) return false;
  int lo = std::min(p, q), hi = std::max(p, q);
  return (lo < a && a < hi) != (lo < b && b < hi);
}

// ---- criterion 1

bool admissibility(std::string& detail) {
  auto t0 = Clock::now();
  long checked = 0, bad = 0;
  for (int n = 4; n <= 8; ++n) {
    for_each_sequence(n, [&](const std::vector<int>& seq) {
      auto h = NCycle::from_sequence(seq);
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
          for (int c = 1; c <= n; ++c) {
            if (a == b || b == c || a == c) continue;
            bool truth = is_ncycle(compose(h, Permutation::from_cycles(n, {{a, b, c}})));
            bad += is_admissible_3cycle(h, a, b, c) != truth;
            ++checked;
            for (int d = 1; d <= n; ++d) {
              if (d == a || d == b || d == c) continue;
              // (a c)(b d)
              bool t2 = is_ncycle(compose(h, Permutation::from_cycles(n, {{a, c}, {b, d}})));
              bad += is_admissible_potdtc(h, a, c, b, d) != t2;
              ++checked;
            }
          }
    });
  }
  double secs = seconds_since(t0);
  detail = std::to_string(checked) + " permutations, " + std::to_string(bad) + " disagreements, " +
           std::to_string(secs) + " s";
  return bad == 0 && secs < 60;
}

// ---- criterion 2

bool closed_forms(std::string& detail) {
  int mismatches = 0;
  for (int n = 4; n <= 60; ++n) {
    long h3 = 0, a3 = 0, h22 = 0, a22 = 0;
    for (int j = 3; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        if (k == j - 1 || k == j) continue;
        ++a3;
        h3 += chords_cross(1, j, j - 1, k);
      }
      for (int r = 2; r < j; ++r)
        for (int s = 1; s <= n; ++s) {
          if (s == r || s == r + 1) continue;
          ++a22;
          h22 += chords_cross(1, j, r, s);
        }
    }
    Rational f3(n - 3, 2 * (n - 2)), f22(n - 3, 3 * (n - 2));
    mismatches += Rational(h3, a3) != f3 || p3_exact(n).value != f3;
    mismatches += Rational(h22, a22) != f22 || p22_exact(n).value != f22;
  }
  auto m3 = mc_admissible_rate(MoveKind::ThreeCycle, 50, 1'000'000, 1);
  auto m22 = mc_admissible_rate(MoveKind::Potdtc, 50, 1'000'000, 1);
  double z3 = (m3.mean - 47.0 / 96) / m3.std_error, z22 = (m22.mean - 47.0 / 144) / m22.std_error;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d enumeration mismatches; n=50 MC z = %.2f (3-cycle), %.2f (POTDTC)", mismatches,
                z3, z22);
  detail = buf;
  return mismatches == 0 && std::abs(z3) < 4 && std::abs(z22) < 4;
}

// ---- criterion 3

bool two_admissible(std::string& detail) {
  double big = p_two_admissible(1'000'000).approx(), v30 = p_two_admissible(30).approx(),
         v20 = p_two_admissible(20).approx();
  char buf[200];
  std::snprintf(buf, sizeof buf, "n=1e6: %.9f (143/180 = %.9f), n=30: %.8f, n=20: %.8f", big, 143.0 / 180, v30, v20);
  detail = buf;
  return std::abs(big - 143.0 / 180) < 1e-6 && v30 > 0.7135599 && v20 >= 0.7;
}

// ---- criterion 4

bool transcripts(std::string& detail) {
  std::vector<std::string> problems;
  auto expect = [&](const std::string& what, const std::string& got, const std::string& want) {
    if (got != want) problems.push_back(what + " gave " + got);
  };

  Graph g(15);
  g.add_edge(7, 10);
  auto cg = ContractedGraph::trivial(g);
  HamState st(cg, plain({1, 14, 8, 4, 3, 12, 7, 13, 10, 6, 11, 5, 15, 9, 2}), -1);
  if (!st.apply_move(MoveSet::three(1, 4, 7))) problems.push_back("A1 rejected");
  expect("A1", st.abbreviation(), "(1 5 ... 7 2 ... 4 8 ...)");
  if (!st.apply_rotation(7, 10)) problems.push_back("A2 rejected");
  expect("A2", st.abbreviation(), "(1 5 ... 7 9 8 4 ... 2 10 ...)");
  if (!st.apply_move(MoveSet::three(14, 9, 12))) problems.push_back("A3 rejected");
  expect("A3", st.abbreviation(), "(1 5 6 10 ... 14 7 9 8 4 ... 2 15)");
  // Ordinals (5 13)(6 2) of the last materialised circuit.
  auto s3 = MoveSet::potdtc(st.ord_inv(5), st.ord_inv(13), st.ord_inv(6), st.ord_inv(2));
  if (!st.apply_move(s3)) problems.push_back("A4 rejected");
  expect("A4", st.abbreviation(), "(1 5 14 7 9 8 4 ... 2 10 ... 13 6 15)");

  auto c13 = ContractedGraph::contract(read_graph_file(data("ex13.graph")));
  auto stages = run_replay(c13, slurp(data("ex13_stages.replay")));
  for (const auto& m : stages.mismatches) problems.push_back("stages: " + m);
  expect("contracted stages", stages.final_circuit,
         "(1 20 24 5 11-12-2 22 9-6-4 13 18 14 19 23 10-15-21 3 16 8 17 25 7)");

  auto rot = run_replay(c13, slurp(data("ex13_rotations.replay")));
  for (const auto& m : rot.mismatches) problems.push_back("rotations: " + m);
  if (rot.pseudo_count != 0) problems.push_back("rotation circuit still has pseudo-arcs");

  auto c15 = ContractedGraph::trivial(read_graph_file(data("ex15.graph")));
  auto fin = run_replay(c15, slurp(data("ex15_final.replay")));
  for (const auto& m : fin.mismatches) problems.push_back("final: " + m);
  expect("final", fin.final_circuit, "(1 9 6 4 13 18 8 5 16 11 12 2 22 17 3 14 19 23 20 24 21 15 10 25 7)");
  if (fin.pseudo_count != 0) problems.push_back("final circuit still has pseudo-arcs");

  detail = problems.empty() ? "A1-A4, contracted stages, rotation circuit and final circuit reproduced"
                            : problems.front() + " (" + std::to_string(problems.size()) + " problems)";
  return problems.empty();
}

// ---- criterion 5

bool reachability(std::string& detail) {
  int tried = 0, certified = 0;
  for (std::uint64_t seed = 1; tried < 200; ++seed) {
    int n = 4 + static_cast<int>(seed % 4);
    Rng rng(seed, 50);
    std::vector<int> hidden(n);
    std::iota(hidden.begin(), hidden.end(), 1);
    rng.shuffle(hidden);
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(hidden[i], hidden[(i + 1) % n]);
    int extra = rng.uniform_int(0, n / 2);
    for (int k = 0; k < extra; ++k) {
      int u = rng.uniform_int(1, n), v = rng.uniform_int(1, n);
      if (u != v) g.add_edge(u, v);
    }
    // H0 must use only edges of the complement.
    std::vector<std::vector<int>> starts;
    for_each_sequence(n, [&](const std::vector<int>& seq) {
      bool clear = true;
      for (int i = 0; i < n && clear; ++i) clear = !g.has_arc(seq[i], seq[(i + 1) % n]);
      if (clear) starts.push_back(seq);
    });
    if (starts.empty()) continue;
    ++tried;
    const auto& h0 = rng.pick(starts);
    auto r = reachability_oracle(g, h0);
    if (!r.found) continue;
    auto h = NCycle::from_sequence(h0);
    bool ok = true;
    for (const auto& m : r.certificate) {
      auto next = compose(h, m.as_permutation(n));
      if (!is_ncycle(next)) {
        ok = false;
        break;
      }
      h = NCycle::from_permutation(next);
    }
    ok = ok && h.sequence(1) == r.circuit && !verify_circuit(g, r.circuit).has_value();
    certified += ok;
  }
  detail = std::to_string(certified) + "/" + std::to_string(tried) + " graphs certified";
  return certified == tried;
}

// ---- criterion 6

bool success_rates(std::string& detail) {
  auto t0 = Clock::now();
  bool ok = true;
  int unverified = 0;
  std::string text;
  for (int n : {50, 100, 200}) {
    int g_hits = 0, d_hits = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      SearchConfig cfg;
      cfg.seed = seed;
      try {
        auto g = boll_graph(n, seed);
        auto r = algorithm_g(g, cfg);
        if (r.found) {
          if (verify_circuit(g, r.circuit).has_value()) ++unverified;
          else ++g_hits;
        }
      } catch (const NotHamiltonian&) {
      }
      try {
        auto d = k_in_k_out(n, 2, seed);
        auto r = algorithm_d(d, cfg);
        if (r.found) {
          if (verify_circuit(d, r.circuit).has_value()) ++unverified;
          else ++d_hits;
        }
      } catch (const NotHamiltonian&) {
      }
    }
    ok = ok && g_hits >= 90 && d_hits >= 80;
    text += "n=" + std::to_string(n) + " G " + std::to_string(g_hits) + "% D " + std::to_string(d_hits) + "%; ";
  }
  double secs = seconds_since(t0);
  detail = text + std::to_string(unverified) + " unverified circuits, " + std::to_string(secs) + " s";
  return ok && unverified == 0 && secs < 600;
}

// ---- criterion 7

double brute_force_derangement(const CostMatrix& m) {
  int n = m.n();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  double best = kInf;
  do {
    double v = 0;
    for (int i = 0; i < n && v < kInf; ++i) v += m(i + 1, p[i]);
    best = std::min(best, v);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// Bellman-Ford from a virtual source joined to every vertex.
bool has_negative_cycle(const std::vector<std::vector<double>>& w, int n, double tol) {
  std::vector<double> dist(n + 1, 0);
  for (int round = 0; round <= n; ++round) {
    bool changed = false;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j || std::isinf(w[i][j])) continue;
        if (dist[i] + w[i][j] < dist[j] - tol) {
          dist[j] = dist[i] + w[i][j];
          changed = true;
        }
      }
    if (!changed) return false;
  }
  return true;
}

CostMatrix random_int_matrix(int n, Rng& rng, int hi) {
  CostMatrix m(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) m.set(i, j, rng.uniform_int(0, hi));
  return m;
}

Permutation random_ncycle(int n, Rng& rng) {
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 1);
  rng.shuffle(seq);
  return NCycle::from_sequence(seq).as_permutation();
}

bool phase2_exact(std::string& detail) {
  int discrepancies = 0, negative = 0;
  for (int t = 0; t < 500; ++t) {
    Rng rng(static_cast<std::uint64_t>(t) + 1, 70);
    int n = 4 + t % 4;
    auto m = random_int_matrix(n, rng, t % 2 ? 20 : 100);
    auto start = random_ncycle(n, rng);
    auto r = phase2(m, start);
    double opt = brute_force_derangement(m);
    discrepancies += !is_derangement(r.assignment.perm) ||
                     std::abs(r.assignment.value - opt) > 1e-9 ||
                     std::abs(assignment_value(m, r.assignment.perm) - opt) > 1e-9;
    negative += has_negative_cycle(reduced_conjugate(m, r.assignment.perm), n, 1e-9);
  }
  detail = std::to_string(discrepancies) + " discrepancies, " + std::to_string(negative) +
           " negative cycles left over 500 matrices";
  return discrepancies == 0 && negative == 0;
}

// ---- criterion 8

bool cyclic_start(std::string& detail) {
  int bad = 0;
  Rng rng(8, 80);
  for (int t = 0; t < 10'000; ++t) {
    int len = rng.uniform_int(3, 20);
    std::vector<double> v(len);
    double total;
    do {
      total = 0;
      for (auto& x : v) total += x = rng.uniform_int(-20, 20);
    } while (total >= 0);
    int s = theorem31_start(v);
    double acc = 0;
    bool ok = s >= 0 && s < len;
    for (int k = 0; k < len && ok; ++k) {
      acc += v[(s + k) % len];
      ok = acc < 0;
    }
    bad += !ok;
  }
  detail = std::to_string(10'000 - bad) + "/10000 cycles start with every partial sum negative";
  return bad == 0;
}

// ---- criterion 9

bool tsp_bounds(std::string& detail) {
  int below = 0, flag_wrong = 0, flagged = 0, heur_opt = 0;
  for (int t = 0; t < 200; ++t) {
    Rng rng(static_cast<std::uint64_t>(t) + 1, 90);
    int n = 4 + t % 5;
    Weights w(n, std::vector<double>(n, 0));
    if (t % 2 == 0) {
      std::vector<std::pair<int, int>> pts(n);
      for (auto& p : pts) p = {rng.uniform_int(0, 100), rng.uniform_int(0, 100)};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          w[i][j] = std::round(std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second));
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w[i][j] = w[j][i] = rng.uniform_int(1, 50);
    }
    CostMatrix m(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j) m.set(i, j, w[i - 1][j - 1]);

    double opt = kInf;
    for_each_sequence(n, [&](const std::vector<int>& seq) { opt = std::min(opt, tour_weight(w, seq)); });

    SearchConfig sc;
    sc.seed = static_cast<std::uint64_t>(t) + 1;
    auto h = tsp_heuristic(w, sc);
    ApConfig ac;
    ac.seed = sc.seed;
    auto f = tsp_fw(m, ac);
    double fw = f.tsp.tour.value;
    below += h.weight < opt - 1e-9 || fw < opt - 1e-9;
    below += std::abs(assignment_value(m, f.tsp.tour.perm) - fw) > 1e-9 || !is_ncycle(f.tsp.tour.perm);
    heur_opt += std::abs(h.weight - opt) < 1e-9;
    if (f.tsp.optimal) {
      ++flagged;
      flag_wrong += std::abs(fw - opt) > 1e-9;
    }
  }
  detail = std::to_string(below) + " values below the optimum or inconsistent; optimality flag set on " +
           std::to_string(flagged) + " instances, wrong on " + std::to_string(flag_wrong) +
           "; heuristic optimal on " + std::to_string(heur_opt) + "/200";
  return below == 0 && flag_wrong == 0;
}

// ---- criterion 10

bool bookkeeping(std::string& detail) {
  SearchConfig cfg;
  cfg.verify_state = true;
  cfg.rebuild_interval = 3;
  cfg.max_iterations = 300;
  long iterations = 0, integrity = 0, integrity_bad = 0, backtracks = 0, backtrack_bad = 0, rebuilds = 0,
       rebuild_bad = 0, unchecked = 0;
  for (std::uint64_t seed = 1; iterations < 10'000; ++seed) {
    cfg.seed = seed;
    // Unequal sides leave every circuit impossible, so D runs long enough to backtrack.
    Graph lopsided(30, true);
    Rng rng(seed, 100);
    for (int u = 1; u <= 30; ++u)
      for (int v = 1; v <= 30; ++v)
        if ((u <= 13) != (v <= 13) && rng.below(2) == 0) lopsided.add_edge(u, v);
    std::vector<SearchResult> runs;
    try {
      runs.push_back(algorithm_g(boll_graph(40, seed), cfg));
    } catch (const NotHamiltonian&) {
    }
    try {
      runs.push_back(algorithm_g_no_r(boll_graph(30, seed), cfg));
    } catch (const NotHamiltonian&) {
    }
    try {
      runs.push_back(algorithm_d(k_in_k_out(40, 2, seed), cfg));
    } catch (const NotHamiltonian&) {
    }
    runs.push_back(algorithm_d(lopsided, cfg));
    for (const auto& r : runs) {
      const auto& s = r.stats;
      iterations += s.iterations;
      integrity += s.integrity_checks;
      integrity_bad += s.integrity_failures;
      backtracks += s.backtrack_checks;
      backtrack_bad += s.backtrack_mismatches;
      rebuilds += s.rebuild_checks;
      rebuild_bad += s.rebuild_mismatches;
      unchecked += s.integrity_checks != s.iterations || s.backtrack_checks != s.backtracks;
    }
  }
  detail = std::to_string(iterations) + " iterations; mismatches: bookkeeping " + std::to_string(integrity_bad) +
           "/" + std::to_string(integrity) + ", backtracks " + std::to_string(backtrack_bad) + "/" +
           std::to_string(backtracks) + ", rebuilds " + std::to_string(rebuild_bad) + "/" +
           std::to_string(rebuilds);
  return integrity_bad == 0 && backtrack_bad == 0 && rebuild_bad == 0 && unchecked == 0 && backtracks > 0 &&
         rebuilds > 0 && integrity >= iterations;
}

}  // namespace

int main() {
  run(1, admissibility);
  run(2, closed_forms);
  run(3, two_admissible);
  run(4, transcripts);
  run(5, reachability);
  run(6, success_rates);
  run(7, phase2_exact);
  run(8, cyclic_start);
  run(9, tsp_bounds);
  run(10, bookkeeping);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
