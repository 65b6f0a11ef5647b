#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "hamperm/graph.hpp"
#include "hamperm/ham_state.hpp"
#include "hamperm/perm.hpp"

namespace hamperm {

enum class Algo { G, D, GNoR, GHeuristic };
std::string algo_name(Algo a);
Algo parse_algo(const std::string& name);  // "g", "d", "g-nor", "g-heur"

struct SearchConfig {
  std::uint64_t seed = 1;
  long max_iterations = 0;  // per phase; 0 means ceil(2 n ln n)
  int phases = 2;
  int arcs_per_probe = 0;  // 0 means ceil(ln n) + 1
  int depth_budget = 0;    // 0 means ceil((ln n)^2)
  int rebuild_interval = 0;
  bool forced_complement = false;
  // When every permutation scores zero: by default a rotation with positive score is taken
  // first; with this flag a zero-score permutation is preferred.
  bool prefer_zero_move = false;
  bool trace = false;
  // Re-derives the bookkeeping after every iteration and checks backtracks and rebuilds.
  bool verify_state = false;
  const std::atomic<bool>* cancel = nullptr;
};

struct SearchStats {
  long iterations = 0;
  long successes = 0;  // iterations that lowered the pseudo-arc count
  long failures = 0;   // iterations with no usable permutation or rotation
  long rotations = 0;
  long backtracks = 0;
  long reseeds = 0;
  long integrity_checks = 0, integrity_failures = 0;
  long backtrack_checks = 0, backtrack_mismatches = 0;
  long rebuild_checks = 0, rebuild_mismatches = 0;
};

struct SearchResult {
  bool found = false;
  std::vector<int> circuit;  // base vertices, verified, starting at vertex 1
  SearchStats stats;
  std::uint64_t seed = 0;
  int restart = 0;
  std::vector<std::string> trace;  // "iter=<k> move=<m> score=<s> pseudo=<p>"
  std::string note;
};

// NotHamiltonian from the contraction propagates to the caller.
SearchResult algorithm_g(const Graph& g, const SearchConfig& cfg);
SearchResult algorithm_d(const Graph& d, const SearchConfig& cfg);
SearchResult algorithm_g_no_r(const Graph& g, const SearchConfig& cfg);
SearchResult algorithm_g_heuristic(const Graph& g, const SearchConfig& cfg);
SearchResult run_search(Algo algo, const Graph& g, const SearchConfig& cfg);

// Runs `restarts` searches with derived seeds on up to `threads` threads. The lowest-numbered
// successful restart wins, so the result does not depend on scheduling.
SearchResult search_with_restarts(Algo algo, const Graph& g, const SearchConfig& cfg, int restarts, int threads = 0);
std::uint64_t restart_seed(std::uint64_t seed, int restart);

// Replays a script of steps on a contracted graph. Lines:
//   start (circuit)                      must come first
//   move (a b c) | move (a c)(b d)       contracted labels
//   ord (a b c)  | ord (a c)(b d)        ordinals of the last rebuilt circuit
//   rotate a x   | rotate-ord i j
//   rebuild
//   expect (circuit)                     canonical comparison
// '#' starts a comment. Throws std::runtime_error naming the line on an inadmissible step.
struct ReplayResult {
  std::string final_circuit;
  int pseudo_count = 0;
  std::vector<std::string> mismatches;  // failed expect lines
};
ReplayResult run_replay(const ContractedGraph& cg, const std::string& script);

struct ReachabilityResult {
  bool found = false;
  std::vector<MoveSet> certificate;
  std::vector<int> circuit;  // the circuit reached, starting at vertex 1
  long states = 0;
};
// Breadth-first search over admissible 3-cycles and POTDTCs from h0 (base vertices). With
// pseudo_only, every moved vertex must be a pseudo-arc vertex, so arcs of g on the circuit
// are never broken. Stops at the first hamilton circuit, or at `target` when given.
ReachabilityResult reachability_oracle(const Graph& g, const std::vector<int>& h0, long budget = 5'000'000,
                                       const std::vector<int>* target = nullptr, bool pseudo_only = true);

using Weights = std::vector<std::vector<double>>;  // 0-based, w[i][j] for vertices i+1, j+1
double tour_weight(const Weights& w, const std::vector<int>& tour);

struct TourResult {
  std::vector<int> tour;  // 1-based vertices starting at 1
  double weight = 0;
  long iterations = 0;
  std::vector<double> accepted;  // tour weight after every accepted step
  std::vector<double> best;      // best-tour queue value after every iteration
};
// Random start, good rotations to a local optimum, then good admissible 3-cycles alone or
// followed by a rotation. Stops after ceil(n ln n) iterations without a new best tour.
TourResult tsp_heuristic(const Weights& w, const SearchConfig& cfg);

}  // namespace hamperm
