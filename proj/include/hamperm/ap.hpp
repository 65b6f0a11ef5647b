#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hamperm/perm.hpp"

namespace hamperm {

constexpr double kInf = std::numeric_limits<double>::infinity();

// n x n costs, 1-based. The diagonal is forbidden and always reads as +inf.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int n, double fill = 0);
  // Rows of length n; diagonal entries are ignored. Off-diagonal entries must be finite.
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);
  // Comma separated rows; blank lines and lines starting with '#' are skipped. Diagonal cells may
  // hold anything parseable, including "inf" or "-".
  static CostMatrix parse_csv(const std::string& text);
  static CostMatrix load_csv(const std::string& path);

  int n() const { return n_; }
  double operator()(int a, int b) const { return a == b ? kInf : c_[a * (n_ + 1) + b]; }
  void set(int a, int b, double v);
  bool integral() const;
  std::string to_csv() const;

 private:
  int n_ = 0;
  std::vector<double> c_;
};

// Row a lists the off-diagonal columns by ascending cost, ties by smaller column.
using MinIndexMatrix = std::vector<std::vector<int>>;
MinIndexMatrix min_matrix(const CostMatrix& m);

bool is_derangement(const Permutation& p);
double assignment_value(const CostMatrix& m, const Permutation& d);

struct Assignment {
  Permutation perm;
  double value = 0;
};
Assignment make_assignment(const CostMatrix& m, const Permutation& d);

// Entry (i, j) = d(i, D(j)); 1-based with an unused row and column 0.
std::vector<std::vector<double>> conjugate(const CostMatrix& m, const Permutation& d);
// Same with row i shifted by -d(i, D(i)), so the diagonal is zero. Forbidden entries stay +inf.
std::vector<std::vector<double>> reduced_conjugate(const CostMatrix& m, const Permutation& d);

// DIFF(a) = d(a, MIN(a, 1)) - d(a, D(a)); index 0 unused.
std::vector<double> diff_values(const CostMatrix& m, const MinIndexMatrix& min, const Permutation& d);

// Sum over the cycle of the reduced entries (v, next v); +inf if any entry is forbidden.
double cycle_value(const CostMatrix& m, const Permutation& d, const std::vector<int>& cycle);

struct ApConfig {
  std::uint64_t seed = 1;
  int probe_width = 0;     // columns tried per vertex; 0 means floor(ln n) + 1
  int extra_vertices = -1;  // further DIFF-ranked vertices tried; -1 means floor(ln n)
  long long cycle_budget = 2'000'000;  // search nodes per bound in phase 3
  double tolerance = 1e-9;
  bool check_paths = false;  // phase 2 re-derives every PATH entry after each sweep
};

// D, then every later assignment, with the negative cycles found alongside the one applied.
struct ApHistory {
  std::vector<Permutation> assignments;
  std::vector<std::vector<std::vector<int>>> rejected;  // rejected[i] were found from assignments[i]
};

struct Phase1Result {
  Assignment assignment;
  int steps = 0;
};
Phase1Result phase1(const CostMatrix& m, const Permutation& d, const ApConfig& cfg = {},
                    ApHistory* history = nullptr);

// Negative-path store for one pass of phase 2. Entry (i, k) holds a simple path i .. k of
// negative reduced value.
class PathMatrix {
 public:
  explicit PathMatrix(int n = 0);
  int n() const { return n_; }
  bool has(int i, int k) const { return !path(i, k).empty(); }
  double value(int i, int k) const { return val_[idx(i, k)]; }
  const std::vector<int>& path(int i, int k) const { return path_[idx(i, k)]; }
  bool italic(int i, int k) const { return italic_[idx(i, k)]; }
  bool underlined(int i, int k) const { return under_[idx(i, k)]; }

  void record(int i, int k, std::vector<int> path, double value);
  void set_italic(int i, int k, bool on) { italic_[idx(i, k)] = on; }
  void set_underlined(int i, int k, bool on) { under_[idx(i, k)] = on; }
  std::string dump() const;

 private:
  int idx(int i, int k) const { return i * (n_ + 1) + k; }
  int n_ = 0;
  std::vector<double> val_;
  std::vector<std::vector<int>> path_;
  std::vector<char> italic_, under_;
};

struct Phase2Result {
  Assignment assignment;
  int sweeps = 0;
  int cycles_cancelled = 0;
};
Phase2Result phase2(const CostMatrix& m, const Permutation& d, const ApConfig& cfg = {},
                    ApHistory* history = nullptr);

// Start index i such that every partial sum values[i] + ... + values[i + m] (indices mod size)
// is below `bound`. Requires a total below `bound` and bound >= 0.
int theorem31_start(const std::vector<double>& values, double bound = 0);

struct Phase3Result {
  Assignment tour;
  bool optimal = false;       // no cycle below the final bound exists in the reduced matrix
  bool exhausted = false;     // every combination under the final bound was tried
  std::vector<double> bounds;  // m0, m1, ...
  int iterations = 0;
  long long cycles_found = 0;
};
Phase3Result phase3(const CostMatrix& m, const Assignment& ap_opt, const ApHistory& history,
                    const ApConfig& cfg = {});

struct ApResult {
  Assignment start, assignment;
  int phase1_steps = 0, sweeps = 0, cycles_cancelled = 0;
  ApHistory history;
};
// Random n-cycle start, then phases 1 and 2.
ApResult solve_assignment(const CostMatrix& m, const ApConfig& cfg = {});

struct TspFwResult {
  ApResult ap;
  Phase3Result tsp;
};
TspFwResult tsp_fw(const CostMatrix& m, const ApConfig& cfg = {});

}  // namespace hamperm
