#include "hamperm/ap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hamperm/random.hpp"

namespace hamperm {

namespace {

constexpr std::size_t kMaxRejected = 64;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

int natural_log_floor(int n) { return static_cast<int>(std::floor(std::log(static_cast<double>(n)))); }

// Rotated so the smallest vertex comes first.
std::vector<int> canonical(std::vector<int> c) {
  std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  return c;
}

Permutation cycle_perm(int n, const std::vector<int>& c) { return Permutation::from_cycles(n, {c}); }

struct Candidate {
  std::vector<int> cycle;
  double value = 0;
};

// Smallest value first, then the lexicographically smallest vertex sequence.
void sort_candidates(std::vector<Candidate>& cs, double tol) {
  for (auto& c : cs) c.cycle = canonical(c.cycle);
  std::sort(cs.begin(), cs.end(), [tol](const Candidate& a, const Candidate& b) {
    if (std::abs(a.value - b.value) > tol) return a.value < b.value;
    return a.cycle < b.cycle;
  });
  cs.erase(std::unique(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) { return a.cycle == b.cycle; }),
           cs.end());
}

// Applies the best candidate to `cur` and logs it, keeping the rest as rejected alternatives.
void apply_best(int n, Permutation& cur, std::vector<Candidate>& cs, ApHistory* history) {
  Permutation next = compose(cur, cycle_perm(n, cs.front().cycle));
  if (history) {
    if (history->assignments.empty() || !(history->assignments.back() == cur)) history->assignments.push_back(cur);
    history->rejected.resize(history->assignments.size());
    auto& rej = history->rejected.back();
    rej.clear();
    for (std::size_t i = 1; i < cs.size() && rej.size() < kMaxRejected; ++i) rej.push_back(cs[i].cycle);
    history->assignments.push_back(next);
    history->rejected.resize(history->assignments.size());
  }
  cur = next;
}

Permutation random_ncycle(int n, Rng& rng) {
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i + 1;
  rng.shuffle(seq);
  return NCycle::from_sequence(seq).as_permutation();
}

// Shortest cycle in the reduced matrix, assumed free of negative cycles.
double min_cycle_value(const std::vector<std::vector<double>>& w, int n) {
  std::vector<std::vector<double>> dist(n + 1, std::vector<double>(n + 1, kInf));
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k)
      if (i != k) dist[i][k] = w[i][k];
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i) {
      if (dist[i][j] == kInf) continue;
      for (int k = 1; k <= n; ++k)
        if (dist[j][k] != kInf && dist[i][j] + dist[j][k] < dist[i][k]) dist[i][k] = dist[i][j] + dist[j][k];
    }
  double best = kInf;
  for (int i = 1; i <= n; ++i) best = std::min(best, dist[i][i]);
  return best;
}

}  // namespace

CostMatrix::CostMatrix(int n, double fill) : n_(n), c_(static_cast<std::size_t>(n + 1) * (n + 1), fill) {
  if (n < 2) throw std::invalid_argument("a cost matrix needs n >= 2");
  if (!std::isfinite(fill)) throw std::invalid_argument("off-diagonal costs must be finite");
}

void CostMatrix::set(int a, int b, double v) {
  if (a < 1 || a > n_ || b < 1 || b > n_) throw std::out_of_range("cost index out of range");
  if (a == b) return;
  if (!std::isfinite(v)) throw std::invalid_argument("off-diagonal costs must be finite");
  c_[a * (n_ + 1) + b] = v;
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  int n = static_cast<int>(rows.size());
  CostMatrix m(n);
  for (int a = 1; a <= n; ++a) {
    if (static_cast<int>(rows[a - 1].size()) != n)
      throw std::invalid_argument("row " + std::to_string(a) + " has " + std::to_string(rows[a - 1].size()) +
                                  " entries, expected " + std::to_string(n));
    for (int b = 1; b <= n; ++b)
      if (a != b) {
        if (!std::isfinite(rows[a - 1][b - 1]))
          throw std::invalid_argument("entry (" + std::to_string(a) + ", " + std::to_string(b) +
                                      ") must be finite");
        m.set(a, b, rows[a - 1][b - 1]);
      }
  }
  return m;
}

CostMatrix CostMatrix::parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> cells;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') row.push_back("");
    cells.push_back(row);
  }
  int n = static_cast<int>(cells.size());
  if (n < 2) throw std::invalid_argument("cost matrix needs at least 2 rows");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0));
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(cells[a].size()) != n)
      throw std::invalid_argument("row " + std::to_string(a + 1) + " has " + std::to_string(cells[a].size()) +
                                  " cells, expected " + std::to_string(n));
    for (int b = 0; b < n; ++b) {
      const std::string& s = cells[a][b];
      if (a == b) continue;
      std::string low = s;
      std::transform(low.begin(), low.end(), low.begin(), [](unsigned char ch) { return std::tolower(ch); });
      double v = 0;
      if (low == "inf" || low == "+inf" || low == "infinity") {
        v = kInf;
      } else {
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
          throw std::invalid_argument("row " + std::to_string(a + 1) + " column " + std::to_string(b + 1) +
                                      ": cannot parse '" + s + "'");
      }
      rows[a][b] = v;
    }
  }
  return from_rows(rows);
}

CostMatrix CostMatrix::load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

bool CostMatrix::integral() const {
  for (int a = 1; a <= n_; ++a)
    for (int b = 1; b <= n_; ++b)
      if (a != b && std::floor((*this)(a, b)) != (*this)(a, b)) return false;
  return true;
}

std::string CostMatrix::to_csv() const {
  std::string out;
  for (int a = 1; a <= n_; ++a) {
    for (int b = 1; b <= n_; ++b) {
      if (b > 1) out += ',';
      out += fmt((*this)(a, b));
    }
    out += '\n';
  }
  return out;
}

MinIndexMatrix min_matrix(const CostMatrix& m) {
  int n = m.n();
  MinIndexMatrix out(n + 1);
  for (int a = 1; a <= n; ++a) {
    auto& row = out[a];
    for (int b = 1; b <= n; ++b)
      if (b != a) row.push_back(b);
    std::stable_sort(row.begin(), row.end(), [&](int x, int y) { return m(a, x) < m(a, y); });
  }
  return out;
}

bool is_derangement(const Permutation& p) {
  for (int v = 1; v <= p.n(); ++v)
    if (p(v) == v) return false;
  return p.n() >= 1;
}

double assignment_value(const CostMatrix& m, const Permutation& d) {
  if (d.n() != m.n()) throw std::invalid_argument("assignment size does not match the matrix");
  double s = 0;
  for (int v = 1; v <= m.n(); ++v) s += m(v, d(v));
  return s;
}

Assignment make_assignment(const CostMatrix& m, const Permutation& d) { return {d, assignment_value(m, d)}; }

std::vector<std::vector<double>> conjugate(const CostMatrix& m, const Permutation& d) {
  int n = m.n();
  std::vector<std::vector<double>> out(n + 1, std::vector<double>(n + 1, 0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) out[i][j] = m(i, d(j));
  return out;
}

std::vector<std::vector<double>> reduced_conjugate(const CostMatrix& m, const Permutation& d) {
  auto out = conjugate(m, d);
  for (int i = 1; i <= m.n(); ++i) {
    double diag = m(i, d(i));
    for (int j = 1; j <= m.n(); ++j) out[i][j] = j == i ? 0 : out[i][j] - diag;
  }
  return out;
}

std::vector<double> diff_values(const CostMatrix& m, const MinIndexMatrix& min, const Permutation& d) {
  std::vector<double> out(m.n() + 1, 0);
  for (int a = 1; a <= m.n(); ++a) out[a] = m(a, min[a].front()) - m(a, d(a));
  return out;
}

double cycle_value(const CostMatrix& m, const Permutation& d, const std::vector<int>& cycle) {
  double s = 0;
  for (std::size_t t = 0; t < cycle.size(); ++t) {
    int v = cycle[t], next = cycle[(t + 1) % cycle.size()];
    s += m(v, d(next)) - m(v, d(v));
  }
  return s;
}

Phase1Result phase1(const CostMatrix& m, const Permutation& d, const ApConfig& cfg, ApHistory* history) {
  int n = m.n();
  if (d.n() != n || !is_derangement(d)) throw std::invalid_argument("phase 1 needs a derangement of size n");
  const double tol = cfg.tolerance;
  const int width = cfg.probe_width > 0 ? cfg.probe_width : natural_log_floor(n) + 1;
  const int extra = cfg.extra_vertices >= 0 ? cfg.extra_vertices : natural_log_floor(n);
  const auto min = min_matrix(m);
  Permutation cur = d;
  Phase1Result res;

  auto probe = [&](int a, const Permutation& inv, std::vector<Candidate>& out) {
    int taken = 0;
    for (int c : min[a]) {
      if (taken == width) break;
      if (c == cur(a)) continue;
      ++taken;
      int b = inv(c);
      std::vector<int> two{a, b};
      double v = cycle_value(m, cur, two);
      if (v < -tol) out.push_back({two, v});
      for (int x = 1; x <= n; ++x) {
        if (x == a || x == b) continue;
        std::vector<int> three{a, b, x};
        v = cycle_value(m, cur, three);
        if (v < -tol) out.push_back({three, v});
      }
    }
  };

  while (true) {
    auto diff = diff_values(m, min, cur);
    std::vector<int> order;
    for (int a = 1; a <= n; ++a)
      if (diff[a] < -tol) order.push_back(a);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diff[x] < diff[y]; });
    if (order.empty()) break;
    Permutation inv = cur.inverse();
    std::vector<Candidate> cs;
    probe(order[0], inv, cs);
    for (int t = 1; cs.empty() && t <= extra && t < static_cast<int>(order.size()); ++t) probe(order[t], inv, cs);
    if (cs.empty()) break;
    sort_candidates(cs, tol);
    apply_best(n, cur, cs, history);
    ++res.steps;
  }
  res.assignment = make_assignment(m, cur);
  return res;
}

PathMatrix::PathMatrix(int n)
    : n_(n),
      val_(static_cast<std::size_t>(n + 1) * (n + 1), 0),
      path_(static_cast<std::size_t>(n + 1) * (n + 1)),
      italic_(val_.size(), 0),
      under_(val_.size(), 0) {}

void PathMatrix::record(int i, int k, std::vector<int> path, double value) {
  path_[idx(i, k)] = std::move(path);
  val_[idx(i, k)] = value;
  italic_[idx(i, k)] = 0;
}

std::string PathMatrix::dump() const {
  std::ostringstream o;
  for (int i = 1; i <= n_; ++i)
    for (int k = 1; k <= n_; ++k) {
      if (!has(i, k)) continue;
      o << "(" << i << "," << k << ") " << fmt(value(i, k)) << (italic(i, k) ? " italic" : "")
        << (underlined(i, k) ? " underlined" : "") << " path";
      for (int v : path(i, k)) o << ' ' << v;
      o << '\n';
    }
  return o.str();
}

Phase2Result phase2(const CostMatrix& m, const Permutation& d, const ApConfig& cfg, ApHistory* history) {
  int n = m.n();
  if (d.n() != n || !is_derangement(d)) throw std::invalid_argument("phase 2 needs a derangement of size n");
  const double tol = cfg.tolerance;
  const auto min = min_matrix(m);
  Permutation cur = d;
  Phase2Result res;

  while (true) {
    auto w = reduced_conjugate(m, cur);
    Permutation inv = cur.inverse();
    // Row j of MIN(M) read through D^-1 lists the arcs out of j by ascending value.
    std::vector<std::vector<int>> order(n + 1);
    for (int j = 1; j <= n; ++j)
      for (int c : min[j])
        if (inv(c) != j) order[j].push_back(inv(c));

    PathMatrix path(n);
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k)
        if (i != k && w[i][k] < -tol) path.record(i, k, {i, k}, w[i][k]);

    std::vector<Candidate> found;
    std::vector<std::pair<int, int>> next_round;

    // Extends the negative path (i, j) by one arc wherever that keeps it negative and improves on
    // the stored entry. Returns the entries that changed.
    auto extend = [&](int i, int j, std::vector<int>& changed) {
      const std::vector<int> base = path.path(i, j);
      const double dij = path.value(i, j);
      for (int k : order[j]) {
        double v = dij + w[j][k];
        if (!(v < -tol)) break;
        if (k == i) {
          found.push_back({base, cycle_value(m, cur, base)});
          continue;
        }
        if (path.has(i, k) && !(v < path.value(i, k) - tol)) continue;
        auto at = std::find(base.begin(), base.end(), k);
        if (at != base.end()) {
          // The stored prefix up to k is no better than the entry (i, k), so the loop is negative.
          std::vector<int> loop(at, base.end());
          double lv = cycle_value(m, cur, loop);
          if (lv > tol)
            throw std::logic_error("phase 2: non-negative loop while extending (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")\n" + path.dump());
          if (lv < -tol) found.push_back({loop, lv});
          continue;
        }
        std::vector<int> p = base;
        p.push_back(k);
        path.record(i, k, std::move(p), v);
        changed.push_back(k);
      }
      path.set_italic(i, j, true);
      path.set_underlined(i, j, false);
    };

    auto verify = [&]() {
      for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) {
          if (!path.has(i, k)) continue;
          const auto& p = path.path(i, k);
          std::vector<int> s = p;
          std::sort(s.begin(), s.end());
          double sum = 0;
          for (std::size_t t = 0; t + 1 < p.size(); ++t) sum += w[p[t]][p[t + 1]];
          if (p.front() != i || p.back() != k || std::adjacent_find(s.begin(), s.end()) != s.end() ||
              std::abs(sum - path.value(i, k)) > 1e-6 * (1 + std::abs(sum)))
            throw std::logic_error("phase 2: bad PATH entry (" + std::to_string(i) + "," + std::to_string(k) +
                                   ")\n" + path.dump());
        }
    };

    // First sweep: columns in order, so a path grows as far as later columns allow.
    ++res.sweeps;
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= n; ++i) {
        if (!path.has(i, j) || path.italic(i, j)) continue;
        std::vector<int> changed;
        extend(i, j, changed);
        for (int k : changed)
          if (k < j) path.set_underlined(i, k, true);
      }
    if (cfg.check_paths) verify();

    // Later sweeps add one arc to each underlined path.
    while (found.empty()) {
      std::vector<std::pair<int, int>> pending;
      for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i)
          if (path.has(i, j) && path.underlined(i, j)) pending.emplace_back(i, j);
      if (pending.empty()) break;
      ++res.sweeps;
      std::vector<std::pair<int, int>> marks;
      for (auto [i, j] : pending) {
        std::vector<int> changed;
        extend(i, j, changed);
        for (int k : changed) marks.emplace_back(i, k);
      }
      for (auto [i, k] : marks) path.set_underlined(i, k, true);
      if (cfg.check_paths) verify();
    }

    if (found.empty()) break;
    sort_candidates(found, tol);
    apply_best(n, cur, found, history);
    ++res.cycles_cancelled;
  }
  res.assignment = make_assignment(m, cur);
  return res;
}

int theorem31_start(const std::vector<double>& values, double bound) {
  const int n = static_cast<int>(values.size());
  if (n == 0) throw std::invalid_argument("the cycle has no arcs");
  if (bound < 0) throw std::invalid_argument("the bound must be non-negative");
  double total = 0;
  for (double v : values) total += v;
  if (!(total < bound)) throw std::invalid_argument("the cycle total must be below the bound");
  auto works = [&](int i) {
    double s = 0;
    for (int t = 0; t < n; ++t) {
      s += values[(i + t) % n];
      if (!(s < bound)) return false;
    }
    return true;
  };
  // Start just after the last maximum of the prefix sums.
  int best = 0;
  double prefix = 0, top = 0;
  for (int k = 1; k < n; ++k) {
    prefix += values[k - 1];
    if (prefix >= top) {
      top = prefix;
      best = k;
    }
  }
  if (works(best)) return best;
  // Rounding can break the argument for nearly tied sums; fall back to a scan.
  for (int i = 0; i < n; ++i)
    if (works(i)) return i;
  throw std::logic_error("no start index satisfies the prefix condition");
}

Phase3Result phase3(const CostMatrix& m, const Assignment& ap_opt, const ApHistory& history, const ApConfig& cfg) {
  const int n = m.n();
  const double tol = cfg.tolerance;
  const Permutation& base = ap_opt.perm;
  if (base.n() != n || !is_derangement(base)) throw std::invalid_argument("phase 3 needs a derangement of size n");
  const double base_value = assignment_value(m, base);
  const auto w = reduced_conjugate(m, base);
  std::vector<std::vector<double>> wf = w;
  for (int i = 1; i <= n; ++i) wf[i][i] = kInf;
  if (min_cycle_value(wf, n) < -tol) throw std::invalid_argument("phase 3 needs an optimal assignment");

  Phase3Result res;
  if (is_ncycle(base)) {
    res.tour = make_assignment(m, base);
    res.optimal = res.exhausted = true;
    res.bounds.push_back(0);
    return res;
  }

  // An initial tour from the history: the latest n-cycle, or a rejected alternative that gives one.
  std::optional<Permutation> first;
  const auto& as = history.assignments;
  for (int level = static_cast<int>(as.size()) - 1; level >= 0 && !first; --level) {
    if (as[level].n() == n && is_ncycle(as[level])) {
      first = as[level];
      break;
    }
    if (level >= 1 && level - 1 < static_cast<int>(history.rejected.size()))
      for (const auto& c : history.rejected[level - 1]) {
        Permutation p = compose(as[level - 1], cycle_perm(n, c));
        if (is_ncycle(p)) {
          first = p;
          break;
        }
      }
  }
  if (first) {
    res.tour = make_assignment(m, *first);
  } else {
    // Rerun phase 1 from n random circuits and keep the cheapest circuit met along the way.
    Rng rng = Rng(cfg.seed, 9).split(1);
    bool have = false;
    for (int r = 0; r < n; ++r) {
      ApHistory h;
      Permutation start = random_ncycle(n, rng);
      h.assignments.push_back(start);
      phase1(m, start, cfg, &h);
      for (const auto& p : h.assignments)
        if (is_ncycle(p)) {
          double v = assignment_value(m, p);
          if (!have || v < res.tour.value - tol) {
            res.tour = {p, v};
            have = true;
          }
        }
    }
  }

  double bound = res.tour.value - base_value;
  res.bounds.push_back(bound);
  bool budget_hit = false;

  while (true) {
    if (bound <= tol || !(min_cycle_value(wf, n) < bound - tol)) {
      res.optimal = true;
      res.exhausted = !budget_hit;
      break;
    }
    if (res.iterations >= n - 1) break;
    ++res.iterations;

    // Every cycle below the bound, each grown from a start whose partial sums all stay below it.
    std::set<std::vector<int>> seen;
    std::vector<Candidate> cycles;
    long long nodes = 0;
    budget_hit = false;
    std::vector<int> stack;
    std::vector<char> used(n + 1, 0);
    std::function<void(double)> grow = [&](double sum) {
      if (++nodes > cfg.cycle_budget) {
        budget_hit = true;
        return;
      }
      int s = stack.front(), v = stack.back();
      for (int k = 1; k <= n && !budget_hit; ++k) {
        if (k == v || wf[v][k] == kInf) continue;
        double t = sum + wf[v][k];
        if (!(t < bound - tol)) continue;
        if (k == s) {
          if (stack.size() >= 2) {
            auto c = canonical(stack);
            if (seen.insert(c).second) cycles.push_back({c, cycle_value(m, base, c)});
          }
          continue;
        }
        if (used[k]) continue;
        used[k] = 1;
        stack.push_back(k);
        grow(t);
        stack.pop_back();
        used[k] = 0;
      }
    };
    for (int s = 1; s <= n && !budget_hit; ++s) {
      stack.assign(1, s);
      used[s] = 1;
      grow(0);
      used[s] = 0;
    }
    res.cycles_found += static_cast<long long>(cycles.size());
    sort_candidates(cycles, tol);

    // Disjoint subsets whose product with the optimal assignment is a single circuit.
    std::optional<Assignment> improved;
    std::vector<int> chosen;
    std::vector<char> covered(n + 1, 0);
    long long combos = 0;
    std::function<void(std::size_t, double)> combine = [&](std::size_t from, double sum) {
      for (std::size_t t = from; t < cycles.size(); ++t) {
        if (++combos > cfg.cycle_budget) {
          budget_hit = true;
          return;
        }
        const auto& c = cycles[t];
        double ns = sum + c.value;
        double limit = improved ? improved->value - base_value : bound;
        if (!(ns < limit - tol)) break;  // sorted by value, so no later cycle fits either
        bool clash = false;
        for (int v : c.cycle) clash = clash || covered[v];
        if (clash) continue;
        for (int v : c.cycle) covered[v] = 1;
        chosen.push_back(static_cast<int>(t));
        std::vector<std::vector<int>> parts;
        for (int idx : chosen) parts.push_back(cycles[idx].cycle);
        Permutation p = compose(base, Permutation::from_cycles(n, parts));
        if (is_ncycle(p)) {
          Assignment a = make_assignment(m, p);
          if (a.value < res.tour.value - tol && (!improved || a.value < improved->value - tol)) improved = a;
        }
        combine(t + 1, ns);
        chosen.pop_back();
        for (int v : c.cycle) covered[v] = 0;
        if (budget_hit) return;
      }
    };
    combine(0, 0);

    if (!improved) {
      res.exhausted = !budget_hit;
      break;
    }
    res.tour = *improved;
    bound = res.tour.value - base_value;
    res.bounds.push_back(bound);
  }
  return res;
}

ApResult solve_assignment(const CostMatrix& m, const ApConfig& cfg) {
  ApResult r;
  Rng rng(cfg.seed, 9);
  Permutation start = random_ncycle(m.n(), rng);
  r.start = make_assignment(m, start);
  r.history.assignments.push_back(start);
  auto p1 = phase1(m, start, cfg, &r.history);
  auto p2 = phase2(m, p1.assignment.perm, cfg, &r.history);
  r.history.rejected.resize(r.history.assignments.size());
  r.assignment = p2.assignment;
  r.phase1_steps = p1.steps;
  r.sweeps = p2.sweeps;
  r.cycles_cancelled = p2.cycles_cancelled;
  return r;
}

TspFwResult tsp_fw(const CostMatrix& m, const ApConfig& cfg) {
  TspFwResult r;
  r.ap = solve_assignment(m, cfg);
  r.tsp = phase3(m, r.ap.assignment, r.ap.history, cfg);
  return r;
}

}  // namespace hamperm
