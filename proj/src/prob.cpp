#include "hamperm/prob.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hamperm/random.hpp"

namespace hamperm {

namespace {

RationalProb make(const Rational& raw) {
  RationalProb p;
  p.raw = raw;
  p.value = raw < 0 ? Rational(0) : raw > 1 ? Rational(1) : raw;
  return p;
}

BigInt horner(const std::vector<long long>& coeffs, long long n) {
  BigInt acc = 0;
  for (long long c : coeffs) acc = acc * n + c;
  return acc;
}

// Coefficients from the highest power down.
const std::vector<long long> kDenominator{360, -5040, 29160, -89280, 152640, -138240, 51840};
const std::vector<long long> kTwoAdmissible{286, -4326, 23489, -80546, 190342, -112242, 27624};
const std::vector<long long> kFailure{74, -714, 5674, -8734, -175078, -25998, 79464};

RationalProb ratio(const std::vector<long long>& num, long long n) {
  if (n < 7) throw std::invalid_argument("the two-permutation formulas need n >= 7");
  return make(Rational(horner(num, n), horner(kDenominator, n)));
}

// a and b fall on different sides of the chord p -> q; all four distinct.
bool crosses(int n, int p, int q, int a, int b) {
  if (p == a || p == b || q == a || q == b || a == b) return false;
  auto inside = [&](int x) {
    int d = ((x - p) % n + n) % n, len = ((q - p) % n + n) % n;
    return d > 0 && d < len;
  };
  return inside(a) != inside(b);
}

std::string sci(double log10v) {
  double e = std::floor(log10v);
  double mant = std::pow(10.0, log10v - e);
  if (mant >= 9.9999995) {
    mant = 1;
    e += 1;
  }
  std::ostringstream o;
  o << std::fixed << std::setprecision(6) << mant << "e" << std::showpos << static_cast<long long>(e);
  return o.str();
}

double log10_sum(const std::vector<double>& logs) {
  double m = *std::max_element(logs.begin(), logs.end());
  double s = 0;
  for (double l : logs) s += std::pow(10.0, l - m);
  return m + std::log10(s);
}

// log10(1 - e^{-x}) where log10 x is given.
double log10_one_minus_exp(double log10x) {
  if (log10x < -8) return log10x;  // 1 - e^{-x} = x (1 - x/2 + ...)
  return std::log10(-std::expm1(-std::pow(10.0, log10x)));
}

}  // namespace

double RationalProb::approx() const { return static_cast<double>(value); }

std::string RationalProb::str() const {
  std::ostringstream o;
  o << boost::multiprecision::numerator(value) << "/" << boost::multiprecision::denominator(value);
  return o.str();
}

RationalProb p3_exact(int n) {
  if (n < 3) throw std::invalid_argument("p3 needs n >= 3");
  return make(Rational(n - 3, 2 * (n - 2)));
}

RationalProb p22_exact(int n) {
  if (n < 3) throw std::invalid_argument("p22 needs n >= 3");
  return make(Rational(n - 3, 3 * (n - 2)));
}

RationalProb p_two_admissible(long long n) { return ratio(kTwoAdmissible, n); }
RationalProb p_prime(long long n) { return ratio(kFailure, n); }
// Defined as the exact difference; the expanded polynomial is not used.
RationalProb p_net(long long n) { return make(p_two_admissible(n).raw - p_prime(n).raw); }

Rational occupancy_p0_exact(long long r, int n) {
  if (r < 0 || n < 1) throw std::invalid_argument("occupancy needs r >= 0 and n >= 1");
  // Inclusion-exclusion over the set of empty boxes, over the common denominator n^r.
  auto e = static_cast<unsigned>(r);
  BigInt sum = 0, binom = 1;
  for (int v = 0; v <= n; ++v) {
    BigInt term = binom * boost::multiprecision::pow(BigInt(n - v), e);
    sum += v % 2 ? -term : term;
    binom = binom * (n - v) / (v + 1);
  }
  return Rational(sum, boost::multiprecision::pow(BigInt(n), e));
}

double occupancy_p0(long long r, int n) { return static_cast<double>(occupancy_p0_exact(r, n)); }

double hoeffding_log_bound(double a, double p, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("p must lie in (0, 1)");
  if (!(a >= 1)) throw std::invalid_argument("a must be at least 1");
  return -alpha * alpha * a * p / 2;
}

double hoeffding_tail(double a, double p, double alpha, Tail) { return std::exp(hoeffding_log_bound(a, p, alpha)); }

McEstimate mc_admissible_rate(MoveKind kind, int n, long long trials, std::uint64_t seed, int threads) {
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  constexpr long long kChunk = 1 << 16;
  long long chunks = (trials + kChunk - 1) / kChunk;
  std::vector<long long> hits(chunks, 0);
  auto run_chunk = [&](long long c) {
    Rng rng = Rng(seed, 8).split(static_cast<std::uint64_t>(c));
    long long count = std::min(kChunk, trials - c * kChunk), h = 0;
    for (long long t = 0; t < count; ++t) {
      int j = rng.uniform_int(3, n);
      if (kind == MoveKind::ThreeCycle) {
        // k uniform over the n - 2 values other than j - 1 and j.
        int k = rng.uniform_int(1, n - 2);
        if (k >= j - 1) k += 2;
        h += crosses(n, 1, j, j - 1, k);
      } else {
        // (r, j) uniform over pairs 2 <= r < j <= n.
        int r;
        do {
          r = rng.uniform_int(2, n - 1);
          j = rng.uniform_int(3, n);
        } while (r >= j);
        int s = rng.uniform_int(1, n - 2);
        if (s >= r) s += 2;
        h += crosses(n, 1, j, r, s);
      }
    }
    hits[c] = h;
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  if (threads == 1) {
    for (long long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (long long c = t; c < chunks; c += threads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }
  McEstimate e;
  e.trials = trials;
  for (long long h : hits) e.hits += h;
  e.mean = static_cast<double>(e.hits) / trials;
  e.std_error = std::sqrt(e.mean * (1 - e.mean) / trials);
  return e;
}

BoundsReport success_probability_bounds(int n, BoundAlgo algo) {
  if (n < 2) throw std::invalid_argument("bounds need n >= 2");
  BoundsReport r;
  r.n = n;
  r.algo = algo;
  double ln = std::log10(static_cast<double>(n));
  double nn = static_cast<double>(n) * n;
  if (algo == BoundAlgo::G) {
    double lx = -(6 * nn - 1) * ln;  // x = 1 / n^(6n^2 - 1)
    r.log10_terms = {std::log10(2.0) + log10_one_minus_exp(lx) - 6 * nn * ln, log10_one_minus_exp(lx), -6 * nn * ln};
  } else {
    double ly = -(2.562 * nn - 1) * ln;
    r.log10_terms = {-0.32 * nn * ln, std::log10(2.0) + log10_one_minus_exp(ly) - 2.562 * nn * ln, -1.281 * nn * ln};
  }
  // 1 - prod(1 - e_i) equals sum(e_i) up to a relative error below max(e_i).
  r.log10_one_minus = log10_sum(r.log10_terms);
  r.one_minus = sci(r.log10_one_minus);
  double prod = 1;
  for (double l : r.log10_terms) prod *= 1 - std::pow(10.0, l);
  r.bound = prod;
  if (n >= 7) {
    r.p = p_two_admissible(n).approx();
    r.p_prime = p_prime(n).approx();
    r.p_net = p_net(n).approx();
  }
  return r;
}

}  // namespace hamperm
