#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace hamperm {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct RationalProb {
  Rational raw;    // the formula's own value; small n can push it outside [0, 1]
  Rational value;  // raw clamped to [0, 1]
  double approx() const;
  std::string str() const;  // "num/den" of value
};

// Probability that a random pseudo 3-cycle through a pseudo-arc vertex is admissible.
RationalProb p3_exact(int n);
// Same for a product of two disjoint transpositions.
RationalProb p22_exact(int n);

// At least two admissible permutations through the single pseudo-arc vertex (n >= 7).
RationalProb p_two_admissible(long long n);
// The failure probability and the net success probability used for digraphs (n >= 7).
RationalProb p_prime(long long n);
RationalProb p_net(long long n);

// Probability that r balls thrown uniformly into n boxes leave no box empty.
Rational occupancy_p0_exact(long long r, int n);
double occupancy_p0(long long r, int n);

enum class Tail { Lower, Upper };
// Bound on Pr(B(a, p) <= (1 - alpha) a p) (Lower) or Pr(B(a, p) >= (1 + alpha) a p) (Upper).
double hoeffding_tail(double a, double p, double alpha, Tail tail);
// Natural log of the same bound, usable when the bound underflows.
double hoeffding_log_bound(double a, double p, double alpha);

enum class MoveKind { ThreeCycle, Potdtc };
struct McEstimate {
  long long trials = 0, hits = 0;
  double mean = 0, std_error = 0;
};
// Samples the arc pairs of the closed-form models; trials are split into fixed chunks with
// their own generators, so the estimate does not depend on the thread count.
McEstimate mc_admissible_rate(MoveKind kind, int n, long long trials, std::uint64_t seed, int threads = 1);

enum class BoundAlgo { G, D };
struct BoundsReport {
  int n = 0;
  BoundAlgo algo = BoundAlgo::G;
  std::vector<double> log10_terms;  // log10 of each factor's shortfall from 1
  double log10_one_minus = 0;       // log10(1 - bound)
  std::string one_minus;            // 1 - bound in scientific notation
  double bound = 1;                 // rounds to 1 in double precision for all but tiny n
  double p = 0, p_prime = 0, p_net = 0;  // digraph inputs at this n (n >= 7)
};
BoundsReport success_probability_bounds(int n, BoundAlgo algo);

}  // namespace hamperm
