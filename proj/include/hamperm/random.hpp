#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hamperm/graph.hpp"

namespace hamperm {

// Counter-based generator: output k is a keyed SplitMix64 finaliser of (seed, stream, k).
// Child generators derived with split() are independent of the parent's counter.
class Rng {
 public:
  using result_type = std::uint64_t;
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  Rng split(std::uint64_t child_stream) const;
  // Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  int uniform_int(int lo, int hi);  // inclusive
  double uniform01();
  template <class T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
  }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }
  // k distinct values from [0, n) in sampling order.
  std::vector<int> sample(int n, int k);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_, stream_, key_, counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

enum class EnsembleKind { Boll, FriezeBoll, KInKOut, RegularOut, ErdosRenyiM };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Boll;
  int n = 0;
  int param = 0;  // k, i or m depending on kind
  std::uint64_t seed = 0;
};

using EdgeOrder = std::vector<std::pair<int, int>>;
// Edges of K_n in seeded random order until the minimum degree reaches 2. `order`, when
// given, receives the edges in the order they were added.
Graph boll_graph(int n, std::uint64_t seed, EdgeOrder* order = nullptr);
// Arcs of the complete digraph in random order until every in- and out-degree is >= 1.
Graph frieze_boll_digraph(int n, std::uint64_t seed, EdgeOrder* order = nullptr);
// k distinct random out-heads and k distinct random in-tails per vertex, arcs united.
Graph k_in_k_out(int n, int k, std::uint64_t seed);
// i distinct random out-choices per vertex, symmetrised into edges.
Graph regular_out_graph(int n, int i, std::uint64_t seed);
// The first m edges of a seeded random ordering of K_n.
Graph erdos_renyi_m(int n, int m, std::uint64_t seed);

Graph generate(const EnsembleSpec& spec);
std::string ensemble_name(EnsembleKind kind);
EnsembleKind parse_ensemble(const std::string& name);

}  // namespace hamperm
