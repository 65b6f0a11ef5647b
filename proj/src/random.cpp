#include "hamperm/random.hpp"

#include <stdexcept>
#include <unordered_map>

namespace hamperm {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))) {}

std::uint64_t Rng::operator()() { return mix64(key_ ^ mix64(counter_++)); }

Rng Rng::split(std::uint64_t child_stream) const {
  return Rng(seed_, mix64(stream_ * 0x9e3779b97f4a7c15ULL + child_stream + 1));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below(0)");
  std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do x = (*this)();
  while (x >= limit);
  return x % bound;
}

int Rng::uniform_int(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

double Rng::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::vector<int> Rng::sample(int n, int k) {
  if (k > n) throw std::invalid_argument("sample: k > n");
  std::unordered_map<int, int> swapped;
  std::vector<int> out;
  out.reserve(k);
  auto at = [&](int i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(below(n - i));
    int vi = at(i), vj = at(j);
    swapped[j] = vi;
    out.push_back(vj);
  }
  return out;
}

namespace {

// Uniform random order of the ordered pairs (u, v), u != v, drawn lazily.
class PairStream {
 public:
  PairStream(int n, Rng rng) : n_(n), total_(static_cast<std::uint64_t>(n) * (n - 1)), rng_(rng) {}
  bool next(int& u, int& v) {
    if (i_ >= total_) return false;
    std::uint64_t j = i_ + rng_.below(total_ - i_);
    std::uint64_t vi = at(i_), vj = at(j);
    swapped_[j] = vi;
    ++i_;
    u = static_cast<int>(vj / (n_ - 1));
    int w = static_cast<int>(vj % (n_ - 1));
    v = w + (w >= u ? 1 : 0);
    ++u;
    ++v;
    return true;
  }

 private:
  std::uint64_t at(std::uint64_t i) const {
    auto it = swapped_.find(i);
    return it == swapped_.end() ? i : it->second;
  }
  int n_;
  std::uint64_t total_, i_ = 0;
  Rng rng_;
  std::unordered_map<std::uint64_t, std::uint64_t> swapped_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Graph boll_graph(int n, std::uint64_t seed, EdgeOrder* order) {
  require(n >= 3, "boll_graph needs n >= 3");
  Graph g(n);
  if (order) order->clear();
  PairStream ps(n, Rng(seed, 1));
  int low = n;  // vertices with degree < 2
  int u, v;
  while (low > 0 && ps.next(u, v)) {
    if (g.has_arc(u, v)) continue;  // the reversed pair came first
    g.add_edge(u, v);
    if (order) order->emplace_back(u, v);
    if (g.degree(u) == 2) --low;
    if (g.degree(v) == 2) --low;
  }
  return g;
}

Graph frieze_boll_digraph(int n, std::uint64_t seed, EdgeOrder* order) {
  require(n >= 2, "frieze_boll_digraph needs n >= 2");
  Graph d(n, true);
  if (order) order->clear();
  PairStream ps(n, Rng(seed, 2));
  int missing = 2 * n;  // zero in-degrees plus zero out-degrees
  int u, v;
  while (missing > 0 && ps.next(u, v)) {
    d.add_edge(u, v);
    if (order) order->emplace_back(u, v);
    if (d.out_degree(u) == 1) --missing;
    if (d.in_degree(v) == 1) --missing;
  }
  return d;
}

Graph k_in_k_out(int n, int k, std::uint64_t seed) {
  require(k >= 1 && k < n, "k_in_k_out needs 1 <= k < n");
  Graph d(n, true);
  Rng rng(seed, 3);
  for (int v = 1; v <= n; ++v) {
    for (int w : rng.sample(n - 1, k)) d.add_edge(v, w + 1 >= v ? w + 2 : w + 1);
    for (int w : rng.sample(n - 1, k)) d.add_edge(w + 1 >= v ? w + 2 : w + 1, v);
  }
  return d;
}

Graph regular_out_graph(int n, int i, std::uint64_t seed) {
  require(i >= 1 && i < n, "regular_out_graph needs 1 <= i < n");
  Graph g(n);
  Rng rng(seed, 4);
  for (int v = 1; v <= n; ++v)
    for (int w : rng.sample(n - 1, i)) g.add_edge(v, w + 1 >= v ? w + 2 : w + 1);
  return g;
}

Graph erdos_renyi_m(int n, int m, std::uint64_t seed) {
  require(n >= 1 && m >= 0 && static_cast<long long>(m) <= static_cast<long long>(n) * (n - 1) / 2,
          "erdos_renyi_m needs 0 <= m <= n(n-1)/2");
  Graph g(n);
  PairStream ps(n, Rng(seed, 5));
  int u, v;
  while (static_cast<int>(g.edge_count()) < m && ps.next(u, v))
    if (!g.has_arc(u, v)) g.add_edge(u, v);
  return g;
}

Graph generate(const EnsembleSpec& s) {
  switch (s.kind) {
    case EnsembleKind::Boll: return boll_graph(s.n, s.seed);
    case EnsembleKind::FriezeBoll: return frieze_boll_digraph(s.n, s.seed);
    case EnsembleKind::KInKOut: return k_in_k_out(s.n, s.param, s.seed);
    case EnsembleKind::RegularOut: return regular_out_graph(s.n, s.param, s.seed);
    case EnsembleKind::ErdosRenyiM: return erdos_renyi_m(s.n, s.param, s.seed);
  }
  throw std::invalid_argument("unknown ensemble");
}

std::string ensemble_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Boll: return "boll";
    case EnsembleKind::FriezeBoll: return "frieze-boll";
    case EnsembleKind::KInKOut: return "k-in-k-out";
    case EnsembleKind::RegularOut: return "regular-out";
    case EnsembleKind::ErdosRenyiM: return "erdos-renyi-m";
  }
  return "?";
}

EnsembleKind parse_ensemble(const std::string& name) {
  for (auto k : {EnsembleKind::Boll, EnsembleKind::FriezeBoll, EnsembleKind::KInKOut, EnsembleKind::RegularOut,
                 EnsembleKind::ErdosRenyiM})
    if (ensemble_name(k) == name) return k;
  throw std::invalid_argument("unknown ensemble '" + name + "'");
}

}  // namespace hamperm
