#include "hamperm/ham_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hamperm {

HamState::HamState(const ContractedGraph& cg, const std::vector<OrientedVertex>& circuit, int rebuild_interval)
    : cg_(&cg), n_(cg.m()) {
  if (n_ < 3) throw std::invalid_argument("a pseudo-hamilton circuit needs at least 3 vertices");
  if (static_cast<int>(circuit.size()) != n_) throw std::invalid_argument("circuit length differs from vertex count");
  rebuild_interval_ = rebuild_interval == 0 ? static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_)))) : rebuild_interval;
  base_.resize(n_);
  ord_.assign(n_ + 1, -1);
  base_sign_.assign(n_ + 1, 1);
  for (int i = 0; i < n_; ++i) {
    int v = circuit[i].id;
    if (v < 1 || v > n_ || ord_[v] >= 0) throw std::invalid_argument("circuit is not a permutation of the contracted vertices");
    base_[i] = v;
    ord_[v] = i;
    base_sign_[v] = circuit[i].sign;
    if (circuit[i].sign < 0 && (!cg.is_r(v) || cg.directed()))
      throw std::invalid_argument("only r-vertices of graphs can be reversed");
  }
  segs_ = {Seg{0, n_ - 1, false}};
  seg_start_ = {0};
  pseudo_.assign(n_ + 1, 0);
  key_deg_.assign(n_ + 1, 0);
  for (int v = 1; v <= n_; ++v) refresh(v);
}

HamState HamState::random(const ContractedGraph& cg, Rng& rng, bool forced_complement, bool* fell_back,
                          int rebuild_interval) {
  int m = cg.m();
  std::vector<int> seq(m);
  for (int i = 0; i < m; ++i) seq[i] = i + 1;
  rng.shuffle(seq);
  std::vector<int> sgn(m + 1, 1);
  if (!cg.directed())
    for (int v = 1; v <= m; ++v)
      if (cg.is_r(v) && rng.below(2)) sgn[v] = -1;
  bool residual = false;
  if (forced_complement) {
    auto real = [&](int i) {
      int u = seq[i], w = seq[(i + 1) % m];
      return cg.arc(u, sgn[u], w, sgn[w]) ? 1 : 0;
    };
    auto local = [&](int i, int j) {
      std::vector<int> idx{(i + m - 1) % m, i, (j + m - 1) % m, j};
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
      int s = 0;
      for (int k : idx) s += real(k);
      return s;
    };
    for (long attempt = 0; attempt < 200L * m; ++attempt) {
      std::vector<int> bad;
      for (int i = 0; i < m; ++i)
        if (real(i)) bad.push_back(i);
      if (bad.empty()) break;
      int i = (rng.pick(bad) + 1) % m;
      int j = static_cast<int>(rng.below(m));
      if (i == j) continue;
      int before = local(i, j);
      std::swap(seq[i], seq[j]);
      if (local(i, j) > before) std::swap(seq[i], seq[j]);
    }
    for (int i = 0; i < m; ++i)
      if (real(i)) residual = true;
  }
  if (fell_back) *fell_back = residual;
  std::vector<OrientedVertex> circuit;
  for (int v : seq) circuit.push_back({v, sgn[v]});
  return HamState(cg, circuit, rebuild_interval);
}

int HamState::locate(int o) const {
  for (std::size_t i = 0; i < segs_.size(); ++i)
    if (segs_[i].lo <= o && o <= segs_[i].hi) return static_cast<int>(i);
  throw std::logic_error("ordinal not covered by any segment");
}

int HamState::pos(int v) const {
  int o = ord_[v];
  int i = locate(o);
  const Seg& s = segs_[i];
  return seg_start_[i] + (s.rev ? s.hi - o : o - s.lo);
}

int HamState::at(int p) const {
  p = ((p % n_) + n_) % n_;
  for (std::size_t i = 0; i < segs_.size(); ++i) {
    const Seg& s = segs_[i];
    if (p < seg_start_[i] || p >= seg_start_[i] + s.len()) continue;
    int k = p - seg_start_[i];
    return base_[s.rev ? s.hi - k : s.lo + k];
  }
  throw std::logic_error("position not covered by any segment");
}

int HamState::succ(int v) const {
  int o = ord_[v];
  int i = locate(o);
  const Seg& s = segs_[i];
  if (!s.rev && o < s.hi) return base_[o + 1];
  if (s.rev && o > s.lo) return base_[o - 1];
  return seg_first(segs_[(i + 1) % segs_.size()]);
}

int HamState::pred(int v) const {
  int o = ord_[v];
  int i = locate(o);
  const Seg& s = segs_[i];
  if (!s.rev && o > s.lo) return base_[o - 1];
  if (s.rev && o < s.hi) return base_[o + 1];
  return seg_last(segs_[(i + segs_.size() - 1) % segs_.size()]);
}

int HamState::sign(int v) const { return segs_[locate(ord_[v])].rev ? -base_sign_[v] : base_sign_[v]; }

bool HamState::clockwise(int a, int b, int c) const {
  if (a == b || b == c || a == c) return false;
  int pa = pos(a);
  int db = (pos(b) - pa + n_) % n_, dc = (pos(c) - pa + n_) % n_;
  return db < dc;
}

std::vector<int> HamState::pseudo_vertices() const {
  std::vector<int> out;
  for (const auto& [d, v] : pseudo_order_) out.push_back(v);
  return out;
}

int HamState::top_pseudo(Rng& rng) const {
  if (pseudo_order_.empty()) return 0;
  int top = pseudo_order_.begin()->first;
  std::vector<int> ties;
  for (const auto& [d, v] : pseudo_order_) {
    if (d != top) break;
    ties.push_back(v);
  }
  return rng.pick(ties);
}

bool HamState::admissible(const MoveSet& m) const {
  for (int i = 0; i < m.size(); ++i) {
    if (m.v[i] < 1 || m.v[i] > n_) return false;
    for (int j = 0; j < i; ++j)
      if (m.v[i] == m.v[j]) return false;
  }
  if (m.kind == MoveSet::Kind::ThreeCycle) return clockwise(m.v[0], m.v[1], m.v[2]);
  return positions_interleave(n_, pos(m.v[0]), pos(m.v[1]), pos(m.v[2]), pos(m.v[3]));
}

std::vector<std::pair<int, int>> HamState::witness_arcs(const MoveSet& m) const {
  return m.witness_arcs([this](int v) { return succ(v); });
}

int HamState::score(const MoveSet& m) const {
  int s = 0;
  for (auto [t, h] : witness_arcs(m)) s += arc_real(t, h) ? 1 : 0;
  for (int i = 0; i < m.size(); ++i) s -= arc_real(m.v[i]) ? 1 : 0;
  return s;
}

void HamState::cut_after(int v) {
  int o = ord_[v];
  int i = locate(o);
  Seg s = segs_[i];
  if (seg_last(s) == v) return;
  Seg first, second;
  if (!s.rev) {
    first = {s.lo, o, false};
    second = {o + 1, s.hi, false};
  } else {
    first = {o, s.hi, true};
    second = {s.lo, o - 1, true};
  }
  segs_[i] = first;
  segs_.insert(segs_.begin() + i + 1, second);
}

std::vector<HamState::Seg> HamState::rotated_after(int v) const {
  int i = locate(ord_[v]);
  std::vector<Seg> out;
  for (std::size_t k = 1; k <= segs_.size(); ++k) out.push_back(segs_[(i + k) % segs_.size()]);
  return out;
}

std::size_t HamState::block_end(const std::vector<Seg>& list, std::size_t from, int last_vertex,
                                const std::vector<int>& base) {
  for (std::size_t k = from; k < list.size(); ++k)
    if (base[list[k].rev ? list[k].lo : list[k].hi] == last_vertex) return k;
  throw std::logic_error("block end not found");
}

void HamState::set_segments(std::vector<Seg> segs) {
  std::vector<Seg> merged;
  for (const Seg& s : segs) {
    if (!merged.empty()) {
      Seg& t = merged.back();
      if (!t.rev && !s.rev && s.lo == t.hi + 1 && s.len() > 0) {
        t.hi = s.hi;
        continue;
      }
      if (t.rev && s.rev && s.hi == t.lo - 1) {
        t.lo = s.lo;
        continue;
      }
    }
    merged.push_back(s);
  }
  segs_ = std::move(merged);
  seg_start_.assign(segs_.size(), 0);
  for (std::size_t i = 1; i < segs_.size(); ++i) seg_start_[i] = seg_start_[i - 1] + segs_[i - 1].len();
}

void HamState::refresh(int v) {
  int w = succ(v);
  bool p = !cg_->arc(v, sign(v), w, sign(w));
  int d = usable_degree(v);
  if (pseudo_[v]) {
    pseudo_order_.erase({-key_deg_[v], v});
    --pseudo_count_;
  }
  pseudo_[v] = p;
  key_deg_[v] = d;
  if (p) {
    pseudo_order_.insert({-d, v});
    ++pseudo_count_;
  }
}

void HamState::push_undo(Undo u) {
  backtrack_.push_back(std::move(u));
  if (backtrack_limit_ && backtrack_.size() > backtrack_limit_)
    backtrack_.erase(backtrack_.begin(), backtrack_.end() - static_cast<std::ptrdiff_t>(backtrack_limit_));
}

bool HamState::apply_move(const MoveSet& m, bool record) {
  if (!admissible(m)) return false;
  if (m.kind == MoveSet::Kind::ThreeCycle) {
    int a = m.v[0], b = m.v[1], c = m.v[2];
    cut_after(a);
    cut_after(b);
    cut_after(c);
    auto list = rotated_after(a);
    std::size_t ib = block_end(list, 0, b, base_);
    std::size_t ic = block_end(list, ib + 1, c, base_);
    std::vector<Seg> out(list.begin() + ib + 1, list.begin() + ic + 1);
    out.insert(out.end(), list.begin(), list.begin() + ib + 1);
    out.insert(out.end(), list.begin() + ic + 1, list.end());
    set_segments(std::move(out));
  } else {
    std::array<int, 4> p{m.v[0], m.v[1], m.v[2], m.v[3]};
    int p0 = pos(p[0]);
    std::sort(p.begin() + 1, p.end(), [&](int x, int y) { return (pos(x) - p0 + n_) % n_ < (pos(y) - p0 + n_) % n_; });
    for (int v : p) cut_after(v);
    auto list = rotated_after(p[0]);
    std::size_t e1 = block_end(list, 0, p[1], base_);
    std::size_t e2 = block_end(list, e1 + 1, p[2], base_);
    std::size_t e3 = block_end(list, e2 + 1, p[3], base_);
    std::vector<Seg> out(list.begin() + e2 + 1, list.begin() + e3 + 1);
    out.insert(out.end(), list.begin() + e1 + 1, list.begin() + e2 + 1);
    out.insert(out.end(), list.begin(), list.begin() + e1 + 1);
    out.insert(out.end(), list.begin() + e3 + 1, list.end());
    set_segments(std::move(out));
  }
  for (int i = 0; i < m.size(); ++i) refresh(m.v[i]);
  if (record) push_undo(Undo{Undo::Kind::Move, m, 0, 0, 0, {}});
  return true;
}

int HamState::rotation_score(int a, int x) const {
  int s = succ(a), t = succ(x);
  if (x == a || x == s) throw std::invalid_argument("rotation: x must differ from a and succ(a)");
  int gain = (cg_->arc(a, sign(a), x, -sign(x)) ? 1 : 0) + (cg_->arc(s, -sign(s), t, sign(t)) ? 1 : 0);
  int loss = (arc_real(a) ? 1 : 0) + (arc_real(x) ? 1 : 0);
  return gain - loss;
}

bool HamState::rotation_score_positive(int a, int b) const {
  int s = succ(a), t = succ(b);
  return is_pseudo(s) || cg_->arc(s, -sign(s), t, sign(t));
}

bool HamState::apply_rotation(int a, int x, bool record) {
  if (cg_->directed()) throw std::logic_error("rotations reverse arcs and need an undirected graph");
  if (x == a || x < 1 || x > n_) return false;
  int old_succ = succ(a);
  if (x == old_succ) return false;
  const auto& nb = cg_->neighbors(a);
  if (record && !std::binary_search(nb.begin(), nb.end(), x)) return false;
  cut_after(a);
  cut_after(x);
  auto list = rotated_after(a);
  std::size_t ix = block_end(list, 0, x, base_);
  std::vector<Seg> out;
  for (std::size_t k = ix + 1; k-- > 0;) {
    Seg s = list[k];
    s.rev = !s.rev;
    out.push_back(s);
  }
  out.insert(out.end(), list.begin() + ix + 1, list.end());
  set_segments(std::move(out));
  refresh(a);
  for (int v = succ(a);; v = succ(v)) {
    refresh(v);
    if (v == old_succ) break;
  }
  if (record) push_undo(Undo{Undo::Kind::Rotation, MoveSet{}, a, x, old_succ, {}});
  return true;
}

void HamState::flip(int v) {
  if (!cg_->is_r(v) || cg_->directed()) throw std::invalid_argument("only r-vertices of graphs can be reoriented");
  base_sign_[v] = -base_sign_[v];
  refresh(v);
  refresh(pred(v));
}

int HamState::orient(const std::vector<int>& vs) {
  if (cg_->directed()) return 0;
  int total = 0;
  std::vector<int> seen;
  for (int v : vs) {
    if (!cg_->is_r(v) || std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    seen.push_back(v);
    int p = pred(v), s = succ(v), sv = sign(v);
    int before = (arc_real(p) ? 1 : 0) + (arc_real(v) ? 1 : 0);
    int after = (cg_->arc(p, sign(p), v, -sv) ? 1 : 0) + (cg_->arc(v, -sv, s, sign(s)) ? 1 : 0);
    if (after > before) {
      flip(v);
      total += after - before;
      if (!backtrack_.empty()) backtrack_.back().flips.push_back(v);
    }
  }
  return total;
}

bool HamState::undo() {
  if (backtrack_.empty()) return false;
  Undo u = backtrack_.back();
  backtrack_.pop_back();
  for (auto it = u.flips.rbegin(); it != u.flips.rend(); ++it) flip(*it);
  if (u.kind == Undo::Kind::Move) {
    if (!apply_move(u.forward.inverse(), false)) throw std::logic_error("inverse move not admissible");
  } else {
    apply_rotation(u.a, u.old_succ, false);
  }
  return true;
}

void HamState::rebuild() {
  std::vector<OrientedVertex> c = circuit();
  for (int i = 0; i < n_; ++i) {
    base_[i] = c[i].id;
    ord_[c[i].id] = i;
    base_sign_[c[i].id] = c[i].sign;
  }
  segs_ = {Seg{0, n_ - 1, false}};
  seg_start_ = {0};
}

void HamState::tick() {
  ++iter_count_;
  if (rebuild_interval_ > 0 && iter_count_ % rebuild_interval_ == 0) rebuild();
}

std::vector<OrientedVertex> HamState::circuit() const {
  std::vector<OrientedVertex> out;
  out.reserve(n_);
  int start = 1;
  // Walk the segments directly rather than calling succ n times.
  int i0 = locate(ord_[start]);
  for (std::size_t k = 0; k < segs_.size(); ++k) {
    const Seg& s = segs_[(i0 + k) % segs_.size()];
    if (!s.rev)
      for (int o = s.lo; o <= s.hi; ++o) out.push_back({base_[o], base_sign_[base_[o]]});
    else
      for (int o = s.hi; o >= s.lo; --o) out.push_back({base_[o], -base_sign_[base_[o]]});
  }
  auto it = std::find_if(out.begin(), out.end(), [&](const OrientedVertex& ov) { return ov.id == start; });
  std::rotate(out.begin(), it, out.end());
  return out;
}

NCycle HamState::ncycle() const {
  std::vector<int> seq;
  for (const auto& ov : circuit()) seq.push_back(ov.id);
  return NCycle::from_sequence(seq);
}

std::string HamState::str() const { return format_contracted_circuit(*cg_, circuit()); }

std::string HamState::abbreviation() const {
  std::vector<int> seq;
  int v = base_[0];
  for (int k = 0; k < n_; ++k, v = succ(v)) seq.push_back(ord_[v] + 1);
  std::ostringstream os;
  os << '(';
  std::size_t i = 0;
  bool first = true;
  while (i < seq.size()) {
    std::size_t j = i;
    int dir = 0;
    if (i + 1 < seq.size() && std::abs(seq[i + 1] - seq[i]) == 1) {
      dir = seq[i + 1] - seq[i];
      j = i + 1;
      while (j + 1 < seq.size() && seq[j + 1] - seq[j] == dir) ++j;
    }
    std::size_t len = j - i + 1;
    os << (first ? "" : " ");
    first = false;
    if (len == 1)
      os << seq[i];
    else if (len == 2)
      os << seq[i] << ' ' << seq[j];
    else if (j + 1 == seq.size() && dir == 1 && seq[j] == n_)
      os << seq[i] << " ...";
    else
      os << seq[i] << " ... " << seq[j];
    i = j + 1;
  }
  os << ')';
  return os.str();
}

bool HamState::check_integrity(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::vector<char> seen(n_ + 1, 0);
  int v = 1;
  for (int k = 0; k < n_; ++k) {
    if (seen[v]) return fail("circuit revisits vertex " + std::to_string(v));
    seen[v] = 1;
    int w = succ(v);
    if (pred(w) != v) return fail("pred/succ mismatch at " + std::to_string(v));
    v = w;
  }
  if (v != 1) return fail("circuit does not close after n steps");
  int count = 0;
  std::set<std::pair<int, int>> order;
  for (int u = 1; u <= n_; ++u) {
    int w = succ(u);
    bool p = !cg_->arc(u, sign(u), w, sign(w));
    if (p != static_cast<bool>(pseudo_[u])) return fail("PSEUDO status of " + std::to_string(u) + " is stale");
    if (p) {
      ++count;
      order.insert({-usable_degree(u), u});
    }
  }
  if (count != pseudo_count_) return fail("PSEUDO count is stale");
  if (order != pseudo_order_) return fail("PSEUDO ordering is stale");
  return true;
}

}  // namespace hamperm
