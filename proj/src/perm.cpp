#include "hamperm/perm.hpp"

#include <algorithm>
#include <sstream>

namespace hamperm {

namespace {

std::vector<std::vector<int>> parse_cycles(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  bool open = false;
  std::string num;
  auto flush = [&] {
    if (!num.empty()) {
      if (!open) throw std::invalid_argument("vertex outside parentheses in '" + text + "'");
      cur.push_back(std::stoi(num));
      num.clear();
    }
  };
  for (char ch : text) {
    if (ch == '(') {
      if (open) throw std::invalid_argument("nested '(' in '" + text + "'");
      open = true;
      cur.clear();
    } else if (ch == ')') {
      flush();
      if (!open) throw std::invalid_argument("unbalanced ')' in '" + text + "'");
      open = false;
      if (!cur.empty()) out.push_back(cur);
    } else if (ch >= '0' && ch <= '9') {
      num += ch;
    } else if (ch == ' ' || ch == ',' || ch == '\t' || ch == '\n') {
      flush();
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + ch + "' in cycle text");
    }
  }
  if (open) throw std::invalid_argument("unterminated cycle in '" + text + "'");
  return out;
}

}  // namespace

std::string cycle_text(const std::vector<int>& seq) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < seq.size(); ++i) os << (i ? " " : "") << seq[i];
  os << ')';
  return os.str();
}

Permutation::Permutation(int n) : img_(n + 1) {
  for (int v = 0; v <= n; ++v) img_[v] = v;
}

Permutation Permutation::from_images(std::vector<int> images) {
  int n = static_cast<int>(images.size());
  std::vector<char> seen(n + 1, 0);
  Permutation p;
  p.img_.assign(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    int w = images[v - 1];
    if (w < 1 || w > n || seen[w]) throw std::invalid_argument("mapping is not a bijection");
    seen[w] = 1;
    p.img_[v] = w;
  }
  return p;
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Permutation p(n);
  std::vector<char> used(n + 1, 0);
  for (const auto& c : cycles) {
    for (size_t i = 0; i < c.size(); ++i) {
      int v = c[i];
      if (v < 1 || v > n) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
      if (used[v]) throw std::invalid_argument("vertex " + std::to_string(v) + " repeated");
      used[v] = 1;
      p.img_[v] = c[(i + 1) % c.size()];
    }
  }
  return p;
}

Permutation Permutation::parse(int n, const std::string& text) {
  return from_cycles(n, parse_cycles(text));
}

Permutation Permutation::inverse() const {
  Permutation q;
  q.img_.assign(img_.size(), 0);
  for (int v = 1; v <= n(); ++v) q.img_[img_[v]] = v;
  return q;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(img_.size(), 0);
  for (int v = 1; v <= n(); ++v) {
    if (seen[v] || img_[v] == v) continue;
    std::vector<int> c;
    for (int w = v; !seen[w]; w = img_[w]) {
      seen[w] = 1;
      c.push_back(w);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Permutation::str() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string s;
  for (const auto& c : cs) s += cycle_text(c);
  return s;
}

bool Permutation::is_identity() const {
  for (int v = 1; v <= n(); ++v)
    if (img_[v] != v) return false;
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.n() != q.n()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> img(p.n());
  for (int v = 1; v <= p.n(); ++v) img[v - 1] = p(q(v));
  return Permutation::from_images(std::move(img));
}

NCycle NCycle::from_sequence(const std::vector<int>& seq) {
  int n = static_cast<int>(seq.size());
  if (n == 0) throw std::invalid_argument("empty cycle");
  NCycle h;
  h.succ_.assign(n + 1, 0);
  h.pred_.assign(n + 1, 0);
  h.pos_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    int v = seq[i];
    if (v < 1 || v > n) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    if (h.succ_[v]) throw std::invalid_argument("vertex " + std::to_string(v) + " repeated");
    h.succ_[v] = seq[(i + 1) % n];
  }
  for (int v = 1; v <= n; ++v) h.pred_[h.succ_[v]] = v;
  int v = 1;
  for (int i = 0; i < n; ++i, v = h.succ_[v]) h.pos_[v] = i;
  return h;
}

NCycle NCycle::identity(int n) {
  std::vector<int> seq(n);
  for (int i = 0; i < n; ++i) seq[i] = i + 1;
  return from_sequence(seq);
}

NCycle NCycle::from_permutation(const Permutation& p) {
  if (!is_ncycle(p)) throw std::invalid_argument("permutation " + p.str() + " is not an n-cycle");
  std::vector<int> seq;
  int v = 1;
  do {
    seq.push_back(v);
    v = p(v);
  } while (v != 1);
  return from_sequence(seq);
}

NCycle NCycle::parse(const std::string& text) {
  auto cs = parse_cycles(text);
  if (cs.size() != 1) throw std::invalid_argument("expected a single cycle: '" + text + "'");
  return from_sequence(cs[0]);
}

std::vector<int> NCycle::sequence(int start) const {
  std::vector<int> seq;
  seq.reserve(n());
  int v = start;
  do {
    seq.push_back(v);
    v = succ_[v];
  } while (v != start);
  return seq;
}

Permutation NCycle::as_permutation() const {
  return Permutation::from_images(std::vector<int>(succ_.begin() + 1, succ_.end()));
}

std::string NCycle::str() const { return cycle_text(sequence(1)); }

Permutation compose(const NCycle& h, const Permutation& s) {
  if (h.n() != s.n()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> img(h.n());
  for (int v = 1; v <= h.n(); ++v) img[v - 1] = h.succ(s(v));
  return Permutation::from_images(std::move(img));
}

bool is_ncycle(const Permutation& p) {
  int n = p.n();
  if (n < 1) return false;
  int len = 0, v = 1;
  do {
    v = p(v);
    ++len;
  } while (v != 1 && len <= n);
  return len == n;
}

bool positions_interleave(int size, int p, int q, int r, int s) {
  if (p == q || p == r || p == s || q == r || q == s || r == s) return false;
  auto inside = [&](int x) {
    int span = ((q - p) % size + size) % size;
    int off = ((x - p) % size + size) % size;
    return off > 0 && off < span;
  };
  return inside(r) != inside(s);
}

bool chords_properly_intersect(const NCycle& h, int p, int q, int r, int s) {
  return positions_interleave(h.n(), h.pos(p), h.pos(q), h.pos(r), h.pos(s));
}

bool clockwise(const NCycle& h, int a, int b, int c) {
  if (a == b || b == c || a == c) return false;
  int n = h.n();
  int db = (h.pos(b) - h.pos(a) + n) % n;
  int dc = (h.pos(c) - h.pos(a) + n) % n;
  return db < dc;
}

bool is_admissible_3cycle(const NCycle& h, int a, int b, int c) {
  if (a == b || b == c || a == c) return false;
  int size = 4 * h.n();
  int pa = 4 * h.pos(a), pb = 4 * h.pos(b), pc = 4 * h.pos(c);
  // Head h(b) sits just before position pos(b)+1, i.e. at 4 pos(b) + 3.
  return positions_interleave(size, pa + 1, pb + 3, pb + 1, pc + 3);
}

bool is_admissible_potdtc(const NCycle& h, int a, int c, int b, int d) {
  return chords_properly_intersect(h, a, c, b, d);
}

NCycle rotate(const NCycle& h, int a, int x) {
  if (x == a) throw std::invalid_argument("rotation: x equals a");
  if (x == h.succ(a)) throw std::invalid_argument("rotation: x is the successor of a (identity rotation)");
  auto seq = h.sequence(a);
  auto it = std::find(seq.begin(), seq.end(), x);
  std::reverse(seq.begin() + 1, it + 1);
  return NCycle::from_sequence(seq);
}

Permutation rotation_permutation(const NCycle& h, int a, int x) {
  NCycle r = rotate(h, a, x);
  std::vector<int> img(h.n());
  for (int v = 1; v <= h.n(); ++v) img[v - 1] = h.pred(r.succ(v));
  return Permutation::from_images(std::move(img));
}

MoveSet MoveSet::three(int a, int b, int c) {
  MoveSet m;
  m.kind = Kind::ThreeCycle;
  m.v = {a, b, c, 0};
  return m;
}

MoveSet MoveSet::potdtc(int a, int c, int b, int d) {
  MoveSet m;
  m.kind = Kind::Potdtc;
  m.v = {a, c, b, d};
  return m;
}

MoveSet MoveSet::inverse() const {
  if (kind == Kind::ThreeCycle) return three(v[0], v[2], v[1]);
  return *this;
}

Permutation MoveSet::as_permutation(int n) const {
  if (kind == Kind::ThreeCycle) return Permutation::from_cycles(n, {{v[0], v[1], v[2]}});
  return Permutation::from_cycles(n, {{v[0], v[1]}, {v[2], v[3]}});
}

std::string MoveSet::str() const {
  if (kind == Kind::ThreeCycle) return cycle_text({v[0], v[1], v[2]});
  return cycle_text({v[0], v[1]}) + cycle_text({v[2], v[3]});
}

bool MoveSet::same_as(const MoveSet& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::ThreeCycle) {
    for (int r = 0; r < 3; ++r)
      if (o.v[0] == v[r] && o.v[1] == v[(r + 1) % 3] && o.v[2] == v[(r + 2) % 3]) return true;
    return false;
  }
  auto norm = [](int x, int y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
  auto p1 = norm(v[0], v[1]), p2 = norm(v[2], v[3]);
  auto q1 = norm(o.v[0], o.v[1]), q2 = norm(o.v[2], o.v[3]);
  return (p1 == q1 && p2 == q2) || (p1 == q2 && p2 == q1);
}

}  // namespace hamperm
