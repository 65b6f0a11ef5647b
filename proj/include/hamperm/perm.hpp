#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hamperm {

// Vertices are 1-based everywhere. Arrays indexed by vertex have a dummy slot 0.

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n);  // identity

  static Permutation from_images(std::vector<int> images_one_based);
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);
  // Parses "(1 5 6)(2 3)" or "()" for the identity.
  static Permutation parse(int n, const std::string& text);

  int n() const { return static_cast<int>(img_.size()) - 1; }
  int operator()(int v) const { return img_[v]; }
  Permutation inverse() const;
  // Disjoint cycles of length >= 2, each starting at its smallest vertex, sorted by that vertex.
  std::vector<std::vector<int>> cycles() const;
  std::string str() const;
  bool is_identity() const;
  bool operator==(const Permutation& o) const { return img_ == o.img_; }

 private:
  std::vector<int> img_{0};
};

// v -> p(q(v)).
Permutation compose(const Permutation& p, const Permutation& q);

class NCycle {
 public:
  NCycle() = default;
  static NCycle from_sequence(const std::vector<int>& seq);
  static NCycle identity(int n);  // (1 2 ... n)
  static NCycle from_permutation(const Permutation& p);
  static NCycle parse(const std::string& text);

  int n() const { return static_cast<int>(succ_.size()) - 1; }
  int succ(int v) const { return succ_[v]; }
  int pred(int v) const { return pred_[v]; }
  // Clockwise position of v measured from the smallest vertex.
  int pos(int v) const { return pos_[v]; }
  std::vector<int> sequence(int start = 1) const;
  Permutation as_permutation() const;
  std::string str() const;
  bool operator==(const NCycle& o) const { return succ_ == o.succ_; }

 private:
  std::vector<int> succ_{0}, pred_{0}, pos_{0};
};

Permutation compose(const NCycle& h, const Permutation& s);
bool is_ncycle(const Permutation& p);

// Exactly one of r, s strictly inside the clockwise arc from p to q; all four distinct.
bool chords_properly_intersect(const NCycle& h, int p, int q, int r, int s);

// Chord test on a circle of `size` points given positions; positions must be distinct.
bool positions_interleave(int size, int p, int q, int r, int s);

// a, b, c appear in this clockwise order (distinct vertices).
bool clockwise(const NCycle& h, int a, int b, int c);

// The chords (a, h(b)) and (b, h(c)) cross once each tail is nudged just after its vertex and
// each head just before its vertex. For chords without shared endpoints this is exactly the
// plain proper-intersection test; the nudge also settles the degenerate cases.
bool is_admissible_3cycle(const NCycle& h, int a, int b, int c);
bool is_admissible_potdtc(const NCycle& h, int a, int c, int b, int d);

// r with h*r equal to h after reversing the subpath from h(a) through x.
Permutation rotation_permutation(const NCycle& h, int a, int x);
NCycle rotate(const NCycle& h, int a, int x);

struct MoveSet {
  enum class Kind { ThreeCycle, Potdtc };
  Kind kind = Kind::ThreeCycle;
  // ThreeCycle: (v[0] v[1] v[2]); Potdtc: (v[0] v[1])(v[2] v[3]), i.e. (a c)(b d).
  std::array<int, 4> v{0, 0, 0, 0};
  int score = 0;

  static MoveSet three(int a, int b, int c);
  static MoveSet potdtc(int a, int c, int b, int d);

  int size() const { return kind == Kind::ThreeCycle ? 3 : 4; }
  MoveSet inverse() const;
  Permutation as_permutation(int n) const;
  // New arcs (tail, head) created when the move is applied to the circuit with successor `succ`.
  template <class Succ>
  std::vector<std::pair<int, int>> witness_arcs(Succ succ) const {
    if (kind == Kind::ThreeCycle)
      return {{v[0], succ(v[1])}, {v[1], succ(v[2])}, {v[2], succ(v[0])}};
    return {{v[0], succ(v[1])}, {v[1], succ(v[0])}, {v[2], succ(v[3])}, {v[3], succ(v[2])}};
  }
  std::string str() const;
  // Same permutation, regardless of how the cycles were written.
  bool same_as(const MoveSet& o) const;
  bool operator==(const MoveSet& o) const { return same_as(o); }
};

std::string cycle_text(const std::vector<int>& seq);

}  // namespace hamperm
