#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "hamperm/perm.hpp"
#include "hamperm/random.hpp"

using namespace hamperm;

namespace {

Permutation perm(int n, const std::string& s) { return Permutation::parse(n, s); }

// Every n-cycle on 1..n written as a sequence starting at 1.
std::vector<NCycle> all_ncycles(int n) {
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 2);
  std::vector<NCycle> out;
  do {
    std::vector<int> seq{1};
    seq.insert(seq.end(), rest.begin(), rest.end());
    out.push_back(NCycle::from_sequence(seq));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace

TEST(Compose, ThreeCycleOnTwelve) {
  auto h = NCycle::identity(12);
  auto p = compose(h, perm(12, "(1 4 8)"));
  EXPECT_EQ(p.str(), "(1 5 6 7 8 2 3 4 9 10 11 12)");
  EXPECT_TRUE(is_ncycle(p));
}

TEST(Compose, SingleTranspositionSplits) {
  auto p = compose(NCycle::identity(10), perm(10, "(3 7)"));
  EXPECT_EQ(p.str(), "(1 2 3 8 9 10)(4 5 6 7)");
  EXPECT_FALSE(is_ncycle(p));
}

TEST(Compose, IdentityAndSizeMismatch) {
  auto h = NCycle::parse("(1 3 2 5 4)");
  EXPECT_EQ(compose(h, Permutation(5)), h.as_permutation());
  EXPECT_THROW(compose(h, Permutation(4)), std::invalid_argument);
}

TEST(IsNCycle, SmallCases) {
  EXPECT_TRUE(is_ncycle(Permutation(1)));
  EXPECT_FALSE(is_ncycle(Permutation(2)));
  EXPECT_TRUE(is_ncycle(perm(12, "(1 5 6 7 8 2 3 4 9 10 11 12)")));
}

TEST(Chords, Examples) {
  auto h = NCycle::identity(10);
  // 3-4-7-9 around the circle: (3,7) and (4,9) interleave, (3,9) and (7,4) nest.
  EXPECT_TRUE(chords_properly_intersect(h, 3, 7, 4, 9));
  EXPECT_FALSE(chords_properly_intersect(h, 3, 9, 7, 4));
  EXPECT_FALSE(chords_properly_intersect(h, 1, 5, 5, 8));
  EXPECT_FALSE(chords_properly_intersect(h, 1, 3, 5, 8));
}

TEST(Chords, UsesCircuitPositionsNotLabels) {
  auto h = NCycle::parse("(1 9 2 8 3 7 4 6 5 10)");
  // Order on h: 9 at 1, 8 at 3, 7 at 5, 6 at 7 -> chord (9,7) vs (8,6) interleave.
  EXPECT_TRUE(chords_properly_intersect(h, 9, 7, 8, 6));
  EXPECT_FALSE(chords_properly_intersect(h, 9, 8, 7, 6));
}

TEST(Admissible, ThreeCycleExamples) {
  EXPECT_TRUE(is_admissible_3cycle(NCycle::identity(12), 1, 4, 8));
  EXPECT_FALSE(is_admissible_3cycle(NCycle::identity(10), 5, 3, 8));
}

TEST(Admissible, PotdtcExamples) {
  auto h = NCycle::identity(10);
  EXPECT_TRUE(is_admissible_potdtc(h, 3, 7, 4, 9));
  // The product closes through 10 as well: 4 -> h(9) = 10 -> 1.
  EXPECT_EQ(compose(h, perm(10, "(3 7)(4 9)")).str(), "(1 2 3 8 9 5 6 7 4 10)");
  EXPECT_TRUE(is_admissible_potdtc(NCycle::identity(6), 1, 3, 2, 4));
}

TEST(Admissible, ExhaustiveThreeCyclesOnSix) {
  for (const auto& h : all_ncycles(6))
    for (int a = 1; a <= 6; ++a)
      for (int b = 1; b <= 6; ++b)
        for (int c = 1; c <= 6; ++c) {
          if (a == b || b == c || a == c) continue;
          bool oracle = is_ncycle(compose(h, Permutation::from_cycles(6, {{a, b, c}})));
          ASSERT_EQ(is_admissible_3cycle(h, a, b, c), oracle) << h.str() << " (" << a << ' ' << b << ' ' << c << ')';
        }
}

TEST(Admissible, ExhaustivePotdtcOnEight) {
  auto h = NCycle::parse("(1 5 2 7 3 8 6 4)");
  for (int a = 1; a <= 8; ++a)
    for (int c = a + 1; c <= 8; ++c)
      for (int b = 1; b <= 8; ++b)
        for (int d = b + 1; d <= 8; ++d) {
          if (b == a || b == c || d == a || d == c) continue;
          bool oracle = is_ncycle(compose(h, Permutation::from_cycles(8, {{a, c}, {b, d}})));
          ASSERT_EQ(is_admissible_potdtc(h, a, c, b, d), oracle);
        }
}

TEST(Admissible, PlainChordPhrasingIsNotExact) {
  // The form that asks (a,h(c)), (c,h(a)), (b,h(d)), (d,h(b)) to be proper chords rejects
  // admissible products whenever two cut points are neighbours on h.
  auto h = NCycle::identity(6);
  EXPECT_TRUE(is_admissible_potdtc(h, 1, 3, 2, 4));
  EXPECT_TRUE(is_ncycle(compose(h, perm(6, "(1 3)(2 4)"))));
  EXPECT_FALSE(chords_properly_intersect(h, 1, h.succ(3), 3, h.succ(1)));
}

TEST(Parity, SingleTranspositionNeverNCycle) {
  for (const auto& h : all_ncycles(6))
    for (int a = 1; a <= 6; ++a)
      for (int c = a + 1; c <= 6; ++c) ASSERT_FALSE(is_ncycle(compose(h, Permutation::from_cycles(6, {{a, c}}))));
}

TEST(Inverse, RoundTrip) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    int n = 5 + static_cast<int>(rng.below(6));
    std::vector<int> seq(n);
    std::iota(seq.begin(), seq.end(), 1);
    rng.shuffle(seq);
    auto h = NCycle::from_sequence(seq);
    auto pick = rng.sample(n, 4);
    MoveSet m = (t % 2) ? MoveSet::three(pick[0] + 1, pick[1] + 1, pick[2] + 1)
                        : MoveSet::potdtc(pick[0] + 1, pick[1] + 1, pick[2] + 1, pick[3] + 1);
    auto s = m.as_permutation(n);
    auto hs = compose(h, s);
    EXPECT_EQ(compose(hs, s.inverse()), h.as_permutation());
    EXPECT_EQ(m.inverse().as_permutation(n), s.inverse());
  }
}

TEST(Rotation, ClosedForms) {
  auto h = NCycle::identity(9);
  EXPECT_EQ(rotation_permutation(h, 1, 4).str(), "(1 3)(2 4)");
  EXPECT_EQ(rotation_permutation(h, 1, 3).str(), "(1 2 3)");
  EXPECT_EQ(rotation_permutation(h, 1, 6).str(), "(1 5 3)(2 6 4)");
  EXPECT_EQ(rotation_permutation(h, 1, 7).str(), "(1 6 4 2 7 5 3)");
  EXPECT_THROW(rotation_permutation(h, 1, 2), std::invalid_argument);
}

TEST(Rotation, ProductIsAlwaysTheReversedCircuit) {
  for (int n = 3; n <= 7; ++n)
    for (const auto& h : all_ncycles(n))
      for (int a = 1; a <= n; ++a)
        for (int x = 1; x <= n; ++x) {
          if (x == a || x == h.succ(a)) continue;
          auto hr = compose(h, rotation_permutation(h, a, x));
          ASSERT_TRUE(is_ncycle(hr));
          auto r = NCycle::from_permutation(hr);
          ASSERT_EQ(r.succ(a), x);
          ASSERT_EQ(r.succ(h.succ(a)), h.succ(x));
        }
}

TEST(MoveSet, TextAndEquality) {
  auto m = MoveSet::three(3, 9, 21);
  EXPECT_EQ(m.str(), "(3 9 21)");
  EXPECT_TRUE(m.same_as(MoveSet::three(9, 21, 3)));
  EXPECT_FALSE(m.same_as(MoveSet::three(3, 21, 9)));
  EXPECT_TRUE(MoveSet::potdtc(3, 13, 5, 15).same_as(MoveSet::potdtc(15, 5, 13, 3)));
  EXPECT_EQ(MoveSet::potdtc(3, 13, 5, 15).str(), "(3 13)(5 15)");
}

TEST(Parse, Errors) {
  EXPECT_THROW(Permutation::parse(5, "(1 2 2)"), std::invalid_argument);
  EXPECT_THROW(Permutation::parse(5, "(1 9)"), std::invalid_argument);
  EXPECT_THROW(NCycle::parse("(1 2)(3 4)"), std::invalid_argument);
  EXPECT_EQ(Permutation::parse(4, "()").str(), "()");
}
