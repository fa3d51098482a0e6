#include <gtest/gtest.h>

#include "common.hpp"

using namespace betafull;
using testing_support::brute_successor;
using testing_support::brute_words;

TEST(Expand, ExamplesFromDigits) {
  auto g = make_context("digits=1,1");
  EXPECT_EQ(beta_expand(g, g.one(), 4), (std::vector<int>{1, 1, 0, 0}));
  auto r = make_context("rational=3/2");
  EXPECT_EQ(beta_expand(r, r.one(), 9), (std::vector<int>{1, 0, 1, 0, 0, 0, 0, 0, 1}));
  auto two = make_context("digits=2");
  EXPECT_EQ(beta_expand(two, two.number(Rational(3, 8)), 5), (std::vector<int>{0, 1, 1, 0, 0}));
  EXPECT_THROW(expand(two, two.number(2L), 3), Error);
  EXPECT_THROW(expand(two, two.number(-1L), 3), Error);
}

TEST(Expand, RemainderReconstructs) {
  for (const auto& s : testing_support::example_specs()) {
    auto c = make_context(s);
    BetaNumber x = c.number(Rational(5, 7));
    auto e = expand(c, x, 12);
    BetaNumber back = word_value(c, Word(e.digits)) + e.remainder.times_beta_pow(-12);
    EXPECT_EQ(back, x) << s;
    EXPECT_GE(e.remainder, c.zero());
    EXPECT_LT(e.remainder, c.one());
  }
}

TEST(Xi, QuasiGreedy) {
  EXPECT_EQ(xi_beta(make_context("digits=1,1"), 6), (std::vector<int>{1, 0, 1, 0, 1, 0}));
  EXPECT_EQ(xi_beta(make_context("digits=3,(2)"), 4), (std::vector<int>{3, 2, 2, 2}));
  EXPECT_EQ(xi_beta(make_context("digits=2"), 3), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(xi_beta(make_context("digits=1,0,1"), 7), (std::vector<int>{1, 0, 0, 1, 0, 0, 1}));
  auto g = make_context("digits=1,1");
  auto xi = xi_beta(g, 30);
  for (int i = 0; i < 30; ++i) EXPECT_EQ(xi[static_cast<std::size_t>(i)], i % 2 == 0 ? 1 : 0);
}

TEST(Words, MatchBruteForce) {
  for (const auto& s : testing_support::example_specs()) {
    auto c = make_context(s);
    int top = c.alphabet_size() > 3 ? 5 : 8;
    for (int n = 0; n <= top; ++n) {
      auto fast = enumerate_words(c, n);
      auto slow = brute_words(c, n);
      ASSERT_EQ(fast, slow) << s << " n=" << n;
      for (const auto& w : fast) {
        auto a = successor(c, w);
        auto b = brute_successor(slow, w);
        ASSERT_EQ(a.has_value(), b.has_value()) << s;
        if (a) {
          ASSERT_EQ(*a, *b) << s;
        }
      }
    }
  }
}

TEST(Words, GoldenCounts) {
  auto g = make_context("digits=1,1");
  std::size_t fib[] = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(enumerate_words(g, n).size(), fib[n]);
}

TEST(Words, AdmissibilityErrors) {
  auto g = make_context("digits=1,1");
  EXPECT_TRUE(is_admissible(g, Word{1, 0, 1}));
  EXPECT_FALSE(is_admissible(g, Word{1, 1}));
  EXPECT_THROW(is_admissible(g, Word{2}), Error);
  EXPECT_THROW(l_value(g, Word{0, 1, 1}), Error);
  EXPECT_EQ(format_word(Word{1, 0, 1}), "1,0,1");
  EXPECT_EQ(parse_word("1,0,1"), (Word{1, 0, 1}));
  EXPECT_EQ(parse_word(""), Word{});
}

TEST(Intervals, PartitionOfUnityAndKms) {
  for (const auto& s : testing_support::example_specs()) {
    auto c = make_context(s);
    int top = c.alphabet_size() > 3 ? 5 : 8;
    for (int n = 1; n <= top; ++n) {
      BetaNumber total = c.zero();
      BetaNumber prev_r = c.zero();
      for (const auto& w : enumerate_words(c, n)) {
        auto l = l_value(c, w);
        auto r = r_value(c, w);
        ASSERT_EQ(l, prev_r) << s;  // consecutive intervals abut
        prev_r = r;
        total += r - l;
        ASSERT_EQ(kms_value(c, w), (r - l).times_beta_pow(n)) << s << " " << format_word(w);
      }
      ASSERT_EQ(prev_r, c.one());
      ASSERT_EQ(total, c.one());
    }
  }
}

TEST(Kms, GoldenValues) {
  auto g = make_context("digits=1,1");
  BetaNumber b = g.beta();
  EXPECT_EQ(kms_value(g, Word{}), g.one());
  EXPECT_EQ(kms_value(g, Word{1}), b - Rational(1));
  EXPECT_EQ(kms_value(g, Word{1, 0}), g.one());
  EXPECT_EQ(beta_n(g, 2), g.zero());
}

TEST(Follower, Classes) {
  auto g = make_context("digits=1,1");
  EXPECT_TRUE(follower_equal(g, Word{0}, Word{1, 0}));
  EXPECT_FALSE(follower_equal(g, Word{0}, Word{1}));
  EXPECT_TRUE(follower_equal(g, Word{1}, Word{0, 1}));
  auto s = make_context("digits=3,(2)");
  EXPECT_TRUE(follower_equal(s, Word{3}, Word{3, 2}));
  EXPECT_TRUE(follower_equal(s, Word{3, 2, 2}, Word{1, 3}));
  EXPECT_FALSE(follower_equal(s, Word{3}, Word{2}));
  // Brute force: equal KMS weight iff equal follower sets up to length 6.
  for (const auto& spec : testing_support::sofic_specs()) {
    auto c = make_context(spec);
    auto words = enumerate_words(c, 3);
    for (const auto& u : words)
      for (const auto& v : words) {
        bool same = true;
        for (int n = 1; n <= 5 && same; ++n)
          for (const auto& w : enumerate_words(c, n))
            if (is_admissible(c, u.concat(w)) != is_admissible(c, v.concat(w))) {
              same = false;
              break;
            }
        EXPECT_EQ(follower_equal(c, u, v), same) << spec << " " << format_word(u) << " / " << format_word(v);
      }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_shift(make_context("digits=1,1"), 64), ShiftClass::sft(2));
  EXPECT_EQ(classify_shift(make_context("digits=3,(2)"), 64), ShiftClass::sofic(1, 1));
  EXPECT_EQ(classify_shift(make_context("digits=2"), 64), ShiftClass::sft(1));
  EXPECT_EQ(classify_shift(make_context("digits=1,(1,0)"), 64), ShiftClass::sofic(1, 2));
  auto r = make_context("rational=3/2");
  EXPECT_EQ(classify_shift(r, 64), ShiftClass::unknown(64));
  EXPECT_TRUE(denominator_growth_certificate(r, 64));
  EXPECT_FALSE(denominator_growth_certificate(make_context("digits=1,1"), 64));
  EXPECT_THROW(classify_shift(r, 0), Error);
}
