#include <gtest/gtest.h>

#include "betafull/poly.hpp"

using namespace betafull;
using namespace betafull::poly;

namespace {

Poly P(std::initializer_list<long> c) {
  Poly p;
  for (long v : c) p.push_back(Rational(v));
  trim(p);
  return p;
}

}  // namespace

TEST(Poly, ArithmeticAndTrim) {
  EXPECT_EQ(add(P({1, 2}), P({-1, -2})), Poly{});
  EXPECT_EQ(mul(P({-1, 1}), P({1, 1})), P({-1, 0, 1}));
  EXPECT_EQ(degree(P({0, 0, 3})), 2);
  EXPECT_EQ(degree(Poly{}), -1);
  EXPECT_EQ(scale(P({2, 4}), Rational(1, 2)), P({1, 2}));
}

TEST(Poly, DivmodReconstructs) {
  Poly a = P({5, -3, 0, 2, 1}), b = P({1, 0, 3});
  auto [q, r] = divmod(a, b);
  EXPECT_LT(degree(r), degree(b));
  EXPECT_EQ(add(mul(q, b), r), a);
  EXPECT_THROW(divmod(a, Poly{}), Error);
}

TEST(Poly, GcdAndSquareFree) {
  Poly f = mul(mul(P({-1, 1}), P({-1, 1})), P({2, 1}));  // (x-1)^2 (x+2)
  EXPECT_EQ(gcd(f, derivative(f)), P({-1, 1}));
  EXPECT_EQ(square_free_part(f), monic(mul(P({-1, 1}), P({2, 1}))));
}

TEST(Poly, SturmCountsRoots) {
  // (x-1)(x-2)(x-3) on (0,4], (1,2], (2.5, 10]
  Poly f = mul(mul(P({-1, 1}), P({-2, 1})), P({-3, 1}));
  auto s = sturm_sequence(f);
  EXPECT_EQ(count_roots(s, 0, 4), 3);
  EXPECT_EQ(count_roots(s, 1, 2), 1);  // half-open (1,2]
  EXPECT_EQ(count_roots(s, Rational(5, 2), 10), 1);
  auto g = sturm_sequence(P({-1, -1, 1}));  // x^2 - x - 1
  EXPECT_EQ(count_roots(g, 1, 2), 1);
  EXPECT_EQ(count_roots(g, -1, 0), 1);
}

TEST(Poly, EvalIntervalEncloses) {
  Poly f = P({-1, -1, 1});
  Rational lo(3, 2), hi(7, 4);
  auto iv = eval_interval(f, lo, hi);
  for (int k = 0; k <= 8; ++k) {
    Rational x = lo + (hi - lo) * Rational(k, 8);
    Rational v = eval(f, x);
    EXPECT_LE(iv.lo, v);
    EXPECT_GE(iv.hi, v);
  }
}

TEST(Poly, InverseMod) {
  Poly f = P({-1, -1, 1});
  Poly q = P({3, 2});
  Poly inv = inverse_mod(q, f);
  EXPECT_EQ(rem(mul(q, inv), f), P({1}));
}
