#include <gtest/gtest.h>

#include <random>

#include "common.hpp"

using namespace betafull;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InternalInvariantViolation;
}

}  // namespace

TEST(Context, GoldenRatio) {
  auto c = make_context("digits=1,1");
  EXPECT_EQ(c.kind(), ContextKind::AlgebraicDigits);
  EXPECT_EQ(c.shape(), ExpansionShape::Finite);
  EXPECT_EQ(c.alphabet_size(), 2);
  EXPECT_EQ(c.degree(), 2);
  EXPECT_EQ(c.beta().to_decimal(12), "1.618033988750");
  BetaNumber b = c.beta();
  EXPECT_EQ(b * b, b + Rational(1));
}

TEST(Context, TwoPlusRootThree) {
  auto c = make_context("digits=3,(2)");
  EXPECT_EQ(c.shape(), ExpansionShape::Periodic);
  EXPECT_EQ(c.alphabet_size(), 4);
  std::vector<Rational> cp = {Rational(1), Rational(-4), Rational(1)};
  EXPECT_EQ(c.char_poly(), cp);
  EXPECT_EQ((c.beta() - Rational(3)).to_decimal(6), "0.732051");
}

TEST(Context, RationalAndIntegers) {
  auto r = make_context("rational=3/2");
  EXPECT_EQ(r.kind(), ContextKind::ExactRational);
  EXPECT_EQ(r.shape(), ExpansionShape::Aperiodic);
  EXPECT_EQ(r.alphabet_size(), 2);
  EXPECT_EQ(r.beta().to_decimal(3), "1.500");
  auto two = make_context("digits=2");
  EXPECT_EQ(two.alphabet_size(), 2);
  EXPECT_EQ(two.beta(), two.number(2L));
  auto r4 = make_context("rational=8/2");
  EXPECT_EQ(r4.shape(), ExpansionShape::Finite);
  EXPECT_EQ(r4.alphabet_size(), 4);
}

TEST(Context, CanonicalSpecRoundTrip) {
  for (const char* s : {"digits=1,1", "digits=3,(2)", "digits=3,2,(2)", "digits=3,(2,2)", "digits=1,1,0,0", "digits=1,(1,0)",
                        "rational=6/4"}) {
    auto c = make_context(s);
    auto again = make_context(c.spec());
    EXPECT_EQ(again.spec(), c.spec()) << s;
    EXPECT_EQ(again.char_poly(), c.char_poly()) << s;
  }
  EXPECT_EQ(make_context("digits=3,2,(2)").spec(), "digits=3,(2)");
  EXPECT_EQ(make_context("digits=1,1,0,0").spec(), "digits=1,1");
  EXPECT_EQ(make_context("rational=6/4").spec(), "rational=3/2");
}

TEST(Context, Errors) {
  EXPECT_EQ(kind_of([] { make_context("digits="); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { make_context("foo=1"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { make_context("digits=1,x"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { make_context("rational=1"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { make_context("rational=1/2"); }), ErrorKind::BetaOutOfRange);
  EXPECT_EQ(kind_of([] { make_context("rational=2/2"); }), ErrorKind::BetaOutOfRange);
  EXPECT_EQ(kind_of([] { make_context("digits=1,2"); }), ErrorKind::NotParryAdmissible);
  EXPECT_EQ(kind_of([] { make_context("digits=1,(1)"); }), ErrorKind::NotParryAdmissible);
  EXPECT_EQ(kind_of([] { make_context("digits=1,0,1,1"); }), ErrorKind::NotParryAdmissible);
}

TEST(Number, FieldAxioms) {
  for (const auto& s : testing_support::example_specs()) {
    auto c = make_context(s);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-9, 9);
    auto rnd = [&] {
      poly::Poly p;
      for (int i = 0; i < c.degree(); ++i) p.push_back(Rational(d(rng), 1 + std::abs(d(rng))));
      return c.from_poly(p);
    };
    for (int t = 0; t < 20; ++t) {
      auto a = rnd(), b = rnd(), e = rnd();
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * e, a * (b * e));
      EXPECT_EQ(a * (b + e), a * b + a * e);
      EXPECT_EQ(a - a, c.zero());
      if (!b.is_zero()) {
        EXPECT_EQ((a / b) * b, a) << s;
      }
    }
    EXPECT_THROW(c.one() / c.zero(), Error);
  }
}

TEST(Number, OrderingMatchesDecimals) {
  auto c = make_context("digits=1,1");
  BetaNumber b = c.beta();
  EXPECT_LT(c.number(Rational(1618, 1000)), b);
  EXPECT_GT(c.number(Rational(1619, 1000)), b);
  EXPECT_EQ(b.floor(), 1);
  EXPECT_EQ((b * b * b).floor(), 4);
  EXPECT_EQ((-b).floor(), -2);
  EXPECT_EQ(c.number(3L).floor(), 3);
  EXPECT_EQ(c.number(Rational(-7, 2)).floor(), -4);
}

TEST(Number, DecimalRounding) {
  auto c = make_context("digits=2");
  EXPECT_EQ(c.number(Rational(1, 3)).to_decimal(4), "0.3333");
  EXPECT_EQ(c.number(Rational(2, 3)).to_decimal(4), "0.6667");
  EXPECT_EQ(c.number(Rational(-1, 8)).to_decimal(2), "-0.12");
  EXPECT_EQ(c.number(5L).to_decimal(0), "5");
  EXPECT_EQ(c.number(Rational(-1, 3)).to_decimal(0), "0");
}

TEST(Number, ZeroTestSoundness) {
  // Polynomials vanishing at beta are zero; nearby perturbations are not.
  auto c = make_context("digits=3,(2)");
  BetaNumber b = c.beta();
  EXPECT_TRUE((b * b - b * Rational(4) + Rational(1)).is_zero());
  for (int k = 1; k < 50; ++k) {
    BetaNumber eps = c.number(Rational(1, 1)).times_beta_pow(-k);
    EXPECT_FALSE(eps.is_zero());
    EXPECT_EQ(eps.sign(), 1);
    EXPECT_EQ((-eps).sign(), -1);
  }
  // beta^-1 is exact
  EXPECT_EQ(b.times_beta_pow(-1), c.one());
  EXPECT_EQ(c.beta_pow(-2) * b * b, c.one());
}

TEST(Number, CharPolyVanishesAtBeta) {
  for (const auto& s : testing_support::example_specs()) {
    auto c = make_context(s);
    auto cp = c.char_poly();
    // the char poly evaluated at beta is zero
    BetaNumber acc = c.zero();
    for (std::size_t i = cp.size(); i-- > 0;) acc = acc * c.beta() + cp[i];
    EXPECT_TRUE(acc.is_zero()) << s;
  }
}

TEST(Number, ReducibleModulus) {
  // (x^2 - x - 1)(x + 1) has the golden ratio as its only root above 1.
  poly::Poly p = {Rational(-1), Rational(-2), Rational(0), Rational(1)};
  auto sf = poly::square_free_part(p);
  auto st = poly::sturm_sequence(sf);
  EXPECT_EQ(poly::count_roots(st, 1, 3), 1);
  // digits=1,0,1 has x^3 - x^2 - 1, irreducible; digits=2,(1) gives x^2 - 3x + 1 (beta = phi^2).
  auto c = make_context("digits=2,(1)");
  auto g = make_context("digits=1,1");
  EXPECT_EQ(c.beta().to_decimal(12), (g.beta() * g.beta()).to_decimal(12));
  // x + 1 divides nothing here, but x(beta) - (beta^2 - 3 beta + 1) stays exact
  EXPECT_TRUE((c.beta() * c.beta() - c.beta() * Rational(3) + Rational(1)).is_zero());
}

TEST(Number, ContextMismatch) {
  auto a = make_context("digits=1,1");
  auto b = make_context("digits=2");
  EXPECT_THROW(a.one() + b.one(), Error);
  // the same canonical spec yields the same context
  EXPECT_EQ(make_context("digits=1,1,0"), a);
  EXPECT_NO_THROW(a.one() + make_context("digits=1,1").one());
}
