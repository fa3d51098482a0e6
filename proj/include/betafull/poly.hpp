#pragma once

// Dense univariate polynomials over Q, coefficients stored low degree first.
// Enough machinery for exact sign determination of polynomial expressions at
// an isolated real root: Euclid, square-free part, Sturm sequences and
// interval Horner evaluation.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "betafull/error.hpp"

namespace betafull {

using Rational = mpq_class;
using Integer = mpz_class;

namespace poly {

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline bool is_zero(const Poly& p) { return p.empty(); }

inline Poly constant(const Rational& c) {
  Poly p{c};
  trim(p);
  return p;
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline Poly scale(const Poly& a, const Rational& c) {
  if (sgn(c) == 0) return {};
  Poly r(a);
  for (auto& x : r) x *= c;
  return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

/// Quotient and remainder of a / b; b must be nonzero.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  Poly r(a);
  trim(r);
  if (r.size() < b.size()) return {Poly{}, r};
  Poly q(r.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (int i = degree(r); i >= degree(b); --i) {
    if (static_cast<int>(r.size()) <= i || sgn(r[i]) == 0) continue;
    Rational c = r[i] / lead;
    int shift = i - degree(b);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

inline Poly rem(const Poly& a, const Poly& b) { return divmod(a, b).second; }

inline Poly monic(const Poly& a) {
  if (a.empty()) return a;
  return scale(a, Rational(1) / a.back());
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline Poly derivative(const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
  trim(r);
  return r;
}

inline Poly square_free_part(const Poly& p) {
  Poly g = gcd(p, derivative(p));
  if (degree(g) <= 0) return monic(p);
  return monic(divmod(p, g).first);
}

inline Rational eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

struct Interval {
  Rational lo;
  Rational hi;
};

/// Enclosure of { p(x) : lo <= x <= hi } for 0 <= lo <= hi.
inline Interval eval_interval(const Poly& p, const Rational& lo, const Rational& hi) {
  Interval acc{0, 0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Rational a, b;
    if (sgn(acc.lo) >= 0) {
      a = acc.lo * lo;
      b = acc.hi * hi;
    } else if (sgn(acc.hi) <= 0) {
      a = acc.lo * hi;
      b = acc.hi * lo;
    } else {
      a = acc.lo * hi;
      b = acc.hi * hi;
    }
    acc.lo = a + *it;
    acc.hi = b + *it;
  }
  return acc;
}

inline std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq;
  Poly a = p;
  trim(a);
  if (a.empty()) return seq;
  seq.push_back(a);
  Poly b = derivative(a);
  while (!b.empty()) {
    seq.push_back(b);
    Poly r = rem(a, b);
    a = std::move(b);
    b = scale(r, Rational(-1));
  }
  return seq;
}

inline int sign_variations(const std::vector<Poly>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    int v = sgn(eval(s, x));
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

/// Number of distinct real roots in the half-open interval (a, b].
inline int count_roots(const std::vector<Poly>& seq, const Rational& a, const Rational& b) {
  if (seq.empty()) return 0;
  return sign_variations(seq, a) - sign_variations(seq, b);
}

/// s with s*q = 1 mod f, assuming gcd(q, f) = 1.
inline Poly inverse_mod(const Poly& q, const Poly& f) {
  Poly r0 = f, r1 = rem(q, f);
  Poly s0{}, s1{Rational(1)};
  while (!r1.empty()) {
    auto [quo, r2] = divmod(r0, r1);
    Poly s2 = sub(s0, mul(quo, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (degree(r0) != 0)
    throw Error(ErrorKind::InternalInvariantViolation, "inverse_mod: arguments not coprime");
  return rem(scale(s0, Rational(1) / r0[0]), f);
}

}  // namespace poly
}  // namespace betafull
