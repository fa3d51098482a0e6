#pragma once

// Exact arithmetic in Q(beta) for a real beta > 1.
//
// A context is built either from the beta-expansion of 1 (finite or
// ultimately periodic digit list, giving an integer polynomial p with
// p(beta) = 0) or from an exact rational.  Numbers are polynomials of degree
// < deg p reduced modulo p.  p need not be irreducible, so equality is
// decided by a gcd certificate: q(beta) = 0 iff gcd(q, sqfree(p)) has a root
// in the isolating interval of beta (counted with a Sturm sequence).  Signs
// of nonzero values come from interval Horner evaluation, refining the
// isolating interval by bisection until the enclosure excludes zero.

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "betafull/error.hpp"
#include "betafull/poly.hpp"

namespace betafull {

enum class ContextKind { AlgebraicDigits, ExactRational };

/// Shape of the expansion d(1, beta).
enum class ExpansionShape { Finite, Periodic, Aperiodic };

/// d(1, beta) as preperiod plus period; an empty period means the
/// expansion is finite.
struct DigitSpec {
  std::vector<int> preperiod;
  std::vector<int> period;

  bool finite() const { return period.empty(); }
  friend bool operator==(const DigitSpec&, const DigitSpec&) = default;
};

class BetaContext;
class BetaNumber;

namespace detail {
BetaContext build_context(std::string_view spec);
}

namespace detail {

struct ContextData {
  ContextKind kind = ContextKind::AlgebraicDigits;
  ExpansionShape shape = ExpansionShape::Finite;
  DigitSpec digits;
  int alphabet_size = 0;
  Rational rational_value;
  poly::Poly char_poly;  // monic, beta is a root
  poly::Poly square_free;
  std::vector<poly::Poly> sturm;
  Rational lo, hi;  // beta in (lo, hi]; lo == hi when beta is rational
  poly::Poly inv_beta;
  std::string spec;

  // d(1, beta) digits and orbit f_beta^n(1) of an aperiodic rational beta,
  // extended on demand.
  mutable std::mutex cache_mutex;
  mutable std::vector<int> digit_cache;
  mutable Rational orbit_tail = 1;

  int degree() const { return poly::degree(char_poly); }

  poly::Poly reduce(const poly::Poly& q) const {
    if (static_cast<int>(q.size()) <= degree()) return q;
    return poly::rem(q, char_poly);
  }

  bool exact_root() const { return lo == hi; }

  // Halve (a, b] keeping beta inside.
  void bisect(Rational& a, Rational& b) const {
    Rational mid = (a + b) / 2;
    if (poly::count_roots(sturm, a, mid) == 1)
      b = mid;
    else
      a = mid;
  }

  bool is_root(const poly::Poly& q) const {
    poly::Poly g = poly::gcd(q, square_free);
    if (poly::degree(g) < 1) return false;
    return poly::count_roots(poly::sturm_sequence(g), lo, hi) == 1;
  }

  int sign(const poly::Poly& q) const {
    if (q.empty()) return 0;
    if (q.size() == 1) return sgn(q[0]);
    if (exact_root()) return sgn(poly::eval(q, lo));
    auto e = poly::eval_interval(q, lo, hi);
    if (sgn(e.lo) > 0) return 1;
    if (sgn(e.hi) < 0) return -1;
    if (is_root(q)) return 0;
    Rational a = lo, b = hi;
    for (;;) {
      bisect(a, b);
      e = poly::eval_interval(q, a, b);
      if (sgn(e.lo) > 0) return 1;
      if (sgn(e.hi) < 0) return -1;
    }
  }

  /// Enclosure of q(beta) of width < `width`.
  poly::Interval enclose(const poly::Poly& q, const Rational& width) const {
    if (q.empty()) return {0, 0};
    if (exact_root()) {
      Rational v = poly::eval(q, lo);
      return {v, v};
    }
    Rational a = lo, b = hi;
    for (;;) {
      auto e = poly::eval_interval(q, a, b);
      if (e.hi - e.lo < width) return e;
      bisect(a, b);
    }
  }

  poly::Poly mul(const poly::Poly& a, const poly::Poly& b) const { return reduce(poly::mul(a, b)); }

  poly::Poly inverse(const poly::Poly& q) const {
    if (sign(q) == 0) throw Error(ErrorKind::DivisionByZero, "division by a value equal to zero");
    if (q.size() == 1) return poly::constant(Rational(1) / q[0]);
    // Strip the factors of p shared with q; beta stays a root of what is left.
    poly::Poly f = char_poly;
    for (;;) {
      poly::Poly g = poly::gcd(f, q);
      if (poly::degree(g) < 1) break;
      f = poly::divmod(f, g).first;
    }
    return reduce(poly::inverse_mod(q, f));
  }

  int d1_digit(std::size_t i) const;
};

}  // namespace detail

/// A real beta > 1 together with the exact arithmetic of Q(beta).
class BetaContext {
 public:
  BetaContext() = default;

  ContextKind kind() const { return data_->kind; }
  ExpansionShape shape() const { return data_->shape; }
  /// Normalized d(1, beta); meaningful for digit contexts and integral rationals.
  const DigitSpec& digits() const { return data_->digits; }
  int alphabet_size() const { return data_->alphabet_size; }
  const Rational& rational_value() const { return data_->rational_value; }
  const poly::Poly& char_poly() const { return data_->char_poly; }
  int degree() const { return data_->degree(); }
  poly::Interval isolating_interval() const { return {data_->lo, data_->hi}; }
  /// Canonical beta-spec string of this context.
  const std::string& spec() const { return data_->spec; }

  /// i-th digit (1-based) of the greedy expansion d(1, beta).
  int d1_digit(std::size_t i) const { return data_->d1_digit(i); }

  /// i-th digit (1-based) of the quasi-greedy supremum sequence xi_beta.
  int xi_digit(std::size_t i) const {
    if (data_->shape == ExpansionShape::Finite) {
      const auto& d = data_->digits.preperiod;
      std::size_t k = d.size();
      std::size_t pos = (i - 1) % k;
      return pos + 1 == k ? d[pos] - 1 : d[pos];
    }
    return data_->d1_digit(i);
  }

  BetaNumber zero() const;
  BetaNumber one() const;
  BetaNumber beta() const;
  BetaNumber number(const Rational& value) const;
  BetaNumber number(long value) const;
  BetaNumber from_poly(poly::Poly coeffs) const;
  /// beta^k for any integer k.
  BetaNumber beta_pow(long k) const;

  friend bool operator==(const BetaContext& a, const BetaContext& b) { return a.data_ == b.data_; }

 private:
  explicit BetaContext(std::shared_ptr<const detail::ContextData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::ContextData> data_;

  friend class BetaNumber;
  friend BetaContext detail::build_context(std::string_view spec);
  friend BetaContext make_context(std::string_view spec);
};

/// An exact element of Q(beta).
class BetaNumber {
 public:
  BetaNumber() = default;

  BetaContext context() const { return BetaContext(ctx_); }
  /// Coefficients (low degree first) of the reduced representative.
  const poly::Poly& coeffs() const { return coeffs_; }
  bool valid() const { return ctx_ != nullptr; }

  int sign() const { return ctx_->sign(coeffs_); }
  bool is_zero() const { return sign() == 0; }

  BetaNumber operator-() const { return BetaNumber(ctx_, poly::scale(coeffs_, Rational(-1))); }

  friend BetaNumber operator+(const BetaNumber& a, const BetaNumber& b) {
    check_same(a, b);
    return BetaNumber(a.ctx_, poly::add(a.coeffs_, b.coeffs_));
  }
  friend BetaNumber operator-(const BetaNumber& a, const BetaNumber& b) {
    check_same(a, b);
    return BetaNumber(a.ctx_, poly::sub(a.coeffs_, b.coeffs_));
  }
  friend BetaNumber operator*(const BetaNumber& a, const BetaNumber& b) {
    check_same(a, b);
    return BetaNumber(a.ctx_, a.ctx_->mul(a.coeffs_, b.coeffs_));
  }
  friend BetaNumber operator/(const BetaNumber& a, const BetaNumber& b) {
    check_same(a, b);
    return BetaNumber(a.ctx_, a.ctx_->mul(a.coeffs_, a.ctx_->inverse(b.coeffs_)));
  }
  friend BetaNumber operator*(const BetaNumber& a, const Rational& c) {
    return BetaNumber(a.ctx_, poly::scale(a.coeffs_, c));
  }
  friend BetaNumber operator*(const Rational& c, const BetaNumber& a) { return a * c; }
  friend BetaNumber operator+(const BetaNumber& a, const Rational& c) {
    return BetaNumber(a.ctx_, poly::add(a.coeffs_, poly::constant(c)));
  }
  friend BetaNumber operator-(const BetaNumber& a, const Rational& c) {
    return BetaNumber(a.ctx_, poly::sub(a.coeffs_, poly::constant(c)));
  }

  BetaNumber& operator+=(const BetaNumber& b) { return *this = *this + b; }
  BetaNumber& operator-=(const BetaNumber& b) { return *this = *this - b; }
  BetaNumber& operator*=(const BetaNumber& b) { return *this = *this * b; }

  /// Multiply by beta^k.
  BetaNumber times_beta_pow(long k) const;

  friend std::strong_ordering compare(const BetaNumber& a, const BetaNumber& b) {
    check_same(a, b);
    int s = a.ctx_->sign(poly::sub(a.coeffs_, b.coeffs_));
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::strong_ordering operator<=>(const BetaNumber& a, const BetaNumber& b) { return compare(a, b); }
  friend bool operator==(const BetaNumber& a, const BetaNumber& b) { return compare(a, b) == 0; }

  /// Correctly rounded (half up) decimal with `places` fractional digits.
  std::string to_decimal(int places) const;

  /// floor of the value, exact.
  Integer floor() const;

 private:
  BetaNumber(std::shared_ptr<const detail::ContextData> c, poly::Poly q) : ctx_(std::move(c)), coeffs_(std::move(q)) {
    coeffs_ = ctx_->reduce(coeffs_);
  }

  static void check_same(const BetaNumber& a, const BetaNumber& b) {
    if (a.ctx_ != b.ctx_ || a.ctx_ == nullptr)
      throw Error(ErrorKind::ContextMismatch, "operands belong to different beta contexts");
  }

  std::shared_ptr<const detail::ContextData> ctx_;
  poly::Poly coeffs_;

  friend class BetaContext;
};

std::string to_decimal(const BetaNumber& a, int places);

// ---------------------------------------------------------------------------

inline BetaNumber BetaContext::zero() const { return BetaNumber(data_, {}); }
inline BetaNumber BetaContext::one() const { return number(1L); }
inline BetaNumber BetaContext::beta() const {
  if (degree() == 1) return number(-data_->char_poly[0]);
  return BetaNumber(data_, {Rational(0), Rational(1)});
}
inline BetaNumber BetaContext::number(const Rational& value) const { return BetaNumber(data_, poly::constant(value)); }
inline BetaNumber BetaContext::number(long value) const { return number(Rational(value)); }
inline BetaNumber BetaContext::from_poly(poly::Poly coeffs) const {
  poly::trim(coeffs);
  return BetaNumber(data_, std::move(coeffs));
}
inline BetaNumber BetaContext::beta_pow(long k) const { return one().times_beta_pow(k); }

inline BetaNumber BetaNumber::times_beta_pow(long k) const {
  poly::Poly factor = k >= 0 ? BetaContext(ctx_).beta().coeffs_ : ctx_->inv_beta;
  poly::Poly acc = coeffs_;
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) acc = ctx_->mul(acc, factor);
  return BetaNumber(ctx_, std::move(acc));
}

inline Integer BetaNumber::floor() const {
  auto e = ctx_->enclose(coeffs_, Rational(1, 2));
  Integer a, b;
  mpz_fdiv_q(a.get_mpz_t(), e.lo.get_num_mpz_t(), e.lo.get_den_mpz_t());
  mpz_fdiv_q(b.get_mpz_t(), e.hi.get_num_mpz_t(), e.hi.get_den_mpz_t());
  if (a == b) return a;
  // The enclosure straddles the integer b.
  return ctx_->sign(poly::sub(coeffs_, poly::constant(Rational(b)))) >= 0 ? b : a;
}

inline std::string BetaNumber::to_decimal(int places) const {
  if (places < 0) places = 0;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(places));
  BetaNumber shifted = *this * Rational(ten_pow) + Rational(1, 2);
  Integer m = shifted.floor();
  bool negative = m < 0;
  Integer mag = negative ? Integer(-m) : m;
  std::string digits = mag.get_str();
  if (digits.size() <= static_cast<std::size_t>(places))
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  if (places > 0) digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return negative ? "-" + digits : digits;
}

inline std::string to_decimal(const BetaNumber& a, int places) { return a.to_decimal(places); }

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Context construction.

namespace detail {

inline int ContextData::d1_digit(std::size_t i) const {
  if (i == 0) throw Error(ErrorKind::OutOfRange, "digit positions are 1-based");
  if (shape != ExpansionShape::Aperiodic) {
    const auto& pre = digits.preperiod;
    if (i <= pre.size()) return pre[i - 1];
    if (digits.period.empty()) return 0;
    return digits.period[(i - pre.size() - 1) % digits.period.size()];
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  while (digit_cache.size() < i) {
    Rational y = orbit_tail * rational_value;
    Integer d;
    mpz_fdiv_q(d.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    digit_cache.push_back(static_cast<int>(d.get_si()));
    orbit_tail = y - Rational(d);
  }
  return digit_cache[i - 1];
}

inline std::vector<int> parse_digit_list(std::string_view s, std::string_view whole) {
  std::vector<int> out;
  if (s.empty()) throw Error(ErrorKind::Parse, "empty digit list in '" + std::string(whole) + "'");
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = s.find(',', pos);
    std::string_view tok = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v < 0)
      throw Error(ErrorKind::Parse, "bad digit '" + std::string(tok) + "' in '" + std::string(whole) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Minimal period, then minimal preperiod; a zero period makes the
/// expansion finite; trailing zeros of a finite expansion are trimmed.
inline DigitSpec normalize(DigitSpec d) {
  if (!d.period.empty()) {
    auto& per = d.period;
    for (std::size_t p = 1; p <= per.size(); ++p) {
      if (per.size() % p != 0) continue;
      bool ok = true;
      for (std::size_t i = p; i < per.size() && ok; ++i) ok = per[i] == per[i - p];
      if (ok) {
        per.resize(p);
        break;
      }
    }
    while (!d.preperiod.empty() && d.preperiod.back() == per.back()) {
      d.preperiod.pop_back();
      std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
    }
    if (std::all_of(per.begin(), per.end(), [](int v) { return v == 0; })) per.clear();
  }
  if (d.period.empty())
    while (!d.preperiod.empty() && d.preperiod.back() == 0) d.preperiod.pop_back();
  return d;
}

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

inline std::string spec_string(const DigitSpec& d) {
  std::string s = "digits=" + join(d.preperiod);
  if (!d.period.empty()) s += (d.preperiod.empty() ? "(" : ",(") + join(d.period) + ")";
  return s;
}

/// x^n - xi_1 x^{n-1} - ... - xi_n  for the first n digits of `seq`.
inline poly::Poly residual_poly(const std::vector<int>& seq, std::size_t n) {
  poly::Poly p(n + 1);
  p[n] = 1;
  for (std::size_t i = 1; i <= n; ++i) p[n - i] -= seq[i - 1];
  poly::trim(p);
  return p;
}

/// Integer polynomial vanishing at beta, built from d(1, beta).
inline poly::Poly digit_polynomial(const DigitSpec& d) {
  std::vector<int> all = d.preperiod;
  all.insert(all.end(), d.period.begin(), d.period.end());
  poly::Poly full = residual_poly(all, all.size());
  if (d.period.empty()) return full;
  return poly::sub(full, residual_poly(all, d.preperiod.size()));
}

}  // namespace detail

/// Builds a validated context from a beta-spec string:
///   digits=<d>(,<d>)*                 finite d(1, beta)
///   digits=<d>(,<d>)*,(<d>(,<d>)*)    ultimately periodic d(1, beta)
///   rational=<p>/<q>                  exact rational beta
namespace detail {

inline BetaContext build_context(std::string_view spec) {
  auto data = std::make_shared<detail::ContextData>();
  if (spec.rfind("rational=", 0) == 0) {
    std::string body(spec.substr(9));
    auto slash = body.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == body.size())
      throw Error(ErrorKind::Parse, "expected rational=<p>/<q>, got '" + std::string(spec) + "'");
    for (std::size_t i = 0; i < body.size(); ++i)
      if (i != slash && !(body[i] >= '0' && body[i] <= '9') && !(i == 0 && body[i] == '-'))
        throw Error(ErrorKind::Parse, "bad rational '" + body + "'");
    Integer num(body.substr(0, slash)), den(body.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(spec) + "'");
    Rational r(num, den);
    r.canonicalize();
    if (r <= 1) throw Error(ErrorKind::BetaOutOfRange, "beta must exceed 1, got " + r.get_str());
    data->kind = ContextKind::ExactRational;
    data->rational_value = r;
    Integer ceil_r;
    mpz_cdiv_q(ceil_r.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    data->alphabet_size = static_cast<int>(ceil_r.get_si());
    data->char_poly = {Rational(-r), Rational(1)};
    data->lo = data->hi = r;
    if (r.get_den() == 1) {
      data->shape = ExpansionShape::Finite;
      data->digits.preperiod = {data->alphabet_size};
    } else {
      data->shape = ExpansionShape::Aperiodic;
    }
    data->spec = "rational=" + r.get_num().get_str() + "/" + r.get_den().get_str();
  } else if (spec.rfind("digits=", 0) == 0) {
    std::string_view body = spec.substr(7);
    DigitSpec d;
    auto open = body.find('(');
    if (open == std::string_view::npos) {
      d.preperiod = detail::parse_digit_list(body, spec);
    } else {
      if (open == 0 || body[open - 1] != ',' || body.back() != ')' || body.find('(', open + 1) != std::string_view::npos)
        throw Error(ErrorKind::Parse, "period must be a final parenthesized group: '" + std::string(spec) + "'");
      d.preperiod = detail::parse_digit_list(body.substr(0, open - 1), spec);
      d.period = detail::parse_digit_list(body.substr(open + 1, body.size() - open - 2), spec);
    }
    d = detail::normalize(std::move(d));
    if (d.preperiod.empty() && d.period.empty())
      throw Error(ErrorKind::BetaOutOfRange, "the zero expansion does not define beta > 1");
    data->kind = ContextKind::AlgebraicDigits;
    data->shape = d.finite() ? ExpansionShape::Finite : ExpansionShape::Periodic;
    const bool integral = d.finite() && d.preperiod.size() == 1;
    int lead = d.preperiod.empty() ? d.period.front() : d.preperiod.front();
    data->alphabet_size = integral ? lead : lead + 1;
    if (integral && lead < 2) throw Error(ErrorKind::BetaOutOfRange, "digits=" + std::to_string(lead) + " gives beta <= 1");
    if (lead == 0) throw Error(ErrorKind::BetaOutOfRange, "leading digit 0 gives beta <= 1");
    for (int v : d.preperiod)
      if (v >= data->alphabet_size && !integral)
        throw Error(ErrorKind::NotParryAdmissible, "digit " + std::to_string(v) + " exceeds the leading digit");
    for (int v : d.period)
      if (v >= data->alphabet_size)
        throw Error(ErrorKind::NotParryAdmissible, "digit " + std::to_string(v) + " exceeds the leading digit");
    data->digits = d;
    data->char_poly = poly::monic(detail::digit_polynomial(d));
    data->spec = detail::spec_string(d);
    data->square_free = poly::square_free_part(data->char_poly);
    data->sturm = poly::sturm_sequence(data->square_free);
    if (poly::degree(data->char_poly) == 1) {
      data->lo = data->hi = -data->char_poly[0];
      if (data->lo <= 1) throw Error(ErrorKind::BetaOutOfRange, "beta must exceed 1");
    } else {
      Rational bound = 1;
      for (const auto& c : data->char_poly) bound = std::max(bound, Rational(abs(c) + 1));
      int roots = poly::count_roots(data->sturm, Rational(1), bound);
      if (roots == 0) throw Error(ErrorKind::BetaOutOfRange, "no root greater than 1 for " + data->spec);
      if (roots > 1)
        throw Error(ErrorKind::InternalInvariantViolation, "digit polynomial has several roots above 1");
      data->lo = 1;
      data->hi = bound;
      Rational width = Rational(1, 1) / Rational(Integer(1) << 64);
      while (data->hi - data->lo > width) data->bisect(data->lo, data->hi);
    }
  } else {
    throw Error(ErrorKind::Parse, "beta spec must start with digits= or rational=: '" + std::string(spec) + "'");
  }

  const auto& cp = data->char_poly;
  if (cp.size() == 2) {
    data->inv_beta = poly::constant(Rational(1) / (-cp[0]));
  } else {
    data->inv_beta = data->inverse({Rational(0), Rational(1)});
  }

  BetaContext ctx{std::shared_ptr<const detail::ContextData>(data)};

  if (ctx.kind() == ContextKind::AlgebraicDigits) {
    const int n = ctx.alphabet_size();
    BetaNumber b = ctx.beta();
    if (!(b > ctx.number(long(n - 1)) && b <= ctx.number(long(n))))
      throw Error(ErrorKind::NotParryAdmissible, "beta is not in (N-1, N] for " + ctx.spec());
    // Greedy re-expansion of 1 must reproduce the digits.
    const auto& d = ctx.digits();
    std::size_t check = d.preperiod.size() + 2 * d.period.size();
    BetaNumber x = ctx.one();
    for (std::size_t i = 1; i <= check; ++i) {
      BetaNumber y = x * b;
      Integer digit = y.floor();
      if (digit != ctx.d1_digit(i))
        throw Error(ErrorKind::NotParryAdmissible,
                    "greedy expansion of 1 differs at position " + std::to_string(i) + " for " + ctx.spec());
      x = y - Rational(digit);
    }
    if (d.finite() && !x.is_zero())
      throw Error(ErrorKind::NotParryAdmissible, "expansion of 1 does not terminate for " + ctx.spec());
  }
  return ctx;
}

}  // namespace detail

/// Contexts are interned by canonical spec, so equal betas share one
/// context and their numbers mix freely.
inline BetaContext make_context(std::string_view spec) {
  static std::mutex mu;
  static std::map<std::string, std::weak_ptr<const detail::ContextData>> cache;
  BetaContext fresh = detail::build_context(spec);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[fresh.spec()];
  if (auto existing = slot.lock()) return BetaContext(existing);
  slot = fresh.data_;
  return fresh;
}

}  // namespace betafull
