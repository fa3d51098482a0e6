#pragma once

// The beta-shift X_beta: greedy expansions, the supremum sequence xi_beta,
// admissible words and their cylinder intervals [l(w), r(w)), the KMS
// values phi(a_w) and follower classes, and the SFT / sofic classification.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "betafull/error.hpp"
#include "betafull/number.hpp"

namespace betafull {

/// A finite word over the alphabet {0, ..., N-1}, leftmost letter first.
struct Word {
  std::vector<int> letters;

  Word() = default;
  Word(std::initializer_list<int> l) : letters(l) {}
  explicit Word(std::vector<int> l) : letters(std::move(l)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  int operator[](std::size_t i) const { return letters[i]; }

  Word append(int c) const {
    Word w(*this);
    w.letters.push_back(c);
    return w;
  }
  Word concat(const Word& other) const {
    Word w(*this);
    w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
    return w;
  }

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;
};

/// "1,0,1"; the empty word is "".
inline std::string format_word(const Word& w) { return detail::join(w.letters); }

inline Word parse_word(std::string_view s) {
  if (s.empty()) return {};
  return Word(detail::parse_digit_list(s, s));
}

struct Expansion {
  std::vector<int> digits;
  BetaNumber remainder;  // x = sum d_i beta^-i + remainder * beta^-n
};

/// Greedy expansion of x in [0, 1]: d_n = floor(beta f_beta^{n-1}(x)).
inline Expansion expand(const BetaContext& ctx, const BetaNumber& x, int n) {
  if (x < ctx.zero() || x > ctx.one()) throw Error(ErrorKind::OutOfRange, "expansion needs 0 <= x <= 1");
  if (n < 1) throw Error(ErrorKind::OutOfRange, "expansion length must be >= 1");
  Expansion e;
  BetaNumber b = ctx.beta();
  BetaNumber r = x;
  for (int i = 0; i < n; ++i) {
    BetaNumber y = r * b;
    Integer d = y.floor();
    e.digits.push_back(static_cast<int>(d.get_si()));
    r = y - Rational(d);
  }
  e.remainder = r;
  return e;
}

inline std::vector<int> beta_expand(const BetaContext& ctx, const BetaNumber& x, int n) {
  return expand(ctx, x, n).digits;
}

/// First n digits of xi_beta.
inline std::vector<int> xi_beta(const BetaContext& ctx, int n) {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i) out.push_back(ctx.xi_digit(static_cast<std::size_t>(i)));
  return out;
}

inline void check_letters(const BetaContext& ctx, const Word& w) {
  for (int c : w.letters)
    if (c < 0 || c >= ctx.alphabet_size())
      throw Error(ErrorKind::LetterOutOfRange,
                  "letter " + std::to_string(c) + " outside 0.." + std::to_string(ctx.alphabet_size() - 1));
}

/// Compares w[from..] with the prefix of xi_beta of the same length.
inline int compare_with_xi(const BetaContext& ctx, const Word& w, std::size_t from) {
  for (std::size_t i = from; i < w.size(); ++i) {
    int x = ctx.xi_digit(i - from + 1);
    if (w[i] != x) return w[i] < x ? -1 : 1;
  }
  return 0;
}

/// Every shifted suffix of w is lexicographically <= xi_beta.
inline bool is_admissible(const BetaContext& ctx, const Word& w) {
  check_letters(ctx, w);
  for (std::size_t m = 0; m < w.size(); ++m)
    if (compare_with_xi(ctx, w, m) > 0) return false;
  return true;
}

inline void require_admissible(const BetaContext& ctx, const Word& w) {
  if (!is_admissible(ctx, w)) throw Error(ErrorKind::NotAdmissible, "word '" + format_word(w) + "' is not admissible");
}

namespace detail {

// w admissible; is w.c admissible?  Only suffixes ending at c need checking.
inline bool extends(const BetaContext& ctx, const Word& w, int c) {
  Word x = w.append(c);
  for (std::size_t m = 0; m < x.size(); ++m)
    if (compare_with_xi(ctx, x, m) > 0) return false;
  return true;
}

inline void enumerate_into(const BetaContext& ctx, Word& prefix, std::size_t n, std::vector<Word>& out) {
  if (prefix.size() == n) {
    out.push_back(prefix);
    return;
  }
  for (int c = 0; c < ctx.alphabet_size(); ++c) {
    if (!extends(ctx, prefix, c)) break;  // admissibility is monotone in the last letter
    prefix.letters.push_back(c);
    enumerate_into(ctx, prefix, n, out);
    prefix.letters.pop_back();
  }
}

}  // namespace detail

/// B_n(X_beta) in lexicographic order.
inline std::vector<Word> enumerate_words(const BetaContext& ctx, int n) {
  std::vector<Word> out;
  if (n < 0) return out;
  Word prefix;
  detail::enumerate_into(ctx, prefix, static_cast<std::size_t>(n), out);
  return out;
}

/// Least admissible word of the same length strictly above w, or nullopt
/// when w is maximal.
inline std::optional<Word> successor(const BetaContext& ctx, const Word& w) {
  require_admissible(ctx, w);
  const std::size_t n = w.size();
  for (std::size_t j = n; j-- > 0;) {
    Word head(std::vector<int>(w.letters.begin(), w.letters.begin() + static_cast<long>(j)));
    for (int c = w[j] + 1; c < ctx.alphabet_size(); ++c) {
      if (!detail::extends(ctx, head, c)) break;
      Word next = head.append(c);
      next.letters.resize(n, 0);
      return next;
    }
  }
  return std::nullopt;
}

/// sum w_i beta^-i, no admissibility check.
inline BetaNumber word_value(const BetaContext& ctx, const Word& w) {
  BetaNumber acc = ctx.zero();
  for (std::size_t i = w.size(); i-- > 0;) acc = (acc + Rational(w[i])).times_beta_pow(-1);
  return acc;
}

inline BetaNumber l_value(const BetaContext& ctx, const Word& w) {
  require_admissible(ctx, w);
  return word_value(ctx, w);
}

inline BetaNumber r_value(const BetaContext& ctx, const Word& w) {
  auto next = successor(ctx, w);
  return next ? word_value(ctx, *next) : ctx.one();
}

/// beta_n = beta^n - xi_1 beta^{n-1} - ... - xi_n with the digits of d(1, beta); beta_0 = 1.
inline BetaNumber beta_n(const BetaContext& ctx, int n) {
  BetaNumber b = ctx.beta();
  BetaNumber acc = ctx.one();
  for (int i = 1; i <= n; ++i) acc = acc * b - Rational(ctx.d1_digit(static_cast<std::size_t>(i)));
  return acc;
}

/// Index j with a_w = a_{xi_1..xi_j} in terms of the quasi-greedy sequence,
/// by stripping prefixes forced to the unit.
inline std::size_t kms_raw_index(const BetaContext& ctx, const Word& w) {
  require_admissible(ctx, w);
  std::size_t start = 0;
  const std::size_t n = w.size();
  while (start < n) {
    std::size_t k = start;
    while (k < n && w[k] == ctx.xi_digit(k - start + 1)) ++k;
    if (k == n) return n - start;
    if (k + 1 == n) return 0;  // strict drop at the last letter
    start = k + 1;
  }
  return 0;
}

/// Canonical index: the least j whose beta_j equals phi(a_w).
inline std::size_t follower_index(const BetaContext& ctx, const Word& w) {
  std::size_t j = kms_raw_index(ctx, w);
  const auto& d = ctx.digits();
  switch (ctx.shape()) {
    case ExpansionShape::Finite:
      return j % d.preperiod.size();
    case ExpansionShape::Periodic: {
      std::size_t l = d.preperiod.size(), p = d.period.size();
      return j >= l + p ? l + (j - l) % p : j;
    }
    case ExpansionShape::Aperiodic:
      return j;
  }
  return j;
}

/// phi(a_w), the KMS weight of the follower projection of w.
inline BetaNumber kms_value(const BetaContext& ctx, const Word& w) {
  return beta_n(ctx, static_cast<int>(follower_index(ctx, w)));
}

/// Gamma^+(u) == Gamma^+(v).
inline bool follower_equal(const BetaContext& ctx, const Word& u, const Word& v) {
  return kms_value(ctx, u) == kms_value(ctx, v);
}

// ---------------------------------------------------------------------------

struct ShiftClass {
  enum class Kind { SFT, Sofic, NotSoficUpTo };
  Kind kind = Kind::NotSoficUpTo;
  int k = 0;       // SFT: beta_k = 0
  int l = 0;       // Sofic: beta_{k_beta+1} = beta_l
  int k_beta = 0;  // Sofic
  int depth = 0;   // NotSoficUpTo

  static ShiftClass sft(int k) { return {Kind::SFT, k, 0, 0, 0}; }
  static ShiftClass sofic(int l, int k_beta) { return {Kind::Sofic, 0, l, k_beta, 0}; }
  static ShiftClass unknown(int depth) { return {Kind::NotSoficUpTo, 0, 0, 0, depth}; }

  bool resolved() const { return kind != Kind::NotSoficUpTo; }
  friend bool operator==(const ShiftClass&, const ShiftClass&) = default;
};

/// Scans beta_1, beta_2, ... with exact equality tests.
inline ShiftClass classify_shift(const BetaContext& ctx, int depth) {
  if (depth < 1) throw Error(ErrorKind::OutOfRange, "depth must be >= 1");
  std::vector<BetaNumber> seen;
  BetaNumber b = ctx.beta();
  BetaNumber acc = ctx.one();
  for (int j = 1; j <= depth; ++j) {
    acc = acc * b - Rational(ctx.d1_digit(static_cast<std::size_t>(j)));
    if (acc.is_zero()) return ShiftClass::sft(j);
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] == acc) return ShiftClass::sofic(static_cast<int>(i) + 1, j - 1);
    seen.push_back(acc);
  }
  return ShiftClass::unknown(depth);
}

/// For rational beta = p/q in lowest terms with q > 1, beta_n has
/// denominator exactly q^n, so the orbit of 1 never repeats or vanishes.
/// Returns true iff that growth is observed for n = 1..depth.
inline bool denominator_growth_certificate(const BetaContext& ctx, int depth) {
  if (ctx.kind() != ContextKind::ExactRational) return false;
  const Rational& r = ctx.rational_value();
  if (r.get_den() == 1) return false;
  Integer qn = 1;
  for (int n = 1; n <= depth; ++n) {
    qn *= r.get_den();
    BetaNumber v = beta_n(ctx, n);
    Rational c = v.coeffs().empty() ? Rational(0) : v.coeffs()[0];
    if (c.get_den() != qn) return false;
  }
  return true;
}

}  // namespace betafull
