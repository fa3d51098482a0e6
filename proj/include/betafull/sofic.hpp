#pragma once

// Finite presentation of sofic (and SFT) beta-shifts.
//
// The minimal projections E_1..E_K of the follower algebra are realized as
// value intervals (t_{i-1}, t_i] cut out by the distinct numbers beta_j.
// Conjugation by the generator of letter a acts on intervals as
// t -> beta*t - a, which yields the labeled graph, its matrices, and from
// there the K-theory and the Higman-Thompson classification.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "betafull/error.hpp"
#include "betafull/number.hpp"
#include "betafull/shift.hpp"

namespace betafull {

/// Exact classification straight from the context: digit contexts are
/// resolved by their normalized expansion, rationals by integrality.
inline ShiftClass context_class(const BetaContext& ctx) {
  switch (ctx.shape()) {
    case ExpansionShape::Finite:
      return ShiftClass::sft(static_cast<int>(ctx.digits().preperiod.size()));
    case ExpansionShape::Periodic: {
      int l = static_cast<int>(ctx.digits().preperiod.size());
      return ShiftClass::sofic(l, l + static_cast<int>(ctx.digits().period.size()) - 1);
    }
    case ExpansionShape::Aperiodic:
      break;
  }
  return ShiftClass::unknown(0);
}

inline void require_sofic(const BetaContext& ctx) {
  if (ctx.shape() == ExpansionShape::Aperiodic)
    throw Error(ErrorKind::NotSofic, "beta-shift for " + ctx.spec() + " is not sofic");
}

struct Projection {
  BetaNumber lower;  // t_{i-1}
  BetaNumber upper;  // t_i
  int p = 0;                 // beta_p = upper
  std::optional<int> q;      // beta_q = lower; none when lower is 0 and no beta_j vanishes
};

struct ProjectionSystem {
  std::vector<BetaNumber> values;  // 0 = t_0 < ... < t_K = 1
  std::vector<Projection> projections;

  int size() const { return static_cast<int>(projections.size()); }
};

inline ProjectionSystem projection_system(const BetaContext& ctx) {
  require_sofic(ctx);
  ShiftClass c = context_class(ctx);
  int last = c.kind == ShiftClass::Kind::SFT ? c.k : c.k_beta;
  struct Entry {
    BetaNumber value;
    int index;
  };
  std::vector<Entry> entries;
  for (int j = 0; j <= last; ++j) {
    BetaNumber v = beta_n(ctx, j);
    bool dup = std::any_of(entries.begin(), entries.end(), [&](const Entry& e) { return e.value == v; });
    if (!dup) entries.push_back({v, j});
  }
  bool has_zero = std::any_of(entries.begin(), entries.end(), [](const Entry& e) { return e.value.is_zero(); });
  if (!has_zero) entries.push_back({ctx.zero(), -1});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });

  ProjectionSystem ps;
  for (const auto& e : entries) ps.values.push_back(e.value);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    Projection pr{entries[i - 1].value, entries[i].value, entries[i].index, std::nullopt};
    if (entries[i - 1].index >= 0) pr.q = entries[i - 1].index;
    ps.projections.push_back(pr);
  }
  return ps;
}

struct Edge {
  int source = 0;  // 1-based vertex
  int label = 0;
  int target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct LabeledGraph {
  int vertices = 0;
  std::vector<Edge> edges;  // sorted by (source, label, target)

  std::vector<Edge> out_edges(int v) const {
    std::vector<Edge> out;
    for (const auto& e : edges)
      if (e.source == v) out.push_back(e);
    return out;
  }

  /// At most one edge per (label, target).
  bool left_resolving() const {
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i + 1; j < edges.size(); ++j)
        if (edges[i].label == edges[j].label && edges[i].target == edges[j].target) return false;
    return true;
  }
};

/// Graph of a projection system: edge (i, a, j) iff E_j lies inside the
/// image of E_i under t -> beta*t - a.
inline LabeledGraph build_graph(const BetaContext& ctx, const ProjectionSystem& ps) {
  LabeledGraph g;
  g.vertices = ps.size();
  BetaNumber b = ctx.beta();
  for (int i = 1; i <= ps.size(); ++i) {
    const auto& src = ps.projections[static_cast<std::size_t>(i - 1)];
    for (int a = 0; a < ctx.alphabet_size(); ++a) {
      BetaNumber lo = src.lower * b - Rational(a);
      BetaNumber hi = src.upper * b - Rational(a);
      for (int j = 1; j <= ps.size(); ++j) {
        const auto& dst = ps.projections[static_cast<std::size_t>(j - 1)];
        bool inside = lo <= dst.lower && dst.upper <= hi;
        bool disjoint = hi <= dst.lower || dst.upper <= lo;
        if (inside)
          g.edges.push_back({i, a, j});
        else if (!disjoint)
          throw Error(ErrorKind::InternalInvariantViolation, "projection image cuts a minimal projection");
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (!g.left_resolving()) throw Error(ErrorKind::InternalInvariantViolation, "graph is not left-resolving");
  for (int v = 1; v <= g.vertices; ++v)
    if (g.out_edges(v).empty()) throw Error(ErrorKind::InternalInvariantViolation, "vertex without outgoing edge");
  return g;
}

inline LabeledGraph build_graph(const BetaContext& ctx) { return build_graph(ctx, projection_system(ctx)); }

// ---------------------------------------------------------------------------
// Matrices.

using IntMatrix = std::vector<std::vector<long>>;

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  IntMatrix c(n, std::vector<long>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

/// Fraction-free Gaussian elimination (Bareiss).
inline Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline IntMatrix identity_minus(const IntMatrix& m) {
  IntMatrix r(m);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] = (i == j ? 1 : 0) - m[i][j];
  return r;
}

struct MatrixSet {
  IntMatrix M;  // K x K edge counts
  IntMatrix B;  // |E| x |E| edge adjacency
  IntMatrix R;  // |E| x K, terminal vertex
  IntMatrix S;  // K x |E|, source vertex
  IntMatrix L;  // companion matrix of the eta polynomial
  std::vector<long> eta;

  long eta_sum() const {
    long s = 0;
    for (long e : eta) s += e;
    return s;
  }
};

/// eta_1..eta_n with det(t - L) = t^n - eta_1 t^{n-1} - ... - eta_n.
/// For a finite expansion eta is d(1, beta); for a periodic one it comes
/// from expanding beta^{k+1} - sum xi_i beta^{k+1-i} = beta^l - sum_{i<=l} xi_i beta^{l-i}.
inline std::vector<long> eta_coefficients(const BetaContext& ctx) {
  require_sofic(ctx);
  const auto& d = ctx.digits();
  std::vector<long> eta;
  if (d.finite()) {
    for (int v : d.preperiod) eta.push_back(v);
    return eta;
  }
  std::size_t l = d.preperiod.size(), n = l + d.period.size();
  std::vector<long> coeff(n + 1, 0);  // coeff[i] multiplies beta^{n-i}
  coeff[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) coeff[i] -= ctx.d1_digit(i);
  // subtract beta^l - sum_{i<=l} xi_i beta^{l-i}
  coeff[n - l] -= 1;
  for (std::size_t i = 1; i <= l; ++i) coeff[n - l + i] += ctx.d1_digit(i);
  for (std::size_t i = 1; i <= n; ++i) eta.push_back(-coeff[i]);
  return eta;
}

inline IntMatrix companion(const std::vector<long>& eta) {
  std::size_t n = eta.size();
  IntMatrix L(n, std::vector<long>(n, 0));
  for (std::size_t j = 0; j < n; ++j) L[0][j] = eta[j];
  for (std::size_t i = 1; i < n; ++i) L[i][i - 1] = 1;
  return L;
}

inline MatrixSet matrices(const BetaContext& ctx, const LabeledGraph& g) {
  MatrixSet ms;
  const std::size_t K = static_cast<std::size_t>(g.vertices), E = g.edges.size();
  ms.M.assign(K, std::vector<long>(K, 0));
  for (const auto& e : g.edges) ms.M[e.source - 1][e.target - 1] += 1;
  ms.B.assign(E, std::vector<long>(E, 0));
  ms.R.assign(E, std::vector<long>(K, 0));
  ms.S.assign(K, std::vector<long>(E, 0));
  for (std::size_t e = 0; e < E; ++e) {
    for (std::size_t f = 0; f < E; ++f) ms.B[e][f] = g.edges[e].target == g.edges[f].source ? 1 : 0;
    ms.R[e][g.edges[e].target - 1] = 1;
    ms.S[g.edges[e].source - 1][e] = 1;
  }
  ms.eta = eta_coefficients(ctx);
  ms.L = companion(ms.eta);

  if (matmul(ms.R, ms.S) != ms.B) throw Error(ErrorKind::InternalInvariantViolation, "B != RS");
  if (matmul(ms.S, ms.R) != ms.M) throw Error(ErrorKind::InternalInvariantViolation, "M != SR");
  Integer expected = 1 - ms.eta_sum();
  Integer dm = determinant(identity_minus(ms.M));
  Integer db = determinant(identity_minus(ms.B));
  Integer dl = determinant(identity_minus(ms.L));
  if (dm != expected || db != expected || dl != expected)
    throw Error(ErrorKind::InternalInvariantViolation,
                "determinant identity failed: det(I-M)=" + dm.get_str() + " det(I-B)=" + db.get_str() +
                    " det(I-L)=" + dl.get_str() + " 1-sum(eta)=" + expected.get_str());
  return ms;
}

inline MatrixSet matrices(const BetaContext& ctx) { return matrices(ctx, build_graph(ctx)); }

// ---------------------------------------------------------------------------
// K-theory and group classification.

struct K0Result {
  enum class Kind { Cyclic, FreeZ };
  Kind kind = Kind::FreeZ;
  long order = 0;               // Cyclic: Z/order, order 1 is the trivial group
  bool depth_conditional = false;  // FreeZ reached only by exhausting the scan depth

  friend bool operator==(const K0Result&, const K0Result&) = default;
};

inline long digit_sum(const BetaContext& ctx, int from, int to) {
  long s = 0;
  for (int i = from; i <= to; ++i) s += ctx.d1_digit(static_cast<std::size_t>(i));
  return s;
}

inline K0Result k0_group(const BetaContext& ctx, int depth) {
  ShiftClass c = classify_shift(ctx, depth);
  switch (c.kind) {
    case ShiftClass::Kind::SFT:
      return {K0Result::Kind::Cyclic, digit_sum(ctx, 1, c.k) - 1, false};
    case ShiftClass::Kind::Sofic:
      return {K0Result::Kind::Cyclic, digit_sum(ctx, c.l + 1, c.k_beta + 1), false};
    case ShiftClass::Kind::NotSoficUpTo:
      break;
  }
  return {K0Result::Kind::FreeZ, 0, !denominator_growth_certificate(ctx, depth)};
}

struct Homology {
  K0Result h0;  // H_1 and H_i, i >= 2, vanish
};

inline Homology homology(const BetaContext& ctx, int depth) { return {k0_group(ctx, depth)}; }

struct GroupClass {
  enum class Kind { HigmanThompson, NotHigmanThompson, Unknown };
  Kind kind = Kind::Unknown;
  long n = 0;     // HigmanThompson: V_n
  int depth = 0;  // Unknown

  friend bool operator==(const GroupClass&, const GroupClass&) = default;
};

inline GroupClass group_class(const BetaContext& ctx, int depth) {
  ShiftClass c = classify_shift(ctx, depth);
  switch (c.kind) {
    case ShiftClass::Kind::SFT:
      return {GroupClass::Kind::HigmanThompson, digit_sum(ctx, 1, c.k), 0};
    case ShiftClass::Kind::Sofic:
      return {GroupClass::Kind::HigmanThompson, digit_sum(ctx, c.l + 1, c.k_beta + 1) + 1, 0};
    case ShiftClass::Kind::NotSoficUpTo:
      break;
  }
  if (denominator_growth_certificate(ctx, depth)) return {GroupClass::Kind::NotHigmanThompson, 0, 0};
  return {GroupClass::Kind::Unknown, 0, depth};
}

enum class Tristate { Yes, No, Unknown };

inline Tristate is_isomorphic(const BetaContext& a, const BetaContext& b, int depth) {
  GroupClass ga = group_class(a, depth), gb = group_class(b, depth);
  using K = GroupClass::Kind;
  if (ga.kind == K::Unknown || gb.kind == K::Unknown) return Tristate::Unknown;
  if (ga.kind == K::HigmanThompson && gb.kind == K::HigmanThompson) return ga.n == gb.n ? Tristate::Yes : Tristate::No;
  if (ga.kind != gb.kind) return Tristate::No;
  // Two non-sofic shifts: not decided by these invariants.
  return Tristate::Unknown;
}

// ---------------------------------------------------------------------------
// Recoding an SFT beta-shift as a full shift.

/// Generator words T_1..T_{sum eta}: eta_1..eta_{m-1} followed by a letter
/// below eta_m.  Their cylinders tile [0, 1) exactly (checked).
inline std::vector<Word> recode_generators(const BetaContext& ctx) {
  if (ctx.shape() != ExpansionShape::Finite)
    throw Error(ErrorKind::NotSFT, "generator recoding needs a finite expansion of 1");
  const auto& eta = ctx.digits().preperiod;
  std::vector<Word> out;
  Word head;
  for (int m : eta) {
    for (int i = 0; i < m; ++i) out.push_back(head.append(i));
    head = head.append(m);
  }
  BetaNumber cursor = ctx.zero();
  for (const auto& w : out) {
    if (l_value(ctx, w) != cursor)
      throw Error(ErrorKind::InternalInvariantViolation, "generator cylinders leave a gap at " + format_word(w));
    cursor = r_value(ctx, w);
  }
  if (cursor != ctx.one()) throw Error(ErrorKind::InternalInvariantViolation, "generator cylinders do not reach 1");
  return out;
}

/// Splits an admissible word into generator words plus a tail that is a
/// proper prefix of some generator.  Returns generator indices (0-based).
struct Recoding {
  std::vector<std::size_t> generators;
  Word tail;
};

inline Recoding recode_word(const BetaContext& ctx, const Word& w) {
  auto gens = recode_generators(ctx);
  require_admissible(ctx, w);
  Recoding rec;
  std::size_t pos = 0;
  while (pos < w.size()) {
    bool found = false;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto& gw = gens[g];
      if (pos + gw.size() <= w.size() && std::equal(gw.letters.begin(), gw.letters.end(), w.letters.begin() + static_cast<long>(pos))) {
        rec.generators.push_back(g);
        pos += gw.size();
        found = true;
        break;
      }
    }
    if (!found) {
      rec.tail = Word(std::vector<int>(w.letters.begin() + static_cast<long>(pos), w.letters.end()));
      break;
    }
  }
  return rec;
}

}  // namespace betafull
