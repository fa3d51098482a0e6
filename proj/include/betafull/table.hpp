#pragma once

// Element calculus of the topological full group of a sofic (or SFT)
// beta-shift.  An element is a table of rows (top, bottom) of marked words
// nu_[i] sharing a class i; the row maps the bottom cylinder onto the top
// one by prefix replacement.  In the interval picture each row is an affine
// piece with slope beta^{|bottom|-|top|}, and the whole table is a
// right-continuous PL bijection of [0, 1).  Group equality is equality of
// canonical PL functions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "betafull/error.hpp"
#include "betafull/number.hpp"
#include "betafull/shift.hpp"
#include "betafull/sofic.hpp"

namespace betafull {

/// Context shared by all tables of one beta: the projection system and the
/// labeled graph driving cell refinement.
struct GroupContext {
  BetaContext beta;
  ProjectionSystem projections;
  LabeledGraph graph;
  std::vector<std::vector<Edge>> children;  // out-edges per vertex (index 0 unused), interval order

  int classes() const { return projections.size(); }
};

using GroupHandle = std::shared_ptr<const GroupContext>;

inline GroupHandle make_group(const BetaContext& ctx) {
  require_sofic(ctx);
  auto g = std::make_shared<GroupContext>();
  g->beta = ctx;
  g->projections = projection_system(ctx);
  g->graph = build_graph(ctx, g->projections);
  g->children.resize(static_cast<std::size_t>(g->classes()) + 1);
  for (int v = 1; v <= g->classes(); ++v) g->children[static_cast<std::size_t>(v)] = g->graph.out_edges(v);
  return g;
}

/// nu_[i] with cached endpoints of [l(nu_[i]), r(nu_[i])).
struct MarkedWord {
  Word word;
  int cls = 1;
  BetaNumber l;
  BetaNumber r;

  bool same_cell(const MarkedWord& o) const { return cls == o.cls && word == o.word; }
};

inline MarkedWord make_marked(const GroupContext& g, Word word, int cls) {
  if (cls < 1 || cls > g.classes())
    throw Error(ErrorKind::InvalidTable, "class " + std::to_string(cls) + " out of range 1.." + std::to_string(g.classes()));
  check_letters(g.beta, word);
  const auto& pr = g.projections.projections[static_cast<std::size_t>(cls - 1)];
  BetaNumber base = word_value(g.beta, word);
  long n = static_cast<long>(word.size());
  MarkedWord m{std::move(word), cls, base + pr.lower.times_beta_pow(-n), base + pr.upper.times_beta_pow(-n)};
  return m;
}

/// S_nu^* S_nu >= E_i: nu admissible with phi(a_nu) >= t_i.
inline bool compatible(const GroupContext& g, const Word& word, int cls) {
  if (cls < 1 || cls > g.classes()) return false;
  if (!is_admissible(g.beta, word)) return false;
  return kms_value(g.beta, word) >= g.projections.projections[static_cast<std::size_t>(cls - 1)].upper;
}

/// Children (nu a, j) over edges (i, a, j); they tile the parent interval.
inline std::vector<MarkedWord> refine_row(const GroupContext& g, const MarkedWord& m) {
  std::vector<MarkedWord> out;
  for (const auto& e : g.children[static_cast<std::size_t>(m.cls)]) out.push_back(make_marked(g, m.word.append(e.label), e.target));
  return out;
}

struct TableRow {
  MarkedWord top;
  MarkedWord bottom;
};

struct BetaTable {
  GroupHandle group;
  std::vector<TableRow> rows;  // sorted by bottom l-value
};

inline void sort_rows(BetaTable& t) {
  std::sort(t.rows.begin(), t.rows.end(), [](const TableRow& a, const TableRow& b) { return a.bottom.l < b.bottom.l; });
}

inline TableRow make_row(const GroupContext& g, const Word& top, const Word& bottom, int cls) {
  return {make_marked(g, top, cls), make_marked(g, bottom, cls)};
}

inline BetaTable identity_table(const GroupHandle& g) {
  BetaTable t{g, {}};
  for (int i = 1; i <= g->classes(); ++i) t.rows.push_back(make_row(*g, {}, {}, i));
  sort_rows(t);
  return t;
}

inline BetaTable identity_table(const BetaContext& ctx) { return identity_table(make_group(ctx)); }

namespace detail {

inline void check_cover(const std::vector<const MarkedWord*>& cells, const BetaContext& ctx, const std::string& side,
                        std::vector<std::string>& errors) {
  std::vector<const MarkedWord*> sorted(cells);
  std::sort(sorted.begin(), sorted.end(), [](const MarkedWord* a, const MarkedWord* b) { return a->l < b->l; });
  BetaNumber cursor = ctx.zero();
  for (const auto* c : sorted) {
    auto cmp = compare(c->l, cursor);
    if (cmp > 0)
      errors.push_back(side + " cover gap at l=" + cursor.to_decimal(12) + " before '" + format_word(c->word) + "'");
    else if (cmp < 0)
      errors.push_back(side + " cover overlap at '" + format_word(c->word) + "' l=" + c->l.to_decimal(12));
    if (c->r > cursor) cursor = c->r;
  }
  if (cursor != ctx.one()) errors.push_back(side + " cover gap at l=" + cursor.to_decimal(12) + " (does not reach 1)");
}

}  // namespace detail

/// Table conditions: every marked word compatible with its class, and the
/// bottom and top cells each tile [0, 1) exactly.  Empty result means valid.
inline std::vector<std::string> validate(const BetaTable& t) {
  std::vector<std::string> errors;
  if (!t.group) return {"table has no group context"};
  const auto& g = *t.group;
  std::vector<const MarkedWord*> tops, bottoms;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    std::string where = "row " + std::to_string(i + 1);
    if (row.top.cls != row.bottom.cls) errors.push_back(where + ": top and bottom classes differ");
    for (const auto* m : {&row.top, &row.bottom}) {
      bool letters_ok = std::all_of(m->word.letters.begin(), m->word.letters.end(),
                                    [&](int c) { return c >= 0 && c < g.beta.alphabet_size(); });
      if (!letters_ok || !compatible(g, m->word, m->cls))
        errors.push_back(where + ": '" + format_word(m->word) + "' is not compatible with class " + std::to_string(m->cls));
    }
    tops.push_back(&row.top);
    bottoms.push_back(&row.bottom);
  }
  if (t.rows.empty()) errors.push_back("table has no rows");
  detail::check_cover(bottoms, g.beta, "bottom", errors);
  detail::check_cover(tops, g.beta, "top", errors);
  return errors;
}

inline void require_valid(const BetaTable& t) {
  auto errors = validate(t);
  if (!errors.empty()) throw Error(ErrorKind::InvalidTable, errors.front());
}

inline std::size_t& composition_step_cap() {
  static std::size_t cap = 1'000'000;
  return cap;
}

namespace detail {

inline std::vector<TableRow> split_row(const GroupContext& g, const TableRow& row) {
  std::vector<TableRow> out;
  for (const auto& e : g.children[static_cast<std::size_t>(row.top.cls)])
    out.push_back(make_row(g, row.top.word.append(e.label), row.bottom.word.append(e.label), e.target));
  return out;
}

}  // namespace detail

/// first o second (apply `second` first), by common refinement of the top
/// cells of `second` and the bottom cells of `first`.
inline BetaTable compose(const BetaTable& first, const BetaTable& second) {
  if (first.group != second.group && (!first.group || !second.group || !(first.group->beta == second.group->beta)))
    throw Error(ErrorKind::ContextMismatch, "tables belong to different beta contexts");
  require_valid(first);
  require_valid(second);
  const auto& g = *first.group;

  std::vector<TableRow> inner(second.rows), outer(first.rows);
  std::sort(inner.begin(), inner.end(), [](const TableRow& a, const TableRow& b) { return a.top.l < b.top.l; });
  std::sort(outer.begin(), outer.end(), [](const TableRow& a, const TableRow& b) { return a.bottom.l < b.bottom.l; });

  BetaTable out{first.group, {}};
  std::size_t i = 0, j = 0, steps = 0;
  while (i < inner.size() && j < outer.size()) {
    const MarkedWord& mid_in = inner[i].top;
    const MarkedWord& mid_out = outer[j].bottom;
    auto cmp = compare(mid_in.r, mid_out.r);
    bool refine_inner;
    if (cmp == 0) {
      if (mid_in.same_cell(mid_out)) {
        out.rows.push_back({outer[j].top, inner[i].bottom});
        ++i;
        ++j;
        continue;
      }
      // Same interval, different marked word: the shorter one splits down to the other.
      if (mid_in.word.size() == mid_out.word.size())
        throw Error(ErrorKind::InternalInvariantViolation, "distinct marked words of equal length share an interval");
      refine_inner = mid_in.word.size() < mid_out.word.size();
    } else {
      refine_inner = cmp > 0;
    }
    if (++steps > composition_step_cap()) throw Error(ErrorKind::StepLimit, "composition refinement step cap reached");
    if (refine_inner) {
      auto parts = detail::split_row(g, inner[i]);
      inner.erase(inner.begin() + static_cast<long>(i));
      inner.insert(inner.begin() + static_cast<long>(i), parts.begin(), parts.end());
    } else {
      auto parts = detail::split_row(g, outer[j]);
      outer.erase(outer.begin() + static_cast<long>(j));
      outer.insert(outer.begin() + static_cast<long>(j), parts.begin(), parts.end());
    }
  }
  if (i != inner.size() || j != outer.size())
    throw Error(ErrorKind::InternalInvariantViolation, "composition refinement did not exhaust both partitions");
  sort_rows(out);
  return out;
}

inline BetaTable invert(const BetaTable& t) {
  require_valid(t);
  BetaTable out{t.group, {}};
  for (const auto& row : t.rows) out.rows.push_back({row.bottom, row.top});
  sort_rows(out);
  return out;
}

inline BetaTable commutator(const BetaTable& a, const BetaTable& b) {
  return compose(compose(compose(a, b), invert(a)), invert(b));
}

// ---------------------------------------------------------------------------
// Piecewise-linear maps.

struct Segment {
  BetaNumber x0;  // domain [x0, x1)
  BetaNumber x1;
  BetaNumber y0;  // f(x0)
  long slope_exp = 0;  // slope beta^slope_exp

  BetaNumber y1() const { return y0 + (x1 - x0).times_beta_pow(slope_exp); }
};

struct PLFunction {
  BetaContext beta;
  std::vector<Segment> segments;  // sorted by x0
};

inline PLFunction pl_identity(const BetaContext& ctx) { return {ctx, {{ctx.zero(), ctx.one(), ctx.zero(), 0}}}; }

/// Sort by domain and merge neighbours that continue the same affine law.
inline PLFunction canonicalize(PLFunction f) {
  std::sort(f.segments.begin(), f.segments.end(), [](const Segment& a, const Segment& b) { return a.x0 < b.x0; });
  std::vector<Segment> merged;
  for (auto& s : f.segments) {
    if (!merged.empty()) {
      auto& last = merged.back();
      if (last.slope_exp == s.slope_exp && last.x1 == s.x0 && last.y1() == s.y0) {
        last.x1 = s.x1;
        continue;
      }
    }
    merged.push_back(std::move(s));
  }
  f.segments = std::move(merged);
  return f;
}

/// Domain pieces tile [0,1), image pieces tile [0,1), slopes are powers of
/// beta (by representation).  Empty result means the invariants hold.
inline std::vector<std::string> check_pl(const PLFunction& f) {
  std::vector<std::string> errors;
  const auto& ctx = f.beta;
  BetaNumber cursor = ctx.zero();
  for (const auto& s : f.segments) {
    if (s.x0 != cursor) errors.push_back("domain breakpoints do not chain at " + s.x0.to_decimal(12));
    if (!(s.x0 < s.x1)) errors.push_back("empty domain piece at " + s.x0.to_decimal(12));
    cursor = s.x1;
  }
  if (cursor != ctx.one()) errors.push_back("domain does not end at 1");
  std::vector<std::pair<BetaNumber, BetaNumber>> images;
  for (const auto& s : f.segments) images.emplace_back(s.y0, s.y1());
  std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  cursor = ctx.zero();
  for (const auto& [a, b] : images) {
    if (a != cursor) errors.push_back("image pieces do not chain at " + a.to_decimal(12));
    cursor = b;
  }
  if (cursor != ctx.one()) errors.push_back("image does not end at 1");
  return errors;
}

inline PLFunction table_to_pl(const BetaTable& t) {
  require_valid(t);
  PLFunction f{t.group->beta, {}};
  for (const auto& row : t.rows)
    f.segments.push_back({row.bottom.l, row.bottom.r, row.top.l,
                          static_cast<long>(row.bottom.word.size()) - static_cast<long>(row.top.word.size())});
  f = canonicalize(std::move(f));
  auto errors = check_pl(f);
  if (!errors.empty()) throw Error(ErrorKind::InternalInvariantViolation, "table_to_pl: " + errors.front());
  return f;
}

inline std::size_t find_segment(const PLFunction& f, const BetaNumber& x) {
  if (x < f.beta.zero() || x >= f.beta.one()) throw Error(ErrorKind::OutOfDomain, "PL maps are defined on [0, 1)");
  auto it = std::upper_bound(f.segments.begin(), f.segments.end(), x,
                             [](const BetaNumber& v, const Segment& s) { return v < s.x0; });
  if (it == f.segments.begin()) throw Error(ErrorKind::OutOfDomain, "point left of the first segment");
  std::size_t idx = static_cast<std::size_t>(it - f.segments.begin()) - 1;
  if (x >= f.segments[idx].x1) throw Error(ErrorKind::OutOfDomain, "point not covered by any segment");
  return idx;
}

inline BetaNumber pl_eval(const PLFunction& f, const BetaNumber& x) {
  const auto& s = f.segments[find_segment(f, x)];
  return s.y0 + (x - s.x0).times_beta_pow(s.slope_exp);
}

/// f o g.
inline PLFunction pl_compose(const PLFunction& f, const PLFunction& g) {
  if (!(f.beta == g.beta)) throw Error(ErrorKind::ContextMismatch, "PL maps over different beta contexts");
  PLFunction h{f.beta, {}};
  for (const auto& s : g.segments) {
    BetaNumber u0 = s.y0, u1 = s.y1();
    std::size_t idx = find_segment(f, u0);
    while (idx < f.segments.size() && f.segments[idx].x0 < u1) {
      const auto& t = f.segments[idx];
      BetaNumber a = std::max(u0, t.x0), b = std::min(u1, t.x1);
      BetaNumber xa = s.x0 + (a - s.y0).times_beta_pow(-s.slope_exp);
      BetaNumber xb = s.x0 + (b - s.y0).times_beta_pow(-s.slope_exp);
      h.segments.push_back({xa, xb, t.y0 + (a - t.x0).times_beta_pow(t.slope_exp), s.slope_exp + t.slope_exp});
      ++idx;
    }
  }
  return canonicalize(std::move(h));
}

inline PLFunction pl_invert(const PLFunction& f) {
  PLFunction h{f.beta, {}};
  for (const auto& s : f.segments) h.segments.push_back({s.y0, s.y1(), s.x0, -s.slope_exp});
  return canonicalize(std::move(h));
}

/// Field-wise equality of canonical forms.
inline bool pl_equal(const PLFunction& f, const PLFunction& g) {
  if (!(f.beta == g.beta) || f.segments.size() != g.segments.size()) return false;
  for (std::size_t i = 0; i < f.segments.size(); ++i) {
    const auto &a = f.segments[i], &b = g.segments[i];
    if (a.slope_exp != b.slope_exp || a.x0 != b.x0 || a.x1 != b.x1 || a.y0 != b.y0) return false;
  }
  return true;
}

inline bool is_identity(const BetaTable& t) { return pl_equal(table_to_pl(t), pl_identity(t.group->beta)); }

// ---------------------------------------------------------------------------
// Random elements.

namespace detail {

inline std::vector<long> class_counts(const std::vector<MarkedWord>& cells, int classes) {
  std::vector<long> v(static_cast<std::size_t>(classes), 0);
  for (const auto& c : cells) v[static_cast<std::size_t>(c.cls - 1)] += 1;
  return v;
}

template <class Rng>
void refine_random_cell(const GroupContext& g, std::vector<MarkedWord>& cells, Rng& rng, int cls = 0) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cls == 0 || cells[i].cls == cls) candidates.push_back(i);
  if (candidates.empty()) return;
  std::size_t pick = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
  auto parts = refine_row(g, cells[pick]);
  cells.erase(cells.begin() + static_cast<long>(pick));
  cells.insert(cells.begin() + static_cast<long>(pick), parts.begin(), parts.end());
}

}  // namespace detail

/// A valid table with at least `size` rows, deterministic per seed.
/// Bottom and top partitions are refined independently at random, then
/// refined further (greedy on class counts) until their class multisets
/// agree; cells of equal class are paired by a seeded shuffle.  If the
/// greedy balancing stalls, the top partition falls back to a copy of the
/// bottom one, giving a class-preserving permutation of cells.  The identity
/// pairing is avoided whenever some class has two cells.
inline BetaTable random_table(const GroupHandle& g, std::uint64_t seed, int size) {
  std::mt19937_64 rng(seed);
  const int K = g->classes();
  auto start = [&] {
    std::vector<MarkedWord> cells;
    for (int i = 1; i <= K; ++i) cells.push_back(make_marked(*g, {}, i));
    return cells;
  };
  std::vector<MarkedWord> bottom = start(), top = start();
  while (static_cast<int>(bottom.size()) < size) detail::refine_random_cell(*g, bottom, rng);
  while (static_cast<int>(top.size()) < size) detail::refine_random_cell(*g, top, rng);

  // delta[c] = change of the class-count vector when a class-c cell splits
  std::vector<std::vector<long>> delta(static_cast<std::size_t>(K), std::vector<long>(static_cast<std::size_t>(K), 0));
  for (const auto& e : g->graph.edges) delta[static_cast<std::size_t>(e.source - 1)][static_cast<std::size_t>(e.target - 1)] += 1;
  for (int c = 0; c < K; ++c) delta[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)] -= 1;

  const int budget = 64 + 8 * size;
  bool balanced = false;
  for (int step = 0; step < budget; ++step) {
    auto vb = detail::class_counts(bottom, K), vt = detail::class_counts(top, K);
    if (vb == vt) {
      balanced = true;
      break;
    }
    auto norm = [&](int side, int c) {
      long total = 0;
      for (int x = 0; x < K; ++x) {
        long d = vb[static_cast<std::size_t>(x)] - vt[static_cast<std::size_t>(x)];
        long dd = delta[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
        d += side == 0 ? dd : -dd;
        total += d < 0 ? -d : d;
      }
      return total;
    };
    long current = 0;
    for (int x = 0; x < K; ++x) {
      long d = vb[static_cast<std::size_t>(x)] - vt[static_cast<std::size_t>(x)];
      current += d < 0 ? -d : d;
    }
    struct Move {
      int side, cls;
      long score;
    };
    std::vector<Move> moves;
    for (int side = 0; side < 2; ++side) {
      const auto& v = side == 0 ? vb : vt;
      for (int c = 0; c < K; ++c)
        if (v[static_cast<std::size_t>(c)] > 0) moves.push_back({side, c + 1, norm(side, c)});
    }
    long best = moves.front().score;
    for (const auto& m : moves) best = std::min(best, m.score);
    std::vector<Move> pool;
    if (best < current) {
      for (const auto& m : moves)
        if (m.score == best) pool.push_back(m);
    } else {
      // No improving split: grow the smaller side.
      int side = bottom.size() <= top.size() ? 0 : 1;
      for (const auto& m : moves)
        if (m.side == side) pool.push_back(m);
    }
    const auto& mv = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    detail::refine_random_cell(*g, mv.side == 0 ? bottom : top, rng, mv.cls);
  }
  if (!balanced) top = bottom;

  std::map<int, std::vector<MarkedWord>> by_class;
  for (const auto& c : top) by_class[c.cls].push_back(c);
  for (auto& [cls, cells] : by_class) std::shuffle(cells.begin(), cells.end(), rng);
  BetaTable t{g, {}};
  for (const auto& b : bottom) {
    auto& pool = by_class[b.cls];
    t.rows.push_back({pool.back(), b});
    pool.pop_back();
  }
  // A pairing that fixes every cell is the identity; swap two images when possible.
  bool trivial = std::all_of(t.rows.begin(), t.rows.end(), [](const TableRow& r) { return r.top.same_cell(r.bottom); });
  if (trivial) {
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      for (std::size_t j = i + 1; j < t.rows.size(); ++j)
        if (t.rows[i].top.cls == t.rows[j].top.cls) {
          std::swap(t.rows[i].top, t.rows[j].top);
          i = j = t.rows.size();
        }
  }
  sort_rows(t);
  return t;
}

}  // namespace betafull
