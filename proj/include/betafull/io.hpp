#pragma once

// JSON and DOT serialization.  Exact numbers are written as their reduced
// coefficient list (one rational string per power of beta, padded to the
// context degree) together with a 12-place decimal that is display-only.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "betafull/error.hpp"
#include "betafull/number.hpp"
#include "betafull/shift.hpp"
#include "betafull/sofic.hpp"
#include "betafull/table.hpp"

namespace betafull::io {

using json = nlohmann::ordered_json;

constexpr int kApproxPlaces = 12;

inline json number_to_json(const BetaNumber& x) {
  json poly = json::array();
  const auto& c = x.coeffs();
  int k = x.context().degree();
  for (int i = 0; i < k; ++i) poly.push_back(i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)].get_str() : "0");
  return json{{"poly", poly}, {"approx", x.to_decimal(kApproxPlaces)}};
}

inline Rational parse_rational(const std::string& s) {
  try {
    Rational r(s);
    if (r.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::Parse, "bad rational '" + s + "'");
  }
}

/// Only "poly" is read; "approx" is never re-ingested.
inline BetaNumber number_from_json(const BetaContext& ctx, const json& j) {
  if (!j.contains("poly") || !j["poly"].is_array()) throw Error(ErrorKind::Parse, "number object needs a poly array");
  poly::Poly coeffs;
  for (const auto& c : j["poly"]) coeffs.push_back(parse_rational(c.get<std::string>()));
  return ctx.from_poly(std::move(coeffs));
}

/// Exact text form: "p/q" for rational values, otherwise a polynomial in b
/// followed by its decimal approximation.
inline std::string number_to_text(const BetaNumber& x) {
  const auto& c = x.coeffs();
  if (c.size() <= 1) return c.empty() ? "0" : c[0].get_str();
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    std::string term = abs(c[i]) == 1 && i > 0 ? "" : Rational(abs(c[i])).get_str();
    if (i > 0) term += (term.empty() ? "" : "*") + std::string("b") + (i > 1 ? "^" + std::to_string(i) : "");
    if (s.empty())
      s = (sgn(c[i]) < 0 ? "-" : "") + term;
    else
      s += (sgn(c[i]) < 0 ? " - " : " + ") + term;
  }
  return s + " (~ " + x.to_decimal(kApproxPlaces) + ")";
}

inline json shift_class_to_json(const ShiftClass& c) {
  switch (c.kind) {
    case ShiftClass::Kind::SFT: return json{{"kind", "sft"}, {"k", c.k}};
    case ShiftClass::Kind::Sofic: return json{{"kind", "sofic"}, {"l", c.l}, {"k_beta", c.k_beta}};
    case ShiftClass::Kind::NotSoficUpTo: break;
  }
  return json{{"kind", "unknown"}, {"depth", c.depth}};
}

inline json k0_to_json(const K0Result& k) {
  if (k.kind == K0Result::Kind::Cyclic)
    return json{{"kind", "cyclic"}, {"order", k.order}, {"unit", k.order == 1 ? 0 : 1}};
  return json{{"kind", "free"}, {"unit", 1}, {"depth_conditional", k.depth_conditional}};
}

inline std::string k0_to_text(const K0Result& k) {
  if (k.kind == K0Result::Kind::FreeZ) return k.depth_conditional ? "Z (depth-conditional)" : "Z";
  return k.order == 1 ? "0" : "Z/" + std::to_string(k.order) + "Z";
}

inline json group_class_to_json(const GroupClass& g) {
  switch (g.kind) {
    case GroupClass::Kind::HigmanThompson: return json{{"kind", "higman_thompson"}, {"n", g.n}};
    case GroupClass::Kind::NotHigmanThompson: return json{{"kind", "not_higman_thompson"}};
    case GroupClass::Kind::Unknown: break;
  }
  return json{{"kind", "unknown"}, {"depth", g.depth}};
}

inline std::string group_class_to_text(const GroupClass& g) {
  switch (g.kind) {
    case GroupClass::Kind::HigmanThompson: return "V_" + std::to_string(g.n);
    case GroupClass::Kind::NotHigmanThompson: return "not Higman-Thompson";
    case GroupClass::Kind::Unknown: break;
  }
  return "unknown (depth " + std::to_string(g.depth) + ")";
}

inline json projection_system_to_json(const ProjectionSystem& ps) {
  json arr = json::array();
  for (std::size_t i = 0; i < ps.projections.size(); ++i) {
    const auto& p = ps.projections[i];
    arr.push_back(json{{"index", i + 1},
                       {"lower", number_to_json(p.lower)},
                       {"upper", number_to_json(p.upper)},
                       {"p", p.p},
                       {"q", p.q ? json(*p.q) : json(nullptr)}});
  }
  return json{{"k_beta_dim", ps.size()}, {"projections", arr}};
}

inline json graph_to_json(const LabeledGraph& g) {
  json vs = json::array();
  for (int v = 1; v <= g.vertices; ++v) vs.push_back(v);
  json es = json::array();
  for (const auto& e : g.edges) es.push_back(json{{"from", e.source}, {"label", e.label}, {"to", e.target}});
  return json{{"vertices", vs}, {"edges", es}};
}

inline std::string graph_to_dot(const LabeledGraph& g) {
  std::string s = "digraph {\n";
  for (int v = 1; v <= g.vertices; ++v) s += "  v" + std::to_string(v) + ";\n";
  for (const auto& e : g.edges)
    s += "  v" + std::to_string(e.source) + " -> v" + std::to_string(e.target) + " [label=\"" + std::to_string(e.label) + "\"];\n";
  return s + "}\n";
}

inline json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (const auto& r : m) rows.push_back(r);
  return rows;
}

inline json matrices_to_json(const MatrixSet& ms) {
  return json{{"M", matrix_to_json(ms.M)},
              {"B", matrix_to_json(ms.B)},
              {"R", matrix_to_json(ms.R)},
              {"S", matrix_to_json(ms.S)},
              {"L", matrix_to_json(ms.L)},
              {"eta", ms.eta},
              {"eta_sum", ms.eta_sum()},
              {"det_I_minus_M", determinant(identity_minus(ms.M)).get_si()},
              {"det_I_minus_B", determinant(identity_minus(ms.B)).get_si()},
              {"det_I_minus_L", determinant(identity_minus(ms.L)).get_si()}};
}

// ---------------------------------------------------------------------------
// Tables and PL functions.

inline json table_to_json(const BetaTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back(json{{"top", format_word(r.top.word)}, {"bottom", format_word(r.bottom.word)}, {"class", r.top.cls}});
  return json{{"beta", t.group->beta.spec()}, {"rows", rows}};
}

/// Rows are read against `group` when given (its beta must match the
/// file's), otherwise a fresh context is built from the "beta" field.
inline BetaTable table_from_json(const json& j, GroupHandle group = nullptr) {
  if (!j.is_object() || !j.contains("beta") || !j.contains("rows") || !j["rows"].is_array())
    throw Error(ErrorKind::Parse, "table JSON needs \"beta\" and \"rows\"");
  std::string spec = j["beta"].get<std::string>();
  if (group) {
    if (make_context(spec).spec() != group->beta.spec())
      throw Error(ErrorKind::ContextMismatch, "table is over " + spec + ", expected " + group->beta.spec());
  } else {
    group = make_group(make_context(spec));
  }
  BetaTable t{group, {}};
  for (const auto& r : j["rows"]) {
    if (!r.contains("top") || !r.contains("bottom") || !r.contains("class"))
      throw Error(ErrorKind::Parse, "table row needs top, bottom and class");
    t.rows.push_back(make_row(*group, parse_word(r["top"].get<std::string>()), parse_word(r["bottom"].get<std::string>()),
                              r["class"].get<int>()));
  }
  sort_rows(t);
  return t;
}

inline json pl_to_json(const PLFunction& f) {
  json segs = json::array();
  for (const auto& s : f.segments)
    segs.push_back(json{{"x0", number_to_json(s.x0)}, {"x1", number_to_json(s.x1)}, {"y0", number_to_json(s.y0)}, {"slope_exp", s.slope_exp}});
  return json{{"segments", segs}};
}

inline PLFunction pl_from_json(const BetaContext& ctx, const json& j) {
  PLFunction f{ctx, {}};
  for (const auto& s : j.at("segments"))
    f.segments.push_back({number_from_json(ctx, s.at("x0")), number_from_json(ctx, s.at("x1")), number_from_json(ctx, s.at("y0")),
                          s.at("slope_exp").get<long>()});
  return f;
}

}  // namespace betafull::io
