// betafull: command-line front end for the beta-expansion library.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "betafull/betafull.hpp"

using namespace betafull;
using io::json;

namespace {

int g_status = 0;  // set by commands that report failure without throwing

struct Config {
  std::string beta;
  std::string other;
  int depth = 64;
  std::string format = "text";
  std::string in;
  std::string in2;
  std::string out;
  std::string x;
  int n = 20;
  std::string word;
  std::uint64_t seed = 0;
  int size = 4;
};

class Output {
 public:
  explicit Output(const Config& cfg) : cfg_(cfg) {}

  void text(const std::string& s) { buf_ << s << "\n"; }
  void put(const json& j) { buf_ << (cfg_.format == "json" ? j.dump(2) : j.dump()) << "\n"; }

  void flush() {
    if (cfg_.out.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(cfg_.out);
    if (!f) throw Error(ErrorKind::Parse, "cannot write " + cfg_.out);
    f << buf_.str();
  }

  bool json_mode() const { return cfg_.format == "json"; }

 private:
  const Config& cfg_;
  std::ostringstream buf_;
};

BetaContext need_beta(const Config& cfg) {
  if (cfg.beta.empty()) throw CLI::RequiredError("--beta");
  return make_context(cfg.beta);
}

json read_json(const std::string& path) {
  if (path.empty()) throw CLI::RequiredError("--in");
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Parse, "cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

BetaTable load_table(const Config& cfg, const std::string& path, GroupHandle group = nullptr) {
  BetaTable t = io::table_from_json(read_json(path), std::move(group));
  if (!cfg.beta.empty() && make_context(cfg.beta).spec() != t.group->beta.spec())
    throw Error(ErrorKind::ContextMismatch, "--beta " + cfg.beta + " differs from table beta " + t.group->beta.spec());
  require_valid(t);
  return t;
}

BetaNumber parse_x(const BetaContext& ctx, const std::string& s) {
  if (s.empty()) throw CLI::RequiredError("--x");
  return ctx.number(io::parse_rational(s));
}

void emit_number(Output& out, const BetaNumber& v) {
  if (out.json_mode())
    out.put(io::number_to_json(v));
  else
    out.text(io::number_to_text(v));
}

void emit_table(Output& out, const BetaTable& t) {
  if (out.json_mode()) {
    out.put(io::table_to_json(t));
    return;
  }
  for (const auto& r : t.rows)
    out.text("[" + format_word(r.bottom.word) + "] -> [" + format_word(r.top.word) + "]  class " + std::to_string(r.top.cls));
}

void emit_pl(Output& out, const PLFunction& f) {
  if (out.json_mode()) {
    out.put(io::pl_to_json(f));
    return;
  }
  for (const auto& s : f.segments)
    out.text("[" + io::number_to_text(s.x0) + ", " + io::number_to_text(s.x1) + ") -> " + io::number_to_text(s.y0) +
             "  slope b^" + std::to_string(s.slope_exp));
}

std::string tristate(Tristate t) {
  switch (t) {
    case Tristate::Yes: return "yes";
    case Tristate::No: return "no";
    case Tristate::Unknown: break;
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

void run_expand(const Config& cfg, Output& out) {
  auto ctx = need_beta(cfg);
  auto e = expand(ctx, parse_x(ctx, cfg.x), cfg.n);
  if (out.json_mode())
    out.put(json{{"digits", e.digits}, {"remainder", io::number_to_json(e.remainder)}});
  else
    out.text(detail::join(e.digits));
}

void run_xi(const Config& cfg, Output& out) {
  auto ctx = need_beta(cfg);
  auto xi = xi_beta(ctx, cfg.n);
  if (out.json_mode())
    out.put(json{{"xi", xi}});
  else
    out.text(detail::join(xi));
}

void run_classify(const Config& cfg, Output& out) {
  auto ctx = need_beta(cfg);
  auto c = classify_shift(ctx, cfg.depth);
  json j = io::shift_class_to_json(c);
  if (!c.resolved()) j["denominator_growth"] = denominator_growth_certificate(ctx, cfg.depth);
  out.put(j);
}

void run_words(const Config& cfg, Output& out) {
  auto ctx = need_beta(cfg);
  auto ws = enumerate_words(ctx, cfg.n);
  if (out.json_mode()) {
    json arr = json::array();
    for (const auto& w : ws) arr.push_back(format_word(w));
    out.put(json{{"n", cfg.n}, {"count", ws.size()}, {"words", arr}});
    return;
  }
  for (const auto& w : ws) out.text(format_word(w));
}

void run_kms(const Config& cfg, Output& out) {
  auto ctx = need_beta(cfg);
  Word w = parse_word(cfg.word);
  emit_number(out, kms_value(ctx, w));
}

void run_interval(const Config& cfg, Output& out) {
  auto ctx = need_beta(cfg);
  Word w = parse_word(cfg.word);
  auto l = l_value(ctx, w);
  auto r = r_value(ctx, w);
  if (out.json_mode()) {
    out.put(json{{"l", io::number_to_json(l)}, {"r", io::number_to_json(r)}});
    return;
  }
  out.text("[" + io::number_to_text(l) + ", " + io::number_to_text(r) + ")");
}

void run_k0(const Config& cfg, Output& out) {
  auto k = k0_group(need_beta(cfg), cfg.depth);
  if (out.json_mode())
    out.put(io::k0_to_json(k));
  else
    out.text(io::k0_to_text(k));
}

void run_homology(const Config& cfg, Output& out) {
  auto h = homology(need_beta(cfg), cfg.depth);
  if (out.json_mode())
    out.put(json{{"H0", io::k0_to_json(h.h0)}, {"H1", "not computed"}});
  else
    out.text("H0 = " + io::k0_to_text(h.h0));
}

void run_graph(const Config& cfg, Output& out) {
  auto ctx = need_beta(cfg);
  auto g = build_graph(ctx);
  if (cfg.format == "dot") {
    std::string dot = io::graph_to_dot(g);
    dot.pop_back();
    out.text(dot);
  } else if (out.json_mode()) {
    out.put(io::graph_to_json(g));
  } else {
    for (const auto& e : g.edges)
      out.text(std::to_string(e.source) + " -" + std::to_string(e.label) + "-> " + std::to_string(e.target));
  }
}

void run_matrices(const Config& cfg, Output& out) {
  auto ms = matrices(need_beta(cfg));
  if (out.json_mode()) {
    out.put(io::matrices_to_json(ms));
    return;
  }
  json j = io::matrices_to_json(ms);
  for (auto it = j.begin(); it != j.end(); ++it) out.text(it.key() + " = " + it.value().dump());
}

void run_group_class(const Config& cfg, Output& out) {
  auto g = group_class(need_beta(cfg), cfg.depth);
  if (out.json_mode())
    out.put(io::group_class_to_json(g));
  else
    out.text(io::group_class_to_text(g));
}

void run_isomorphic(const Config& cfg, Output& out) {
  if (cfg.other.empty()) throw CLI::RequiredError("--other");
  auto a = need_beta(cfg);
  auto b = make_context(cfg.other);
  auto r = is_isomorphic(a, b, cfg.depth);
  if (out.json_mode())
    out.put(json{{"isomorphic", tristate(r)}});
  else
    out.text(tristate(r));
}

void run_table(const std::string& op, const Config& cfg, Output& out) {
  if (op == "identity") {
    emit_table(out, identity_table(need_beta(cfg)));
  } else if (op == "random") {
    emit_table(out, random_table(make_group(need_beta(cfg)), cfg.seed, cfg.size));
  } else if (op == "validate") {
    BetaTable t = io::table_from_json(read_json(cfg.in));
    auto errs = validate(t);
    if (out.json_mode()) {
      out.put(json{{"valid", errs.empty()}, {"errors", errs}});
    } else if (errs.empty()) {
      out.text("ok");
    } else {
      for (const auto& e : errs) out.text(e);
    }
    if (!errs.empty()) g_status = 1;
  } else if (op == "compose") {
    BetaTable a = load_table(cfg, cfg.in);
    if (cfg.in2.empty()) throw CLI::RequiredError("--in2");
    BetaTable b = load_table(cfg, cfg.in2, a.group);
    emit_table(out, compose(a, b));
  } else if (op == "invert") {
    emit_table(out, invert(load_table(cfg, cfg.in)));
  } else if (op == "to-pl") {
    emit_pl(out, table_to_pl(load_table(cfg, cfg.in)));
  } else if (op == "eval") {
    BetaTable t = load_table(cfg, cfg.in);
    emit_number(out, pl_eval(table_to_pl(t), parse_x(t.group->beta, cfg.x)));
  }
}

void add_common(CLI::App* sub, Config& cfg, bool beta_required) {
  auto* b = sub->add_option("--beta", cfg.beta, "beta spec: digits=... or rational=p/q");
  if (beta_required) b->required();
  sub->add_option("--depth", cfg.depth, "classification depth")->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
  sub->add_option("--out", cfg.out, "write output to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"betafull: beta-expansions, beta-shifts and their Higman-Thompson type groups"};
  app.require_subcommand(1);
  Config cfg;

  struct Cmd {
    const char* name;
    const char* help;
    void (*fn)(const Config&, Output&);
  };
  const Cmd cmds[] = {
      {"expand", "greedy digits of x in [0,1]", run_expand},
      {"xi", "first n digits of xi_beta", run_xi},
      {"classify", "SFT / sofic classification", run_classify},
      {"words", "admissible words of length n", run_words},
      {"kms", "KMS weight of the follower projection of a word", run_kms},
      {"interval", "cylinder interval [l, r) of a word", run_interval},
      {"k0", "K0 group of O_beta", run_k0},
      {"homology", "homology of the groupoid", run_homology},
      {"graph", "left-resolving labeled graph", run_graph},
      {"matrices", "M, B, R, S, L and eta", run_matrices},
      {"group-class", "Higman-Thompson type of Gamma_beta", run_group_class},
      {"isomorphic", "compare two betas", run_isomorphic},
  };
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, cfg, true);
    subs.push_back({sub, &c});
  }
  subs[0].first->add_option("--x", cfg.x, "rational x")->required();
  subs[0].first->add_option("--n", cfg.n, "number of digits")->check(CLI::PositiveNumber);
  subs[1].first->add_option("--n", cfg.n, "number of digits")->check(CLI::PositiveNumber);
  subs[3].first->add_option("--n", cfg.n, "word length")->check(CLI::NonNegativeNumber);
  subs[4].first->add_option("--word", cfg.word, "word such as 1,0,1")->required();
  subs[5].first->add_option("--word", cfg.word, "word such as 1,0,1")->required();
  subs[11].first->add_option("--other", cfg.other, "second beta spec")->required();

  auto* table = app.add_subcommand("table", "table calculus");
  table->require_subcommand(1);
  std::string table_op;
  for (const char* op : {"validate", "compose", "invert", "to-pl", "eval", "identity", "random"}) {
    auto* sub = table->add_subcommand(op);
    bool needs_beta = std::string(op) == "identity" || std::string(op) == "random";
    add_common(sub, cfg, needs_beta);
    if (!needs_beta) sub->add_option("--in", cfg.in, "table JSON file")->required();
    if (std::string(op) == "compose") sub->add_option("--in2", cfg.in2, "table applied first")->required();
    if (std::string(op) == "eval") sub->add_option("--x", cfg.x, "rational x in [0,1)")->required();
    if (std::string(op) == "random") {
      sub->add_option("--seed", cfg.seed, "RNG seed");
      sub->add_option("--size", cfg.size, "minimum row count")->check(CLI::PositiveNumber);
    }
    sub->callback([&table_op, op] { table_op = op; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Output out(cfg);
  try {
    if (!table_op.empty()) {
      run_table(table_op, cfg, out);
    } else {
      for (const auto& [sub, cmd] : subs)
        if (sub->parsed()) cmd->fn(cfg, out);
    }
    out.flush();
    return g_status;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (cfg.format == "json")
      std::cout << json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
