#include <gtest/gtest.h>

#include "common.hpp"

using namespace betafull;
using io::json;

TEST(Io, NumberRoundTrip) {
  auto c = make_context("digits=3,(2)");
  BetaNumber x = c.beta() * Rational(2, 3) - Rational(5);
  json j = io::number_to_json(x);
  EXPECT_EQ(j["poly"].size(), 2u);
  EXPECT_EQ(io::number_from_json(c, j), x);
  // approx is ignored on input
  j["approx"] = "nonsense";
  EXPECT_EQ(io::number_from_json(c, j), x);
  EXPECT_THROW(io::number_from_json(c, json{{"poly", {"1/0"}}}), Error);
  EXPECT_THROW(io::number_from_json(c, json::object()), Error);
}

TEST(Io, NumberText) {
  auto c = make_context("digits=1,1");
  EXPECT_EQ(io::number_to_text(c.number(Rational(3, 4))), "3/4");
  EXPECT_EQ(io::number_to_text(c.beta()), "b (~ 1.618033988750)");
  EXPECT_EQ(io::number_to_text(c.beta() - Rational(1)), "-1 + b (~ 0.618033988750)");
}

TEST(Io, TableRoundTripIsByteIdentical) {
  for (const auto& s : testing_support::sofic_specs()) {
    auto g = make_group(make_context(s));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto t = random_table(g, seed, 6);
      std::string a = io::table_to_json(t).dump(2);
      auto back = io::table_from_json(json::parse(a));
      EXPECT_EQ(io::table_to_json(back).dump(2), a);
      EXPECT_TRUE(pl_equal(table_to_pl(back), table_to_pl(t)));
    }
  }
}

TEST(Io, PlRoundTrip) {
  auto g = make_group(make_context("digits=1,1"));
  auto f = table_to_pl(random_table(g, 3, 6));
  std::string a = io::pl_to_json(f).dump();
  auto back = io::pl_from_json(g->beta, json::parse(a));
  EXPECT_TRUE(pl_equal(back, f));
  EXPECT_EQ(io::pl_to_json(back).dump(), a);
}

TEST(Io, TableErrors) {
  EXPECT_THROW(io::table_from_json(json::parse(R"({"rows":[]})")), Error);
  EXPECT_THROW(io::table_from_json(json::parse(R"({"beta":"digits=2","rows":[{"top":"0"}]})")), Error);
  auto g = make_group(make_context("digits=2"));
  try {
    io::table_from_json(json::parse(R"({"beta":"digits=1,1","rows":[]})"), g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContextMismatch);
  }
}

TEST(Io, GraphFormats) {
  auto c = make_context("digits=1,1");
  auto g = build_graph(c);
  EXPECT_EQ(io::graph_to_json(g).dump(),
            R"({"vertices":[1,2],"edges":[{"from":1,"label":0,"to":1},{"from":1,"label":0,"to":2},{"from":2,"label":1,"to":1}]})");
  std::string dot = io::graph_to_dot(g);
  EXPECT_NE(dot.find("v2 -> v1 [label=\"1\"];"), std::string::npos);
  EXPECT_EQ(dot.rfind("digraph {", 0), 0u);
}

TEST(Io, ClassJson) {
  EXPECT_EQ(io::shift_class_to_json(ShiftClass::sft(2)).dump(), R"({"kind":"sft","k":2})");
  EXPECT_EQ(io::shift_class_to_json(ShiftClass::sofic(1, 1)).dump(), R"({"kind":"sofic","l":1,"k_beta":1})");
  EXPECT_EQ(io::shift_class_to_json(ShiftClass::unknown(64)).dump(), R"({"kind":"unknown","depth":64})");
}
