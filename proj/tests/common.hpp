#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "betafull/betafull.hpp"

namespace testing_support {

using namespace betafull;

// Contexts used throughout the suite.
inline const std::vector<std::string>& example_specs() {
  static const std::vector<std::string> specs = {"digits=1,1",  "digits=3,(2)", "rational=3/2",  "digits=2",
                                                 "digits=3",    "digits=1,(1,0)", "digits=2,1",  "digits=1,0,1"};
  return specs;
}

inline const std::vector<std::string>& sofic_specs() {
  static const std::vector<std::string> specs = {"digits=1,1", "digits=3,(2)", "digits=2", "digits=3", "digits=1,(1,0)", "digits=2,1"};
  return specs;
}

// Brute force: all of Sigma^n in lex order, filtered by the raw suffix condition.
inline std::vector<Word> brute_words(const BetaContext& ctx, int n) {
  std::vector<Word> all{Word{}};
  for (int k = 0; k < n; ++k) {
    std::vector<Word> next;
    for (const auto& w : all)
      for (int c = 0; c < ctx.alphabet_size(); ++c) next.push_back(w.append(c));
    all = std::move(next);
  }
  std::vector<Word> out;
  for (const auto& w : all) {
    bool ok = true;
    for (std::size_t m = 0; m < w.size() && ok; ++m)
      for (std::size_t i = m; i < w.size(); ++i) {
        int x = ctx.xi_digit(i - m + 1);
        if (w[i] != x) {
          ok = w[i] < x;
          break;
        }
      }
    if (ok) out.push_back(w);
  }
  return out;
}

inline std::optional<Word> brute_successor(const std::vector<Word>& sorted, const Word& w) {
  auto it = std::upper_bound(sorted.begin(), sorted.end(), w);
  if (it == sorted.end()) return std::nullopt;
  return *it;
}

}  // namespace testing_support
