#ifndef AMPARSE_TESTS_BRUTE_FORCE_HPP
#define AMPARSE_TESTS_BRUTE_FORCE_HPP

#include <functional>
#include <optional>
#include <string>

#include "amparse/costs.hpp"
#include "amparse/dep_tree.hpp"
#include "amparse/lexicon.hpp"

namespace amparse::testing {

/// Minimum tree_cost over every projective well-typed tree, found by
/// enumerating attached-token subsets and head assignments, then choosing
/// constants and labels per node by exact subtree minimization. Shares no
/// code with the chart: types are handled through Type values only.
struct BruteForce {
  Cost best = kInf;
  std::optional<AmDepTree> tree;
  long shapes = 0;  // projective head assignments examined
};

BruteForce brute_force_parse(const SentenceCosts& c, const Lexicon& lex);

/// Same search with the decisions of tokens in [i, k) priced at zero: the
/// cheapest cost any tree pays outside the span.
Cost outside_bound(const SentenceCosts& c, const Lexicon& lex, int i, int k);

/// Projective per the independent definition: for every attached h -> d,
/// each attached token strictly between them descends from h.
bool projective_by_definition(const AmDepTree& t);

}  // namespace amparse::testing

#endif  // AMPARSE_TESTS_BRUTE_FORCE_HPP
