#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "amparse/dep_tree.hpp"
#include "amparse/errors.hpp"
#include "amparse/oracles.hpp"
#include "brute_force.hpp"
#include "fixtures.hpp"

namespace amparse {
namespace {

using testing::augmented_desk;
using testing::fig1a_tree;

AmDepTree single(const std::string& constant) {
  AmDepTree t;
  t.entries.push_back({"w", constant, 0, EdgeLabel::root()});
  return t;
}

// Well-typed trees with varied shapes, taken from fuzzed derivations.
std::vector<AmDepTree> fuzzed_trees(int count, std::uint64_t seed) {
  Grammar g(augmented_desk());
  TransitionSystem ts(g, System::LTL);
  std::vector<AmDepTree> out;
  for (int k = 0; k < count; ++k) {
    FuzzOptions opts;
    opts.n = 3 + k % 5;
    opts.steps = 2 + k % 9;
    opts.weighted = k % 2 == 0;
    out.push_back(fuzz_episode(seed + k, ts, opts).tree);
  }
  return out;
}

TEST(DepTree, RootAndChildren) {
  AmDepTree t = fig1a_tree();
  EXPECT_EQ(t.n(), 6);
  EXPECT_EQ(t.root(), 3);
  EXPECT_EQ(t.children(3), (std::vector<int>{2, 5}));
  EXPECT_EQ(t.children(5), (std::vector<int>{6}));
  EXPECT_EQ(t.children(0), (std::vector<int>{3}));
  EXPECT_TRUE(t.entry(1).ignored());
}

TEST(DepTree, Validation) {
  AmDepTree t = fig1a_tree();
  EXPECT_NO_THROW(validate_tree(t));
  AmDepTree two_roots = t;
  two_roots.entry(2) = {"writer", "writer", 0, EdgeLabel::root()};
  EXPECT_THROW(validate_tree(two_roots), std::invalid_argument);
  AmDepTree cycle = t;
  cycle.entry(3) = {"wants", "want", 5, EdgeLabel::app("x")};
  cycle.entry(2).label = EdgeLabel::root();
  EXPECT_THROW(validate_tree(cycle), std::invalid_argument);
  AmDepTree bottom_head = t;
  bottom_head.entry(6).head = 4;
  EXPECT_THROW(validate_tree(bottom_head), std::invalid_argument);
  AmDepTree bad_ignore = t;
  bad_ignore.entry(1).constant = "writer";
  EXPECT_THROW(validate_tree(bad_ignore), std::invalid_argument);
}

TEST(DepTree, Projectivity) {
  EXPECT_TRUE(is_projective(fig1a_tree()));
  AmDepTree t;
  t.entries = {{"a", "want", 0, EdgeLabel::root()},
               {"b", "sleep", 4, EdgeLabel::app("s")},
               {"c", "sleep", 1, EdgeLabel::app("o")},
               {"d", "writer", 1, EdgeLabel::app("s")}};
  // 1 -> 3 spans 2, whose head 4 is outside the arc.
  EXPECT_FALSE(is_projective(t));
  EXPECT_FALSE(testing::projective_by_definition(t));
}

TEST(DepTree, ProjectivityAgreesWithDefinition) {
  for (const auto& t : fuzzed_trees(200, 400)) {
    EXPECT_EQ(is_projective(t), testing::projective_by_definition(t));
  }
}

TEST(WellTyped, Fig1a) {
  auto r = check_well_typed(fig1a_tree(), testing::fixture_lexicon());
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(r.term_types.at(5), parse_type("[s]"));
  EXPECT_EQ(r.term_types.at(3), Type{});
  EXPECT_EQ(r.term_types.at(2), Type{});
  EXPECT_EQ(r.term_types.at(6), parse_type("[m]"));
  EXPECT_FALSE(r.failure);
}

TEST(WellTyped, WriterWithAppChildFails) {
  AmDepTree t;
  t.entries = {{"writer", "writer", 0, EdgeLabel::root()}, {"x", "writer", 1, EdgeLabel::app("s")}};
  auto r = check_well_typed(t, testing::fixture_lexicon());
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(r.failure->first, 1);
  EXPECT_THROW(evaluate_tree(t, testing::fixture_lexicon()), std::invalid_argument);
}

TEST(WellTyped, UnfilledSourceAtRootFails) {
  auto r = check_well_typed(single("sleep"), testing::fixture_lexicon());
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.failure);
  EXPECT_EQ(r.failure->first, 1);
}

TEST(WellTyped, ApplyOrderRespectsRequests) {
  // want's s may only be filled after o; both children present is fine.
  AmDepTree t;
  t.entries = {{"w", "writer", 2, EdgeLabel::app("s")},
               {"v", "want", 0, EdgeLabel::root()},
               {"z", "sleep", 2, EdgeLabel::app("o")}};
  EXPECT_TRUE(check_well_typed(t, testing::fixture_lexicon()).ok);
  t.entry(3).constant = "writer";  // o requests [s], writer has []
  EXPECT_FALSE(check_well_typed(t, testing::fixture_lexicon()).ok);
}

TEST(Evaluate, Fig1aGivesFig1b) {
  AsGraph g = evaluate_tree(fig1a_tree(), testing::fixture_lexicon());
  EXPECT_TRUE(graphs_isomorphic(g, testing::fig1b_graph()));
  EXPECT_EQ(*g.nodes[g.root].label, "want");
}

TEST(Evaluate, SingleNode) {
  const Lexicon& lex = testing::fixture_lexicon();
  EXPECT_TRUE(graphs_isomorphic(evaluate_tree(single("writer"), lex), lex.constant("writer")));
}

TEST(Evaluate, AgreesWithTypingReport) {
  const Lexicon& lex = augmented_desk();
  for (const auto& t : fuzzed_trees(150, 900)) {
    auto r = check_well_typed(t, lex);
    ASSERT_TRUE(r.ok);
    EXPECT_EQ(graph_type(evaluate_tree(t, lex)), r.term_types.at(t.root()));
  }
}

TEST(Evaluate, IllTypedTreesDoNotEvaluate) {
  const Lexicon& lex = augmented_desk();
  std::mt19937_64 rng(61);
  std::vector<std::string> names;
  for (const auto& [name, _] : lex.constants()) names.push_back(name);
  int ill = 0;
  for (auto t : fuzzed_trees(150, 1300)) {
    for (auto& e : t.entries) {
      if (!e.ignored()) e.constant = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
    }
    bool ok = check_well_typed(t, lex).ok;
    ill += !ok;
    if (ok) {
      EXPECT_NO_THROW(evaluate_tree(t, lex));
    } else {
      EXPECT_THROW(evaluate_tree(t, lex), std::invalid_argument);
    }
  }
  EXPECT_GT(ill, 0);
}

TEST(Evaluate, AppOrderDoesNotMatter) {
  const Lexicon& lex = augmented_desk();
  std::mt19937_64 rng(17);
  AppOrderPolicy last = [](const std::vector<int>& eligible) { return eligible.size() - 1; };
  AppOrderPolicy random = [&](const std::vector<int>& eligible) {
    return std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng);
  };
  for (const auto& t : fuzzed_trees(150, 77)) {
    AsGraph base = evaluate_tree(t, lex);
    EXPECT_TRUE(graphs_isomorphic(base, evaluate_tree(t, lex, last)));
    EXPECT_TRUE(graphs_isomorphic(base, evaluate_tree(t, lex, random)));
  }
}

TEST(TreeFormat, RoundTrip) {
  std::vector<TreeRecord> records = {{"a", fig1a_tree(), ""}, {"b", std::nullopt, "NO-PARSE"}, {"c", single("writer"), ""},
                                     {"d", std::nullopt, "LIMIT"}};
  std::ostringstream out;
  write_tree_records(out, records);
  std::istringstream in(out.str());
  auto back = read_tree_records(in);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(back[i].id, records[i].id);
    EXPECT_EQ(back[i].tree, records[i].tree);
    EXPECT_EQ(back[i].marker, records[i].marker);
  }
  std::ostringstream again;
  write_tree_records(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(TreeFormat, Errors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_tree_records(in);
  };
  EXPECT_THROW(parse("1\ta\twriter\t0\n"), FormatError);
  EXPECT_THROW(parse("2\ta\twriter\t0\tROOT\n"), FormatError);
  EXPECT_THROW(parse("1\ta\twriter\t0\tFOO\n"), FormatError);
  EXPECT_THROW(parse("1\ta\twriter\tx\tROOT\n"), FormatError);
  EXPECT_THROW(parse("1\ta\twriter\t0\tAPP_s\n"), FormatError);  // fails tree validation
  EXPECT_TRUE(parse("").empty());
}

}  // namespace
}  // namespace amparse
