#include <gtest/gtest.h>

#include "amparse/oracles.hpp"
#include "fixtures.hpp"

namespace amparse {
namespace {

using testing::augmented_desk;
using testing::fig1a_tree;

std::vector<std::string> texts(const std::vector<Transition>& trs, Grammar& g) {
  std::vector<std::string> out;
  for (const auto& tr : trs) out.push_back(to_string(tr, g));
  return out;
}

Configuration replay(TransitionSystem& ts, int n, const std::vector<Transition>& trs) {
  Configuration c = ts.initial(n);
  for (const auto& tr : trs) ts.apply(c, tr);
  return c;
}

std::vector<std::string> forms_of(const AmDepTree& t) {
  std::vector<std::string> out;
  for (const auto& e : t.entries) out.push_back(e.form);
  return out;
}

class DeskOracles : public ::testing::Test {
 protected:
  DeskOracles() : lex(desk_lexicon()), g(lex), ltl(g, System::LTL), ltf(g, System::LTF) {}
  Lexicon lex;
  Grammar g;
  TransitionSystem ltl, ltf;
};

TEST_F(DeskOracles, Fig1aLtl) {
  auto seq = oracle_sequence(fig1a_tree(), ltl);
  EXPECT_EQ(texts(seq, g), (std::vector<std::string>{"Init(3)", "Apply(s,2)", "Apply(o,5)", "Finish(want)",
                                                      "Finish(writer)", "Modify(m,6)", "Finish(sleep)",
                                                      "Finish(soundly)"}));
  Configuration c = replay(ltl, 6, seq);
  EXPECT_EQ(ltl.to_tree(c, forms_of(fig1a_tree())), fig1a_tree());
}

TEST_F(DeskOracles, Fig1aLtf) {
  auto seq = oracle_sequence(fig1a_tree(), ltf);
  EXPECT_EQ(texts(seq, g),
            (std::vector<std::string>{"Init(3)", "Choose([],want)", "Apply(s,2)", "Choose([],writer)", "Pop",
                                      "Apply(o,5)", "Choose([s],sleep)", "Modify(m,6)", "Choose([m],soundly)", "Pop",
                                      "Pop", "Pop"}));
  Configuration c = replay(ltf, 6, seq);
  EXPECT_EQ(ltf.to_tree(c, forms_of(fig1a_tree())), fig1a_tree());
}

TEST_F(DeskOracles, SingleToken) {
  AmDepTree t;
  t.entries.push_back({"writer", "writer", 0, EdgeLabel::root()});
  EXPECT_EQ(texts(oracle_sequence(t, ltl), g), (std::vector<std::string>{"Init(1)", "Finish(writer)"}));
  EXPECT_EQ(texts(oracle_sequence(t, ltf), g), (std::vector<std::string>{"Init(1)", "Choose([],writer)", "Pop"}));
}

TEST_F(DeskOracles, IllTypedTreeRejected) {
  AmDepTree t = fig1a_tree();
  t.entry(5).constant = "writer";
  EXPECT_THROW(oracle_sequence(t, ltl), std::invalid_argument);
  EXPECT_THROW(oracle_sequence(t, ltf), std::invalid_argument);
}

TEST_F(DeskOracles, CompleteFromInitial) {
  Configuration f = ltf.initial(6);
  EXPECT_EQ(texts(complete_config(f, ltf), g), (std::vector<std::string>{"Init(1)", "Choose([],writer)", "Pop"}));
  EXPECT_TRUE(ltf.is_goal(f));
  Configuration l = ltl.initial(6);
  EXPECT_EQ(texts(complete_config(l, ltl), g), (std::vector<std::string>{"Init(1)", "Finish(writer)"}));
  EXPECT_TRUE(ltl.is_goal(l));
  EXPECT_TRUE(complete_step(l, ltl).empty());
}

TEST_F(DeskOracles, CompleteAfterModify) {
  auto seq = oracle_sequence(fig1a_tree(), ltl);
  seq.resize(6);  // through Modify(m,6)
  Configuration c = replay(ltl, 6, seq);
  auto rest = complete_config(c, ltl);
  // Both [m] and [m, s] owe nothing at token 6; "[m, s]" serializes first.
  EXPECT_EQ(texts(rest, g), (std::vector<std::string>{"Finish(sleep)", "Finish(soundly_ctl)"}));
  AmDepTree t = ltl.to_tree(c, forms_of(fig1a_tree()));
  EXPECT_TRUE(check_well_typed(t, lex).ok);
  EXPECT_EQ(t.entry(6).constant, "soundly_ctl");
}

TEST_F(DeskOracles, CompleteOwedApplies) {
  // want chosen with two tokens to spare: completion must fill both sources.
  Configuration c = ltf.initial(4);
  ltf.apply(c, parse_transition("Init(2)", g));
  ltf.apply(c, parse_transition("Choose([],want)", g));
  complete_config(c, ltf);
  EXPECT_TRUE(ltf.is_goal(c));
  AmDepTree t = ltf.to_tree(c, {"a", "b", "c", "d"});
  EXPECT_TRUE(check_well_typed(t, desk_lexicon()).ok);
  EXPECT_EQ(t.children(2).size(), 2u);
}

TEST(Fuzz, DeterministicAndReplayable) {
  Grammar g(augmented_desk());
  for (System sys : {System::LTL, System::LTF}) {
    TransitionSystem ts(g, sys);
    FuzzOptions opts;
    opts.n = 7;
    opts.steps = 9;
    Episode a = fuzz_episode(17, ts, opts);
    Episode b = fuzz_episode(17, ts, opts);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
      EXPECT_EQ(a.trace[k].transition, b.trace[k].transition);
      EXPECT_EQ(a.trace[k].digest, b.trace[k].digest);
    }
    EXPECT_EQ(a.tree, b.tree);
    EXPECT_TRUE(replay_episode(a, ts));
    Episode tampered = a;
    tampered.trace.back().digest = "0000000000000000";
    EXPECT_FALSE(replay_episode(tampered, ts));
  }
}

TEST(Fuzz, ZeroStepsIsPureCompletion) {
  Grammar g(augmented_desk());
  TransitionSystem ts(g, System::LTF);
  FuzzOptions opts;
  opts.steps = 0;
  Episode e = fuzz_episode(3, ts, opts);
  EXPECT_EQ(e.random_steps, 0);
  Configuration c = ts.initial(opts.n);
  auto expect = complete_config(c, ts);
  ASSERT_EQ(e.trace.size(), expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) EXPECT_EQ(e.trace[k].transition, expect[k]);
}

TEST(Fuzz, OutcomesWellTypedAndRoundTrip) {
  const Lexicon& lex = augmented_desk();
  Grammar g(lex);
  for (System sys : {System::LTL, System::LTF}) {
    TransitionSystem ts(g, sys);
    for (int seed = 0; seed < 150; ++seed) {
      FuzzOptions opts;
      opts.n = 2 + seed % 8;
      opts.steps = seed % 13;
      opts.weighted = seed % 2 == 1;
      Episode e = fuzz_episode(seed, ts, opts);
      ASSERT_TRUE(check_well_typed(e.tree, lex).ok) << seed;
      auto seq = oracle_sequence(e.tree, ts);
      Configuration c = replay(ts, e.n, seq);
      EXPECT_EQ(ts.to_tree(c, forms_of(e.tree)), e.tree);
      int finishes = 0;
      for (const auto& s : e.trace) finishes += s.transition.kind == Transition::Kind::Finish;
      EXPECT_LE(finishes, e.n);
    }
  }
}

TEST(Completion, StepProgress) {
  Grammar g(augmented_desk());
  for (System sys : {System::LTL, System::LTF}) {
    TransitionSystem ts(g, sys);
    for (int seed = 0; seed < 100; ++seed) {
      FuzzOptions opts;
      opts.n = 3 + seed % 6;
      opts.steps = 1 + seed % 10;
      Episode e = fuzz_episode(seed, ts, opts);
      Configuration c = ts.initial(e.n);
      for (int k = 0; k < e.random_steps; ++k) ts.apply(c, e.trace[k].transition);
      while (!ts.is_goal(c)) {
        std::size_t depth = c.S.size();
        bool was_initial = c.initial();
        auto step = complete_step(c, ts);
        int finishes = 0;
        for (const auto& tr : step) {
          finishes += tr.kind == Transition::Kind::Finish;
          ts.apply(c, tr);
        }
        if (sys == System::LTL) {
          EXPECT_EQ(finishes, 1);
        } else if (!was_initial) {
          EXPECT_LT(c.S.size(), depth);
        }
      }
    }
  }
}

}  // namespace
}  // namespace amparse
