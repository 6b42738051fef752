#ifndef AMPARSE_ORACLES_HPP
#define AMPARSE_ORACLES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "amparse/transitions.hpp"

namespace amparse {

/// Transitions that build `t` from the initial configuration. Children are
/// visited in ascending token order. Throws std::invalid_argument when the
/// tree is not well-typed.
std::vector<Transition> oracle_sequence(const AmDepTree& t, TransitionSystem& ts);

/// One call of the completion procedure for the active node: empty at a goal.
/// Throws std::logic_error when no completion exists (unclosed lexicon).
std::vector<Transition> complete_step(const Configuration& c, TransitionSystem& ts);

/// Runs complete_step until a goal configuration, applying each transition
/// with legality checks. Returns the emitted transitions.
std::vector<Transition> complete_config(Configuration& c, TransitionSystem& ts);

struct EpisodeStep {
  Transition transition;
  std::string text;
  std::string digest;  // of the configuration after the transition
};

struct Episode {
  std::uint64_t seed = 0;
  System system = System::LTL;
  std::string lexicon_id;
  int n = 0;
  int random_steps = 0;  // trace[0, random_steps) was sampled, the rest completed
  std::vector<EpisodeStep> trace;
  AmDepTree tree;
};

struct FuzzOptions {
  int n = 6;
  int steps = 8;
  /// Bias sampling toward Apply to reach deep stacks and tight budgets.
  bool weighted = false;
  std::string lexicon_id = "lexicon";
};

/// `steps` random legal transitions (fewer if a goal comes first), then
/// complete_config. Deterministic in the seed.
Episode fuzz_episode(std::uint64_t seed, TransitionSystem& ts, const FuzzOptions& opts);

/// Replays the trace from the initial configuration; true iff every digest
/// and the final tree match.
bool replay_episode(const Episode& e, TransitionSystem& ts);

}  // namespace amparse

#endif  // AMPARSE_ORACLES_HPP
