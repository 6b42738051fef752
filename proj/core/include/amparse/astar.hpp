#ifndef AMPARSE_ASTAR_HPP
#define AMPARSE_ASTAR_HPP

#include <string>
#include <vector>

#include "amparse/chart.hpp"

namespace amparse {

enum class HeuristicKind { Trivial, Supertag, Edge, IgnoreAware };

HeuristicKind parse_heuristic(const std::string& name);
std::string to_string(HeuristicKind kind);
inline const std::vector<HeuristicKind> kAllHeuristics = {HeuristicKind::Trivial, HeuristicKind::Supertag,
                                                          HeuristicKind::Edge, HeuristicKind::IgnoreAware};

/// Outside estimate for span [i, k): the sum over tokens outside the span of
/// a per-token lower bound. O(1) per query after construction.
class OutsideHeuristic {
 public:
  OutsideHeuristic(HeuristicKind kind, const SentenceCosts& costs, const Lexicon& lex);

  Cost token(int j) const { return per_token_.at(j); }
  Cost operator()(int i, int k) const;
  Cost operator()(const ParseItem& it) const { return it.is_goal() ? 0 : (*this)(it.i, it.k); }

 private:
  int n_;
  std::vector<Cost> per_token_;
  std::vector<Cost> prefix_, suffix_;   // finite parts
  std::vector<int> prefix_inf_, suffix_inf_;
};

Cost heuristic(HeuristicKind kind, const ParseItem& item, const SentenceCosts& costs, const Lexicon& lex);

struct AstarOptions {
  HeuristicKind heuristic = HeuristicKind::IgnoreAware;
  int k_tags = 6;
  std::size_t dequeue_limit = 1000000;
  /// Called on every non-stale dequeued item with its heuristic value.
  std::function<void(const ParseItem&, Cost h)> on_dequeue;
};

DecodeResult astar_parse(const SentenceCosts& costs, const Lexicon& lex, const AstarOptions& opts = {});
DecodeResult astar_parse(const SentenceCosts& costs, Grammar& grammar, const AstarOptions& opts = {});

}  // namespace amparse

#endif  // AMPARSE_ASTAR_HPP
