#ifndef AMPARSE_CHART_HPP
#define AMPARSE_CHART_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "amparse/costs.hpp"
#include "amparse/dep_tree.hpp"
#include "amparse/grammar.hpp"

namespace amparse {

/// A projective decoder item over tokens [i, k) headed by `head`.
///
/// The head's state is its lexical type plus the set of sources already
/// filled by APP children. The item's type is lexical minus applied, and is
/// defined only when those sources can be removed in some order; only such
/// items may become dependents or goals. Goal items span (0, n+1).
struct ParseItem {
  enum class Rule : std::uint8_t { Init, SkipL, SkipR, ArcR, ArcL, Goal };

  int i = 0, k = 0, head = 0;
  TypeId lexical = 0;
  SourceMask applied = 0;
  Cost cost = 0;
  Rule rule = Rule::Init;
  int left = -1, right = -1;  // antecedent ids in the owning arena
  int constant = -1;          // Init only
  int label = -1;             // Arc only: index into ProjectiveSchema::labels()

  bool is_goal() const { return rule == Rule::Goal; }
};

struct ItemSignature {
  int i, k, head;
  TypeId lexical;
  SourceMask applied;
  friend bool operator==(const ItemSignature&, const ItemSignature&) = default;
};

struct ItemSignatureHash {
  std::size_t operator()(const ItemSignature& s) const;
};

/// Deduction rules shared by the exhaustive chart and the A* agenda.
class ProjectiveSchema {
 public:
  ProjectiveSchema(Grammar& grammar, const SentenceCosts& costs, int k_tags);

  int n() const { return n_; }
  Grammar& grammar() { return *grammar_; }
  const SentenceCosts& costs() const { return *costs_; }
  const std::vector<EdgeLabel>& labels() const { return labels_; }

  static ItemSignature signature(const ParseItem& it) { return {it.i, it.k, it.head, it.lexical, it.applied}; }
  /// The item's type, when defined.
  std::optional<TypeId> term(const ParseItem& it) { return grammar_->types().after_applies(it.lexical, it.applied); }

  /// Init items for token i, cheapest-first (top-k pruned, finite cost).
  std::vector<ParseItem> init_items(int i) const;
  std::optional<ParseItem> skip_left(const ParseItem& it, int id) const;
  std::optional<ParseItem> skip_right(const ParseItem& it, int id) const;
  /// Emits every Arc-R then every Arc-L derivation of two adjacent items.
  void arcs(const ParseItem& left, int left_id, const ParseItem& right, int right_id,
            const std::function<void(ParseItem&&)>& emit);
  std::optional<ParseItem> goal(const ParseItem& it, int id);

  /// Reads the tree off a goal item's derivation.
  AmDepTree extract(const std::vector<ParseItem>& arena, int goal_id) const;

 private:
  Cost edge(int from, int to, int label) const { return edge_[(from * (n_ + 1) + to) * labels_.size() + label]; }

  Grammar* grammar_;
  const SentenceCosts* costs_;
  int n_;
  int k_tags_;
  std::vector<EdgeLabel> labels_;
  std::vector<int> label_bits_;
  std::vector<Cost> edge_;
  std::vector<Cost> skip_, root_;
};

struct SearchStats {
  std::size_t dequeued = 0;
  std::size_t pushed = 0;
  std::size_t items = 0;  // chart items stored (chart) or distinct signatures seen (A*)
  std::optional<Cost> goal_cost;
  std::chrono::nanoseconds elapsed{0};
  bool limit_hit = false;
};

enum class DecodeStatus { Ok, NoParse, Limit };

struct DecodeResult {
  DecodeStatus status = DecodeStatus::NoParse;
  std::optional<AmDepTree> tree;
  Cost cost = kInf;
  SearchStats stats;
};

/// Exhaustive CKY-order closure of the schema; the minimum-cost goal.
DecodeResult chart_parse(const SentenceCosts& costs, const Lexicon& lex, int k_tags = 6);
DecodeResult chart_parse(const SentenceCosts& costs, Grammar& grammar, int k_tags = 6);

}  // namespace amparse

#endif  // AMPARSE_CHART_HPP
