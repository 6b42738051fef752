#ifndef AMPARSE_COSTS_HPP
#define AMPARSE_COSTS_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "amparse/dep_tree.hpp"
#include "amparse/edge_label.hpp"
#include "amparse/lexicon.hpp"

namespace amparse {

using Cost = double;
inline constexpr Cost kInf = std::numeric_limits<Cost>::infinity();

/// Supertag and edge costs for one sentence. Missing entries are +inf.
struct SentenceCosts {
  std::string id;
  int n = 0;
  std::vector<std::string> forms;                       // forms[i-1] for token i
  std::vector<std::map<std::string, Cost>> tags;        // tags[i-1]: constant or BOT -> cost
  std::map<std::tuple<int, int, EdgeLabel>, Cost> edges;  // (from, to, label)

  Cost tag_cost(int i, const std::string& constant) const;
  Cost edge_cost(int from, int to, const EdgeLabel& label) const;
  void set_tag(int i, const std::string& constant, Cost c);
  void set_edge(int from, int to, const EdgeLabel& label, Cost c);

  friend bool operator==(const SentenceCosts&, const SentenceCosts&) = default;
};

SentenceCosts make_sentence(std::string id, std::vector<std::string> forms);

/// Throws std::invalid_argument on negative costs or out-of-range entries.
void validate_costs(const SentenceCosts& c);

std::vector<SentenceCosts> load_costs(std::istream& in);
std::vector<SentenceCosts> load_costs_file(const std::string& path);
void write_costs(std::ostream& out, const std::vector<SentenceCosts>& sentences);

Cost tree_cost(const AmDepTree& t, const SentenceCosts& c);

struct SyntheticParams {
  Cost lo = 0.0;
  Cost hi = 1.0;
};

/// Seeded costs over every constant plus BOT and every legal edge of the
/// lexicon's labels, uniform in [lo, hi] on the grid of multiples of 1/64.
SentenceCosts gen_synthetic(std::uint64_t seed, int n, const Lexicon& lex, const SyntheticParams& params = {});

/// Prices every decision of gen_synthetic's support at 1, except the
/// decisions of `gold`, which cost 0.
SentenceCosts gold_zero_costs(const AmDepTree& gold, const Lexicon& lex, std::string id = "gold");

/// The k cheapest priced non-BOT constants for token i; ties lexicographic.
std::vector<std::pair<std::string, Cost>> top_k_tags(const SentenceCosts& c, int i, int k);

}  // namespace amparse

#endif  // AMPARSE_COSTS_HPP
