#ifndef AMPARSE_DEP_TREE_HPP
#define AMPARSE_DEP_TREE_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amparse/as_graph.hpp"
#include "amparse/edge_label.hpp"
#include "amparse/lexicon.hpp"

namespace amparse {

struct TreeEntry {
  std::string form;
  std::string constant = kBottom;
  int head = 0;
  EdgeLabel label = EdgeLabel::ignore();

  bool ignored() const { return constant == kBottom; }
  friend bool operator==(const TreeEntry&, const TreeEntry&) = default;
};

/// Tokens are numbered 1..n; entry(i) is token i.
struct AmDepTree {
  std::vector<TreeEntry> entries;

  int n() const { return static_cast<int>(entries.size()); }
  TreeEntry& entry(int i) { return entries.at(i - 1); }
  const TreeEntry& entry(int i) const { return entries.at(i - 1); }
  /// Token with the ROOT label, or 0 when there is none.
  int root() const;
  /// Children of token h (h = 0 for the artificial root), ascending.
  std::vector<int> children(int h) const;

  friend bool operator==(const AmDepTree&, const AmDepTree&) = default;
};

/// Throws std::invalid_argument unless the structural tree invariants hold.
void validate_tree(const AmDepTree& t);

/// True iff no edge spans an attached token that is not below its head.
bool is_projective(const AmDepTree& t);

struct TypingReport {
  bool ok = false;
  std::map<int, Type> term_types;
  std::optional<std::pair<int, std::string>> failure;
};

TypingReport check_well_typed(const AmDepTree& t, const Lexicon& lex);

/// Picks which of the currently eligible APP children to apply next; returns
/// an index into `eligible`. The default takes the first (lowest token).
using AppOrderPolicy = std::function<std::size_t(const std::vector<int>& eligible)>;

/// Throws std::invalid_argument when the tree is not well-typed.
AsGraph evaluate_tree(const AmDepTree& t, const Lexicon& lex, const AppOrderPolicy& policy = {});

/// Tree TSV blocks, each preceded by "# sentence <id>". A sentence without a
/// tree is written as a block holding the single line NO-PARSE or LIMIT.
struct TreeRecord {
  std::string id;
  std::optional<AmDepTree> tree;
  std::string marker;  // "NO-PARSE" / "LIMIT" when tree is absent
};

void write_tree(std::ostream& out, const AmDepTree& t);
void write_tree_records(std::ostream& out, const std::vector<TreeRecord>& records);
std::vector<TreeRecord> read_tree_records(std::istream& in);
std::vector<TreeRecord> read_tree_file(const std::string& path);

}  // namespace amparse

#endif  // AMPARSE_DEP_TREE_HPP
