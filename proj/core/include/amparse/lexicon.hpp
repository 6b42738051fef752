#ifndef AMPARSE_LEXICON_HPP
#define AMPARSE_LEXICON_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "amparse/as_graph.hpp"
#include "amparse/edge_label.hpp"
#include "amparse/type.hpp"

namespace amparse {

/// Reserved spelling of the bottom supertag in trees and cost files.
inline const std::string kBottom = "BOT";

/// Graph constants, the type inventory and the operation set.
///
/// Invariant: every constant's type is in `omega`; `types` caches them.
class Lexicon {
 public:
  /// Adds or replaces a constant and inserts its type into omega.
  void add_constant(const std::string& name, AsGraph g);
  void add_type(Type t) { omega_.insert(std::move(t)); }
  void add_label(EdgeLabel l) { labels_.insert(std::move(l)); }

  const std::map<std::string, AsGraph>& constants() const { return constants_; }
  const AsGraph& constant(const std::string& name) const;
  bool has_constant(const std::string& name) const { return constants_.count(name) > 0; }
  const Type& type_of(const std::string& name) const;
  const std::set<Type>& omega() const { return omega_; }
  const std::set<EdgeLabel>& labels() const { return labels_; }
  bool has_label(const EdgeLabel& l) const { return labels_.count(l) > 0; }

  /// Sources occurring anywhere in omega.
  SourceSet sources() const;

 private:
  std::map<std::string, AsGraph> constants_;
  std::map<std::string, Type> types_;
  std::set<Type> omega_;
  std::set<EdgeLabel> labels_ = {EdgeLabel::root(), EdgeLabel::ignore()};
};

struct ClosureViolation {
  int assumption = 0;  // 1..4
  std::string witness;
};

struct ClosureReport {
  std::vector<ClosureViolation> violations;
  bool closed() const { return violations.empty(); }
};

ClosureReport validate_closure(const Lexicon& lex);

/// Adds request and [b] types to omega, synthesizes a constant for every
/// unrealized type and adds missing APP labels. Idempotent.
Lexicon augment_closure(const Lexicon& lex);

/// Constant names with type `t`, lexicographic. Throws if t is not in omega.
std::vector<std::string> constants_of_type(const Lexicon& lex, const Type& t);

/// Reads the lexicon file format. APP_a is implied for every source of a
/// constant; MOD labels come from `modlabel` lines. Throws FormatError.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon_file(const std::string& path);
void write_lexicon(std::ostream& out, const Lexicon& lex);

/// The fixed example lexicon: want, writer, sleep, soundly, soundly_ctl.
Lexicon desk_lexicon();

}  // namespace amparse

#endif  // AMPARSE_LEXICON_HPP
