#ifndef AMPARSE_TYPE_HPP
#define AMPARSE_TYPE_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amparse/edge_label.hpp"

namespace amparse {

using SourceName = std::string;
using SourceSet = std::set<SourceName>;

/// True iff `name` matches [a-z][a-z0-9_]*.
bool is_source_name(std::string_view name);

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An AM type: a DAG over source names whose edges point from a source to the
/// sources in its request.
///
/// The edge relation is kept transitively closed, so `successors(a)` is the
/// full node set of request(a). Construction validates acyclicity.
class Type {
 public:
  Type() = default;

  /// Builds a type from nodes and requester->requested edges. Endpoints not
  /// listed in `nodes` are added. Throws TypeError on cycles or self-loops.
  static Type from_edges(const SourceSet& nodes,
                         const std::vector<std::pair<SourceName, SourceName>>& edges);

  bool empty() const { return succ_.empty(); }
  std::size_t size() const { return succ_.size(); }
  bool contains(const SourceName& s) const { return succ_.count(s) > 0; }
  SourceSet nodes() const;

  /// Sources reachable from `s` (the request's node set). Empty when `s` is absent.
  const SourceSet& successors(const SourceName& s) const;
  bool has_edge(const SourceName& from, const SourceName& to) const;
  bool has_incoming(const SourceName& s) const;

  /// Direct edges (transitive reduction), for printing.
  SourceSet direct_successors(const SourceName& s) const;
  std::vector<std::pair<SourceName, SourceName>> edges() const;

  /// Induced sub-DAG on `keep`.
  Type induced(const SourceSet& keep) const;
  Type without(const SourceName& s) const;

  friend bool operator==(const Type&, const Type&) = default;
  friend auto operator<=>(const Type& a, const Type& b) { return a.succ_ <=> b.succ_; }

 private:
  std::map<SourceName, SourceSet> succ_;
};

Type parse_type(std::string_view text);
std::string serialize_type(const Type& t);

/// request(t, a): the sub-DAG reachable from `a`, excluding `a`.
/// Throws TypeError if `a` is not a source of `t`.
Type request(const Type& t, const SourceName& a);

/// Term type of attaching a child of type `arg` to a head of type `head`
/// with `label`; nullopt when the combination is not well-typed (and for
/// labels other than APP / MOD).
std::optional<Type> type_combine(const EdgeLabel& label, const Type& head, const Type& arg);

/// The apply set A(lex, term), or nullopt when `term` is not apply-reachable.
std::optional<SourceSet> apply_set(const Type& lex, const Type& term);
bool apply_reachable(const Type& lex, const Type& term);

/// True iff `sub` is an induced sub-DAG of `super` (same nodes, same edges).
bool is_induced_subtype(const Type& sub, const Type& super);

}  // namespace amparse

#endif  // AMPARSE_TYPE_HPP
