#ifndef AMPARSE_TYPE_INDEX_HPP
#define AMPARSE_TYPE_INDEX_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "amparse/type.hpp"

namespace amparse {

using TypeId = int;
/// Bit set over the source names registered in a TypeIndex.
using SourceMask = std::uint32_t;

/// Interns types and memoizes the type queries the decoders run in their
/// inner loops. Not thread-safe; use one index per worker.
class TypeIndex {
 public:
  TypeIndex();

  TypeId intern(const Type& t);
  const Type& type(TypeId id) const { return types_.at(id); }
  /// Canonical serialization, cached.
  const std::string& text(TypeId id) const { return texts_.at(id); }
  /// Position of `id` in the serialization order of all interned types
  /// (refreshed lazily).
  int rank(TypeId id);
  std::size_t size() const { return types_.size(); }
  TypeId empty_type() const { return 0; }

  /// Registers a source name; throws once more than 32 are used.
  int source_bit(const SourceName& s);
  std::optional<int> find_source_bit(const SourceName& s) const;
  const SourceName& source_name(int bit) const { return source_names_.at(bit); }
  std::size_t source_count() const { return source_names_.size(); }
  SourceMask nodes_mask(TypeId id) const { return masks_.at(id); }
  SourceSet mask_to_set(SourceMask m) const;
  SourceMask set_to_mask(const SourceSet& s);

  TypeId request(TypeId t, int bit);
  /// apply_set(lex, term) as a mask, memoized.
  std::optional<SourceMask> apply_set(TypeId lex, TypeId term);
  /// The term type lex minus `applied` when `applied` is a subset of lex's
  /// nodes with no edge into it from the rest; nullopt otherwise.
  std::optional<TypeId> after_applies(TypeId lex, SourceMask applied);
  /// type_combine(MOD(beta), head, arg) is defined.
  bool mod_ok(TypeId head, TypeId arg, int beta_bit);
  /// type_combine(APP(alpha), lex minus nothing, arg) ignoring incoming
  /// edges: arg == request(lex, alpha).
  bool app_fits(TypeId lex, int alpha_bit, TypeId arg) { return request(lex, alpha_bit) == arg; }

 private:
  std::vector<Type> types_;
  std::vector<std::string> texts_;
  std::vector<SourceMask> masks_;
  std::map<Type, TypeId> ids_;
  std::vector<SourceName> source_names_;
  std::map<SourceName, int> source_bits_;
  std::vector<int> ranks_;
  std::unordered_map<std::uint64_t, TypeId> request_memo_;
  std::unordered_map<std::uint64_t, std::optional<SourceMask>> apply_memo_;
  std::unordered_map<std::uint64_t, std::optional<TypeId>> after_memo_;
  std::unordered_map<std::uint64_t, bool> mod_memo_;
};

}  // namespace amparse

#endif  // AMPARSE_TYPE_INDEX_HPP
