#ifndef AMPARSE_GRAMMAR_HPP
#define AMPARSE_GRAMMAR_HPP

#include <map>
#include <string>
#include <vector>

#include "amparse/lexicon.hpp"
#include "amparse/type_index.hpp"

namespace amparse {

/// A lexicon compiled for decoding: interned types, constant indices and
/// memoized type-system queries. One per worker thread.
class Grammar {
 public:
  explicit Grammar(const Lexicon& lex);
  Grammar(Lexicon&&) = delete;  // the grammar borrows the lexicon

  const Lexicon& lexicon() const { return *lex_; }
  TypeIndex& types() { return types_; }

  int constant_count() const { return static_cast<int>(names_.size()); }
  /// Constants are numbered in lexicographic name order.
  const std::string& constant_name(int g) const { return names_.at(g); }
  int constant_index(const std::string& name) const;
  TypeId constant_type(int g) const { return constant_types_.at(g); }
  const std::vector<int>& constants_of(TypeId t) const;

  /// Omega, in canonical serialization order.
  const std::vector<TypeId>& omega() const { return omega_; }
  bool in_omega(TypeId t) const;

  /// APP and MOD labels of the lexicon, as source bits (ascending by name).
  const std::vector<int>& app_sources() const { return app_bits_; }
  const std::vector<int>& mod_sources() const { return mod_bits_; }
  bool has_app(int bit) const;
  bool has_mod(int bit) const;

  /// {lambda in omega : A subset of apply_set(lambda, t), |apply_set - A| <= n}.
  std::vector<TypeId> poss_lex(TypeId t, SourceMask applied, int budget);
  /// Types a MOD_beta child of a head with lexical type `head_lex` may have.
  const std::vector<TypeId>& mod_targets(TypeId head_lex, int beta_bit);

 private:
  const Lexicon* lex_;
  TypeIndex types_;
  std::vector<std::string> names_;
  std::map<std::string, int> name_index_;
  std::vector<TypeId> constant_types_;
  std::map<TypeId, std::vector<int>> by_type_;
  std::vector<TypeId> omega_;
  std::vector<int> app_bits_, mod_bits_;
  std::map<std::pair<TypeId, int>, std::vector<TypeId>> mod_targets_;
};

}  // namespace amparse

#endif  // AMPARSE_GRAMMAR_HPP
