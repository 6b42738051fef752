#include "amparse/grammar.hpp"

#include <algorithm>
#include <bit>

namespace amparse {

Grammar::Grammar(const Lexicon& lex) : lex_(&lex) {
  for (const auto& s : lex.sources()) types_.source_bit(s);
  for (const auto& l : lex.labels()) {
    if (l.is_operation()) types_.source_bit(l.source);
  }
  for (const auto& [name, _] : lex.constants()) {
    int g = static_cast<int>(names_.size());
    names_.push_back(name);
    name_index_[name] = g;
    TypeId t = types_.intern(lex.type_of(name));
    constant_types_.push_back(t);
    by_type_[t].push_back(g);
  }
  for (const auto& t : lex.omega()) omega_.push_back(types_.intern(t));
  std::sort(omega_.begin(), omega_.end(), [&](TypeId a, TypeId b) { return types_.text(a) < types_.text(b); });
  for (const auto& l : lex.labels()) {
    if (l.is_app()) app_bits_.push_back(types_.source_bit(l.source));
    if (l.is_mod()) mod_bits_.push_back(types_.source_bit(l.source));
  }
}

int Grammar::constant_index(const std::string& name) const {
  auto it = name_index_.find(name);
  return it == name_index_.end() ? -1 : it->second;
}

const std::vector<int>& Grammar::constants_of(TypeId t) const {
  static const std::vector<int> kNone;
  auto it = by_type_.find(t);
  return it == by_type_.end() ? kNone : it->second;
}

bool Grammar::in_omega(TypeId t) const { return std::find(omega_.begin(), omega_.end(), t) != omega_.end(); }

bool Grammar::has_app(int bit) const { return std::find(app_bits_.begin(), app_bits_.end(), bit) != app_bits_.end(); }

bool Grammar::has_mod(int bit) const { return std::find(mod_bits_.begin(), mod_bits_.end(), bit) != mod_bits_.end(); }

std::vector<TypeId> Grammar::poss_lex(TypeId t, SourceMask applied, int budget) {
  std::vector<TypeId> out;
  if (budget < 0) return out;
  for (TypeId lam : omega_) {
    auto as = types_.apply_set(lam, t);
    if (!as || (applied & ~*as) != 0) continue;
    if (std::popcount(*as & ~applied) <= budget) out.push_back(lam);
  }
  return out;
}

const std::vector<TypeId>& Grammar::mod_targets(TypeId head_lex, int beta_bit) {
  auto key = std::make_pair(head_lex, beta_bit);
  auto it = mod_targets_.find(key);
  if (it != mod_targets_.end()) return it->second;
  std::vector<TypeId> out;
  for (TypeId tau : omega_) {
    if (types_.mod_ok(head_lex, tau, beta_bit)) out.push_back(tau);
  }
  return mod_targets_.emplace(key, std::move(out)).first->second;
}

}  // namespace amparse
