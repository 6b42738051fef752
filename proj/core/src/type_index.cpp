#include "amparse/type_index.hpp"

#include <algorithm>
#include <numeric>

namespace amparse {

namespace {

std::uint64_t key2(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

}  // namespace

TypeIndex::TypeIndex() { intern(Type{}); }

TypeId TypeIndex::intern(const Type& t) {
  auto it = ids_.find(t);
  if (it != ids_.end()) return it->second;
  SourceMask mask = 0;
  for (const auto& s : t.nodes()) mask |= SourceMask{1} << source_bit(s);
  TypeId id = static_cast<TypeId>(types_.size());
  types_.push_back(t);
  texts_.push_back(serialize_type(t));
  masks_.push_back(mask);
  ids_.emplace(t, id);
  ranks_.clear();
  return id;
}

int TypeIndex::rank(TypeId id) {
  if (ranks_.size() != types_.size()) {
    std::vector<TypeId> order(types_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](TypeId a, TypeId b) { return texts_[a] < texts_[b]; });
    ranks_.assign(types_.size(), 0);
    for (std::size_t r = 0; r < order.size(); ++r) ranks_[order[r]] = static_cast<int>(r);
  }
  return ranks_.at(id);
}

int TypeIndex::source_bit(const SourceName& s) {
  auto it = source_bits_.find(s);
  if (it != source_bits_.end()) return it->second;
  if (source_names_.size() >= 32) throw std::length_error("more than 32 distinct source names");
  int bit = static_cast<int>(source_names_.size());
  source_names_.push_back(s);
  source_bits_.emplace(s, bit);
  return bit;
}

std::optional<int> TypeIndex::find_source_bit(const SourceName& s) const {
  auto it = source_bits_.find(s);
  if (it == source_bits_.end()) return std::nullopt;
  return it->second;
}

SourceSet TypeIndex::mask_to_set(SourceMask m) const {
  SourceSet out;
  for (std::size_t b = 0; b < source_names_.size(); ++b) {
    if (m & (SourceMask{1} << b)) out.insert(source_names_[b]);
  }
  return out;
}

SourceMask TypeIndex::set_to_mask(const SourceSet& s) {
  SourceMask m = 0;
  for (const auto& name : s) m |= SourceMask{1} << source_bit(name);
  return m;
}

TypeId TypeIndex::request(TypeId t, int bit) {
  auto key = key2(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(bit));
  auto it = request_memo_.find(key);
  if (it != request_memo_.end()) return it->second;
  TypeId r = intern(amparse::request(types_.at(t), source_names_.at(bit)));
  request_memo_.emplace(key, r);
  return r;
}

std::optional<SourceMask> TypeIndex::apply_set(TypeId lex, TypeId term) {
  auto key = key2(static_cast<std::uint64_t>(lex), static_cast<std::uint64_t>(term));
  auto it = apply_memo_.find(key);
  if (it != apply_memo_.end()) return it->second;
  std::optional<SourceMask> out;
  if (auto s = amparse::apply_set(types_.at(lex), types_.at(term))) out = set_to_mask(*s);
  apply_memo_.emplace(key, out);
  return out;
}

std::optional<TypeId> TypeIndex::after_applies(TypeId lex, SourceMask applied) {
  auto key = key2(static_cast<std::uint64_t>(lex), applied);
  auto it = after_memo_.find(key);
  if (it != after_memo_.end()) return it->second;
  std::optional<TypeId> out;
  const Type& t = types_.at(lex);
  if ((applied & ~masks_.at(lex)) == 0) {
    SourceSet removed = mask_to_set(applied);
    bool closed = true;
    for (const auto& x : t.nodes()) {
      if (removed.count(x)) continue;
      for (const auto& y : t.successors(x)) {
        if (removed.count(y)) closed = false;
      }
    }
    if (closed) {
      SourceSet keep;
      for (const auto& x : t.nodes()) {
        if (!removed.count(x)) keep.insert(x);
      }
      out = intern(t.induced(keep));
    }
  }
  after_memo_.emplace(key, out);
  return out;
}

bool TypeIndex::mod_ok(TypeId head, TypeId arg, int beta_bit) {
  std::uint64_t key = (static_cast<std::uint64_t>(head) << 40) | (static_cast<std::uint64_t>(arg) << 8) |
                      static_cast<std::uint64_t>(beta_bit);
  auto it = mod_memo_.find(key);
  if (it != mod_memo_.end()) return it->second;
  bool ok = type_combine(EdgeLabel::mod(source_names_.at(beta_bit)), types_.at(head), types_.at(arg)).has_value();
  mod_memo_.emplace(key, ok);
  return ok;
}

}  // namespace amparse
