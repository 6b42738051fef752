#ifndef AMPARSE_EDGE_LABEL_HPP
#define AMPARSE_EDGE_LABEL_HPP

#include <compare>
#include <string>
#include <string_view>

namespace amparse {

/// Dependency edge label: APP_a, MOD_b, ROOT or IGNORE.
struct EdgeLabel {
  enum class Kind { App, Mod, Root, Ignore };

  Kind kind = Kind::Root;
  std::string source;  // empty for ROOT / IGNORE

  static EdgeLabel app(std::string s) { return {Kind::App, std::move(s)}; }
  static EdgeLabel mod(std::string s) { return {Kind::Mod, std::move(s)}; }
  static EdgeLabel root() { return {Kind::Root, {}}; }
  static EdgeLabel ignore() { return {Kind::Ignore, {}}; }

  bool is_app() const { return kind == Kind::App; }
  bool is_mod() const { return kind == Kind::Mod; }
  bool is_operation() const { return is_app() || is_mod(); }

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
  friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;
};

/// On-disk spelling: "APP_s", "MOD_m", "ROOT", "IGNORE".
std::string to_string(const EdgeLabel& label);

/// Parses the on-disk spelling; throws std::invalid_argument on unknown labels.
EdgeLabel parse_edge_label(std::string_view text);

}  // namespace amparse

#endif  // AMPARSE_EDGE_LABEL_HPP
