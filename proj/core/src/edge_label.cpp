#include "amparse/edge_label.hpp"

#include <stdexcept>

#include "amparse/type.hpp"

namespace amparse {

std::string to_string(const EdgeLabel& label) {
  switch (label.kind) {
    case EdgeLabel::Kind::App:
      return "APP_" + label.source;
    case EdgeLabel::Kind::Mod:
      return "MOD_" + label.source;
    case EdgeLabel::Kind::Root:
      return "ROOT";
    case EdgeLabel::Kind::Ignore:
      return "IGNORE";
  }
  return "?";
}

EdgeLabel parse_edge_label(std::string_view text) {
  if (text == "ROOT") return EdgeLabel::root();
  if (text == "IGNORE") return EdgeLabel::ignore();
  auto with_source = [&](std::string_view prefix, EdgeLabel::Kind kind) -> std::optional<EdgeLabel> {
    if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
    std::string_view src = text.substr(prefix.size());
    if (!is_source_name(src)) {
      throw std::invalid_argument("bad source name in edge label: " + std::string(text));
    }
    return EdgeLabel{kind, std::string(src)};
  };
  if (auto l = with_source("APP_", EdgeLabel::Kind::App)) return *l;
  if (auto l = with_source("MOD_", EdgeLabel::Kind::Mod)) return *l;
  throw std::invalid_argument("unknown edge label: " + std::string(text));
}

}  // namespace amparse
