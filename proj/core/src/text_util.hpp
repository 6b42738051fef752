#ifndef AMPARSE_TEXT_UTIL_HPP
#define AMPARSE_TEXT_UTIL_HPP

#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "amparse/errors.hpp"

namespace amparse::detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Drops a trailing '#' comment and surrounding whitespace.
inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.remove_suffix(1);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
  return line;
}

/// Text after the first `skip` whitespace-separated words.
inline std::string rest_after(std::string_view line, int skip) {
  std::size_t i = 0;
  for (int w = 0; w < skip; ++w) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
  }
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  return std::string(line.substr(i));
}

inline int parse_int(const std::string& s, int line) {
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw FormatError(line, "expected integer, got '" + s + "'");
  return static_cast<int>(v);
}

inline double parse_double(const std::string& s, int line) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw FormatError(line, "expected number, got '" + s + "'");
  return v;
}

}  // namespace amparse::detail

#endif  // AMPARSE_TEXT_UTIL_HPP
