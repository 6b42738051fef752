#ifndef AMPARSE_ERRORS_HPP
#define AMPARSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amparse {

/// Malformed input file; the message carries the line number when known.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  FormatError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what) {}
};

}  // namespace amparse

#endif  // AMPARSE_ERRORS_HPP
