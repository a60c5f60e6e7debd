#pragma once

// Plain-text family definitions, one key per line:
//
//   label = legendre
//   a2 = [0, -1]        # coefficients in ascending degree of t
//   A = [...]  B = [...]  (short form, expanded to a4 = A, a6 = B)
//
// Unset coefficients default to zero; unknown keys are rejected.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ellsum/curves.hpp"

namespace ellsum::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

curves::WeierstrassFamily parse_family_text(std::string_view text);
curves::WeierstrassFamily parse_family(const std::filesystem::path& path);

/// Canonical text form; parse_family_text(format_family(F)) reproduces F.
std::string format_family(const curves::WeierstrassFamily& family);

}  // namespace ellsum::io
