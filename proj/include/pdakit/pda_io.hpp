#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pdakit/pda.hpp"

namespace pdakit {

// Text format:
//   line 1        K F Z S
//   next F lines  K tokens, each '*' or a positive decimal symbol
// '#' lines are comments, blank lines are ignored, and the text must end
// with a newline. K and F must match the grid. Z and S are claims that the
// verifier checks; they are not enforced here.

struct PdaDocument {
  DeclaredParams header;
  PdaArray array;
};

/// Throws ParseError (with 1-based line and column) on a malformed header,
/// a dimension mismatch, a bad token, a non-positive symbol, or a gap in
/// the set of symbols used.
PdaDocument parse_pda_document(std::string_view text);
PdaArray parse_pda(std::string_view text);

/// Header written from counted values (Z from the first column).
std::string emit_pda(const PdaArray& arr);

PdaDocument read_pda_file(const std::filesystem::path& path);
void write_pda_file(const std::filesystem::path& path, const PdaArray& arr);

}  // namespace pdakit
