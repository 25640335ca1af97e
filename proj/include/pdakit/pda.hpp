#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdakit/numeric.hpp"

namespace pdakit {

/// One entry of a placement delivery array: either the star or a positive
/// integer symbol. Symbol 0 does not exist; it encodes the star internally.
class Cell {
 public:
  constexpr Cell() = default;

  static constexpr Cell star() { return Cell{}; }
  static Cell symbol(std::uint32_t value);

  constexpr bool is_star() const { return raw_ == 0; }
  constexpr bool is_symbol() const { return raw_ != 0; }
  /// The symbol value; 0 for a star.
  constexpr std::uint32_t value() const { return raw_; }

  friend constexpr bool operator==(Cell, Cell) = default;

 private:
  constexpr explicit Cell(std::uint32_t raw) : raw_(raw) {}
  std::uint32_t raw_ = 0;
};

inline constexpr Cell kStar = Cell::star();

/// Zero-based (row, column) coordinate. Printed one-based.
struct CellRef {
  std::size_t row = 0;
  std::size_t col = 0;
  friend constexpr auto operator<=>(const CellRef&, const CellRef&) = default;
};

std::string to_string(const CellRef& ref);

/// F x K grid of cells stored row-major. Rows index packets, columns users.
class PdaArray {
 public:
  /// All-star array; throws DomainError unless rows >= 1 and cols >= 1.
  PdaArray(std::size_t rows, std::size_t cols);
  PdaArray(std::size_t rows, std::size_t cols, std::vector<Cell> cells);

  /// Builds from nested rows where 0 denotes a star.
  static PdaArray from_rows(const std::vector<std::vector<std::uint32_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Cell at(std::size_t row, std::size_t col) const { return cells_[row * cols_ + col]; }
  void set(std::size_t row, std::size_t col, Cell cell) { cells_[row * cols_ + col] = cell; }

  std::span<const Cell> row(std::size_t r) const {
    return std::span<const Cell>(cells_).subspan(r * cols_, cols_);
  }
  std::span<const Cell> cells() const { return cells_; }

  std::uint32_t max_symbol() const;
  PdaArray transposed() const;

  friend bool operator==(const PdaArray&, const PdaArray&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Cell> cells_;
};

/// (K, F, Z, S) with exact derived ratios.
struct PdaParams {
  BigInt users;       // K
  BigInt subpackets;  // F
  BigInt stars;       // Z, per column
  BigInt symbols;     // S

  /// M/N = Z/F.
  Rational memory_ratio() const { return Rational(stars, subpackets); }
  /// R = S/F.
  Rational rate() const { return Rational(symbols, subpackets); }

  friend bool operator==(const PdaParams&, const PdaParams&) = default;
};

std::string to_string(const PdaParams& params);

/// Values claimed by a file header, checked by the verifier as C1/C2 targets.
struct DeclaredParams {
  std::size_t users = 0;
  std::size_t subpackets = 0;
  std::size_t stars = 0;
  std::size_t symbols = 0;
};

enum class Condition { C1, C2, C3a, C3b };

std::string_view condition_name(Condition c);

struct Violation {
  Condition condition;
  std::vector<CellRef> locations;
  std::string detail;
};

struct VerificationReport {
  bool valid = true;
  std::vector<Violation> violations;
  /// Set when max_violations stopped the scan early.
  bool truncated = false;
};

struct VerifyOptions {
  /// When present, C1 uses the declared Z and C2 the declared S instead of
  /// the values inferred from the array.
  std::optional<DeclaredParams> declared;
  /// 0 means unlimited.
  std::size_t max_violations = 0;
};

/// Checks C1 (equal star count per column), C2 (symbols are exactly 1..S)
/// and C3 (equal symbols sit in distinct rows and columns, C3a, with stars
/// at both cross positions, C3b). Every violation is reported, sorted by
/// condition and then by location. Cost is linear in the cell count plus
/// the number of same-symbol pairs.
VerificationReport verify_pda(const PdaArray& arr, const VerifyOptions& options = {});

/// Counts (K, F, Z, S). Throws PdaError if the columns disagree on Z.
PdaParams params_of(const PdaArray& arr);

/// Renumbers symbols 1, 2, ... in order of first row-major appearance.
PdaArray canonicalize(const PdaArray& arr);

/// Same shape, same star pattern, and a bijection between symbol sets
/// mapping one array onto the other cell by cell.
bool equivalent(const PdaArray& a, const PdaArray& b);

}  // namespace pdakit
