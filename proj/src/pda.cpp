#include "pdakit/pda.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "pdakit/errors.hpp"

namespace pdakit {

Cell Cell::symbol(std::uint32_t value) {
  if (value == 0) throw DomainError("symbols are positive integers; 0 is not a symbol");
  return Cell{value};
}

std::string to_string(const CellRef& ref) {
  return "(" + std::to_string(ref.row + 1) + "," + std::to_string(ref.col + 1) + ")";
}

PdaArray::PdaArray(std::size_t rows, std::size_t cols)
    : PdaArray(rows, cols, std::vector<Cell>(rows * cols)) {}

PdaArray::PdaArray(std::size_t rows, std::size_t cols, std::vector<Cell> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows_ == 0 || cols_ == 0) throw DomainError("a PDA needs at least one row and one column");
  if (cells_.size() != rows_ * cols_) {
    throw DomainError("cell count " + std::to_string(cells_.size()) + " does not match " +
                      std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

PdaArray PdaArray::from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  if (rows.empty()) throw DomainError("a PDA needs at least one row");
  const std::size_t cols = rows.front().size();
  std::vector<Cell> cells;
  cells.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DomainError("ragged rows");
    for (auto v : r) cells.push_back(v == 0 ? kStar : Cell::symbol(v));
  }
  return PdaArray(rows.size(), cols, std::move(cells));
}

std::uint32_t PdaArray::max_symbol() const {
  std::uint32_t best = 0;
  for (auto c : cells_) best = std::max(best, c.value());
  return best;
}

PdaArray PdaArray::transposed() const {
  PdaArray out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
  return out;
}

std::string to_string(const PdaParams& p) {
  return "(" + p.users.str() + "," + p.subpackets.str() + "," + p.stars.str() + "," +
         p.symbols.str() + ")";
}

std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    case Condition::C3a: return "C3a";
    case Condition::C3b: return "C3b";
  }
  return "?";
}

namespace {

std::vector<std::size_t> star_counts(const PdaArray& arr) {
  std::vector<std::size_t> counts(arr.cols(), 0);
  for (std::size_t r = 0; r < arr.rows(); ++r) {
    const auto row = arr.row(r);
    for (std::size_t c = 0; c < arr.cols(); ++c) counts[c] += row[c].is_star() ? 1 : 0;
  }
  return counts;
}

// Cells grouped by symbol via counting sort. Group s spans
// refs[offsets[s] .. offsets[s+1]) in row-major order.
struct SymbolGroups {
  std::vector<std::size_t> offsets;
  std::vector<CellRef> refs;

  std::span<const CellRef> group(std::uint32_t s) const {
    return std::span<const CellRef>(refs).subspan(offsets[s], offsets[s + 1] - offsets[s]);
  }
};

SymbolGroups group_by_symbol(const PdaArray& arr, std::uint32_t max_symbol) {
  SymbolGroups g;
  g.offsets.assign(static_cast<std::size_t>(max_symbol) + 2, 0);
  for (auto c : arr.cells())
    if (c.is_symbol()) ++g.offsets[c.value() + 1];
  for (std::size_t s = 1; s < g.offsets.size(); ++s) g.offsets[s] += g.offsets[s - 1];
  g.refs.resize(g.offsets.back());
  std::vector<std::size_t> fill(g.offsets.begin(), g.offsets.end() - 1);
  for (std::size_t r = 0; r < arr.rows(); ++r) {
    const auto row = arr.row(r);
    for (std::size_t c = 0; c < arr.cols(); ++c)
      if (row[c].is_symbol()) g.refs[fill[row[c].value()]++] = CellRef{r, c};
  }
  return g;
}

class ViolationSink {
 public:
  explicit ViolationSink(std::size_t limit) : limit_(limit) {}

  bool full() const { return limit_ != 0 && items_.size() >= limit_; }

  void add(Condition cond, std::vector<CellRef> where, std::string detail) {
    if (full()) {
      truncated_ = true;
      return;
    }
    items_.push_back(Violation{cond, std::move(where), std::move(detail)});
  }

  VerificationReport finish() && {
    std::stable_sort(items_.begin(), items_.end(), [](const Violation& a, const Violation& b) {
      if (a.condition != b.condition) return a.condition < b.condition;
      return a.locations < b.locations;
    });
    VerificationReport report;
    report.valid = items_.empty();
    report.violations = std::move(items_);
    report.truncated = truncated_;
    return report;
  }

  void mark_truncated() { truncated_ = true; }

 private:
  std::size_t limit_;
  bool truncated_ = false;
  std::vector<Violation> items_;
};

std::size_t most_common(const std::vector<std::size_t>& counts) {
  std::map<std::size_t, std::size_t> freq;
  for (auto c : counts) ++freq[c];
  std::size_t best = counts.front();
  std::size_t best_freq = 0;
  for (auto [value, n] : freq) {
    if (n > best_freq) {
      best = value;
      best_freq = n;
    }
  }
  return best;
}

}  // namespace

VerificationReport verify_pda(const PdaArray& arr, const VerifyOptions& options) {
  ViolationSink sink(options.max_violations);

  // C1
  const auto counts = star_counts(arr);
  const std::size_t expected_stars =
      options.declared ? options.declared->stars : most_common(counts);
  for (std::size_t c = 0; c < arr.cols(); ++c) {
    if (counts[c] == expected_stars) continue;
    std::vector<CellRef> where;
    for (std::size_t r = 0; r < arr.rows(); ++r)
      if (arr.at(r, c).is_star()) where.push_back({r, c});
    sink.add(Condition::C1, std::move(where),
             "column " + std::to_string(c + 1) + " has " + std::to_string(counts[c]) +
                 " stars, expected " + std::to_string(expected_stars));
  }

  // C2
  const std::uint32_t max_symbol = arr.max_symbol();
  const auto groups = group_by_symbol(arr, max_symbol);
  const std::size_t alphabet = options.declared ? options.declared->symbols : max_symbol;
  for (std::size_t s = 1; s <= alphabet; ++s) {
    if (s > max_symbol || groups.group(static_cast<std::uint32_t>(s)).empty())
      sink.add(Condition::C2, {}, "symbol " + std::to_string(s) + " never occurs");
  }
  for (std::size_t s = alphabet + 1; s <= max_symbol; ++s) {
    const auto g = groups.group(static_cast<std::uint32_t>(s));
    if (g.empty()) continue;
    sink.add(Condition::C2, std::vector<CellRef>(g.begin(), g.end()),
             "symbol " + std::to_string(s) + " exceeds S = " + std::to_string(alphabet));
  }

  // C3: only pairs of equal symbols can violate it.
  for (std::uint32_t s = 1; s <= max_symbol && !sink.full(); ++s) {
    const auto g = groups.group(s);
    for (std::size_t i = 0; i < g.size() && !sink.full(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        const CellRef a = g[i];
        const CellRef b = g[j];
        if (a.row == b.row || a.col == b.col) {
          sink.add(Condition::C3a, {a, b},
                   "symbol " + std::to_string(s) + " repeats in the same " +
                       (a.row == b.row ? "row" : "column"));
          continue;
        }
        const CellRef cross1{a.row, b.col};
        const CellRef cross2{b.row, a.col};
        std::vector<CellRef> where{a, b};
        if (!arr.at(cross1.row, cross1.col).is_star()) where.push_back(cross1);
        if (!arr.at(cross2.row, cross2.col).is_star()) where.push_back(cross2);
        if (where.size() > 2) {
          sink.add(Condition::C3b, std::move(where),
                   "symbol " + std::to_string(s) + " lacks stars at the cross positions");
        }
      }
    }
    if (sink.full()) sink.mark_truncated();
  }

  return std::move(sink).finish();
}

PdaParams params_of(const PdaArray& arr) {
  const auto counts = star_counts(arr);
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] != counts[0]) {
      throw PdaError("column " + std::to_string(c + 1) + " has " + std::to_string(counts[c]) +
                     " stars but column 1 has " + std::to_string(counts[0]) +
                     "; Z is not well defined");
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(arr.max_symbol()) + 1, false);
  std::size_t distinct = 0;
  for (auto c : arr.cells()) {
    if (c.is_symbol() && !seen[c.value()]) {
      seen[c.value()] = true;
      ++distinct;
    }
  }
  return PdaParams{arr.cols(), arr.rows(), counts[0], distinct};
}

PdaArray canonicalize(const PdaArray& arr) {
  std::vector<std::uint32_t> relabel(static_cast<std::size_t>(arr.max_symbol()) + 1, 0);
  std::uint32_t next = 0;
  std::vector<Cell> cells;
  cells.reserve(arr.cells().size());
  for (auto c : arr.cells()) {
    if (c.is_star()) {
      cells.push_back(kStar);
      continue;
    }
    auto& label = relabel[c.value()];
    if (label == 0) label = ++next;
    cells.push_back(Cell::symbol(label));
  }
  return PdaArray(arr.rows(), arr.cols(), std::move(cells));
}

bool equivalent(const PdaArray& a, const PdaArray& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<std::uint32_t> forward(static_cast<std::size_t>(a.max_symbol()) + 1, 0);
  std::vector<std::uint32_t> backward(static_cast<std::size_t>(b.max_symbol()) + 1, 0);
  const auto ca = a.cells();
  const auto cb = b.cells();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].is_star() != cb[i].is_star()) return false;
    if (ca[i].is_star()) continue;
    auto& f = forward[ca[i].value()];
    auto& g = backward[cb[i].value()];
    if (f == 0 && g == 0) {
      f = cb[i].value();
      g = ca[i].value();
    } else if (f != cb[i].value() || g != ca[i].value()) {
      return false;
    }
  }
  return true;
}

}  // namespace pdakit
