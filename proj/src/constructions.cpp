#include "pdakit/constructions.hpp"

#include <string>

#include "pdakit/errors.hpp"

namespace pdakit {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::General: return "general";
    case Family::Special: return "special";
    case Family::ExtGeneral: return "ext-general";
    case Family::ExtSpecial: return "ext-special";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (auto f : {Family::General, Family::Special, Family::ExtGeneral, Family::ExtSpecial})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

namespace {

using Vec = std::vector<std::uint32_t>;

std::uint32_t mod(std::int64_t x, std::uint32_t q) {
  const std::int64_t r = x % static_cast<std::int64_t>(q);
  return static_cast<std::uint32_t>(r < 0 ? r + q : r);
}

// Every vector of [0, radix)^len; coordinate 0 varies fastest, which is the
// order the reference arrays are printed in.
std::vector<Vec> all_vectors(std::uint32_t len, std::uint32_t radix) {
  std::size_t count = 1;
  for (std::uint32_t i = 0; i < len; ++i) count *= radix;
  std::vector<Vec> out;
  out.reserve(count);
  Vec v(len, 0);
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(v);
    for (std::uint32_t i = 0; i < len; ++i) {
      if (++v[i] < radix) break;
      v[i] = 0;
    }
  }
  return out;
}

// size-subsets of [0, n) as increasing vectors, in lexicographic order.
std::vector<Vec> all_subsets(std::uint32_t n, std::uint32_t size) {
  std::vector<Vec> out;
  if (size > n) return out;
  Vec c(size);
  for (std::uint32_t i = 0; i < size; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::int64_t i = static_cast<std::int64_t>(size) - 1;
    while (i >= 0 && c[i] == n - size + i) --i;
    if (i < 0) break;
    ++c[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < size; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

struct RowIndex {
  Vec a;    // m residues mod q
  Vec eps;  // t values in [0, w); empty for the extended families
};

struct ColIndex {
  Vec b;
  Vec delta;              // increasing positions in [0, m)
  Vec eps;                // extended families only
  bool sum_block = false;  // one of the q columns indexed by (b, m)
};

// Mixed-radix code of (s_0..s_{m-1}, s_m..s_{m+t-1}): radix q for the first
// m coordinates and q - z for the last t, most significant first, plus one.
// Dense and bijective onto [1, q^m (q-z)^t].
class SymbolEncoder {
 public:
  SymbolEncoder(std::uint32_t q, std::uint32_t z, std::uint32_t m) : q_(q), tail_(q - z), m_(m) {}

  Cell encode(const Vec& s) const {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < s.size(); ++i) code = code * (i < m_ ? q_ : tail_) + s[i];
    return Cell::symbol(static_cast<std::uint32_t>(code + 1));
  }

 private:
  std::uint64_t q_;
  std::uint64_t tail_;
  std::size_t m_;
};

struct Rules {
  std::uint32_t q;
  std::uint32_t z;
  SymbolEncoder encoder;

  // Star iff some a[delta_i] lies in {b_i, b_i - 1, ..., b_i - (z-1)}.
  // Otherwise coordinate delta_i becomes b_i - eps_i (q - z) and the tail
  // gains a[delta_i] - b_i - 1, which lands in [0, q - z).
  Cell subset_cell(const Vec& a, const Vec& eps, const ColIndex& col, Vec& scratch) const {
    const std::size_t t = col.delta.size();
    for (std::size_t i = 0; i < t; ++i) {
      if (mod(static_cast<std::int64_t>(col.b[i]) - a[col.delta[i]], q) < z) return kStar;
    }
    scratch.assign(a.begin(), a.end());
    scratch.resize(a.size() + t);
    for (std::size_t i = 0; i < t; ++i) {
      const std::int64_t shift = static_cast<std::int64_t>(eps[i]) * (q - z);
      scratch[col.delta[i]] = mod(static_cast<std::int64_t>(col.b[i]) - shift, q);
      scratch[a.size() + i] = mod(static_cast<std::int64_t>(a[col.delta[i]]) - col.b[i] - 1, q);
    }
    return encoder.encode(scratch);
  }

  // With v = sum(a) - shift: star iff v lies in {b, b + 1, ..., b + (z-1)},
  // otherwise (a, b - v - 1).
  Cell sum_cell(const Vec& a, std::int64_t shift, std::uint32_t b, Vec& scratch) const {
    std::int64_t sum = 0;
    for (auto x : a) sum += x;
    const std::uint32_t v = mod(sum - shift, q);
    if (mod(static_cast<std::int64_t>(v) - b, q) < z) return kStar;
    scratch.assign(a.begin(), a.end());
    scratch.push_back(mod(static_cast<std::int64_t>(b) - v - 1, q));
    return encoder.encode(scratch);
  }
};

template <class CellFn>
PdaArray fill(const std::vector<RowIndex>& rows, const std::vector<ColIndex>& cols, CellFn fn) {
  std::vector<Cell> cells(rows.size() * cols.size());
  Vec scratch;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      cells[r * cols.size() + c] = fn(rows[r], cols[c], scratch);
  return PdaArray(rows.size(), cols.size(), std::move(cells));
}

void check_capacity(const PdaParams& params, const BuildOptions& options) {
  const BigInt cells = params.users * params.subpackets;
  if (cells > options.max_cells) {
    throw CapacityError("array would have " + cells.str() + " cells, above the cap of " +
                        std::to_string(options.max_cells));
  }
}

// Rows (eps, a) with eps outer, used by the families that index rows by eps.
std::vector<RowIndex> rows_with_eps(const ConstructionParams& p) {
  std::vector<RowIndex> rows;
  const auto as = all_vectors(p.m, p.q);
  for (auto& eps : all_vectors(p.t, p.replication()))
    for (auto& a : as) rows.push_back({a, eps});
  return rows;
}

std::vector<RowIndex> plain_rows(const ConstructionParams& p) {
  std::vector<RowIndex> rows;
  for (auto& a : all_vectors(p.m, p.q)) rows.push_back({a, {}});
  return rows;
}

// Columns (delta outer, then eps when present, then b).
std::vector<ColIndex> subset_columns(const ConstructionParams& p, bool with_eps) {
  std::vector<ColIndex> cols;
  const auto bs = all_vectors(p.t, p.q);
  const auto epss = with_eps ? all_vectors(p.t, p.replication()) : std::vector<Vec>{Vec{}};
  for (auto& delta : all_subsets(p.m, p.t))
    for (auto& eps : epss)
      for (auto& b : bs) cols.push_back({b, delta, eps, false});
  return cols;
}

void append_sum_block(std::vector<ColIndex>& cols, std::uint32_t q) {
  for (std::uint32_t b = 0; b < q; ++b) cols.push_back({{b}, {}, {}, true});
}

Rules rules_for(const ConstructionParams& p) { return Rules{p.q, p.z, SymbolEncoder(p.q, p.z, p.m)}; }

}  // namespace

void check_domain(Family family, const ConstructionParams& p) {
  if (p.q < 2) throw DomainError("q must be at least 2 (got " + std::to_string(p.q) + ")");
  if (p.z < 1 || p.z >= p.q) {
    throw DomainError("z must satisfy 1 <= z < q (got z=" + std::to_string(p.z) +
                      ", q=" + std::to_string(p.q) + ")");
  }
  if (p.m < 1) throw DomainError("m must be at least 1");
  switch (family) {
    case Family::General:
    case Family::ExtGeneral:
      if (p.t < 1 || p.t >= p.m) {
        throw DomainError("t must satisfy 1 <= t < m (got t=" + std::to_string(p.t) +
                          ", m=" + std::to_string(p.m) + ")");
      }
      break;
    case Family::Special:
    case Family::ExtSpecial:
      if (p.t != 1) throw DomainError("the special families fix t = 1 (got t=" + std::to_string(p.t) + ")");
      break;
  }
}

PdaParams theorem_params(Family family, const ConstructionParams& p) {
  check_domain(family, p);
  const BigInt q = p.q;
  const BigInt w = p.replication();
  const BigInt gap = p.q - p.z;
  const BigInt qm = ipow(q, p.m);
  switch (family) {
    case Family::General: {
      const BigInt wt = ipow(w, p.t);
      return PdaParams{binomial(p.m, p.t) * ipow(q, p.t), wt * qm,
                       wt * (qm - ipow(q, p.m - p.t) * ipow(gap, p.t)), ipow(gap, p.t) * qm};
    }
    case Family::Special:
      return PdaParams{(p.m + 1) * q, w * qm, p.z * w * ipow(q, p.m - 1), gap * qm};
    case Family::ExtGeneral:
      return PdaParams{binomial(p.m, p.t) * ipow(w, p.t) * ipow(q, p.t), qm,
                       qm - ipow(gap, p.t) * ipow(q, p.m - p.t), ipow(gap, p.t) * qm};
    case Family::ExtSpecial:
      return PdaParams{(p.m * w + 1) * q, qm, p.z * ipow(q, p.m - 1), gap * qm};
  }
  throw DomainError("unknown family");
}

PdaArray construct_general(const ConstructionParams& p, const BuildOptions& options) {
  check_capacity(theorem_params(Family::General, p), options);
  const Rules rules = rules_for(p);
  return fill(rows_with_eps(p), subset_columns(p, false),
              [&](const RowIndex& row, const ColIndex& col, Vec& scratch) {
                return rules.subset_cell(row.a, row.eps, col, scratch);
              });
}

PdaArray construct_special(const ConstructionParams& p, const BuildOptions& options) {
  check_capacity(theorem_params(Family::Special, p), options);
  const Rules rules = rules_for(p);
  auto cols = subset_columns(p, false);
  append_sum_block(cols, p.q);
  return fill(rows_with_eps(p), cols, [&](const RowIndex& row, const ColIndex& col, Vec& scratch) {
    if (col.sum_block) {
      const std::int64_t shift = static_cast<std::int64_t>(row.eps[0]) * (p.q - p.z);
      return rules.sum_cell(row.a, shift, col.b[0], scratch);
    }
    return rules.subset_cell(row.a, row.eps, col, scratch);
  });
}

PdaArray construct_ext_general(const ConstructionParams& p, const BuildOptions& options) {
  check_capacity(theorem_params(Family::ExtGeneral, p), options);
  const Rules rules = rules_for(p);
  return fill(plain_rows(p), subset_columns(p, true),
              [&](const RowIndex& row, const ColIndex& col, Vec& scratch) {
                return rules.subset_cell(row.a, col.eps, col, scratch);
              });
}

PdaArray construct_ext_special(const ConstructionParams& p, const BuildOptions& options) {
  check_capacity(theorem_params(Family::ExtSpecial, p), options);
  const Rules rules = rules_for(p);
  auto cols = subset_columns(p, true);
  append_sum_block(cols, p.q);
  return fill(plain_rows(p), cols, [&](const RowIndex& row, const ColIndex& col, Vec& scratch) {
    if (col.sum_block) return rules.sum_cell(row.a, 0, col.b[0], scratch);
    return rules.subset_cell(row.a, col.eps, col, scratch);
  });
}

PdaArray construct(Family family, const ConstructionParams& p, const BuildOptions& options) {
  switch (family) {
    case Family::General: return construct_general(p, options);
    case Family::Special: return construct_special(p, options);
    case Family::ExtGeneral: return construct_ext_general(p, options);
    case Family::ExtSpecial: return construct_ext_special(p, options);
  }
  throw DomainError("unknown family");
}

PdaParams mn_params(std::uint32_t users, std::uint32_t subset_size) {
  if (users < 2 || subset_size < 1 || subset_size >= users) {
    throw DomainError("MN needs 1 <= t <= K-1 (got K=" + std::to_string(users) +
                      ", t=" + std::to_string(subset_size) + ")");
  }
  return PdaParams{users, binomial(users, subset_size), binomial(users - 1, subset_size - 1),
                   binomial(users, subset_size + 1)};
}

PdaArray construct_mn(std::uint32_t users, std::uint32_t subset_size, const BuildOptions& options) {
  check_capacity(mn_params(users, subset_size), options);
  // Colex rank of an r-subset c_0 < ... < c_{r-1} is sum C(c_i, i+1); the
  // labels are then renumbered by first appearance, which for rows in
  // lexicographic order gives the lexicographic rank of T + {k}.
  const std::uint32_t r = subset_size + 1;
  std::vector<std::vector<std::uint64_t>> choose(users + 1, std::vector<std::uint64_t>(r + 1, 0));
  for (std::uint32_t n = 0; n <= users; ++n) {
    choose[n][0] = 1;
    for (std::uint32_t k = 1; k <= std::min(n, r); ++k)
      choose[n][k] = choose[n - 1][k - 1] + (k <= n - 1 ? choose[n - 1][k] : 0);
  }

  const auto subsets = all_subsets(users, subset_size);
  std::vector<Cell> cells(subsets.size() * users);
  Vec joined;
  for (std::size_t row = 0; row < subsets.size(); ++row) {
    const Vec& members = subsets[row];
    std::size_t next = 0;
    for (std::uint32_t k = 0; k < users; ++k) {
      if (next < members.size() && members[next] == k) {
        ++next;
        continue;  // star
      }
      joined.assign(members.begin(), members.end());
      joined.insert(joined.begin() + static_cast<std::ptrdiff_t>(next), k);
      std::uint64_t rank = 0;
      for (std::uint32_t i = 0; i < r; ++i) rank += choose[joined[i]][i + 1];
      cells[row * users + k] = Cell::symbol(static_cast<std::uint32_t>(rank + 1));
    }
  }
  return canonicalize(PdaArray(subsets.size(), users, std::move(cells)));
}

}  // namespace pdakit
