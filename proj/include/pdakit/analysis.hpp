#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "pdakit/constructions.hpp"
#include "pdakit/numeric.hpp"

namespace pdakit {

/// (M/N, R, F) of a scheme. F is kept exactly when it fits in 4096 bits;
/// ln F is always available.
struct SchemeMetrics {
  Rational memory_ratio;
  Rational rate;
  double log_subpackets = 0.0;
  std::optional<BigInt> subpackets;

  static SchemeMetrics make(const Rational& memory_ratio, const Rational& rate,
                            const BigInt& subpackets);
};

struct WeightedScheme {
  SchemeMetrics metrics;
  Rational weight;
};

/// Convex combination of schemes: ratio and rate are weight-averaged, F is
/// summed. Weights must lie in (0, 1] and sum to exactly 1, and component
/// ratios must be non-decreasing. Throws DomainError otherwise.
SchemeMetrics memory_share(std::span<const WeightedScheme> components);

/// The two-point memory-sharing baselines a family is compared against.
///  - Szg:  t-subset schemes at ratios 1-((q-1)/q)^t and 1-1/q^t.
///  - Yctc: (m+1)q-user schemes at ratios 1/q and (q-1)/q.
enum class Baseline { Szg, Yctc };

std::string_view baseline_name(Baseline baseline);

/// Whether the target memory ratio is a lattice point of the family
/// (achieved directly by z) or lies strictly between the points for z and
/// z + 1 (achieved by sharing those two).
enum class LatticePosition { OnPoint, Between };

struct ComparisonResult {
  Baseline baseline = Baseline::Szg;
  std::uint32_t q = 0;
  std::uint32_t z = 0;
  std::uint32_t t = 1;
  double lambda = 0.0;
  std::uint32_t replication = 0;  // w for z
  bool exact_case = true;

  /// Upper bound on R_new / R_baseline: 1 / (lambda * w^(2t)).
  double rate_ratio_bound = 0.0;
  /// The R ratio itself, evaluated with the same weight lambda.
  double rate_ratio = 0.0;

  /// F_new / F_baseline: the printed figure (a bound for Szg and for the
  /// Between case, an equality w/q for Yctc on a lattice point).
  Rational subpacket_ratio_bound;
  bool subpacket_ratio_is_exact = false;
  /// F_new / F_baseline computed exactly.
  Rational subpacket_ratio;

  /// lambda * w^(2t) > 1.
  bool advantage = false;
};

ComparisonResult compare_general(std::uint32_t q, std::uint32_t z, std::uint32_t t, double lambda,
                                 LatticePosition position = LatticePosition::OnPoint);
ComparisonResult compare_special(std::uint32_t q, std::uint32_t z, double lambda,
                                 LatticePosition position = LatticePosition::OnPoint);

struct LatticeLocation {
  std::uint32_t z = 0;
  LatticePosition position = LatticePosition::OnPoint;
};

/// Finds z with 1-((q-z)/q)^t <= ratio < 1-((q-z-1)/q)^t. Throws DomainError
/// if ratio is outside [1-((q-1)/q)^t, 1-1/q^t].
LatticeLocation locate_general(std::uint32_t q, std::uint32_t t, const Rational& ratio);
/// Same for the z/q lattice, ratio in [1/q, (q-1)/q].
LatticeLocation locate_special(std::uint32_t q, const Rational& ratio);

struct SchemeRow {
  Family family = Family::General;
  std::uint32_t q = 0;
  std::uint32_t z = 0;
  std::uint32_t m = 0;
  std::uint32_t t = 1;
  Rational rate;
  double log_subpackets = 0.0;
};

/// Every (family, q, z, m, t) whose K formula gives `users` and whose
/// memory ratio equals `ratio` exactly. Sorted by R, then q, then family.
std::vector<SchemeRow> enumerate_schemes(std::uint64_t users, const Rational& ratio);

/// ln F of a family without building it.
double log_subpackets(Family family, const ConstructionParams& p);

struct OpenInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x) const { return lower < x && x < upper; }
};

/// t K^(1/t) / (e q) < m < t K^(1/t) / q for K = C(m,t) q^t.
OpenInterval estimate_m_range(double users, std::uint32_t q, std::uint32_t t);

enum class TableFormat { Text, Csv };

/// CSV columns: family,q,z,m,t,R_num,R_den,lnF
void write_scheme_table(std::ostream& out, std::span<const SchemeRow> rows, TableFormat format,
                        std::uint64_t users = 0);
void write_comparison_table(std::ostream& out, std::span<const ComparisonResult> rows,
                            TableFormat format);

}  // namespace pdakit
