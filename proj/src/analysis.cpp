#include "pdakit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "pdakit/errors.hpp"

namespace pdakit {

SchemeMetrics SchemeMetrics::make(const Rational& memory_ratio, const Rational& rate,
                                  const BigInt& subpackets) {
  SchemeMetrics m;
  m.memory_ratio = memory_ratio;
  m.rate = rate;
  m.log_subpackets = log_of(subpackets);
  if (boost::multiprecision::msb(subpackets) < 4096) m.subpackets = subpackets;
  return m;
}

SchemeMetrics memory_share(std::span<const WeightedScheme> components) {
  if (components.empty()) throw DomainError("memory sharing needs at least one scheme");
  Rational total = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (c.weight <= 0 || c.weight > 1)
      throw DomainError("weight " + to_string(c.weight) + " is outside (0, 1]");
    if (i > 0 && c.metrics.memory_ratio < components[i - 1].metrics.memory_ratio)
      throw DomainError("component memory ratios must be non-decreasing");
    total += c.weight;
  }
  if (total != 1) throw DomainError("weights sum to " + to_string(total) + ", not 1");

  SchemeMetrics out;
  out.memory_ratio = 0;
  out.rate = 0;
  BigInt sum = 0;
  bool exact = true;
  double max_log = -INFINITY;
  for (const auto& c : components) {
    out.memory_ratio += c.weight * c.metrics.memory_ratio;
    out.rate += c.weight * c.metrics.rate;
    max_log = std::max(max_log, c.metrics.log_subpackets);
    if (c.metrics.subpackets)
      sum += *c.metrics.subpackets;
    else
      exact = false;
  }
  double acc = 0.0;
  for (const auto& c : components) acc += std::exp(c.metrics.log_subpackets - max_log);
  out.log_subpackets = max_log + std::log(acc);
  if (exact) {
    out.log_subpackets = log_of(sum);
    out.subpackets = sum;
  }
  return out;
}

std::string_view baseline_name(Baseline baseline) {
  return baseline == Baseline::Szg ? "szg" : "yctc";
}

namespace {

void check_common(std::uint32_t q, std::uint32_t z, double lambda) {
  if (q < 2) throw DomainError("q must be at least 2");
  if (z < 1 || z >= q) throw DomainError("z must satisfy 1 <= z < q");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie strictly between 0 and 1");
}

void check_between(std::uint32_t q, std::uint32_t z) {
  if (q - z <= 1) {
    throw DomainError("a ratio between lattice points z and z+1 needs q - z > 1 (got q=" +
                      std::to_string(q) + ", z=" + std::to_string(z) + ")");
  }
}

std::uint32_t replication(std::uint32_t q, std::uint32_t z) { return (q - 1) / (q - z); }

Rational rpow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

ComparisonResult compare_general(std::uint32_t q, std::uint32_t z, std::uint32_t t, double lambda,
                                 LatticePosition position) {
  check_common(q, z, lambda);
  if (t < 1) throw DomainError("t must be at least 1");
  const bool between = position == LatticePosition::Between;
  if (between) check_between(q, z);

  ComparisonResult r;
  r.baseline = Baseline::Szg;
  r.q = q;
  r.z = z;
  r.t = t;
  r.lambda = lambda;
  r.replication = replication(q, z);
  r.exact_case = !between;

  const double w = r.replication;
  const double wt2 = std::pow(w, 2.0 * t);
  r.rate_ratio_bound = 1.0 / (lambda * wt2);
  r.advantage = lambda * wt2 > 1.0;

  // Baseline: share (1-((q-1)/q)^t, (q-1)^t, q^m) and (1-1/q^t, 1/(q-1)^t, (q-1)^t q^m).
  const double qm1t = std::pow(q - 1.0, t);
  const double baseline_rate = lambda * qm1t + (1.0 - lambda) / qm1t;
  const double rate_z = std::pow((q - z) / w, t);
  const BigInt baseline_f = ipow(BigInt(q - 1), t) + 1;  // in units of q^m
  const BigInt f_z = ipow(BigInt(r.replication), t);

  if (!between) {
    r.rate_ratio = rate_z / baseline_rate;
    r.subpacket_ratio = Rational(f_z, baseline_f);
    r.subpacket_ratio_bound = Rational(1, ipow(BigInt(q - z), t));
  } else {
    const std::uint32_t w_next = replication(q, z + 1);
    const double rate_next = std::pow((q - z - 1.0) / w_next, t);
    r.rate_ratio = (lambda * rate_z + (1.0 - lambda) * rate_next) / baseline_rate;
    r.subpacket_ratio = Rational(f_z + ipow(BigInt(w_next), t), baseline_f);
    r.subpacket_ratio_bound =
        Rational(1, ipow(BigInt(q - z), t)) + Rational(1, ipow(BigInt(q - z - 1), t));
  }
  return r;
}

ComparisonResult compare_special(std::uint32_t q, std::uint32_t z, double lambda,
                                 LatticePosition position) {
  check_common(q, z, lambda);
  const bool between = position == LatticePosition::Between;
  if (between) check_between(q, z);

  ComparisonResult r;
  r.baseline = Baseline::Yctc;
  r.q = q;
  r.z = z;
  r.t = 1;
  r.lambda = lambda;
  r.replication = replication(q, z);
  r.exact_case = !between;

  const double w = r.replication;
  r.rate_ratio_bound = 1.0 / (lambda * w * w);
  r.advantage = lambda * w * w > 1.0;

  // Baseline: share (1/q, q-1, q^m) and ((q-1)/q, 1/(q-1), (q-1) q^m).
  const double baseline_rate = lambda * (q - 1.0) + (1.0 - lambda) / (q - 1.0);
  const double rate_z = (q - z) / w;

  if (!between) {
    r.rate_ratio = rate_z / baseline_rate;
    r.subpacket_ratio = Rational(r.replication, q);
    r.subpacket_ratio_bound = r.subpacket_ratio;
    r.subpacket_ratio_is_exact = true;
  } else {
    const std::uint32_t w_next = replication(q, z + 1);
    const double rate_next = (q - z - 1.0) / w_next;
    r.rate_ratio = (lambda * rate_z + (1.0 - lambda) * rate_next) / baseline_rate;
    r.subpacket_ratio = Rational(r.replication + w_next, q);
    r.subpacket_ratio_bound = Rational(1, q - z) + Rational(1, q - z - 1);
  }
  return r;
}

LatticeLocation locate_general(std::uint32_t q, std::uint32_t t, const Rational& ratio) {
  if (q < 2 || t < 1) throw DomainError("need q >= 2 and t >= 1");
  auto point = [&](std::uint32_t z) { return 1 - rpow(Rational(q - z, q), t); };
  if (ratio < point(1) || ratio > point(q - 1)) {
    throw DomainError("ratio " + to_string(ratio) + " lies outside [" + to_string(point(1)) +
                      ", " + to_string(point(q - 1)) + "]");
  }
  std::uint32_t z = 1;
  while (z + 1 <= q - 1 && point(z + 1) <= ratio) ++z;
  return {z, point(z) == ratio ? LatticePosition::OnPoint : LatticePosition::Between};
}

LatticeLocation locate_special(std::uint32_t q, const Rational& ratio) {
  if (q < 2) throw DomainError("need q >= 2");
  if (ratio < Rational(1, q) || ratio > Rational(q - 1, q)) {
    throw DomainError("ratio " + to_string(ratio) + " lies outside [1/q, (q-1)/q]");
  }
  const BigInt scaled = boost::multiprecision::numerator(ratio) * q;
  const BigInt den = boost::multiprecision::denominator(ratio);
  const auto z = static_cast<std::uint32_t>(scaled / den);
  return {z, scaled % den == 0 ? LatticePosition::OnPoint : LatticePosition::Between};
}

double log_subpackets(Family family, const ConstructionParams& p) {
  const double lnq = std::log(static_cast<double>(p.q));
  const double lnw = std::log(static_cast<double>(p.replication()));
  switch (family) {
    case Family::General: return p.t * lnw + p.m * lnq;
    case Family::Special: return lnw + p.m * lnq;
    case Family::ExtGeneral:
    case Family::ExtSpecial: return p.m * lnq;
  }
  return 0.0;
}

namespace {

Rational family_rate(Family family, const ConstructionParams& p) {
  const Rational gap = p.q - p.z;
  const Rational w = p.replication();
  switch (family) {
    case Family::General: return rpow(gap / w, p.t);
    case Family::Special: return gap / w;
    case Family::ExtGeneral: return rpow(gap, p.t);
    case Family::ExtSpecial: return gap;
  }
  return 0;
}

// Integer t-th root of n if n is a perfect t-th power.
std::optional<BigInt> exact_root(const BigInt& n, unsigned t) {
  if (n < 0) return std::nullopt;
  if (n < 2 || t == 1) return n;
  BigInt lo = 1;
  BigInt hi = BigInt(1) << (boost::multiprecision::msb(n) / t + 1);
  while (lo < hi) {
    const BigInt mid = (lo + hi + 1) / 2;
    if (ipow(mid, t) <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (ipow(lo, t) == n) return lo;
  return std::nullopt;
}

// Smallest m > t with C(m, t) == target, if any.
std::optional<std::uint32_t> solve_binomial(const BigInt& target, std::uint32_t t) {
  for (std::uint32_t m = t + 1;; ++m) {
    const BigInt c = binomial(m, t);
    if (c == target) return m;
    if (c > target) return std::nullopt;
  }
}

}  // namespace

std::vector<SchemeRow> enumerate_schemes(std::uint64_t users, const Rational& ratio) {
  if (users < 2) throw DomainError("K must be at least 2");
  if (ratio <= 0 || ratio >= 1) throw DomainError("M/N must lie strictly between 0 and 1");

  const BigInt num = boost::multiprecision::numerator(ratio);
  const BigInt den = boost::multiprecision::denominator(ratio);
  const BigInt K = users;
  std::vector<SchemeRow> rows;

  auto add = [&](Family family, std::uint32_t q, std::uint32_t z, std::uint32_t m, std::uint32_t t) {
    const ConstructionParams p{q, z, m, t};
    rows.push_back(SchemeRow{family, q, z, m, t, family_rate(family, p), log_subpackets(family, p)});
  };

  // Ratio z/q with K = (m+1) q or K = (m w + 1) q.
  for (std::uint64_t q = 2; q <= users; ++q) {
    if ((num * q) % den != 0) continue;
    const auto z = static_cast<std::uint32_t>(num * q / den);
    const auto qq = static_cast<std::uint32_t>(q);
    if (users % q != 0) continue;
    const std::uint64_t blocks = users / q - 1;
    if (blocks >= 1) add(Family::Special, qq, z, static_cast<std::uint32_t>(blocks), 1);
    const std::uint64_t w = (q - 1) / (q - z);
    if (blocks >= 1 && blocks % w == 0)
      add(Family::ExtSpecial, qq, z, static_cast<std::uint32_t>(blocks / w), 1);
  }

  // Ratio 1 - ((q-z)/q)^t. The reduced fraction (q-z)/q must be r/s with
  // r^t = den - num and s^t = den, so scanning q over multiples of s covers
  // every (q, z) pair with q <= K.
  const unsigned max_t = boost::multiprecision::msb(K) + 1;
  for (unsigned t = 1; t <= max_t; ++t) {
    const auto r = exact_root(den - num, t);
    const auto s = exact_root(den, t);
    if (!r || !s) continue;
    for (BigInt q = *s; q <= K; q += *s) {
      if (q < 2) continue;
      const BigInt z_big = q - q / *s * *r;
      const auto qq = q.convert_to<std::uint32_t>();
      const auto z = z_big.convert_to<std::uint32_t>();
      const BigInt qt = ipow(q, t);
      if (K % qt == 0) {
        if (auto m = solve_binomial(K / qt, t)) add(Family::General, qq, z, *m, t);
      }
      const BigInt wqt = ipow(BigInt((qq - 1) / (qq - z)), t) * qt;
      if (K % wqt == 0) {
        if (auto m = solve_binomial(K / wqt, t)) add(Family::ExtGeneral, qq, z, *m, t);
      }
    }
  }

  std::sort(rows.begin(), rows.end(), [](const SchemeRow& a, const SchemeRow& b) {
    if (a.rate != b.rate) return a.rate < b.rate;
    if (a.q != b.q) return a.q < b.q;
    if (a.family != b.family) return a.family < b.family;
    return a.m < b.m;
  });
  return rows;
}

OpenInterval estimate_m_range(double users, std::uint32_t q, std::uint32_t t) {
  if (users < 1 || q < 2 || t < 1) throw DomainError("need K >= 1, q >= 2, t >= 1");
  const double upper = t * std::pow(users, 1.0 / t) / q;
  return {upper / std::numbers::e, upper};
}

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

void write_scheme_table(std::ostream& out, std::span<const SchemeRow> rows, TableFormat format,
                        std::uint64_t users) {
  if (format == TableFormat::Csv) {
    out << "family,q,z,m,t,R_num,R_den,lnF\n";
    for (const auto& r : rows) {
      out << family_name(r.family) << ',' << r.q << ',' << r.z << ',' << r.m << ',' << r.t << ','
          << boost::multiprecision::numerator(r.rate) << ','
          << boost::multiprecision::denominator(r.rate) << ',' << format_double(r.log_subpackets)
          << '\n';
    }
    return;
  }
  out << pad("family", 13) << pad("q", 7) << pad("z", 7) << pad("m", 7) << pad("t", 4)
      << pad("R", 10) << pad("R~", 10) << pad("lnF", 12) << "m range (general families)\n";
  for (const auto& r : rows) {
    out << pad(std::string(family_name(r.family)), 13) << pad(std::to_string(r.q), 7)
        << pad(std::to_string(r.z), 7) << pad(std::to_string(r.m), 7)
        << pad(std::to_string(r.t), 4) << pad(to_string(r.rate), 10)
        << pad(fixed(to_double(r.rate), 2), 10) << pad(fixed(r.log_subpackets, 4), 12);
    if (users > 0 && r.family == Family::General) {
      const auto range = estimate_m_range(static_cast<double>(users), r.q, r.t);
      out << "(" << fixed(range.lower, 2) << ", " << fixed(range.upper, 2) << ")";
    } else {
      out << "-";
    }
    out << '\n';
  }
  out << "# " << rows.size() << " schemes\n";
}

void write_comparison_table(std::ostream& out, std::span<const ComparisonResult> rows,
                            TableFormat format) {
  if (format == TableFormat::Csv) {
    out << "baseline,q,z,t,lambda,case,rate_ratio_bound,subpacket_ratio_bound,"
           "subpacket_ratio_bound_is_exact,rate_ratio,subpacket_ratio,advantage\n";
    for (const auto& r : rows) {
      out << baseline_name(r.baseline) << ',' << r.q << ',' << r.z << ',' << r.t << ','
          << format_double(r.lambda) << ',' << (r.exact_case ? "lattice" : "between") << ','
          << format_double(r.rate_ratio_bound) << ','
          << format_double(to_double(r.subpacket_ratio_bound)) << ','
          << (r.subpacket_ratio_is_exact ? "true" : "false") << ','
          << format_double(r.rate_ratio) << ',' << format_double(to_double(r.subpacket_ratio))
          << ',' << (r.advantage ? "true" : "false") << '\n';
    }
    return;
  }
  if (!rows.empty()) {
    out << "# baseline=" << baseline_name(rows.front().baseline) << " q=" << rows.front().q
        << " t=" << rows.front().t << " lambda=" << format_double(rows.front().lambda) << '\n';
  }
  out << pad("z", 5) << pad("case", 9) << pad("R/R_base <", 24) << pad("F/F_base", 26)
      << pad("R/R_base", 24) << pad("F/F_base exact", 18) << "advantage\n";
  for (const auto& r : rows) {
    out << pad(std::to_string(r.z), 5) << pad(r.exact_case ? "lattice" : "between", 9)
        << pad(format_double(r.rate_ratio_bound), 24)
        << pad(format_double(to_double(r.subpacket_ratio_bound)) +
                   (r.subpacket_ratio_is_exact ? "" : " (<)"),
               26)
        << pad(format_double(r.rate_ratio), 24) << pad(to_string(r.subpacket_ratio), 18)
        << (r.advantage ? "yes" : "no") << '\n';
  }
}

}  // namespace pdakit
