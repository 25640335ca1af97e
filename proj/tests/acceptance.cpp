// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance               run all criteria
//   acceptance --criterion N run criterion N only

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "pdakit/analysis.hpp"
#include "pdakit/caching_sim.hpp"
#include "pdakit/constructions.hpp"

using namespace pdakit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct SweepItem {
  Family family;
  ConstructionParams params;
};

std::string describe(const SweepItem& s) {
  std::ostringstream o;
  o << family_name(s.family) << "(q=" << s.params.q << ",z=" << s.params.z << ",m=" << s.params.m
    << ",t=" << s.params.t << ")";
  return o.str();
}

// q in [2,6], z in [1,q-1], t in {1,2} (t = 1 for the special families),
// m in [t+1,4], F*K <= 10^6.
std::vector<SweepItem> sweep() {
  std::vector<SweepItem> items;
  for (auto family : {Family::General, Family::Special, Family::ExtGeneral, Family::ExtSpecial}) {
    const bool special = family == Family::Special || family == Family::ExtSpecial;
    for (std::uint32_t q = 2; q <= 6; ++q)
      for (std::uint32_t z = 1; z < q; ++z)
        for (std::uint32_t t = 1; t <= (special ? 1u : 2u); ++t)
          for (std::uint32_t m = t + 1; m <= 4; ++m) {
            const ConstructionParams p{q, z, m, t};
            const auto expect = theorem_params(family, p);
            if (expect.users * expect.subpackets <= 1'000'000) items.push_back({family, p});
          }
  }
  return items;
}

Outcome golden_arrays() {
  struct Case {
    const char* fixture;
    std::function<PdaArray()> build;
    PdaParams params;
  };
  const std::vector<Case> cases{
      {"general_3_2_2_1.pda", [] { return construct_general({3, 2, 2, 1}); }, {6, 18, 12, 9}},
      {"special_3_2_2.pda", [] { return construct_special({3, 2, 2, 1}); }, {9, 18, 12, 9}},
      {"ext_general_3_2_2_1.pda", [] { return construct_ext_general({3, 2, 2, 1}); }, {12, 9, 6, 9}},
      {"ext_special_3_2_2.pda", [] { return construct_ext_special({3, 2, 2, 1}); }, {15, 9, 6, 9}},
      {"mn_4_2.pda", [] { return construct_mn(4, 2); }, {4, 6, 3, 4}},
  };
  Outcome out;
  int matched = 0;
  for (const auto& c : cases) {
    const auto built = c.build();
    const auto golden = oracle::load_fixture(c.fixture);
    const bool ok = equivalent(built, golden) && params_of(built) == c.params &&
                    verify_pda(golden).valid;
    if (ok)
      ++matched;
    else
      out.detail += std::string(" mismatch:") + c.fixture;
    out.pass = out.pass && ok;
  }
  out.detail = std::to_string(matched) + "/5 arrays equivalent to their fixtures" + out.detail;
  return out;
}

Outcome verifier_sweep() {
  Outcome out;
  int checked = 0;
  for (const auto& item : sweep()) {
    const auto arr = construct(item.family, item.params, BuildOptions{2'000'000});
    const bool ok = verify_pda(arr).valid && params_of(arr) == theorem_params(item.family, item.params);
    if (!ok) {
      out.pass = false;
      out.detail += " failed:" + describe(item);
    }
    ++checked;
  }
  out.detail = std::to_string(checked) + " arrays verified with predicted (K,F,Z,S)" + out.detail;
  return out;
}

Outcome simulation_trace() {
  const auto arr = oracle::load_fixture("mn_4_2.pda");
  const std::size_t packet = 64;
  const PacketStore store(6, arr.rows(), packet, 0);
  const DemandVector d({1, 2, 3, 4}, 6);
  const auto log = deliver(arr, store, d);
  const std::vector<std::string> expected{"(1,4);(2,2);(3,1)", "(1,5);(2,3);(4,1)",
                                          "(1,6);(3,3);(4,2)", "(2,6);(3,5);(4,4)"};
  Outcome out;
  if (log.transmissions.size() != expected.size()) {
    return {false, "expected 4 transmissions, got " + std::to_string(log.transmissions.size())};
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto line = format_transmission(log.transmissions[i]);
    const auto begin = line.find("terms=") + 6;
    const auto terms = line.substr(begin, line.find(' ', begin) - begin);
    if (terms != expected[i]) {
      out.pass = false;
      out.detail += " s=" + std::to_string(i + 1) + " got " + terms;
    }
  }
  const auto report = decode_and_verify(arr, store, d, log);
  const Rational rate(log.transmissions.size(), arr.rows());
  out.pass = out.pass && report.success && log.bytes_sent() == 4 * packet && rate == Rational(4, 6);
  out.detail = "terms match, decode=" + std::string(report.success ? "ok" : "failed") +
               ", bytes=" + std::to_string(log.bytes_sent()) + ", rate=" + to_string(rate) + out.detail;
  return out;
}

Outcome decode_property() {
  Outcome out;
  std::size_t runs = 0;
  for (const auto& item : sweep()) {
    const auto arr = construct(item.family, item.params, BuildOptions{2'000'000});
    const std::size_t K = arr.cols();
    const PacketStore store(K, arr.rows(), 64, 0);
    std::mt19937_64 rng(0);
    std::vector<DemandVector> demands;
    for (int i = 0; i < 10; ++i) demands.push_back(DemandVector::random(K, K, rng));
    demands.push_back(DemandVector::uniform(K, 1, K));
    for (const auto& d : demands) {
      const auto log = deliver(arr, store, d);
      const bool ok = log.bytes_sent() == std::size_t{arr.max_symbol()} * 64 &&
                      decode_and_verify(arr, store, d, log).success;
      if (!ok) {
        out.pass = false;
        out.detail += " failed:" + describe(item) + " demand=" + to_string(d);
      }
      ++runs;
    }
  }
  out.detail = std::to_string(runs) + " decode runs, all bit-exact with bytes = S*64" + out.detail;
  if (!out.pass) out.detail = "decode failures:" + out.detail;
  return out;
}

Outcome table_iii() {
  struct Printed {
    Family family;
    std::uint32_t q, z, m;
    Rational rate;
    double lnF;
  };
  const std::vector<Printed> printed{
      {Family::Special, 3, 2, 134, Rational(1, 2), 147.9072},
      {Family::ExtSpecial, 3, 2, 67, 1, 73.6070},
      {Family::Special, 15, 10, 26, Rational(5, 2), 71.1025},
      {Family::ExtSpecial, 9, 6, 22, 3, 48.3389},
      {Family::Special, 27, 18, 14, Rational(9, 2), 46.8349},
      {Family::ExtSpecial, 15, 10, 13, 5, 35.2047},
      {Family::Special, 45, 30, 8, Rational(15, 2), 31.1464},
      {Family::ExtSpecial, 27, 18, 7, 9, 23.0709},
      {Family::Special, 81, 54, 4, Rational(27, 2), 18.2709},
      {Family::ExtSpecial, 45, 30, 4, 15, 15.2266},
      {Family::Special, 135, 90, 2, Rational(45, 2), 10.5037},
      {Family::ExtSpecial, 81, 54, 2, 27, 8.7889},
      {Family::ExtSpecial, 135, 90, 1, 45, 4.9053},
  };
  const auto rows = enumerate_schemes(405, Rational(2, 3));
  std::vector<bool> used(rows.size(), false);
  int matched = 0;
  std::string missing;
  for (const auto& p : printed) {
    bool found = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (r.family == p.family && r.q == p.q && r.z == p.z && r.m == p.m && r.t == 1 &&
          r.rate == p.rate && std::abs(r.log_subpackets - p.lnF) <= 1e-3) {
        used[i] = found = true;
        break;
      }
    }
    if (found)
      ++matched;
    else
      missing += " q=" + std::to_string(p.q) + ",m=" + std::to_string(p.m);
  }
  std::string extra;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (used[i]) continue;
    extra += std::string(" ") + std::string(family_name(rows[i].family)) + "(q=" +
             std::to_string(rows[i].q) + ",m=" + std::to_string(rows[i].m) + ")";
  }
  Outcome out;
  out.pass = matched == 13 && rows.size() == 13;
  out.detail = std::to_string(matched) + "/13 printed rows matched; search returned " +
               std::to_string(rows.size()) + " rows (13 required)";
  if (!missing.empty()) out.detail += "; missing:" + missing;
  if (!extra.empty()) out.detail += "; additional valid schemes:" + extra;
  return out;
}

Outcome tables_iv_v() {
  const double iv_rate[] = {0.15625, 0.15625, 0.15625, 0.0137174211248285, 0.0137174211248285,
                            0.00244140625, 0.000214334705075446, 1.88167642315892e-05};
  const double iv_f[] = {0.00137174211248285, 0.001953125, 0.00291545189504373,
                         0.00462962962962963, 0.008, 0.015625, 0.037037037037037, 0.125};
  const double v_rate[] = {0.5, 0.5, 0.5, 0.222222222222222, 0.222222222222222, 0.125,
                           0.0555555555555556, 0.0246913580246914};
  const double v_f[] = {0.1, 0.1, 0.1, 0.15, 0.15, 0.2, 0.3, 0.45};
  auto close = [](double got, double want) { return std::abs(got - want) <= 1e-12 * std::abs(want); };
  Outcome out;
  int cells = 0;
  for (std::uint32_t z = 11; z <= 18; ++z) {
    const auto g = compare_general(20, z, 3, 0.1);
    const auto s = compare_special(20, z, 0.5);
    const std::size_t i = z - 11;
    const bool ok[] = {close(g.rate_ratio_bound, iv_rate[i]),
                       close(to_double(g.subpacket_ratio_bound), iv_f[i]),
                       close(s.rate_ratio_bound, v_rate[i]),
                       close(to_double(s.subpacket_ratio_bound), v_f[i])};
    for (int k = 0; k < 4; ++k) {
      if (ok[k]) {
        ++cells;
      } else {
        out.pass = false;
        out.detail += " z=" + std::to_string(z) + (k < 2 ? " (IV)" : " (V)");
      }
    }
  }
  out.detail = std::to_string(cells) + "/32 printed values within 1e-12 relative" + out.detail;
  return out;
}

Outcome m_range() {
  Outcome out;
  int checked = 0;
  for (std::uint32_t t : {2u, 3u})
    for (std::uint32_t m = t + 1; m <= 12; ++m)
      for (std::uint32_t q : {2u, 3u, 5u}) {
        const double K = to_double(Rational(binomial(m, t) * ipow(BigInt(q), t)));
        const auto range = estimate_m_range(K, q, t);
        if (!range.contains(m)) {
          out.pass = false;
          out.detail += " t=" + std::to_string(t) + ",m=" + std::to_string(m) + ",q=" + std::to_string(q);
        }
        ++checked;
      }
  out.detail = std::to_string(checked) + " (t,m,q) cases with m inside the estimated range" + out.detail;
  return out;
}

Outcome specializations() {
  Outcome out;
  int checked = 0;
  auto expect = [&](const std::string& what, const PdaParams& got, const BigInt& K, const Rational& ratio,
                    const Rational& rate, const BigInt& F) {
    ++checked;
    if (got.users == K && got.memory_ratio() == ratio && got.rate() == rate && got.subpackets == F) return;
    out.pass = false;
    out.detail += " " + what + " gave " + to_string(got);
  };
  for (std::uint32_t q = 2; q <= 6; ++q) {
    const BigInt Q = q;
    for (std::uint32_t t = 1; t <= 2; ++t)
      for (std::uint32_t m = t + 1; m <= 4; ++m) {
        const BigInt K = binomial(m, t) * ipow(Q, t);
        const BigInt qm = ipow(Q, m);
        const BigInt lower = ipow(BigInt(q - 1), t);
        if (K * lower * qm > 1'000'000) continue;
        const std::string tag = "(q=" + std::to_string(q) + ",m=" + std::to_string(m) + ",t=" + std::to_string(t) + ")";
        expect("general z=1 " + tag, params_of(construct_general({q, 1, m, t})), K,
               1 - oracle::rpow(Rational(q - 1, q), t), Rational(lower), qm);
        expect("general z=q-1 " + tag, params_of(construct_general({q, q - 1, m, t})), K,
               1 - Rational(1, ipow(Q, t)), Rational(1, lower), lower * qm);
      }
    for (std::uint32_t m = 1; m <= 4; ++m) {
      const BigInt K = (m + 1) * Q;
      const BigInt qm = ipow(Q, m);
      const std::string tag = "(q=" + std::to_string(q) + ",m=" + std::to_string(m) + ")";
      expect("special z=1 " + tag, params_of(construct_special({q, 1, m, 1})), K, Rational(1, q),
             Rational(q - 1), qm);
      expect("special z=q-1 " + tag, params_of(construct_special({q, q - 1, m, 1})), K,
             Rational(q - 1, q), Rational(1, q - 1), (q - 1) * qm);
    }
  }
  out.detail = std::to_string(checked) + " parameter sets match the known-scheme rows" + out.detail;
  return out;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "golden arrays", golden_arrays},
    {2, "verifier sweep", verifier_sweep},
    {3, "four-user delivery trace", simulation_trace},
    {4, "decode property", decode_property},
    {5, "K=405 M/N=2/3 scheme list", table_iii},
    {6, "comparison tables", tables_iv_v},
    {7, "subpacketization growth range", m_range},
    {8, "specialization identities", specializations},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdakit acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run only this criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): "
              << o.detail << " [" << ms << " ms]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
