#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "pdakit/analysis.hpp"
#include "pdakit/caching_sim.hpp"
#include "pdakit/constructions.hpp"
#include "pdakit/errors.hpp"
#include "pdakit/pda.hpp"
#include "pdakit/pda_io.hpp"

namespace pdakit::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kCapacity = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "text";

  TableFormat table_format() const { return format == "csv" ? TableFormat::Csv : TableFormat::Text; }
};

struct ConstructArgs {
  std::string family;
  std::uint32_t q = 0, z = 0, m = 0, t = 1, k = 0;
  std::uint64_t max_cells = BuildOptions{}.max_cells;
  CLI::Option *q_opt = nullptr, *z_opt = nullptr, *m_opt = nullptr, *k_opt = nullptr;
};

struct VerifyArgs {
  std::string path;
  std::size_t max_violations = 100;
};

struct SimulateArgs {
  std::string path;
  std::size_t files = 0;
  std::size_t packet_size = 64;
  std::string demand;
  std::size_t random_demands = 0;
  bool no_trace = false;
  CLI::Option *files_opt = nullptr, *demand_opt = nullptr, *random_opt = nullptr;
};

struct CompareArgs {
  std::string baseline;
  std::uint32_t q = 0, z = 0, z_min = 0, z_max = 0, t = 1;
  double lambda = 0.0;
  std::string ratio;
  bool table_iv = false, table_v = false;
  CLI::Option *baseline_opt = nullptr, *q_opt = nullptr, *z_opt = nullptr, *z_min_opt = nullptr,
              *z_max_opt = nullptr, *t_opt = nullptr, *lambda_opt = nullptr, *ratio_opt = nullptr;
};

struct EnumerateArgs {
  std::uint64_t k = 0;
  std::string ratio;
  bool table_iii = false;
  CLI::Option *k_opt = nullptr, *ratio_opt = nullptr;
};

void require(const CLI::Option* opt, const std::string& why) {
  if (opt->count() == 0) throw UsageError(opt->get_name() + " is required " + why);
}

void forbid(const CLI::Option* opt, const std::string& why) {
  if (opt->count() != 0) throw UsageError(opt->get_name() + " cannot be used " + why);
}

int emit(const Globals& g, const std::string& text, std::ostream& out) {
  if (g.out_path.empty() || g.out_path == "-") {
    out << text;
    return kOk;
  }
  std::ofstream file(g.out_path, std::ios::binary);
  if (!file || !(file << text)) throw Error("cannot write '" + g.out_path + "'");
  return kOk;
}

std::string joined_refs(const std::vector<CellRef>& refs) {
  std::string s;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i) s += ' ';
    s += to_string(refs[i]);
  }
  return s;
}

int do_construct(const ConstructArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const BuildOptions options{a.max_cells};
  PdaArray arr(1, 1);
  if (a.family == "mn") {
    require(a.k_opt, "for --family mn");
    for (auto* opt : {a.q_opt, a.z_opt, a.m_opt}) forbid(opt, "with --family mn (it takes --k and --t)");
    arr = construct_mn(a.k, a.t, options);
  } else {
    forbid(a.k_opt, "with --family " + a.family + " (K follows from q, z, m, t)");
    for (auto* opt : {a.q_opt, a.z_opt, a.m_opt}) require(opt, "for --family " + a.family);
    const Family family = *family_from_name(a.family);
    arr = construct(family, ConstructionParams{a.q, a.z, a.m, a.t}, options);
  }
  const PdaParams params = params_of(arr);
  err << "params (K,F,Z,S) = " << to_string(params) << '\n'
      << "M/N = " << to_string(params.memory_ratio()) << '\n'
      << "R = " << to_string(params.rate()) << '\n';
  return emit(g, emit_pda(arr), out);
}

int do_verify(const VerifyArgs& a, const Globals& g, std::ostream& out) {
  const PdaDocument doc = read_pda_file(a.path);
  VerifyOptions options;
  options.declared = doc.header;
  options.max_violations = a.max_violations;
  const VerificationReport report = verify_pda(doc.array, options);

  std::ostringstream text;
  if (g.format == "csv") {
    text << "condition,locations,detail\n";
    for (const auto& v : report.violations)
      text << condition_name(v.condition) << ",\"" << joined_refs(v.locations) << "\",\"" << v.detail
           << "\"\n";
  } else if (report.valid) {
    const PdaParams p = params_of(doc.array);
    text << "valid PDA " << to_string(p) << '\n'
         << "M/N = " << to_string(p.memory_ratio()) << '\n'
         << "R = " << to_string(p.rate()) << '\n';
  } else {
    text << "invalid PDA: " << report.violations.size()
         << (report.truncated ? "+" : "") << " violation(s)\n";
    for (const auto& v : report.violations) {
      text << condition_name(v.condition) << ": " << v.detail;
      if (!v.locations.empty()) text << " at " << joined_refs(v.locations);
      text << '\n';
    }
    if (report.truncated) text << "(list truncated at " << a.max_violations << ")\n";
  }
  emit(g, text.str(), out);
  return report.valid ? kOk : kFailure;
}

std::vector<std::size_t> parse_demand(const std::string& text) {
  std::vector<std::size_t> ids;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t value = 0;
    std::size_t used = 0;
    try {
      if (!item.empty() && item.front() == '-') throw std::invalid_argument(item);
      value = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--demand entry '" + item + "' is not a positive integer");
    }
    if (used != item.size()) throw UsageError("--demand entry '" + item + "' is not a positive integer");
    ids.push_back(value);
  }
  return ids;
}

int do_simulate(const SimulateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  if (a.demand_opt->count() && a.random_opt->count())
    throw UsageError("--demand and --random-demands are mutually exclusive");
  if (a.packet_size == 0) throw UsageError("--packet-size must be at least 1");
  if (a.random_opt->count() && a.random_demands == 0)
    throw UsageError("--random-demands must be at least 1");

  const PdaDocument doc = read_pda_file(a.path);
  const PdaArray& arr = doc.array;
  const std::size_t files = a.files_opt->count() ? a.files : arr.cols();
  if (files == 0) throw UsageError("--files must be at least 1");

  std::vector<DemandVector> demands;
  if (a.demand_opt->count()) {
    const auto ids = parse_demand(a.demand);
    if (ids.size() != arr.cols()) {
      throw UsageError("--demand has " + std::to_string(ids.size()) + " entries but K = " +
                       std::to_string(arr.cols()));
    }
    demands.emplace_back(ids, files);
  } else if (a.random_opt->count()) {
    std::mt19937_64 rng(g.seed);
    for (std::size_t i = 0; i < a.random_demands; ++i)
      demands.push_back(DemandVector::random(arr.cols(), files, rng));
  } else {
    std::vector<std::size_t> ids(arr.cols());
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k % files + 1;
    demands.emplace_back(ids, files);
  }

  VerifyOptions vopts;
  vopts.max_violations = 1;
  if (!verify_pda(arr, vopts).valid)
    err << "warning: '" << a.path << "' is not a valid PDA; decoding is expected to fail\n";

  const PacketStore store(files, arr.rows(), a.packet_size, g.seed);
  std::ostringstream text;
  text << "seed=" << g.seed << '\n'
       << "K=" << arr.cols() << " F=" << arr.rows() << " N=" << files
       << " packet_size=" << a.packet_size << '\n';
  bool all_ok = true;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const DemandVector& demand = demands[i];
    if (demands.size() > 1) text << "round " << i + 1 << '/' << demands.size() << '\n';
    text << "demand=" << to_string(demand) << '\n';
    const TransmissionLog log = deliver(arr, store, demand);
    if (!a.no_trace) text << format_trace(log);
    text << "bytes_sent=" << log.bytes_sent() << '\n'
         << "rate=" << to_string(Rational(log.transmissions.size(), arr.rows())) << " (S/F="
         << log.transmissions.size() << '/' << arr.rows() << ")\n";
    const DecodeReport report = decode_and_verify(arr, store, demand, log);
    for (const auto& u : report.per_user) {
      text << "user " << u.user + 1 << " file " << u.file + 1 << ": "
           << (u.ok ? "ok" : "FAILED");
      if (!u.missing.empty()) {
        const auto& miss = u.missing.front();
        text << " (" << u.missing.size() << " unresolved term(s), first s=" << miss.symbol
             << " needs (" << miss.needed.user + 1 << "," << miss.needed.row + 1 << "))";
      } else if (!u.ok) {
        text << " (decoded content differs from the original)";
      }
      text << '\n';
    }
    all_ok = all_ok && report.success;
  }
  text << "result=" << (all_ok ? "ok" : "failed") << '\n';
  emit(g, text.str(), out);
  return all_ok ? kOk : kFailure;
}

int do_compare(const CompareArgs& a, const Globals& g, std::ostream& out) {
  if (a.table_iv && a.table_v) throw UsageError("--table-iv and --table-v are mutually exclusive");
  Baseline baseline = Baseline::Szg;
  std::uint32_t q = 0, t = 1, z_lo = 0, z_hi = 0;
  double lambda = 0.0;
  std::vector<ComparisonResult> rows;

  if (a.table_iv || a.table_v) {
    for (auto* opt : {a.baseline_opt, a.q_opt, a.z_opt, a.z_min_opt, a.z_max_opt, a.t_opt,
                      a.lambda_opt, a.ratio_opt})
      forbid(opt, "together with a table preset");
    baseline = a.table_iv ? Baseline::Szg : Baseline::Yctc;
    q = 20;
    t = a.table_iv ? 3 : 1;
    lambda = a.table_iv ? 0.1 : 0.5;
    z_lo = 11;
    z_hi = 18;
  } else {
    require(a.baseline_opt, "(or use --table-iv / --table-v)");
    require(a.q_opt, "for compare");
    require(a.lambda_opt, "for compare");
    baseline = a.baseline == "szg" ? Baseline::Szg : Baseline::Yctc;
    q = a.q;
    t = a.t;
    lambda = a.lambda;
    if (baseline == Baseline::Yctc && t != 1) throw UsageError("--baseline yctc fixes t = 1");
    if (q < 2) throw DomainError("q must be at least 2");
    if (a.ratio_opt->count()) {
      for (auto* opt : {a.z_opt, a.z_min_opt, a.z_max_opt}) forbid(opt, "together with --ratio");
      const Rational ratio = parse_rational(a.ratio);
      const LatticeLocation loc =
          baseline == Baseline::Szg ? locate_general(q, t, ratio) : locate_special(q, ratio);
      rows.push_back(baseline == Baseline::Szg ? compare_general(q, loc.z, t, lambda, loc.position)
                                               : compare_special(q, loc.z, lambda, loc.position));
    } else if (a.z_opt->count()) {
      for (auto* opt : {a.z_min_opt, a.z_max_opt}) forbid(opt, "together with --z");
      z_lo = z_hi = a.z;
    } else {
      // Default sweep: the points with replication w >= 2 that still have a
      // lattice neighbour z + 1 < q.
      z_lo = q / 2 + 1;
      z_hi = q >= 2 ? q - 2 : 0;
      if (a.z_min_opt->count()) z_lo = a.z_min;
      if (a.z_max_opt->count()) z_hi = a.z_max;
      if (z_lo > z_hi) throw DomainError("empty z range [" + std::to_string(z_lo) + ", " +
                                         std::to_string(z_hi) + "]");
    }
  }
  if (rows.empty()) {
    for (std::uint32_t z = z_lo; z <= z_hi; ++z) {
      rows.push_back(baseline == Baseline::Szg ? compare_general(q, z, t, lambda)
                                               : compare_special(q, z, lambda));
    }
  }
  std::ostringstream text;
  write_comparison_table(text, rows, g.table_format());
  return emit(g, text.str(), out);
}

int do_enumerate(const EnumerateArgs& a, const Globals& g, std::ostream& out) {
  std::uint64_t users = a.k;
  Rational ratio;
  if (a.table_iii) {
    for (auto* opt : {a.k_opt, a.ratio_opt}) forbid(opt, "together with --table-iii");
    users = 405;
    ratio = Rational(2, 3);
  } else {
    require(a.k_opt, "(or use --table-iii)");
    require(a.ratio_opt, "(or use --table-iii)");
    ratio = parse_rational(a.ratio);
  }
  const auto rows = enumerate_schemes(users, ratio);
  std::ostringstream text;
  if (g.table_format() == TableFormat::Text)
    text << "# K=" << users << " M/N=" << to_string(ratio) << '\n';
  write_scheme_table(text, rows, g.table_format(), users);
  return emit(g, text.str(), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Placement delivery arrays for centralized coded caching", "pdakit"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "Seed for packet contents and random demands")->capture_default_str();
  app.add_option("--out", g.out_path, "Write the primary output to this file instead of stdout");
  app.add_option("--format", g.format, "Table format")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "Build a PDA and print it");
  construct_cmd->add_option("--family", ca.family, "Construction family")
      ->required()
      ->check(CLI::IsMember({"mn", "general", "special", "ext-general", "ext-special"}));
  ca.q_opt = construct_cmd->add_option("--q", ca.q, "Alphabet size q");
  ca.z_opt = construct_cmd->add_option("--z", ca.z, "Star width z, 1 <= z < q");
  ca.m_opt = construct_cmd->add_option("--m", ca.m, "Row vector length m");
  construct_cmd->add_option("--t", ca.t, "Subset size t (or the MN parameter)")->capture_default_str();
  ca.k_opt = construct_cmd->add_option("--k", ca.k, "Number of users (mn only)");
  construct_cmd->add_option("--max-cells", ca.max_cells, "Refuse arrays with more cells")
      ->capture_default_str();

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check a PDA file against C1-C3");
  verify_cmd->add_option("path", va.path, "PDA file")->required();
  verify_cmd->add_option("--max-violations", va.max_violations, "Stop listing after this many (0 = all)")
      ->capture_default_str();

  SimulateArgs sa;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run placement, delivery and decoding");
  simulate_cmd->add_option("path", sa.path, "PDA file")->required();
  sa.files_opt = simulate_cmd->add_option("--files", sa.files, "Number of files N (default K)");
  simulate_cmd->add_option("--packet-size", sa.packet_size, "Bytes per packet")->capture_default_str();
  sa.demand_opt = simulate_cmd->add_option("--demand", sa.demand, "Comma-separated file ids d1,..,dK");
  sa.random_opt = simulate_cmd->add_option("--random-demands", sa.random_demands,
                                           "Run this many uniformly random demand vectors");
  simulate_cmd->add_flag("--no-trace", sa.no_trace, "Omit the per-transmission trace");

  CompareArgs cpa;
  auto* compare_cmd = app.add_subcommand("compare", "Compare against memory-sharing baselines");
  cpa.baseline_opt = compare_cmd->add_option("--baseline", cpa.baseline, "szg or yctc")
                         ->check(CLI::IsMember({"szg", "yctc"}));
  cpa.q_opt = compare_cmd->add_option("--q", cpa.q, "Alphabet size q");
  cpa.z_opt = compare_cmd->add_option("--z", cpa.z, "A single lattice point");
  cpa.z_min_opt = compare_cmd->add_option("--z-min", cpa.z_min, "First z of the sweep");
  cpa.z_max_opt = compare_cmd->add_option("--z-max", cpa.z_max, "Last z of the sweep");
  cpa.t_opt = compare_cmd->add_option("--t", cpa.t, "Subset size t (szg only)");
  cpa.lambda_opt = compare_cmd->add_option("--lambda", cpa.lambda, "Memory-sharing weight in (0,1)");
  cpa.ratio_opt = compare_cmd->add_option("--ratio", cpa.ratio, "Target M/N as a fraction a/b");
  compare_cmd->add_flag("--table-iv", cpa.table_iv, "szg, q=20, t=3, lambda=0.1, z=11..18");
  compare_cmd->add_flag("--table-v", cpa.table_v, "yctc, q=20, lambda=0.5, z=11..18");

  EnumerateArgs ea;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List every scheme with the given K and M/N");
  ea.k_opt = enumerate_cmd->add_option("--k", ea.k, "Number of users K");
  ea.ratio_opt = enumerate_cmd->add_option("--ratio", ea.ratio, "M/N as a fraction a/b");
  enumerate_cmd->add_flag("--table-iii", ea.table_iii, "K=405, M/N=2/3");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (construct_cmd->parsed()) return do_construct(ca, g, out, err);
    if (verify_cmd->parsed()) return do_verify(va, g, out);
    if (simulate_cmd->parsed()) return do_simulate(sa, g, out, err);
    if (compare_cmd->parsed()) return do_compare(cpa, g, out);
    if (enumerate_cmd->parsed()) return do_enumerate(ea, g, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacity;
  } catch (const PdaError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace pdakit::cli
