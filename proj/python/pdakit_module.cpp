#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pdakit/analysis.hpp"
#include "pdakit/caching_sim.hpp"
#include "pdakit/constructions.hpp"
#include "pdakit/errors.hpp"
#include "pdakit/pda.hpp"
#include "pdakit/pda_io.hpp"

namespace py = pybind11;
using namespace pdakit;

namespace {

py::object to_py(const BigInt& value) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(value.str().c_str(), nullptr, 10));
}

py::object to_py(const Rational& value) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(boost::multiprecision::numerator(value)),
                  to_py(boost::multiprecision::denominator(value)));
}

Rational from_py_ratio(const py::object& value) {
  if (py::isinstance<py::str>(value)) return parse_rational(value.cast<std::string>());
  const auto num = py::str(value.attr("numerator")).cast<std::string>();
  const auto den = py::str(value.attr("denominator")).cast<std::string>();
  return Rational(BigInt(num), BigInt(den));
}

py::dict params_dict(const PdaParams& p) {
  py::dict d;
  d["K"] = to_py(p.users);
  d["F"] = to_py(p.subpackets);
  d["Z"] = to_py(p.stars);
  d["S"] = to_py(p.symbols);
  d["memory_ratio"] = to_py(p.memory_ratio());
  d["rate"] = to_py(p.rate());
  return d;
}

Family family_arg(const std::string& name) {
  auto f = family_from_name(name);
  if (!f) throw DomainError("unknown family '" + name + "'");
  return *f;
}

std::vector<std::vector<std::uint32_t>> to_rows(const PdaArray& arr) {
  std::vector<std::vector<std::uint32_t>> rows(arr.rows());
  for (std::size_t r = 0; r < arr.rows(); ++r)
    for (auto c : arr.row(r)) rows[r].push_back(c.value());
  return rows;
}

}  // namespace

PYBIND11_MODULE(pdakit, m) {
  m.doc() = "Placement delivery arrays for centralized coded caching.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PdaError>(m, "PdaError", PyExc_ValueError);

  py::class_<PdaArray>(m, "PdaArray")
      .def(py::init(&PdaArray::from_rows), py::arg("rows"),
           "Build from a list of rows; 0 stands for a star.")
      .def_property_readonly("rows", &PdaArray::rows)
      .def_property_readonly("cols", &PdaArray::cols)
      .def("to_rows", &to_rows, "Rows as lists of ints, 0 for a star.")
      .def("at", [](const PdaArray& a, std::size_t r, std::size_t c) { return a.at(r, c).value(); })
      .def("__eq__", [](const PdaArray& a, const PdaArray& b) { return a == b; })
      .def("__repr__", [](const PdaArray& a) {
        return "<PdaArray " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ">";
      });

  m.def("construct",
        [](const std::string& family, std::uint32_t q, std::uint32_t z, std::uint32_t mm,
           std::uint32_t t, std::uint64_t max_cells) {
          return construct(family_arg(family), ConstructionParams{q, z, mm, t}, BuildOptions{max_cells});
        },
        py::arg("family"), py::arg("q"), py::arg("z"), py::arg("m"), py::arg("t") = 1,
        py::arg("max_cells") = BuildOptions{}.max_cells);
  m.def("construct_mn",
        [](std::uint32_t users, std::uint32_t t, std::uint64_t max_cells) {
          return construct_mn(users, t, BuildOptions{max_cells});
        },
        py::arg("k"), py::arg("t"), py::arg("max_cells") = BuildOptions{}.max_cells);
  m.def("theorem_params",
        [](const std::string& family, std::uint32_t q, std::uint32_t z, std::uint32_t mm,
           std::uint32_t t) {
          return params_dict(theorem_params(family_arg(family), ConstructionParams{q, z, mm, t}));
        },
        py::arg("family"), py::arg("q"), py::arg("z"), py::arg("m"), py::arg("t") = 1);
  m.def("params", [](const PdaArray& a) { return params_dict(params_of(a)); });

  m.def("verify", [](const PdaArray& a, std::size_t max_violations) {
        VerifyOptions options;
        options.max_violations = max_violations;
        const auto report = verify_pda(a, options);
        py::list violations;
        for (const auto& v : report.violations) {
          py::list where;
          for (const auto& ref : v.locations) where.append(py::make_tuple(ref.row, ref.col));
          py::dict d;
          d["condition"] = std::string(condition_name(v.condition));
          d["locations"] = where;
          d["detail"] = v.detail;
          violations.append(d);
        }
        py::dict out;
        out["valid"] = report.valid;
        out["violations"] = violations;
        out["truncated"] = report.truncated;
        return out;
      },
      py::arg("array"), py::arg("max_violations") = 0);

  m.def("parse", &parse_pda, py::arg("text"));
  m.def("emit", &emit_pda, py::arg("array"));
  m.def("canonicalize", [](const PdaArray& a) { return canonicalize(a); }, py::arg("array"));
  m.def("equivalent", [](const PdaArray& a, const PdaArray& b) { return equivalent(a, b); },
        py::arg("a"), py::arg("b"));

  m.def("simulate",
        [](const PdaArray& a, std::vector<std::size_t> demand, std::size_t files,
           std::size_t packet_size, std::uint64_t seed) {
          if (files == 0) files = a.cols();
          const PacketStore store(files, a.rows(), packet_size, seed);
          const DemandVector d(std::move(demand), files);
          const auto log = deliver(a, store, d);
          const auto report = decode_and_verify(a, store, d, log);
          py::list trace;
          for (const auto& tx : log.transmissions) trace.append(format_transmission(tx));
          py::list users;
          for (const auto& u : report.per_user) users.append(u.ok);
          py::dict out;
          out["success"] = report.success;
          out["bytes_sent"] = log.bytes_sent();
          out["transmissions"] = log.transmissions.size();
          out["trace"] = trace;
          out["per_user_ok"] = users;
          return out;
        },
        py::arg("array"), py::arg("demand"), py::arg("files") = 0, py::arg("packet_size") = 64,
        py::arg("seed") = 0);

  m.def("compare",
        [](const std::string& baseline, std::uint32_t q, std::uint32_t z, double lambda,
           std::uint32_t t, bool between) {
          const auto pos = between ? LatticePosition::Between : LatticePosition::OnPoint;
          const auto r = baseline == "szg" ? compare_general(q, z, t, lambda, pos)
                         : baseline == "yctc"
                             ? compare_special(q, z, lambda, pos)
                             : throw DomainError("baseline must be 'szg' or 'yctc'");
          py::dict d;
          d["rate_ratio_bound"] = r.rate_ratio_bound;
          d["rate_ratio"] = r.rate_ratio;
          d["subpacket_ratio_bound"] = to_py(r.subpacket_ratio_bound);
          d["subpacket_ratio"] = to_py(r.subpacket_ratio);
          d["advantage"] = r.advantage;
          d["w"] = r.replication;
          return d;
        },
        py::arg("baseline"), py::arg("q"), py::arg("z"), py::arg("lam"), py::arg("t") = 1,
        py::arg("between") = false);

  m.def("enumerate_schemes",
        [](std::uint64_t users, const py::object& ratio) {
          py::list out;
          for (const auto& r : enumerate_schemes(users, from_py_ratio(ratio))) {
            py::dict d;
            d["family"] = std::string(family_name(r.family));
            d["q"] = r.q;
            d["z"] = r.z;
            d["m"] = r.m;
            d["t"] = r.t;
            d["rate"] = to_py(r.rate);
            d["lnF"] = r.log_subpackets;
            out.append(d);
          }
          return out;
        },
        py::arg("k"), py::arg("ratio"));

  m.def("estimate_m_range", [](double users, std::uint32_t q, std::uint32_t t) {
    const auto r = estimate_m_range(users, q, t);
    return py::make_tuple(r.lower, r.upper);
  });
}
