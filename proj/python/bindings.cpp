// Thin bindings: diagrams and reports cross the boundary as canonical JSON
// strings, decoded by the pure-Python wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "charvar/cli.hpp"
#include "charvar/errors.hpp"
#include "charvar/invariants.hpp"
#include "charvar/io.hpp"
#include "charvar/moduli.hpp"
#include "charvar/smith.hpp"

namespace py = pybind11;
using namespace charvar;

namespace {

HeegaardDiagram load(const std::string& diagram_json) {
  return diagram_from_json(Json::parse(diagram_json));
}

SolverConfig config(std::uint64_t seed, int starts) {
  SolverConfig cfg;
  cfg.seed = seed;
  cfg.starts = starts;
  cfg.validate();
  return cfg;
}

std::array<double, 4> components(const UnitQuaternion& q) { return q.components(); }

}  // namespace

PYBIND11_MODULE(_charvar, m) {
  m.doc() = "SU(2) and SU(r) traceless character variety censuses";

  py::register_exception<Error>(m, "CharvarError");

  m.def("diagram", [](const std::string& name) {
    const auto d = diagram_from_name(name);
    if (!d) throw InvalidParameterError("not a constructor name: " + name);
    return canonical_dump(diagram_to_json(*d));
  });
  m.def("validate", [](const std::string& d) { return validate_diagram(load(d)).failures; });
  m.def("h1", [](const std::string& d) {
    const auto h = h1_invariants(load(d));
    return py::make_tuple(h.free_rank, h.torsion);
  });
  m.def("euler", [](const std::string& d) { return predict_euler(load(d)); });
  m.def(
      "census",
      [](const std::string& d, std::uint64_t seed, int starts) {
        const auto cfg = config(seed, starts);
        py::gil_scoped_release release;
        return canonical_dump(census_to_json(generator_census(load(d), cfg)));
      },
      py::arg("diagram"), py::arg("seed") = 1, py::arg("starts") = 0);
  m.def("smith", [](const std::vector<std::vector<std::int64_t>>& matrix) {
    std::vector<std::string> out;
    for (const auto& f : smith_normal_form(matrix).invariant_factors) out.push_back(f.get_str());
    return out;
  });
  m.def("ht_embed", [](const std::vector<std::array<double, 4>>& handles) {
    std::vector<UnitQuaternion> hs;
    for (const auto& h : handles) hs.emplace_back(h[0], h[1], h[2], h[3]);
    const auto p = ht_embed(hs);
    return std::vector<std::array<double, 4>>{components(p.punctures[0]), components(p.punctures[1]),
                                              components(p.punctures[2])};
  });
  m.def("run", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"charvar"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
