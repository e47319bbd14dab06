#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weightforge/blocks_bridge.hpp"
#include "weightforge/equivcheck.hpp"
#include "weightforge/errors.hpp"
#include "weightforge/runner.hpp"

namespace py = pybind11;
using namespace weightforge;

namespace {

PermutationGroup group_from_cycles(uint32_t degree, const std::vector<std::string>& cycles) {
  std::vector<Permutation> gens;
  for (const auto& c : cycles) gens.push_back(Permutation::from_cycles(c, degree));
  return PermutationGroup::from_generators(degree, gens);
}

py::dict run_json(const std::string& atlas, const std::string& group_file, uint64_t p,
                  const std::vector<std::string>& checks, uint64_t galois_t,
                  const std::vector<std::string>& aut_files) {
  JobSpec job;
  job.atlas_name = atlas;
  job.group_file = group_file;
  job.prime = p;
  for (const auto& c : checks) job.checks.insert(c);
  job.galois_t = galois_t;
  job.aut_files = aut_files;
  RunResult r = run(job);
  py::module_ json = py::module_::import("json");
  py::dict out = json.attr("loads")(r.report.dump());
  out["exit_code"] = r.exit_code;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact weights, blocks and Galois actions for finite permutation groups";

  py::register_exception<InputError>(m, "InputError");
  py::register_exception<DomainError>(m, "GroupDomainError");
  py::register_exception<ValidationError>(m, "TableValidationError");
  py::register_exception<ResourceError>(m, "ResourceLimitError");

  py::class_<Permutation>(m, "Permutation")
      .def_static("from_cycles", &Permutation::from_cycles, py::arg("text"), py::arg("degree"))
      .def("__mul__", &Permutation::operator*)
      .def("inverse", &Permutation::inverse)
      .def("order", &Permutation::order)
      .def("__repr__", &Permutation::cycle_string);

  py::class_<PermutationGroup>(m, "PermutationGroup")
      .def_static("from_cycles", &group_from_cycles, py::arg("degree"), py::arg("cycles"))
      .def_property_readonly("degree", &PermutationGroup::degree)
      .def_property_readonly("order", [](const PermutationGroup& g) {
        return py::int_(py::str(g.order().get_str()));
      })
      .def("contains", &PermutationGroup::contains);

  m.def("atlas_names", [] {
    std::vector<std::string> names;
    for (const auto& e : atlas_index()) names.push_back(e.name);
    return names;
  });
  m.def("load_atlas", [](const std::string& name) { return *load_atlas_group(name).group; });

  m.def("sylow_subgroup", &sylow_subgroup, py::arg("group"), py::arg("p"));
  m.def("p_core", &p_core, py::arg("group"), py::arg("p"));
  m.def("normalizer", &normalizer, py::arg("group"), py::arg("subgroup"));
  m.def("centralizer", &centralizer, py::arg("group"), py::arg("element"));

  m.def("class_counts", [](const PermutationGroup& g, uint64_t p) {
    ClassData cd = conjugacy_classes(g);
    return py::make_tuple(cd.class_count(), p_regular_class_count(cd, p));
  });
  m.def("character_degrees", [](const PermutationGroup& g) {
    auto G = std::make_shared<PermutationGroup>(g);
    auto cd = std::make_shared<ClassData>(conjugacy_classes(*G));
    CharacterTable t = compute_character_table(G, cd);
    std::vector<std::string> degs;
    for (uint32_t r = 0; r < t.rows(); ++r) degs.push_back(t.degree(r).get_str());
    return degs;
  });
  m.def("radical_orders", [](const PermutationGroup& g, uint64_t p) {
    std::vector<std::string> out;
    for (const auto& rc : radical_subgroups(g, p)) out.push_back(rc.subgroup.order().get_str());
    return out;
  });
  m.def("weight_count", [](const PermutationGroup& g, uint64_t p) {
    return enumerate_weights(g, p, default_table_provider()).count();
  });

  m.def("run", &run_json, py::arg("atlas") = "", py::arg("group_file") = "", py::arg("p") = 2,
        py::arg("checks") = std::vector<std::string>{}, py::arg("galois_t") = 1,
        py::arg("aut_files") = std::vector<std::string>{});
}
