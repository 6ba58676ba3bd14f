#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "cantorforge/construction.hpp"
#include "cantorforge/ends.hpp"
#include "cantorforge/errors.hpp"
#include "cantorforge/geometry.hpp"
#include "cantorforge/io.hpp"
#include "cantorforge/verify.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace cantorforge;

namespace {

// int for finite genus, math.inf for infinity.
py::object genus_to_py(const ExtendedGenus& g) {
  if (g.is_infinite()) return py::float_(INFINITY);
  return py::int_(g.value());
}

py::tuple id_to_py(const ComponentId& id) { return py::make_tuple(id.stage, id.index); }

ComponentId id_from_py(const std::pair<std::uint32_t, std::uint64_t>& p) { return {p.first, p.second}; }

py::dict profile_to_py(const GenusProfile& p) {
  py::dict d;
  d["genera"] = p.genera;
  d["sup_so_far"] = p.sup_so_far;
  switch (p.certificate.kind) {
    case LiminfCertificate::Kind::kValue: d["certificate"] = "value"; break;
    case LiminfCertificate::Kind::kUnbounded: d["certificate"] = "unbounded"; break;
    case LiminfCertificate::Kind::kUnstable: d["certificate"] = "unstable"; break;
  }
  d["liminf"] = p.certificate.kind == LiminfCertificate::Kind::kValue ? py::object(py::int_(p.certificate.value))
                                                                      : py::object(py::none());
  d["witness_stages"] = p.certificate.witness_stages;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Defining-sequence construction and end analysis for Cantor sets of prescribed local genus";

  auto base = py::register_exception<Error>(m, "CantorforgeError");
  py::register_exception<SpecSyntaxError>(m, "SpecSyntaxError", base);
  py::register_exception<SpecValueError>(m, "SpecValueError", base);
  py::register_exception<IndexError>(m, "SpecIndexError", base);
  py::register_exception<StageParityError>(m, "StageParityError", base);
  py::register_exception<InvariantError>(m, "InvariantError", base);
  py::register_exception<NotFoundError>(m, "NotFoundError", base);
  py::register_exception<ResourceError>(m, "ResourceError", base);
  py::register_exception<PolicyError>(m, "PolicyError", base);
  py::register_exception<DepthTooShallowError>(m, "DepthTooShallowError", base);

  m.attr("DEFAULT_BUDGET") = kDefaultBudget;
  m.attr("__version__") = std::string(io::kToolVersion);

  py::class_<GenusSpec>(m, "GenusSpec")
      .def("entry", [](const GenusSpec& s, std::uint64_t i) { return genus_to_py(s.entry(i)); }, py::arg("i"))
      .def("render", &GenusSpec::render)
      .def("__str__", &GenusSpec::render)
      .def("__repr__", [](const GenusSpec& s) { return "GenusSpec('" + s.render() + "')"; })
      .def("__eq__", [](const GenusSpec& a, const GenusSpec& b) { return a == b; });
  m.def("parse_spec", &parse_spec, py::arg("text"));

  py::class_<Component>(m, "Component")
      .def_property_readonly("id", [](const Component& c) { return id_to_py(c.id); })
      .def_property_readonly("stage", [](const Component& c) { return c.id.stage; })
      .def_property_readonly("index", [](const Component& c) { return c.id.index; })
      .def_readonly("genus", &Component::genus)
      .def_property_readonly("assigned_term", [](const Component& c) { return genus_to_py(c.assigned_term); })
      .def_property_readonly("parent",
                             [](const Component& c) { return c.parent ? py::object(id_to_py(*c.parent)) : py::none(); })
      .def_property_readonly("birth", [](const Component& c) { return std::string(birth_name(c.birth)); })
      .def_readonly("handle", &Component::handle)
      .def_readonly("position", &Component::position)
      .def_property_readonly("cell", [](const Component& c) {
        return std::vector<std::uint32_t>(c.cell.path().begin(), c.cell.path().end());
      })
      .def_readonly("diam_exp", &Component::diam_exp)
      .def("__eq__", [](const Component& a, const Component& b) { return a == b; })
      .def("__repr__", [](const Component& c) {
        return "Component" + c.id.to_string() + "(genus=" + std::to_string(c.genus) + ", birth=" +
               std::string(birth_name(c.birth)) + ")";
      });

  py::class_<Construction>(m, "Construction")
      .def(py::init<GenusSpec, std::size_t>(), py::arg("spec"), py::arg("budget") = kDefaultBudget)
      .def_property_readonly("spec", &Construction::spec)
      .def("stage_size", &Construction::stage_size, py::arg("stage"))
      .def("genus_at", [](const Construction& e, std::uint32_t k, std::uint64_t i) { return e.genus_at({k, i}); })
      .def("component_at", [](const Construction& e, std::uint32_t k, std::uint64_t i) { return e.component_at({k, i}); },
           py::arg("stage"), py::arg("index"))
      .def("children_of", [](const Construction& e, std::uint32_t k, std::uint64_t i) { return e.children_of({k, i}); },
           py::arg("stage"), py::arg("index"))
      .def("memo_size", &Construction::memo_size);

  m.def("build_stages",
        [](const GenusSpec& spec, std::uint32_t depth, std::size_t budget) {
          std::vector<std::vector<Component>> out;
          for (auto& s : build_stages(spec, depth, budget)) out.push_back(std::move(s.components));
          return out;
        },
        py::arg("spec"), py::arg("depth"), py::arg("budget") = kDefaultBudget);

  py::class_<EndPolicy>(m, "EndPolicy")
      .def_property_readonly("prefix",
                             [](const EndPolicy& e) {
                               py::list l;
                               for (const auto& id : e.prefix) l.append(id_to_py(id));
                               return l;
                             })
      .def("describe", &EndPolicy::describe)
      .def("__repr__", [](const EndPolicy& e) { return "EndPolicy(" + e.describe() + ")"; });

  m.def("birth_stage", &birth_stage, py::arg("engine"), py::arg("label"));
  m.def("dense_point", &dense_point, py::arg("engine"), py::arg("label"));
  m.def("chain_hop_end",
        [](const std::string& rule, const std::vector<std::pair<std::uint32_t, std::uint64_t>>& prefix) {
          std::vector<ComponentId> ids;
          for (const auto& p : prefix) ids.push_back(id_from_py(p));
          return chain_hop_end(std::move(ids), ChainHopRule::parse(rule));
        },
        py::arg("rule") = "first", py::arg("prefix") = std::vector<std::pair<std::uint32_t, std::uint64_t>>{});
  m.def("trace",
        [](const Construction& e, const EndPolicy& p, std::uint32_t depth) {
          py::list l;
          for (const auto& c : trace(e, p, depth)) l.append(id_to_py(c.id));
          return l;
        },
        py::arg("engine"), py::arg("end"), py::arg("depth"));
  m.def("genus_profile",
        [](const Construction& e, const EndPolicy& p, std::uint32_t depth) { return profile_to_py(genus_profile(e, p, depth)); },
        py::arg("engine"), py::arg("end"), py::arg("depth"));
  m.def("local_genus_upper",
        [](const Construction& e, const EndPolicy& p, std::uint32_t depth) { return genus_to_py(local_genus_upper(e, p, depth)); },
        py::arg("engine"), py::arg("end"), py::arg("depth"));
  m.def("classify",
        [](const GenusSpec& spec, const EndPolicy& p) {
          const auto c = classify(spec, p);
          py::dict d;
          d["kind"] = c.kind == EndClassification::Kind::kDense ? "dense" : "non_dense";
          d["label"] = c.kind == EndClassification::Kind::kDense ? py::object(py::int_(c.label)) : py::object(py::none());
          d["genus_upper"] = genus_to_py(c.genus_upper);
          d["exact"] = c.exact ? genus_to_py(*c.exact) : py::object(py::make_tuple(1, 2));
          d["provenance"] = c.provenance;
          return d;
        },
        py::arg("spec"), py::arg("end"));
  m.def("density_check",
        [](const Construction& e, std::uint32_t depth) {
          const auto r = density_check(e, depth);
          py::dict d;
          d["passed"] = r.passed();
          d["components_checked"] = r.components_checked;
          d["violations"] = r.violations;
          return d;
        },
        py::arg("engine"), py::arg("depth"));
  m.def("ends_as_points",
        [](const Construction& e, std::uint32_t depth) {
          const auto r = ends_as_points(e, depth);
          py::list stages;
          for (const auto& el : r.exhaustion) {
            std::vector<std::uint32_t> genera;
            for (const auto& b : el.boundary) genera.push_back(b.genus);
            stages.append(genera);
          }
          py::dict d;
          d["boundary_genera"] = stages;
          d["correspondence"] = r.correspondence;
          return d;
        },
        py::arg("engine"), py::arg("depth"));

  m.def("linking_layout",
        [](const Component& c) {
          const auto l = linking_layout(c);
          py::dict d;
          d["handle_count"] = l.handle_count;
          d["chain_length"] = l.chain_length;
          d["slot_count"] = l.slot_count();
          py::list adj;
          for (const auto& [a, b] : l.adjacencies) {
            adj.append(py::make_tuple(py::make_tuple(a.handle, a.position), py::make_tuple(b.handle, b.position)));
          }
          d["adjacencies"] = adj;
          return d;
        },
        py::arg("component"));
  m.def("tameness_caveat",
        [](const GenusSpec& spec, std::uint32_t depth, std::size_t budget) {
          const auto r = tameness_caveat(spec, depth, budget);
          py::list rows;
          for (const auto& row : r.rows) {
            py::dict d;
            d["stage"] = row.stage;
            d["components"] = row.components;
            d["distinct_cells"] = row.distinct_cells;
            d["min_cell_depth"] = row.min_cell_depth;
            d["max_cell_depth"] = row.max_cell_depth;
            d["refined"] = row.refined;
            d["max_diam_exp"] = row.max_diameter.exponent;
            rows.append(d);
          }
          py::dict d;
          d["rows"] = rows;
          d["note"] = r.note;
          return d;
        },
        py::arg("spec"), py::arg("depth"), py::arg("budget") = kDefaultBudget);

  m.def("verify",
        [](const GenusSpec& spec, std::uint32_t stages) {
          const auto r = verify_construction(spec, stages);
          py::dict checks;
          for (const auto& c : r.checks) checks[py::str(c.name)] = c.passed;
          py::dict d;
          d["passed"] = r.passed();
          d["checks"] = checks;
          const auto* bad = r.first_failure();
          d["first_failure"] = bad ? py::object(py::str(bad->name + ": " + bad->detail)) : py::object(py::none());
          return d;
        },
        py::arg("spec"), py::arg("stages"));
  m.def("spec_corpus", &spec_corpus, py::arg("count"), py::arg("seed") = 0);

  m.def("build_document",
        [](const GenusSpec& spec, std::uint32_t depth, std::size_t budget) {
          return io::to_json(io::make_document(spec, build_stages(spec, depth, budget)));
        },
        py::arg("spec"), py::arg("stages"), py::arg("budget") = kDefaultBudget);
  m.def("canonicalize_document", [](const std::string& text) { return io::to_json(io::document_from_json(text)); },
        py::arg("text"));
  m.def("export_dot",
        [](const GenusSpec& spec, std::uint32_t depth, std::optional<std::uint64_t> highlight) {
          return io::to_dot(build_stages(spec, depth), highlight);
        },
        py::arg("spec"), py::arg("stages"), py::arg("highlight_label") = py::none());

  m.def("run_cli",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "cantorforge");
          std::vector<const char*> argv;
          for (const auto& a : args) argv.push_back(a.c_str());
          std::ostringstream out, err;
          const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
