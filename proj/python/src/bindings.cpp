#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "deldd/bench.hpp"
#include "deldd/errors.hpp"
#include "deldd/parser.hpp"
#include "deldd/puzzles.hpp"
#include "deldd/transform.hpp"

namespace py = pybind11;
using namespace deldd;

namespace {

py::object to_py_int(const BigInt& v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py_int(boost::multiprecision::numerator(r)), to_py_int(boost::multiprecision::denominator(r)));
}

BoolOp parse_op(const std::string& name) {
  if (name == "and") return BoolOp::And;
  if (name == "or") return BoolOp::Or;
  if (name == "xor") return BoolOp::Xor;
  if (name == "iff") return BoolOp::Iff;
  if (name == "imp") return BoolOp::Imp;
  throw ValidationError("unknown operator '" + name + "' (and, or, xor, iff, imp)");
}

State state_from_names(const Vocabulary& vocab, const std::vector<std::string>& names) {
  State s(vocab.size());
  for (const auto& n : names) s.set(vocab.at(n));
  return s;
}

std::vector<std::string> names_of(const Vocabulary& vocab, const State& s) {
  std::vector<std::string> out;
  for (VarId v : s.true_vars()) out.push_back(vocab.name(v));
  return out;
}

std::vector<VarId> var_ids(const Vocabulary& vocab, const std::vector<std::string>& names) {
  std::vector<VarId> out;
  for (const auto& n : names) out.push_back(vocab.at(n));
  return out;
}

/// A function held by a manager; keeps the manager alive.
struct Node {
  std::shared_ptr<DdManager> manager;
  NodeRef ref;

  DdManager& m() const { return *manager; }
  Node wrap(NodeRef r) const { return {manager, r}; }
  void same(const Node& o) const {
    if (o.manager != manager) throw ManagerMismatchError("operands belong to different managers");
  }
};

struct Manager {
  std::shared_ptr<DdManager> impl;

  Manager(const std::vector<std::string>& vars, const std::string& backend)
      : impl(std::make_shared<DdManager>(Vocabulary(vars), parse_backend(backend))) {}

  Node wrap(NodeRef r) const { return {impl, r}; }

  Node formula(const std::string& text) const {
    return wrap(impl->from_formula(parse_formula(text, impl->vocabulary(), {}).to_bool()));
  }
};

struct Structure {
  KnowledgeStructure ks;

  static Structure create(const std::vector<std::string>& vars, const std::string& law,
                          const std::vector<std::pair<std::string, std::vector<std::string>>>& observations,
                          const std::string& backend) {
    auto m = std::make_shared<DdManager>(Vocabulary(vars), parse_backend(backend));
    std::vector<std::string> agents;
    std::vector<std::vector<VarId>> obs;
    for (const auto& [name, seen] : observations) {
      agents.push_back(name);
      obs.push_back(var_ids(m->vocabulary(), seen));
    }
    const BoolFormula theta = parse_formula(law, m->vocabulary(), {}).to_bool();
    return {KnowledgeStructure::from_formula(m, theta, obs, agents)};
  }

  DelFormula parse(const std::string& text) const {
    return parse_formula(text, ks.vocabulary(), ks.agent_names());
  }
};

py::list bench_rows(const std::vector<BenchRecord>& records) {
  py::list rows;
  for (const auto& r : records) {
    py::dict row;
    row["n"] = r.n;
    row["m"] = r.m ? py::cast(*r.m) : py::none();
    row["round"] = r.round;
    for (std::size_t c = 0; c < 6; ++c) {
      const auto& v = r.sizes[c];
      row[py::str(std::string(all_backends()[c].name()))] = v ? py::cast(*v) : py::none();
    }
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Decision diagrams with five elimination rules and a symbolic DEL model checker";

  auto base = py::register_exception<Error>(mod, "DelddError", PyExc_RuntimeError);
  py::register_exception<ParseError>(mod, "ParseError", base.ptr());
  py::register_exception<ResourceError>(mod, "ResourceError", base.ptr());
  py::register_exception<InvalidSceneError>(mod, "InvalidSceneError", base.ptr());
  py::register_exception<InvalidInstanceError>(mod, "InvalidInstanceError", base.ptr());

  mod.def("backends", [] {
    std::vector<std::string> out;
    for (const auto& b : all_backends()) out.emplace_back(b.name());
    return out;
  });

  py::class_<Node>(mod, "Node")
      .def("node_count", [](const Node& n) { return n.m().node_count(n.ref); })
      .def("sat_count", [](const Node& n) { return to_py_int(n.m().sat_count(n.ref)); })
      .def("density", [](const Node& n) { return to_fraction(n.m().density(n.ref)); })
      .def("evaluate",
           [](const Node& n, const std::vector<std::string>& true_vars) {
             return n.m().evaluate(n.ref, state_from_names(n.m().vocabulary(), true_vars));
           })
      .def("models",
           [](const Node& n, std::size_t limit) {
             std::vector<std::vector<std::string>> out;
             for (const State& s : n.m().enumerate(n.ref, limit)) out.push_back(names_of(n.m().vocabulary(), s));
             return out;
           },
           py::arg("limit") = 1U << 20)
      .def("is_true", [](const Node& n) { return n.m().is_constant(n.ref, true); })
      .def("is_false", [](const Node& n) { return n.m().is_constant(n.ref, false); })
      .def("restrict", [](const Node& n, const std::string& var, bool value) {
        return n.wrap(n.m().restrict(n.ref, n.m().vocabulary().at(var), value));
      })
      .def("exists", [](const Node& n, const std::vector<std::string>& vars) {
        return n.wrap(n.m().exists_set(n.ref, var_ids(n.m().vocabulary(), vars)));
      })
      .def("forall", [](const Node& n, const std::vector<std::string>& vars) {
        return n.wrap(n.m().forall_set(n.ref, var_ids(n.m().vocabulary(), vars)));
      })
      .def("apply",
           [](const Node& a, const std::string& op, const Node& b) {
             a.same(b);
             return a.wrap(a.m().apply(parse_op(op), a.ref, b.ref));
           })
      .def("__and__", [](const Node& a, const Node& b) { a.same(b); return a.wrap(a.m().apply(BoolOp::And, a.ref, b.ref)); })
      .def("__or__", [](const Node& a, const Node& b) { a.same(b); return a.wrap(a.m().apply(BoolOp::Or, a.ref, b.ref)); })
      .def("__xor__", [](const Node& a, const Node& b) { a.same(b); return a.wrap(a.m().apply(BoolOp::Xor, a.ref, b.ref)); })
      .def("__invert__", [](const Node& a) { return a.wrap(a.m().negate(a.ref)); })
      .def("__eq__", [](const Node& a, const Node& b) { return a.manager == b.manager && a.ref == b.ref; })
      .def("__hash__", [](const Node& a) { return std::hash<std::uint64_t>{}((std::uint64_t{a.ref.manager_id()} << 32) | a.ref.edge()); })
      .def("dot", [](const Node& n) {
        std::ostringstream out;
        n.m().write_dot(out, n.ref);
        return out.str();
      });

  py::class_<Manager>(mod, "Manager")
      .def(py::init<const std::vector<std::string>&, const std::string&>(), py::arg("variables"),
           py::arg("backend") = "BDD")
      .def_property_readonly("backend", [](const Manager& m) { return std::string(m.impl->backend().name()); })
      .def_property_readonly("variables", [](const Manager& m) { return m.impl->vocabulary().names(); })
      .def("var", [](const Manager& m, const std::string& name) { return m.wrap(m.impl->literal(m.impl->vocabulary().at(name))); })
      .def("true", [](const Manager& m) { return m.wrap(m.impl->constant(true)); })
      .def("false", [](const Manager& m) { return m.wrap(m.impl->constant(false)); })
      .def("formula", &Manager::formula, "Builds a Boolean formula written in the .kmodel syntax")
      .def("stored_nodes", [](const Manager& m) { return m.impl->stored_nodes(); })
      .def("convert_via_t0", [](const Manager& t0, const Node& g, const Manager& target) {
        if (g.manager != t0.impl) throw ManagerMismatchError("node does not belong to the T0 manager");
        return target.wrap(convert_via_t0(*t0.impl, g.ref, *target.impl));
      });

  py::class_<Structure>(mod, "Structure")
      .def(py::init(&Structure::create), py::arg("variables"), py::arg("law"), py::arg("observations"),
           py::arg("backend") = "BDD")
      .def_property_readonly("law", [](const Structure& s) { return Node{s.ks.manager_ptr(), s.ks.law()}; })
      .def_property_readonly("agents", [](const Structure& s) { return s.ks.agent_names(); })
      .def("translate", [](const Structure& s, const std::string& f) { return Node{s.ks.manager_ptr(), translate(s.ks, s.parse(f))}; })
      .def("update", [](const Structure& s, const std::string& f) { return Structure{update(s.ks, s.parse(f))}; })
      .def("evaluate",
           [](const Structure& s, const std::vector<std::string>& actual, const std::string& f) {
             return eval_scene(Scene(s.ks, state_from_names(s.ks.vocabulary(), actual)), s.parse(f));
           })
      .def("announce_whether",
           [](const Structure& s, const std::vector<std::string>& actual, const std::string& f) {
             return Structure{announce_whether(Scene(s.ks, state_from_names(s.ks.vocabulary(), actual)), s.parse(f)).structure()};
           })
      .def("states",
           [](const Structure& s) {
             std::vector<std::vector<std::string>> out;
             for (const State& st : states_of(s.ks)) out.push_back(names_of(s.ks.vocabulary(), st));
             return out;
           })
      .def("sparsity", [](const Structure& s) { return to_fraction(sparsity(s.ks)); });

  mod.def("check_model",
          [](const std::string& text, const std::string& backend) { return check_file(parse_model(text), parse_backend(backend)); },
          py::arg("text"), py::arg("backend") = "BDD", "Evaluates the queries of a .kmodel text; one report line per query");

  mod.def("sap_solutions",
          [](std::size_t bound, const std::string& backend) { return sap_solutions(bound, parse_backend(backend)); },
          py::arg("bound"), py::arg("backend") = "BDD");

  mod.def(
      "measure",
      [](const std::string& puzzle, std::size_t n, std::optional<std::size_t> m, std::optional<std::vector<std::string>> variants) {
        MeasureOptions opt;
        if (variants) {
          opt.variants.clear();
          for (const auto& v : *variants) opt.variants.push_back(parse_backend(v));
        }
        MeasureResult r;
        if (puzzle == "mc") {
          const std::size_t mm = m.value_or(n);
          r = measure_instance(muddy_children(n, mm), n, mm, opt);
        } else if (puzzle == "dc") {
          r = measure_instance(dining_cryptographers(n, m.value_or(0)), n, std::nullopt, opt);
        } else if (puzzle == "sap") {
          r = measure_instance(sum_and_product(n), n, std::nullopt, opt);
        } else {
          throw ValidationError("unknown puzzle '" + puzzle + "' (mc, dc, sap)");
        }
        return bench_rows(r.records);
      },
      py::arg("puzzle"), py::arg("n"), py::arg("m") = py::none(), py::arg("variants") = py::none(),
      "Node counts per announcement round and the average row (round -1). For dc, m selects the payer.");
}
