#include "cli.hpp"
#include "qacause/abduction.hpp"
#include "qacause/causality.hpp"
#include "qacause/constraints.hpp"
#include "qacause/delete_propagation.hpp"
#include "qacause/error.hpp"
#include "qacause/golden.hpp"
#include "qacause/vc_causality.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace qacause;

namespace {

Tuple to_tuple(const py::object& answer) {
    if (answer.is_none())
        return {};
    if (py::isinstance<py::str>(answer))
        return parse_tuple(answer.cast<std::string>());
    return answer.cast<Tuple>();
}

py::tuple from_tuple(const Tuple& t) { return py::cast(t); }

py::set id_set(const TupleIdSet& ids) {
    py::set out;
    for (const auto& id : ids)
        out.add(py::str(id.str()));
    return out;
}

py::list family(const std::vector<TupleIdSet>& sets) {
    py::list out;
    for (const auto& s : sets)
        out.append(py::frozenset(id_set(s)));
    return out;
}

py::object fraction(const Responsibility& r) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    const Rational v = r.value();
    return cls(v.numerator(), v.denominator());
}

py::dict report_dict(const CausalityReport& rep) {
    py::dict causes;
    for (const auto& [id, e] : rep.entries) {
        py::dict entry;
        entry["counterfactual"] = e.counterfactual;
        entry["responsibility"] = fraction(e.responsibility);
        entry["contingencies"] = family(e.contingencies.sets);
        causes[py::str(id.str())] = entry;
    }
    py::dict out;
    out["answer"] = from_tuple(rep.answer);
    out["causes"] = causes;
    return out;
}

VcMode mode_of(bool strict) { return strict ? VcMode::Strict : VcMode::Loose; }

DeletionScope scope_of(bool endogenous_only) {
    return endogenous_only ? DeletionScope::EndogenousOnly : DeletionScope::AllFacts;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Causes, responsibility, abduction and delete propagation for query answers";

    static PyObject* error_type = PyErr_NewException("qacause._core.QacauseError", PyExc_ValueError, nullptr);
    m.add_object("QacauseError", py::handle(error_type));
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(error_type)(py::str(e.what()));
            inst.attr("code") = std::string(to_string(e.code()));
            inst.attr("line") = e.line();
            inst.attr("column") = e.column();
            PyErr_SetObject(error_type, inst.ptr());
        }
    });

    py::class_<Fact>(m, "Fact")
        .def_readonly("predicate", &Fact::predicate)
        .def_property_readonly("args", [](const Fact& f) { return from_tuple(f.args); })
        .def_property_readonly("id", [](const Fact& f) { return f.id.str(); })
        .def_readonly("endogenous", &Fact::endogenous)
        .def("__str__", &Fact::to_string)
        .def("__repr__", [](const Fact& f) { return "<Fact " + f.id.str() + " " + f.to_string() + ">"; });

    py::class_<Instance>(m, "Instance")
        .def_property_readonly("facts", &Instance::facts)
        .def("__len__", &Instance::size)
        .def("fact", [](const Instance& d, const std::string& id) { return d.fact(TupleId(id)); })
        .def("ids", [](const Instance& d) { return id_set(d.ids()); })
        .def("endogenous_ids", [](const Instance& d) { return id_set(endogenous_ids(d)); })
        .def("exogenous_ids", [](const Instance& d) { return id_set(exogenous_ids(d)); })
        .def("remove",
             [](const Instance& d, const std::vector<std::string>& ids) {
                 TupleIdSet s;
                 for (const auto& i : ids)
                     s.insert(TupleId(i));
                 return remove(d, s);
             })
        .def("__str__", &format_instance);

    py::class_<Program>(m, "Program")
        .def_property_readonly("answer_predicate", &Program::answer_predicate)
        .def_property_readonly("answer_arity", &Program::answer_arity)
        .def_property_readonly("is_boolean", &Program::is_boolean)
        .def_property_readonly("is_conjunctive", &Program::is_conjunctive)
        .def("__str__", &Program::to_string);

    py::class_<ConstraintSet>(m, "ConstraintSet")
        .def_property_readonly("deletion_safe", &ConstraintSet::deletion_safe)
        .def("__bool__", [](const ConstraintSet& s) { return !s.empty(); })
        .def("__str__", &format_constraints);

    m.def("parse_instance", [](const std::string& text) { return parse_instance(text); }, py::arg("text"));
    m.def("parse_program", &parse_program, py::arg("text"), py::arg("answer_predicate") = py::none());
    m.def("parse_constraints", &parse_constraints, py::arg("text"));

    m.def("evaluate", [](const Program& p, const Instance& d) {
        py::set out;
        for (const auto& t : evaluate(p, d))
            out.add(from_tuple(t));
        return out;
    });
    m.def("holds", [](const Program& p, const Instance& d, const py::object& a) { return holds(p, d, to_tuple(a)); },
          py::arg("program"), py::arg("instance"), py::arg("answer") = py::none());

    m.def("actual_causes",
          [](const Program& p, const Instance& d, const py::object& a) { return id_set(actual_causes(p, d, to_tuple(a))); },
          py::arg("program"), py::arg("instance"), py::arg("answer") = py::none());
    m.def("counterfactual_causes",
          [](const Program& p, const Instance& d, const py::object& a) {
              return id_set(counterfactual_causes(p, d, to_tuple(a)));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer") = py::none());
    m.def("minimal_contingencies",
          [](const Program& p, const Instance& d, const py::object& a, const std::string& tau) {
              return family(minimal_contingencies(p, d, to_tuple(a), TupleId(tau)).sets);
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("tau"));
    m.def("responsibility",
          [](const Program& p, const Instance& d, const py::object& a, const std::string& tau) {
              return fraction(responsibility(p, d, to_tuple(a), TupleId(tau)));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("tau"));
    m.def("causality_report",
          [](const Program& p, const Instance& d, const py::object& a) {
              return report_dict(causality_report(p, d, to_tuple(a)));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer") = py::none());

    m.def("vc_causes",
          [](const Program& p, const Instance& d, const py::object& a, bool strict) {
              return id_set(vc_causes(p, d, to_tuple(a), mode_of(strict)));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("strict") = false);
    m.def("vc_responsibility",
          [](const Program& p, const Instance& d, const py::object& a, const std::string& tau, bool strict) {
              return fraction(vc_responsibility(p, d, to_tuple(a), TupleId(tau), mode_of(strict)));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("tau"), py::arg("strict") = false);
    m.def("vc_cause_exists",
          [](const Program& p, const Instance& d, const py::object& a, bool strict) {
              return vc_cause_exists(p, d, to_tuple(a), mode_of(strict));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("strict") = false);

    m.def("abduce",
          [](const Program& p, const Instance& extensional, const Instance& hypotheses, const std::string& observation) {
              const auto ap =
                  make_abduction_problem(p, extensional.facts(), hypotheses.facts(), parse_ground_atoms(observation));
              const auto sol = solve(ap);
              py::list diagnoses;
              for (const auto& d : sol)
                  diagnoses.append(py::frozenset(id_set(d.ids())));
              TupleIdSet rel;
              for (const auto& f : relevant(ap))
                  rel.insert(f.id);
              py::object ness = py::none();
              if (!sol.empty()) {
                  TupleIdSet n;
                  for (const auto& f : necessary(ap))
                      n.insert(f.id);
                  ness = id_set(n);
              }
              py::dict out;
              out["diagnoses"] = diagnoses;
              out["relevant"] = id_set(rel);
              out["necessary"] = ness;
              return out;
          },
          py::arg("program"), py::arg("extensional"), py::arg("hypotheses"), py::arg("observation"));
    m.def("causes_via_abduction", [](const Program& p, const Instance& d) {
        const auto c = causes_via_abduction(p, d);
        return py::make_tuple(id_set(c.actual), id_set(c.counterfactual));
    });

    m.def("satisfies", [](const Instance& d, const ConstraintSet& s) { return satisfies(d, s); });
    m.def("violations", [](const Instance& d, const ConstraintSet& s) { return violations(d, s); });
    m.def("causes_under_ics",
          [](const Program& p, const Instance& d, const py::object& a, const ConstraintSet& s) {
              return id_set(causes_under_ics(p, d, to_tuple(a), s));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("constraints"));
    m.def("vc_reduction", [](const Program& p, const Instance& d, const py::object& a) {
        const auto r = vc_reduction(p, d, to_tuple(a));
        return py::make_tuple(r.instance, r.sigma, r.view_predicate);
    });
    m.def("is_key_preserving",
          [](const Program& p, const ConstraintSet& keys) { return is_key_preserving(p, keys.fds); });

    m.def("min_source_side_effect",
          [](const Program& p, const Instance& d, const py::object& a, bool endogenous_only) {
              return family(min_source_side_effect(p, d, to_tuple(a), scope_of(endogenous_only)));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("endogenous_only") = false);
    m.def("view_side_effect_free",
          [](const Program& p, const Instance& d, const py::object& a, bool endogenous_only) -> py::object {
              const auto s = view_side_effect_free(p, d, to_tuple(a), scope_of(endogenous_only));
              if (!s)
                  return py::none();
              return py::frozenset(id_set(s->deleted));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("endogenous_only") = false);
    m.def("decide_vsefp",
          [](const Program& p, const Instance& d, const py::object& a, bool endogenous_only) {
              return decide_vsefp(p, d, to_tuple(a), scope_of(endogenous_only));
          },
          py::arg("program"), py::arg("instance"), py::arg("answer"), py::arg("endogenous_only") = false);

    m.def("replay_examples", [] {
        py::list out;
        for (const auto& c : golden::replay())
            out.append(py::make_tuple(c.name, c.passed, c.detail));
        return out;
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
