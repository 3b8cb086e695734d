#include "qacause/golden.hpp"

#include "qacause/abduction.hpp"
#include "qacause/causality.hpp"
#include "qacause/constraints.hpp"

#include <exception>
#include <functional>

namespace qacause::golden {

std::string_view graph_instance() {
    return "E(a,b).\n"
           "E(b,e).\n"
           "E(e,d).\n"
           "E(d,b).\n"
           "E(c,a).\n"
           "E(c,b).\n"
           "E(c,d).\n";
}

std::string_view path_program() {
    return "Ans(x,y) <- P(x,y).\n"
           "P(x,y) <- E(x,y).\n"
           "P(x,y) <- P(x,z), E(z,y).\n";
}

std::string_view rs_instance() {
    return "R(a1,a4).\n"
           "R(a2,a1).\n"
           "R(a3,a3).\n"
           "S(a1).\n"
           "S(a2).\n"
           "S(a3).\n";
}

std::string_view rs_program() { return "ans <- R(x,y), S(y).\n"; }

std::string_view university_instance() {
    return "Dep(Computing,John).\n"
           "Dep(Philosophy,Patrick).\n"
           "Dep(Math,Kevin).\n"
           "Course(Com08,John,Computing).\n"
           "Course(Math01,Kevin,Math).\n"
           "Course(Hist02,Patrick,Philosophy).\n"
           "Course(Math08,Eli,Math).\n"
           "Course(Com01,John,Computing).\n";
}

std::string_view staff_program() { return "Ans(TStaff) <- Dep(DName,TStaff), Course(CName,TStaff,DName).\n"; }

std::string_view staff_rewritten_program() { return "Ans(TStaff) <- Dep(DName,TStaff).\n"; }

std::string_view university_constraints() { return "IND Dep[1,2] -> Course[3,2];\n"; }

namespace {

TupleIdSet ids(std::initializer_list<const char*> names) {
    TupleIdSet out;
    for (const char* n : names)
        out.insert(TupleId(n));
    return out;
}

std::string render(const std::vector<TupleIdSet>& family) {
    std::string out = "{";
    for (std::size_t i = 0; i < family.size(); ++i)
        out += (i ? "," : "") + format_ids(family[i]);
    return out + "}";
}

Check run(std::string name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        return {std::move(name), ok, std::move(detail)};
    } catch (const std::exception& e) {
        return {std::move(name), false, e.what()};
    }
}

} // namespace

std::vector<Check> replay() {
    std::vector<Check> out;

    out.push_back(run("path causes for (c,e)", [] {
        const Program p = parse_program(path_program());
        const Instance d = parse_instance(graph_instance());
        const CauseAnalysis a(p, d, {"c", "e"});
        const TupleIdSet causes = a.actual_causes();
        const bool ok = causes == ids({"t1", "t2", "t4", "t5", "t6", "t7"}) &&
                        a.counterfactual_causes() == ids({"t2"}) &&
                        a.responsibility(TupleId("t2")).is_counterfactual() &&
                        a.responsibility(TupleId("t3")).is_zero();
        return std::pair{ok, "causes " + format_ids(causes) + ", counterfactual " +
                                 format_ids(a.counterfactual_causes())};
    }));

    out.push_back(run("abductive diagnoses of ans", [] {
        const Program p = parse_program(rs_program());
        const Instance d = parse_instance(rs_instance());
        const AbductionProblem ap = causal_abduction_problem(p, d);
        std::vector<TupleIdSet> sol;
        for (const auto& delta : solve(ap))
            sol.push_back(delta.ids());
        TupleIdSet rel, ness;
        for (const auto& f : relevant(ap))
            rel.insert(f.id);
        for (const auto& f : necessary(ap))
            ness.insert(f.id);
        // t4 = S(a1), t2 = R(a2,a1), t6 = S(a3), t3 = R(a3,a3)
        const bool ok = sol == std::vector{ids({"t2", "t4"}), ids({"t3", "t6"})} &&
                        rel == ids({"t2", "t3", "t4", "t6"}) && ness.empty();
        return std::pair{ok, "Sol " + render(sol) + ", Rel " + format_ids(rel) + ", Ness " + format_ids(ness)};
    }));

    out.push_back(run("staff causes for John", [] {
        const Program p = parse_program(staff_program());
        const Instance d = parse_instance(university_instance());
        const CauseAnalysis a(p, d, {"John"});
        const bool ok = a.actual_causes() == ids({"t1", "t4", "t8"}) &&
                        a.contingencies(TupleId("t4")).sets == std::vector{ids({"t8"})} &&
                        a.contingencies(TupleId("t8")).sets == std::vector{ids({"t4"})} &&
                        a.responsibility(TupleId("t1")).is_counterfactual();
        return std::pair{ok, "causes " + format_ids(a.actual_causes()) + ", Cont(t4) " +
                                 render(a.contingencies(TupleId("t4")).sets)};
    }));

    out.push_back(run("staff causes for John under the inclusion dependency", [] {
        const Instance d = parse_instance(university_instance());
        const ConstraintSet sigma = parse_constraints(university_constraints());
        const Program q = parse_program(staff_program());
        const Program q2 = parse_program(staff_rewritten_program());
        const TupleIdSet under = causes_under_ics(q, d, {"John"}, sigma);
        const TupleIdSet under2 = causes_under_ics(q2, d, {"John"}, sigma);
        const TupleIdSet plain2 = actual_causes(q2, d, {"John"});
        const bool ok = satisfies(d, sigma) && under == ids({"t1"}) && under2 == under && plain2 == under;
        return std::pair{ok, "Q " + format_ids(under) + ", rewritten " + format_ids(under2) +
                                 ", rewritten without constraints " + format_ids(plain2)};
    }));

    out.push_back(run("view update for John filtered by the inclusion dependency", [] {
        const Instance d = parse_instance(university_instance());
        const auto updates = abductive_view_deletions(parse_program(staff_program()), d, {"John"},
                                                      parse_constraints(university_constraints()));
        std::vector<TupleIdSet> admissible, rejected;
        for (const auto& u : updates)
            (u.admissible ? admissible : rejected).push_back(u.deleted);
        const bool ok = admissible == std::vector{ids({"t1"})} && rejected == std::vector{ids({"t4", "t8"})};
        return std::pair{ok, "admissible " + render(admissible) + ", rejected " + render(rejected)};
    }));

    return out;
}

} // namespace qacause::golden
