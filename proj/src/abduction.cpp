#include "qacause/abduction.hpp"

#include "qacause/bound_query.hpp"
#include "qacause/error.hpp"

#include <algorithm>

namespace qacause {

namespace {

struct Combined {
    Instance instance;
    std::size_t extensional_count;
};

Schema schema_for(const std::vector<Fact>& e, const std::vector<Fact>& hyp) {
    Schema schema;
    for (const auto* side : {&e, &hyp}) {
        for (const Fact& f : *side) {
            try {
                schema.declare(f.predicate, f.args.size());
            } catch (const Error&) {
                throw Error(ErrorCode::SchemaMismatch, "predicate " + f.predicate + " used with several arities");
            }
        }
    }
    return schema;
}

Combined combine(const AbductionProblem& ap) {
    std::vector<FactEntry> entries;
    for (std::size_t i = 0; i < ap.extensional.size(); ++i) {
        const Fact& f = ap.extensional[i];
        entries.push_back({f.predicate, f.args, false, TupleId("e" + std::to_string(i + 1))});
    }
    for (std::size_t i = 0; i < ap.hypotheses.size(); ++i) {
        const Fact& f = ap.hypotheses[i];
        entries.push_back({f.predicate, f.args, true, TupleId("h" + std::to_string(i + 1))});
    }
    return {make_instance(schema_for(ap.extensional, ap.hypotheses), entries), ap.extensional.size()};
}

std::vector<Fact> dedupe(std::vector<Fact> facts) {
    std::vector<Fact> out;
    std::set<std::pair<std::string, Tuple>> seen;
    for (auto& f : facts)
        if (seen.emplace(f.predicate, f.args).second)
            out.push_back(std::move(f));
    return out;
}

std::size_t hypothesis_index(const AbductionProblem& ap, const GroundAtom& h) {
    for (std::size_t i = 0; i < ap.hypotheses.size(); ++i)
        if (ap.hypotheses[i].predicate == h.predicate && ap.hypotheses[i].args == h.args)
            return i;
    throw Error(ErrorCode::InvalidArgument, h.to_string() + " is not a hypothesis");
}

} // namespace

AbductionProblem make_abduction_problem(Program program, std::vector<Fact> extensional,
                                        std::vector<Fact> hypotheses, std::vector<GroundAtom> observation) {
    extensional = dedupe(std::move(extensional));
    hypotheses = dedupe(std::move(hypotheses));
    std::set<std::pair<std::string, Tuple>> e_content;
    for (const auto& f : extensional)
        e_content.emplace(f.predicate, f.args);
    for (const auto& f : hypotheses)
        if (e_content.contains({f.predicate, f.args}))
            throw Error(ErrorCode::OverlappingHypotheses, f.to_string() + " is both extensional and a hypothesis");

    const Schema schema = schema_for(extensional, hypotheses);
    for (const auto& g : observation) {
        auto arity = program.arity(g.predicate);
        if (!arity)
            arity = schema.arity(g.predicate);
        if (!arity)
            throw Error(ErrorCode::SchemaMismatch, "observation predicate " + g.predicate + " is unknown");
        if (*arity != g.args.size())
            throw Error(ErrorCode::SchemaMismatch, "observation " + g.to_string() + " does not match arity " +
                                                       std::to_string(*arity));
    }
    return AbductionProblem{std::move(program), std::move(extensional), std::move(hypotheses),
                            std::move(observation)};
}

TupleIdSet Diagnosis::ids() const {
    TupleIdSet out;
    for (const auto& f : delta)
        out.insert(f.id);
    return out;
}

std::vector<Diagnosis> solve(const AbductionProblem& ap) {
    const Combined c = combine(ap);
    const BoundQuery q(ap.program, c.instance);
    std::vector<Diagnosis> out;
    for (const FactSet& s : minimal_support_sets(q, q.exogenous_facts(), q.endogenous_facts(), ap.observation)) {
        Diagnosis d;
        for (std::size_t i : positions(s))
            d.delta.push_back(ap.hypotheses[i - c.extensional_count]);
        out.push_back(std::move(d));
    }
    std::stable_sort(out.begin(), out.end(), [](const Diagnosis& a, const Diagnosis& b) {
        if (a.delta.size() != b.delta.size())
            return a.delta.size() < b.delta.size();
        return a.ids() < b.ids();
    });
    return out;
}

std::vector<Fact> relevant(const AbductionProblem& ap) {
    std::vector<bool> in(ap.hypotheses.size(), false);
    for (const auto& d : solve(ap))
        for (const auto& f : d.delta)
            in[hypothesis_index(ap, {f.predicate, f.args})] = true;
    std::vector<Fact> out;
    for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i])
            out.push_back(ap.hypotheses[i]);
    return out;
}

std::vector<Fact> necessary(const AbductionProblem& ap) {
    const auto sol = solve(ap);
    if (sol.empty())
        throw Error(ErrorCode::NoDiagnosis, "the observation has no abductive diagnosis");
    std::vector<std::size_t> hits(ap.hypotheses.size(), 0);
    for (const auto& d : sol)
        for (const auto& f : d.delta)
            ++hits[hypothesis_index(ap, {f.predicate, f.args})];
    std::vector<Fact> out;
    for (std::size_t i = 0; i < hits.size(); ++i)
        if (hits[i] == sol.size())
            out.push_back(ap.hypotheses[i]);
    return out;
}

bool decide_relevance(const AbductionProblem& ap, const GroundAtom& h) {
    const std::size_t i = hypothesis_index(ap, h);
    const auto rel = relevant(ap);
    return std::any_of(rel.begin(), rel.end(), [&](const Fact& f) { return f.id == ap.hypotheses[i].id &&
                                                                            f.args == h.args &&
                                                                            f.predicate == h.predicate; });
}

bool decide_necessity(const AbductionProblem& ap, const GroundAtom& h) {
    hypothesis_index(ap, h);
    const auto sol = solve(ap);
    if (sol.empty())
        return false;
    return std::all_of(sol.begin(), sol.end(), [&](const Diagnosis& d) {
        return std::any_of(d.delta.begin(), d.delta.end(),
                           [&](const Fact& f) { return f.predicate == h.predicate && f.args == h.args; });
    });
}

AbductionProblem causal_abduction_problem(const Program& program, const Instance& instance) {
    if (!program.is_boolean())
        throw Error(ErrorCode::NonBooleanProgram, "the causal abduction problem needs a Boolean query");
    if (!holds(program, instance, {}))
        throw Error(ErrorCode::NotAnAnswer, "the Boolean query is false on the instance");
    std::vector<Fact> e, hyp;
    for (const Fact& f : instance.facts())
        (f.endogenous ? hyp : e).push_back(f);
    return make_abduction_problem(program, std::move(e), std::move(hyp),
                                  {GroundAtom{program.answer_predicate(), {}}});
}

AbductiveCauses causes_via_abduction(const Program& program, const Instance& instance) {
    const AbductionProblem ap = causal_abduction_problem(program, instance);
    AbductiveCauses out;
    for (const auto& f : relevant(ap))
        out.actual.insert(f.id);
    for (const auto& f : necessary(ap))
        out.counterfactual.insert(f.id);
    return out;
}

} // namespace qacause
