#include "qacause/causality.hpp"

#include "qacause/error.hpp"
#include "qacause/hitting_sets.hpp"

#include <algorithm>

namespace qacause {

void sort_lexicographically(std::vector<TupleIdSet>& family) { std::sort(family.begin(), family.end()); }

void sort_by_size(std::vector<TupleIdSet>& family) {
    std::sort(family.begin(), family.end(), [](const TupleIdSet& a, const TupleIdSet& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
}

CauseAnalysis::CauseAnalysis(const Program& program, const Instance& instance, Tuple answer)
    : query_(program, instance), answer_(std::move(answer)) {
    if (answer_.size() != program.answer_arity())
        throw Error(ErrorCode::ArityMismatch, "answer " + format_tuple(answer_) + " does not match arity " +
                                                  std::to_string(program.answer_arity()));
    if (!query_.holds(query_.all_facts(), answer_))
        throw Error(ErrorCode::NotAnAnswer, format_tuple(answer_) + " is not an answer");
    const GroundAtom goal{program.answer_predicate(), answer_};
    supports_ = minimal_support_sets(query_, query_.exogenous_facts(), query_.endogenous_facts(),
                                     std::span(&goal, 1));
    transversals_ = minimal_hitting_sets(supports_, query_.fact_count());
}

TupleIdSet CauseAnalysis::actual_causes() const {
    FactSet u = query_.empty_set();
    for (const auto& h : transversals_)
        u |= h;
    return query_.to_ids(u);
}

TupleIdSet CauseAnalysis::counterfactual_causes() const {
    FactSet u = query_.empty_set();
    for (const auto& h : transversals_)
        if (h.count() == 1)
            u |= h;
    return query_.to_ids(u);
}

std::size_t CauseAnalysis::endogenous_index(const TupleId& tau) const {
    auto idx = query_.instance().index_of(tau);
    if (!idx)
        throw Error(ErrorCode::UnknownTupleId, "no tuple with id " + tau.str());
    if (!query_.instance().facts()[*idx].endogenous)
        throw Error(ErrorCode::ExogenousTuple, tau.str() + " is exogenous");
    return *idx;
}

ContingencyFamily CauseAnalysis::contingencies(const TupleId& tau) const {
    const std::size_t i = endogenous_index(tau);
    ContingencyFamily out{tau, {}};
    for (const auto& h : transversals_) {
        if (!h.test(i))
            continue;
        FactSet gamma = h;
        gamma.reset(i);
        out.sets.push_back(query_.to_ids(gamma));
    }
    sort_lexicographically(out.sets);
    return out;
}

Responsibility CauseAnalysis::responsibility(const TupleId& tau) const {
    const std::size_t i = endogenous_index(tau);
    // transversals are ordered by size, so the first hit is a smallest one
    for (const auto& h : transversals_)
        if (h.test(i))
            return Responsibility::from_contingency_size(h.count() - 1);
    return Responsibility::none();
}

CausalityReport CauseAnalysis::report() const {
    CausalityReport out{answer_, {}};
    for (const auto& id : actual_causes()) {
        CauseEntry e{id, false, contingencies(id), responsibility(id)};
        e.counterfactual = e.responsibility.is_counterfactual();
        out.entries.emplace(id, std::move(e));
    }
    return out;
}

TupleIdSet counterfactual_causes(const Program& program, const Instance& instance, const Tuple& answer) {
    return CauseAnalysis(program, instance, answer).counterfactual_causes();
}

TupleIdSet actual_causes(const Program& program, const Instance& instance, const Tuple& answer) {
    return CauseAnalysis(program, instance, answer).actual_causes();
}

ContingencyFamily minimal_contingencies(const Program& program, const Instance& instance,
                                        const Tuple& answer, const TupleId& tau) {
    return CauseAnalysis(program, instance, answer).contingencies(tau);
}

Responsibility responsibility(const Program& program, const Instance& instance, const Tuple& answer,
                              const TupleId& tau) {
    return CauseAnalysis(program, instance, answer).responsibility(tau);
}

CausalityReport causality_report(const Program& program, const Instance& instance, const Tuple& answer) {
    return CauseAnalysis(program, instance, answer).report();
}

namespace {

// Responsibility of tau for a Boolean query, zero when the query is false or tau exogenous.
Responsibility boolean_responsibility(const Program& program, const Instance& instance, const TupleId& tau) {
    if (!program.is_boolean())
        throw Error(ErrorCode::NonBooleanProgram, "decision problems need a Boolean query; got arity " +
                                                      std::to_string(program.answer_arity()));
    const Fact& f = instance.fact(tau);
    if (!f.endogenous || !holds(program, instance, {}))
        return Responsibility::none();
    return CauseAnalysis(program, instance, {}).responsibility(tau);
}

} // namespace

bool decide_cdp(const Program& program, const Instance& instance, const TupleId& tau) {
    return !boolean_responsibility(program, instance, tau).is_zero();
}

bool decide_rdp(const Program& program, const Instance& instance, const TupleId& tau, const Rational& v) {
    return boolean_responsibility(program, instance, tau).value() > v;
}

bool decide_cfdp(const Program& program, const Instance& instance, const TupleId& tau) {
    return boolean_responsibility(program, instance, tau).is_counterfactual();
}

bool decide_cdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau) {
    return decide_cdp(boolean_specialization(program, answer), instance, tau);
}

bool decide_rdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau,
                const Rational& v) {
    return decide_rdp(boolean_specialization(program, answer), instance, tau, v);
}

bool decide_cfdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau) {
    return decide_cfdp(boolean_specialization(program, answer), instance, tau);
}

} // namespace qacause
