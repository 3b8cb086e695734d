#include "qacause/vc_causality.hpp"

#include "qacause/error.hpp"

namespace qacause {

VcAnalysis::VcAnalysis(const Program& program, const Instance& instance, Tuple answer, VcMode mode)
    : causes_(program, instance, std::move(answer)), mode_(mode) {
    const BoundQuery& q = causes_.query();
    view_.fixed_answers = q.answers(q.all_facts());
    view_.fixed_answers.erase(causes_.answer());
    for (const FactSet& h : causes_.transversals())
        if (preserves_view(h))
            witnesses_.push_back(h);
}

bool VcAnalysis::preserves_view(const FactSet& removed) const {
    const BoundQuery& q = causes_.query();
    return q.answers(q.all_facts() - removed) == view_.fixed_answers;
}

TupleIdSet VcAnalysis::vcc_causes() const {
    const BoundQuery& q = causes_.query();
    const FactSet endo = q.endogenous_facts();
    FactSet out = q.empty_set();
    for (auto i = endo.find_first(); i != FactSet::npos; i = endo.find_next(i))
        if (preserves_view(q.singleton(i)))
            out.set(i);
    return q.to_ids(out);
}

std::vector<TupleIdSet> VcAnalysis::contingencies(const TupleId& tau) const {
    // validates tau
    (void)causes_.contingencies(tau);
    const BoundQuery& q = causes_.query();
    const std::size_t i = *q.instance().index_of(tau);
    AnswerSet full_view = view_.fixed_answers;
    full_view.insert(causes_.answer());

    std::vector<TupleIdSet> out;
    for (const FactSet& h : witnesses_) {
        if (!h.test(i))
            continue;
        FactSet gamma = h;
        gamma.reset(i);
        if (mode_ == VcMode::Strict && q.answers(q.all_facts() - gamma) != full_view)
            continue;
        out.push_back(q.to_ids(gamma));
    }
    sort_lexicographically(out);
    return out;
}

TupleIdSet VcAnalysis::vc_causes() const {
    TupleIdSet out;
    const BoundQuery& q = causes_.query();
    FactSet candidates = q.empty_set();
    for (const FactSet& h : witnesses_)
        candidates |= h;
    for (const auto& id : q.to_ids(candidates))
        if (!contingencies(id).empty())
            out.insert(id);
    return out;
}

Responsibility VcAnalysis::responsibility(const TupleId& tau) const {
    const auto family = contingencies(tau);
    if (family.empty())
        return Responsibility::none();
    std::size_t smallest = family.front().size();
    for (const auto& g : family)
        smallest = std::min(smallest, g.size());
    return Responsibility::from_contingency_size(smallest);
}

VcReport VcAnalysis::report() const {
    VcReport out{causes_.answer(), view_, mode_, {}};
    const TupleIdSet vcc = vcc_causes();
    for (const auto& id : vc_causes()) {
        VcEntry e{id, vcc.contains(id), contingencies(id), responsibility(id)};
        out.entries.emplace(id, std::move(e));
    }
    return out;
}

TupleIdSet vcc_causes(const Program& program, const Instance& instance, const Tuple& answer) {
    return VcAnalysis(program, instance, answer).vcc_causes();
}

TupleIdSet vc_causes(const Program& program, const Instance& instance, const Tuple& answer, VcMode mode) {
    return VcAnalysis(program, instance, answer, mode).vc_causes();
}

Responsibility vc_responsibility(const Program& program, const Instance& instance, const Tuple& answer,
                                 const TupleId& tau, VcMode mode) {
    return VcAnalysis(program, instance, answer, mode).responsibility(tau);
}

VcReport vc_report(const Program& program, const Instance& instance, const Tuple& answer, VcMode mode) {
    return VcAnalysis(program, instance, answer, mode).report();
}

bool vc_cause_exists(const Program& program, const Instance& instance, const Tuple& answer, VcMode mode) {
    return !vc_causes(program, instance, answer, mode).empty();
}

bool decide_vcdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau,
                 VcMode mode) {
    if (!instance.fact(tau).endogenous)
        return false;
    return vc_causes(program, instance, answer, mode).contains(tau);
}

bool decide_vrdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau,
                 const Rational& v, VcMode mode) {
    if (!instance.fact(tau).endogenous)
        return false;
    return vc_responsibility(program, instance, answer, tau, mode).value() > v;
}

} // namespace qacause
