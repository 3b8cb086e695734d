#include "qacause/delete_propagation.hpp"

#include "qacause/bound_query.hpp"
#include "qacause/error.hpp"
#include "qacause/hitting_sets.hpp"

#include <algorithm>

namespace qacause {

namespace {

struct Deletions {
    BoundQuery query;
    std::vector<FactSet> minimal;
};

// Minimal deletions that remove the answer: the minimal transversals of its
// supports restricted to the deletable facts.
Deletions answer_deletions(const Program& program, const Instance& instance, const Tuple& answer,
                           DeletionScope scope) {
    if (answer.size() != program.answer_arity())
        throw Error(ErrorCode::ArityMismatch, "answer " + format_tuple(answer) + " does not match arity " +
                                                  std::to_string(program.answer_arity()));
    BoundQuery q(program, instance);
    if (!q.holds(q.all_facts(), answer))
        throw Error(ErrorCode::NotAnAnswer, format_tuple(answer) + " is not an answer");
    const GroundAtom goal{program.answer_predicate(), answer};
    const bool all = scope == DeletionScope::AllFacts;
    const auto supports = minimal_support_sets(q, all ? q.empty_set() : q.exogenous_facts(),
                                               all ? q.all_facts() : q.endogenous_facts(), std::span(&goal, 1));
    auto minimal = minimal_hitting_sets(supports, q.fact_count());
    return {std::move(q), std::move(minimal)};
}

std::vector<TupleIdSet> sorted_ids(const BoundQuery& q, const std::vector<FactSet>& sets) {
    std::vector<TupleIdSet> out;
    for (const auto& s : sets)
        out.push_back(q.to_ids(s));
    std::sort(out.begin(), out.end(), [](const TupleIdSet& a, const TupleIdSet& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<FactSet> side_effect_free(const Deletions& d, const Tuple& answer) {
    const BoundQuery& q = d.query;
    AnswerSet view = q.answers(q.all_facts());
    view.erase(answer);
    // Any solution contains a minimal deletion that already removes ā, and
    // by monotonicity that smaller deletion keeps the view as well.
    std::vector<FactSet> out;
    for (const auto& h : d.minimal)
        if (q.answers(q.all_facts() - h) == view)
            out.push_back(h);
    return out;
}

} // namespace

std::vector<TupleIdSet> min_source_side_effect(const Program& program, const Instance& instance,
                                               const Tuple& answer, DeletionScope scope) {
    const Deletions d = answer_deletions(program, instance, answer, scope);
    return sorted_ids(d.query, d.minimal);
}

std::optional<SideEffectFreeDeletion> view_side_effect_free(const Program& program, const Instance& instance,
                                                            const Tuple& answer, DeletionScope scope) {
    const auto all = all_view_side_effect_free(program, instance, answer, scope);
    if (all.empty())
        return std::nullopt;
    return SideEffectFreeDeletion{all.front(), all.front().size()};
}

std::vector<TupleIdSet> all_view_side_effect_free(const Program& program, const Instance& instance,
                                                  const Tuple& answer, DeletionScope scope) {
    const Deletions d = answer_deletions(program, instance, answer, scope);
    return sorted_ids(d.query, side_effect_free(d, answer));
}

bool decide_vsefp(const Program& program, const Instance& instance, const Tuple& answer, DeletionScope scope) {
    const Deletions d = answer_deletions(program, instance, answer, scope);
    return !side_effect_free(d, answer).empty();
}

} // namespace qacause
