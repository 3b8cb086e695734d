#pragma once

// Counterfactual and actual causes for query answers, their minimal
// contingency sets and degrees of responsibility.
//
// Everything is derived from one enumeration: the minimal sets Δ of
// endogenous facts that, together with all exogenous facts, still produce
// the answer. A set Λ of endogenous facts removes the answer exactly when it
// meets every such Δ, so the minimal transversals H of that family are the
// minimal removals, and Γ ∈ Cont(τ) iff Γ ∪ {τ} is one of them with τ ∉ Γ.

#include "qacause/bound_query.hpp"
#include "qacause/datalog.hpp"
#include "qacause/relational.hpp"
#include "qacause/responsibility.hpp"

#include <map>
#include <vector>

namespace qacause {

struct ContingencyFamily {
    TupleId cause;
    /// Minimal contingency sets, sorted lexicographically. Empty when `cause` is not a cause.
    std::vector<TupleIdSet> sets;
};

struct CauseEntry {
    TupleId id;
    bool counterfactual = false;
    ContingencyFamily contingencies;
    Responsibility responsibility;
};

struct CausalityReport {
    Tuple answer;
    /// Keyed by the actual causes of `answer`.
    std::map<TupleId, CauseEntry> entries;
};

class CauseAnalysis {
public:
    /// Throws NotAnAnswer, ArityMismatch, SchemaMismatch.
    CauseAnalysis(const Program& program, const Instance& instance, Tuple answer);

    const BoundQuery& query() const noexcept { return query_; }
    const Tuple& answer() const noexcept { return answer_; }

    /// Minimal Δ ⊆ D^n with D^x ∪ Δ producing the answer.
    const std::vector<FactSet>& supports() const noexcept { return supports_; }
    /// Minimal Λ ⊆ D^n whose removal loses the answer.
    const std::vector<FactSet>& transversals() const noexcept { return transversals_; }

    TupleIdSet actual_causes() const;
    TupleIdSet counterfactual_causes() const;
    /// Throws UnknownTupleId, ExogenousTuple.
    ContingencyFamily contingencies(const TupleId& tau) const;
    Responsibility responsibility(const TupleId& tau) const;
    CausalityReport report() const;

private:
    std::size_t endogenous_index(const TupleId& tau) const;

    BoundQuery query_;
    Tuple answer_;
    std::vector<FactSet> supports_;
    std::vector<FactSet> transversals_;
};

TupleIdSet counterfactual_causes(const Program& program, const Instance& instance, const Tuple& answer);
TupleIdSet actual_causes(const Program& program, const Instance& instance, const Tuple& answer);
ContingencyFamily minimal_contingencies(const Program& program, const Instance& instance,
                                        const Tuple& answer, const TupleId& tau);
Responsibility responsibility(const Program& program, const Instance& instance, const Tuple& answer,
                              const TupleId& tau);
CausalityReport causality_report(const Program& program, const Instance& instance, const Tuple& answer);

// Decision procedures for Boolean queries. When the query is false on the
// instance or tau is exogenous, the tuple is not a member. Throw
// NonBooleanProgram and UnknownTupleId.
bool decide_cdp(const Program& program, const Instance& instance, const TupleId& tau);
/// Responsibility of tau strictly greater than v.
bool decide_rdp(const Program& program, const Instance& instance, const TupleId& tau, const Rational& v);
/// Responsibility of tau equal to 1.
bool decide_cfdp(const Program& program, const Instance& instance, const TupleId& tau);

// The same problems for a fixed answer of a non-Boolean query, decided on its
// Boolean specialization.
bool decide_cdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau);
bool decide_rdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau,
                const Rational& v);
bool decide_cfdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau);

/// Sorts a family of id sets lexicographically.
void sort_lexicographically(std::vector<TupleIdSet>& family);
/// Sorts a family of id sets by size, then lexicographically.
void sort_by_size(std::vector<TupleIdSet>& family);

} // namespace qacause
