#pragma once

// View-conditioned causality: causes of one answer ā whose removal keeps
// every other answer V = Q(D) ∖ {ā} in place.
//
// τ is a vc-cause iff some minimal transversal H of the answer's endogenous
// supports contains τ and Q(D ∖ H) ⊇ V: any witnessing Λ = Γ ∪ {τ} contains
// such an H, and preservation of V is inherited by subsets.

#include "qacause/causality.hpp"

#include <map>
#include <set>

namespace qacause {

struct ViewCondition {
    /// Q(D) without the distinguished answer.
    std::set<Tuple> fixed_answers;
};

/// Loose: at D∖Γ only τ's counterfactual effect and Q((D∖Γ)∖{τ}) = V are
/// required. Strict: Q(D∖Γ) = V ∪ {ā} is required as well.
enum class VcMode { Loose, Strict };

struct VcEntry {
    TupleId id;
    /// vcc-cause: removing τ alone loses ā and keeps V.
    bool counterfactual = false;
    /// Minimal Γ making τ a vcc-cause in D ∖ Γ, sorted lexicographically.
    std::vector<TupleIdSet> contingencies;
    Responsibility responsibility;
};

struct VcReport {
    Tuple answer;
    ViewCondition view;
    VcMode mode = VcMode::Loose;
    std::map<TupleId, VcEntry> entries;
};

class VcAnalysis {
public:
    /// Throws NotAnAnswer, ArityMismatch, SchemaMismatch.
    VcAnalysis(const Program& program, const Instance& instance, Tuple answer, VcMode mode = VcMode::Loose);

    const CauseAnalysis& causes() const noexcept { return causes_; }
    const ViewCondition& view() const noexcept { return view_; }

    /// Minimal transversals H with Q(D ∖ H) = V (and the mode's extra check).
    const std::vector<FactSet>& witnesses() const noexcept { return witnesses_; }

    TupleIdSet vcc_causes() const;
    TupleIdSet vc_causes() const;
    /// Throws UnknownTupleId, ExogenousTuple.
    Responsibility responsibility(const TupleId& tau) const;
    std::vector<TupleIdSet> contingencies(const TupleId& tau) const;
    VcReport report() const;

private:
    bool preserves_view(const FactSet& removed) const;

    CauseAnalysis causes_;
    VcMode mode_;
    ViewCondition view_;
    std::vector<FactSet> witnesses_;
};

TupleIdSet vcc_causes(const Program& program, const Instance& instance, const Tuple& answer);
TupleIdSet vc_causes(const Program& program, const Instance& instance, const Tuple& answer,
                     VcMode mode = VcMode::Loose);
Responsibility vc_responsibility(const Program& program, const Instance& instance, const Tuple& answer,
                                 const TupleId& tau, VcMode mode = VcMode::Loose);
VcReport vc_report(const Program& program, const Instance& instance, const Tuple& answer,
                   VcMode mode = VcMode::Loose);

/// VCEP: the answer has at least one vc-cause.
bool vc_cause_exists(const Program& program, const Instance& instance, const Tuple& answer,
                     VcMode mode = VcMode::Loose);
/// VCDP: tau is a vc-cause. False for exogenous tau.
bool decide_vcdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau,
                 VcMode mode = VcMode::Loose);
/// VRDP: vc-responsibility of tau strictly greater than v.
bool decide_vrdp(const Program& program, const Instance& instance, const Tuple& answer, const TupleId& tau,
                 const Rational& v, VcMode mode = VcMode::Loose);

} // namespace qacause
