#pragma once

// Reference implementations for the test suites. Evaluation is a naive
// fixpoint over string facts, and every causal notion is computed by
// enumerating all deletion sets and applying its definition literally.
// Nothing here calls the library's engine or solvers.

#include "qacause/constraints.hpp"
#include "qacause/datalog.hpp"
#include "qacause/relational.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using qacause::Fact;
using qacause::Program;
using qacause::Tuple;
using qacause::TupleIdSet;

using Model = std::set<std::pair<std::string, Tuple>>;

Model minimal_model(const Program& program, const std::vector<Fact>& facts);
std::set<Tuple> answers(const Program& program, const std::vector<Fact>& facts);

bool satisfies(const qacause::ConstraintSet& sigma, const std::vector<Fact>& facts);

// Floyd–Warshall transitive closure of a binary edge relation.
std::set<Tuple> reachability(const std::vector<Fact>& edges);

// Exhaustive view of one answer over the subsets of a chosen deletable part.
class Brute {
public:
    using Mask = std::uint32_t;

    Brute(const Program& program, const qacause::Instance& instance, Tuple answer, bool endogenous_only = true);

    std::size_t size() const { return deletable_.size(); }
    const std::set<Tuple>& answers_without(Mask removed) const;
    bool holds_without(Mask removed) const;
    TupleIdSet ids(Mask m) const;
    std::vector<Fact> remaining(Mask removed) const;

    TupleIdSet counterfactual_causes() const;
    TupleIdSet actual_causes() const;
    // Γ with D∖Γ ⊨ Q(ā), D∖(Γ∪{τ}) ⊭ Q(ā) and every Γ′ ⊊ Γ keeps D∖(Γ′∪{τ}) ⊨ Q(ā).
    std::vector<TupleIdSet> contingencies(const qacause::TupleId& tau) const;
    // Smallest |Γ| witnessing causation, if τ is a cause.
    std::optional<std::size_t> min_contingency(const qacause::TupleId& tau) const;

    TupleIdSet vcc_causes() const;
    TupleIdSet vc_causes(bool strict) const;
    std::vector<TupleIdSet> vc_contingencies(const qacause::TupleId& tau, bool strict) const;
    std::optional<std::size_t> vc_min_contingency(const qacause::TupleId& tau, bool strict) const;

    TupleIdSet causes_under(const qacause::ConstraintSet& sigma) const;
    std::vector<TupleIdSet> contingencies_under(const qacause::TupleId& tau, const qacause::ConstraintSet& sigma) const;

    // Subset-minimal Λ over the deletable part with ā ∉ Q(D∖Λ).
    std::vector<TupleIdSet> minimal_answer_deletions() const;
    // Minimum-size Λ with Q(D∖Λ) = Q(D)∖{ā}, lexicographically least among equals.
    std::optional<TupleIdSet> side_effect_free() const;

private:
    bool witnesses(Mask gamma, std::size_t k) const;
    bool vc_witnesses(Mask gamma, std::size_t k, bool strict) const;
    std::size_t slot(const qacause::TupleId& tau) const;

    const Program* program_;
    std::vector<Fact> kept_;
    std::vector<Fact> deletable_;
    Tuple answer_;
    std::set<Tuple> view_;
    mutable std::vector<std::optional<std::set<Tuple>>> cache_;
};

// Subset-minimal Δ ⊆ hyp with program ∪ e ∪ Δ entailing every observation atom.
std::vector<TupleIdSet> diagnoses(const Program& program, const std::vector<Fact>& e, const std::vector<Fact>& hyp,
                                  const std::vector<qacause::GroundAtom>& obs);

} // namespace oracle
