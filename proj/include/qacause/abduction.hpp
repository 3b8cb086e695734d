#pragma once

// Datalog abduction ⟨Π, E, Hyp, Obs⟩ and the causal abduction problem whose
// relevant hypotheses are the actual causes of a Boolean query.

#include "qacause/datalog.hpp"
#include "qacause/relational.hpp"

#include <vector>

namespace qacause {

struct AbductionProblem {
    Program program;
    std::vector<Fact> extensional;
    std::vector<Fact> hypotheses;
    /// Conjunction of ground atoms.
    std::vector<GroundAtom> observation;
};

/// Checks Hyp ∩ E = ∅ (OverlappingHypotheses), consistent arities across E, Hyp,
/// the program and the observation (SchemaMismatch). Duplicate facts collapse.
AbductionProblem make_abduction_problem(Program program, std::vector<Fact> extensional,
                                        std::vector<Fact> hypotheses, std::vector<GroundAtom> observation);

struct Diagnosis {
    /// Subset of the hypotheses, in hypothesis order.
    std::vector<Fact> delta;

    TupleIdSet ids() const;
};

/// Sol(AP): all subset-minimal Δ ⊆ Hyp with Π ∪ E ∪ Δ entailing Obs, ordered
/// by size then ids. Empty when even all hypotheses do not suffice.
std::vector<Diagnosis> solve(const AbductionProblem& ap);

/// Rel(AP), in hypothesis order.
std::vector<Fact> relevant(const AbductionProblem& ap);
/// Ness(AP), in hypothesis order. Throws NoDiagnosis when Sol(AP) is empty.
std::vector<Fact> necessary(const AbductionProblem& ap);

/// RLDP / NDP membership for one hypothesis. Throws InvalidArgument if h ∉ Hyp.
bool decide_relevance(const AbductionProblem& ap, const GroundAtom& h);
bool decide_necessity(const AbductionProblem& ap, const GroundAtom& h);

/// ⟨Π, D^x, D^n, ans⟩. Throws NonBooleanProgram, NotAnAnswer.
AbductionProblem causal_abduction_problem(const Program& program, const Instance& instance);

struct AbductiveCauses {
    TupleIdSet actual;
    TupleIdSet counterfactual;
};

/// Actual causes as Rel(AP^c) and counterfactual causes as Ness(AP^c).
AbductiveCauses causes_via_abduction(const Program& program, const Instance& instance);

} // namespace qacause
