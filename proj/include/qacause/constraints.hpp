#pragma once

// Integrity constraints over instances (inclusion, functional and denial
// constraints, plus view inclusions V(x̄) → Q(x̄)) and causality under them.
// Positions are 0-based in memory and 1-based in constraint text.

#include "qacause/bound_query.hpp"
#include "qacause/causality.hpp"
#include "qacause/datalog.hpp"
#include "qacause/relational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qacause {

/// source[source_positions] ⊆ target[target_positions]
struct InclusionDependency {
    std::string source;
    std::vector<std::size_t> source_positions;
    std::string target;
    std::vector<std::size_t> target_positions;

    std::string to_string() const;
};

struct FunctionalDependency {
    std::string predicate;
    std::vector<std::size_t> determinant;
    /// Ignored for keys, whose dependent side is every other position.
    std::vector<std::size_t> dependent;
    bool key = false;

    std::vector<std::size_t> dependent_positions(std::size_t arity) const;
    bool is_key(std::size_t arity) const;
    std::string to_string() const;
};

/// Violated when the body has a match.
struct DenialConstraint {
    std::vector<Atom> body;

    std::string to_string() const;
};

/// Every fact of `view` is an answer of `query`.
struct ViewInclusion {
    std::string view;
    Program query;

    std::string to_string() const;
};

struct ConstraintSet {
    std::vector<InclusionDependency> inds;
    std::vector<FunctionalDependency> fds;
    std::vector<DenialConstraint> dcs;
    std::vector<ViewInclusion> views;

    bool empty() const noexcept { return inds.empty() && fds.empty() && dcs.empty() && views.empty(); }
    /// Only denial and functional constraints, which deletions never violate.
    bool deletion_safe() const noexcept { return inds.empty() && views.empty(); }
};

/// One statement per `;`:
///   IND Dep[1,2] -> Course[3,2];
///   FD Dep: 1 -> 2;
///   KEY Dep: 1;
///   DC <- P(x,y), P(x,z), y != z;
///   VIEW V: Ans(x) <- Dep(d,x), Course(c,x,d);
/// Throws SyntaxError, UnsafeRule, ArityConflict.
ConstraintSet parse_constraints(std::string_view text);
std::string format_constraints(const ConstraintSet& sigma);

/// Constraint set checked against sub-instances of one instance.
class BoundConstraints {
public:
    /// Throws SchemaMismatch on arity disagreements or out-of-range positions.
    BoundConstraints(const ConstraintSet& sigma, const Instance& instance);

    bool satisfied(const FactSet& present) const;
    /// Readable description of each violated constraint.
    std::vector<std::string> violations(const FactSet& present) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

bool satisfies(const Instance& instance, const ConstraintSet& sigma);
std::vector<std::string> violations(const Instance& instance, const ConstraintSet& sigma);

/// Exhaustive search over Γ ⊆ D^n for causes whose witnessing deletions keep
/// the instance consistent before and after removing the cause.
class IcCauseAnalysis {
public:
    /// Throws ArityMismatch, NotAnAnswer, InconsistentInstance, SchemaMismatch.
    IcCauseAnalysis(const Program& program, const Instance& instance, Tuple answer, const ConstraintSet& sigma);

    TupleIdSet causes() const;
    /// Subset-minimal witnessing Γ, sorted lexicographically. Throws UnknownTupleId, ExogenousTuple.
    ContingencyFamily contingencies(const TupleId& tau) const;
    Responsibility responsibility(const TupleId& tau) const;
    CausalityReport report() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

TupleIdSet causes_under_ics(const Program& program, const Instance& instance, const Tuple& answer,
                            const ConstraintSet& sigma);
ContingencyFamily contingencies_under_ics(const Program& program, const Instance& instance, const Tuple& answer,
                                          const TupleId& tau, const ConstraintSet& sigma);
Responsibility responsibility_under_ics(const Program& program, const Instance& instance, const Tuple& answer,
                                        const TupleId& tau, const ConstraintSet& sigma);

struct VcReduction {
    Schema schema;
    /// The original facts plus exogenous view facts for Q(D) ∖ {ā}.
    Instance instance;
    ConstraintSet sigma;
    std::string view_predicate;
};

/// Throws NotACQ, ArityMismatch, NotAnAnswer.
VcReduction vc_reduction(const Program& program, const Instance& instance, const Tuple& answer);

/// Every key position of every body atom holds a head variable. Keys are
/// taken from kappa; predicates without a declared key impose nothing.
/// Throws NotACQ, NotAKeySet.
bool is_key_preserving(const Program& program, const std::vector<FunctionalDependency>& kappa);

struct ViewDeletion {
    TupleIdSet deleted;
    /// D ∖ deleted satisfies the constraints.
    bool admissible = false;
};

/// Minimal deletions over all facts that remove the answer, each marked by
/// whether the remaining instance satisfies sigma. Sorted by size, then ids.
std::vector<ViewDeletion> abductive_view_deletions(const Program& program, const Instance& instance,
                                                   const Tuple& answer, const ConstraintSet& sigma);

} // namespace qacause
