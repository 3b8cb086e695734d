#pragma once

// A program compiled against one instance. Sub-instances are passed as
// FactSet masks over the instance's fact positions, so the causality
// machinery can evaluate thousands of interventions without copying.

#include "qacause/datalog.hpp"
#include "qacause/relational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace qacause {

/// Bit i set means fact i of the bound instance is present.
using FactSet = boost::dynamic_bitset<>;

/// Ascending positions of the set bits.
std::vector<std::size_t> positions(const FactSet& set);

class BoundQuery {
public:
    /// Throws SchemaMismatch if the instance disagrees with the program on an
    /// arity, or stores facts for a predicate the program defines.
    BoundQuery(const Program& program, const Instance& instance);

    const Program& program() const;
    const Instance& instance() const;
    std::size_t fact_count() const;

    FactSet empty_set() const;
    FactSet all_facts() const;
    FactSet endogenous_facts() const;
    FactSet exogenous_facts() const;
    FactSet singleton(std::size_t fact) const;

    /// Throws UnknownTupleId.
    FactSet to_fact_set(const TupleIdSet& ids) const;
    TupleIdSet to_ids(const FactSet& set) const;

    AnswerSet answers(const FactSet& present) const;
    bool holds(const FactSet& present, const Tuple& answer) const;
    /// All goal atoms belong to the minimal model of the program over `present`.
    bool entails(const FactSet& present, std::span<const GroundAtom> goal) const;

    /// Facts of `present` occurring in some ground rule instance that
    /// contributes to deriving a goal atom. Every minimal support lies inside.
    FactSet relevant_facts(const FactSet& present, std::span<const GroundAtom> goal) const;

    /// Number of fixpoint evaluations run so far (shared across copies).
    std::size_t evaluation_count() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Subset-minimal S ⊆ candidates with base ∪ S entailing the goal, ordered
/// by size then positions. Enumerates candidate subsets by increasing
/// cardinality, skipping supersets of supports already found, and stops once
/// no complement of a minimal transversal of the found supports entails the goal.
std::vector<FactSet> minimal_support_sets(const BoundQuery& query, const FactSet& base,
                                          const FactSet& candidates, std::span<const GroundAtom> goal);

/// Orders sets by size, then by their ascending position lists.
bool size_then_positions_less(const FactSet& a, const FactSet& b);

} // namespace qacause
