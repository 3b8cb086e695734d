#pragma once

// Deleting one answer from a query view by deleting source facts: either with
// minimal source side effect, or without removing any other view tuple.

#include "qacause/datalog.hpp"
#include "qacause/relational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qacause {

/// Which facts a deletion may touch. EndogenousOnly matches the range of
/// contingency sets; AllFacts treats the whole instance as deletable.
enum class DeletionScope { AllFacts, EndogenousOnly };

/// All subset-minimal Λ with ā ∉ Q(D ∖ Λ), sorted by size then ids. Throws NotAnAnswer.
std::vector<TupleIdSet> min_source_side_effect(const Program& program, const Instance& instance,
                                               const Tuple& answer,
                                               DeletionScope scope = DeletionScope::AllFacts);

struct SideEffectFreeDeletion {
    TupleIdSet deleted;
    std::size_t cardinality = 0;
};

/// A minimum-size Λ with Q(D ∖ Λ) = Q(D) ∖ {ā}; among those of that size the
/// lexicographically least id set. Empty when no such Λ exists. Throws NotAnAnswer.
std::optional<SideEffectFreeDeletion> view_side_effect_free(const Program& program, const Instance& instance,
                                                            const Tuple& answer,
                                                            DeletionScope scope = DeletionScope::AllFacts);

/// Every subset-minimal Λ with Q(D ∖ Λ) = Q(D) ∖ {ā}, sorted by size then ids.
std::vector<TupleIdSet> all_view_side_effect_free(const Program& program, const Instance& instance,
                                                  const Tuple& answer,
                                                  DeletionScope scope = DeletionScope::AllFacts);

/// Some D′ ⊆ D has Q(D′) = Q(D) ∖ {ā}.
bool decide_vsefp(const Program& program, const Instance& instance, const Tuple& answer,
                  DeletionScope scope = DeletionScope::AllFacts);

} // namespace qacause
