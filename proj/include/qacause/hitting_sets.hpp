#pragma once

#include "qacause/bound_query.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qacause {

/// All subset-minimal transversals of `family` over positions [0, universe),
/// computed with Berge's incremental algorithm. The empty family has the single
/// transversal {}; a family containing the empty set has none. Results are
/// ordered by size, then positions.
std::vector<FactSet> minimal_hitting_sets(std::span<const FactSet> family, std::size_t universe);

/// Keeps the subset-minimal members of `sets`, dropping duplicates. Ordered by size, then positions.
std::vector<FactSet> minimize(std::vector<FactSet> sets);

} // namespace qacause
