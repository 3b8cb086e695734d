#include "qacause/hitting_sets.hpp"

#include <algorithm>

namespace qacause {

std::vector<FactSet> minimize(std::vector<FactSet> sets) {
    std::sort(sets.begin(), sets.end(), size_then_positions_less);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<FactSet> out;
    for (auto& s : sets) {
        const bool dominated =
            std::any_of(out.begin(), out.end(), [&](const FactSet& m) { return m.is_subset_of(s); });
        if (!dominated)
            out.push_back(std::move(s));
    }
    return out;
}

std::vector<FactSet> minimal_hitting_sets(std::span<const FactSet> family, std::size_t universe) {
    std::vector<FactSet> current{FactSet(universe)};
    for (const FactSet& edge : minimize({family.begin(), family.end()})) {
        if (edge.none())
            return {};
        std::vector<FactSet> kept, extended;
        for (const FactSet& h : current) {
            if (h.intersects(edge))
                kept.push_back(h);
        }
        for (const FactSet& h : current) {
            if (h.intersects(edge))
                continue;
            for (auto e = edge.find_first(); e != FactSet::npos; e = edge.find_next(e)) {
                FactSet c = h;
                c.set(e);
                const bool dominated = std::any_of(kept.begin(), kept.end(),
                                                   [&](const FactSet& k) { return k.is_subset_of(c); });
                if (!dominated)
                    extended.push_back(std::move(c));
            }
        }
        extended = minimize(std::move(extended));
        kept.insert(kept.end(), std::make_move_iterator(extended.begin()),
                    std::make_move_iterator(extended.end()));
        current = std::move(kept);
    }
    std::sort(current.begin(), current.end(), size_then_positions_less);
    return current;
}

} // namespace qacause
