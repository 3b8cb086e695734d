#include "qacause/bound_query.hpp"

#include "qacause/error.hpp"
#include "qacause/hitting_sets.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace qacause {

std::vector<std::size_t> positions(const FactSet& set) {
    std::vector<std::size_t> out;
    out.reserve(set.count());
    for (auto i = set.find_first(); i != FactSet::npos; i = set.find_next(i))
        out.push_back(i);
    return out;
}

bool size_then_positions_less(const FactSet& a, const FactSet& b) {
    const auto ca = a.count(), cb = b.count();
    if (ca != cb)
        return ca < cb;
    return positions(a) < positions(b);
}

namespace {

using Value = std::uint32_t;
using Row = std::vector<Value>;
using RowHash = boost::hash<Row>;
constexpr Value kUnbound = std::numeric_limits<Value>::max();

struct Relation {
    std::vector<Row> rows;
    std::unordered_set<Row, RowHash> index;

    bool insert(const Row& row) {
        if (!index.insert(row).second)
            return false;
        rows.push_back(row);
        return true;
    }
    bool contains(const Row& row) const { return index.contains(row); }
    bool empty() const { return rows.empty(); }
};

using Model = std::vector<Relation>;

struct CTerm {
    bool variable;
    Value value; // variable slot or constant id
};

struct CAtom {
    std::size_t pred;
    std::vector<CTerm> terms;
};

struct CRule {
    CAtom head;
    std::vector<CAtom> body;
    std::vector<std::pair<CTerm, CTerm>> inequalities;
    std::size_t variables = 0;
    std::vector<std::size_t> intensional_positions;
};

} // namespace

struct BoundQuery::Impl {
    Program program;
    Instance instance;

    std::vector<std::string> constants;
    std::unordered_map<std::string, Value> constant_ids;
    std::unordered_map<std::string, std::size_t> pred_ids;
    std::vector<std::size_t> arities;
    std::vector<bool> intensional;
    std::vector<CRule> rules;
    std::size_t answer_pred = 0;

    std::vector<std::size_t> fact_pred;
    std::vector<Row> fact_rows;
    std::vector<std::unordered_map<Row, std::size_t, RowHash>> fact_lookup;

    mutable std::atomic<std::size_t> evaluations{0};

    Impl(const Program& p, const Instance& i) : program(p), instance(i) {}

    Value intern(const std::string& c) {
        auto [it, inserted] = constant_ids.emplace(c, static_cast<Value>(constants.size()));
        if (inserted)
            constants.push_back(c);
        return it->second;
    }

    std::size_t predicate(const std::string& name, std::size_t arity, bool idb) {
        auto [it, inserted] = pred_ids.emplace(name, arities.size());
        if (inserted) {
            arities.push_back(arity);
            intensional.push_back(idb);
        }
        return it->second;
    }

    std::optional<std::pair<std::size_t, Row>> encode(const GroundAtom& g) const {
        auto it = pred_ids.find(g.predicate);
        if (it == pred_ids.end() || arities[it->second] != g.args.size())
            return std::nullopt;
        Row row;
        for (const auto& a : g.args) {
            auto c = constant_ids.find(a);
            if (c == constant_ids.end())
                return std::nullopt;
            row.push_back(c->second);
        }
        return std::pair{it->second, std::move(row)};
    }

    Model load(const FactSet& present) const {
        Model m(arities.size());
        for (auto i = present.find_first(); i != FactSet::npos; i = present.find_next(i))
            m[fact_pred[i]].insert(fact_rows[i]);
        return m;
    }

    // Enumerates matches of the rule body. The atom at `delta_pos` (if any) ranges
    // over `delta`, every other atom over `full`.
    template <class Emit>
    void join(const CRule& rule, std::size_t delta_pos, const Model& full, const Model* delta,
              std::vector<Value>& binding, Emit&& emit) const {
        std::vector<std::size_t> order;
        order.reserve(rule.body.size());
        if (delta_pos < rule.body.size())
            order.push_back(delta_pos);
        for (std::size_t k = 0; k < rule.body.size(); ++k)
            if (k != delta_pos)
                order.push_back(k);

        std::vector<Value> undo;
        std::function<void(std::size_t)> step = [&](std::size_t depth) {
            if (depth == order.size()) {
                for (const auto& [l, r] : rule.inequalities) {
                    const Value lv = l.variable ? binding[l.value] : l.value;
                    const Value rv = r.variable ? binding[r.value] : r.value;
                    if (lv == rv)
                        return;
                }
                emit(binding);
                return;
            }
            const std::size_t k = order[depth];
            const CAtom& atom = rule.body[k];
            const Relation& rel = (k == delta_pos) ? (*delta)[atom.pred] : full[atom.pred];
            for (const Row& row : rel.rows) {
                const std::size_t mark = undo.size();
                bool ok = true;
                for (std::size_t j = 0; j < atom.terms.size() && ok; ++j) {
                    const CTerm& t = atom.terms[j];
                    if (!t.variable) {
                        ok = row[j] == t.value;
                    } else if (binding[t.value] == kUnbound) {
                        binding[t.value] = row[j];
                        undo.push_back(t.value);
                    } else {
                        ok = binding[t.value] == row[j];
                    }
                }
                if (ok)
                    step(depth + 1);
                while (undo.size() > mark) {
                    binding[undo.back()] = kUnbound;
                    undo.pop_back();
                }
            }
        };
        step(0);
    }

    Row instantiate(const CAtom& atom, const std::vector<Value>& binding) const {
        Row row(atom.terms.size());
        for (std::size_t j = 0; j < atom.terms.size(); ++j)
            row[j] = atom.terms[j].variable ? binding[atom.terms[j].value] : atom.terms[j].value;
        return row;
    }

    // Semi-naive fixpoint. Stops early once `done` reports true.
    template <class Done>
    Model fixpoint(const FactSet& present, Done&& done) const {
        evaluations.fetch_add(1, std::memory_order_relaxed);
        Model full = load(present);
        if (done(full))
            return full;
        Model delta(arities.size());
        bool first_round = true;
        while (true) {
            Model next(arities.size());
            bool grew = false;
            for (const CRule& rule : rules) {
                std::vector<Value> binding(rule.variables, kUnbound);
                auto emit = [&](const std::vector<Value>& b) {
                    Row row = instantiate(rule.head, b);
                    if (!full[rule.head.pred].contains(row) && next[rule.head.pred].insert(row))
                        grew = true;
                };
                if (first_round) {
                    join(rule, rule.body.size(), full, nullptr, binding, emit);
                } else {
                    for (std::size_t k : rule.intensional_positions)
                        if (!delta[rule.body[k].pred].empty())
                            join(rule, k, full, &delta, binding, emit);
                }
            }
            first_round = false;
            if (!grew)
                break;
            for (std::size_t p = 0; p < next.size(); ++p)
                for (const Row& row : next[p].rows)
                    full[p].insert(row);
            delta = std::move(next);
            if (done(full))
                break;
        }
        return full;
    }
};

BoundQuery::BoundQuery(const Program& program, const Instance& instance)
    : impl_(std::make_shared<Impl>(program, instance)) {
    Impl& im = *impl_;
    for (const auto& [name, arity] : program.intensional()) {
        if (instance.schema().contains(name))
            throw Error(ErrorCode::SchemaMismatch,
                        "predicate " + name + " is defined by the program and stored in the instance");
        im.predicate(name, arity, true);
    }
    for (const auto& [name, arity] : program.extensional()) {
        auto declared = instance.schema().arity(name);
        if (declared && *declared != arity)
            throw Error(ErrorCode::SchemaMismatch, "program uses " + name + " with arity " +
                                                       std::to_string(arity) + ", instance declares " +
                                                       std::to_string(*declared));
        im.predicate(name, arity, false);
    }
    for (const auto& [name, arity] : instance.schema().predicates())
        im.predicate(name, arity, false);

    im.fact_lookup.resize(im.arities.size());
    for (std::size_t i = 0; i < instance.size(); ++i) {
        const Fact& f = instance.facts()[i];
        const std::size_t p = im.pred_ids.at(f.predicate);
        Row row;
        for (const auto& a : f.args)
            row.push_back(im.intern(a));
        im.fact_pred.push_back(p);
        im.fact_lookup[p].emplace(row, i);
        im.fact_rows.push_back(std::move(row));
    }

    for (const Rule& rule : program.rules()) {
        CRule cr;
        std::unordered_map<std::string, Value> slots;
        auto term = [&](const Term& t) {
            if (!t.is_variable())
                return CTerm{false, im.intern(t.text)};
            auto [it, inserted] = slots.emplace(t.text, static_cast<Value>(slots.size()));
            return CTerm{true, it->second};
        };
        for (const Atom& a : rule.body) {
            if (a.is_builtin())
                continue;
            CAtom ca{im.pred_ids.at(a.predicate), {}};
            for (const auto& t : a.terms)
                ca.terms.push_back(term(t));
            if (im.intensional[ca.pred])
                cr.intensional_positions.push_back(cr.body.size());
            cr.body.push_back(std::move(ca));
        }
        for (const Atom& a : rule.body)
            if (a.is_builtin())
                cr.inequalities.emplace_back(term(a.terms[0]), term(a.terms[1]));
        cr.head.pred = im.pred_ids.at(rule.head.predicate);
        for (const auto& t : rule.head.terms)
            cr.head.terms.push_back(term(t));
        cr.variables = slots.size();
        im.rules.push_back(std::move(cr));
    }
    im.answer_pred = im.pred_ids.at(program.answer_predicate());
}

const Program& BoundQuery::program() const { return impl_->program; }
const Instance& BoundQuery::instance() const { return impl_->instance; }
std::size_t BoundQuery::fact_count() const { return impl_->instance.size(); }

FactSet BoundQuery::empty_set() const { return FactSet(fact_count()); }

FactSet BoundQuery::all_facts() const {
    FactSet s(fact_count());
    s.set();
    return s;
}

FactSet BoundQuery::endogenous_facts() const {
    FactSet s(fact_count());
    for (std::size_t i = 0; i < fact_count(); ++i)
        s[i] = impl_->instance.facts()[i].endogenous;
    return s;
}

FactSet BoundQuery::exogenous_facts() const { return ~endogenous_facts(); }

FactSet BoundQuery::singleton(std::size_t fact) const {
    FactSet s(fact_count());
    s.set(fact);
    return s;
}

FactSet BoundQuery::to_fact_set(const TupleIdSet& ids) const {
    FactSet s(fact_count());
    for (const auto& id : ids) {
        auto idx = impl_->instance.index_of(id);
        if (!idx)
            throw Error(ErrorCode::UnknownTupleId, "no tuple with id " + id.str());
        s.set(*idx);
    }
    return s;
}

TupleIdSet BoundQuery::to_ids(const FactSet& set) const {
    TupleIdSet out;
    for (auto i = set.find_first(); i != FactSet::npos; i = set.find_next(i))
        out.insert(impl_->instance.facts()[i].id);
    return out;
}

AnswerSet BoundQuery::answers(const FactSet& present) const {
    const Model m = impl_->fixpoint(present, [](const Model&) { return false; });
    AnswerSet out;
    for (const Row& row : m[impl_->answer_pred].rows) {
        Tuple t;
        for (Value v : row)
            t.push_back(impl_->constants[v]);
        out.insert(std::move(t));
    }
    return out;
}

bool BoundQuery::holds(const FactSet& present, const Tuple& answer) const {
    const GroundAtom goal{impl_->program.answer_predicate(), answer};
    return entails(present, std::span(&goal, 1));
}

bool BoundQuery::entails(const FactSet& present, std::span<const GroundAtom> goal) const {
    std::vector<std::pair<std::size_t, Row>> encoded;
    for (const auto& g : goal) {
        auto e = impl_->encode(g);
        if (!e)
            return false;
        encoded.push_back(std::move(*e));
    }
    auto all_in = [&](const Model& m) {
        return std::all_of(encoded.begin(), encoded.end(),
                           [&](const auto& e) { return m[e.first].contains(e.second); });
    };
    return all_in(impl_->fixpoint(present, all_in));
}

FactSet BoundQuery::relevant_facts(const FactSet& present, std::span<const GroundAtom> goal) const {
    const Impl& im = *impl_;
    FactSet out = empty_set();
    const Model model = im.fixpoint(present, [](const Model&) { return false; });

    std::vector<std::unordered_set<Row, RowHash>> seen(im.arities.size());
    std::vector<std::pair<std::size_t, Row>> queue;
    for (const auto& g : goal) {
        auto e = im.encode(g);
        if (e && model[e->first].contains(e->second) && seen[e->first].insert(e->second).second)
            queue.push_back(std::move(*e));
    }
    while (!queue.empty()) {
        auto [pred, row] = std::move(queue.back());
        queue.pop_back();
        if (!im.intensional[pred]) {
            auto it = im.fact_lookup[pred].find(row);
            if (it != im.fact_lookup[pred].end() && present.test(it->second))
                out.set(it->second);
            continue;
        }
        for (const CRule& rule : im.rules) {
            if (rule.head.pred != pred)
                continue;
            std::vector<Value> binding(rule.variables, kUnbound);
            bool unifies = true;
            for (std::size_t j = 0; j < row.size() && unifies; ++j) {
                const CTerm& t = rule.head.terms[j];
                if (!t.variable)
                    unifies = t.value == row[j];
                else if (binding[t.value] == kUnbound)
                    binding[t.value] = row[j];
                else
                    unifies = binding[t.value] == row[j];
            }
            if (!unifies)
                continue;
            im.join(rule, rule.body.size(), model, nullptr, binding, [&](const std::vector<Value>& b) {
                for (const CAtom& a : rule.body) {
                    Row r = im.instantiate(a, b);
                    if (seen[a.pred].insert(r).second)
                        queue.emplace_back(a.pred, std::move(r));
                }
            });
        }
    }
    return out;
}

std::size_t BoundQuery::evaluation_count() const {
    return impl_->evaluations.load(std::memory_order_relaxed);
}

namespace {

// Advances `idx` (strictly increasing, values < n) to the next k-combination.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<FactSet> minimal_support_sets(const BoundQuery& query, const FactSet& base,
                                          const FactSet& candidates, std::span<const GroundAtom> goal) {
    const FactSet universe = base | candidates;
    if (!query.entails(universe, goal))
        return {};
    if (query.entails(base, goal))
        return {query.empty_set()};

    const FactSet pool = query.relevant_facts(universe, goal) & candidates & ~base;
    const std::vector<std::size_t> pool_positions = positions(pool);
    const std::size_t n = pool_positions.size();

    std::vector<FactSet> found;
    for (std::size_t k = 1; k <= n; ++k) {
        bool any_candidate = false;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        const std::size_t found_before = found.size();
        do {
            FactSet s = query.empty_set();
            for (std::size_t i : idx)
                s.set(pool_positions[i]);
            const bool blocked = std::any_of(found.begin(), found.begin() + found_before,
                                             [&](const FactSet& f) { return f.is_subset_of(s); });
            if (blocked)
                continue;
            any_candidate = true;
            if (!query.entails(base | s, goal))
                continue;
            bool minimal = true;
            for (auto i = s.find_first(); i != FactSet::npos && minimal; i = s.find_next(i)) {
                FactSet smaller = s;
                smaller.reset(i);
                minimal = !query.entails(base | smaller, goal);
            }
            if (minimal)
                found.push_back(std::move(s));
        } while (next_combination(idx, n));

        if (!any_candidate)
            break;
        if (!found.empty()) {
            bool more = false;
            for (const FactSet& t : minimal_hitting_sets(found, query.fact_count())) {
                if (query.entails(base | (pool - t), goal)) {
                    more = true;
                    break;
                }
            }
            if (!more)
                break;
        }
    }
    return found;
}

} // namespace qacause
