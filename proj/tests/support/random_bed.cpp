#include "random_bed.hpp"

#include "oracle.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace bed {

namespace {

using qacause::ConstraintSet;
using qacause::FactEntry;
using qacause::Instance;
using qacause::Program;
using qacause::Tuple;

struct Template {
    const char* name;
    const char* text;
    bool boolean;
    bool conjunctive;
};

const std::vector<Template>& templates() {
    static const std::vector<Template> all{
        {"join", "ans <- R(x,y), S(y).", true, true},
        {"chain", "ans <- R(x,y), R(y,z).", true, true},
        {"neq", "ans <- R(x,y), S(x), x != y.", true, true},
        {"union", "ans <- S(x), T(x).\nans <- R(x,x).", true, false},
        {"cycle", "P(x,y) <- R(x,y).\nP(x,y) <- P(x,z), R(z,y).\nans <- P(x,x).", true, false},
        {"path3", "ans <- R(x,y), U(y,z), T(z).", true, true},
        {"sel", "Ans(x) <- R(x,y), S(y).", false, true},
        {"two-hop", "Ans(x,y) <- R(x,z), R(z,y).", false, true},
        {"union-n", "Ans(x) <- S(x).\nAns(x) <- R(x,y), T(y).", false, false},
        {"reach", "P(x,y) <- R(x,y).\nP(x,y) <- P(x,z), R(z,y).\nAns(x,y) <- P(x,y).", false, false},
        {"neq-n", "Ans(y) <- R(x,y), S(x), x != y.", false, true},
        {"const", "Ans(x) <- U(x,y), T(y), R(y,\"a\").", false, true},
        {"mutual", "Ans(x) <- R(x,y), R(y,x).", false, true},
    };
    return all;
}

const std::vector<std::pair<std::string, std::size_t>>& relations() {
    static const std::vector<std::pair<std::string, std::size_t>> all{{"R", 2}, {"S", 1}, {"T", 1}, {"U", 2}};
    return all;
}

const std::vector<std::string>& domain() {
    static const std::vector<std::string> all{"a", "b", "c"};
    return all;
}

qacause::Schema schema() {
    qacause::Schema s;
    for (const auto& [name, arity] : relations())
        s.declare(name, arity);
    return s;
}

std::vector<FactEntry> possible_facts(const Program& program) {
    std::vector<FactEntry> out;
    for (const auto& [name, arity] : relations()) {
        if (!program.extensional().contains(name))
            continue;
        if (arity == 1)
            for (const auto& x : domain())
                out.push_back({name, {x}});
        else
            for (const auto& x : domain())
                for (const auto& y : domain())
                    out.push_back({name, {x, y}});
    }
    return out;
}

std::vector<const Template*> eligible(Kind kind) {
    std::vector<const Template*> out;
    for (const auto& t : templates())
        if (kind == Kind::Any || (kind == Kind::Boolean && t.boolean) || (kind == Kind::Conjunctive && t.conjunctive))
            out.push_back(&t);
    return out;
}

std::vector<FactEntry> random_facts(std::mt19937& rng, const Program& program, const Options& o,
                                    std::size_t max_facts) {
    auto pool = possible_facts(program);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_int_distribution<std::size_t> size((max_facts + 1) / 2, max_facts);
    pool.resize(std::min(pool.size(), size(rng)));
    std::bernoulli_distribution exo(0.25);
    for (auto& f : pool)
        f.endogenous = !(o.mixed_partition && exo(rng));
    return pool;
}

// Picks an answer with the reference evaluator, or returns false when there is none.
bool finish(Case& c, std::mt19937& rng) {
    const auto ans = oracle::answers(c.program, c.instance.facts());
    if (ans.empty())
        return false;
    std::vector<Tuple> list(ans.begin(), ans.end());
    c.answer = list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)];
    return true;
}

std::size_t endogenous_count(const std::vector<FactEntry>& facts) {
    return std::count_if(facts.begin(), facts.end(), [](const FactEntry& f) { return f.endogenous; });
}

} // namespace

std::vector<Case> cases(std::size_t count, std::uint32_t seed, Options options) {
    const auto pool = eligible(options.kind);
    std::vector<Case> out;
    for (std::uint32_t s = seed; out.size() < count; ++s) {
        std::mt19937 rng(s);
        const Template& t = *pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        auto program = qacause::parse_program(t.text);
        const auto facts = random_facts(rng, program, options, options.max_facts);
        Case c{std::string(t.name) + "#" + std::to_string(s), std::move(program),
               qacause::make_instance(schema(), facts), {}, {}};
        if (finish(c, rng))
            out.push_back(std::move(c));
    }
    return out;
}

std::vector<Case> constrained_cases(std::size_t count, std::uint32_t seed, Options options, bool deletion_safe_only) {
    static const char* const safe_pool[] = {
        "FD R: 1 -> 2;", "KEY U: 1;", "DC <- R(x,x);", "DC <- S(x), T(x);",
        "DC <- R(x,y), R(y,x), x != y;", "FD U: 2 -> 1;", "DC <- U(x,y), S(y);",
    };
    // listed so that closing under one never breaks an earlier one
    static const char* const ind_pool[] = {
        "IND U[1,2] -> R[1,2];", "IND R[2] -> S[1];", "IND R[1] -> T[1];", "IND S[1] -> T[1];",
    };
    const auto pool = eligible(options.kind);
    std::vector<Case> out;
    for (std::uint32_t s = seed; out.size() < count; ++s) {
        std::mt19937 rng(s);
        const Template& t = *pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        std::bernoulli_distribution take(0.4);
        std::string text;
        for (const char* c : safe_pool)
            if (take(rng))
                text += std::string(c) + "\n";
        std::vector<std::string> inds;
        if (!deletion_safe_only) {
            for (const char* c : ind_pool)
                if (take(rng))
                    inds.push_back(c);
            if (inds.empty())
                inds.push_back(ind_pool[std::uniform_int_distribution<std::size_t>(0, 3)(rng)]);
        }

        auto program = qacause::parse_program(t.text);
        auto facts = random_facts(rng, program, options, std::max<std::size_t>(1, options.max_facts - 3));
        for (const auto& ind_text : inds) {
            const auto ind = qacause::parse_constraints(ind_text).inds.front();
            std::set<Tuple> have;
            for (const auto& f : facts)
                if (f.predicate == ind.target) {
                    Tuple key;
                    for (auto p : ind.target_positions)
                        key.push_back(f.args[p]);
                    have.insert(key);
                }
            std::vector<FactEntry> added;
            for (const auto& f : facts) {
                if (f.predicate != ind.source)
                    continue;
                Tuple key;
                for (auto p : ind.source_positions)
                    key.push_back(f.args[p]);
                if (!have.insert(key).second)
                    continue;
                // target arity equals the key length for every pooled dependency
                added.push_back({ind.target, key, std::bernoulli_distribution(0.7)(rng)});
            }
            facts.insert(facts.end(), added.begin(), added.end());
            text += ind_text + "\n";
        }
        if (facts.size() > options.max_facts + 2 || endogenous_count(facts) > options.max_facts)
            continue;

        Case c{std::string(t.name) + "#" + std::to_string(s), std::move(program),
               qacause::make_instance(schema(), facts), {}, {}};
        // drop the deletion-safe constraints the instance happens to violate
        ConstraintSet sigma = qacause::parse_constraints(text);
        ConstraintSet kept;
        kept.inds = sigma.inds;
        for (const auto& fd : sigma.fds) {
            ConstraintSet one;
            one.fds.push_back(fd);
            if (oracle::satisfies(one, c.instance.facts()))
                kept.fds.push_back(fd);
        }
        for (const auto& dc : sigma.dcs) {
            ConstraintSet one;
            one.dcs.push_back(dc);
            if (oracle::satisfies(one, c.instance.facts()))
                kept.dcs.push_back(dc);
        }
        if (!oracle::satisfies(kept, c.instance.facts()))
            continue;
        c.sigma = std::move(kept);
        if (finish(c, rng))
            out.push_back(std::move(c));
    }
    return out;
}

} // namespace bed
