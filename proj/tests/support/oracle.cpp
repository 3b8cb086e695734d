#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace oracle {

using qacause::Atom;
using qacause::Rule;
using qacause::Term;

namespace {

using Env = std::map<std::string, std::string>;

std::string resolve(const Term& t, const Env& env) { return t.is_variable() ? env.at(t.text) : t.text; }

void match(const Rule& rule, std::size_t i, Env& env, const Model& model, std::vector<Model::value_type>& out) {
    if (i == rule.body.size()) {
        for (const Atom& a : rule.body)
            if (a.is_builtin() && resolve(a.terms[0], env) == resolve(a.terms[1], env))
                return;
        Tuple head;
        for (const Term& t : rule.head.terms)
            head.push_back(resolve(t, env));
        out.emplace_back(rule.head.predicate, std::move(head));
        return;
    }
    const Atom& atom = rule.body[i];
    if (atom.is_builtin()) {
        match(rule, i + 1, env, model, out);
        return;
    }
    for (const auto& [pred, args] : model) {
        if (pred != atom.predicate || args.size() != atom.terms.size())
            continue;
        Env saved = env;
        bool ok = true;
        for (std::size_t j = 0; ok && j < args.size(); ++j) {
            const Term& t = atom.terms[j];
            if (!t.is_variable()) {
                ok = t.text == args[j];
            } else if (auto it = env.find(t.text); it != env.end()) {
                ok = it->second == args[j];
            } else {
                env[t.text] = args[j];
            }
        }
        if (ok)
            match(rule, i + 1, env, model, out);
        env = std::move(saved);
    }
}

std::vector<std::size_t> key_dependents(const qacause::FunctionalDependency& fd, std::size_t arity) {
    if (!fd.key)
        return fd.dependent;
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < arity; ++p)
        if (std::find(fd.determinant.begin(), fd.determinant.end(), p) == fd.determinant.end())
            out.push_back(p);
    return out;
}

Tuple pick(const Tuple& t, const std::vector<std::size_t>& ps) {
    Tuple out;
    for (std::size_t p : ps)
        out.push_back(t.at(p));
    return out;
}

bool proper_submasks_all(Brute::Mask m, auto&& pred) {
    // every proper submask, including the empty one
    for (Brute::Mask s = (m - 1) & m;; s = (s - 1) & m) {
        if (s != m && !pred(s))
            return false;
        if (s == 0)
            break;
    }
    return true;
}

} // namespace

Model minimal_model(const Program& program, const std::vector<Fact>& facts) {
    Model model;
    for (const auto& f : facts)
        model.emplace(f.predicate, f.args);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<Model::value_type> derived;
        for (const Rule& r : program.rules()) {
            Env env;
            match(r, 0, env, model, derived);
        }
        for (auto& d : derived)
            changed = model.insert(std::move(d)).second || changed;
    }
    return model;
}

std::set<Tuple> answers(const Program& program, const std::vector<Fact>& facts) {
    std::set<Tuple> out;
    for (const auto& [pred, args] : minimal_model(program, facts))
        if (pred == program.answer_predicate())
            out.insert(args);
    return out;
}

bool satisfies(const qacause::ConstraintSet& sigma, const std::vector<Fact>& facts) {
    for (const auto& ind : sigma.inds) {
        std::set<Tuple> targets;
        for (const auto& f : facts)
            if (f.predicate == ind.target)
                targets.insert(pick(f.args, ind.target_positions));
        for (const auto& f : facts)
            if (f.predicate == ind.source && !targets.contains(pick(f.args, ind.source_positions)))
                return false;
    }
    for (const auto& fd : sigma.fds)
        for (const auto& f : facts)
            for (const auto& g : facts) {
                if (f.predicate != fd.predicate || g.predicate != fd.predicate)
                    continue;
                const auto dep = key_dependents(fd, f.args.size());
                if (pick(f.args, fd.determinant) == pick(g.args, fd.determinant) &&
                    pick(f.args, dep) != pick(g.args, dep))
                    return false;
            }
    for (const auto& dc : sigma.dcs) {
        const Program q({Rule{Atom{"violated", {}}, dc.body}}, "violated");
        if (!answers(q, facts).empty())
            return false;
    }
    for (const auto& v : sigma.views) {
        const auto ans = answers(v.query, facts);
        for (const auto& f : facts)
            if (f.predicate == v.view && !ans.contains(f.args))
                return false;
    }
    return true;
}

std::set<Tuple> reachability(const std::vector<Fact>& edges) {
    std::vector<std::string> nodes;
    for (const auto& e : edges)
        for (const auto& v : e.args)
            if (std::find(nodes.begin(), nodes.end(), v) == nodes.end())
                nodes.push_back(v);
    const std::size_t n = nodes.size();
    auto at = [&](const std::string& v) { return std::find(nodes.begin(), nodes.end(), v) - nodes.begin(); };
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (const auto& e : edges)
        r[at(e.args[0])][at(e.args[1])] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r[i][k] && r[k][j])
                    r[i][j] = true;
    std::set<Tuple> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (r[i][j])
                out.insert({nodes[i], nodes[j]});
    return out;
}

// ---------------------------------------------------------------------------

Brute::Brute(const Program& program, const qacause::Instance& instance, Tuple answer, bool endogenous_only)
    : program_(&program), answer_(std::move(answer)) {
    for (const auto& f : instance.facts())
        (f.endogenous || !endogenous_only ? deletable_ : kept_).push_back(f);
    if (deletable_.size() > 20)
        throw std::invalid_argument("brute force limited to 20 deletable facts");
    cache_.resize(std::size_t{1} << deletable_.size());
    view_ = answers_without(0);
    view_.erase(answer_);
}

std::vector<Fact> Brute::remaining(Mask removed) const {
    std::vector<Fact> out = kept_;
    for (std::size_t k = 0; k < deletable_.size(); ++k)
        if (!(removed >> k & 1))
            out.push_back(deletable_[k]);
    return out;
}

const std::set<Tuple>& Brute::answers_without(Mask removed) const {
    auto& slot = cache_[removed];
    if (!slot)
        slot = answers(*program_, remaining(removed));
    return *slot;
}

bool Brute::holds_without(Mask removed) const { return answers_without(removed).contains(answer_); }

TupleIdSet Brute::ids(Mask m) const {
    TupleIdSet out;
    for (std::size_t k = 0; k < deletable_.size(); ++k)
        if (m >> k & 1)
            out.insert(deletable_[k].id);
    return out;
}

std::size_t Brute::slot(const qacause::TupleId& tau) const {
    for (std::size_t k = 0; k < deletable_.size(); ++k)
        if (deletable_[k].id == tau)
            return k;
    throw std::invalid_argument("not deletable: " + tau.str());
}

bool Brute::witnesses(Mask gamma, std::size_t k) const {
    const Mask bit = Mask{1} << k;
    return !(gamma & bit) && holds_without(gamma) && !holds_without(gamma | bit);
}

TupleIdSet Brute::counterfactual_causes() const {
    TupleIdSet out;
    for (std::size_t k = 0; k < size(); ++k)
        if (witnesses(0, k))
            out.insert(deletable_[k].id);
    return out;
}

TupleIdSet Brute::actual_causes() const {
    TupleIdSet out;
    for (std::size_t k = 0; k < size(); ++k)
        for (Mask g = 0; g < cache_.size(); ++g)
            if (witnesses(g, k)) {
                out.insert(deletable_[k].id);
                break;
            }
    return out;
}

std::vector<TupleIdSet> Brute::contingencies(const qacause::TupleId& tau) const {
    const std::size_t k = slot(tau);
    const Mask bit = Mask{1} << k;
    std::vector<TupleIdSet> out;
    for (Mask g = 0; g < cache_.size(); ++g) {
        if (!witnesses(g, k))
            continue;
        if (g == 0 || proper_submasks_all(g, [&](Mask s) { return holds_without(s | bit); }))
            out.push_back(ids(g));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::size_t> Brute::min_contingency(const qacause::TupleId& tau) const {
    const std::size_t k = slot(tau);
    std::optional<std::size_t> best;
    for (Mask g = 0; g < cache_.size(); ++g)
        if (witnesses(g, k) && (!best || std::size_t(std::popcount(g)) < *best))
            best = std::popcount(g);
    return best;
}

TupleIdSet Brute::vcc_causes() const {
    TupleIdSet out;
    for (std::size_t k = 0; k < size(); ++k)
        if (!holds_without(Mask{1} << k) && answers_without(Mask{1} << k) == view_)
            out.insert(deletable_[k].id);
    return out;
}

bool Brute::vc_witnesses(Mask gamma, std::size_t k, bool strict) const {
    const Mask bit = Mask{1} << k;
    if ((gamma & bit) || !holds_without(gamma) || holds_without(gamma | bit) ||
        answers_without(gamma | bit) != view_)
        return false;
    if (strict) {
        std::set<Tuple> full = view_;
        full.insert(answer_);
        return answers_without(gamma) == full;
    }
    return true;
}

TupleIdSet Brute::vc_causes(bool strict) const {
    TupleIdSet out;
    for (std::size_t k = 0; k < size(); ++k)
        for (Mask g = 0; g < cache_.size(); ++g)
            if (vc_witnesses(g, k, strict)) {
                out.insert(deletable_[k].id);
                break;
            }
    return out;
}

std::vector<TupleIdSet> Brute::vc_contingencies(const qacause::TupleId& tau, bool strict) const {
    const std::size_t k = slot(tau);
    std::vector<TupleIdSet> out;
    for (Mask g = 0; g < cache_.size(); ++g) {
        if (!vc_witnesses(g, k, strict))
            continue;
        if (g == 0 || proper_submasks_all(g, [&](Mask s) { return !vc_witnesses(s, k, strict); }))
            out.push_back(ids(g));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::size_t> Brute::vc_min_contingency(const qacause::TupleId& tau, bool strict) const {
    const std::size_t k = slot(tau);
    std::optional<std::size_t> best;
    for (Mask g = 0; g < cache_.size(); ++g)
        if (vc_witnesses(g, k, strict) && (!best || std::size_t(std::popcount(g)) < *best))
            best = std::popcount(g);
    return best;
}

TupleIdSet Brute::causes_under(const qacause::ConstraintSet& sigma) const {
    std::vector<std::optional<bool>> sat(cache_.size());
    auto consistent = [&](Mask m) {
        if (!sat[m])
            sat[m] = satisfies(sigma, remaining(m));
        return *sat[m];
    };
    TupleIdSet out;
    for (std::size_t k = 0; k < size(); ++k) {
        const Mask bit = Mask{1} << k;
        for (Mask g = 0; g < cache_.size(); ++g)
            if (!(g & bit) && holds_without(g) && !holds_without(g | bit) && consistent(g) && consistent(g | bit)) {
                out.insert(deletable_[k].id);
                break;
            }
    }
    return out;
}

std::vector<TupleIdSet> Brute::contingencies_under(const qacause::TupleId& tau,
                                                   const qacause::ConstraintSet& sigma) const {
    const std::size_t k = slot(tau);
    const Mask bit = Mask{1} << k;
    std::vector<std::optional<bool>> sat(cache_.size());
    auto consistent = [&](Mask m) {
        if (!sat[m])
            sat[m] = satisfies(sigma, remaining(m));
        return *sat[m];
    };
    auto ok = [&](Mask g) {
        return !(g & bit) && holds_without(g) && !holds_without(g | bit) && consistent(g) && consistent(g | bit);
    };
    std::vector<TupleIdSet> out;
    for (Mask g = 0; g < cache_.size(); ++g)
        if (ok(g) && (g == 0 || proper_submasks_all(g, [&](Mask s) { return !ok(s); })))
            out.push_back(ids(g));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TupleIdSet> Brute::minimal_answer_deletions() const {
    std::vector<std::pair<Mask, TupleIdSet>> found;
    for (Mask m = 0; m < cache_.size(); ++m)
        if (!holds_without(m) && (m == 0 || proper_submasks_all(m, [&](Mask s) { return holds_without(s); })))
            found.emplace_back(m, ids(m));
    std::vector<TupleIdSet> out;
    for (auto& [m, s] : found)
        out.push_back(std::move(s));
    std::sort(out.begin(), out.end(), [](const TupleIdSet& a, const TupleIdSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::optional<TupleIdSet> Brute::side_effect_free() const {
    std::optional<TupleIdSet> best;
    for (Mask m = 0; m < cache_.size(); ++m) {
        if (answers_without(m) != view_)
            continue;
        TupleIdSet s = ids(m);
        if (!best || s.size() < best->size() || (s.size() == best->size() && s < *best))
            best = std::move(s);
    }
    return best;
}

std::vector<TupleIdSet> diagnoses(const Program& program, const std::vector<Fact>& e, const std::vector<Fact>& hyp,
                                  const std::vector<qacause::GroundAtom>& obs) {
    if (hyp.size() > 20)
        throw std::invalid_argument("brute force limited to 20 hypotheses");
    using Mask = Brute::Mask;
    const Mask count = Mask{1} << hyp.size();
    std::vector<std::optional<bool>> cache(count);
    auto entails = [&](Mask m) {
        if (!cache[m]) {
            std::vector<Fact> facts = e;
            for (std::size_t k = 0; k < hyp.size(); ++k)
                if (m >> k & 1)
                    facts.push_back(hyp[k]);
            const Model model = minimal_model(program, facts);
            cache[m] = std::all_of(obs.begin(), obs.end(),
                                   [&](const auto& g) { return model.contains({g.predicate, g.args}); });
        }
        return *cache[m];
    };
    std::vector<TupleIdSet> out;
    for (Mask m = 0; m < count; ++m) {
        if (!entails(m) || (m != 0 && !proper_submasks_all(m, [&](Mask s) { return !entails(s); })))
            continue;
        TupleIdSet s;
        for (std::size_t k = 0; k < hyp.size(); ++k)
            if (m >> k & 1)
                s.insert(hyp[k].id);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const TupleIdSet& a, const TupleIdSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

} // namespace oracle
