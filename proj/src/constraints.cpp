#include "qacause/constraints.hpp"

#include "program_reader.hpp"
#include "qacause/error.hpp"
#include "qacause/hitting_sets.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

namespace qacause {

namespace {

std::string join_positions(const std::vector<std::size_t>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(ps[i] + 1);
    }
    return out;
}

std::string join_body(const std::vector<Atom>& body) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i)
            out += ", ";
        out += body[i].to_string();
    }
    return out;
}

} // namespace

std::string InclusionDependency::to_string() const {
    return "IND " + source + "[" + join_positions(source_positions) + "] -> " + target + "[" +
           join_positions(target_positions) + "]";
}

std::vector<std::size_t> FunctionalDependency::dependent_positions(std::size_t arity) const {
    if (!key)
        return dependent;
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < arity; ++p)
        if (std::find(determinant.begin(), determinant.end(), p) == determinant.end())
            out.push_back(p);
    return out;
}

bool FunctionalDependency::is_key(std::size_t arity) const {
    if (key)
        return true;
    std::set<std::size_t> covered(determinant.begin(), determinant.end());
    covered.insert(dependent.begin(), dependent.end());
    return covered.size() == arity && *covered.rbegin() + 1 == arity;
}

std::string FunctionalDependency::to_string() const {
    if (key)
        return "KEY " + predicate + ": " + join_positions(determinant);
    return "FD " + predicate + ": " + join_positions(determinant) + " -> " + join_positions(dependent);
}

std::string DenialConstraint::to_string() const { return "DC <- " + join_body(body); }

std::string ViewInclusion::to_string() const {
    std::string out = "VIEW " + view + ":";
    for (const auto& r : query.rules())
        out += " " + r.to_string();
    out.pop_back();
    return out;
}

// ---------------------------------------------------------------------------
// Reading and writing constraint files

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

std::size_t read_position(TokenStream& ts) {
    const Token& t = ts.expect(Tok::Ident, "as a position");
    if (!std::all_of(t.text.begin(), t.text.end(), [](unsigned char c) { return std::isdigit(c); }))
        ts.fail(t, "positions are 1-based integers, got '" + t.text + "'");
    const std::size_t p = std::stoul(t.text);
    if (p == 0)
        ts.fail(t, "positions start at 1");
    return p - 1;
}

std::vector<std::size_t> read_positions(TokenStream& ts) {
    std::vector<std::size_t> out{read_position(ts)};
    while (ts.accept(Tok::Comma))
        out.push_back(read_position(ts));
    return out;
}

void reject_repeats(TokenStream& ts, const Token& where, const std::vector<std::size_t>& ps) {
    if (std::set<std::size_t>(ps.begin(), ps.end()).size() != ps.size())
        ts.fail(where, "repeated position");
}

std::vector<Atom> read_body(TokenStream& ts) {
    std::vector<Atom> body;
    do {
        body.push_back(detail::read_literal(ts).atom);
    } while (ts.accept(Tok::Comma));
    return body;
}

} // namespace

ConstraintSet parse_constraints(std::string_view text) {
    TokenStream ts(detail::tokenize(text));
    ConstraintSet sigma;
    while (!ts.at_end()) {
        const Token kw = ts.expect(Tok::Ident, "as constraint kind");
        std::string kind = kw.text;
        std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return std::toupper(c); });

        if (kind == "IND") {
            InclusionDependency ind;
            ind.source = ts.expect(Tok::Ident, "as source predicate").text;
            ts.expect(Tok::LBracket, "before source positions");
            ind.source_positions = read_positions(ts);
            ts.expect(Tok::RBracket, "after source positions");
            ts.expect(Tok::RightArrow, "in inclusion dependency");
            ind.target = ts.expect(Tok::Ident, "as target predicate").text;
            ts.expect(Tok::LBracket, "before target positions");
            ind.target_positions = read_positions(ts);
            ts.expect(Tok::RBracket, "after target positions");
            if (ind.source_positions.size() != ind.target_positions.size())
                ts.fail(kw, "inclusion dependency position lists differ in length");
            reject_repeats(ts, kw, ind.target_positions);
            sigma.inds.push_back(std::move(ind));
        } else if (kind == "FD" || kind == "KEY") {
            FunctionalDependency fd;
            fd.key = kind == "KEY";
            fd.predicate = ts.expect(Tok::Ident, "as predicate").text;
            ts.expect(Tok::Colon, "after predicate");
            fd.determinant = read_positions(ts);
            reject_repeats(ts, kw, fd.determinant);
            if (!fd.key) {
                ts.expect(Tok::RightArrow, "in functional dependency");
                fd.dependent = read_positions(ts);
                reject_repeats(ts, kw, fd.dependent);
                for (std::size_t p : fd.dependent)
                    if (std::find(fd.determinant.begin(), fd.determinant.end(), p) != fd.determinant.end())
                        ts.fail(kw, "position " + std::to_string(p + 1) + " on both sides of the dependency");
            }
            sigma.fds.push_back(std::move(fd));
        } else if (kind == "DC") {
            ts.expect(Tok::LeftArrow, "after DC");
            DenialConstraint dc{read_body(ts)};
            try {
                validate_rule(Rule{Atom{"dc", {}}, dc.body});
            } catch (const Error& e) {
                throw Error(e.code(), "unsafe denial constraint", kw.line, kw.column);
            }
            sigma.dcs.push_back(std::move(dc));
        } else if (kind == "VIEW") {
            const std::string view = ts.expect(Tok::Ident, "as view predicate").text;
            ts.expect(Tok::Colon, "after view predicate");
            std::vector<Rule> rules;
            do {
                const Token& start = ts.peek();
                Atom head = detail::read_literal(ts).atom;
                if (head.is_builtin())
                    ts.fail(start, "rule head cannot be an inequality");
                ts.expect(Tok::LeftArrow, "after rule head");
                rules.push_back(Rule{std::move(head), read_body(ts)});
                ts.accept(Tok::Dot);
            } while (!ts.at(Tok::Semicolon) && !ts.at_end());
            std::string answer = rules.front().head.predicate;
            sigma.views.push_back(ViewInclusion{view, Program(std::move(rules), std::move(answer))});
        } else {
            ts.fail(kw, "unknown constraint kind '" + kw.text + "'");
        }
        ts.expect(Tok::Semicolon, "at end of constraint");
    }
    return sigma;
}

std::string format_constraints(const ConstraintSet& sigma) {
    std::string out;
    for (const auto& c : sigma.inds)
        out += c.to_string() + ";\n";
    for (const auto& c : sigma.fds)
        out += c.to_string() + ";\n";
    for (const auto& c : sigma.dcs)
        out += c.to_string() + ";\n";
    for (const auto& c : sigma.views)
        out += c.to_string() + ";\n";
    return out;
}

// ---------------------------------------------------------------------------
// Satisfaction

namespace {

std::vector<Term> fresh_variables(std::size_t n) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(Term::variable("x" + std::to_string(i)));
    return out;
}

std::size_t relation_arity(const Instance& instance, const std::string& predicate,
                           const std::vector<std::size_t>& positions, const std::string& context) {
    const std::size_t needed = positions.empty() ? 0 : *std::max_element(positions.begin(), positions.end()) + 1;
    if (auto a = instance.schema().arity(predicate)) {
        if (needed > *a)
            throw Error(ErrorCode::SchemaMismatch, context + ": position " + std::to_string(needed) +
                                                       " exceeds the arity " + std::to_string(*a) + " of " +
                                                       predicate);
        return *a;
    }
    return std::max<std::size_t>(needed, 1);
}

// Program whose answers are the projection of `predicate` onto `positions`.
Program projection(const std::string& predicate, std::size_t arity, const std::vector<std::size_t>& positions) {
    const auto vars = fresh_variables(arity);
    Atom head{"?proj", {}};
    for (std::size_t p : positions)
        head.terms.push_back(vars[p]);
    return Program({Rule{std::move(head), {Atom{predicate, vars}}}}, "?proj");
}

Tuple project(const Tuple& t, const std::vector<std::size_t>& positions) {
    Tuple out;
    for (std::size_t p : positions)
        out.push_back(t[p]);
    return out;
}

} // namespace

struct BoundConstraints::Impl {
    struct Ind {
        const InclusionDependency* source;
        BoundQuery from, to;
    };
    struct Fd {
        const FunctionalDependency* source;
        std::vector<std::size_t> dependent;
        std::vector<std::size_t> facts;
    };
    struct Dc {
        const DenialConstraint* source;
        BoundQuery query;
    };
    struct View {
        const ViewInclusion* source;
        BoundQuery query;
        std::vector<std::size_t> facts;
    };

    ConstraintSet sigma;
    Instance instance;
    std::vector<Ind> inds;
    std::vector<Fd> fds;
    std::vector<Dc> dcs;
    std::vector<View> views;

    // Appends descriptions of violations; stops at the first one unless `all`.
    bool check(const FactSet& present, std::vector<std::string>* out) const {
        bool ok = true;
        auto report = [&](std::string what) {
            ok = false;
            if (out)
                out->push_back(std::move(what));
            return out != nullptr;
        };
        const auto& facts = instance.facts();

        for (const auto& c : inds) {
            const AnswerSet from = c.from.answers(present);
            if (from.empty())
                continue;
            const AnswerSet to = c.to.answers(present);
            for (const auto& t : from)
                if (!to.contains(t) && !report(c.source->to_string() + " fails for " + format_tuple(t)))
                    return false;
        }
        for (const auto& c : fds) {
            std::map<Tuple, std::pair<Tuple, std::size_t>> seen;
            for (std::size_t i : c.facts) {
                if (!present.test(i))
                    continue;
                const Tuple det = project(facts[i].args, c.source->determinant);
                Tuple dep = project(facts[i].args, c.dependent);
                auto [it, inserted] = seen.emplace(det, std::pair{dep, i});
                if (!inserted && it->second.first != dep &&
                    !report(c.source->to_string() + " fails for " + facts[it->second.second].id.str() + " and " +
                            facts[i].id.str()))
                    return false;
            }
        }
        for (const auto& c : dcs)
            if (c.query.holds(present, {}) && !report(c.source->to_string() + " has a match"))
                return false;
        for (const auto& c : views) {
            bool any = false;
            for (std::size_t i : c.facts)
                any = any || present.test(i);
            if (!any)
                continue;
            const AnswerSet answers = c.query.answers(present);
            for (std::size_t i : c.facts)
                if (present.test(i) && !answers.contains(facts[i].args) &&
                    !report(c.source->view + format_tuple(facts[i].args) + " is not an answer of the view query"))
                    return false;
        }
        return ok;
    }
};

BoundConstraints::BoundConstraints(const ConstraintSet& sigma, const Instance& instance) {
    auto impl = std::make_shared<Impl>();
    impl->sigma = sigma;
    impl->instance = instance;
    const auto& facts = instance.facts();

    for (const auto& c : impl->sigma.inds) {
        const std::string what = c.to_string();
        const std::size_t sa = relation_arity(instance, c.source, c.source_positions, what);
        const std::size_t ta = relation_arity(instance, c.target, c.target_positions, what);
        impl->inds.push_back({&c, BoundQuery(projection(c.source, sa, c.source_positions), instance),
                              BoundQuery(projection(c.target, ta, c.target_positions), instance)});
    }
    for (const auto& c : impl->sigma.fds) {
        std::vector<std::size_t> all = c.determinant;
        all.insert(all.end(), c.dependent.begin(), c.dependent.end());
        const std::size_t arity = relation_arity(instance, c.predicate, all, c.to_string());
        Impl::Fd fd{&c, c.dependent_positions(arity), {}};
        for (std::size_t i = 0; i < facts.size(); ++i)
            if (facts[i].predicate == c.predicate)
                fd.facts.push_back(i);
        impl->fds.push_back(std::move(fd));
    }
    for (const auto& c : impl->sigma.dcs)
        impl->dcs.push_back({&c, BoundQuery(Program({Rule{Atom{"?dc", {}}, c.body}}, "?dc"), instance)});
    for (const auto& c : impl->sigma.views) {
        if (auto a = instance.schema().arity(c.view); a && *a != c.query.answer_arity())
            throw Error(ErrorCode::SchemaMismatch, "view " + c.view + " has arity " + std::to_string(*a) +
                                                       " but its query has arity " +
                                                       std::to_string(c.query.answer_arity()));
        Impl::View v{&c, BoundQuery(c.query, instance), {}};
        for (std::size_t i = 0; i < facts.size(); ++i)
            if (facts[i].predicate == c.view)
                v.facts.push_back(i);
        impl->views.push_back(std::move(v));
    }
    impl_ = std::move(impl);
}

bool BoundConstraints::satisfied(const FactSet& present) const { return impl_->check(present, nullptr); }

std::vector<std::string> BoundConstraints::violations(const FactSet& present) const {
    std::vector<std::string> out;
    impl_->check(present, &out);
    return out;
}

bool satisfies(const Instance& instance, const ConstraintSet& sigma) {
    BoundConstraints bc(sigma, instance);
    FactSet all(instance.size());
    all.set();
    return bc.satisfied(all);
}

std::vector<std::string> violations(const Instance& instance, const ConstraintSet& sigma) {
    BoundConstraints bc(sigma, instance);
    FactSet all(instance.size());
    all.set();
    return bc.violations(all);
}

// ---------------------------------------------------------------------------
// Causes under constraints

struct IcCauseAnalysis::Impl {
    BoundQuery query;
    BoundConstraints constraints;
    Tuple answer;
    // Endogenous fact positions; Γ is a bit mask over this list.
    std::vector<std::size_t> endo;
    // Per endogenous index: subset-minimal witnessing Γ masks.
    std::vector<std::vector<std::uint64_t>> witnesses;

    Impl(const Program& program, const Instance& instance, Tuple a, const ConstraintSet& sigma)
        : query(program, instance), constraints(sigma, instance), answer(std::move(a)) {}

    FactSet remaining(std::uint64_t gamma) const {
        FactSet s = query.all_facts();
        for (std::size_t k = 0; k < endo.size(); ++k)
            if (gamma >> k & 1)
                s.reset(endo[k]);
        return s;
    }

    TupleIdSet ids(std::uint64_t gamma) const {
        FactSet s = query.empty_set();
        for (std::size_t k = 0; k < endo.size(); ++k)
            if (gamma >> k & 1)
                s.set(endo[k]);
        return query.to_ids(s);
    }

    void search() {
        const std::size_t n = endo.size();
        std::unordered_map<std::uint64_t, bool> holds_memo, sat_memo;
        auto holds_after = [&](std::uint64_t g) {
            auto it = holds_memo.find(g);
            if (it == holds_memo.end())
                it = holds_memo.emplace(g, query.holds(remaining(g), answer)).first;
            return it->second;
        };
        auto sat_after = [&](std::uint64_t g) {
            auto it = sat_memo.find(g);
            if (it == sat_memo.end())
                it = sat_memo.emplace(g, constraints.satisfied(remaining(g))).first;
            return it->second;
        };

        std::vector<std::vector<std::uint64_t>> found(n);
        // Γ with Q(ā) still true form a down-closed family; extend by larger indices only.
        std::vector<std::pair<std::uint64_t, std::size_t>> stack{{0, 0}};
        while (!stack.empty()) {
            auto [gamma, from] = stack.back();
            stack.pop_back();
            if (sat_after(gamma))
                for (std::size_t k = 0; k < n; ++k) {
                    const std::uint64_t bit = std::uint64_t{1} << k;
                    if (!(gamma & bit) && !holds_after(gamma | bit) && sat_after(gamma | bit))
                        found[k].push_back(gamma);
                }
            for (std::size_t j = from; j < n; ++j) {
                const std::uint64_t child = gamma | std::uint64_t{1} << j;
                if (holds_after(child))
                    stack.emplace_back(child, j + 1);
            }
        }

        witnesses.assign(n, {});
        for (std::size_t k = 0; k < n; ++k) {
            auto& all = found[k];
            std::sort(all.begin(), all.end(), [](std::uint64_t a, std::uint64_t b) {
                const int pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa < pb : a < b;
            });
            for (std::uint64_t g : all)
                if (std::none_of(witnesses[k].begin(), witnesses[k].end(),
                                 [g](std::uint64_t m) { return (g & m) == m; }))
                    witnesses[k].push_back(g);
        }
    }

    std::size_t endo_index(const TupleId& tau) const {
        auto idx = query.instance().index_of(tau);
        if (!idx)
            throw Error(ErrorCode::UnknownTupleId, "no tuple with id " + tau.str());
        auto it = std::find(endo.begin(), endo.end(), *idx);
        if (it == endo.end())
            throw Error(ErrorCode::ExogenousTuple, tau.str() + " is exogenous");
        return static_cast<std::size_t>(it - endo.begin());
    }
};

IcCauseAnalysis::IcCauseAnalysis(const Program& program, const Instance& instance, Tuple answer,
                                 const ConstraintSet& sigma) {
    if (answer.size() != program.answer_arity())
        throw Error(ErrorCode::ArityMismatch, "answer " + format_tuple(answer) + " does not match arity " +
                                                  std::to_string(program.answer_arity()));
    auto impl = std::make_shared<Impl>(program, instance, std::move(answer), sigma);
    const BoundQuery& q = impl->query;
    if (!q.holds(q.all_facts(), impl->answer))
        throw Error(ErrorCode::NotAnAnswer, format_tuple(impl->answer) + " is not an answer");
    if (!impl->constraints.satisfied(q.all_facts()))
        throw Error(ErrorCode::InconsistentInstance, "the instance violates the constraints: " +
                                                         impl->constraints.violations(q.all_facts()).front());
    impl->endo = positions(q.endogenous_facts());
    if (impl->endo.size() > 63)
        throw Error(ErrorCode::InvalidArgument, "exhaustive search supports at most 63 endogenous facts");
    impl->search();
    impl_ = std::move(impl);
}

TupleIdSet IcCauseAnalysis::causes() const {
    TupleIdSet out;
    for (std::size_t k = 0; k < impl_->endo.size(); ++k)
        if (!impl_->witnesses[k].empty())
            out.insert(impl_->query.instance().facts()[impl_->endo[k]].id);
    return out;
}

ContingencyFamily IcCauseAnalysis::contingencies(const TupleId& tau) const {
    ContingencyFamily out{tau, {}};
    for (std::uint64_t g : impl_->witnesses[impl_->endo_index(tau)])
        out.sets.push_back(impl_->ids(g));
    sort_lexicographically(out.sets);
    return out;
}

Responsibility IcCauseAnalysis::responsibility(const TupleId& tau) const {
    const auto& w = impl_->witnesses[impl_->endo_index(tau)];
    if (w.empty())
        return Responsibility::none();
    // witnesses are kept in size order
    return Responsibility::from_contingency_size(std::popcount(w.front()));
}

CausalityReport IcCauseAnalysis::report() const {
    CausalityReport out{impl_->answer, {}};
    for (const auto& id : causes()) {
        CauseEntry e{id, false, contingencies(id), responsibility(id)};
        e.counterfactual = e.responsibility.is_counterfactual();
        out.entries.emplace(id, std::move(e));
    }
    return out;
}

TupleIdSet causes_under_ics(const Program& program, const Instance& instance, const Tuple& answer,
                            const ConstraintSet& sigma) {
    return IcCauseAnalysis(program, instance, answer, sigma).causes();
}

ContingencyFamily contingencies_under_ics(const Program& program, const Instance& instance, const Tuple& answer,
                                          const TupleId& tau, const ConstraintSet& sigma) {
    return IcCauseAnalysis(program, instance, answer, sigma).contingencies(tau);
}

Responsibility responsibility_under_ics(const Program& program, const Instance& instance, const Tuple& answer,
                                        const TupleId& tau, const ConstraintSet& sigma) {
    return IcCauseAnalysis(program, instance, answer, sigma).responsibility(tau);
}

// ---------------------------------------------------------------------------
// Reduction, key preservation, view updates

VcReduction vc_reduction(const Program& program, const Instance& instance, const Tuple& answer) {
    if (!program.is_conjunctive())
        throw Error(ErrorCode::NotACQ, "the reduction needs a conjunctive query");
    if (answer.size() != program.answer_arity())
        throw Error(ErrorCode::ArityMismatch, "answer " + format_tuple(answer) + " does not match arity " +
                                                  std::to_string(program.answer_arity()));
    AnswerSet view = evaluate(program, instance);
    if (!view.erase(answer))
        throw Error(ErrorCode::NotAnAnswer, format_tuple(answer) + " is not an answer");

    std::string name = "V";
    for (int k = 1; instance.schema().contains(name) || program.arity(name); ++k)
        name = "V" + std::to_string(k);

    Schema schema = instance.schema();
    if (program.answer_arity() > 0)
        schema.declare(name, program.answer_arity());

    std::vector<FactEntry> entries;
    for (const Fact& f : instance.facts())
        entries.push_back({f.predicate, f.args, f.endogenous, f.id});
    int next = 1;
    for (const Tuple& t : view) {
        TupleId id("v" + std::to_string(next++));
        while (instance.contains(id))
            id = TupleId("v" + std::to_string(next++));
        entries.push_back({name, t, false, id});
    }

    VcReduction out{schema, make_instance(schema, entries), {}, name};
    out.sigma.views.push_back(ViewInclusion{name, program});
    return out;
}

bool is_key_preserving(const Program& program, const std::vector<FunctionalDependency>& kappa) {
    if (!program.is_conjunctive())
        throw Error(ErrorCode::NotACQ, "key preservation is defined for conjunctive queries");
    for (const auto& fd : kappa) {
        auto arity = program.arity(fd.predicate);
        if (!fd.key && (!arity || !fd.is_key(*arity)))
            throw Error(ErrorCode::NotAKeySet, fd.to_string() + " is not a key constraint");
    }
    const Rule& rule = program.rules().front();
    std::set<std::string> head_vars;
    for (const auto& t : rule.head.terms)
        if (t.is_variable())
            head_vars.insert(t.text);

    for (const auto& atom : rule.body) {
        if (atom.is_builtin())
            continue;
        for (const auto& fd : kappa) {
            if (fd.predicate != atom.predicate)
                continue;
            for (std::size_t p : fd.determinant) {
                if (p >= atom.terms.size())
                    throw Error(ErrorCode::NotAKeySet, fd.to_string() + " exceeds the arity of " + atom.predicate);
                const Term& t = atom.terms[p];
                if (!t.is_variable() || !head_vars.contains(t.text))
                    return false;
            }
        }
    }
    return true;
}

std::vector<ViewDeletion> abductive_view_deletions(const Program& program, const Instance& instance,
                                                   const Tuple& answer, const ConstraintSet& sigma) {
    if (answer.size() != program.answer_arity())
        throw Error(ErrorCode::ArityMismatch, "answer " + format_tuple(answer) + " does not match arity " +
                                                  std::to_string(program.answer_arity()));
    const BoundQuery q(program, instance);
    if (!q.holds(q.all_facts(), answer))
        throw Error(ErrorCode::NotAnAnswer, format_tuple(answer) + " is not an answer");
    const BoundConstraints bc(sigma, instance);
    const GroundAtom goal{program.answer_predicate(), answer};
    const auto supports = minimal_support_sets(q, q.empty_set(), q.all_facts(), std::span(&goal, 1));

    std::vector<ViewDeletion> out;
    for (const FactSet& h : minimal_hitting_sets(supports, q.fact_count()))
        out.push_back({q.to_ids(h), bc.satisfied(q.all_facts() - h)});
    std::sort(out.begin(), out.end(), [](const ViewDeletion& a, const ViewDeletion& b) {
        if (a.deleted.size() != b.deleted.size())
            return a.deleted.size() < b.deleted.size();
        return a.deleted < b.deleted;
    });
    return out;
}

} // namespace qacause
