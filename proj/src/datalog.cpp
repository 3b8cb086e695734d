#include "qacause/datalog.hpp"

#include "program_reader.hpp"
#include "qacause/bound_query.hpp"
#include "qacause/error.hpp"

#include <cctype>
#include <utility>

namespace qacause {

namespace {

std::string render_term(const Term& t) {
    if (t.is_variable())
        return t.text;
    // numerals read back as constants without quotes
    if (!t.text.empty() && std::isdigit(static_cast<unsigned char>(t.text.front())) &&
        detail::is_plain_identifier(t.text))
        return t.text;
    std::string out = "\"";
    for (char c : t.text) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

using Problem = std::optional<std::pair<ErrorCode, std::string>>;

Problem check_rule(const Rule& rule) {
    if (rule.head.is_builtin())
        return std::pair{ErrorCode::SyntaxError, std::string("rule head cannot be a built-in")};
    if (rule.body.empty())
        return std::pair{ErrorCode::SyntaxError, "rule for " + rule.head.predicate + " has an empty body"};
    std::set<std::string> positive;
    for (const auto& a : rule.body) {
        if (a.is_builtin()) {
            if (a.terms.size() != 2)
                return std::pair{ErrorCode::SyntaxError, std::string("'!=' takes exactly two terms")};
            continue;
        }
        for (const auto& t : a.terms)
            if (t.is_variable())
                positive.insert(t.text);
    }
    for (const auto& t : rule.head.terms) {
        if (t.is_variable() && !positive.contains(t.text))
            return std::pair{ErrorCode::UnsafeRule, "head variable " + t.text + " of " + rule.head.predicate +
                                                        " does not occur in a body atom"};
    }
    for (const auto& a : rule.body) {
        if (!a.is_builtin())
            continue;
        for (const auto& t : a.terms)
            if (t.is_variable() && !positive.contains(t.text))
                return std::pair{ErrorCode::UnsafeRule,
                                 "variable " + t.text + " of '!=' does not occur in a body atom"};
    }
    return std::nullopt;
}

} // namespace

std::string Atom::to_string() const {
    if (is_builtin() && terms.size() == 2)
        return render_term(terms[0]) + " != " + render_term(terms[1]);
    if (terms.empty())
        return predicate;
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i)
            out += ",";
        out += render_term(terms[i]);
    }
    return out + ")";
}

std::string Rule::to_string() const {
    std::string out = head.to_string() + " <- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i)
            out += ", ";
        out += body[i].to_string();
    }
    return out + ".";
}

std::string GroundAtom::to_string() const {
    if (args.empty())
        return predicate;
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            out += ",";
        out += detail::quote_constant(args[i]);
    }
    return out + ")";
}

void validate_rule(const Rule& rule) {
    if (auto p = check_rule(rule))
        throw Error(p->first, p->second);
}

Program::Program(std::vector<Rule> rules, std::string answer_predicate)
    : rules_(std::move(rules)), answer_predicate_(std::move(answer_predicate)) {
    std::map<std::string, std::size_t, std::less<>> arities;
    auto note = [&](const Atom& a) {
        if (a.is_builtin())
            return;
        auto [it, inserted] = arities.emplace(a.predicate, a.terms.size());
        if (!inserted && it->second != a.terms.size())
            throw Error(ErrorCode::ArityConflict, "predicate " + a.predicate + " used with arity " +
                                                      std::to_string(it->second) + " and " +
                                                      std::to_string(a.terms.size()));
    };
    for (const auto& r : rules_) {
        validate_rule(r);
        note(r.head);
        for (const auto& a : r.body)
            note(a);
    }
    for (const auto& r : rules_)
        idb_.emplace(r.head.predicate, r.head.terms.size());
    for (const auto& [name, arity] : arities)
        if (!idb_.contains(name))
            edb_.emplace(name, arity);
    if (!idb_.contains(answer_predicate_))
        throw Error(ErrorCode::SyntaxError, "answer predicate " + answer_predicate_ + " has no rule");
}

std::size_t Program::answer_arity() const { return idb_.find(answer_predicate_)->second; }

std::optional<std::size_t> Program::arity(std::string_view predicate) const {
    if (auto it = idb_.find(predicate); it != idb_.end())
        return it->second;
    if (auto it = edb_.find(predicate); it != edb_.end())
        return it->second;
    return std::nullopt;
}

bool Program::is_conjunctive() const {
    if (rules_.size() != 1)
        return false;
    for (const auto& a : rules_.front().body)
        if (!a.is_builtin() && idb_.contains(a.predicate))
            return false;
    return true;
}

std::string Program::to_string() const {
    std::string out;
    for (const auto& r : rules_)
        out += r.to_string() + "\n";
    return out;
}

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

Term read_term(TokenStream& ts) {
    if (ts.at(Tok::Quoted))
        return Term::constant(ts.next().text);
    const Token& t = ts.expect(Tok::Ident, "as a term");
    if (std::isdigit(static_cast<unsigned char>(t.text.front())))
        return Term::constant(t.text);
    return Term::variable(t.text);
}

} // namespace

namespace detail {

PositionedAtom read_literal(TokenStream& ts) {
    const Token& first = ts.peek();
    if (first.kind == Tok::Quoted || (first.kind == Tok::Ident && ts.peek(1).kind == Tok::Neq)) {
        Term lhs = read_term(ts);
        ts.expect(Tok::Neq, "in inequality");
        Term rhs = read_term(ts);
        return {Atom{std::string(kInequality), {std::move(lhs), std::move(rhs)}}, first.line, first.column};
    }
    const Token& name = ts.expect(Tok::Ident, "as predicate name");
    if (std::isdigit(static_cast<unsigned char>(name.text.front())))
        ts.fail(name, "predicate names cannot start with a digit");
    PositionedAtom out{Atom{name.text, {}}, name.line, name.column};
    if (ts.accept(Tok::LParen)) {
        if (!ts.at(Tok::RParen)) {
            out.atom.terms.push_back(read_term(ts));
            while (ts.accept(Tok::Comma))
                out.atom.terms.push_back(read_term(ts));
        }
        ts.expect(Tok::RParen, "to close the argument list");
    }
    return out;
}

} // namespace detail

using detail::PositionedAtom;
using detail::read_literal;

Program parse_program(std::string_view text, std::optional<std::string> answer_predicate) {
    TokenStream ts(detail::tokenize(text));
    std::vector<Rule> rules;
    std::map<std::string, std::size_t, std::less<>> arities;
    auto note = [&](const PositionedAtom& pa) {
        if (pa.atom.is_builtin())
            return;
        auto [it, inserted] = arities.emplace(pa.atom.predicate, pa.atom.terms.size());
        if (!inserted && it->second != pa.atom.terms.size())
            throw Error(ErrorCode::ArityConflict,
                        "predicate " + pa.atom.predicate + " used with arity " + std::to_string(it->second) +
                            " and " + std::to_string(pa.atom.terms.size()),
                        pa.line, pa.column);
    };

    while (!ts.at_end()) {
        const Token& start = ts.peek();
        PositionedAtom head = read_literal(ts);
        if (head.atom.is_builtin())
            ts.fail(start, "rule head cannot be an inequality");
        note(head);
        ts.expect(Tok::LeftArrow, "after rule head");
        Rule rule{std::move(head.atom), {}};
        do {
            PositionedAtom lit = read_literal(ts);
            note(lit);
            rule.body.push_back(std::move(lit.atom));
        } while (ts.accept(Tok::Comma));
        ts.expect(Tok::Dot, "at end of rule");
        if (auto p = check_rule(rule))
            throw Error(p->first, p->second, start.line, start.column);
        rules.push_back(std::move(rule));
    }

    std::string answer;
    if (answer_predicate) {
        answer = *answer_predicate;
    } else {
        bool has_upper = false, has_lower = false;
        for (const auto& r : rules) {
            has_upper = has_upper || r.head.predicate == "Ans";
            has_lower = has_lower || r.head.predicate == "ans";
        }
        if (!has_upper && !has_lower)
            throw Error(ErrorCode::SyntaxError, "program defines neither Ans nor ans");
        answer = has_upper ? "Ans" : "ans";
    }
    return Program(std::move(rules), std::move(answer));
}

std::vector<GroundAtom> parse_ground_atoms(std::string_view text) {
    TokenStream ts(detail::tokenize(text));
    std::vector<GroundAtom> out;
    if (ts.at_end())
        return out;
    do {
        const Token& name = ts.expect(Tok::Ident, "as predicate name");
        GroundAtom g{name.text, {}};
        if (ts.accept(Tok::LParen)) {
            if (!ts.at(Tok::RParen)) {
                do {
                    if (!ts.at(Tok::Ident) && !ts.at(Tok::Quoted))
                        ts.fail(ts.peek(), "expected a constant");
                    g.args.push_back(ts.next().text);
                } while (ts.accept(Tok::Comma));
            }
            ts.expect(Tok::RParen, "to close the argument list");
        }
        out.push_back(std::move(g));
    } while (ts.accept(Tok::Comma));
    ts.accept(Tok::Dot);
    if (!ts.at_end())
        ts.fail(ts.peek(), "trailing input after ground atoms");
    return out;
}

Program boolean_specialization(const Program& program, const Tuple& answer) {
    if (answer.size() != program.answer_arity())
        throw Error(ErrorCode::ArityMismatch, "answer has " + std::to_string(answer.size()) +
                                                  " values, query arity is " +
                                                  std::to_string(program.answer_arity()));
    if (program.is_boolean())
        return program;
    std::string fresh = "ans";
    for (int k = 1; program.arity(fresh); ++k)
        fresh = "ans_" + std::to_string(k);
    std::vector<Rule> rules = program.rules();
    Atom body{program.answer_predicate(), {}};
    for (const auto& c : answer)
        body.terms.push_back(Term::constant(c));
    rules.push_back(Rule{Atom{fresh, {}}, {std::move(body)}});
    return Program(std::move(rules), fresh);
}

AnswerSet evaluate(const Program& program, const Instance& instance) {
    BoundQuery q(program, instance);
    return q.answers(q.all_facts());
}

bool holds(const Program& program, const Instance& instance, const Tuple& answer) {
    if (answer.size() != program.answer_arity())
        throw Error(ErrorCode::ArityMismatch, "answer has " + std::to_string(answer.size()) +
                                                  " values, query arity is " +
                                                  std::to_string(program.answer_arity()));
    BoundQuery q(program, instance);
    return q.holds(q.all_facts(), answer);
}

std::vector<TupleIdSet> minimal_supports(const Program& program, const Instance& instance,
                                         const Tuple& answer) {
    if (!holds(program, instance, answer))
        throw Error(ErrorCode::NotAnAnswer, format_tuple(answer) + " is not an answer");
    BoundQuery q(program, instance);
    const GroundAtom goal{program.answer_predicate(), answer};
    std::vector<TupleIdSet> out;
    for (const auto& s : minimal_support_sets(q, q.empty_set(), q.all_facts(), std::span(&goal, 1)))
        out.push_back(q.to_ids(s));
    return out;
}

} // namespace qacause
