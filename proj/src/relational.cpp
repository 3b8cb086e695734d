#include "qacause/relational.hpp"

#include "lexer.hpp"
#include "qacause/error.hpp"

#include <cctype>
#include <sstream>

namespace qacause {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string_view strip_zeros(std::string_view run) {
    while (run.size() > 1 && run.front() == '0')
        run.remove_prefix(1);
    return run;
}

} // namespace

std::strong_ordering operator<=>(const TupleId& a, const TupleId& b) {
    const std::string_view x = a.value_, y = b.value_;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (is_digit(x[i]) && is_digit(y[j])) {
            std::size_t i2 = i, j2 = j;
            while (i2 < x.size() && is_digit(x[i2]))
                ++i2;
            while (j2 < y.size() && is_digit(y[j2]))
                ++j2;
            const auto nx = strip_zeros(x.substr(i, i2 - i));
            const auto ny = strip_zeros(y.substr(j, j2 - j));
            if (nx.size() != ny.size())
                return nx.size() <=> ny.size();
            if (auto c = nx.compare(ny); c != 0)
                return c <=> 0;
            i = i2;
            j = j2;
        } else {
            if (x[i] != y[j])
                return static_cast<unsigned char>(x[i]) <=> static_cast<unsigned char>(y[j]);
            ++i;
            ++j;
        }
    }
    if ((x.size() - i) != (y.size() - j))
        return (x.size() - i) <=> (y.size() - j);
    return x.compare(y) <=> 0;
}

void Schema::declare(const std::string& name, std::size_t arity) {
    if (name.empty() || name == "!=")
        throw Error(ErrorCode::InvalidArgument, "invalid predicate name '" + name + "'");
    if (arity == 0)
        throw Error(ErrorCode::InvalidArgument, "predicate " + name + " must have positive arity");
    auto [it, inserted] = predicates_.emplace(name, arity);
    if (!inserted && it->second != arity) {
        throw Error(ErrorCode::ArityConflict, "predicate " + name + " declared with arity " +
                                                  std::to_string(it->second) + " and " +
                                                  std::to_string(arity));
    }
}

std::optional<std::size_t> Schema::arity(std::string_view name) const {
    auto it = predicates_.find(name);
    if (it == predicates_.end())
        return std::nullopt;
    return it->second;
}

std::string Fact::to_string() const {
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            out += ",";
        out += detail::quote_constant(args[i]);
    }
    return out + ")";
}

std::optional<std::size_t> Instance::index_of(const TupleId& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Instance::find(std::string_view predicate, const Tuple& args) const {
    auto it = by_content_.find(std::pair<std::string, Tuple>(std::string(predicate), args));
    if (it == by_content_.end())
        return std::nullopt;
    return it->second;
}

const Fact& Instance::fact(const TupleId& id) const {
    auto idx = index_of(id);
    if (!idx)
        throw Error(ErrorCode::UnknownTupleId, "no tuple with id " + id.str());
    return facts_[*idx];
}

TupleIdSet Instance::ids() const {
    TupleIdSet out;
    for (const auto& f : facts_)
        out.insert(f.id);
    return out;
}

Instance make_instance(const Schema& schema, std::span<const FactEntry> entries) {
    Instance inst;
    inst.schema_ = schema;

    std::set<TupleId> explicit_ids;
    for (const auto& e : entries) {
        auto arity = schema.arity(e.predicate);
        if (!arity)
            throw Error(ErrorCode::UnknownPredicate, "predicate " + e.predicate + " is not declared");
        if (*arity != e.args.size()) {
            throw Error(ErrorCode::ArityMismatch, e.predicate + " has arity " +
                                                      std::to_string(*arity) + ", got " +
                                                      std::to_string(e.args.size()) + " arguments");
        }
    }

    std::vector<const FactEntry*> kept;
    for (const auto& e : entries) {
        auto key = std::make_pair(e.predicate, e.args);
        if (inst.by_content_.contains(key))
            continue;
        inst.by_content_.emplace(std::move(key), kept.size());
        kept.push_back(&e);
        if (e.id && !explicit_ids.insert(*e.id).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate tuple id " + e.id->str());
    }

    std::size_t counter = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const FactEntry& e = *kept[i];
        TupleId id;
        if (e.id) {
            id = *e.id;
        } else {
            counter = std::max(counter, i + 1);
            while (explicit_ids.contains(TupleId("t" + std::to_string(counter))))
                ++counter;
            id = TupleId("t" + std::to_string(counter));
            ++counter;
        }
        inst.by_id_.emplace(id, i);
        inst.facts_.push_back(Fact{e.predicate, e.args, std::move(id), e.endogenous});
    }
    return inst;
}

Instance remove(const Instance& instance, const TupleIdSet& ids) {
    for (const auto& id : ids)
        if (!instance.contains(id))
            throw Error(ErrorCode::UnknownTupleId, "no tuple with id " + id.str());
    std::vector<FactEntry> entries;
    for (const auto& f : instance.facts())
        if (!ids.contains(f.id))
            entries.push_back({f.predicate, f.args, f.endogenous, f.id});
    return make_instance(instance.schema(), entries);
}

TupleIdSet endogenous_ids(const Instance& instance) {
    TupleIdSet out;
    for (const auto& f : instance.facts())
        if (f.endogenous)
            out.insert(f.id);
    return out;
}

TupleIdSet exogenous_ids(const Instance& instance) {
    TupleIdSet out;
    for (const auto& f : instance.facts())
        if (!f.endogenous)
            out.insert(f.id);
    return out;
}

Instance with_partition(const Instance& instance, const TupleIdSet& ids, bool endogenous) {
    for (const auto& id : ids)
        if (!instance.contains(id))
            throw Error(ErrorCode::UnknownTupleId, "no tuple with id " + id.str());
    std::vector<FactEntry> entries;
    for (const auto& f : instance.facts())
        entries.push_back({f.predicate, f.args, ids.contains(f.id) ? endogenous : f.endogenous, f.id});
    return make_instance(instance.schema(), entries);
}

namespace {

using detail::Tok;
using detail::TokenStream;

struct ParsedFact {
    FactEntry entry;
    std::size_t line;
    std::size_t column;
};

std::string read_constant(TokenStream& ts) {
    if (ts.at(Tok::Ident) || ts.at(Tok::Quoted))
        return ts.next().text;
    ts.fail(ts.peek(), "expected a constant, found " + std::string(detail::describe(ts.peek().kind)));
}

std::vector<ParsedFact> read_facts(std::string_view text) {
    TokenStream ts(detail::tokenize(text));
    std::vector<ParsedFact> out;
    while (!ts.at_end()) {
        const auto& head = ts.expect(Tok::Ident, "at start of fact");
        ParsedFact pf{{head.text, {}, true, std::nullopt}, head.line, head.column};
        ts.expect(Tok::LParen, "after predicate name");
        pf.entry.args.push_back(read_constant(ts));
        while (ts.accept(Tok::Comma))
            pf.entry.args.push_back(read_constant(ts));
        ts.expect(Tok::RParen, "to close the argument list");
        while (ts.at(Tok::At)) {
            ts.next();
            const auto& tag = ts.expect(Tok::Ident, "after '@'");
            if (tag.text == "exo") {
                pf.entry.endogenous = false;
            } else if (tag.text == "endo") {
                pf.entry.endogenous = true;
            } else if (tag.text == "id") {
                ts.expect(Tok::Equals, "after '@id'");
                const auto& id = ts.expect(Tok::Ident, "as tuple id");
                pf.entry.id = TupleId(id.text);
            } else {
                ts.fail(tag, "unknown annotation '@" + tag.text + "'");
            }
        }
        if (ts.accept(Tok::Bang)) {
            pf.entry.endogenous = false;
        } else {
            ts.expect(Tok::Dot, "at end of fact");
        }
        out.push_back(std::move(pf));
    }
    return out;
}

Instance build(const std::vector<ParsedFact>& parsed, const Schema& schema) {
    std::vector<FactEntry> entries;
    std::set<TupleId> seen;
    for (const auto& pf : parsed) {
        if (pf.entry.id && !seen.insert(*pf.entry.id).second)
            throw Error(ErrorCode::SyntaxError, "duplicate tuple id " + pf.entry.id->str(), pf.line,
                        pf.column);
        entries.push_back(pf.entry);
    }
    return make_instance(schema, entries);
}

} // namespace

Instance parse_instance(std::string_view text) {
    const auto parsed = read_facts(text);
    Schema schema;
    for (const auto& pf : parsed) {
        auto known = schema.arity(pf.entry.predicate);
        if (known && *known != pf.entry.args.size()) {
            throw Error(ErrorCode::ArityConflict,
                        pf.entry.predicate + " used with arity " + std::to_string(*known) +
                            " and " + std::to_string(pf.entry.args.size()),
                        pf.line, pf.column);
        }
        schema.declare(pf.entry.predicate, pf.entry.args.size());
    }
    return build(parsed, schema);
}

Instance parse_instance(std::string_view text, const Schema& schema) {
    const auto parsed = read_facts(text);
    for (const auto& pf : parsed) {
        auto known = schema.arity(pf.entry.predicate);
        if (!known)
            throw Error(ErrorCode::UnknownPredicate, "predicate " + pf.entry.predicate + " is not declared",
                        pf.line, pf.column);
        if (*known != pf.entry.args.size())
            throw Error(ErrorCode::ArityMismatch, pf.entry.predicate + " has arity " + std::to_string(*known),
                        pf.line, pf.column);
    }
    return build(parsed, schema);
}

std::string format_instance(const Instance& instance) {
    std::ostringstream out;
    for (const auto& f : instance.facts()) {
        out << f.to_string() << " @id=" << f.id.str();
        out << (f.endogenous ? "." : " @exo.") << '\n';
    }
    return out.str();
}

Tuple parse_tuple(std::string_view text) {
    TokenStream ts(detail::tokenize(text));
    Tuple out;
    if (ts.at_end())
        return out;
    const bool paren = ts.accept(Tok::LParen);
    if (!(paren && ts.at(Tok::RParen))) {
        out.push_back(read_constant(ts));
        while (ts.accept(Tok::Comma))
            out.push_back(read_constant(ts));
    }
    if (paren)
        ts.expect(Tok::RParen, "to close the tuple");
    if (!ts.at_end())
        ts.fail(ts.peek(), "trailing input after tuple");
    return out;
}

std::string format_tuple(const Tuple& tuple) {
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i)
            out += ",";
        out += detail::quote_constant(tuple[i]);
    }
    return out + ")";
}

std::string format_ids(const TupleIdSet& ids) {
    std::string out = "{";
    bool first = true;
    for (const auto& id : ids) {
        if (!first)
            out += ",";
        out += id.str();
        first = false;
    }
    return out + "}";
}

} // namespace qacause
