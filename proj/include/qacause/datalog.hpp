#pragma once

// Positive Datalog programs with a distinguished answer predicate. CQs and
// UCQs are programs whose answer predicate is defined by extensional rules.

#include "qacause/relational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qacause {

inline constexpr std::string_view kInequality = "!=";

struct Term {
    enum class Kind { Variable, Constant };

    Kind kind = Kind::Variable;
    std::string text;

    static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
    static Term constant(std::string value) { return {Kind::Constant, std::move(value)}; }
    bool is_variable() const noexcept { return kind == Kind::Variable; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> terms;

    bool is_builtin() const noexcept { return predicate == kInequality; }
    std::string to_string() const;

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Rule {
    Atom head;
    std::vector<Atom> body;

    std::string to_string() const;
};

/// Variable-free atom, used for observations and goals.
struct GroundAtom {
    std::string predicate;
    Tuple args;

    std::string to_string() const;
    friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

/// Throws UnsafeRule or SyntaxError (empty body, built-in head, bad ≠ arity).
void validate_rule(const Rule& rule);

class Program {
public:
    /// Validates safety, arity consistency and that the answer predicate has a rule.
    /// Throws UnsafeRule, ArityConflict or SyntaxError.
    Program(std::vector<Rule> rules, std::string answer_predicate);

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const std::string& answer_predicate() const noexcept { return answer_predicate_; }
    std::size_t answer_arity() const;
    bool is_boolean() const { return answer_arity() == 0; }

    /// Predicates defined by some rule head, with arities.
    const std::map<std::string, std::size_t, std::less<>>& intensional() const noexcept { return idb_; }
    /// Predicates only read in rule bodies, with arities.
    const std::map<std::string, std::size_t, std::less<>>& extensional() const noexcept { return edb_; }
    std::optional<std::size_t> arity(std::string_view predicate) const;

    /// A single rule for the answer predicate whose body holds only
    /// extensional atoms and inequalities.
    bool is_conjunctive() const;

    std::string to_string() const;

private:
    std::vector<Rule> rules_;
    std::string answer_predicate_;
    std::map<std::string, std::size_t, std::less<>> idb_;
    std::map<std::string, std::size_t, std::less<>> edb_;
};

/// Reads rules of the form `H(x,y) <- B(x,z), C(z,y), x != y.`
/// Bare identifiers are variables; quoted strings and numerals are constants.
/// Without an explicit answer predicate, `Ans` is used if defined, then `ans`.
Program parse_program(std::string_view text, std::optional<std::string> answer_predicate = std::nullopt);

/// Reads a comma-separated conjunction of ground atoms, e.g. `ans` or `P(c,e), S(a1)`.
/// Arguments are constants.
std::vector<GroundAtom> parse_ground_atoms(std::string_view text);

/// Boolean query true exactly when `answer` is an answer of `program`. Adds a fresh
/// propositional predicate defined by a single rule over the original answer predicate.
Program boolean_specialization(const Program& program, const Tuple& answer);

using AnswerSet = std::set<Tuple>;

/// Answers of the minimal model of program ∪ instance. A Boolean query yields
/// {()} when true and {} when false. Throws SchemaMismatch.
AnswerSet evaluate(const Program& program, const Instance& instance);

/// Throws ArityMismatch when the tuple length differs from the answer arity.
bool holds(const Program& program, const Instance& instance, const Tuple& answer);

/// Every subset-minimal S of the instance's facts with `answer` in evaluate(program, S).
/// Ordered by size, then by ids. Throws NotAnAnswer.
std::vector<TupleIdSet> minimal_supports(const Program& program, const Instance& instance,
                                         const Tuple& answer);

} // namespace qacause
