#pragma once

// Schemas, identified tuples and instances split into endogenous and
// exogenous facts. Instances are immutable after construction.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qacause {

using Constant = std::string;
using Tuple = std::vector<Constant>;

/// Opaque tuple label such as "t3". Ordered naturally, so t2 < t10.
class TupleId {
public:
    TupleId() = default;
    explicit TupleId(std::string value) : value_(std::move(value)) {}

    const std::string& str() const noexcept { return value_; }

    friend bool operator==(const TupleId&, const TupleId&) = default;
    friend std::strong_ordering operator<=>(const TupleId& a, const TupleId& b);

private:
    std::string value_;
};

using TupleIdSet = std::set<TupleId>;

/// Predicate names with fixed positive arities. The built-in `!=` is never declared.
class Schema {
public:
    /// Throws ArityConflict on redeclaration with a different arity.
    void declare(const std::string& name, std::size_t arity);

    std::optional<std::size_t> arity(std::string_view name) const;
    bool contains(std::string_view name) const { return arity(name).has_value(); }
    const std::map<std::string, std::size_t, std::less<>>& predicates() const { return predicates_; }

    friend bool operator==(const Schema&, const Schema&) = default;

private:
    std::map<std::string, std::size_t, std::less<>> predicates_;
};

struct Fact {
    std::string predicate;
    Tuple args;
    TupleId id;
    bool endogenous = true;

    /// `E(a,b)` form, without id or partition flag.
    std::string to_string() const;
};

/// Input row for make_instance. Missing ids are assigned as t1, t2, ... in input order.
struct FactEntry {
    std::string predicate;
    Tuple args;
    bool endogenous = true;
    std::optional<TupleId> id;
};

class Instance {
public:
    Instance() = default;

    const Schema& schema() const noexcept { return schema_; }
    /// Facts in input order; the position of a fact is its index.
    const std::vector<Fact>& facts() const noexcept { return facts_; }
    std::size_t size() const noexcept { return facts_.size(); }
    bool empty() const noexcept { return facts_.empty(); }

    bool contains(const TupleId& id) const { return by_id_.contains(id); }
    std::optional<std::size_t> index_of(const TupleId& id) const;
    std::optional<std::size_t> find(std::string_view predicate, const Tuple& args) const;
    /// Throws UnknownTupleId.
    const Fact& fact(const TupleId& id) const;
    TupleIdSet ids() const;

private:
    friend Instance make_instance(const Schema& schema, std::span<const FactEntry> entries);

    Schema schema_;
    std::vector<Fact> facts_;
    std::map<TupleId, std::size_t> by_id_;
    std::map<std::pair<std::string, Tuple>, std::size_t, std::less<>> by_content_;
};

/// Throws UnknownPredicate, ArityMismatch, InvalidArgument (duplicate explicit id).
/// Repeated (predicate, args) entries collapse to the first occurrence.
Instance make_instance(const Schema& schema, std::span<const FactEntry> entries);

/// D minus the given tuples. Surviving tuples keep their ids. Throws UnknownTupleId.
Instance remove(const Instance& instance, const TupleIdSet& ids);

TupleIdSet endogenous_ids(const Instance& instance);
TupleIdSet exogenous_ids(const Instance& instance);

/// Copy of the instance with the listed tuples moved to the given side of the partition.
Instance with_partition(const Instance& instance, const TupleIdSet& ids, bool endogenous);

/// Reads the line-oriented instance format (see docs/formats.md). The schema is
/// inferred from the facts; conflicting arities raise ArityConflict.
Instance parse_instance(std::string_view text);
/// Same, but checks every fact against a declared schema.
Instance parse_instance(std::string_view text, const Schema& schema);

/// Writes an instance back in the text format, with explicit ids.
std::string format_instance(const Instance& instance);

/// Parses "c,e", "(c,e)" or "" (the empty tuple of a Boolean query).
Tuple parse_tuple(std::string_view text);
/// Renders a tuple as "(c,e)"; the empty tuple renders as "()".
std::string format_tuple(const Tuple& tuple);

std::string format_ids(const TupleIdSet& ids);

} // namespace qacause
