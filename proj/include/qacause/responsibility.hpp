#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace qacause {

using Rational = boost::rational<std::int64_t>;

/// Parses "0", "1/3", "2" and similar. Throws InvalidArgument.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

/// Degree of responsibility: 0 for non-causes, otherwise 1/(1+m) with m the
/// size of a smallest contingency set.
class Responsibility {
public:
    Responsibility() = default;

    static Responsibility none() { return {}; }
    static Responsibility from_contingency_size(std::size_t m) { return Responsibility(m + 1); }

    bool is_zero() const noexcept { return denominator_ == 0; }
    /// Responsibility 1, i.e. an empty contingency set suffices.
    bool is_counterfactual() const noexcept { return denominator_ == 1; }
    Rational value() const { return is_zero() ? Rational(0) : Rational(1, static_cast<std::int64_t>(denominator_)); }
    /// Size of the smallest contingency set; meaningless when is_zero().
    std::size_t min_contingency_size() const noexcept { return is_zero() ? 0 : denominator_ - 1; }

    /// "0" or "1/k"; counterfactual causes render as "1".
    std::string to_string() const;

    friend bool operator==(const Responsibility&, const Responsibility&) = default;
    friend std::strong_ordering operator<=>(const Responsibility& a, const Responsibility& b);

private:
    explicit Responsibility(std::size_t denominator) : denominator_(denominator) {}
    std::size_t denominator_ = 0;
};

} // namespace qacause
