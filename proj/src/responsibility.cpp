#include "qacause/responsibility.hpp"

#include "qacause/error.hpp"

#include <charconv>

namespace qacause {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + std::string(whole) + "'");
    return v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, text));
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0)
        throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string Responsibility::to_string() const { return format_rational(value()); }

std::strong_ordering operator<=>(const Responsibility& a, const Responsibility& b) {
    // larger denominators mean smaller values; zero sorts lowest
    if (a.denominator_ == b.denominator_)
        return std::strong_ordering::equal;
    if (a.is_zero())
        return std::strong_ordering::less;
    if (b.is_zero())
        return std::strong_ordering::greater;
    return b.denominator_ <=> a.denominator_;
}

} // namespace qacause
