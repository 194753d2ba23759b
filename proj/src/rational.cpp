#include "frobd4/rational.hpp"

#include <stdexcept>

namespace frobd4 {

Rational make_rational(long num, long den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

Integer parse_integer(std::string_view text)
{
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        i = 1;
    }
    if (i == text.size()) {
        throw std::invalid_argument("malformed integer: '" + std::string(text) + "'");
    }
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] < '0' || text[j] > '9') {
            throw std::invalid_argument("malformed integer: '" + std::string(text) + "'");
        }
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return Integer(digits, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Rational& r) { return r.get_str(10); }

} // namespace frobd4
