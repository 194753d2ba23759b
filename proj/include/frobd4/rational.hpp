#ifndef FROBD4_RATIONAL_HPP
#define FROBD4_RATIONAL_HPP

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace frobd4 {

// Exact rationals. mpq_class keeps values canonical (lowest terms, positive
// denominator) as long as every constructor goes through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// Parses "N", "-N" or "N/D" (surrounding whitespace not allowed).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

} // namespace frobd4

#endif
