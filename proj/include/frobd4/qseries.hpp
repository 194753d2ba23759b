#ifndef FROBD4_QSERIES_HPP
#define FROBD4_QSERIES_HPP

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "frobd4/rational.hpp"

namespace frobd4 {

// Exponents of q are stored as integers counting units of 1/24.
using Exponent = long;

inline constexpr long kExponentDenominator = 24;
// Truncation value of a series that is known exactly (a finite sum).
inline constexpr Exponent kExact = LONG_MAX;

// Converts a rational exponent to 1/24 units; throws if it is off the grid.
Exponent to_exponent(const Rational& e);
Rational exponent_value(Exponent e);
std::string exponent_string(Exponent e);

// Saturating addition that keeps kExact absorbing.
Exponent add_exponents(Exponent a, Exponent b);

// Sound truncation of a product of two series with valuations va, vb and
// truncations ta, tb (valuation of a zero series is its truncation).
Exponent product_trunc(Exponent va, Exponent ta, Exponent vb, Exponent tb);

// A truncated Puiseux series sum_{e < trunc} c_e q^{e/24}. Terms at or above
// trunc are unknown. Stored coefficients are never zero.
class PuiseuxSeries {
public:
    using Terms = std::map<Exponent, Rational>;

    PuiseuxSeries() = default;
    explicit PuiseuxSeries(const Rational& constant);
    PuiseuxSeries(Terms terms, Exponent trunc);

    static PuiseuxSeries monomial(const Rational& coeff, Exponent e, Exponent trunc = kExact);
    static PuiseuxSeries zero(Exponent trunc) { return PuiseuxSeries(Terms{}, trunc); }

    const Terms& terms() const { return terms_; }
    Exponent trunc() const { return trunc_; }
    bool is_exact() const { return trunc_ == kExact; }
    bool is_zero() const { return terms_.empty(); }
    // Smallest stored exponent; the truncation for a zero series.
    Exponent valuation() const;
    Rational coeff(Exponent e) const;
    Rational leading_coeff() const;

    // Drops terms with exponent >= t and lowers trunc to min(trunc, t).
    PuiseuxSeries truncated(Exponent t) const;

    PuiseuxSeries& operator+=(const PuiseuxSeries& o);
    PuiseuxSeries& operator-=(const PuiseuxSeries& o);
    PuiseuxSeries& operator*=(const Rational& c);
    PuiseuxSeries operator-() const;

    PuiseuxSeries inverse() const;
    PuiseuxSeries pow(long n) const;
    // q^{e/24} * this
    PuiseuxSeries shifted(Exponent e) const;

    bool operator==(const PuiseuxSeries& o) const = default;

private:
    void add_term(Exponent e, const Rational& c);

    Terms terms_;
    Exponent trunc_ = kExact;
};

PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b);
PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b);
PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator*(const Rational& c, PuiseuxSeries a);
PuiseuxSeries operator*(PuiseuxSeries a, const Rational& c);
PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b);

// q d/dq
PuiseuxSeries q_derive(const PuiseuxSeries& f);

// f' - (k/12) E2 f
PuiseuxSeries serre_derivative(const PuiseuxSeries& f, const Rational& k);

enum class NamedSeriesId { eta, E2, E4, E6, theta2, theta3, theta4 };

std::optional<NamedSeriesId> parse_named_series(const std::string& name);
std::string to_string(NamedSeriesId id);

// Exact coefficients for every exponent below order; trunc == order.
PuiseuxSeries named_series(NamedSeriesId id, Exponent order);

// eta^n with trunc exactly order (n may be negative).
PuiseuxSeries eta_power(long n, Exponent order);

// Eisenstein series E_k for k in {2, 4, 6}.
PuiseuxSeries eisenstein(int k, Exponent order);

// 2 q (d/dq) log theta_kind for kind in {2, 3, 4}.
PuiseuxSeries xi(int kind, Exponent order);

// First exponent where the two series differ (within their common trunc),
// or nullopt when they agree there.
std::optional<Exponent> first_difference(const PuiseuxSeries& a, const PuiseuxSeries& b);

// True when a and b agree below order and both are known at least to order.
bool agrees_to(const PuiseuxSeries& a, const PuiseuxSeries& b, Exponent order);

std::string to_string(const PuiseuxSeries& f);

} // namespace frobd4

#endif
