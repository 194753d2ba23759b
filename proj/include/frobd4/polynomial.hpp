#ifndef FROBD4_POLYNOMIAL_HPP
#define FROBD4_POLYNOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "frobd4/qseries.hpp"
#include "frobd4/rational.hpp"

namespace frobd4 {

namespace detail {

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const PuiseuxSeries& c) { return c.is_zero(); }
inline Exponent coeff_trunc(const Rational&) { return kExact; }
inline Exponent coeff_trunc(const PuiseuxSeries& c) { return c.trunc(); }

} // namespace detail

// Polynomial in N commuting variables with coefficients in C (Rational or
// PuiseuxSeries). For series coefficients the precision of dropped zero
// coefficients is remembered in trunc().
template <class C, std::size_t N>
class Polynomial {
public:
    using Monomial = std::array<int, N>;
    using Terms = std::map<Monomial, C>;

    Polynomial() = default;

    static Polynomial constant(const C& c)
    {
        Polynomial p;
        p.add_term(Monomial{}, c);
        return p;
    }

    static Polynomial variable(std::size_t i, const C& c = C(Rational(1)))
    {
        Monomial m{};
        m.at(i) = 1;
        Polynomial p;
        p.add_term(m, c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Exponent trunc() const { return trunc_; }

    C coeff(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(Rational(0)) : it->second;
    }

    void add_term(const Monomial& m, const C& c)
    {
        for (int e : m) {
            if (e < 0) {
                throw std::invalid_argument("negative exponent in polynomial monomial");
            }
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            it = terms_.emplace(m, c).first;
        } else {
            it->second += c;
        }
        if (detail::coeff_is_zero(it->second)) {
            trunc_ = std::min(trunc_, detail::coeff_trunc(it->second));
            terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        trunc_ = std::min(trunc_, o.trunc_);
        for (const auto& [m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        trunc_ = std::min(trunc_, o.trunc_);
        for (const auto& [m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }

    Polynomial operator-() const
    {
        Polynomial r;
        r.trunc_ = trunc_;
        for (const auto& [m, c] : terms_) {
            r.add_term(m, -c);
        }
        return r;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial r;
        r.trunc_ = std::min(a.trunc_, b.trunc_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (std::size_t i = 0; i < N; ++i) {
                    m[i] = ma[i] + mb[i];
                }
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    friend Polynomial operator*(const C& c, const Polynomial& a) { return constant(c) * a; }

    // Formal partial derivative in variable i.
    Polynomial derivative(std::size_t i) const
    {
        Polynomial r;
        r.trunc_ = trunc_;
        for (const auto& [m, c] : terms_) {
            if (m.at(i) == 0) {
                continue;
            }
            Monomial d = m;
            --d[i];
            r.add_term(d, Rational(m[i]) * c);
        }
        return r;
    }

    // Applies f to every coefficient.
    template <class F>
    Polynomial map_coefficients(F f) const
    {
        Polynomial r;
        r.trunc_ = trunc_;
        for (const auto& [m, c] : terms_) {
            r.add_term(m, f(c));
        }
        return r;
    }

    // Sum over terms of value(coefficient) * prod values[i]^m[i].
    template <class V, class Lift>
    V evaluate(const std::array<V, N>& values, Lift lift) const
    {
        V r{};
        for (const auto& [m, c] : terms_) {
            V t = lift(c);
            for (std::size_t i = 0; i < N; ++i) {
                for (int k = 0; k < m[i]; ++k) {
                    t = t * values[i];
                }
            }
            r += t;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
    Exponent trunc_ = kExact;
};

// Integrates the closed one-form sum_i g_i dx_i on a polynomial ring where
// x_i has degree degrees[i]: P = (sum_i degrees[i] x_i g_i) / deg, piece by
// piece. Throws std::invalid_argument when the form is not closed or has a
// degree-0 piece.
template <std::size_t N>
Polynomial<Rational, N> poly_integrate(const std::array<Polynomial<Rational, N>, N>& form,
                                       const std::array<Rational, N>& degrees)
{
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            if (!(form[i].derivative(j) == form[j].derivative(i))) {
                throw std::invalid_argument("one-form is not closed");
            }
        }
    }
    // Euler operator term by term: x_i g_i lands in a piece of degree deg.
    Polynomial<Rational, N> p;
    for (std::size_t i = 0; i < N; ++i) {
        for (const auto& [m, c] : form[i].terms()) {
            auto lifted = m;
            ++lifted[i];
            Rational deg = 0;
            for (std::size_t k = 0; k < N; ++k) {
                deg += degrees[k] * lifted[k];
            }
            if (deg == 0) {
                throw std::invalid_argument("one-form has a degree-0 component");
            }
            p.add_term(lifted, degrees[i] * c / deg);
        }
    }
    return p;
}

template <std::size_t N>
Polynomial<Rational, N> poly_integrate(const std::array<Polynomial<Rational, N>, N>& form)
{
    std::array<Rational, N> ones;
    ones.fill(Rational(1));
    return poly_integrate(form, ones);
}

} // namespace frobd4

#endif
