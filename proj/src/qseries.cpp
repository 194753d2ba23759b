#include "frobd4/qseries.hpp"

#include <stdexcept>
#include <vector>

namespace frobd4 {

Exponent to_exponent(const Rational& e)
{
    Rational scaled = e * kExponentDenominator;
    if (!is_integer(scaled)) {
        throw std::domain_error("exponent " + to_string(e) + " is not a multiple of 1/24");
    }
    if (!scaled.get_num().fits_slong_p()) {
        throw std::overflow_error("exponent out of range");
    }
    return scaled.get_num().get_si();
}

Rational exponent_value(Exponent e) { return make_rational(e, kExponentDenominator); }

std::string exponent_string(Exponent e)
{
    if (e == kExact) {
        return "inf";
    }
    return to_string(exponent_value(e));
}

Exponent add_exponents(Exponent a, Exponent b)
{
    if (a == kExact || b == kExact) {
        return kExact;
    }
    return a + b;
}

Exponent product_trunc(Exponent va, Exponent ta, Exponent vb, Exponent tb)
{
    return std::min(add_exponents(ta, vb), add_exponents(tb, va));
}

PuiseuxSeries::PuiseuxSeries(const Rational& constant)
{
    if (constant != 0) {
        terms_.emplace(0, constant);
    }
}

PuiseuxSeries::PuiseuxSeries(Terms terms, Exponent trunc) : trunc_(trunc)
{
    for (auto& [e, c] : terms) {
        if (e < trunc && c != 0) {
            terms_.emplace(e, std::move(c));
        }
    }
}

PuiseuxSeries PuiseuxSeries::monomial(const Rational& coeff, Exponent e, Exponent trunc)
{
    PuiseuxSeries s;
    s.trunc_ = trunc;
    if (coeff != 0 && e < trunc) {
        s.terms_.emplace(e, coeff);
    }
    return s;
}

Exponent PuiseuxSeries::valuation() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

Rational PuiseuxSeries::coeff(Exponent e) const
{
    if (e >= trunc_) {
        throw std::out_of_range("coefficient at q^" + exponent_string(e) + " lies beyond the truncation");
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational PuiseuxSeries::leading_coeff() const { return terms_.empty() ? Rational(0) : terms_.begin()->second; }

PuiseuxSeries PuiseuxSeries::truncated(Exponent t) const
{
    PuiseuxSeries s;
    s.trunc_ = std::min(trunc_, t);
    for (auto it = terms_.begin(); it != terms_.end() && it->first < s.trunc_; ++it) {
        s.terms_.insert(*it);
    }
    return s;
}

void PuiseuxSeries::add_term(Exponent e, const Rational& c)
{
    if (e >= trunc_ || c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

PuiseuxSeries& PuiseuxSeries::operator+=(const PuiseuxSeries& o)
{
    if (o.trunc_ < trunc_) {
        trunc_ = o.trunc_;
        terms_.erase(terms_.lower_bound(trunc_), terms_.end());
    }
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

PuiseuxSeries& PuiseuxSeries::operator-=(const PuiseuxSeries& o)
{
    if (o.trunc_ < trunc_) {
        trunc_ = o.trunc_;
        terms_.erase(terms_.lower_bound(trunc_), terms_.end());
    }
    for (const auto& [e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

PuiseuxSeries& PuiseuxSeries::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) {
        v *= c;
    }
    return *this;
}

PuiseuxSeries PuiseuxSeries::operator-() const
{
    PuiseuxSeries s = *this;
    for (auto& [e, v] : s.terms_) {
        v = -v;
    }
    return s;
}

PuiseuxSeries PuiseuxSeries::shifted(Exponent e) const
{
    PuiseuxSeries s;
    s.trunc_ = add_exponents(trunc_, e);
    for (const auto& [x, c] : terms_) {
        s.terms_.emplace_hint(s.terms_.end(), x + e, c);
    }
    return s;
}

PuiseuxSeries PuiseuxSeries::inverse() const
{
    if (terms_.empty()) {
        throw std::domain_error("division by a series with no known nonzero term");
    }
    const Exponent v = valuation();
    const Rational& lead = terms_.begin()->second;
    if (is_exact()) {
        if (terms_.size() != 1) {
            throw std::domain_error("inverse of an exact non-monomial series needs a truncation");
        }
        return monomial(1 / lead, -v);
    }
    // Work with b = q^{-v} * this, which has unit constant term.
    const Exponent t = trunc_ - v;
    std::vector<std::pair<Exponent, Rational>> tail;
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
        tail.emplace_back(it->first - v, it->second);
    }
    const Rational inv_lead = 1 / lead;
    std::vector<Rational> d(static_cast<std::size_t>(t));
    std::vector<bool> nonzero(static_cast<std::size_t>(t), false);
    d[0] = inv_lead;
    nonzero[0] = true;
    for (Exponent n = 1; n < t; ++n) {
        Rational acc = 0;
        for (const auto& [k, bk] : tail) {
            if (k > n) {
                break;
            }
            if (nonzero[static_cast<std::size_t>(n - k)]) {
                acc += bk * d[static_cast<std::size_t>(n - k)];
            }
        }
        if (acc != 0) {
            d[static_cast<std::size_t>(n)] = -inv_lead * acc;
            nonzero[static_cast<std::size_t>(n)] = true;
        }
    }
    PuiseuxSeries s;
    s.trunc_ = t - v;
    for (Exponent n = 0; n < t; ++n) {
        if (nonzero[static_cast<std::size_t>(n)]) {
            s.terms_.emplace_hint(s.terms_.end(), n - v, std::move(d[static_cast<std::size_t>(n)]));
        }
    }
    return s;
}

PuiseuxSeries PuiseuxSeries::pow(long n) const
{
    if (n < 0) {
        return inverse().pow(-n);
    }
    PuiseuxSeries result(Rational(1));
    PuiseuxSeries base = *this;
    while (n > 0) {
        if (n & 1) {
            result = result * base;
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }

PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b) { return a -= b; }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b)
{
    const Exponent t = product_trunc(a.valuation(), a.trunc(), b.valuation(), b.trunc());
    PuiseuxSeries::Terms acc;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            const Exponent e = ea + eb;
            if (e >= t) {
                break;
            }
            auto [it, inserted] = acc.try_emplace(e, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
            }
        }
    }
    return PuiseuxSeries(std::move(acc), t);
}

PuiseuxSeries operator*(const Rational& c, PuiseuxSeries a) { return a *= c; }

PuiseuxSeries operator*(PuiseuxSeries a, const Rational& c) { return a *= c; }

PuiseuxSeries operator/(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a * b.inverse(); }

PuiseuxSeries q_derive(const PuiseuxSeries& f)
{
    PuiseuxSeries::Terms terms;
    for (const auto& [e, c] : f.terms()) {
        if (e != 0) {
            terms.emplace_hint(terms.end(), e, c * exponent_value(e));
        }
    }
    return PuiseuxSeries(std::move(terms), f.trunc());
}

PuiseuxSeries serre_derivative(const PuiseuxSeries& f, const Rational& k)
{
    PuiseuxSeries d = q_derive(f);
    if (k == 0 || f.is_zero()) {
        return d;
    }
    if (f.is_exact()) {
        throw std::domain_error("Serre derivative of an exact series needs a truncation");
    }
    const Exponent order = f.trunc() - f.valuation();
    return d - (k / 12) * (eisenstein(2, order) * f);
}

std::optional<NamedSeriesId> parse_named_series(const std::string& name)
{
    static const std::map<std::string, NamedSeriesId> table = {
        {"eta", NamedSeriesId::eta},       {"E2", NamedSeriesId::E2},
        {"E4", NamedSeriesId::E4},         {"E6", NamedSeriesId::E6},
        {"theta2", NamedSeriesId::theta2}, {"theta3", NamedSeriesId::theta3},
        {"theta4", NamedSeriesId::theta4},
    };
    auto it = table.find(name);
    if (it == table.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string to_string(NamedSeriesId id)
{
    switch (id) {
    case NamedSeriesId::eta:
        return "eta";
    case NamedSeriesId::E2:
        return "E2";
    case NamedSeriesId::E4:
        return "E4";
    case NamedSeriesId::E6:
        return "E6";
    case NamedSeriesId::theta2:
        return "theta2";
    case NamedSeriesId::theta3:
        return "theta3";
    case NamedSeriesId::theta4:
        return "theta4";
    }
    throw std::invalid_argument("unknown named series");
}

namespace {

// prod_{n>=1} (1 - q^n) via the pentagonal number theorem, exponents < order.
PuiseuxSeries euler_product(Exponent order)
{
    PuiseuxSeries::Terms terms;
    for (long k = 0;; ++k) {
        bool any = false;
        for (long j : {k, -k}) {
            if (k == 0 && j < 0) {
                continue;
            }
            const Exponent e = kExponentDenominator * (j * (3 * j - 1) / 2);
            if (e < order) {
                terms[e] = (k % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any) {
            break;
        }
    }
    return PuiseuxSeries(std::move(terms), order);
}

Integer divisor_power_sum(long n, unsigned long p)
{
    Integer sum = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            Integer a;
            mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(d), p);
            sum += a;
            if (d * d != n) {
                Integer b;
                mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(n / d), p);
                sum += b;
            }
        }
    }
    return sum;
}

PuiseuxSeries theta_series(int kind, Exponent order)
{
    PuiseuxSeries::Terms terms;
    if (kind == 2) {
        for (long m = 1; 3 * m * m < order; m += 2) {
            terms[3 * m * m] = 2;
        }
    } else {
        if (order > 0) {
            terms[0] = 1;
        }
        for (long n = 1; 12 * n * n < order; ++n) {
            terms[12 * n * n] = (kind == 4 && n % 2 == 1) ? -2 : 2;
        }
    }
    return PuiseuxSeries(std::move(terms), order);
}

} // namespace

PuiseuxSeries eisenstein(int k, Exponent order)
{
    long factor = 0;
    switch (k) {
    case 2:
        factor = -24;
        break;
    case 4:
        factor = 240;
        break;
    case 6:
        factor = -504;
        break;
    default:
        throw std::invalid_argument("Eisenstein series E_" + std::to_string(k) + " is not provided");
    }
    PuiseuxSeries::Terms terms;
    if (order > 0) {
        terms[0] = 1;
    }
    for (long n = 1; kExponentDenominator * n < order; ++n) {
        terms[kExponentDenominator * n] = Rational(factor * divisor_power_sum(n, static_cast<unsigned long>(k - 1)));
    }
    return PuiseuxSeries(std::move(terms), order);
}

PuiseuxSeries eta_power(long n, Exponent order)
{
    if (order - n <= 0) {
        return PuiseuxSeries::zero(order);
    }
    return euler_product(order - n).pow(n).shifted(n);
}

PuiseuxSeries named_series(NamedSeriesId id, Exponent order)
{
    if (order <= 0) {
        throw std::invalid_argument("series order must be positive");
    }
    switch (id) {
    case NamedSeriesId::eta:
        return eta_power(1, order);
    case NamedSeriesId::E2:
        return eisenstein(2, order);
    case NamedSeriesId::E4:
        return eisenstein(4, order);
    case NamedSeriesId::E6:
        return eisenstein(6, order);
    case NamedSeriesId::theta2:
        return theta_series(2, order);
    case NamedSeriesId::theta3:
        return theta_series(3, order);
    case NamedSeriesId::theta4:
        return theta_series(4, order);
    }
    throw std::invalid_argument("unknown named series");
}

PuiseuxSeries xi(int kind, Exponent order)
{
    if (kind < 2 || kind > 4) {
        throw std::invalid_argument("xi kind must be 2, 3 or 4");
    }
    const Exponent v = kind == 2 ? 3 : 0;
    PuiseuxSeries theta = theta_series(kind, order + v);
    return Rational(2) * (q_derive(theta) / theta);
}

std::optional<Exponent> first_difference(const PuiseuxSeries& a, const PuiseuxSeries& b)
{
    PuiseuxSeries d = a - b;
    if (d.is_zero()) {
        return std::nullopt;
    }
    return d.valuation();
}

bool agrees_to(const PuiseuxSeries& a, const PuiseuxSeries& b, Exponent order)
{
    if (a.trunc() < order || b.trunc() < order) {
        return false;
    }
    PuiseuxSeries d = a - b;
    return d.is_zero() || d.valuation() >= order;
}

namespace {

std::string q_power(Exponent e)
{
    if (e == kExponentDenominator) {
        return "q";
    }
    return "q^{" + exponent_string(e) + "}";
}

} // namespace

std::string to_string(const PuiseuxSeries& f)
{
    std::string out;
    for (const auto& [e, c] : f.terms()) {
        Rational mag = abs(c);
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (e == 0) {
            out += to_string(mag);
        } else {
            if (mag != 1) {
                out += to_string(mag) + " ";
            }
            out += q_power(e);
        }
    }
    if (!f.is_exact()) {
        if (out.empty()) {
            out = "0";
        }
        out += " + O(" + q_power(f.trunc()) + ")";
    } else if (out.empty()) {
        out = "0";
    }
    return out;
}

} // namespace frobd4
