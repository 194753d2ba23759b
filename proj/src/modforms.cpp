#include "frobd4/modforms.hpp"

#include <algorithm>
#include <stdexcept>

#include "frobd4/jacobi.hpp"

namespace frobd4 {

namespace {

constexpr Exponent Q = kExponentDenominator;

using SeriesMatrix2 = std::array<std::array<PuiseuxSeries, 2>, 2>;

SeriesMatrix2 mul(const SeriesMatrix2& a, const SeriesMatrix2& b)
{
    SeriesMatrix2 r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return r;
}

SeriesMatrix2 transpose(const SeriesMatrix2& a)
{
    SeriesMatrix2 r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r[i][j] = a[j][i];
        }
    }
    return r;
}

// One branch q^rho sum c_n q^n of the Kaneko-Zagier equation, c_0 = 1.
PuiseuxSeries kz_branch(const Rational& k, const Rational& rho, Exponent order)
{
    const Rational alpha = (k + 1) / 6;
    const Rational beta = k * (k + 1) / 144;
    const Exponent start = to_exponent(rho);
    const long n_max = (order - start + Q - 1) / Q; // coefficients c_0 .. c_{n_max-1}
    PuiseuxSeries::Terms terms;
    if (n_max <= 0) {
        return PuiseuxSeries(terms, order);
    }
    const PuiseuxSeries e2 = eisenstein(2, n_max * Q);
    const PuiseuxSeries e4 = eisenstein(4, n_max * Q);
    const PuiseuxSeries p = e2 * e2 - e4;
    std::vector<Rational> c(static_cast<std::size_t>(n_max));
    c[0] = 1;
    for (long n = 1; n < n_max; ++n) {
        const Rational x = rho + n;
        const Rational denom = x * (x - alpha);
        if (denom == 0) {
            throw std::domain_error("Kaneko-Zagier recursion degenerates at exponent " + to_string(x));
        }
        Rational acc = 0;
        for (long j = 1; j <= n; ++j) {
            const Rational& cn = c[static_cast<std::size_t>(n - j)];
            if (cn == 0) {
                continue;
            }
            acc += alpha * e2.coeff(j * Q) * (x - j) * cn - beta * p.coeff(j * Q) * cn;
        }
        c[static_cast<std::size_t>(n)] = acc / denom;
    }
    for (long n = 0; n < n_max; ++n) {
        terms.emplace(start + n * Q, c[static_cast<std::size_t>(n)]);
    }
    return PuiseuxSeries(terms, order);
}

void require_kz_range(const Rational& k)
{
    if (k <= 0 || k >= 4) {
        throw std::domain_error("Kaneko-Zagier solutions are provided for 0 < k < 4, got " + to_string(k));
    }
}

long eta_exponent_for(const Rational& alpha)
{
    const Rational e = 24 * alpha;
    if (!is_integer(e)) {
        throw std::domain_error("24 alpha is not an integer");
    }
    return e.get_num().get_si();
}

} // namespace

KZSolution kz_solve(const Rational& k, Exponent order)
{
    require_kz_range(k);
    if (order <= 0) {
        throw std::invalid_argument("order must be positive");
    }
    const Rational alpha = (k + 1) / 6;
    to_exponent(alpha);
    return KZSolution{k, alpha, kz_branch(k, 0, order), kz_branch(k, alpha, order)};
}

PuiseuxSeries kz_residual(const PuiseuxSeries& f, const Rational& k)
{
    PuiseuxSeries lhs = serre_derivative(serre_derivative(f, k), k + 2);
    const Exponent order = std::max<Exponent>(f.trunc() - f.valuation(), 1);
    return lhs - (k * (k + 2) / 144) * (eisenstein(4, order) * f);
}

WronskianResult kz_wronskian(const Rational& k, Exponent order)
{
    const KZSolution s = kz_solve(k, order);
    PuiseuxSeries det = s.f1 * serre_derivative(s.f2, k) - s.f2 * serre_derivative(s.f1, k);
    PuiseuxSeries expected = s.alpha * eta_power(eta_exponent_for(s.alpha), order);
    VerificationReport report = compare_series("wronskian k=" + to_string(k), det, expected, order);
    return WronskianResult{std::move(det), std::move(expected), std::move(report)};
}

DualityResult duality_pairing(const Rational& k, Exponent order)
{
    require_kz_range(k);
    // eta^{-24} lowers valuations by one power of q.
    const Exponent inner = order + Q;
    const KZSolution a = kz_solve(k, inner);
    const KZSolution b = kz_solve(4 - k, inner);
    auto frame = [](const KZSolution& s) {
        SeriesMatrix2 m;
        m[0][0] = (-2 * s.k) * s.f1;
        m[0][1] = (-2 * s.k) * s.f2;
        m[1][0] = serre_derivative(s.f1, s.k);
        m[1][1] = serre_derivative(s.f2, s.k);
        return m;
    };
    const PuiseuxSeries e4 = eisenstein(4, inner);
    const PuiseuxSeries e6 = eisenstein(6, inner);
    const PuiseuxSeries inv = eta_power(-24, inner);
    const Rational c = make_rational(-1, 24);
    SeriesMatrix2 middle;
    middle[0][0] = (c * c) * (inv * e4 * e4);
    middle[0][1] = c * (inv * e6);
    middle[1][0] = middle[0][1];
    middle[1][1] = inv * e4;
    const SeriesMatrix2 product = mul(mul(transpose(frame(a)), middle), frame(b));

    DualityResult result;
    result.expected = {{{12 * k * (4 - k), Rational(0)}, {Rational(0), (k + 1) * (5 - k) / 36}}};
    std::vector<VerificationReport> parts;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const PuiseuxSeries& p = product[i][j];
            result.matrix[i][j] = p.trunc() > 0 ? p.coeff(0) : Rational(0);
            parts.push_back(compare_series("entry " + std::to_string(i) + std::to_string(j), p,
                                           PuiseuxSeries(result.expected[i][j]), order));
        }
    }
    result.report = combine("duality k=" + to_string(k), order, parts);
    return result;
}

PuiseuxSeries eta4_chi_q(int i, Exponent order)
{
    return (q_part(character(i, order)) * eta_power(4, order + 4)).truncated(order);
}

PuiseuxSeries eta_log_derivative(Exponent order)
{
    const PuiseuxSeries eta = eta_power(1, order + 1);
    return (q_derive(eta) / eta).truncated(order);
}

std::array<PuiseuxSeries, 3> halphen_residuals(const PuiseuxSeries& x2, const PuiseuxSeries& x3,
                                               const PuiseuxSeries& x4)
{
    return {q_derive(x2) - (x2 * x3 + x2 * x4 - x3 * x4), q_derive(x3) - (x2 * x3 - x2 * x4 + x3 * x4),
            q_derive(x4) - (x3 * x4 + x2 * x4 - x2 * x3)};
}

std::array<PuiseuxSeries, 3> halphen_residuals(Exponent order)
{
    return halphen_residuals(xi(2, order), xi(3, order), xi(4, order));
}

std::vector<VerificationReport> halphen_checks(Exponent order)
{
    std::vector<VerificationReport> out;
    const auto res = halphen_residuals(order);
    const char* names[] = {"halphen xi2'", "halphen xi3'", "halphen xi4'"};
    for (int i = 0; i < 3; ++i) {
        out.push_back(check_zero(names[i], res[static_cast<std::size_t>(i)], order));
    }
    return out;
}

std::vector<VerificationReport> halphen_symmetric_checks(Exponent order)
{
    std::vector<VerificationReport> out;
    const PuiseuxSeries x2 = xi(2, order);
    const PuiseuxSeries x3 = xi(3, order);
    const PuiseuxSeries x4 = xi(4, order);
    const PuiseuxSeries h1 = x2 + x3 + x4;
    const PuiseuxSeries h2 = x2 * x3 + x2 * x4 + x3 * x4;
    const PuiseuxSeries h3 = x2 * x3 * x4;
    out.push_back(compare_series("halphen h2 - h1^2/3 = -E4/48", h2 - make_rational(1, 3) * (h1 * h1),
                                 make_rational(-1, 48) * eisenstein(4, order), order));
    out.push_back(compare_series("halphen h3 - h1 h2/3 + 2 h1^3/27 = E6/864",
                                 h3 - make_rational(1, 3) * (h1 * h2) + make_rational(2, 27) * (h1 * h1 * h1),
                                 make_rational(1, 864) * eisenstein(6, order), order));
    return out;
}

std::vector<VerificationReport> char_identities(Exponent order)
{
    const PuiseuxSeries a = eta4_chi_q(0, order);
    const PuiseuxSeries b = eta4_chi_q(1, order);
    const PuiseuxSeries l = eta_log_derivative(order);
    const PuiseuxSeries x2 = xi(2, order);
    const PuiseuxSeries x3 = xi(3, order);
    const PuiseuxSeries x4 = xi(4, order);
    std::vector<VerificationReport> out;
    out.push_back(compare_series("(eta^4 chi0)' relation", q_derive(a),
                                 Rational(4) * (a * l) - make_rational(1, 6) * (a * a) + make_rational(1, 2) * (b * b),
                                 order));
    out.push_back(compare_series("(eta^4 chi1)' relation", q_derive(b),
                                 Rational(4) * (b * l) + make_rational(1, 3) * (a * b), order));
    out.push_back(compare_series("(eta'/eta)' relation", q_derive(l),
                                 Rational(2) * (l * l) - make_rational(1, 288) * (a * a + Rational(3) * (b * b)),
                                 order));
    out.push_back(compare_series("E2 = 24 eta'/eta", eisenstein(2, order), Rational(24) * l, order));
    out.push_back(compare_series("E4 in characters", eisenstein(4, order), a * a + Rational(3) * (b * b), order));
    out.push_back(compare_series("E6 in characters", eisenstein(6, order), a * a * a - Rational(9) * (a * b * b),
                                 order));
    out.push_back(compare_series("eta^4 chi0 = 4 xi2 - 2 xi3 - 2 xi4", a,
                                 Rational(4) * x2 - Rational(2) * x3 - Rational(2) * x4, order));
    out.push_back(compare_series("eta^4 chi1 = 2 xi3 - 2 xi4", b, Rational(2) * x3 - Rational(2) * x4, order));
    out.push_back(compare_series("eta'/eta = (xi2 + xi3 + xi4)/6", l, make_rational(1, 6) * (x2 + x3 + x4), order));
    return out;
}

std::vector<VerificationReport> a_matrix_checks(Exponent order)
{
    // negative eta powers and chi0 ~ q^{-1/6} eat into the precision
    const Exponent inner = order + 2 * Q;
    const PuiseuxSeries c0 = q_part(character(0, inner));
    const PuiseuxSeries c1 = q_part(character(1, inner));
    const PuiseuxSeries em2 = eta_power(-2, inner);
    const PuiseuxSeries em4 = eta_power(-4, inner);
    SeriesMatrix2 a1{{{c0, c1}, {em4 * q_derive(c0), em4 * q_derive(c1)}}};
    SeriesMatrix2 a0{{{em2, PuiseuxSeries(Rational(0))}, {PuiseuxSeries(Rational(0)), Rational(6) * em2}}};
    const SeriesMatrix2 a2 = mul(a0, a1);

    std::vector<VerificationReport> out;
    const PuiseuxSeries det = a1[0][0] * a1[1][1] - a1[0][1] * a1[1][0];
    out.push_back(compare_series("det A1 = 4", det, PuiseuxSeries(Rational(4)), order));

    const PuiseuxSeries e2 = eisenstein(2, inner);
    const PuiseuxSeries e4 = eisenstein(4, inner);
    const PuiseuxSeries e6 = eisenstein(6, inner);
    SeriesMatrix2 gamma{{{make_rational(1, 12) * e2, make_rational(-1, 6) * eta_power(4, inner)},
                         {make_rational(-1, 3) * (em4 * e4), make_rational(1, 12) * e2}}};
    const SeriesMatrix2 ga = mul(gamma, a2);
    std::vector<VerificationReport> ode;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            ode.push_back(check_zero("entry " + std::to_string(i) + std::to_string(j), q_derive(a2[i][j]) + ga[i][j],
                                     order));
        }
    }
    out.push_back(combine("A2' + gamma A2 = 0", order, ode));

    const PuiseuxSeries em8 = eta_power(-8, inner);
    const PuiseuxSeries em12 = eta_power(-12, inner);
    SeriesMatrix2 gram{{{Rational(6) * (em12 * e4 * e4), Rational(6) * (em8 * e6)},
                        {Rational(6) * (em8 * e6), Rational(6) * (em4 * e4)}}};
    const SeriesMatrix2 cong = mul(mul(transpose(a2), gram), a2);
    const Rational expected[2][2] = {{Rational(6 * 6 * 6 * 48), Rational(0)}, {Rational(0), Rational(6 * 6 * 6 * 16)}};
    std::vector<VerificationReport> parts;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            parts.push_back(compare_series("entry " + std::to_string(i) + std::to_string(j), cong[i][j],
                                           PuiseuxSeries(expected[i][j]), order));
        }
    }
    out.push_back(combine("A2^T G A2 = diag(6^3 48, 6^3 16)", order, parts));
    return out;
}

std::vector<VerificationReport> kz_checks(Exponent order)
{
    std::vector<VerificationReport> out;
    const Rational two(2);
    const PuiseuxSeries a = eta4_chi_q(0, order);
    const PuiseuxSeries b = eta4_chi_q(1, order);
    out.push_back(check_zero("KZ k=2 for eta^4 chi0", kz_residual(a, two), order));
    out.push_back(check_zero("KZ k=2 for eta^4 chi1", kz_residual(b, two), order));
    const KZSolution s = kz_solve(two, order);
    out.push_back(compare_series("f1(k=2) = eta^4 chi0", s.f1, a, order));
    out.push_back(compare_series("8 f2(k=2) = eta^4 chi1", Rational(8) * s.f2, b, order));
    for (int k2 = 1; k2 <= 7; ++k2) {
        const Rational k = make_rational(k2, 2);
        const KZSolution sol = kz_solve(k, std::max<Exponent>(order, 2 * Q));
        const Rational a1 = 12 * k * (k + 1) / (5 - k);
        const Rational b1 = 4 * (k + 1) * (2 * k - 1) / (k + 7);
        const bool lead_ok = sol.f1.coeff(Q) == a1 && sol.f2.coeff(to_exponent(sol.alpha) + Q) == b1;
        out.push_back(lead_ok ? pass_report("KZ leading terms k=" + to_string(k), Q)
                              : fail_report("KZ leading terms k=" + to_string(k), Q,
                                            FailureDetail{"1", std::nullopt,
                                                          to_string(sol.f1.coeff(Q)) + ", " +
                                                              to_string(sol.f2.coeff(to_exponent(sol.alpha) + Q)),
                                                          to_string(a1) + ", " + to_string(b1)}));
        out.push_back(check_zero("KZ residual f1 k=" + to_string(k), kz_residual(sol.f1, k), order));
        out.push_back(check_zero("KZ residual f2 k=" + to_string(k), kz_residual(sol.f2, k), order));
        out.push_back(kz_wronskian(k, order).report);
        out.push_back(duality_pairing(k, order).report);
    }
    return out;
}

} // namespace frobd4
