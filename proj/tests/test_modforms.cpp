#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "frobd4/jacobi.hpp"
#include "frobd4/modforms.hpp"

using namespace frobd4;

namespace {

constexpr Exponent Q = kExponentDenominator;

// q^{n/24} prod_{m >= 1} (1 - q^m)^n expanded naively, n >= 0.
PuiseuxSeries eta_oracle(int n, Exponent order)
{
    const long len = order / Q + 2;
    std::vector<Rational> c(static_cast<std::size_t>(len), Rational(0));
    c[0] = 1;
    for (long m = 1; m < len; ++m) {
        for (int rep = 0; rep < n; ++rep) {
            for (long i = len - 1; i >= m; --i) {
                c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - m)];
            }
        }
    }
    PuiseuxSeries::Terms terms;
    for (long i = 0; i < len; ++i) {
        const Exponent e = n + i * Q;
        if (e < order && c[static_cast<std::size_t>(i)] != 0) {
            terms[e] = c[static_cast<std::size_t>(i)];
        }
    }
    return PuiseuxSeries(terms, order);
}

// The equation in its raw form f'' - ((k+1)/6) E2 f' + (k(k+1)/144)(E2^2 - E4) f.
PuiseuxSeries raw_kz(const PuiseuxSeries& f, const Rational& k)
{
    const Exponent n = f.trunc() - f.valuation();
    const PuiseuxSeries e2 = eisenstein(2, n);
    const PuiseuxSeries e4 = eisenstein(4, n);
    const PuiseuxSeries d = q_derive(f);
    return q_derive(d) - ((k + 1) / 6) * (e2 * d) + (k * (k + 1) / 144) * ((e2 * e2 - e4) * f);
}

Rational half(long n) { return make_rational(n, 2); }

} // namespace

TEST_CASE("Kaneko-Zagier leading coefficients")
{
    for (long n = 1; n <= 7; ++n) {
        const Rational k = half(n);
        KZSolution s = kz_solve(k, 3 * Q);
        CHECK(s.alpha == (k + 1) / 6);
        CHECK(s.f1.trunc() == 3 * Q);
        CHECK(s.f2.trunc() == 3 * Q);
        CHECK(s.f1.coeff(0) == 1);
        CHECK(s.f1.coeff(Q) == 12 * k * (k + 1) / (5 - k));
        const Exponent a = to_exponent(s.alpha);
        CHECK(s.f2.valuation() == a);
        CHECK(s.f2.coeff(a) == 1);
        CHECK(s.f2.coeff(a + Q) == 4 * (k + 1) * (2 * k - 1) / (k + 7));
    }
    CHECK(kz_solve(Rational(2), 2 * Q).f1.coeff(Q) == 24);
}

TEST_CASE("Kaneko-Zagier solutions satisfy the raw equation")
{
    for (long n = 1; n <= 7; ++n) {
        const Rational k = half(n);
        KZSolution s = kz_solve(k, 6 * Q);
        CHECK(raw_kz(s.f1, k).truncated(6 * Q).is_zero());
        CHECK(raw_kz(s.f2, k).truncated(6 * Q).is_zero());
        CHECK(kz_residual(s.f1, k).truncated(6 * Q).is_zero());
        CHECK(kz_residual(s.f2, k).truncated(6 * Q).is_zero());
    }
}

TEST_CASE("Kaneko-Zagier at k=2 is spanned by level-one D4 characters")
{
    const Exponent order = 8 * Q;
    KZSolution s = kz_solve(Rational(2), order);
    CHECK(s.f1 == eta4_chi_q(0, order));
    CHECK(Rational(8) * s.f2 == eta4_chi_q(1, order));
    CHECK(kz_residual(eta4_chi_q(1, order), Rational(2)).truncated(order).is_zero());
}

TEST_CASE("Kaneko-Zagier rejects k outside (0, 4)")
{
    CHECK_THROWS(kz_solve(Rational(0), Q));
    CHECK_THROWS(kz_solve(Rational(4), Q));
    CHECK_THROWS(kz_solve(Rational(-1), Q));
}

TEST_CASE("Wronskian against the eta product")
{
    const Exponent order = 6 * Q;
    for (long k : {1, 2, 3}) {
        WronskianResult w = kz_wronskian(Rational(k), order);
        CHECK(w.report.pass);
        const Rational alpha = make_rational(k + 1, 6);
        CHECK(agrees_to(w.det, alpha * eta_oracle(static_cast<int>(4 * (k + 1)), order), order));
    }
    for (long n = 1; n <= 7; n += 2) {
        CHECK(kz_wronskian(half(n), order).report.pass);
    }
}

TEST_CASE("duality pairing is constant")
{
    for (long n = 1; n <= 7; ++n) {
        const Rational k = half(n);
        DualityResult d = duality_pairing(k, 6 * Q);
        INFO("k = ", to_string(k));
        CHECK(d.report.pass);
        CHECK(d.matrix[0][0] == 12 * k * (4 - k));
        CHECK(d.matrix[0][1] == 0);
        CHECK(d.matrix[1][0] == 0);
        CHECK(d.matrix[1][1] == (k + 1) * (5 - k) / 36);
    }
}

TEST_CASE("Halphen system")
{
    for (Exponent order : {6 * Q, 12 * Q}) {
        for (const auto& r : halphen_residuals(order)) {
            CHECK(r.truncated(order).is_zero());
        }
        CHECK(halphen_checks(order).size() == 3);
        CHECK(all_pass(halphen_checks(order)));
        CHECK(all_pass(halphen_symmetric_checks(order)));
    }
    // a perturbed xi2 breaks the system
    const Exponent order = 6 * Q;
    PuiseuxSeries x2 = xi(2, order) + PuiseuxSeries::monomial(Rational(1), 2 * Q).truncated(order);
    auto r = halphen_residuals(x2, xi(3, order), xi(4, order));
    CHECK_FALSE(r[0].truncated(order).is_zero());
}

TEST_CASE("eta'/eta")
{
    const Exponent order = 5 * Q;
    PuiseuxSeries l = eta_log_derivative(order);
    CHECK(l.trunc() == order);
    CHECK(l.coeff(0) == make_rational(1, 24));
    CHECK(l.coeff(Q) == -1);
    CHECK(l.coeff(2 * Q) == -3);
}

TEST_CASE("character identities")
{
    for (Exponent order : {4 * Q, 8 * Q}) {
        auto reports = char_identities(order);
        CHECK(reports.size() == 9);
        for (const auto& r : reports) {
            INFO(to_string(r));
            CHECK(r.pass);
        }
    }
}

TEST_CASE("A-matrices")
{
    for (const auto& r : a_matrix_checks(5 * Q)) {
        INFO(to_string(r));
        CHECK(r.pass);
    }
}

TEST_CASE("aggregate KZ suite")
{
    auto reports = kz_checks(4 * Q);
    CHECK(reports.size() == 4 + 7 * 5);
    CHECK(all_pass(reports));
}

TEST_CASE("report formatting names the first failure")
{
    const Exponent order = 2 * Q;
    VerificationReport r = compare_series("demo", eisenstein(4, order), eisenstein(6, order), order);
    CHECK_FALSE(r.pass);
    CHECK(to_string(r) == "FAIL demo (order 2): first failure at q^1, got 240, expected -504");
    VerificationReport short_input = compare_series("short", eisenstein(4, Q), eisenstein(4, order), order);
    CHECK_FALSE(short_input.pass);
}
