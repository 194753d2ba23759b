#ifndef FROBD4_MODFORMS_HPP
#define FROBD4_MODFORMS_HPP

#include <array>
#include <vector>

#include "frobd4/qseries.hpp"
#include "frobd4/report.hpp"

namespace frobd4 {

// Solutions of the Kaneko-Zagier equation
//   f'' - ((k+1)/6) E2 f' + (k(k+1)/144)(E2^2 - E4) f = 0,
// equivalently d_{k+2} d_k f = (k/12)((k+2)/12) E4 f.
struct KZSolution {
    Rational k;
    Rational alpha; // (k+1)/6
    PuiseuxSeries f1; // 1 + a1 q + ...
    PuiseuxSeries f2; // q^alpha + b1 q^{alpha+1} + ...
};

// Requires 0 < k < 4; both branches have trunc == order.
KZSolution kz_solve(const Rational& k, Exponent order);

// d_{k+2} d_k f - (k/12)((k+2)/12) E4 f
PuiseuxSeries kz_residual(const PuiseuxSeries& f, const Rational& k);

struct WronskianResult {
    PuiseuxSeries det;      // f1 d_k f2 - f2 d_k f1
    PuiseuxSeries expected; // alpha eta^{24 alpha}
    VerificationReport report;
};

WronskianResult kz_wronskian(const Rational& k, Exponent order);

using RationalMatrix2 = std::array<std::array<Rational, 2>, 2>;

struct DualityResult {
    RationalMatrix2 matrix;   // constant term of the product
    RationalMatrix2 expected; // diag(12k(4-k), (k+1)(5-k)/36)
    VerificationReport report; // product constant and equal to expected
};

DualityResult duality_pairing(const Rational& k, Exponent order);

// eta^4 chi^q for the characters i in {0, 1}, trunc == order.
PuiseuxSeries eta4_chi_q(int i, Exponent order);

// eta'/eta with trunc == order.
PuiseuxSeries eta_log_derivative(Exponent order);

// Residuals xi_i' - RHS_i of the three Halphen equations (i = 2, 3, 4).
std::array<PuiseuxSeries, 3> halphen_residuals(Exponent order);
std::array<PuiseuxSeries, 3> halphen_residuals(const PuiseuxSeries& x2, const PuiseuxSeries& x3,
                                               const PuiseuxSeries& x4);

// The three Halphen equations.
std::vector<VerificationReport> halphen_checks(Exponent order);
// Symmetric functions of xi_2, xi_3, xi_4 against E4 and E6.
std::vector<VerificationReport> halphen_symmetric_checks(Exponent order);
std::vector<VerificationReport> char_identities(Exponent order);
std::vector<VerificationReport> a_matrix_checks(Exponent order);
std::vector<VerificationReport> kz_checks(Exponent order);

} // namespace frobd4

#endif
