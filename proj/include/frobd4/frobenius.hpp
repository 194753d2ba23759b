#ifndef FROBD4_FROBENIUS_HPP
#define FROBD4_FROBENIUS_HPP

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "frobd4/jacobi.hpp"
#include "frobd4/polynomial.hpp"
#include "frobd4/report.hpp"

namespace frobd4 {

// Flat coordinates b_0 .. b_4 as weight-0 functions, all with trunc == order.
// b_{-1} = pi i tau is never materialized.
struct FlatCoordinateSet {
    std::array<JacobiElement, 5> b;
    Exponent order = 0;
};

FlatCoordinateSet flat_coordinates(Exponent order);

// Index m_i and degree d_i of b_i for i in -1..4.
int flat_index(int i);
Rational flat_degree(int i);

// The twisted generators s~_i = eta^{-2k} shat_i as weight-0 functions.
JacobiElement s_tilde(int i, Exponent order);
// u_4 assembled from s~_0 .. s~_4 and E~4 = eta^{-8} E4, E~6 = eta^{-12} E6.
JacobiElement u4_from_s(Exponent order);
// s~_4 rebuilt as (1/24) eta^{-4} [3 I*(ds~3, ds~3) + I*(ds~2, ds~2)].
JacobiElement s4_tilde_by_brackets(Exponent order);

// Polynomial in (b_{-1}, b_0, ..., b_4); variable v holds b_{v-1}.
using BPolynomial = Polynomial<PuiseuxSeries, 6>;
using BMonomial = BPolynomial::Monomial;

constexpr std::size_t bvar(int i) { return static_cast<std::size_t>(i + 1); }

struct PotentialCoefficients {
    PuiseuxSeries f0;
    PuiseuxSeries f1;
    PuiseuxSeries f2;
};

PotentialCoefficients potential_coefficients(Exponent order);
BPolynomial potential(const PotentialCoefficients& f);
BPolynomial potential(Exponent order);

// d/db_i; for i = -1 the coefficient series are differentiated by 2 q d/dq.
BPolynomial lower_derivative(const BPolynomial& p, int i);
// Index raised with the constant dual metric: d^{-1} = d/db_4,
// d^i = 2 d/db_i (0 <= i <= 3), d^4 = d/db_{-1}.
BPolynomial raised_derivative(const BPolynomial& p, int i);

// Value at the concrete coordinates; throws when b_{-1} survives. The index
// of the result is given so that a zero value carries the right grading.
JacobiElement evaluate(const BPolynomial& p, const FlatCoordinateSet& b, int index);

// I*(db_i, db_j) for i, j in -1..4, computed from the concrete coordinates
// (b_{-1} pairs through I*(d(2 pi i tau), dF) = m F).
JacobiElement i_star_b(int i, int j, const FlatCoordinateSet& b);

// Unique expansion of f in b_0..b_4 monomials with series coefficients known
// below `needed`. Throws std::runtime_error when inconsistent or underdetermined.
BPolynomial expand_in_b(const JacobiElement& f, Exponent needed);

// I*(db_i, db_j) = (d_i + d_j) d^i d^j F_0 for the 20 pairs i <= j other than (-1, -1).
std::vector<VerificationReport> potential_identity_check(Exponent order);
// E_norm F_0 = 2 F_0 term by term.
VerificationReport potential_degree_check(Exponent order);

// Entries of J0*(db_i, db_j), indices shifted by one; nullopt for a
// non-constant entry.
using J0Matrix = std::array<std::array<std::optional<Rational>, 6>, 6>;
struct J0Result {
    J0Matrix matrix;
    VerificationReport report;
};
J0Result j0_matrix(Exponent order);
J0Matrix j0_expected();
VerificationReport j0_matrix_check(Exponent order);

// J1*(ds~_i, ds~_j) written as eta^4 times a polynomial in E4, E6 and the
// generators, the convention matching express_in_generators. Keys (i, j) with
// -1 <= i <= j <= 4; entries involving s~_{-1} are constants.
using J1Table = std::map<std::pair<int, int>, GeneratorPolynomial>;
J1Table j1_table(Exponent order);
J1Table j1_expected();
VerificationReport j1_table_check(Exponent order);
// J1*(v_i, v_j) for the v-frame built from u_4, including J1*(dq/q, -).
VerificationReport v_frame_check(Exponent order);
// M^T (J1*(y_i, y_j)) M = (J1*(x_i, x_j)) as exact rational matrices.
VerificationReport y_frame_check();
// u_4 = b_4.
VerificationReport u4_b4_check(Exponent order);

// Associativity of the product with structure constants d_i d_j d_l F J0*^{lk}.
VerificationReport wdvv_check(const PotentialCoefficients& f, Exponent order);
VerificationReport wdvv_check(Exponent order);
// c_{4j}^k = delta_j^k exactly.
VerificationReport unit_check(Exponent order);

} // namespace frobd4

#endif
