#ifndef FROBD4_JACOBI_HPP
#define FROBD4_JACOBI_HPP

#include <array>
#include <map>
#include <string>

#include "frobd4/qseries.hpp"
#include "frobd4/weyl_d4.hpp"

namespace frobd4 {

// A bi-graded element of weight k (stored as 2k) and index m whose value is a
// truncated q-series with Weyl-invariant lattice coefficients. Coefficients are
// kept in the orbit-sum basis; to_group_algebra expands them.
class JacobiElement {
public:
    using Body = std::map<Exponent, InvariantElement>;

    JacobiElement() = default;
    JacobiElement(int weight2, int index, Body body, Exponent trunc);

    // Index-0 element with scalar coefficients.
    static JacobiElement scalar(const PuiseuxSeries& f, int weight2 = 0);
    // Exact element x q^0.
    static JacobiElement constant(const InvariantElement& x, int weight2 = 0, int index = 0);

    int weight2() const { return weight2_; }
    Rational weight() const { return make_rational(weight2_, 2); }
    int index() const { return index_; }
    const Body& body() const { return body_; }
    Exponent trunc() const { return trunc_; }
    Exponent valuation() const;
    bool is_zero() const { return body_.empty(); }
    InvariantElement coeff(Exponent e) const;

    JacobiElement truncated(Exponent t) const;
    // Same body with a different weight label (the L_k relabelling).
    JacobiElement with_weight2(int weight2) const;

    JacobiElement& operator+=(const JacobiElement& o);
    JacobiElement& operator-=(const JacobiElement& o);
    JacobiElement& operator*=(const Rational& c);
    JacobiElement operator-() const;

    // Multiplies the body by a scalar series that carries weight weight2_shift/2.
    JacobiElement times(const PuiseuxSeries& f, int weight2_shift) const;

    // Body with coefficients expanded in exponentials.
    std::map<Exponent, GroupAlgebraElement> to_group_algebra() const;

    bool operator==(const JacobiElement&) const = default;

private:
    void add(Exponent e, const InvariantElement& x, const Rational& c);

    int weight2_ = 0;
    int index_ = 0;
    Body body_;
    Exponent trunc_ = kExact;
};

JacobiElement operator+(JacobiElement a, const JacobiElement& b);
JacobiElement operator-(JacobiElement a, const JacobiElement& b);
JacobiElement operator*(const JacobiElement& a, const JacobiElement& b);
JacobiElement operator*(const Rational& c, JacobiElement a);

// Coefficientwise q d/dq, gradings unchanged.
JacobiElement q_derive(const JacobiElement& f);
// Termwise D-bar: e^lambda -> inner(lambda, lambda) e^lambda.
JacobiElement laplacian(const JacobiElement& f);

// Evaluation at z = 0.
PuiseuxSeries q_part(const JacobiElement& f);

// Normalized level-1 character for i in {0, 1, 3, 4}: weight 0, index 1,
// eta^{-4} times the theta series of the coset; trunc == order.
JacobiElement character(int i, Exponent order);

// Ehat_k: index 0, weight k, body E_k.
JacobiElement e_hat(int k, Exponent order);

// Dscript f = 2m f' - Dbar f + (E2/12) m (4 - 2k) f, weight k + 2.
JacobiElement op_Dscript(const JacobiElement& f);

// Iscript(f, g) = (1/2)[D(fg) - D(f) g - f D(g)], weight k+k'+2, index m+m'.
JacobiElement i_bracket(const JacobiElement& f, const JacobiElement& g);

// The generators shat_0..shat_4 with trunc == order. Memoized.
JacobiElement build_generator(int idx, Exponent order);

// q^0 coefficient; throws for negative valuation.
InvariantElement initial_term(const JacobiElement& f);

// Monomial Ehat4^a Ehat6^b shat0^c0 ... shat4^c4 stored as (a, b, c0, ..., c4).
using GeneratorMonomial = std::array<int, 7>;

int monomial_weight2(const GeneratorMonomial& m);
int monomial_index(const GeneratorMonomial& m);

class GeneratorPolynomial {
public:
    using Terms = std::map<GeneratorMonomial, Rational>;

    GeneratorPolynomial() = default;
    static GeneratorPolynomial monomial(const GeneratorMonomial& m, const Rational& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const GeneratorMonomial& m, const Rational& c);

    GeneratorPolynomial& operator+=(const GeneratorPolynomial& o);
    GeneratorPolynomial& operator-=(const GeneratorPolynomial& o);
    friend GeneratorPolynomial operator+(GeneratorPolynomial a, const GeneratorPolynomial& b) { return a += b; }
    friend GeneratorPolynomial operator-(GeneratorPolynomial a, const GeneratorPolynomial& b) { return a -= b; }
    friend GeneratorPolynomial operator*(const GeneratorPolynomial& a, const GeneratorPolynomial& b);
    friend GeneratorPolynomial operator*(const Rational& c, const GeneratorPolynomial& a);

    // Formal derivative with respect to shat_i (i = 0..4).
    GeneratorPolynomial derivative(int i) const;

    bool operator==(const GeneratorPolynomial&) const = default;

private:
    Terms terms_;
};

// Symbols for building polynomials: gp_E(4), gp_E(6), gp_s(0..4).
GeneratorPolynomial gp_E(int k);
GeneratorPolynomial gp_s(int i);

JacobiElement evaluate(const GeneratorPolynomial& p, Exponent order);

// Monomials in the generators of the given weight and index.
std::vector<GeneratorMonomial> generator_monomials(int weight2, int index);

// Unique expansion of f in generator monomials. Throws std::runtime_error when
// the coefficient system is inconsistent or underdetermined.
GeneratorPolynomial express_in_generators(const JacobiElement& f);

// I*(d(eta^{-2k}F1), d(eta^{-2k'}F2)) where k, k' are the weights of F1, F2:
// eta^{-2(k+k')} Iscript(F1, F2), an element of weight 0.
JacobiElement intersection_form(const JacobiElement& F1, const JacobiElement& F2);

// eta^{-2k} F as a weight-0 element.
JacobiElement untwist(const JacobiElement& F);

std::string to_string(const JacobiElement& f);
std::string to_string(const GeneratorPolynomial& p);

} // namespace frobd4

#endif
