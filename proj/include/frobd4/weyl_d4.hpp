#ifndef FROBD4_WEYL_D4_HPP
#define FROBD4_WEYL_D4_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frobd4/rational.hpp"

namespace frobd4 {

// A vector of the D4 weight lattice in the orthonormal frame e1..e4. The
// coordinates are stored doubled, so all four entries share one parity.
class WeightVector {
public:
    WeightVector() = default;
    // Takes doubled coordinates; throws if the parities are mixed.
    static WeightVector from_doubled(const std::array<int, 4>& twice);
    static WeightVector from_coords(const std::array<Rational, 4>& coords);

    const std::array<int, 4>& doubled() const { return twice_; }
    Rational coord(int i) const { return make_rational(twice_[static_cast<std::size_t>(i)], 2); }
    bool is_integral() const { return twice_[0] % 2 == 0; }
    bool is_zero() const { return twice_ == std::array<int, 4>{}; }
    // 4 * inner(*this, *this)
    long norm4() const;

    WeightVector operator+(const WeightVector& o) const;
    WeightVector operator-(const WeightVector& o) const;
    WeightVector operator-() const;
    WeightVector scaled(int n) const;

    auto operator<=>(const WeightVector&) const = default;

private:
    explicit WeightVector(const std::array<int, 4>& twice) : twice_(twice) {}
    std::array<int, 4> twice_{};
};

Rational inner(const WeightVector& a, const WeightVector& b);
// 4 * inner(a, b), exact as an integer.
long inner4(const WeightVector& a, const WeightVector& b);

// alpha_1 = e1-e2, alpha_2 = e2-e3, alpha_3 = e3-e4, alpha_4 = e3+e4 (i = 1..4).
WeightVector simple_root(int i);
// omega_1 = e1, omega_2 = e1+e2, omega_3 = (e1+e2+e3-e4)/2, omega_4 = (e1+e2+e3+e4)/2.
WeightVector fundamental_weight(int i);

// An element of W(D4): a signed permutation with an even number of sign flips.
struct WeylElement {
    std::array<int, 4> perm;
    std::array<int, 4> sign;
    WeightVector apply(const WeightVector& v) const;
};

// All 192 elements, built once.
const std::vector<WeylElement>& weyl_group();

WeightVector reflect(const WeightVector& v, int simple_index);

bool is_dominant(const WeightVector& v);
WeightVector dominant_representative(const WeightVector& v);

// Sorted list of the orbit of v.
std::vector<WeightVector> weyl_orbit(const WeightVector& v);
long orbit_size(const WeightVector& v);

// 0 for the root lattice, 1 for the vector coset, 3 and 4 for the spinor
// cosets containing omega_3 and omega_4.
int coset_of(const WeightVector& v);

// lambda <= mu in the dominance order: mu - lambda is a non-negative integer
// combination of simple roots.
bool dominance_leq(const WeightVector& lambda, const WeightVector& mu);

// Finite formal combination of exponentials e^lambda.
class GroupAlgebraElement {
public:
    using Terms = std::map<WeightVector, Rational>;

    GroupAlgebraElement() = default;
    explicit GroupAlgebraElement(const Rational& constant);
    static GroupAlgebraElement exponential(const WeightVector& v, const Rational& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const WeightVector& v) const;
    void add_term(const WeightVector& v, const Rational& c);

    GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
    GroupAlgebraElement& operator-=(const GroupAlgebraElement& o);
    GroupAlgebraElement& operator*=(const Rational& c);
    friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a += b; }
    friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a -= b; }
    friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
    friend GroupAlgebraElement operator*(const Rational& c, GroupAlgebraElement a) { return a *= c; }

    GroupAlgebraElement transformed(const WeylElement& w) const;
    bool is_weyl_invariant() const;
    // Sum of all coefficients (evaluation at z = 0).
    Rational augmentation() const;

    bool operator==(const GroupAlgebraElement&) const = default;

private:
    Terms terms_;
};

GroupAlgebraElement orbit_sum(const WeightVector& dominant);

// e^lambda -> inner(lambda, lambda) e^lambda
GroupAlgebraElement laplacian(const GroupAlgebraElement& x);

// A Weyl-invariant element written in the orbit-sum basis: the key lambda
// (always dominant) stands for S(lambda).
class InvariantElement {
public:
    using Terms = std::map<WeightVector, Rational>;

    InvariantElement() = default;
    explicit InvariantElement(const Rational& constant);
    static InvariantElement orbit(const WeightVector& dominant, const Rational& c = 1);
    // Throws if x is not Weyl-invariant.
    static InvariantElement from_group_algebra(const GroupAlgebraElement& x);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const WeightVector& dominant) const;
    void add_term(const WeightVector& dominant, const Rational& c);

    GroupAlgebraElement to_group_algebra() const;
    Rational augmentation() const;

    InvariantElement& operator+=(const InvariantElement& o);
    InvariantElement& operator-=(const InvariantElement& o);
    InvariantElement& operator*=(const Rational& c);
    friend InvariantElement operator+(InvariantElement a, const InvariantElement& b) { return a += b; }
    friend InvariantElement operator-(InvariantElement a, const InvariantElement& b) { return a -= b; }
    friend InvariantElement operator*(const InvariantElement& a, const InvariantElement& b);
    friend InvariantElement operator*(const Rational& c, InvariantElement a) { return a *= c; }

    bool operator==(const InvariantElement&) const = default;

private:
    Terms terms_;
};

InvariantElement laplacian(const InvariantElement& x);

// S(lambda) S(mu) = sum_kappa n_kappa S(kappa) for dominant lambda, mu.
// The decomposition is computed once per pair and cached (thread-safe).
const std::vector<std::pair<WeightVector, long>>& orbit_product(const WeightVector& lambda,
                                                                const WeightVector& mu);

// Polynomial in S(omega_1), ..., S(omega_4); keys are exponent vectors.
using OrbitMonomialPolynomial = std::map<std::array<int, 4>, Rational>;

OrbitMonomialPolynomial orbit_to_monomial(const InvariantElement& x);
InvariantElement monomial_to_orbit(const OrbitMonomialPolynomial& p);

std::string to_string(const WeightVector& v);
std::string to_string(const InvariantElement& x);
std::string to_string(const OrbitMonomialPolynomial& p);

} // namespace frobd4

#endif
