#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "frobd4/weyl_d4.hpp"

using namespace frobd4;

namespace {

// Orbit by closure under the four simple reflections.
std::set<WeightVector> closure_orbit(const WeightVector& v)
{
    std::set<WeightVector> seen{v};
    std::vector<WeightVector> frontier{v};
    while (!frontier.empty()) {
        WeightVector x = frontier.back();
        frontier.pop_back();
        for (int i = 1; i <= 4; ++i) {
            WeightVector y = reflect(x, i);
            if (seen.insert(y).second) {
                frontier.push_back(y);
            }
        }
    }
    return seen;
}

WeightVector w(int i) { return fundamental_weight(i); }

// All dominant weights with 4|v|^2 <= bound.
std::vector<WeightVector> dominant_weights(long bound)
{
    std::vector<WeightVector> out;
    for (int a = 0; a * a <= bound; ++a) {
        for (int b = a % 2; b <= a; b += 2) {
            for (int c = a % 2; c <= b; c += 2) {
                for (int d = -c; d <= c; d += 2) {
                    WeightVector v = WeightVector::from_doubled({a, b, c, d});
                    if (v.norm4() <= bound) {
                        out.push_back(v);
                    }
                }
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("inner products")
{
    WeightVector theta = WeightVector::from_doubled({2, 2, 0, 0});
    CHECK(inner(theta, theta) == 2);
    CHECK(inner(w(1), w(1)) == 1);
    CHECK(inner(WeightVector(), theta) == 0);
    // Fundamental weights are dual to the simple roots.
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            CHECK(inner(w(i), simple_root(j)) == (i == j ? 1 : 0));
        }
    }
    CHECK_THROWS(WeightVector::from_doubled({1, 0, 0, 0}));
}

TEST_CASE("Weyl group")
{
    const auto& g = weyl_group();
    CHECK(g.size() == 192);
    std::set<WeightVector> images;
    WeightVector generic = WeightVector::from_doubled({8, 6, 4, 2});
    for (const auto& e : g) {
        images.insert(e.apply(generic));
    }
    CHECK(images.size() == 192);
}

TEST_CASE("orbits match closure under reflections")
{
    CHECK(weyl_orbit(WeightVector()).size() == 1);
    CHECK(orbit_size(w(1)) == 8);
    CHECK(orbit_size(w(2)) == 24);
    CHECK(orbit_size(w(3)) == 8);
    CHECK(orbit_size(w(4)) == 8);
    for (const WeightVector& v : dominant_weights(40)) {
        auto closure = closure_orbit(v);
        auto orbit = weyl_orbit(v);
        CHECK(std::set<WeightVector>(orbit.begin(), orbit.end()) == closure);
        for (const WeightVector& u : orbit) {
            CHECK(dominant_representative(u) == v);
        }
    }
    auto o1 = weyl_orbit(w(1));
    for (const auto& v : o1) {
        CHECK(v.norm4() == 4);
    }
}

TEST_CASE("cosets")
{
    CHECK(coset_of(WeightVector()) == 0);
    CHECK(coset_of(w(1)) == 1);
    CHECK(coset_of(w(2)) == 0);
    CHECK(coset_of(w(3)) == 3);
    CHECK(coset_of(w(4)) == 4);
    for (const auto& v : weyl_orbit(w(4))) {
        CHECK(coset_of(v) == 4);
    }
}

TEST_CASE("orbit sums are invariant")
{
    CHECK(orbit_sum(WeightVector()) == GroupAlgebraElement(Rational(1)));
    for (const WeightVector& v : dominant_weights(24)) {
        GroupAlgebraElement s = orbit_sum(v);
        CHECK(s.is_weyl_invariant());
        for (const auto& [u, c] : s.terms()) {
            CHECK(c == 1);
        }
    }
    CHECK(orbit_sum(w(1)).terms().size() == 8);
    GroupAlgebraElement s4 = orbit_sum(w(4));
    for (const auto& [u, c] : s4.terms()) {
        CHECK(u.doubled()[0] % 2 != 0);
        CHECK(coset_of(u) == 4);
    }
    CHECK_THROWS(orbit_sum(WeightVector::from_doubled({0, 2, 0, 0})));
}

TEST_CASE("laplacian")
{
    CHECK(laplacian(GroupAlgebraElement(Rational(1))).is_zero());
    CHECK(laplacian(orbit_sum(w(1))) == orbit_sum(w(1)));
    CHECK(laplacian(orbit_sum(w(2))) == Rational(2) * orbit_sum(w(2)));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        GroupAlgebraElement x;
        for (int k = 0; k < 5; ++k) {
            int p = trial % 2;
            x.add_term(WeightVector::from_doubled({2 * coord(rng) + p, 2 * coord(rng) + p, 2 * coord(rng) + p,
                                                   2 * coord(rng) + p}),
                       coord(rng));
        }
        for (const auto& e : weyl_group()) {
            CHECK(laplacian(x.transformed(e)) == laplacian(x).transformed(e));
        }
    }
}

TEST_CASE("orbit products against direct convolution")
{
    GroupAlgebraElement s1 = orbit_sum(w(1));
    GroupAlgebraElement direct = s1 * s1;
    GroupAlgebraElement expected =
        orbit_sum(w(1).scaled(2)) + Rational(2) * orbit_sum(w(2)) + GroupAlgebraElement(Rational(8));
    CHECK(direct == expected);
    auto dom = dominant_weights(16);
    for (const auto& a : dom) {
        for (const auto& b : dom) {
            InvariantElement prod = InvariantElement::orbit(a) * InvariantElement::orbit(b);
            CHECK(prod.to_group_algebra() == orbit_sum(a) * orbit_sum(b));
        }
    }
}

TEST_CASE("dominance order")
{
    CHECK(dominance_leq(WeightVector(), w(2)));
    CHECK(dominance_leq(w(2), w(1).scaled(2)));
    CHECK_FALSE(dominance_leq(w(1), w(2)));
    CHECK_FALSE(dominance_leq(w(3), w(4)));
    // Dominant terms of a product of orbit sums lie below the sum of labels.
    for (const auto& [k, n] : orbit_product(w(1).scaled(2), w(3))) {
        CHECK(dominance_leq(k, w(1).scaled(2) + w(3)));
    }
}

TEST_CASE("change of basis")
{
    InvariantElement s1 = InvariantElement::orbit(w(1));
    OrbitMonomialPolynomial sq = orbit_to_monomial(s1 * s1);
    CHECK(sq.size() == 1);
    CHECK(sq.at({2, 0, 0, 0}) == 1);
    CHECK(orbit_to_monomial(InvariantElement(Rational(1))) == OrbitMonomialPolynomial{{{0, 0, 0, 0}, 1}});
    CHECK(monomial_to_orbit({{{0, 1, 0, 0}, 1}}) == InvariantElement::orbit(w(2)));
    CHECK(monomial_to_orbit({{{2, 0, 0, 0}, 1}}) ==
          InvariantElement::orbit(w(1).scaled(2)) + Rational(2) * InvariantElement::orbit(w(2)) +
              InvariantElement(Rational(8)));
    // Round trips in both directions.
    for (const WeightVector& v : dominant_weights(24)) {
        InvariantElement x = InvariantElement::orbit(v, make_rational(3, 7)) + InvariantElement(Rational(2));
        CHECK(monomial_to_orbit(orbit_to_monomial(x)) == x);
    }
    for (int a = 0; a <= 2; ++a) {
        for (int b = 0; b <= 1; ++b) {
            for (int c = 0; c <= 2; ++c) {
                for (int d = 0; d <= 1; ++d) {
                    OrbitMonomialPolynomial p{{{a, b, c, d}, make_rational(-5, 3)}, {{0, 0, 1, 0}, 1}};
                    OrbitMonomialPolynomial back = orbit_to_monomial(monomial_to_orbit(p));
                    OrbitMonomialPolynomial expect;
                    for (const auto& [k, x] : p) {
                        expect[k] += x;
                    }
                    CHECK(back == expect);
                }
            }
        }
    }
    GroupAlgebraElement not_invariant = GroupAlgebraElement::exponential(w(1));
    CHECK_THROWS(InvariantElement::from_group_algebra(not_invariant));
}
