// Acceptance run: one PASS/FAIL line per criterion, every comparison exact.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frobd4/frobenius.hpp"
#include "frobd4/jacobi.hpp"
#include "frobd4/modforms.hpp"
#include "frobd4/suites.hpp"

using namespace frobd4;

namespace {

constexpr Exponent Q = kExponentDenominator;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
    void require_all(const std::vector<VerificationReport>& reports)
    {
        for (const auto& r : reports) {
            require(r.pass, to_string(r));
        }
    }
};

// a and b both known below order and equal there.
bool exact_to(const PuiseuxSeries& a, const PuiseuxSeries& b, Exponent order)
{
    return a.trunc() >= order && b.trunc() >= order && a.truncated(order) == b.truncated(order);
}

// sum over the coset of q^{|v|^2 / 2}: coset 0 is D4 (even coordinate sum),
// coset 1 the odd-sum integer vectors.
PuiseuxSeries lattice_theta(int coset, Exponent order)
{
    PuiseuxSeries::Terms terms;
    const int r = 5;
    for (int a = -r; a <= r; ++a) {
        for (int b = -r; b <= r; ++b) {
            for (int c = -r; c <= r; ++c) {
                for (int d = -r; d <= r; ++d) {
                    if (((a + b + c + d) % 2 + 2) % 2 != coset) {
                        continue;
                    }
                    const Exponent e = 12L * (a * a + b * b + c * c + d * d);
                    if (e < order) {
                        terms[e] += 1;
                    }
                }
            }
        }
    }
    return PuiseuxSeries(terms, order);
}

PuiseuxSeries sigma_series(long constant, long factor, int power, Exponent order)
{
    PuiseuxSeries::Terms terms{{0, Rational(constant)}};
    for (long n = 1; n * Q < order; ++n) {
        long s = 0;
        for (long d = 1; d <= n; ++d) {
            if (n % d == 0) {
                long p = 1;
                for (int i = 0; i < power; ++i) {
                    p *= d;
                }
                s += p;
            }
        }
        terms[n * Q] = Rational(factor * s);
    }
    return PuiseuxSeries(terms, order);
}

PuiseuxSeries e2_oracle(Exponent order) { return sigma_series(1, -24, 1, order); }
PuiseuxSeries e4_oracle(Exponent order) { return sigma_series(1, 240, 3, order); }

// q^{n/24} prod (1 - q^m)^n by repeated multiplication, n >= 0.
PuiseuxSeries eta_oracle(long n, Exponent order)
{
    const long len = order / Q + 2;
    std::vector<Rational> c(static_cast<std::size_t>(len), Rational(0));
    c[0] = 1;
    for (long m = 1; m < len; ++m) {
        for (long rep = 0; rep < n; ++rep) {
            for (long i = len - 1; i >= m; --i) {
                c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - m)];
            }
        }
    }
    PuiseuxSeries::Terms terms;
    for (long i = 0; i < len; ++i) {
        if (n + i * Q < order && c[static_cast<std::size_t>(i)] != 0) {
            terms[n + i * Q] = c[static_cast<std::size_t>(i)];
        }
    }
    return PuiseuxSeries(terms, order);
}

InvariantElement S(int i) { return InvariantElement::orbit(fundamental_weight(i)); }
InvariantElement constant(long c) { return InvariantElement(Rational(c)); }

GeneratorPolynomial E(int k) { return gp_E(k); }
GeneratorPolynomial s(int i) { return gp_s(i); }
GeneratorPolynomial r(long n, long d = 1) { return make_rational(n, d) * GeneratorPolynomial::monomial(GeneratorMonomial{}); }

// Invariance under the four simple reflections.
bool reflection_invariant(const GroupAlgebraElement& x)
{
    for (int i = 1; i <= 4; ++i) {
        for (const auto& [v, c] : x.terms()) {
            if (x.coeff(reflect(v, i)) != c) {
                return false;
            }
        }
    }
    return true;
}

std::size_t orbit_by_reflections(const WeightVector& v)
{
    std::set<WeightVector> seen{v};
    std::vector<WeightVector> todo{v};
    while (!todo.empty()) {
        const WeightVector x = todo.back();
        todo.pop_back();
        for (int i = 1; i <= 4; ++i) {
            const WeightVector y = reflect(x, i);
            if (seen.insert(y).second) {
                todo.push_back(y);
            }
        }
    }
    return seen.size();
}

// ---- criteria ----

Outcome character_restrictions()
{
    Outcome o;
    const Exponent order = 6 * Q;
    const PuiseuxSeries a = eta4_chi_q(0, order);
    const PuiseuxSeries b = eta4_chi_q(1, order);
    o.require(a.coeff(0) == 1 && a.coeff(Q) == 24 && a.coeff(2 * Q) == 24 && a.coeff(3 * Q) == 96,
              "eta^4 chi0^q head: " + to_string(a));
    o.require(b.valuation() == Q / 2 && b.coeff(Q / 2) == 8, "eta^4 chi1^q head: " + to_string(b));
    o.require(exact_to(a, lattice_theta(0, order), order), "eta^4 chi0^q against the D4 theta series");
    o.require(exact_to(b, lattice_theta(1, order), order), "eta^4 chi1^q against the vector-coset theta series");
    return o;
}

Outcome dscript_annihilates_characters()
{
    Outcome o;
    const Exponent order = 4 * Q;
    for (int i : {0, 1, 3, 4}) {
        const JacobiElement d = op_Dscript(character(i, order));
        o.require(d.trunc() >= order && d.truncated(order).is_zero(),
                  "Dscript chi" + std::to_string(i) + " = " + to_string(d));
    }
    return o;
}

Outcome generator_initial_terms()
{
    Outcome o;
    const Exponent order = 2 * Q;
    const InvariantElement bracket = Rational(2) * S(1) * S(1) + Rational(2) * S(3) * S(3) +
                                     Rational(2) * S(4) * S(4) + S(1) * S(3) + S(1) * S(4) + S(3) * S(4) +
                                     Rational(24) * (S(1) + S(3) + S(4)) - Rational(36) * S(2) - constant(288);
    const InvariantElement want[] = {
        S(1) + S(3) + S(4) + constant(48),
        S(1) + S(3) + S(4) - constant(24),
        S(3) + S(4) - Rational(2) * S(1),
        S(3) - S(4),
        make_rational(-1, 36) * bracket,
    };
    for (int i = 0; i < 5; ++i) {
        const InvariantElement got = initial_term(build_generator(i, order));
        o.require(got == want[i], "shat" + std::to_string(i) + " initial term " + to_string(got));
    }
    return o;
}

Outcome bracket_identities()
{
    Outcome o;
    const auto reports = bracket_table_checks(4 * Q);
    o.require(reports.size() == 17, "expected 15 bracket and 2 derivative identities");
    o.require_all(reports);
    return o;
}

Outcome kaneko_zagier()
{
    Outcome o;
    const Exponent order = 8 * Q;
    const PuiseuxSeries e2 = e2_oracle(order);
    const PuiseuxSeries e4 = e4_oracle(order);
    for (int i : {0, 1}) {
        const PuiseuxSeries f = lattice_theta(i, order);
        o.require(exact_to(f, eta4_chi_q(i, order), order), "character " + std::to_string(i) + " against theta");
        // f'' - (1/2) E2 f' + (1/24)(E2^2 - E4) f at k = 2
        const PuiseuxSeries d = q_derive(f);
        const PuiseuxSeries raw =
            q_derive(d) - make_rational(1, 2) * (e2 * d) + make_rational(1, 24) * ((e2 * e2 - e4) * f);
        o.require(raw.trunc() >= order && raw.truncated(order).is_zero(),
                  "KZ residual of character " + std::to_string(i) + ": " + to_string(raw));
    }
    const auto a = a_matrix_checks(4 * Q);
    o.require(a.size() == 3, "A-matrix checks missing");
    o.require_all(a);
    return o;
}

Outcome halphen_and_characters()
{
    Outcome o;
    const Exponent order = 8 * Q;
    const auto h = halphen_checks(order);
    o.require(h.size() == 3, "three Halphen equations");
    o.require_all(h);
    for (const auto& res : halphen_residuals(order)) {
        o.require(res.trunc() >= order && res.truncated(order).is_zero(), "Halphen residual " + to_string(res));
    }
    o.require_all(char_identities(order));
    o.require_all(halphen_symmetric_checks(order));
    return o;
}

Outcome duality()
{
    Outcome o;
    const Exponent order = 6 * Q;
    for (long n = 1; n <= 7; ++n) {
        const Rational k = make_rational(n, 2);
        const DualityResult d = duality_pairing(k, order);
        const std::string tag = " at k = " + to_string(k);
        o.require(d.report.pass, to_string(d.report));
        o.require(d.matrix[0][0] == 12 * k * (4 - k) && d.matrix[1][1] == (k + 1) * (5 - k) / 36 &&
                      d.matrix[0][1] == 0 && d.matrix[1][0] == 0,
                  "pairing" + tag);
        const WronskianResult w = kz_wronskian(k, order);
        const Rational alpha = (k + 1) / 6;
        o.require(exact_to(w.det, alpha * eta_oracle(n * 2 + 4, order), order), "Wronskian" + tag);
    }
    return o;
}

Outcome u4_equals_b4()
{
    Outcome o;
    const VerificationReport r = u4_b4_check(4 * Q);
    o.require(r.pass, to_string(r));
    return o;
}

Outcome metric_tables()
{
    Outcome o;
    J1Table want;
    for (int i = -1; i <= 4; ++i) {
        for (int j = i; j <= 4; ++j) {
            want[{i, j}] = GeneratorPolynomial{};
        }
    }
    want[{-1, 4}] = r(1);
    want[{0, 0}] = r(6) * E(4) * E(4);
    want[{0, 1}] = r(6) * E(6);
    want[{1, 1}] = r(6) * E(4);
    want[{0, 4}] = r(-5, 6) * E(4) * s(1);
    want[{1, 4}] = r(-1, 2) * s(0);
    want[{2, 2}] = r(12);
    want[{3, 3}] = r(4);
    want[{4, 4}] = r(1, 36) * (r(2, 3) * s(1) * s(1) + r(1, 12) * E(4) * s(2) * s(2) + r(1, 4) * E(4) * s(3) * s(3));
    const J1Table got = j1_table(4 * Q);
    o.require(got.size() == 21, "J1* table size");
    for (const auto& [key, p] : want) {
        const auto it = got.find(key);
        o.require(it != got.end() && it->second == p,
                  "J1*(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
    }
    const J0Result j0 = j0_matrix(4 * Q);
    o.require(j0.report.pass, to_string(j0.report));
    for (int i = -1; i <= 4; ++i) {
        for (int j = -1; j <= 4; ++j) {
            Rational expected = 0;
            if (i == j && i >= 0 && i <= 3) {
                expected = 2;
            } else if (i + j == 3 && (i == -1 || j == -1)) {
                expected = 1;
            }
            const auto& entry = j0.matrix[bvar(i)][bvar(j)];
            o.require(entry && *entry == expected, "J0*(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    return o;
}

Outcome potential_identity()
{
    Outcome o;
    const Exponent order = 4 * Q;
    const Exponent wide = order + Q;
    const PotentialCoefficients f = potential_coefficients(wide);
    const PuiseuxSeries a = lattice_theta(0, wide);
    const PuiseuxSeries e2 = e2_oracle(wide);
    o.require(exact_to(f.f0, make_rational(1, 8) * lattice_theta(1, wide), wide), "f0");
    o.require(exact_to(f.f1, make_rational(-1, 48) * (e2 + a), wide), "f1");
    o.require(exact_to(f.f2, make_rational(-1, 16) * (e2 - a), wide), "f2");
    const auto reports = potential_identity_check(order);
    o.require(reports.size() == 20, "20 pairs");
    o.require_all(reports);
    return o;
}

Outcome wdvv()
{
    Outcome o;
    const VerificationReport w = wdvv_check(3 * Q);
    o.require(w.pass, to_string(w));
    const VerificationReport u = unit_check(3 * Q);
    o.require(u.pass, to_string(u));
    return o;
}

PuiseuxSeries random_series(std::mt19937& rng, Exponent min_val)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<Exponent> step(1, Q);
    PuiseuxSeries::Terms terms;
    Exponent e = min_val + step(rng) - 1;
    terms[e] = make_rational(num(rng) == 0 ? 1 : num(rng) | 1, den(rng));
    const int n = len(rng);
    for (int i = 1; i < n; ++i) {
        e += step(rng);
        const int c = num(rng);
        if (c != 0) {
            terms[e] = make_rational(c, den(rng));
        }
    }
    return PuiseuxSeries(terms, e + step(rng) + 2 * Q);
}

bool agree(const PuiseuxSeries& a, const PuiseuxSeries& b)
{
    return agrees_to(a, b, std::min(a.trunc(), b.trunc()));
}

InvariantElement random_invariant(std::mt19937& rng)
{
    std::uniform_int_distribution<int> idx(1, 4);
    std::uniform_int_distribution<int> c(-5, 5);
    InvariantElement x(Rational(c(rng)));
    for (int t = 0; t < 3; ++t) {
        x += Rational(c(rng)) * (S(idx(rng)) * S(idx(rng)));
        x += Rational(c(rng)) * S(idx(rng));
    }
    return x;
}

Outcome properties()
{
    Outcome o;
    std::mt19937 rng(20240601);
    for (int trial = 0; trial < 40; ++trial) {
        const PuiseuxSeries a = random_series(rng, -Q);
        const PuiseuxSeries b = random_series(rng, 0);
        const PuiseuxSeries c = random_series(rng, Q / 2);
        o.require(agree((a + b) + c, a + (b + c)), "addition is associative");
        o.require(a + b == b + a, "addition commutes");
        o.require(a * b == b * a, "multiplication commutes");
        o.require(agree((a * b) * c, a * (b * c)), "multiplication is associative");
        o.require(agree(a * (b + c), a * b + a * c), "distributivity");
        o.require(agree(a * a.inverse(), PuiseuxSeries(Rational(1))), "inverse");
        o.require(a - a == PuiseuxSeries::zero(a.trunc()), "additive inverse");
        o.require(agree(q_derive(a * b), q_derive(a) * b + a * q_derive(b)), "Leibniz rule for q d/dq");
        const Rational k = make_rational(trial % 7, 2);
        const Rational l = make_rational(trial % 5, 1);
        o.require(agree(serre_derivative(b * c, k + l), serre_derivative(b, k) * c + b * serre_derivative(c, l)),
                  "Leibniz rule for the Serre derivative");
        const InvariantElement x = random_invariant(rng);
        o.require(InvariantElement::from_group_algebra(x.to_group_algebra()) == x, "orbit basis round trip");
        o.require(monomial_to_orbit(orbit_to_monomial(x)) == x, "orbit-sum monomial round trip");
    }
    for (int i = 0; i < 5; ++i) {
        for (const auto& [e, x] : build_generator(i, 3 * Q).to_group_algebra()) {
            o.require(reflection_invariant(x), "shat" + std::to_string(i) + " at q^" + exponent_string(e));
        }
    }
    const std::size_t sizes[] = {8, 24, 8, 8};
    for (int i = 1; i <= 4; ++i) {
        o.require(orbit_by_reflections(fundamental_weight(i)) == sizes[i - 1], "orbit of omega" + std::to_string(i));
        o.require(orbit_size(fundamental_weight(i)) == static_cast<long>(sizes[i - 1]),
                  "orbit_size omega" + std::to_string(i));
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"character q-restrictions to order 6", character_restrictions},
        {"Dscript annihilates chi0, chi1, chi3, chi4 to order 4", dscript_annihilates_characters},
        {"initial terms of shat0 .. shat4", generator_initial_terms},
        {"bracket and derivative table of the generators at order 4", bracket_identities},
        {"Kaneko-Zagier at k = 2, det A1 and the A2 congruence", kaneko_zagier},
        {"Halphen system and character identities to order 8", halphen_and_characters},
        {"duality pairing and Wronskian to order 6", duality},
        {"u4 = b4 to order 4", u4_equals_b4},
        {"J1* table and constant J0*", metric_tables},
        {"potential identity for all 20 pairs at order 4", potential_identity},
        {"WDVV to order 3 and the unit field", wdvv},
        {"property suites", properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
        if (!o.pass) {
            std::cout << ": " << o.detail;
            ++failures;
        }
        std::cout << std::endl;
    }
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
