#include "frobd4/suites.hpp"

#include <stdexcept>

#include "frobd4/frobenius.hpp"
#include "frobd4/modforms.hpp"

namespace frobd4 {

namespace {

constexpr Exponent Q = kExponentDenominator;

InvariantElement S(int i) { return InvariantElement::orbit(fundamental_weight(i)); }
InvariantElement constant(long c) { return InvariantElement(Rational(c)); }

GeneratorPolynomial E(int k) { return gp_E(k); }
GeneratorPolynomial s(int i) { return gp_s(i); }
GeneratorPolynomial r(long n, long d = 1) { return make_rational(n, d) * GeneratorPolynomial::monomial(GeneratorMonomial{}); }

VerificationReport weyl_invariance(const std::string& name, const JacobiElement& f, Exponent order)
{
    for (const auto& [e, x] : f.to_group_algebra()) {
        if (!x.is_weyl_invariant()) {
            return fail_report(name, order, FailureDetail{exponent_string(e), std::nullopt, "not invariant", "invariant"});
        }
    }
    return pass_report(name, order);
}

} // namespace

InvariantElement expected_initial_term(int i)
{
    switch (i) {
    case 0:
        return S(1) + S(3) + S(4) + constant(48);
    case 1:
        return S(1) + S(3) + S(4) - constant(24);
    case 2:
        return S(3) + S(4) - Rational(2) * S(1);
    case 3:
        return S(3) - S(4);
    case 4: {
        const InvariantElement bracket = Rational(2) * S(1) * S(1) + Rational(2) * S(3) * S(3) +
                                         Rational(2) * S(4) * S(4) + S(1) * S(3) + S(1) * S(4) + S(3) * S(4) +
                                         Rational(24) * (S(1) + S(3) + S(4)) - Rational(36) * S(2) - constant(288);
        return make_rational(-1, 36) * bracket;
    }
    default:
        throw std::out_of_range("generator index out of range");
    }
}

std::vector<VerificationReport> generator_checks(Exponent order)
{
    std::vector<VerificationReport> out;
    const Exponent low = std::min<Exponent>(order, 4 * Q);
    const PuiseuxSeries head0({{0, Rational(1)}, {Q, Rational(24)}, {2 * Q, Rational(24)}, {3 * Q, Rational(96)}}, low);
    out.push_back(compare_series("eta^4 chi0^q = 1 + 24 q + 24 q^2 + 96 q^3 + ...", eta4_chi_q(0, low), head0, low));
    const Exponent half = std::min<Exponent>(order, Q);
    out.push_back(compare_series("eta^4 chi1^q = 8 q^{1/2} + ...", eta4_chi_q(1, half),
                                 PuiseuxSeries({{Q / 2, Rational(8)}}, half), half));
    const int chars[] = {0, 1, 3, 4};
    for (int i : chars) {
        const JacobiElement d = op_Dscript(character(i, order));
        out.push_back(compare_jacobi("Dscript chi" + std::to_string(i) + " = 0", d, JacobiElement(d.weight2(), d.index(), {}, kExact),
                                     order));
    }
    const int weight2[] = {0, -4, -8, -8, -12};
    const int index[] = {1, 1, 1, 1, 2};
    for (int i = 0; i < 5; ++i) {
        const JacobiElement g = build_generator(i, order);
        const std::string name = "shat" + std::to_string(i);
        if (g.weight2() != weight2[i] || g.index() != index[i]) {
            out.push_back(fail_report(name + " grading", order,
                                      FailureDetail{"grading", std::nullopt,
                                                    std::to_string(g.weight2()) + "/" + std::to_string(g.index()),
                                                    std::to_string(weight2[i]) + "/" + std::to_string(index[i])}));
        } else {
            out.push_back(pass_report(name + " grading", order));
        }
        const InvariantElement got = initial_term(g);
        const InvariantElement want = expected_initial_term(i);
        out.push_back(got == want ? pass_report(name + " initial term", order)
                                  : fail_report(name + " initial term", order,
                                                FailureDetail{"0", std::nullopt, to_string(got), to_string(want)}));
        out.push_back(weyl_invariance(name + " Weyl invariant", g, order));
    }
    return out;
}

std::vector<std::pair<std::pair<int, int>, GeneratorPolynomial>> bracket_table_expected()
{
    const GeneratorPolynomial q23 = s(2) * s(2) + r(3) * s(3) * s(3);
    const GeneratorPolynomial mixed = s(2) * (s(2) + r(3) * s(3)) * (r(3) * s(3) - s(2));
    return {
        {{0, 3}, r(-1, 6) * (r(3) * E(4) * s(1) + E(6) * s(2)) * s(3)},
        {{1, 3}, r(-1, 6) * (r(2) * s(0) + E(4) * s(2)) * s(3)},
        {{2, 3}, r(-1, 3) * s(1) * s(3)},
        {{3, 3}, r(4) * s(4) - r(1, 9) * s(1) * s(2)},
        {{2, 2}, r(12) * s(4) + r(1, 3) * s(1) * s(2)},
        {{1, 2}, r(-1, 3) * s(0) * s(2) - r(1, 4) * E(4) * s(3) * s(3) + r(1, 12) * E(4) * s(2) * s(2)},
        {{0, 2}, r(-1, 4) * E(6) * s(3) * s(3) - r(1, 12) * (r(6) * E(4) * s(1) - E(6) * s(2)) * s(2)},
        {{1, 1}, r(6) * E(4) * s(4) - r(1, 6) * s(0) * s(1) - r(1, 24) * E(6) * q23},
        {{0, 1}, r(6) * E(6) * s(4) - r(1, 3) * E(4) * s(1) * s(1) - r(1, 24) * E(4) * E(4) * q23},
        {{0, 0}, r(6) * E(4) * E(4) * s(4) - r(1, 3) * E(6) * s(1) * s(1) - r(1, 6) * E(4) * s(0) * s(1) -
                     r(1, 24) * E(4) * E(6) * q23},
        {{3, 4}, r(1, 432) * s(3) *
                     (r(8) * s(1) * s(1) + r(8) * s(0) * s(2) + E(4) * s(2) * s(2) + r(3) * E(4) * s(3) * s(3))},
        {{2, 4}, r(1, 36) * s(0) * s(3) * s(3) + r(1, 54) * s(1) * s(1) * s(2) - r(1, 108) * s(0) * s(2) * s(2) +
                     r(1, 432) * E(4) * s(2) * q23},
        {{1, 4}, r(-1, 2) * s(0) * s(4) + r(1, 144) * E(4) * s(1) * q23 + r(1, 864) * E(6) * mixed},
        {{0, 4}, r(-5, 6) * E(4) * s(1) * s(4) + r(1, 144) * E(6) * s(1) * q23 + r(1, 864) * E(4) * E(4) * mixed},
        {{4, 4}, r(1, 432) * s(4) * (r(8) * s(1) * s(1) + E(4) * s(2) * s(2) + r(3) * E(4) * s(3) * s(3)) -
                     r(5, 7776) * s(0) * s(1) * q23 - r(1, 31104) * E(6) * s(2) * s(2) * s(2) * s(2) -
                     r(1, 5184) * E(4) * s(1) * mixed -
                     r(1, 10368) * E(6) * s(3) * s(3) * (r(2) * s(2) * s(2) + r(3) * s(3) * s(3))},
        {{-1, 1}, r(-1, 3) * s(0)},
        {{-1, 0}, r(-2, 3) * E(4) * s(1)},
    };
}

std::vector<VerificationReport> bracket_table_checks(Exponent order)
{
    std::vector<VerificationReport> out;
    for (const auto& [key, want] : bracket_table_expected()) {
        const auto [i, j] = key;
        const std::string name = i < 0 ? "Dscript(shat" + std::to_string(j) + ")"
                                       : "Iscript(shat" + std::to_string(i) + ", shat" + std::to_string(j) + ")";
        const JacobiElement value = i < 0 ? op_Dscript(build_generator(j, order))
                                          : i_bracket(build_generator(i, order), build_generator(j, order));
        try {
            const GeneratorPolynomial got = express_in_generators(value);
            out.push_back(got == want ? pass_report(name, order)
                                      : fail_report(name, order,
                                                    FailureDetail{"expansion", std::nullopt, to_string(got),
                                                                  to_string(want)}));
        } catch (const std::runtime_error& e) {
            out.push_back(fail_report(name, order, FailureDetail{"expansion", std::nullopt, e.what(), to_string(want)}));
        }
    }
    return out;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"kz",           "halphen",    "char-identities", "a-matrices",
                                                   "bracket-table", "generators", "j1",              "j0",
                                                   "potential",     "wdvv"};
    return names;
}

bool is_suite(const std::string& name)
{
    if (name == "all") {
        return true;
    }
    for (const auto& n : suite_names()) {
        if (n == name) {
            return true;
        }
    }
    return false;
}

std::vector<VerificationReport> run_suite(const std::string& name, Exponent order)
{
    if (order <= 0) {
        throw std::invalid_argument("order must be positive");
    }
    if (name == "all") {
        std::vector<VerificationReport> out;
        for (const auto& n : suite_names()) {
            auto part = run_suite(n, order);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    if (name == "kz") {
        return kz_checks(order);
    }
    if (name == "halphen") {
        return halphen_checks(order);
    }
    if (name == "char-identities") {
        auto out = char_identities(order);
        auto sym = halphen_symmetric_checks(order);
        out.insert(out.end(), sym.begin(), sym.end());
        return out;
    }
    if (name == "a-matrices") {
        return a_matrix_checks(order);
    }
    if (name == "bracket-table") {
        return bracket_table_checks(order);
    }
    if (name == "generators") {
        return generator_checks(order);
    }
    if (name == "j1") {
        return {j1_table_check(order), v_frame_check(order), y_frame_check(), u4_b4_check(order)};
    }
    if (name == "j0") {
        return {j0_matrix_check(order)};
    }
    if (name == "potential") {
        auto out = potential_identity_check(order);
        out.push_back(potential_degree_check(order));
        return out;
    }
    if (name == "wdvv") {
        std::vector<VerificationReport> out = {wdvv_check(order), unit_check(order)};
        PotentialCoefficients f = potential_coefficients(order + Q);
        f.f0 += PuiseuxSeries::monomial(make_rational(1, 100), Q / 2);
        const VerificationReport perturbed = wdvv_check(f, order);
        out.push_back(perturbed.pass ? fail_report("perturbed f0 breaks WDVV", order,
                                                   FailureDetail{"-", std::nullopt, "associative", "non-associative"})
                                     : pass_report("perturbed f0 breaks WDVV", order));
        return out;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace frobd4
