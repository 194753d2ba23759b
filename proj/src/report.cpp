#include "frobd4/report.hpp"

namespace frobd4 {

VerificationReport pass_report(std::string name, Exponent order)
{
    return VerificationReport{std::move(name), order, true, std::nullopt};
}

VerificationReport fail_report(std::string name, Exponent order, FailureDetail detail)
{
    return VerificationReport{std::move(name), order, false, std::move(detail)};
}

namespace {

FailureDetail precision_failure(Exponent trunc)
{
    return FailureDetail{exponent_string(trunc), std::nullopt, "unknown (truncated)", "known coefficient"};
}

} // namespace

VerificationReport compare_series(std::string name, const PuiseuxSeries& got, const PuiseuxSeries& expected,
                                  Exponent order)
{
    const Exponent known = std::min(got.trunc(), expected.trunc());
    const PuiseuxSeries diff = (got - expected).truncated(order);
    if (!diff.is_zero()) {
        const Exponent e = diff.valuation();
        return fail_report(std::move(name), order,
                           FailureDetail{exponent_string(e), std::nullopt, to_string(got.coeff(e)),
                                         to_string(expected.coeff(e))});
    }
    if (known < order) {
        return fail_report(std::move(name), order, precision_failure(known));
    }
    return pass_report(std::move(name), order);
}

VerificationReport check_zero(std::string name, const PuiseuxSeries& residual, Exponent order)
{
    return compare_series(std::move(name), residual, PuiseuxSeries(Rational(0)), order);
}

VerificationReport compare_jacobi(std::string name, const JacobiElement& got, const JacobiElement& expected,
                                  Exponent order)
{
    if (got.weight2() != expected.weight2() || got.index() != expected.index()) {
        return fail_report(std::move(name), order,
                           FailureDetail{"grading", std::nullopt,
                                         "weight " + to_string(got.weight()) + ", index " + std::to_string(got.index()),
                                         "weight " + to_string(expected.weight()) + ", index " +
                                             std::to_string(expected.index())});
    }
    const Exponent known = std::min(got.trunc(), expected.trunc());
    const JacobiElement diff = (got - expected).truncated(order);
    if (!diff.is_zero()) {
        const Exponent e = diff.valuation();
        const auto& [lambda, c] = *diff.body().begin()->second.terms().begin();
        const InvariantElement g = got.coeff(e);
        const InvariantElement x = expected.coeff(e);
        return fail_report(std::move(name), order,
                           FailureDetail{exponent_string(e), to_string(lambda), to_string(g.coeff(lambda)),
                                         to_string(x.coeff(lambda))});
    }
    if (known < order) {
        return fail_report(std::move(name), order, precision_failure(known));
    }
    return pass_report(std::move(name), order);
}

VerificationReport combine(std::string name, Exponent order, const std::vector<VerificationReport>& parts)
{
    for (const auto& p : parts) {
        if (!p.pass) {
            FailureDetail d = p.first_failure.value_or(FailureDetail{});
            d.exponent = p.name + " @ " + d.exponent;
            return fail_report(std::move(name), order, std::move(d));
        }
    }
    return pass_report(std::move(name), order);
}

bool all_pass(const std::vector<VerificationReport>& reports)
{
    for (const auto& r : reports) {
        if (!r.pass) {
            return false;
        }
    }
    return true;
}

std::string to_string(const VerificationReport& r)
{
    std::string s = (r.pass ? "PASS " : "FAIL ") + r.name + " (order " + exponent_string(r.order) + ")";
    if (!r.pass && r.first_failure) {
        const auto& f = *r.first_failure;
        s += ": first failure at q^" + f.exponent;
        if (f.lattice) {
            s += " S" + *f.lattice;
        }
        s += ", got " + f.got + ", expected " + f.expected;
    }
    return s;
}

} // namespace frobd4
