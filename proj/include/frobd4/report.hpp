#ifndef FROBD4_REPORT_HPP
#define FROBD4_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "frobd4/jacobi.hpp"
#include "frobd4/qseries.hpp"

namespace frobd4 {

struct FailureDetail {
    std::string exponent;
    std::optional<std::string> lattice;
    std::string got;
    std::string expected;
};

// Outcome of checking one named identity to a truncation order.
struct VerificationReport {
    std::string name;
    Exponent order = 0;
    bool pass = false;
    std::optional<FailureDetail> first_failure;
};

VerificationReport pass_report(std::string name, Exponent order);
VerificationReport fail_report(std::string name, Exponent order, FailureDetail detail);

// Exact comparison below order; also fails when either side is not known to order.
VerificationReport compare_series(std::string name, const PuiseuxSeries& got, const PuiseuxSeries& expected,
                                  Exponent order);
VerificationReport compare_jacobi(std::string name, const JacobiElement& got, const JacobiElement& expected,
                                  Exponent order);
// got must vanish below order.
VerificationReport check_zero(std::string name, const PuiseuxSeries& residual, Exponent order);

// Folds several reports into one; the first failure wins.
VerificationReport combine(std::string name, Exponent order, const std::vector<VerificationReport>& parts);

bool all_pass(const std::vector<VerificationReport>& reports);

// One line: "PASS name (order N)" or "FAIL name (order N): first failure ...".
std::string to_string(const VerificationReport& r);

} // namespace frobd4

#endif
