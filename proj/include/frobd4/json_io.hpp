#ifndef FROBD4_JSON_IO_HPP
#define FROBD4_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "frobd4/frobenius.hpp"
#include "frobd4/jacobi.hpp"
#include "frobd4/qseries.hpp"
#include "frobd4/report.hpp"
#include "frobd4/weyl_d4.hpp"

namespace frobd4 {

// Integers are written as decimal strings so arbitrary sizes survive a round trip.

// {"terms": [{num, den, coeff_num, coeff_den}], "trunc": {num, den} | null}
nlohmann::json to_json(const PuiseuxSeries& f);
PuiseuxSeries series_from_json(const nlohmann::json& j);

// [{coords: [4 rationals], coeff}] sorted lexicographically by coords
nlohmann::json to_json(const GroupAlgebraElement& x);
GroupAlgebraElement group_algebra_from_json(const nlohmann::json& j);

// {weight_times_2, index, terms: [{q_num, q_den, lattice}], trunc}
nlohmann::json to_json(const JacobiElement& f);
JacobiElement jacobi_from_json(const nlohmann::json& j);

// [{a, b, c0, ..., c4, coeff}]
nlohmann::json to_json(const GeneratorPolynomial& p);

// [{c_minus1, c0, ..., c4, coeff_series}]
nlohmann::json to_json(const BPolynomial& p);

// {name, order, status, first_failure}
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const std::vector<VerificationReport>& reports);

// 6x6 array of rational strings, "nonconstant" for missing entries.
nlohmann::json to_json(const J0Matrix& m);

// Header exponent_num,exponent_den,coeff_num,coeff_den then one row per term.
std::string to_csv(const PuiseuxSeries& f);

} // namespace frobd4

#endif
