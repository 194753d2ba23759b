#ifndef FROBD4_SUITES_HPP
#define FROBD4_SUITES_HPP

#include <string>
#include <vector>

#include "frobd4/jacobi.hpp"
#include "frobd4/report.hpp"

namespace frobd4 {

// Characters, their Dscript annihilation, initial terms, gradings and Weyl
// invariance of the generators.
std::vector<VerificationReport> generator_checks(Exponent order);

// The 15 Iscript-bracket expansions of the generators plus Dscript(shat_0),
// Dscript(shat_1), each compared after express_in_generators.
std::vector<VerificationReport> bracket_table_checks(Exponent order);

// Right-hand sides of the bracket table, keyed by (i, j); (-1, i) holds Dscript(shat_i).
std::vector<std::pair<std::pair<int, int>, GeneratorPolynomial>> bracket_table_expected();

// Expected q^0 coefficients of shat_0 .. shat_4 in the orbit-sum basis.
InvariantElement expected_initial_term(int i);

// Suites in registry order: kz, halphen, char-identities, a-matrices,
// bracket-table, generators, j1, j0, potential, wdvv.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// "all" runs every suite; throws std::invalid_argument for an unknown name.
std::vector<VerificationReport> run_suite(const std::string& name, Exponent order);

} // namespace frobd4

#endif
