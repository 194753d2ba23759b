#ifndef FROBD4_CLI_HPP
#define FROBD4_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "frobd4/qseries.hpp"

namespace frobd4::cli {

enum class Verb { expand, verify, table, exportv };
enum class Format { text, json, csv };

struct Command {
    Verb verb = Verb::expand;
    std::string target;
    Exponent order = 4 * kExponentDenominator;
    Format format = Format::text;
};

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUnknown = 2;

// "N" or "N/24" (any rational whose denominator divides 24); throws
// std::invalid_argument for malformed or non-positive orders.
Exponent parse_order(const std::string& text);

// Names accepted by expand and by table.
const std::vector<std::string>& expand_targets();
const std::vector<std::string>& table_targets();

// Runs one command, writing the result to out and diagnostics to err.
// Returns 0 when every check passes, 1 on a failed check, 2 for an unknown
// target or a format the target cannot be written in.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

} // namespace frobd4::cli

#endif
