#include "frobd4/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "frobd4/frobenius.hpp"
#include "frobd4/jacobi.hpp"
#include "frobd4/json_io.hpp"
#include "frobd4/modforms.hpp"
#include "frobd4/suites.hpp"

namespace frobd4::cli {

namespace {

constexpr Exponent Q = kExponentDenominator;

// What an expand target produces.
struct Value {
    enum class Kind { series, jacobi, bpoly } kind = Kind::series;
    PuiseuxSeries series;
    JacobiElement jacobi;
    BPolynomial bpoly;
};

Value series_value(PuiseuxSeries f)
{
    Value v;
    v.series = std::move(f);
    return v;
}

Value jacobi_value(JacobiElement f)
{
    Value v;
    v.kind = Value::Kind::jacobi;
    v.jacobi = std::move(f);
    return v;
}

using Builder = std::function<Value(Exponent)>;

const std::map<std::string, Builder>& builders()
{
    static const std::map<std::string, Builder> table = [] {
        std::map<std::string, Builder> m;
        for (const char* name : {"eta", "E2", "E4", "E6", "theta2", "theta3", "theta4"}) {
            const NamedSeriesId id = *parse_named_series(name);
            m[name] = [id](Exponent o) { return series_value(named_series(id, o)); };
        }
        for (int k : {2, 3, 4}) {
            m["xi" + std::to_string(k)] = [k](Exponent o) { return series_value(xi(k, o)); };
        }
        m["f0"] = [](Exponent o) { return series_value(potential_coefficients(o).f0); };
        m["f1"] = [](Exponent o) { return series_value(potential_coefficients(o).f1); };
        m["f2"] = [](Exponent o) { return series_value(potential_coefficients(o).f2); };
        for (int i : {0, 1}) {
            m["eta4chi" + std::to_string(i)] = [i](Exponent o) { return series_value(eta4_chi_q(i, o)); };
        }
        for (int i : {0, 1, 3, 4}) {
            m["chi" + std::to_string(i)] = [i](Exponent o) { return jacobi_value(character(i, o)); };
        }
        for (int i = 0; i < 5; ++i) {
            m["s" + std::to_string(i)] = [i](Exponent o) { return jacobi_value(build_generator(i, o)); };
            m["b" + std::to_string(i)] = [i](Exponent o) { return jacobi_value(flat_coordinates(o).b[i]); };
        }
        m["u4"] = [](Exponent o) { return jacobi_value(u4_from_s(o)); };
        m["potential"] = [](Exponent o) {
            Value v;
            v.kind = Value::Kind::bpoly;
            v.bpoly = potential(o);
            return v;
        };
        return m;
    }();
    return table;
}

std::string bpoly_string(const BPolynomial& p)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        os << (first ? "" : "\n+ ") << "(" << to_string(c) << ")";
        first = false;
        for (int i = -1; i <= 4; ++i) {
            const int e = m[bvar(i)];
            if (e > 0) {
                os << " b" << i;
                if (e > 1) {
                    os << "^" << e;
                }
            }
        }
    }
    return first ? "0" : os.str();
}

int unsupported_format(const std::string& target, std::ostream& err)
{
    err << "error: " << target << " cannot be written in this format\n";
    return kExitUnknown;
}

int write_value(const Value& v, const Command& cmd, std::ostream& out, std::ostream& err)
{
    switch (cmd.format) {
    case Format::text:
        if (v.kind == Value::Kind::series) {
            out << to_string(v.series) << "\n";
        } else if (v.kind == Value::Kind::jacobi) {
            out << to_string(v.jacobi) << "\n";
        } else {
            out << bpoly_string(v.bpoly) << "\n";
        }
        return kExitPass;
    case Format::json:
        if (v.kind == Value::Kind::series) {
            out << to_json(v.series).dump(2) << "\n";
        } else if (v.kind == Value::Kind::jacobi) {
            out << to_json(v.jacobi).dump(2) << "\n";
        } else {
            out << to_json(v.bpoly).dump(2) << "\n";
        }
        return kExitPass;
    case Format::csv:
        if (v.kind != Value::Kind::series) {
            return unsupported_format(cmd.target, err);
        }
        out << to_csv(v.series);
        return kExitPass;
    }
    return kExitUnknown;
}

int write_reports(const std::vector<VerificationReport>& reports, const Command& cmd, std::ostream& out,
                  std::ostream& err)
{
    const bool pass = all_pass(reports);
    if (cmd.format == Format::csv) {
        return unsupported_format(cmd.target, err);
    }
    if (cmd.format == Format::json) {
        out << to_json(reports).dump(2) << "\n";
    } else {
        const auto passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
        for (const auto& r : reports) {
            out << to_string(r) << "\n";
        }
        out << "summary: " << passed << " of " << reports.size() << " passed\n";
    }
    return pass ? kExitPass : kExitFail;
}

std::string cell(const std::optional<Rational>& x) { return x ? to_string(*x) : "nonconstant"; }

int table_j0(const Command& cmd, std::ostream& out, std::ostream& err)
{
    const J0Result r = j0_matrix(cmd.order);
    if (cmd.format == Format::csv) {
        return unsupported_format(cmd.target, err);
    }
    if (cmd.format == Format::json) {
        nlohmann::json j = {{"matrix", to_json(r.matrix)}, {"report", to_json(r.report)}};
        out << j.dump(2) << "\n";
    } else {
        std::size_t width = 0;
        for (const auto& row : r.matrix) {
            for (const auto& x : row) {
                width = std::max(width, cell(x).size());
            }
        }
        out << "J0*(db_i, db_j), i, j = -1 .. 4\n";
        for (const auto& row : r.matrix) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                const std::string c = cell(row[j]);
                out << (j ? " " : "") << std::string(width - c.size(), ' ') << c;
            }
            out << "\n";
        }
        out << to_string(r.report) << "\n";
    }
    return r.report.pass ? kExitPass : kExitFail;
}

std::string key_string(const std::pair<int, int>& k)
{
    return std::to_string(k.first) + "," + std::to_string(k.second);
}

int table_j1(const Command& cmd, std::ostream& out, std::ostream& err)
{
    const J1Table t = j1_table(cmd.order);
    const J1Table want = j1_expected();
    const bool pass = t == want;
    if (cmd.format == Format::csv) {
        return unsupported_format(cmd.target, err);
    }
    if (cmd.format == Format::json) {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, p] : t) {
            j[key_string(k)] = to_json(p);
        }
        out << j.dump(2) << "\n";
    } else {
        out << "J1*(ds~_i, ds~_j) / eta^4 for i >= 0 (row -1 is constant), -1 <= i <= j <= 4\n";
        for (const auto& [k, p] : t) {
            out << "(" << key_string(k) << ") " << to_string(p) << "\n";
        }
        out << (pass ? "PASS" : "FAIL") << " J1* table matches\n";
    }
    return pass ? kExitPass : kExitFail;
}

int table_duality(const Command& cmd, std::ostream& out, std::ostream& err)
{
    if (cmd.format == Format::csv) {
        return unsupported_format(cmd.target, err);
    }
    bool pass = true;
    nlohmann::json j = nlohmann::json::array();
    for (long n = 1; n <= 7; ++n) {
        const Rational k = make_rational(n, 2);
        const DualityResult d = duality_pairing(k, cmd.order);
        pass = pass && d.report.pass;
        auto as_json = [](const RationalMatrix2& m) {
            return nlohmann::json::array({nlohmann::json::array({to_string(m[0][0]), to_string(m[0][1])}),
                                          nlohmann::json::array({to_string(m[1][0]), to_string(m[1][1])})});
        };
        if (cmd.format == Format::json) {
            j.push_back({{"k", to_string(k)}, {"matrix", as_json(d.matrix)}, {"report", to_json(d.report)}});
        } else {
            out << "k = " << to_string(k) << ": [[" << to_string(d.matrix[0][0]) << ", " << to_string(d.matrix[0][1])
                << "], [" << to_string(d.matrix[1][0]) << ", " << to_string(d.matrix[1][1]) << "]]  "
                << (d.report.pass ? "PASS" : "FAIL") << "\n";
        }
    }
    if (cmd.format == Format::json) {
        out << j.dump(2) << "\n";
    }
    return pass ? kExitPass : kExitFail;
}

using TableFn = int (*)(const Command&, std::ostream&, std::ostream&);

const std::map<std::string, TableFn>& tables()
{
    static const std::map<std::string, TableFn> t = {{"j0", table_j0}, {"j1", table_j1}, {"duality", table_duality}};
    return t;
}

int unknown(const std::string& target, std::ostream& err)
{
    err << "error: unknown target '" << target << "'\n";
    return kExitUnknown;
}

} // namespace

Exponent parse_order(const std::string& text)
{
    const Rational r = parse_rational(text);
    if (r <= 0) {
        throw std::invalid_argument("order must be positive");
    }
    return to_exponent(r);
}

const std::vector<std::string>& expand_targets()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, b] : builders()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

const std::vector<std::string>& table_targets()
{
    static const std::vector<std::string> names = {"duality", "j0", "j1"};
    return names;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err)
{
    if (cmd.order <= 0) {
        err << "error: order must be positive\n";
        return kExitUnknown;
    }
    try {
        const auto expand_it = builders().find(cmd.target);
        const auto table_it = tables().find(cmd.target);
        switch (cmd.verb) {
        case Verb::expand:
            if (expand_it == builders().end()) {
                return unknown(cmd.target, err);
            }
            return write_value(expand_it->second(cmd.order), cmd, out, err);
        case Verb::verify:
            if (!is_suite(cmd.target)) {
                return unknown(cmd.target, err);
            }
            return write_reports(run_suite(cmd.target, cmd.order), cmd, out, err);
        case Verb::table:
            if (table_it == tables().end()) {
                return unknown(cmd.target, err);
            }
            return table_it->second(cmd, out, err);
        case Verb::exportv:
            if (expand_it != builders().end()) {
                return write_value(expand_it->second(cmd.order), cmd, out, err);
            }
            if (table_it != tables().end()) {
                return table_it->second(cmd, out, err);
            }
            if (is_suite(cmd.target)) {
                return write_reports(run_suite(cmd.target, cmd.order), cmd, out, err);
            }
            return unknown(cmd.target, err);
        }
    } catch (const std::exception& e) {
        // A computation that cannot complete counts as a failed check.
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUnknown;
}

} // namespace frobd4::cli
