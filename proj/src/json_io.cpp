#include "frobd4/json_io.hpp"

#include <stdexcept>

namespace frobd4 {

using nlohmann::json;

namespace {

std::string str(const Integer& n) { return n.get_str(); }

json exponent_json(Exponent e)
{
    const Rational v = exponent_value(e);
    return json{{"num", str(v.get_num())}, {"den", str(v.get_den())}};
}

Rational rational_field(const json& j, const char* num, const char* den)
{
    return make_rational(Integer(j.at(num).get<std::string>()), Integer(j.at(den).get<std::string>()));
}

Exponent trunc_from_json(const json& j)
{
    if (j.is_null()) {
        return kExact;
    }
    return to_exponent(rational_field(j, "num", "den"));
}

} // namespace

json to_json(const PuiseuxSeries& f)
{
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) {
        const Rational v = exponent_value(e);
        terms.push_back(json{{"num", str(v.get_num())},
                             {"den", str(v.get_den())},
                             {"coeff_num", str(c.get_num())},
                             {"coeff_den", str(c.get_den())}});
    }
    return json{{"terms", terms}, {"trunc", f.is_exact() ? json(nullptr) : exponent_json(f.trunc())}};
}

PuiseuxSeries series_from_json(const json& j)
{
    PuiseuxSeries::Terms terms;
    for (const auto& t : j.at("terms")) {
        terms[to_exponent(rational_field(t, "num", "den"))] += rational_field(t, "coeff_num", "coeff_den");
    }
    return PuiseuxSeries(terms, trunc_from_json(j.at("trunc")));
}

json to_json(const GroupAlgebraElement& x)
{
    json out = json::array();
    for (const auto& [lambda, c] : x.terms()) {
        json coords = json::array();
        for (int i = 0; i < 4; ++i) {
            coords.push_back(to_string(lambda.coord(i)));
        }
        out.push_back(json{{"coords", coords}, {"coeff", to_string(c)}});
    }
    return out;
}

GroupAlgebraElement group_algebra_from_json(const json& j)
{
    GroupAlgebraElement x;
    for (const auto& t : j) {
        std::array<Rational, 4> coords;
        for (int i = 0; i < 4; ++i) {
            coords[static_cast<std::size_t>(i)] = parse_rational(t.at("coords").at(i).get<std::string>());
        }
        x.add_term(WeightVector::from_coords(coords), parse_rational(t.at("coeff").get<std::string>()));
    }
    return x;
}

json to_json(const JacobiElement& f)
{
    json terms = json::array();
    for (const auto& [e, x] : f.body()) {
        const Rational v = exponent_value(e);
        terms.push_back(
            json{{"q_num", str(v.get_num())}, {"q_den", str(v.get_den())}, {"lattice", to_json(x.to_group_algebra())}});
    }
    return json{{"weight_times_2", f.weight2()},
                {"index", f.index()},
                {"terms", terms},
                {"trunc", f.trunc() == kExact ? json(nullptr) : exponent_json(f.trunc())}};
}

JacobiElement jacobi_from_json(const json& j)
{
    JacobiElement::Body body;
    for (const auto& t : j.at("terms")) {
        const Exponent e = to_exponent(rational_field(t, "q_num", "q_den"));
        body[e] = InvariantElement::from_group_algebra(group_algebra_from_json(t.at("lattice")));
    }
    return JacobiElement(j.at("weight_times_2").get<int>(), j.at("index").get<int>(), std::move(body),
                         trunc_from_json(j.at("trunc")));
}

json to_json(const GeneratorPolynomial& p)
{
    static const char* keys[] = {"a", "b", "c0", "c1", "c2", "c3", "c4"};
    json out = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        for (std::size_t i = 0; i < m.size(); ++i) {
            t[keys[i]] = m[i];
        }
        t["coeff"] = to_string(c);
        out.push_back(t);
    }
    return out;
}

json to_json(const BPolynomial& p)
{
    static const char* keys[] = {"c_minus1", "c0", "c1", "c2", "c3", "c4"};
    json out = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        for (std::size_t i = 0; i < m.size(); ++i) {
            t[keys[i]] = m[i];
        }
        t["coeff_series"] = to_json(c);
        out.push_back(t);
    }
    return out;
}

json to_json(const VerificationReport& r)
{
    json failure = nullptr;
    if (r.first_failure) {
        const FailureDetail& d = *r.first_failure;
        failure = json{{"exponent", d.exponent}, {"got", d.got}, {"expected", d.expected}};
        if (d.lattice) {
            failure["lattice"] = *d.lattice;
        }
    }
    return json{{"name", r.name},
                {"order", exponent_string(r.order)},
                {"status", r.pass ? "pass" : "fail"},
                {"first_failure", failure}};
}

json to_json(const std::vector<VerificationReport>& reports)
{
    json out = json::array();
    for (const auto& r : reports) {
        out.push_back(to_json(r));
    }
    return out;
}

json to_json(const J0Matrix& m)
{
    json out = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& v : row) {
            r.push_back(v ? to_string(*v) : std::string("nonconstant"));
        }
        out.push_back(r);
    }
    return out;
}

std::string to_csv(const PuiseuxSeries& f)
{
    std::string out = "exponent_num,exponent_den,coeff_num,coeff_den\n";
    for (const auto& [e, c] : f.terms()) {
        const Rational v = exponent_value(e);
        out += str(v.get_num()) + "," + str(v.get_den()) + "," + str(c.get_num()) + "," + str(c.get_den()) + "\n";
    }
    return out;
}

} // namespace frobd4
