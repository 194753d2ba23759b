#include "frobd4/weyl_d4.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <stdexcept>

namespace frobd4 {

WeightVector WeightVector::from_doubled(const std::array<int, 4>& twice)
{
    const int parity = std::abs(twice[0]) % 2;
    for (int t : twice) {
        if (std::abs(t) % 2 != parity) {
            throw std::invalid_argument("coordinates mix integers and half-integers");
        }
    }
    return WeightVector(twice);
}

WeightVector WeightVector::from_coords(const std::array<Rational, 4>& coords)
{
    std::array<int, 4> twice{};
    for (std::size_t i = 0; i < 4; ++i) {
        Rational d = coords[i] * 2;
        if (!is_integer(d) || !d.get_num().fits_sint_p()) {
            throw std::invalid_argument("coordinate " + to_string(coords[i]) + " is not in (1/2)Z");
        }
        twice[i] = static_cast<int>(d.get_num().get_si());
    }
    return from_doubled(twice);
}

long WeightVector::norm4() const { return inner4(*this, *this); }

WeightVector WeightVector::operator+(const WeightVector& o) const
{
    std::array<int, 4> t{};
    for (std::size_t i = 0; i < 4; ++i) {
        t[i] = twice_[i] + o.twice_[i];
    }
    return from_doubled(t);
}

WeightVector WeightVector::operator-(const WeightVector& o) const { return *this + (-o); }

WeightVector WeightVector::operator-() const
{
    std::array<int, 4> t{};
    for (std::size_t i = 0; i < 4; ++i) {
        t[i] = -twice_[i];
    }
    return WeightVector(t);
}

WeightVector WeightVector::scaled(int n) const
{
    std::array<int, 4> t{};
    for (std::size_t i = 0; i < 4; ++i) {
        t[i] = n * twice_[i];
    }
    return from_doubled(t);
}

long inner4(const WeightVector& a, const WeightVector& b)
{
    long s = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        s += static_cast<long>(a.doubled()[i]) * b.doubled()[i];
    }
    return s;
}

Rational inner(const WeightVector& a, const WeightVector& b) { return make_rational(inner4(a, b), 4); }

WeightVector simple_root(int i)
{
    switch (i) {
    case 1:
        return WeightVector::from_doubled({2, -2, 0, 0});
    case 2:
        return WeightVector::from_doubled({0, 2, -2, 0});
    case 3:
        return WeightVector::from_doubled({0, 0, 2, -2});
    case 4:
        return WeightVector::from_doubled({0, 0, 2, 2});
    default:
        throw std::out_of_range("simple root index must be 1..4");
    }
}

WeightVector fundamental_weight(int i)
{
    switch (i) {
    case 1:
        return WeightVector::from_doubled({2, 0, 0, 0});
    case 2:
        return WeightVector::from_doubled({2, 2, 0, 0});
    case 3:
        return WeightVector::from_doubled({1, 1, 1, -1});
    case 4:
        return WeightVector::from_doubled({1, 1, 1, 1});
    default:
        throw std::out_of_range("fundamental weight index must be 1..4");
    }
}

WeightVector WeylElement::apply(const WeightVector& v) const
{
    std::array<int, 4> t{};
    for (std::size_t i = 0; i < 4; ++i) {
        t[i] = sign[i] * v.doubled()[static_cast<std::size_t>(perm[i])];
    }
    return WeightVector::from_doubled(t);
}

const std::vector<WeylElement>& weyl_group()
{
    static const std::vector<WeylElement> group = [] {
        std::vector<WeylElement> g;
        std::array<int, 4> perm{0, 1, 2, 3};
        do {
            for (int mask = 0; mask < 16; ++mask) {
                if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 != 0) {
                    continue;
                }
                WeylElement w{perm, {}};
                for (std::size_t i = 0; i < 4; ++i) {
                    w.sign[i] = (mask >> i) & 1 ? -1 : 1;
                }
                g.push_back(w);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return g;
    }();
    return group;
}

WeightVector reflect(const WeightVector& v, int simple_index)
{
    const WeightVector a = simple_root(simple_index);
    // <v, a> is an integer for lattice vectors; doubled(a) = 2a.
    const long c = inner4(v, a) / 4;
    return v - a.scaled(static_cast<int>(c));
}

bool is_dominant(const WeightVector& v)
{
    for (int i = 1; i <= 4; ++i) {
        if (inner4(v, simple_root(i)) < 0) {
            return false;
        }
    }
    return true;
}

WeightVector dominant_representative(const WeightVector& v)
{
    std::array<int, 4> t = v.doubled();
    int sign = 1;
    bool has_zero = false;
    for (int& x : t) {
        if (x < 0) {
            sign = -sign;
            x = -x;
        } else if (x == 0) {
            has_zero = true;
        }
    }
    std::sort(t.begin(), t.end(), std::greater<>());
    if (!has_zero && sign < 0) {
        t[3] = -t[3];
    }
    return WeightVector::from_doubled(t);
}

namespace {

const std::vector<WeightVector>& cached_orbit(const WeightVector& dominant)
{
    static std::shared_mutex mutex;
    static std::map<WeightVector, std::vector<WeightVector>> cache;
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(dominant);
        if (it != cache.end()) {
            return it->second;
        }
    }
    std::set<WeightVector> orbit;
    for (const WeylElement& w : weyl_group()) {
        orbit.insert(w.apply(dominant));
    }
    std::vector<WeightVector> list(orbit.begin(), orbit.end());
    std::unique_lock lock(mutex);
    return cache.try_emplace(dominant, std::move(list)).first->second;
}

} // namespace

std::vector<WeightVector> weyl_orbit(const WeightVector& v) { return cached_orbit(dominant_representative(v)); }

long orbit_size(const WeightVector& v)
{
    return static_cast<long>(cached_orbit(dominant_representative(v)).size());
}

int coset_of(const WeightVector& v)
{
    const auto& t = v.doubled();
    const int sum = std::accumulate(t.begin(), t.end(), 0);
    if (v.is_integral()) {
        return (sum / 2) % 2 == 0 ? 0 : 1;
    }
    return (sum / 2) % 2 == 0 ? 4 : 3;
}

bool dominance_leq(const WeightVector& lambda, const WeightVector& mu)
{
    const WeightVector d = mu - lambda;
    if (coset_of(d) != 0) {
        return false;
    }
    for (int i = 1; i <= 4; ++i) {
        if (inner4(d, fundamental_weight(i)) < 0) {
            return false;
        }
    }
    return true;
}

// GroupAlgebraElement ------------------------------------------------------

GroupAlgebraElement::GroupAlgebraElement(const Rational& constant)
{
    add_term(WeightVector(), constant);
}

GroupAlgebraElement GroupAlgebraElement::exponential(const WeightVector& v, const Rational& c)
{
    GroupAlgebraElement x;
    x.add_term(v, c);
    return x;
}

Rational GroupAlgebraElement::coeff(const WeightVector& v) const
{
    auto it = terms_.find(v);
    return it == terms_.end() ? Rational(0) : it->second;
}

void GroupAlgebraElement::add_term(const WeightVector& v, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(v, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o)
{
    for (const auto& [v, c] : o.terms_) {
        add_term(v, c);
    }
    return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator-=(const GroupAlgebraElement& o)
{
    for (const auto& [v, c] : o.terms_) {
        add_term(v, -c);
    }
    return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
    }
    for (auto& [v, x] : terms_) {
        x *= c;
    }
    return *this;
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b)
{
    GroupAlgebraElement r;
    for (const auto& [u, x] : a.terms_) {
        for (const auto& [v, y] : b.terms_) {
            r.add_term(u + v, x * y);
        }
    }
    return r;
}

GroupAlgebraElement GroupAlgebraElement::transformed(const WeylElement& w) const
{
    GroupAlgebraElement r;
    for (const auto& [v, c] : terms_) {
        r.add_term(w.apply(v), c);
    }
    return r;
}

bool GroupAlgebraElement::is_weyl_invariant() const
{
    for (int i = 1; i <= 4; ++i) {
        for (const auto& [v, c] : terms_) {
            if (coeff(reflect(v, i)) != c) {
                return false;
            }
        }
    }
    return true;
}

Rational GroupAlgebraElement::augmentation() const
{
    Rational s = 0;
    for (const auto& [v, c] : terms_) {
        s += c;
    }
    return s;
}

GroupAlgebraElement orbit_sum(const WeightVector& dominant)
{
    if (!is_dominant(dominant)) {
        throw std::invalid_argument("orbit label " + to_string(dominant) + " is not dominant");
    }
    GroupAlgebraElement x;
    for (const WeightVector& v : cached_orbit(dominant)) {
        x.add_term(v, 1);
    }
    return x;
}

GroupAlgebraElement laplacian(const GroupAlgebraElement& x)
{
    GroupAlgebraElement r;
    for (const auto& [v, c] : x.terms()) {
        r.add_term(v, c * inner(v, v));
    }
    return r;
}

// InvariantElement ---------------------------------------------------------

InvariantElement::InvariantElement(const Rational& constant) { add_term(WeightVector(), constant); }

InvariantElement InvariantElement::orbit(const WeightVector& dominant, const Rational& c)
{
    if (!is_dominant(dominant)) {
        throw std::invalid_argument("orbit label " + to_string(dominant) + " is not dominant");
    }
    InvariantElement x;
    x.add_term(dominant, c);
    return x;
}

InvariantElement InvariantElement::from_group_algebra(const GroupAlgebraElement& x)
{
    if (!x.is_weyl_invariant()) {
        throw std::invalid_argument("element is not Weyl-invariant");
    }
    InvariantElement r;
    for (const auto& [v, c] : x.terms()) {
        if (is_dominant(v)) {
            r.add_term(v, c);
        }
    }
    return r;
}

Rational InvariantElement::coeff(const WeightVector& dominant) const
{
    auto it = terms_.find(dominant);
    return it == terms_.end() ? Rational(0) : it->second;
}

void InvariantElement::add_term(const WeightVector& dominant, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(dominant, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

GroupAlgebraElement InvariantElement::to_group_algebra() const
{
    GroupAlgebraElement r;
    for (const auto& [v, c] : terms_) {
        for (const WeightVector& u : cached_orbit(v)) {
            r.add_term(u, c);
        }
    }
    return r;
}

Rational InvariantElement::augmentation() const
{
    Rational s = 0;
    for (const auto& [v, c] : terms_) {
        s += c * orbit_size(v);
    }
    return s;
}

InvariantElement& InvariantElement::operator+=(const InvariantElement& o)
{
    for (const auto& [v, c] : o.terms_) {
        add_term(v, c);
    }
    return *this;
}

InvariantElement& InvariantElement::operator-=(const InvariantElement& o)
{
    for (const auto& [v, c] : o.terms_) {
        add_term(v, -c);
    }
    return *this;
}

InvariantElement& InvariantElement::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
    }
    for (auto& [v, x] : terms_) {
        x *= c;
    }
    return *this;
}

InvariantElement operator*(const InvariantElement& a, const InvariantElement& b)
{
    InvariantElement r;
    for (const auto& [u, x] : a.terms_) {
        for (const auto& [v, y] : b.terms_) {
            const Rational xy = x * y;
            for (const auto& [k, n] : orbit_product(u, v)) {
                r.add_term(k, xy * n);
            }
        }
    }
    return r;
}

InvariantElement laplacian(const InvariantElement& x)
{
    InvariantElement r;
    for (const auto& [v, c] : x.terms()) {
        r.add_term(v, c * inner(v, v));
    }
    return r;
}

const std::vector<std::pair<WeightVector, long>>& orbit_product(const WeightVector& lambda, const WeightVector& mu)
{
    static std::shared_mutex mutex;
    static std::map<std::pair<WeightVector, WeightVector>, std::vector<std::pair<WeightVector, long>>> cache;
    const auto key = lambda < mu ? std::make_pair(lambda, mu) : std::make_pair(mu, lambda);
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
    }
    // S(l) S(m) = sum_{y in orbit(m)} |orbit(l)| / |orbit(l + y)| S(dom(l + y))
    const WeightVector& l = key.first;
    const long size_l = static_cast<long>(cached_orbit(l).size());
    std::map<WeightVector, Rational> acc;
    for (const WeightVector& y : cached_orbit(key.second)) {
        const WeightVector d = dominant_representative(l + y);
        acc[d] += make_rational(size_l, static_cast<long>(cached_orbit(d).size()));
    }
    std::vector<std::pair<WeightVector, long>> result;
    for (const auto& [d, c] : acc) {
        if (!is_integer(c)) {
            throw std::logic_error("orbit product multiplicity is not an integer");
        }
        result.emplace_back(d, c.get_num().get_si());
    }
    std::unique_lock lock(mutex);
    return cache.try_emplace(key, std::move(result)).first->second;
}

// Basis change ------------------------------------------------------------

namespace {

InvariantElement monomial_value(const std::array<int, 4>& exps)
{
    InvariantElement r(Rational(1));
    for (int i = 0; i < 4; ++i) {
        const InvariantElement s = InvariantElement::orbit(fundamental_weight(i + 1));
        for (int n = 0; n < exps[static_cast<std::size_t>(i)]; ++n) {
            r = r * s;
        }
    }
    return r;
}

} // namespace

OrbitMonomialPolynomial orbit_to_monomial(const InvariantElement& x)
{
    OrbitMonomialPolynomial out;
    InvariantElement rest = x;
    while (!rest.is_zero()) {
        // Leading term: largest norm, ties broken lexicographically. Any
        // dominant weight strictly below lambda in dominance has smaller norm.
        auto lead = rest.terms().begin();
        for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it) {
            const long n = it->first.norm4();
            const long m = lead->first.norm4();
            if (n > m || (n == m && lead->first < it->first)) {
                lead = it;
            }
        }
        const WeightVector lambda = lead->first;
        const Rational c = lead->second;
        std::array<int, 4> exps{};
        for (int i = 0; i < 4; ++i) {
            exps[static_cast<std::size_t>(i)] = static_cast<int>(inner4(lambda, simple_root(i + 1)) / 4);
        }
        InvariantElement m = monomial_value(exps);
        if (m.coeff(lambda) != 1) {
            throw std::logic_error("basis change lost triangularity");
        }
        rest -= c * m;
        if (rest.coeff(lambda) != 0) {
            throw std::logic_error("basis change failed to eliminate the leading term");
        }
        out[exps] += c;
    }
    return out;
}

InvariantElement monomial_to_orbit(const OrbitMonomialPolynomial& p)
{
    InvariantElement r;
    for (const auto& [exps, c] : p) {
        for (int e : exps) {
            if (e < 0) {
                throw std::invalid_argument("negative exponent in orbit monomial");
            }
        }
        r += c * monomial_value(exps);
    }
    return r;
}

std::string to_string(const WeightVector& v)
{
    std::string s = "(";
    for (int i = 0; i < 4; ++i) {
        if (i > 0) {
            s += ",";
        }
        s += to_string(v.coord(i));
    }
    return s + ")";
}

namespace {

std::string orbit_label(const WeightVector& dominant)
{
    if (dominant.is_zero()) {
        return "1";
    }
    std::string s;
    for (int i = 1; i <= 4; ++i) {
        const long n = inner4(dominant, simple_root(i)) / 4;
        if (n == 0) {
            continue;
        }
        if (!s.empty()) {
            s += "+";
        }
        if (n != 1) {
            s += std::to_string(n);
        }
        s += "w" + std::to_string(i);
    }
    return "S(" + s + ")";
}

template <class Terms, class Label>
std::string join_terms(const Terms& terms, Label label)
{
    std::string out;
    for (const auto& [key, c] : terms) {
        const Rational mag = abs(c);
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        const std::string l = label(key);
        if (l == "1") {
            out += to_string(mag);
        } else {
            out += (mag == 1 ? "" : to_string(mag) + " ") + l;
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace

std::string to_string(const InvariantElement& x) { return join_terms(x.terms(), orbit_label); }

std::string to_string(const OrbitMonomialPolynomial& p)
{
    return join_terms(p, [](const std::array<int, 4>& e) {
        std::string s;
        for (int i = 0; i < 4; ++i) {
            const int n = e[static_cast<std::size_t>(i)];
            if (n == 0) {
                continue;
            }
            if (!s.empty()) {
                s += "*";
            }
            s += "S(w" + std::to_string(i + 1) + ")";
            if (n != 1) {
                s += "^" + std::to_string(n);
            }
        }
        return s.empty() ? std::string("1") : s;
    });
}

} // namespace frobd4
