#include "frobd4/jacobi.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "frobd4/linsolve.hpp"

namespace frobd4 {

namespace {

constexpr Exponent Q = kExponentDenominator;

// acc += factor * X * Y in the orbit-sum basis.
void accumulate_product(InvariantElement& acc, const InvariantElement& X, const InvariantElement& Y,
                        const Rational& factor)
{
    for (const auto& [l, x] : X.terms()) {
        for (const auto& [m, y] : Y.terms()) {
            const Rational xy = factor * x * y;
            for (const auto& [k, n] : orbit_product(l, m)) {
                acc.add_term(k, xy * n);
            }
        }
    }
}

// Scalar series g with g * f known up to f's truncation.
PuiseuxSeries matched_series(const JacobiElement& f, PuiseuxSeries (*make)(Exponent))
{
    if (f.trunc() == kExact) {
        throw std::domain_error("operation needs a truncated element");
    }
    return make(f.trunc() - f.valuation());
}

PuiseuxSeries e2_series(Exponent order) { return eisenstein(2, order); }

} // namespace

JacobiElement::JacobiElement(int weight2, int index, Body body, Exponent trunc)
    : weight2_(weight2), index_(index), trunc_(trunc)
{
    if (index < 0) {
        throw std::invalid_argument("index must be non-negative");
    }
    for (auto& [e, x] : body) {
        if (e < trunc && !x.is_zero()) {
            body_.emplace(e, std::move(x));
        }
    }
}

JacobiElement JacobiElement::scalar(const PuiseuxSeries& f, int weight2)
{
    Body body;
    for (const auto& [e, c] : f.terms()) {
        body.emplace(e, InvariantElement(c));
    }
    return JacobiElement(weight2, 0, std::move(body), f.trunc());
}

JacobiElement JacobiElement::constant(const InvariantElement& x, int weight2, int index)
{
    return JacobiElement(weight2, index, Body{{0, x}}, kExact);
}

Exponent JacobiElement::valuation() const { return body_.empty() ? trunc_ : body_.begin()->first; }

InvariantElement JacobiElement::coeff(Exponent e) const
{
    if (e >= trunc_) {
        throw std::out_of_range("coefficient at q^" + exponent_string(e) + " lies beyond the truncation");
    }
    auto it = body_.find(e);
    return it == body_.end() ? InvariantElement() : it->second;
}

JacobiElement JacobiElement::truncated(Exponent t) const
{
    JacobiElement r = *this;
    r.trunc_ = std::min(trunc_, t);
    r.body_.erase(r.body_.lower_bound(r.trunc_), r.body_.end());
    return r;
}

JacobiElement JacobiElement::with_weight2(int weight2) const
{
    JacobiElement r = *this;
    r.weight2_ = weight2;
    return r;
}

void JacobiElement::add(Exponent e, const InvariantElement& x, const Rational& c)
{
    if (e >= trunc_ || c == 0 || x.is_zero()) {
        return;
    }
    auto [it, inserted] = body_.try_emplace(e, InvariantElement());
    for (const auto& [l, v] : x.terms()) {
        it->second.add_term(l, c * v);
    }
    if (it->second.is_zero()) {
        body_.erase(it);
    }
}

JacobiElement& JacobiElement::operator+=(const JacobiElement& o)
{
    if (o.is_zero() && o.trunc_ == kExact) {
        return *this;
    }
    if (is_zero() && trunc_ == kExact) {
        weight2_ = o.weight2_;
        index_ = o.index_;
    }
    if (weight2_ != o.weight2_ || index_ != o.index_) {
        throw std::invalid_argument("adding elements of different weight or index");
    }
    if (o.trunc_ < trunc_) {
        trunc_ = o.trunc_;
        body_.erase(body_.lower_bound(trunc_), body_.end());
    }
    for (const auto& [e, x] : o.body_) {
        add(e, x, 1);
    }
    return *this;
}

JacobiElement& JacobiElement::operator-=(const JacobiElement& o) { return *this += -o; }

JacobiElement& JacobiElement::operator*=(const Rational& c)
{
    if (c == 0) {
        body_.clear();
    }
    for (auto& [e, x] : body_) {
        x *= c;
    }
    return *this;
}

JacobiElement JacobiElement::operator-() const
{
    JacobiElement r = *this;
    return r *= -1;
}

JacobiElement JacobiElement::times(const PuiseuxSeries& f, int weight2_shift) const
{
    JacobiElement r(weight2_ + weight2_shift, index_, {}, product_trunc(valuation(), trunc_, f.valuation(), f.trunc()));
    for (const auto& [ea, x] : body_) {
        for (const auto& [eb, c] : f.terms()) {
            if (ea + eb >= r.trunc_) {
                break;
            }
            r.add(ea + eb, x, c);
        }
    }
    return r;
}

std::map<Exponent, GroupAlgebraElement> JacobiElement::to_group_algebra() const
{
    std::map<Exponent, GroupAlgebraElement> out;
    for (const auto& [e, x] : body_) {
        out.emplace(e, x.to_group_algebra());
    }
    return out;
}

JacobiElement operator+(JacobiElement a, const JacobiElement& b) { return a += b; }

JacobiElement operator-(JacobiElement a, const JacobiElement& b) { return a -= b; }

JacobiElement operator*(const Rational& c, JacobiElement a) { return a *= c; }

JacobiElement operator*(const JacobiElement& a, const JacobiElement& b)
{
    const Exponent t = product_trunc(a.valuation(), a.trunc(), b.valuation(), b.trunc());
    JacobiElement::Body body;
    for (const auto& [ea, x] : a.body()) {
        for (const auto& [eb, y] : b.body()) {
            if (ea + eb >= t) {
                break;
            }
            accumulate_product(body[ea + eb], x, y, 1);
        }
    }
    return JacobiElement(a.weight2() + b.weight2(), a.index() + b.index(), std::move(body), t);
}

JacobiElement q_derive(const JacobiElement& f)
{
    JacobiElement::Body body;
    for (const auto& [e, x] : f.body()) {
        if (e != 0) {
            body.emplace(e, exponent_value(e) * x);
        }
    }
    return JacobiElement(f.weight2(), f.index(), std::move(body), f.trunc());
}

JacobiElement laplacian(const JacobiElement& f)
{
    JacobiElement::Body body;
    for (const auto& [e, x] : f.body()) {
        body.emplace(e, laplacian(x));
    }
    return JacobiElement(f.weight2(), f.index(), std::move(body), f.trunc());
}

PuiseuxSeries q_part(const JacobiElement& f)
{
    PuiseuxSeries::Terms terms;
    for (const auto& [e, x] : f.body()) {
        terms.emplace(e, x.augmentation());
    }
    return PuiseuxSeries(std::move(terms), f.trunc());
}

namespace {

// sum over dominant gamma in the coset with 3 * norm4(gamma) < bound of
// q^{|gamma|^2/2} S(gamma); the exponent of gamma is 3 * norm4 in 1/24 units.
JacobiElement theta_coset(int i, Exponent bound)
{
    JacobiElement::Body body;
    const int parity = (i == 3 || i == 4) ? 1 : 0;
    for (int a = parity; 3L * a * a < bound; a += 2) {
        for (int b = parity; b <= a; b += 2) {
            for (int c = parity; c <= b; c += 2) {
                for (int d = -c; d <= c; d += 2) {
                    WeightVector g = WeightVector::from_doubled({a, b, c, d});
                    const Exponent e = 3 * g.norm4();
                    if (e < bound && coset_of(g) == i) {
                        body[e].add_term(g, 1);
                    }
                }
            }
        }
    }
    return JacobiElement(0, 1, std::move(body), bound);
}

template <class Key>
class Memo {
public:
    template <class Make>
    JacobiElement get(const Key& key, Make make)
    {
        {
            std::shared_lock lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) {
                return it->second;
            }
        }
        JacobiElement value = make();
        std::unique_lock lock(mutex_);
        return cache_.try_emplace(key, std::move(value)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<Key, JacobiElement> cache_;
};

} // namespace

JacobiElement character(int i, Exponent order)
{
    if (i != 0 && i != 1 && i != 3 && i != 4) {
        throw std::invalid_argument("character index must be 0, 1, 3 or 4");
    }
    if (order <= 0) {
        throw std::invalid_argument("order must be positive");
    }
    static Memo<std::pair<int, Exponent>> memo;
    return memo.get({i, order}, [&] {
        // eta^{-4} has valuation -4, so both factors are needed to order + 4.
        JacobiElement chi = theta_coset(i, order + 4).times(eta_power(-4, order + 4), 0);
        return chi.truncated(order);
    });
}

JacobiElement e_hat(int k, Exponent order) { return JacobiElement::scalar(eisenstein(k, order), 2 * k); }

JacobiElement op_Dscript(const JacobiElement& f)
{
    const int m = f.index();
    JacobiElement r = Rational(2 * m) * q_derive(f) - laplacian(f);
    // (E2/12) m (4 - 2k) with 2k = weight2
    const Rational c = make_rational(m * (4 - f.weight2()), 12);
    if (c != 0 && !f.is_zero()) {
        r += c * f.times(matched_series(f, e2_series), 0);
    }
    return r.with_weight2(f.weight2() + 4);
}

JacobiElement i_bracket(const JacobiElement& f, const JacobiElement& g)
{
    // Iscript(f, g) = m' f' g + m f g' - <grad f, grad g> - (E2/12)(m k' + m' k) f g.
    // For terms q^a S(l), q^b S(m) and a component S(k) of S(l)S(m), the first
    // three pieces contribute (m' a + m b) - (|k|^2 - |l|^2 - |m|^2)/2; scaled by
    // 192 this is the integer 8(m' a + m b) - 24(N4k - N4l - N4m) with a, b in
    // 1/24 units and N4 = 4|.|^2.
    const long m1 = f.index();
    const long m2 = g.index();
    const Exponent t = product_trunc(f.valuation(), f.trunc(), g.valuation(), g.trunc());
    JacobiElement::Body kernel_body;
    JacobiElement::Body plain_body;
    for (const auto& [a, X] : f.body()) {
        for (const auto& [b, Y] : g.body()) {
            if (a + b >= t) {
                break;
            }
            InvariantElement& kern = kernel_body[a + b];
            InvariantElement& plain = plain_body[a + b];
            const long shift = 8 * (m2 * a + m1 * b);
            for (const auto& [l, x] : X.terms()) {
                const long nl = l.norm4();
                for (const auto& [mu, y] : Y.terms()) {
                    const long nm = mu.norm4();
                    const Rational xy = x * y;
                    for (const auto& [k, n] : orbit_product(l, mu)) {
                        const long kernel = shift - 24 * (k.norm4() - nl - nm);
                        kern.add_term(k, xy * (n * kernel));
                        plain.add_term(k, xy * n);
                    }
                }
            }
        }
    }
    const int weight2 = f.weight2() + g.weight2() + 4;
    const int index = f.index() + g.index();
    JacobiElement result(weight2, index, std::move(kernel_body), t);
    result *= make_rational(1, 192);
    JacobiElement plain(weight2, index, std::move(plain_body), t);
    // (m k' + m' k) / 12 with k = weight2 / 2
    const Rational c = make_rational(m1 * g.weight2() + m2 * f.weight2(), 24);
    if (c != 0 && !plain.is_zero()) {
        result -= c * plain.times(matched_series(plain, e2_series), 0);
    }
    return result;
}

JacobiElement build_generator(int idx, Exponent order)
{
    if (idx < 0 || idx > 4) {
        throw std::invalid_argument("generator index must be 0..4");
    }
    if (order <= 0) {
        throw std::invalid_argument("order must be positive");
    }
    static Memo<std::pair<int, Exponent>> memo;
    return memo.get({idx, order}, [&] {
        JacobiElement s;
        if (idx == 4) {
            const JacobiElement s2 = build_generator(2, order);
            const JacobiElement s3 = build_generator(3, order);
            s = make_rational(1, 24) * (Rational(3) * i_bracket(s3, s3) + i_bracket(s2, s2));
        } else {
            // One extra power of q absorbs the eta^{-4} and eta^{-8} valuation shifts.
            const Exponent inner = order + Q;
            const JacobiElement c0 = character(0, inner);
            const JacobiElement c1 = character(1, inner);
            const JacobiElement c3 = character(3, inner);
            const JacobiElement c4 = character(4, inner);
            const JacobiElement c134 = c1 + c3 + c4;
            const PuiseuxSeries q0 = q_part(c0);
            const PuiseuxSeries q134 = q_part(c134);
            switch (idx) {
            case 0: {
                // determinant with the Serre-derivative row (weight 2) of the q-parts
                JacobiElement det = c134.times(q_derive(q0), 4) - c0.times(q_derive(q134), 4);
                s = Rational(-6) * det.times(eta_power(-4, inner), -4);
                break;
            }
            case 1: {
                JacobiElement det = c134.times(q0, 0) - c0.times(q134, 0);
                s = det.times(eta_power(-4, inner), -4);
                break;
            }
            case 2:
                s = (c3 + c4 - Rational(2) * c1).times(eta_power(-8, inner), -8);
                break;
            case 3:
                s = (c3 - c4).times(eta_power(-8, inner), -8);
                break;
            }
        }
        if (s.trunc() < order) {
            throw std::logic_error("generator construction lost precision");
        }
        return s.truncated(order);
    });
}

InvariantElement initial_term(const JacobiElement& f)
{
    if (f.valuation() < 0) {
        throw std::domain_error("element has negative q-valuation " + exponent_string(f.valuation()));
    }
    if (f.trunc() <= 0) {
        throw std::domain_error("element is not known at q^0");
    }
    return f.coeff(0);
}

// GeneratorPolynomial ------------------------------------------------------

int monomial_weight2(const GeneratorMonomial& m)
{
    return 2 * (4 * m[0] + 6 * m[1] - 2 * m[3] - 4 * m[4] - 4 * m[5] - 6 * m[6]);
}

int monomial_index(const GeneratorMonomial& m) { return m[2] + m[3] + m[4] + m[5] + 2 * m[6]; }

GeneratorPolynomial GeneratorPolynomial::monomial(const GeneratorMonomial& m, const Rational& c)
{
    GeneratorPolynomial p;
    p.add_term(m, c);
    return p;
}

void GeneratorPolynomial::add_term(const GeneratorMonomial& m, const Rational& c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

GeneratorPolynomial& GeneratorPolynomial::operator+=(const GeneratorPolynomial& o)
{
    for (const auto& [m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

GeneratorPolynomial& GeneratorPolynomial::operator-=(const GeneratorPolynomial& o)
{
    for (const auto& [m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

GeneratorPolynomial operator*(const GeneratorPolynomial& a, const GeneratorPolynomial& b)
{
    GeneratorPolynomial r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            GeneratorMonomial m{};
            for (std::size_t i = 0; i < m.size(); ++i) {
                m[i] = ma[i] + mb[i];
            }
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

GeneratorPolynomial operator*(const Rational& c, const GeneratorPolynomial& a)
{
    GeneratorPolynomial r;
    for (const auto& [m, x] : a.terms_) {
        r.add_term(m, c * x);
    }
    return r;
}

GeneratorPolynomial GeneratorPolynomial::derivative(int i) const
{
    if (i < 0 || i > 4) {
        throw std::out_of_range("generator index must be 0..4");
    }
    const std::size_t slot = static_cast<std::size_t>(i) + 2;
    GeneratorPolynomial r;
    for (const auto& [m, c] : terms_) {
        if (m[slot] > 0) {
            GeneratorMonomial d = m;
            d[slot] -= 1;
            r.add_term(d, c * m[slot]);
        }
    }
    return r;
}

GeneratorPolynomial gp_E(int k)
{
    if (k != 4 && k != 6) {
        throw std::invalid_argument("only E4 and E6 are generator symbols");
    }
    GeneratorMonomial m{};
    m[k == 4 ? 0 : 1] = 1;
    return GeneratorPolynomial::monomial(m);
}

GeneratorPolynomial gp_s(int i)
{
    if (i < 0 || i > 4) {
        throw std::out_of_range("generator index must be 0..4");
    }
    GeneratorMonomial m{};
    m[static_cast<std::size_t>(i) + 2] = 1;
    return GeneratorPolynomial::monomial(m);
}

namespace {

JacobiElement monomial_factor(std::size_t slot, Exponent order)
{
    if (slot == 0) {
        return e_hat(4, order);
    }
    if (slot == 1) {
        return e_hat(6, order);
    }
    return build_generator(static_cast<int>(slot) - 2, order);
}

JacobiElement monomial_value(const GeneratorMonomial& m, Exponent order,
                             std::map<GeneratorMonomial, JacobiElement>& memo)
{
    auto it = memo.find(m);
    if (it != memo.end()) {
        return it->second;
    }
    std::size_t slot = 0;
    while (slot < m.size() && m[slot] == 0) {
        ++slot;
    }
    JacobiElement value;
    if (slot == m.size()) {
        value = JacobiElement::constant(InvariantElement(Rational(1)));
    } else {
        GeneratorMonomial rest = m;
        rest[slot] -= 1;
        value = monomial_value(rest, order, memo) * monomial_factor(slot, order);
    }
    return memo.emplace(m, std::move(value)).first->second;
}

} // namespace

JacobiElement evaluate(const GeneratorPolynomial& p, Exponent order)
{
    std::map<GeneratorMonomial, JacobiElement> memo;
    JacobiElement r;
    for (const auto& [m, c] : p.terms()) {
        r += c * monomial_value(m, order, memo);
    }
    return r.truncated(order);
}

std::vector<GeneratorMonomial> generator_monomials(int weight2, int index)
{
    std::vector<GeneratorMonomial> out;
    if (index < 0) {
        return out;
    }
    for (int c4 = 0; 2 * c4 <= index; ++c4) {
        for (int c3 = 0; 2 * c4 + c3 <= index; ++c3) {
            for (int c2 = 0; 2 * c4 + c3 + c2 <= index; ++c2) {
                for (int c1 = 0; 2 * c4 + c3 + c2 + c1 <= index; ++c1) {
                    const int c0 = index - 2 * c4 - c3 - c2 - c1;
                    // remaining weight carried by Ehat4^a Ehat6^b, doubled
                    const int r = weight2 + 2 * (2 * c1 + 4 * c2 + 4 * c3 + 6 * c4);
                    for (int a = 0; 8 * a <= r; ++a) {
                        if ((r - 8 * a) % 12 == 0) {
                            out.push_back({a, (r - 8 * a) / 12, c0, c1, c2, c3, c4});
                        }
                    }
                }
            }
        }
    }
    return out;
}

GeneratorPolynomial express_in_generators(const JacobiElement& f)
{
    if (f.trunc() == kExact) {
        throw std::invalid_argument("expansion needs a truncated element");
    }
    const Exponent order = f.trunc();
    const std::vector<GeneratorMonomial> monomials = generator_monomials(f.weight2(), f.index());
    if (monomials.empty()) {
        if (f.is_zero()) {
            return {};
        }
        throw std::runtime_error("no generator monomials of this weight and index");
    }
    std::map<GeneratorMonomial, JacobiElement> memo;
    std::map<std::pair<Exponent, WeightVector>, SparseRow> rows;
    std::map<std::pair<Exponent, WeightVector>, Rational> rhs;
    for (std::size_t j = 0; j < monomials.size(); ++j) {
        const JacobiElement v = monomial_value(monomials[j], order, memo);
        if (v.trunc() < order) {
            throw std::logic_error("generator monomial lost precision");
        }
        for (const auto& [e, x] : v.body()) {
            for (const auto& [l, c] : x.terms()) {
                rows[{e, l}][static_cast<int>(j)] = c;
            }
        }
    }
    for (const auto& [e, x] : f.body()) {
        for (const auto& [l, c] : x.terms()) {
            rhs[{e, l}] = c;
            rows.try_emplace({e, l});
        }
    }
    SparseSolver solver(static_cast<int>(monomials.size()));
    for (auto& [key, row] : rows) {
        auto it = rhs.find(key);
        solver.add_equation(std::move(row), it == rhs.end() ? Rational(0) : it->second);
    }
    if (!solver.consistent()) {
        throw std::runtime_error("element is not in the span of the generator monomials");
    }
    const auto values = solver.solve();
    GeneratorPolynomial p;
    for (std::size_t j = 0; j < monomials.size(); ++j) {
        if (!values[j]) {
            throw std::runtime_error("expansion is underdetermined at this truncation order");
        }
        p.add_term(monomials[j], *values[j]);
    }
    return p;
}

JacobiElement untwist(const JacobiElement& F)
{
    const long n = -F.weight2();
    if (n == 0) {
        return F;
    }
    if (F.trunc() == kExact) {
        throw std::domain_error("untwisting needs a truncated element");
    }
    return F.times(eta_power(n, F.trunc() - F.valuation() + n), n);
}

JacobiElement intersection_form(const JacobiElement& F1, const JacobiElement& F2)
{
    JacobiElement b = i_bracket(F1, F2);
    // eta^4 (eta/omega)^{-2k-2k'-4}: scalar eta^{-2(k+k')} and weight -(k+k'+2)
    const long n = -(F1.weight2() + F2.weight2());
    JacobiElement r = n == 0 ? b : b.times(eta_power(n, b.trunc() - b.valuation() + n), 0);
    r = r.with_weight2(r.weight2() - (F1.weight2() + F2.weight2() + 4));
    if (r.weight2() != 0) {
        throw std::logic_error("omega-degrees do not cancel in the intersection form");
    }
    return r;
}

std::string to_string(const JacobiElement& f)
{
    std::string out = "[weight " + to_string(f.weight()) + ", index " + std::to_string(f.index()) + "] ";
    bool first = true;
    for (const auto& [e, x] : f.body()) {
        out += first ? "" : " + ";
        first = false;
        out += "(" + to_string(x) + ")";
        if (e != 0) {
            out += " q^{" + exponent_string(e) + "}";
        }
    }
    if (first) {
        out += "0";
    }
    if (f.trunc() != kExact) {
        out += " + O(q^{" + exponent_string(f.trunc()) + "})";
    }
    return out;
}

std::string to_string(const GeneratorPolynomial& p)
{
    static const char* names[] = {"E4", "E6", "s0", "s1", "s2", "s3", "s4"};
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        const Rational mag = abs(c);
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += names[i];
            if (m[i] != 1) {
                mono += "^" + std::to_string(m[i]);
            }
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else {
            out += (mag == 1 ? "" : to_string(mag) + " ") + mono;
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace frobd4
