#ifndef PSDO_SCALARS_HPP
#define PSDO_SCALARS_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <psdo/errors.hpp>

namespace psdo
{

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw usage_error("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational &q)
{
    return q.get_str();
}

// Element of Q(i). gmpxx keeps both parts canonical after every operation.
class GaussianRational
{
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational &re() const { return re_; }
    const Rational &im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const
    {
        if (is_zero()) {
            throw usage_error("division by zero Gaussian rational");
        }
        Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    GaussianRational &operator+=(const GaussianRational &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational &operator-=(const GaussianRational &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational &operator*=(const GaussianRational &o)
    {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussianRational &operator/=(const GaussianRational &o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // "a/b", "c/d*i" or "a/b+c/d*i".
    std::string to_string() const
    {
        if (sgn(im_) == 0) {
            return re_.get_str();
        }
        std::string imag = (im_ == 1) ? "i" : (im_ == -1) ? "-i" : im_.get_str() + "*i";
        if (sgn(re_) == 0) {
            return imag;
        }
        return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline std::ostream &operator<<(std::ostream &os, const GaussianRational &z)
{
    return os << z.to_string();
}

inline constexpr std::size_t kMaxIndeterminates = 16;

// Ordered set of indeterminate names. Position in the list is the variable
// priority used by the graded-lexicographic monomial order.
class Registry
{
public:
    explicit Registry(std::vector<std::string> names) : names_(std::move(names))
    {
        if (names_.size() > kMaxIndeterminates) {
            throw usage_error("registry holds at most " + std::to_string(kMaxIndeterminates) + " indeterminates");
        }
        for (std::size_t i = 0; i < names_.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (names_[i] == names_[j]) {
                    throw usage_error("duplicate indeterminate '" + names_[i] + "'");
                }
            }
        }
    }

    static std::shared_ptr<const Registry> make(std::vector<std::string> names)
    {
        return std::make_shared<const Registry>(std::move(names));
    }

    // h, the c_i family, the deformation parameters, the formal modes and the
    // correction unknowns of the obstruction computation.
    static const std::shared_ptr<const Registry> &standard()
    {
        static const std::shared_ptr<const Registry> reg = make(
            {"h", "c0", "c1", "c2", "c3", "l", "mu", "nu", "s", "t", "a", "b", "m", "P4", "P5", "P6"});
        return reg;
    }

    std::size_t size() const { return names_.size(); }
    const std::string &name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string> &names() const { return names_; }

    std::optional<std::size_t> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::size_t index(std::string_view name) const
    {
        if (auto i = find(name)) {
            return *i;
        }
        throw usage_error("unknown indeterminate '" + std::string(name) + "'");
    }

private:
    std::vector<std::string> names_;
};

using RegistryPtr = std::shared_ptr<const Registry>;

struct Monomial {
    std::array<std::uint8_t, kMaxIndeterminates> exps{};

    unsigned degree() const
    {
        unsigned d = 0;
        for (auto e : exps) {
            d += e;
        }
        return d;
    }

    bool is_one() const { return degree() == 0; }

    bool divides(const Monomial &o) const
    {
        for (std::size_t i = 0; i < kMaxIndeterminates; ++i) {
            if (exps[i] > o.exps[i]) {
                return false;
            }
        }
        return true;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial r;
        for (std::size_t i = 0; i < kMaxIndeterminates; ++i) {
            unsigned e = unsigned(a.exps[i]) + b.exps[i];
            if (e > 255) {
                throw usage_error("monomial exponent overflow");
            }
            r.exps[i] = static_cast<std::uint8_t>(e);
        }
        return r;
    }

    // Requires a.divides(b).
    friend Monomial operator/(const Monomial &b, const Monomial &a)
    {
        Monomial r;
        for (std::size_t i = 0; i < kMaxIndeterminates; ++i) {
            r.exps[i] = static_cast<std::uint8_t>(b.exps[i] - a.exps[i]);
        }
        return r;
    }

    friend bool operator==(const Monomial &, const Monomial &) = default;

    // Graded lexicographic: total degree first, then the earliest registry
    // variable dominates.
    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b)
    {
        if (auto c = a.degree() <=> b.degree(); c != 0) {
            return c;
        }
        for (std::size_t i = 0; i < kMaxIndeterminates; ++i) {
            if (auto c = a.exps[i] <=> b.exps[i]; c != 0) {
                return c;
            }
        }
        return std::strong_ordering::equal;
    }
};

// Multivariate polynomial over Q(i). Terms are kept sorted in descending
// graded-lex order with no zero coefficients, so structural equality is
// mathematical equality.
class PolyScalar
{
public:
    using Term = std::pair<Monomial, GaussianRational>;

    PolyScalar() : reg_(Registry::standard()) {}
    explicit PolyScalar(RegistryPtr reg) : reg_(std::move(reg)) {}
    PolyScalar(long c) : PolyScalar(GaussianRational(c)) {}
    PolyScalar(const GaussianRational &c, RegistryPtr reg = Registry::standard()) : reg_(std::move(reg))
    {
        if (!c.is_zero()) {
            terms_.emplace_back(Monomial{}, c);
        }
    }
    PolyScalar(const Rational &c, RegistryPtr reg = Registry::standard())
        : PolyScalar(GaussianRational(c), std::move(reg))
    {
    }

    static PolyScalar var(std::string_view name, RegistryPtr reg = Registry::standard())
    {
        PolyScalar p(reg);
        Monomial mono;
        mono.exps[reg->index(name)] = 1;
        p.terms_.emplace_back(mono, GaussianRational(1));
        return p;
    }

    static PolyScalar i(RegistryPtr reg = Registry::standard()) { return {GaussianRational::i(), std::move(reg)}; }

    static PolyScalar from_terms(std::vector<Term> terms, RegistryPtr reg)
    {
        PolyScalar p(std::move(reg));
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const RegistryPtr &registry() const { return reg_; }
    const std::vector<Term> &terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

    GaussianRational constant_value() const
    {
        if (!is_constant()) {
            throw usage_error("polynomial is not a constant: " + to_string());
        }
        return terms_.empty() ? GaussianRational() : terms_[0].second;
    }

    GaussianRational constant_term() const
    {
        if (!terms_.empty() && terms_.back().first.is_one()) {
            return terms_.back().second;
        }
        return {};
    }

    const Term &leading_term() const
    {
        if (terms_.empty()) {
            throw usage_error("zero polynomial has no leading term");
        }
        return terms_.front();
    }

    unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }

    unsigned degree_in(std::size_t var) const
    {
        unsigned d = 0;
        for (const auto &[m, c] : terms_) {
            d = std::max<unsigned>(d, m.exps[var]);
        }
        return d;
    }
    unsigned degree_in(std::string_view name) const { return degree_in(reg_->index(name)); }

    bool depends_on(std::string_view name) const { return degree_in(name) > 0; }

    // Coefficient of name^k, as a polynomial in the remaining indeterminates.
    PolyScalar coefficient(std::string_view name, unsigned k) const
    {
        std::size_t v = reg_->index(name);
        std::vector<Term> out;
        for (const auto &[m, c] : terms_) {
            if (m.exps[v] == k) {
                Monomial r = m;
                r.exps[v] = 0;
                out.emplace_back(r, c);
            }
        }
        return from_terms(std::move(out), reg_);
    }

    // Splits the polynomial by the exponents of the given indeterminates.
    std::map<std::vector<unsigned>, PolyScalar> collect(const std::vector<std::string> &names) const
    {
        std::vector<std::size_t> idx;
        for (const auto &n : names) {
            idx.push_back(reg_->index(n));
        }
        std::map<std::vector<unsigned>, std::vector<Term>> buckets;
        for (const auto &[m, c] : terms_) {
            std::vector<unsigned> key;
            Monomial rest = m;
            for (auto v : idx) {
                key.push_back(m.exps[v]);
                rest.exps[v] = 0;
            }
            buckets[key].emplace_back(rest, c);
        }
        std::map<std::vector<unsigned>, PolyScalar> out;
        for (auto &[k, ts] : buckets) {
            out.emplace(k, from_terms(std::move(ts), reg_));
        }
        return out;
    }

    PolyScalar &operator+=(const PolyScalar &o)
    {
        adopt(o);
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() || (a != terms_.end() && a->first > b->first)) {
                out.push_back(std::move(*a++));
            } else if (a == terms_.end() || b->first > a->first) {
                out.push_back(*b++);
            } else {
                GaussianRational c = a->second + b->second;
                if (!c.is_zero()) {
                    out.emplace_back(a->first, std::move(c));
                }
                ++a;
                ++b;
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    PolyScalar operator-() const
    {
        PolyScalar r = *this;
        for (auto &t : r.terms_) {
            t.second = -t.second;
        }
        return r;
    }

    PolyScalar &operator-=(const PolyScalar &o) { return *this += -o; }

    PolyScalar &scale_by(const GaussianRational &c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        if (c.is_one()) {
            return *this;
        }
        for (auto &t : terms_) {
            t.second *= c;
        }
        return *this;
    }

    PolyScalar &operator*=(const PolyScalar &o)
    {
        adopt(o);
        if (is_zero() || o.is_zero()) {
            terms_.clear();
            return *this;
        }
        if (o.is_constant()) {
            return scale_by(o.terms_[0].second);
        }
        if (is_constant()) {
            GaussianRational c = terms_[0].second;
            terms_ = o.terms_;
            reg_ = o.reg_;
            return scale_by(c);
        }
        std::vector<Term> prod;
        prod.reserve(terms_.size() * o.terms_.size());
        for (const auto &[ma, ca] : terms_) {
            for (const auto &[mb, cb] : o.terms_) {
                prod.emplace_back(ma * mb, ca * cb);
            }
        }
        terms_ = std::move(prod);
        normalize();
        return *this;
    }

    friend PolyScalar operator+(PolyScalar a, const PolyScalar &b) { return a += b; }
    friend PolyScalar operator-(PolyScalar a, const PolyScalar &b) { return a -= b; }
    friend PolyScalar operator*(PolyScalar a, const PolyScalar &b) { return a *= b; }

    friend bool operator==(const PolyScalar &a, const PolyScalar &b)
    {
        a.check_same(b);
        return a.terms_ == b.terms_;
    }

    PolyScalar pow(unsigned k) const
    {
        PolyScalar result(GaussianRational(1), reg_);
        PolyScalar base = *this;
        while (k > 0) {
            if (k & 1u) {
                result *= base;
            }
            k >>= 1u;
            if (k > 0) {
                base *= base;
            }
        }
        return result;
    }

    // Simultaneous substitution of indeterminates by polynomials.
    PolyScalar substitute(const std::map<std::string, PolyScalar> &assignment) const
    {
        std::vector<std::pair<std::size_t, const PolyScalar *>> subs;
        for (const auto &[name, value] : assignment) {
            check_same(value);
            subs.emplace_back(reg_->index(name), &value);
        }
        if (subs.empty()) {
            return *this;
        }
        // powers[j][e] = value_j^e, built lazily.
        std::vector<std::vector<PolyScalar>> powers(subs.size());
        auto power = [&](std::size_t j, unsigned e) -> const PolyScalar & {
            auto &cache = powers[j];
            if (cache.empty()) {
                cache.emplace_back(GaussianRational(1), reg_);
            }
            while (cache.size() <= e) {
                cache.push_back(cache.back() * *subs[j].second);
            }
            return cache[e];
        };
        PolyScalar out(reg_);
        for (const auto &[m, c] : terms_) {
            Monomial rest = m;
            PolyScalar factor(c, reg_);
            for (std::size_t j = 0; j < subs.size(); ++j) {
                unsigned e = m.exps[subs[j].first];
                if (e > 0) {
                    rest.exps[subs[j].first] = 0;
                    factor *= power(j, e);
                }
            }
            PolyScalar mono(reg_);
            mono.terms_.emplace_back(rest, GaussianRational(1));
            out += factor * mono;
        }
        return out;
    }

    // Largest monomial dividing every term.
    Monomial monomial_content() const
    {
        Monomial g;
        if (terms_.empty()) {
            return g;
        }
        g = terms_[0].first;
        for (const auto &[m, c] : terms_) {
            for (std::size_t i = 0; i < kMaxIndeterminates; ++i) {
                g.exps[i] = std::min(g.exps[i], m.exps[i]);
            }
        }
        return g;
    }

    // Divides out the monomial content and scales so that coefficients are
    // coprime Gaussian integers with a positive rational leading coefficient
    // when that is possible. Returns {primitive, scale} with
    // *this == scale * monomial * primitive.
    std::pair<PolyScalar, GaussianRational> primitive_part() const
    {
        if (is_zero()) {
            return {*this, GaussianRational(1)};
        }
        Monomial content = monomial_content();
        GaussianRational lead = terms_[0].second;
        std::vector<Term> out;
        for (const auto &[m, c] : terms_) {
            out.emplace_back(m / content, c / lead);
        }
        // Clear denominators and common integer factors.
        mpz_class den = 1;
        for (const auto &[m, c] : out) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.im().get_den_mpz_t());
        }
        mpz_class g = 0;
        for (const auto &[m, c] : out) {
            Rational re = c.re() * den;
            Rational im = c.im() * den;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), re.get_num_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), im.get_num_mpz_t());
        }
        Rational factor(den, g);
        factor.canonicalize();
        for (auto &t : out) {
            t.second *= GaussianRational(factor);
        }
        PolyScalar prim = from_terms(std::move(out), reg_);
        GaussianRational scale = lead / GaussianRational(factor);
        return {prim, scale};
    }

    // Multivariate division by a single divisor under the graded-lex order.
    // Returns {quotient, remainder} with *this == q * d + r.
    std::pair<PolyScalar, PolyScalar> divide(const PolyScalar &d) const
    {
        check_same(d);
        if (d.is_zero()) {
            throw usage_error("polynomial division by zero");
        }
        const auto &[dm, dc] = d.leading_term();
        GaussianRational dinv = dc.inverse();
        PolyScalar q(reg_), r(reg_), p = *this;
        while (!p.is_zero()) {
            const auto [pm, pc] = p.leading_term();
            PolyScalar lead(reg_);
            lead.terms_.emplace_back(pm, pc);
            if (dm.divides(pm)) {
                PolyScalar t(reg_);
                t.terms_.emplace_back(pm / dm, pc * dinv);
                q += t;
                p -= t * d;
            } else {
                r += lead;
                p -= lead;
            }
        }
        return {q, r};
    }

    // Distinct values of sum(weight_i * exponent_i) over the terms.
    std::vector<long> weighted_degrees(const std::map<std::string, long> &weights) const
    {
        std::vector<long> out;
        for (const auto &[m, c] : terms_) {
            long w = 0;
            for (std::size_t i = 0; i < reg_->size(); ++i) {
                if (m.exps[i] == 0) {
                    continue;
                }
                auto it = weights.find(reg_->name(i));
                w += long(m.exps[i]) * (it == weights.end() ? 0 : it->second);
            }
            if (std::find(out.begin(), out.end(), w) == out.end()) {
                out.push_back(w);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Canonical rendering, e.g. "6*c1^3*c3-3*c1^2*c2^2+(1/2+i)*h".
    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &[m, c] : terms_) {
            std::string mono = monomial_string(m);
            std::string coef;
            bool negative = false;
            if (c.is_real()) {
                negative = sgn(c.re()) < 0;
                Rational a = abs(c.re());
                if (!(a == 1) || mono.empty()) {
                    coef = a.get_str();
                }
            } else if (sgn(c.re()) == 0) {
                negative = sgn(c.im()) < 0;
                Rational a = abs(c.im());
                coef = (a == 1) ? "i" : a.get_str() + "*i";
            } else {
                coef = "(" + c.to_string() + ")";
            }
            if (negative) {
                out += "-";
            } else if (!first) {
                out += "+";
            }
            out += coef;
            if (!mono.empty()) {
                if (!coef.empty()) {
                    out += "*";
                }
                out += mono;
            }
            first = false;
        }
        return out;
    }

private:
    // Constants are registry-neutral; anything else must share the indeterminate set.
    void check_same(const PolyScalar &o) const
    {
        if (reg_ != o.reg_ && !is_constant() && !o.is_constant() && reg_->names() != o.reg_->names()) {
            throw usage_error("polynomials declared over different indeterminate sets");
        }
    }

    void adopt(const PolyScalar &o)
    {
        check_same(o);
        if (reg_ != o.reg_ && is_constant()) {
            reg_ = o.reg_;
        }
    }

    std::string monomial_string(const Monomial &m) const
    {
        std::string s;
        for (std::size_t i = 0; i < reg_->size(); ++i) {
            if (m.exps[i] == 0) {
                continue;
            }
            if (!s.empty()) {
                s += "*";
            }
            s += reg_->name(i);
            if (m.exps[i] > 1) {
                s += "^" + std::to_string(m.exps[i]);
            }
        }
        return s;
    }

    void normalize()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term &x, const Term &y) { return x.first > y.first; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto &t : terms_) {
            if (!out.empty() && out.back().first == t.first) {
                out.back().second += t.second;
            } else {
                if (!out.empty() && out.back().second.is_zero()) {
                    out.pop_back();
                }
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && out.back().second.is_zero()) {
            out.pop_back();
        }
        terms_ = std::move(out);
    }

    RegistryPtr reg_;
    std::vector<Term> terms_;
};

inline std::ostream &operator<<(std::ostream &os, const PolyScalar &p)
{
    return os << p.to_string();
}

// Shorthand for an indeterminate of the standard registry.
inline PolyScalar var(std::string_view name)
{
    return PolyScalar::var(name);
}

inline PolyScalar rational_constant(long num, long den = 1, RegistryPtr reg = Registry::standard())
{
    return PolyScalar(make_rational(num, den), std::move(reg));
}

inline Rational factorial(unsigned k)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return Rational(f);
}

// prod_{j<k} (x - j*h) / k!
inline PolyScalar hbinom(const PolyScalar &x, unsigned k, const PolyScalar &h)
{
    PolyScalar r(GaussianRational(1), x.registry());
    for (unsigned j = 0; j < k; ++j) {
        r *= x - h * PolyScalar(long(j));
    }
    return r.scale_by(GaussianRational(Rational(1) / factorial(k)));
}

// Generalized binomial coefficient (p choose k) for integer p.
inline Rational binomial(long p, unsigned k)
{
    Rational r = 1;
    for (unsigned j = 0; j < k; ++j) {
        r *= Rational(p - long(j));
    }
    return r / factorial(k);
}

// p (p-1) ... (p-k+1)
inline Rational falling_factorial(long p, unsigned k)
{
    Rational r = 1;
    for (unsigned j = 0; j < k; ++j) {
        r *= Rational(p - long(j));
    }
    return r;
}

} // namespace psdo

#endif
