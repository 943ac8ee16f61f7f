#ifndef PSDO_CIRCLE_HPP
#define PSDO_CIRCLE_HPP

#include <array>
#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <psdo/errors.hpp>
#include <psdo/scalars.hpp>

namespace psdo
{

// Fourier index of e^{i<v>x}: an integer plus an integer combination of the
// formal mode symbols a, b, m.
struct ModeVector {
    static constexpr std::array<std::string_view, 3> symbols{"a", "b", "m"};

    long constant = 0;
    std::array<long, 3> formal{};

    static ModeVector integer(long k) { return ModeVector{k, {}}; }

    static ModeVector symbol(std::string_view name, long multiple = 1)
    {
        ModeVector v;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (symbols[i] == name) {
                v.formal[i] = multiple;
                return v;
            }
        }
        throw usage_error("unknown formal mode symbol '" + std::string(name) + "'");
    }

    bool is_zero() const { return constant == 0 && formal == std::array<long, 3>{}; }

    friend ModeVector operator+(ModeVector x, const ModeVector &y)
    {
        x.constant += y.constant;
        for (std::size_t i = 0; i < 3; ++i) {
            x.formal[i] += y.formal[i];
        }
        return x;
    }
    ModeVector operator-() const
    {
        ModeVector r{-constant, {}};
        for (std::size_t i = 0; i < 3; ++i) {
            r.formal[i] = -formal[i];
        }
        return r;
    }
    friend ModeVector operator-(const ModeVector &x, const ModeVector &y) { return x + (-y); }

    friend bool operator==(const ModeVector &, const ModeVector &) = default;
    friend auto operator<=>(const ModeVector &, const ModeVector &) = default;

    // <v> as a polynomial in the mode symbols.
    PolyScalar value(const RegistryPtr &reg = Registry::standard()) const
    {
        PolyScalar p(GaussianRational(constant), reg);
        for (std::size_t i = 0; i < 3; ++i) {
            if (formal[i] != 0) {
                p += PolyScalar::var(symbols[i], reg) * PolyScalar(formal[i]);
            }
        }
        return p;
    }

    // "a+2b", "m-1", "0".
    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < 3; ++i) {
            long k = formal[i];
            if (k == 0) {
                continue;
            }
            if (k < 0) {
                s += "-";
            } else if (!s.empty()) {
                s += "+";
            }
            if (k != 1 && k != -1) {
                s += std::to_string(k < 0 ? -k : k);
            }
            s += symbols[i];
        }
        if (constant != 0 || s.empty()) {
            if (constant > 0 && !s.empty()) {
                s += "+";
            }
            s += std::to_string(constant);
        }
        return s;
    }
};

// Finite Fourier expansion sum_v c_v E_v with polynomial coefficients.
class CircleFunction
{
public:
    using Map = std::map<ModeVector, PolyScalar>;

    CircleFunction() = default;

    static CircleFunction mode(const ModeVector &v, const PolyScalar &coef = PolyScalar(1))
    {
        CircleFunction f;
        f.add_term(v, coef);
        return f;
    }
    static CircleFunction mode(long k) { return mode(ModeVector::integer(k)); }
    static CircleFunction mode(std::string_view symbol) { return mode(ModeVector::symbol(symbol)); }
    static CircleFunction constant(const PolyScalar &c) { return mode(ModeVector{}, c); }

    const Map &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    PolyScalar coefficient(const ModeVector &v) const
    {
        auto it = terms_.find(v);
        return it == terms_.end() ? PolyScalar() : it->second;
    }

    void add_term(const ModeVector &v, const PolyScalar &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(v, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    CircleFunction &operator+=(const CircleFunction &o)
    {
        for (const auto &[v, c] : o.terms_) {
            add_term(v, c);
        }
        return *this;
    }
    CircleFunction &operator-=(const CircleFunction &o)
    {
        for (const auto &[v, c] : o.terms_) {
            add_term(v, -c);
        }
        return *this;
    }
    CircleFunction operator-() const
    {
        CircleFunction r;
        for (const auto &[v, c] : terms_) {
            r.terms_.emplace(v, -c);
        }
        return r;
    }
    CircleFunction &operator*=(const PolyScalar &s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= s;
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
        }
        return *this;
    }

    friend CircleFunction operator+(CircleFunction f, const CircleFunction &g) { return f += g; }
    friend CircleFunction operator-(CircleFunction f, const CircleFunction &g) { return f -= g; }
    friend CircleFunction operator*(CircleFunction f, const PolyScalar &s) { return f *= s; }
    friend CircleFunction operator*(const PolyScalar &s, CircleFunction f) { return f *= s; }

    // Pointwise product: modes add.
    friend CircleFunction operator*(const CircleFunction &f, const CircleFunction &g)
    {
        CircleFunction r;
        for (const auto &[v, c] : f.terms_) {
            for (const auto &[w, d] : g.terms_) {
                r.add_term(v + w, c * d);
            }
        }
        return r;
    }

    friend bool operator==(const CircleFunction &, const CircleFunction &) = default;

    // "3*E[a]+(h)*E[a+b]"; coefficients are parenthesized unless trivial.
    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[v, c] = *it;
            std::string cs = c.to_string();
            if (!s.empty()) {
                s += "+";
            }
            if (cs != "1") {
                s += "(" + cs + ")*";
            }
            s += "E[" + v.to_string() + "]";
        }
        return s;
    }

private:
    Map terms_;
};

inline std::ostream &operator<<(std::ostream &os, const CircleFunction &f)
{
    return os << f.to_string();
}

inline CircleFunction fn_mul(const CircleFunction &f, const CircleFunction &g)
{
    return f * g;
}

// d^order/dx^order: the mode v picks up (i<v>)^order.
inline CircleFunction fn_derive(const CircleFunction &f, unsigned order)
{
    if (order == 0) {
        return f;
    }
    CircleFunction r;
    for (const auto &[v, c] : f.terms()) {
        PolyScalar factor = (PolyScalar::i(c.registry()) * v.value(c.registry())).pow(order);
        r.add_term(v, c * factor);
    }
    return r;
}

// Integral over the circle with the normalization int E_n dx = delta_{n,0}.
inline PolyScalar circle_integral(const CircleFunction &f)
{
    return f.coefficient(ModeVector{});
}

// f(x) d/dx
struct VectorField {
    CircleFunction component;

    static VectorField mode(const ModeVector &v) { return {CircleFunction::mode(v)}; }
    static VectorField mode(long k) { return mode(ModeVector::integer(k)); }
    static VectorField mode(std::string_view symbol) { return mode(ModeVector::symbol(symbol)); }

    friend VectorField operator+(const VectorField &x, const VectorField &y) { return {x.component + y.component}; }
    friend VectorField operator*(const PolyScalar &s, const VectorField &x) { return {s * x.component}; }
    friend bool operator==(const VectorField &, const VectorField &) = default;
};

// a(x) dx^degree
struct TensorDensity {
    long degree = 0;
    CircleFunction component;

    friend bool operator==(const TensorDensity &, const TensorDensity &) = default;
};

// [f d, g d] = (f g' - f' g) d
inline VectorField vect_bracket(const VectorField &x, const VectorField &y)
{
    const auto &f = x.component;
    const auto &g = y.component;
    return {f * fn_derive(g, 1) - fn_derive(f, 1) * g};
}

// Lie derivative: f a' + n f' a.
inline TensorDensity lie_derive(const VectorField &x, const TensorDensity &a)
{
    const auto &f = x.component;
    return {a.degree,
            f * fn_derive(a.component, 1) + PolyScalar(a.degree) * (fn_derive(f, 1) * a.component)};
}

} // namespace psdo

#endif
