#ifndef PSDO_SYMBOL_HPP
#define PSDO_SYMBOL_HPP

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include <psdo/circle.hpp>
#include <psdo/errors.hpp>
#include <psdo/scalars.hpp>

namespace psdo
{

// Floor value of a symbol that is known in every degree.
inline constexpr int kExact = INT_MIN;

// Working floor used when a product would otherwise be an infinite series.
inline constexpr int kDefaultFloor = -10;

namespace detail
{

inline int floor_add(int f, int k)
{
    return f == kExact ? kExact : f + k;
}

} // namespace detail

// Truncated formal Laurent series sum_d f_d(x) xi^d. Coefficients below
// floor() are unknown; a symbol denotes the class of all series agreeing with
// it in degrees >= floor().
class Symbol
{
public:
    using Map = std::map<int, CircleFunction, std::greater<>>;

    Symbol() = default;
    explicit Symbol(int floor) : floor_(floor) {}

    static Symbol term(const CircleFunction &f, int degree, int floor = kExact)
    {
        Symbol s(floor);
        s.add_term(degree, f);
        return s;
    }

    // xi^degree with constant coefficient 1.
    static Symbol xi(int degree = 1) { return term(CircleFunction::constant(PolyScalar(1)), degree); }

    int floor() const { return floor_; }
    bool is_exact() const { return floor_ == kExact; }
    const Map &terms() const { return terms_; }

    // Highest stored degree, if any.
    std::optional<int> order() const
    {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return terms_.begin()->first;
    }

    // Highest degree that may be nonzero, counting the unknown tail.
    std::optional<int> order_bound() const
    {
        std::optional<int> o = order();
        if (!is_exact()) {
            o = std::max(o.value_or(INT_MIN), floor_ - 1);
        }
        return o;
    }

    // Zero on the accurate range.
    bool is_zero() const { return terms_.empty(); }

    CircleFunction coefficient(int degree) const
    {
        if (!is_exact() && degree < floor_) {
            throw accuracy_error("coefficient of xi^" + std::to_string(degree) + " lies below the accuracy floor " +
                                 std::to_string(floor_));
        }
        auto it = terms_.find(degree);
        return it == terms_.end() ? CircleFunction() : it->second;
    }

    void add_term(int degree, const CircleFunction &f)
    {
        if ((!is_exact() && degree < floor_) || f.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(degree, f);
        if (!inserted) {
            it->second += f;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    // Raises the floor (never lowers it) and drops the terms below it.
    Symbol truncated(int floor) const
    {
        Symbol r = *this;
        r.raise_floor(floor);
        return r;
    }

    void raise_floor(int floor)
    {
        if (floor <= floor_) {
            return;
        }
        floor_ = floor;
        for (auto it = terms_.begin(); it != terms_.end();) {
            it = it->first < floor_ ? terms_.erase(it) : std::next(it);
        }
    }

    Symbol &operator+=(const Symbol &o)
    {
        raise_floor(o.floor_);
        for (const auto &[d, f] : o.terms_) {
            add_term(d, f);
        }
        return *this;
    }
    Symbol &operator-=(const Symbol &o)
    {
        raise_floor(o.floor_);
        for (const auto &[d, f] : o.terms_) {
            add_term(d, -f);
        }
        return *this;
    }
    Symbol operator-() const
    {
        Symbol r(floor_);
        for (const auto &[d, f] : terms_) {
            r.terms_.emplace(d, -f);
        }
        return r;
    }
    Symbol &operator*=(const PolyScalar &s)
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= s;
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
        }
        return *this;
    }

    friend Symbol operator+(Symbol a, const Symbol &b) { return a += b; }
    friend Symbol operator-(Symbol a, const Symbol &b) { return a -= b; }
    friend Symbol operator*(Symbol a, const PolyScalar &s) { return a *= s; }
    friend Symbol operator*(const PolyScalar &s, Symbol a) { return a *= s; }

    // Equality on the common accurate range.
    friend bool operator==(const Symbol &a, const Symbol &b) { return (a - b).is_zero(); }

    // Applies fn to every polynomial coefficient.
    Symbol map_coefficients(const std::function<PolyScalar(const PolyScalar &)> &fn) const
    {
        Symbol r(floor_);
        for (const auto &[d, f] : terms_) {
            CircleFunction g;
            for (const auto &[v, c] : f.terms()) {
                g.add_term(v, fn(c));
            }
            r.add_term(d, g);
        }
        return r;
    }

    // Descending degrees, "(E[1])*xi^2+(i*E[2])*xi+O(xi^{<-10})".
    std::string to_string() const
    {
        std::string s;
        for (const auto &[d, f] : terms_) {
            if (!s.empty()) {
                s += " + ";
            }
            s += "(" + f.to_string() + ")";
            if (d == 1) {
                s += "*xi";
            } else if (d != 0) {
                s += "*xi^" + std::to_string(d);
            }
        }
        if (!is_exact()) {
            s += (s.empty() ? "" : " + ") + std::string("O(xi^{<") + std::to_string(floor_) + "})";
        } else if (s.empty()) {
            s = "0";
        }
        return s;
    }

private:
    int floor_ = kExact;
    Map terms_;
};

inline std::ostream &operator<<(std::ostream &os, const Symbol &s)
{
    return os << s.to_string();
}

// f d  ->  f xi
inline Symbol embed_vect(const VectorField &x)
{
    return Symbol::term(x.component, 1);
}

namespace detail
{

// Accuracy floor of a bilinear expression whose terms lower the total degree
// by at least `drop`: the unknown tail of either factor, paired with the
// other's highest possible degree, is what pollutes the result.
inline int product_floor(const Symbol &f, const Symbol &g, int drop)
{
    int floor = kExact;
    if (!f.is_exact()) {
        if (auto og = g.order_bound()) {
            floor = std::max(floor, f.floor() + *og - drop);
        }
    }
    if (!g.is_exact()) {
        if (auto of = f.order_bound()) {
            floor = std::max(floor, g.floor() + *of - drop);
        }
    }
    return floor;
}

inline bool has_negative_degree(const Symbol &f)
{
    return !f.terms().empty() && f.terms().rbegin()->first < 0;
}

// sum_{k >= kmin} weight(k) d_xi^k F d_x^k G, ordered, down to `floor`.
inline Symbol ordered_sum(const Symbol &f, const Symbol &g, unsigned kmin,
                          const std::function<PolyScalar(unsigned)> &weight, int floor)
{
    Symbol out(floor);
    std::map<unsigned, PolyScalar> weights;
    for (const auto &[q, gq] : g.terms()) {
        std::vector<CircleFunction> derivs{gq};
        for (const auto &[p, fp] : f.terms()) {
            for (unsigned k = kmin;; ++k) {
                int degree = p - int(k) + q;
                if (floor != kExact && degree < floor) {
                    break;
                }
                Rational ff = falling_factorial(p, k);
                if (sgn(ff) == 0) {
                    break;
                }
                while (derivs.size() <= k) {
                    derivs.push_back(fn_derive(derivs.back(), 1));
                }
                if (derivs[k].is_zero()) {
                    if (k > 0) {
                        break;
                    }
                    continue;
                }
                auto w = weights.find(k);
                if (w == weights.end()) {
                    w = weights.emplace(k, weight(k)).first;
                }
                PolyScalar c = w->second * PolyScalar(GaussianRational(ff / factorial(k)));
                if (c.is_zero()) {
                    continue;
                }
                out.add_term(degree, (fp * derivs[k]) * c);
            }
        }
    }
    return out;
}

// Floor for a k-series with the given minimal degree drop; infinite series
// are cut at `cut`.
inline int series_floor(const Symbol &f, const Symbol &g, int drop, int cut)
{
    int rule = product_floor(f, g, drop);
    bool infinite = has_negative_degree(f);
    if (rule == kExact) {
        return infinite ? cut : kExact;
    }
    return std::max(rule, cut);
}

} // namespace detail

// F o_h G = sum_k (h^k / k!) d_xi^k F d_x^k G with ordered coefficients.
inline Symbol compose_h(const Symbol &f, const Symbol &g, const PolyScalar &h, int cut = kDefaultFloor)
{
    int floor = detail::series_floor(f, g, 0, cut);
    PolyScalar hh = h;
    return detail::ordered_sum(f, g, 0, [&](unsigned k) { return hh.pow(k); }, floor);
}

inline Symbol compose(const Symbol &f, const Symbol &g, int cut = kDefaultFloor)
{
    return compose_h(f, g, PolyScalar(1), cut);
}

// [F, G]_h = F o_h G - G o_h F
inline Symbol bracket_h(const Symbol &f, const Symbol &g, const PolyScalar &h, int cut = kDefaultFloor)
{
    return compose_h(f, g, h, cut) - compose_h(g, f, h, cut);
}

inline Symbol bracket(const Symbol &f, const Symbol &g, int cut = kDefaultFloor)
{
    return bracket_h(f, g, PolyScalar(1), cut);
}

// (1/h)[F, G]_h computed without dividing: the k = 0 terms cancel, so this is
// a polynomial in h whose value at h = 0 is the Poisson bracket.
inline Symbol bracket_contracted(const Symbol &f, const Symbol &g, const PolyScalar &h, int cut = kDefaultFloor)
{
    int floor = std::max(detail::series_floor(f, g, 1, cut), detail::series_floor(g, f, 1, cut));
    PolyScalar hh = h;
    auto weight = [&](unsigned k) { return hh.pow(k - 1); };
    return detail::ordered_sum(f, g, 1, weight, floor) - detail::ordered_sum(g, f, 1, weight, floor);
}

// {F, G} = d_xi F d_x G - d_x F d_xi G
inline Symbol poisson(const Symbol &f, const Symbol &g)
{
    int floor = detail::product_floor(f, g, 1);
    Symbol out(floor);
    for (const auto &[p, fp] : f.terms()) {
        for (const auto &[q, gq] : g.terms()) {
            if (p != 0) {
                out.add_term(p - 1 + q, PolyScalar(p) * (fp * fn_derive(gq, 1)));
            }
            if (q != 0) {
                out.add_term(p + q - 1, PolyScalar(-q) * (fn_derive(fp, 1) * gq));
            }
        }
    }
    return out;
}

// Res F (the xi^-1 coefficient) and its integral, the Adler trace.
inline std::pair<CircleFunction, PolyScalar> residue_trace(const Symbol &f)
{
    if (!f.is_exact() && f.floor() > -1) {
        throw accuracy_error("residue needs accuracy down to xi^-1, floor is " + std::to_string(f.floor()));
    }
    CircleFunction res = f.coefficient(-1);
    return {res, circle_integral(res)};
}

// Order and principal symbol, the latter as a density of degree -ord.
inline std::pair<int, TensorDensity> order_principal(const Symbol &f)
{
    auto ord = f.order();
    if (!ord) {
        throw usage_error("order of the zero symbol is undefined");
    }
    return {*ord, TensorDensity{-long(*ord), f.coefficient(*ord)}};
}

// f xi^k -> h^k f xi^k (or h^-k f xi^k for the inverse).
inline Symbol phi_h(const Symbol &f, const PolyScalar &h, bool inverse = false)
{
    bool constant = h.is_constant() && !h.is_zero();
    if (inverse && !constant) {
        throw usage_error("inverse rescaling needs a nonzero constant h");
    }
    if (!constant) {
        bool negative = detail::has_negative_degree(f) || (!f.is_exact() && f.floor() < 0);
        if (negative || h.is_zero()) {
            throw usage_error("rescaling negative degrees needs a nonzero constant h");
        }
    }
    Symbol r(f.floor());
    for (const auto &[d, c] : f.terms()) {
        int e = inverse ? -d : d;
        PolyScalar factor = e >= 0 ? h.pow(unsigned(e))
                                   : PolyScalar(h.constant_value().inverse()).pow(unsigned(-e));
        r.add_term(d, c * factor);
    }
    return r;
}

} // namespace psdo

#endif
