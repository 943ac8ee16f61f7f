#ifndef PSDO_COHOMOLOGY_HPP
#define PSDO_COHOMOLOGY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <psdo/circle.hpp>
#include <psdo/errors.hpp>
#include <psdo/maps.hpp>
#include <psdo/scalars.hpp>
#include <psdo/symbol.hpp>

namespace psdo
{

// Key of a coefficient table: (xi-degree d, derivative order j) for the
// term c * f^{(j)} xi^d.
using RowKey = std::pair<int, unsigned>;

// Linear map Vect(S^1) -> symbols. Either a coefficient table evaluated as
// sum c_{d,j} f^{(j)} xi^d, or an arbitrary evaluator.
class Cochain1
{
public:
    using Table = std::map<RowKey, CircleFunction>;
    using Evaluator = std::function<Symbol(const VectorField &)>;

    Cochain1() : Cochain1(Table{}) {}

    explicit Cochain1(Table table, int floor = kExact) : table_(std::move(table)), floor_(floor) {}

    static Cochain1 from_function(Evaluator fn)
    {
        Cochain1 c;
        c.table_.reset();
        c.eval_ = std::move(fn);
        return c;
    }

    const std::optional<Table> &table() const { return table_; }
    int floor() const { return floor_; }

    Symbol operator()(const VectorField &x) const
    {
        if (!table_) {
            return eval_(x);
        }
        Symbol out(floor_);
        std::map<unsigned, CircleFunction> derivs;
        derivs.emplace(0, x.component);
        for (const auto &[key, coef] : *table_) {
            auto [d, j] = key;
            if (floor_ != kExact && d < floor_) {
                continue;
            }
            while (derivs.rbegin()->first < j) {
                auto last = derivs.rbegin();
                derivs.emplace(last->first + 1, fn_derive(last->second, 1));
            }
            out.add_term(d, coef * derivs.at(j));
        }
        return out;
    }

private:
    std::optional<Table> table_;
    Evaluator eval_;
    int floor_ = kExact;
};

// Tables of theta_0..theta_3 down to `floor`. For symbolic h the tails pick up
// h^{n-2}, which keeps them cocycles for the contracted bracket.
inline Cochain1::Table theta_table(int which, int floor, const PolyScalar &h = PolyScalar(1))
{
    Cochain1::Table t;
    auto constant = [](const PolyScalar &c) { return CircleFunction::constant(c); };
    switch (which) {
    case 0:
        t.emplace(RowKey{0, 0}, constant(1));
        break;
    case 1:
        t.emplace(RowKey{0, 1}, constant(1));
        break;
    case 2:
        for (int n = 2; 1 - n >= floor; ++n) {
            Rational c = make_rational((n % 2 == 1 ? 1 : -1) * 2 * (n - 3), n);
            if (sgn(c) != 0) {
                t.emplace(RowKey{1 - n, unsigned(n)}, constant(PolyScalar(c) * h.pow(unsigned(n - 2))));
            }
        }
        break;
    case 3:
        for (int n = 2; -n >= floor; ++n) {
            Rational c = make_rational((n % 2 == 0 ? 1 : -1) * 3 * (n - 1), n + 1);
            t.emplace(RowKey{-n, unsigned(n + 1)}, constant(PolyScalar(c) * h.pow(unsigned(n - 2))));
        }
        break;
    default:
        throw usage_error("theta index must be 0..3, got " + std::to_string(which));
    }
    return t;
}

inline Cochain1 theta_cochain(int which, int floor, const PolyScalar &h = PolyScalar(1))
{
    return Cochain1(theta_table(which, floor, h), which >= 2 ? floor : kExact);
}

inline Symbol theta(int which, const VectorField &x, int floor, const PolyScalar &h = PolyScalar(1))
{
    return theta_cochain(which, floor, h)(x);
}

enum class DensityCocycle { c0_bar, c0, c1, c2 };

// f, f', f'' dx, f''' dx^2
inline TensorDensity density_cocycle(DensityCocycle which, const VectorField &x)
{
    switch (which) {
    case DensityCocycle::c0_bar:
        return {0, x.component};
    case DensityCocycle::c0:
        return {0, fn_derive(x.component, 1)};
    case DensityCocycle::c1:
        return {1, fn_derive(x.component, 2)};
    case DensityCocycle::c2:
        return {2, fn_derive(x.component, 3)};
    }
    throw usage_error("unknown density cocycle");
}

// gamma([X,Y]) - L_X gamma(Y) + L_Y gamma(X) on (L_a, L_b).
inline TensorDensity check_density_cocycle(DensityCocycle which)
{
    VectorField x = VectorField::mode("a");
    VectorField y = VectorField::mode("b");
    TensorDensity lhs = density_cocycle(which, vect_bracket(x, y));
    TensorDensity gx = density_cocycle(which, x);
    TensorDensity gy = density_cocycle(which, y);
    return {lhs.degree, lhs.component - lie_derive(x, gy).component + lie_derive(y, gx).component};
}

// gamma([X,Y]) - [gamma X, pi Y] - [pi X, gamma Y] at X = L_a, Y = L_b, using
// the contracted bracket (1/h)[.,.]_h. Zero on the accurate range iff gamma is
// a cocycle there.
inline Symbol check_1cocycle(const Cochain1 &gamma, int floor, const PolyScalar &h = PolyScalar(1))
{
    VectorField x = VectorField::mode("a");
    VectorField y = VectorField::mode("b");
    Symbol px = embed_vect(x);
    Symbol py = embed_vect(y);
    Symbol out = gamma(vect_bracket(x, y)).truncated(floor);
    out -= bracket_contracted(gamma(x), py, h, floor);
    out -= bracket_contracted(px, gamma(y), h, floor);
    return out;
}

// X -> (1/h)[F, pi X]_h as a coefficient table.
inline Cochain1 coboundary(const Symbol &f, int floor = kDefaultFloor, const PolyScalar &h = PolyScalar(1))
{
    bool infinite = detail::has_negative_degree(f);
    int out_floor = f.is_exact() ? (infinite ? floor : kExact) : std::max(f.floor() + 1, floor);
    Cochain1::Table t;
    auto add = [&](RowKey key, const CircleFunction &c) {
        if (c.is_zero() || (out_floor != kExact && key.first < out_floor)) {
            return;
        }
        auto [it, inserted] = t.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                t.erase(it);
            }
        }
    };
    for (const auto &[p, fp] : f.terms()) {
        // F o f xi: sum_k (1/k!) d_xi^k F f^{(k)} xi; f xi o F: f xi F + f F'.
        for (unsigned k = 1; out_floor == kExact || p - int(k) + 1 >= out_floor; ++k) {
            Rational ff = falling_factorial(p, k);
            if (sgn(ff) == 0) {
                break;
            }
            add({p - int(k) + 1, k}, fp * (h.pow(k - 1) * PolyScalar(GaussianRational(ff / factorial(k)))));
        }
        add({p, 0}, -fn_derive(fp, 1));
    }
    return Cochain1(std::move(t), out_floor);
}

// [[gamma, delta]](X, Y) = [gamma X, delta Y] + [delta X, gamma Y], contracted bracket.
inline Symbol cup(const Cochain1 &gamma, const Cochain1 &delta, const VectorField &x, const VectorField &y, int floor,
                  const PolyScalar &h = PolyScalar(1))
{
    return bracket_contracted(gamma(x), delta(y), h, floor) + bracket_contracted(delta(x), gamma(y), h, floor);
}

// (1/12) int f''' g
inline PolyScalar gf_cocycle(const VectorField &x, const VectorField &y)
{
    return circle_integral(fn_derive(x.component, 3) * y.component) * PolyScalar(make_rational(1, 12));
}

enum class OuterDerivation { log_xi, x };

// int Res(delta(F) o_h G)
inline PolyScalar central_cocycle(OuterDerivation which, const Symbol &f, const Symbol &g, const PolyScalar &h,
                                  int cut = kDefaultFloor)
{
    Symbol df = which == OuterDerivation::log_xi ? ad_logxi(f, h, cut) : ad_x(f);
    return residue_trace(compose_h(df, g, h, cut)).second;
}

// Element f d + a of Vect(S^1) x| C^infty(S^1).
struct SemidirectElement {
    VectorField field;
    CircleFunction function;
};

// [(f d, a), (g d, b)] = ((f g' - f' g) d, f b' - g a')
inline SemidirectElement semidirect_bracket(const SemidirectElement &u, const SemidirectElement &v)
{
    const auto &f = u.field.component;
    const auto &g = v.field.component;
    return {vect_bracket(u.field, v.field), f * fn_derive(v.function, 1) - g * fn_derive(u.function, 1)};
}

enum class SemidirectCocycle { virasoro, tilde, tildetilde };

inline PolyScalar semidirect_cocycles(SemidirectCocycle which, const SemidirectElement &u, const SemidirectElement &v)
{
    const auto &f = u.field.component;
    const auto &g = v.field.component;
    const auto &a = u.function;
    const auto &b = v.function;
    switch (which) {
    case SemidirectCocycle::virasoro:
        return gf_cocycle(u.field, v.field);
    case SemidirectCocycle::tilde:
        return circle_integral(fn_derive(f, 2) * b - fn_derive(g, 2) * a);
    case SemidirectCocycle::tildetilde:
        return circle_integral(fn_derive(a, 1) * b - a * fn_derive(b, 1));
    }
    throw usage_error("unknown semidirect cocycle");
}

// omega([X,Y],Z) + omega([Y,Z],X) + omega([Z,X],Y)
template <typename Element, typename Omega, typename Bracket>
PolyScalar check_2cocycle_scalar(const Omega &omega, const Bracket &br, const Element &x, const Element &y,
                                 const Element &z)
{
    return omega(br(x, y), z) + omega(br(y, z), x) + omega(br(z, x), y);
}

} // namespace psdo

#endif
