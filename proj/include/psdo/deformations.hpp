#ifndef PSDO_DEFORMATIONS_HPP
#define PSDO_DEFORMATIONS_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <psdo/circle.hpp>
#include <psdo/cohomology.hpp>
#include <psdo/errors.hpp>
#include <psdo/maps.hpp>
#include <psdo/scalars.hpp>
#include <psdo/symbol.hpp>

namespace psdo
{

// f d -> sum rows[d,j] f^{(j)} xi^d. Rows below `floor` are not known.
struct DeformAnsatz {
    std::map<RowKey, PolyScalar> rows;
    std::vector<std::string> unknowns;
    int floor = kExact;

    static DeformAnsatz canonical()
    {
        DeformAnsatz a;
        a.rows.emplace(RowKey{1, 0}, PolyScalar(1));
        return a;
    }

    PolyScalar row(int d, unsigned j) const
    {
        auto it = rows.find({d, j});
        return it == rows.end() ? PolyScalar() : it->second;
    }

    void add(RowKey key, const PolyScalar &c)
    {
        if (c.is_zero() || (floor != kExact && key.first < floor)) {
            return;
        }
        auto [it, inserted] = rows.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                rows.erase(it);
            }
        }
    }

    DeformAnsatz substitute(const std::map<std::string, PolyScalar> &assignment) const
    {
        DeformAnsatz out;
        out.floor = floor;
        for (const auto &[k, c] : rows) {
            out.add(k, c.substitute(assignment));
        }
        for (const auto &u : unknowns) {
            if (!assignment.count(u)) {
                out.unknowns.push_back(u);
            }
        }
        return out;
    }

    Cochain1 cochain() const
    {
        Cochain1::Table t;
        for (const auto &[k, c] : rows) {
            t.emplace(k, CircleFunction::constant(c));
        }
        return Cochain1(std::move(t), floor);
    }
};

inline Symbol eval_ansatz(const DeformAnsatz &a, const VectorField &x, int floor = kExact)
{
    return a.cochain()(x).truncated(floor);
}

// [A L_a, A L_b] - A([L_a, L_b]) with the contracted bracket (1/h)[.,.]_h.
inline Symbol defect(const Cochain1 &a, const PolyScalar &h, int floor = kDefaultFloor)
{
    VectorField x = VectorField::mode("a");
    VectorField y = VectorField::mode("b");
    return bracket_contracted(a(x), a(y), h, floor) - a(vect_bracket(x, y)).truncated(floor);
}

inline Symbol defect(const DeformAnsatz &a, const PolyScalar &h, int floor = kDefaultFloor)
{
    return defect(a.cochain(), h, floor);
}

// Table form of Phi_nu applied after the ansatz: rows (d,j) spread to
// (d-k, j) with binomial(d,k) nu^k.
inline DeformAnsatz dress_phi(const DeformAnsatz &a, const PolyScalar &nu, int floor)
{
    DeformAnsatz out;
    out.unknowns = a.unknowns;
    bool finite = a.floor == kExact && std::all_of(a.rows.begin(), a.rows.end(), [](const auto &r) {
                      return r.first.first >= 0;
                  });
    out.floor = finite ? kExact : std::max(a.floor, floor);
    for (const auto &[key, c] : a.rows) {
        auto [d, j] = key;
        PolyScalar nk(1);
        for (unsigned k = 0; out.floor == kExact || d - int(k) >= out.floor; ++k) {
            Rational b = binomial(d, k);
            if (sgn(b) == 0) {
                break;
            }
            out.add({d - int(k), j}, c * nk * PolyScalar(b));
            nk *= nu;
            if (nk.is_zero()) {
                break;
            }
        }
    }
    return out;
}

// Row (d,j) -> (d-k, j+k) with hbinom(mu,k,h); the table form of aut_psi_mu.
inline DeformAnsatz conjugate_psi(const DeformAnsatz &a, const PolyScalar &mu, const PolyScalar &h, int floor)
{
    if (mu.is_zero()) {
        return a;
    }
    DeformAnsatz out;
    out.unknowns = a.unknowns;
    out.floor = std::max(a.floor, floor);
    std::vector<PolyScalar> coefs;
    for (const auto &[key, c] : a.rows) {
        auto [d, j] = key;
        for (unsigned k = 0; d - int(k) >= out.floor; ++k) {
            while (coefs.size() <= k) {
                coefs.push_back(hbinom(mu, unsigned(coefs.size()), h));
            }
            out.add({d - int(k), j + k}, c * coefs[k]);
        }
    }
    return out;
}

// f xi + c0 f + c1 f' + c2 theta2 + c3 theta3 with the theta tails, dressed by
// Phi_{c0}. Rows (-3,4), (-4,5), (-5,6) are the unknowns P4, P5, P6 and stand
// for the whole coefficient there.
inline DeformAnsatz obstruction_ansatz(const PolyScalar &h, int floor)
{
    DeformAnsatz base;
    base.floor = floor;
    base.add({1, 0}, 1);
    base.add({0, 1}, var("c1"));
    for (auto [which, name] : {std::pair{2, "c2"}, std::pair{3, "c3"}}) {
        for (const auto &[key, c] : theta_table(which, floor, h)) {
            base.add(key, var(name) * circle_integral(c));
        }
    }
    const std::array<std::pair<RowKey, const char *>, 3> unknown_rows{
        {{{-3, 4}, "P4"}, {{-4, 5}, "P5"}, {{-5, 6}, "P6"}}};
    for (const auto &[key, name] : unknown_rows) {
        base.rows.erase(key);
        base.add(key, var(name));
        base.unknowns.push_back(name);
    }
    return dress_phi(base, var("c0"), floor);
}

// 6c1^3c3 - 3c1^2c2^2 - ... as printed, including the 2*h^2*c1*c3 term.
inline PolyScalar quartic_eval(const PolyScalar &c1, const PolyScalar &c2, const PolyScalar &c3, const PolyScalar &h)
{
    PolyScalar q = PolyScalar(6) * c1.pow(3) * c3 - PolyScalar(3) * c1.pow(2) * c2.pow(2) -
                   PolyScalar(18) * c1 * c2 * c3 + PolyScalar(8) * c2.pow(3) + PolyScalar(9) * c3.pow(2);
    q += h * (PolyScalar(3) * c1.pow(3) * c2 - PolyScalar(6) * c1 * c2.pow(2) - PolyScalar(9) * c1.pow(2) * c3 +
              PolyScalar(18) * c2 * c3);
    q += h.pow(2) * (PolyScalar(2) * c1 * c3 - PolyScalar(5) * c1.pow(2) * c2 + PolyScalar(8) * c2.pow(2));
    q += h.pow(3) * (PolyScalar(2) * c1 * c2);
    return q;
}

// The quartic as re-derived by solve_corrections; differs from the printed
// one in the h^2 c1 c3 coefficient (3 instead of 2).
inline PolyScalar integrability_quartic(const PolyScalar &c1, const PolyScalar &c2, const PolyScalar &c3,
                                        const PolyScalar &h)
{
    return quartic_eval(c1, c2, c3, h) + h.pow(2) * c1 * c3;
}

struct CurvePoint {
    PolyScalar x;
    PolyScalar y;
    PolyScalar residual;
};

inline CurvePoint curve_transform(const PolyScalar &c1, const PolyScalar &c2, const PolyScalar &c3,
                                  const PolyScalar &h)
{
    PolyScalar x = c1.pow(2) - PolyScalar(2) * c2 - h * c1;
    PolyScalar y = c1.pow(3) - PolyScalar(3) * (c1 * c2 - c3) -
                   PolyScalar(make_rational(3, 2)) * h * (c1.pow(2) - PolyScalar(2) * c2) +
                   PolyScalar(make_rational(1, 2)) * h.pow(2) * c1;
    PolyScalar residual = y.pow(2) - x.pow(3) - PolyScalar(make_rational(1, 4)) * h.pow(2) * x.pow(2);
    return {x, y, residual};
}

struct CTriple {
    PolyScalar c1;
    PolyScalar c2;
    PolyScalar c3;

    friend bool operator==(const CTriple &, const CTriple &) = default;
};

inline CTriple parameterize(const PolyScalar &l, const PolyScalar &mu, const PolyScalar &h)
{
    PolyScalar half(make_rational(1, 2));
    PolyScalar sixth(make_rational(1, 6));
    return {l + mu, l * mu + half * l * (l - h),
            half * l * mu * (l - h) + sixth * l * (l - h) * (l - PolyScalar(2) * h)};
}

inline std::pair<PolyScalar, PolyScalar> involution(const PolyScalar &l, const PolyScalar &mu, const PolyScalar &h)
{
    return {l + PolyScalar(2) * mu - h, h - mu};
}

// Other root in c3 of the integrability quartic at fixed c1, c2, h: the two
// roots sum to -B/A for A c3^2 + B c3 + C.
inline PolyScalar second_c3_root(const PolyScalar &c1, const PolyScalar &c2, const PolyScalar &c3,
                                 const PolyScalar &h)
{
    PolyScalar q = integrability_quartic(c1, c2, var("c3"), h);
    GaussianRational a = q.coefficient("c3", 2).constant_value();
    PolyScalar b = q.coefficient("c3", 1);
    return -(b.scale_by(a.inverse())) - c3;
}

// (l, mu) with parameterize(l, mu, h) == (c1, c2, c3), for a point on the
// integrability surface with constant entries. Uses X = mu^2 - h mu and
// Y = (mu - h/2) X; nullopt when no candidate reproduces the point.
inline std::optional<std::pair<PolyScalar, PolyScalar>> invert_parameterization(const CTriple &c, const PolyScalar &h)
{
    CurvePoint p = curve_transform(c.c1, c.c2, c.c3, h);
    std::vector<PolyScalar> candidates;
    if (!p.x.is_zero()) {
        if (!p.x.is_constant()) {
            throw usage_error("invert_parameterization needs constant parameters");
        }
        candidates.push_back(p.y.scale_by(p.x.constant_value().inverse()) +
                             PolyScalar(make_rational(1, 2)) * h);
    } else {
        candidates = {PolyScalar(0), h};
    }
    for (const auto &mu : candidates) {
        PolyScalar l = c.c1 - mu;
        if (parameterize(l, mu, h) == c) {
            return std::pair{l, mu};
        }
    }
    return std::nullopt;
}

struct ObstructionReport {
    PolyScalar h;
    int floor = kDefaultFloor;
    PolyScalar P4;
    PolyScalar P5;
    PolyScalar P6;
    // Generator of the xi^-5 condition; every residual there is a constant
    // multiple of it.
    PolyScalar quartic;
    // First xi^-5 residual divided by `quartic`.
    GaussianRational residual_scale;
    bool residuals_proportional = false;
    // quartic / printed polynomial when the two are proportional.
    std::optional<GaussianRational> scale;
    PolyScalar printed;
    std::vector<PolyScalar> consistency;
    std::vector<PolyScalar> quartic_residuals;
};

namespace detail
{

// Equations at one xi-degree: coefficients of every mode and every a^p b^q.
inline std::vector<PolyScalar> degree_equations(const Symbol &d, int degree)
{
    std::vector<PolyScalar> out;
    CircleFunction coef = d.coefficient(degree);
    for (const auto &[v, c] : coef.terms()) {
        for (const auto &[k, e] : c.collect({"a", "b"})) {
            if (!e.is_zero()) {
                out.push_back(e);
            }
        }
    }
    return out;
}

// Solves the linear equations for `unknown` from the first equation with a
// constant pivot; returns the value and the residuals of the rest.
inline std::pair<PolyScalar, std::vector<PolyScalar>> solve_linear(const std::vector<PolyScalar> &eqs,
                                                                   const std::string &unknown)
{
    std::optional<PolyScalar> value;
    for (const auto &e : eqs) {
        if (e.degree_in(unknown) > 1) {
            throw structural_error("equation is not linear in " + unknown);
        }
        PolyScalar pivot = e.coefficient(unknown, 1);
        if (!pivot.is_zero() && pivot.is_constant()) {
            PolyScalar rest = e.coefficient(unknown, 0);
            value = -rest.scale_by(pivot.constant_value().inverse());
            break;
        }
    }
    if (!value) {
        throw structural_error("no constant pivot for " + unknown);
    }
    std::vector<PolyScalar> residuals;
    for (const auto &e : eqs) {
        PolyScalar r = e.substitute({{unknown, *value}});
        if (!r.is_zero()) {
            residuals.push_back(r);
        }
    }
    return {*value, residuals};
}

// c with p == c * q, if any.
inline std::optional<GaussianRational> constant_ratio(const PolyScalar &p, const PolyScalar &q)
{
    if (p.is_zero() || q.is_zero()) {
        return std::nullopt;
    }
    GaussianRational c = p.leading_term().second / q.leading_term().second;
    PolyScalar scaled = q;
    scaled.scale_by(c);
    if (p == scaled) {
        return c;
    }
    return std::nullopt;
}

} // namespace detail

// Builds the obstruction ansatz, solves the xi^-3, xi^-4, xi^-5 blocks for P4,
// P5, P6 and returns the condition left at xi^-5.
inline ObstructionReport solve_corrections(const PolyScalar &h, int floor = kDefaultFloor)
{
    if (floor > -8) {
        throw accuracy_error("solve_corrections needs floor <= -8, got " + std::to_string(floor));
    }
    DeformAnsatz a = obstruction_ansatz(h, floor);
    Symbol d = defect(a, h, floor);

    ObstructionReport rep;
    rep.h = h;
    rep.floor = floor;
    std::map<std::string, PolyScalar> solved;
    for (int deg = 0; deg >= -2; --deg) {
        for (const auto &e : detail::degree_equations(d, deg)) {
            rep.consistency.push_back(e);
        }
    }
    const std::array<std::pair<int, const char *>, 3> steps{{{-3, "P4"}, {-4, "P5"}, {-5, "P6"}}};
    for (const auto &[deg, name] : steps) {
        std::vector<PolyScalar> eqs;
        for (const auto &e : detail::degree_equations(d, deg)) {
            PolyScalar r = e.substitute(solved);
            if (!r.is_zero()) {
                eqs.push_back(r);
            }
        }
        auto [value, residuals] = detail::solve_linear(eqs, name);
        solved.emplace(name, value);
        if (deg == -5) {
            rep.quartic_residuals = residuals;
        } else {
            rep.consistency.insert(rep.consistency.end(), residuals.begin(), residuals.end());
        }
    }
    if (!rep.consistency.empty()) {
        throw structural_error("obstruction ansatz inconsistent above xi^-5: " + rep.consistency.front().to_string());
    }
    rep.P4 = solved.at("P4");
    rep.P5 = solved.at("P5");
    rep.P6 = solved.at("P6");
    for (const auto *name : {"P4", "P5", "P6"}) {
        if (solved.at(name).depends_on("c0")) {
            throw structural_error(std::string("c0 entered ") + name);
        }
    }

    rep.printed = quartic_eval(var("c1"), var("c2"), var("c3"), h);
    if (rep.quartic_residuals.empty()) {
        rep.quartic = PolyScalar();
        rep.residual_scale = GaussianRational(0);
        rep.residuals_proportional = true;
    } else {
        auto [prim, scale] = rep.quartic_residuals.front().primitive_part();
        rep.quartic = prim;
        rep.residual_scale = scale;
        rep.residuals_proportional = std::all_of(rep.quartic_residuals.begin(), rep.quartic_residuals.end(),
                                                 [&](const PolyScalar &r) {
                                                     return detail::constant_ratio(r, prim).has_value();
                                                 });
    }
    rep.scale = detail::constant_ratio(rep.quartic, rep.printed);
    return rep;
}

// Psi_mu(f xi + nu f + lambda f') as a table down to `floor`.
inline DeformAnsatz universal_deformation(const PolyScalar &l, const PolyScalar &mu, const PolyScalar &nu,
                                          const PolyScalar &h, int floor = kDefaultFloor)
{
    DeformAnsatz inner;
    inner.add({1, 0}, 1);
    inner.add({0, 0}, nu);
    inner.add({0, 1}, l);
    return conjugate_psi(inner, mu, h, floor);
}

// (f d, a) -> f xi + nu f + lambda f' + s a
inline std::function<Symbol(const SemidirectElement &)> semidirect_embed_scaled(const PolyScalar &l,
                                                                               const PolyScalar &s,
                                                                               const PolyScalar &nu)
{
    return [l, s, nu](const SemidirectElement &u) {
        const auto &f = u.field.component;
        Symbol out = Symbol::term(f, 1);
        out.add_term(0, nu * f + l * fn_derive(f, 1) + s * u.function);
        return out;
    };
}

// The function slot is scaled by mu + 1.
inline std::function<Symbol(const SemidirectElement &)> semidirect_embed(const PolyScalar &l, const PolyScalar &mu,
                                                                        const PolyScalar &nu)
{
    return semidirect_embed_scaled(l, mu + PolyScalar(1), nu);
}

// Homomorphism defect on the pairs (L_a, E_b), (E_a, E_b) and (L_a, L_b).
inline std::array<Symbol, 3> semidirect_defect(const std::function<Symbol(const SemidirectElement &)> &embed,
                                               const PolyScalar &h, int floor = kDefaultFloor)
{
    SemidirectElement la{VectorField::mode("a"), {}};
    SemidirectElement lb{VectorField::mode("b"), {}};
    SemidirectElement ea{{}, CircleFunction::mode("a")};
    SemidirectElement eb{{}, CircleFunction::mode("b")};
    auto one = [&](const SemidirectElement &u, const SemidirectElement &v) {
        return bracket_contracted(embed(u), embed(v), h, floor) - embed(semidirect_bracket(u, v)).truncated(floor);
    };
    return {one(la, eb), one(ea, eb), one(la, lb)};
}

// X -> exp(ad F) A(X), truncated after `depth` powers.
inline Cochain1 conjugate_equivalence(const Cochain1 &a, const Symbol &f, unsigned depth,
                                      const PolyScalar &h = PolyScalar(1), int floor = kDefaultFloor)
{
    auto ord = f.order_bound();
    if (ord && *ord > 0) {
        throw usage_error("conjugating symbol must have order <= 0");
    }
    return Cochain1::from_function(
        [a, f, depth, h, floor](const VectorField &x) { return exp_ad(f, a(x), depth, h, floor).truncated(floor); });
}

} // namespace psdo

#endif
