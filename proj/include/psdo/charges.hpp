#ifndef PSDO_CHARGES_HPP
#define PSDO_CHARGES_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <psdo/circle.hpp>
#include <psdo/cohomology.hpp>
#include <psdo/deformations.hpp>
#include <psdo/errors.hpp>
#include <psdo/scalars.hpp>
#include <psdo/symbol.hpp>

namespace psdo
{

struct DiscardedPart {
    std::string pairing;
    PolyScalar value;
};

struct ChargeReport {
    PolyScalar virasoro;
    PolyScalar tilde;
    PolyScalar tildetilde;
    // Function-slot scaling of the semidirect embedding (mu + 1).
    PolyScalar scaling;
    std::vector<DiscardedPart> discarded;
    std::vector<std::string> notes;
};

namespace detail
{

// Splits w(m) into its m^k parts; throws unless only `allowed` powers occur.
inline std::map<unsigned, PolyScalar> split_mode_powers(const PolyScalar &w, const std::vector<unsigned> &allowed,
                                                        const std::string &what)
{
    std::map<unsigned, PolyScalar> out;
    for (const auto &[k, c] : w.collect({"m"})) {
        if (std::find(allowed.begin(), allowed.end(), k[0]) == allowed.end()) {
            throw extraction_error(what + ": unexpected m^" + std::to_string(k[0]) + " term " + c.to_string());
        }
        out.emplace(k[0], c);
    }
    return out;
}

inline PolyScalar part(const std::map<unsigned, PolyScalar> &parts, unsigned k)
{
    auto it = parts.find(k);
    return it == parts.end() ? PolyScalar() : it->second;
}

inline PolyScalar divided(PolyScalar p, const GaussianRational &c)
{
    return p.scale_by(c.inverse());
}

inline const GaussianRational &gf_on_modes()
{
    // gf(L_m, L_-m) = -(i/12) m^3
    static const GaussianRational g(Rational(0), make_rational(-1, 12));
    return g;
}

} // namespace detail

// c_1 pulled back along A and paired on (L_m, L_-m): kappa3 m^3 + kappa1 m.
inline ChargeReport restrict_charge_vect(const Cochain1 &a, const PolyScalar &h, int floor = kDefaultFloor)
{
    if (floor > -4) {
        throw accuracy_error("charge extraction needs floor <= -4, got " + std::to_string(floor));
    }
    VectorField lm = VectorField::mode(ModeVector::symbol("m"));
    VectorField lmm = VectorField::mode(ModeVector::symbol("m", -1));
    PolyScalar w = central_cocycle(OuterDerivation::log_xi, a(lm), a(lmm), h, floor);
    auto parts = detail::split_mode_powers(w, {1, 3}, "virasoro pairing");
    ChargeReport r;
    r.virasoro = detail::divided(detail::part(parts, 3), detail::gf_on_modes());
    PolyScalar m1 = detail::part(parts, 1) * var("m");
    if (!m1.is_zero()) {
        r.discarded.push_back({"(L_m,L_-m)", m1});
    }
    return r;
}

inline ChargeReport restrict_charge_vect(const DeformAnsatz &a, const PolyScalar &h, int floor = kDefaultFloor)
{
    return restrict_charge_vect(a.cochain(), h, floor);
}

// The published h-form of the Virasoro charge.
inline PolyScalar printed_charge_polynomial(const PolyScalar &l, const PolyScalar &h)
{
    return PolyScalar(-12) * l.pow(2) + PolyScalar(12) * h * l + PolyScalar(4) - PolyScalar(6) * h;
}

// Same pairing for an embedding with function slot scaled by s.
inline ChargeReport restrict_charge_semidirect_scaled(const PolyScalar &l, const PolyScalar &s, const PolyScalar &nu,
                                                      const PolyScalar &h, int floor = kDefaultFloor)
{
    if (floor > -4) {
        throw accuracy_error("charge extraction needs floor <= -4, got " + std::to_string(floor));
    }
    auto embed = semidirect_embed_scaled(l, s, nu);
    SemidirectElement lm{VectorField::mode(ModeVector::symbol("m")), {}};
    SemidirectElement lmm{VectorField::mode(ModeVector::symbol("m", -1)), {}};
    SemidirectElement em{{}, CircleFunction::mode(ModeVector::symbol("m"))};
    SemidirectElement emm{{}, CircleFunction::mode(ModeVector::symbol("m", -1))};
    auto pair = [&](const SemidirectElement &u, const SemidirectElement &v) {
        return central_cocycle(OuterDerivation::log_xi, embed(u), embed(v), h, floor);
    };
    ChargeReport r;
    r.scaling = s;

    auto vir = detail::split_mode_powers(pair(lm, lmm), {1, 3}, "virasoro pairing");
    r.virasoro = detail::divided(detail::part(vir, 3), detail::gf_on_modes());
    // c~((L_m,0),(0,E_-m)) = -m^2
    auto mixed = detail::split_mode_powers(pair(lm, emm), {1, 2}, "mixed pairing");
    r.tilde = -detail::part(mixed, 2);
    // c~~((0,E_m),(0,E_-m)) = 2 i m
    auto fun = detail::split_mode_powers(pair(em, emm), {1}, "function pairing");
    r.tildetilde = detail::divided(detail::part(fun, 1), GaussianRational(Rational(0), Rational(2)));

    PolyScalar m = var("m");
    if (auto p = detail::part(vir, 1) * m; !p.is_zero()) {
        r.discarded.push_back({"(L_m,0),(L_-m,0)", p});
    }
    if (auto p = detail::part(mixed, 1) * m; !p.is_zero()) {
        r.discarded.push_back({"(L_m,0),(0,E_-m)", p});
    }
    return r;
}

// Function slot scaled by mu + 1, as in the embedding formula. The published
// charge statement writes this factor as nu + 1.
inline ChargeReport restrict_charge_semidirect(const PolyScalar &l, const PolyScalar &mu, const PolyScalar &nu,
                                               const PolyScalar &h, int floor = kDefaultFloor)
{
    ChargeReport r = restrict_charge_semidirect_scaled(l, mu + PolyScalar(1), nu, h, floor);
    r.notes.push_back("function-slot scaling is mu+1 (the published charge formula names it nu+1)");
    return r;
}

} // namespace psdo

#endif
