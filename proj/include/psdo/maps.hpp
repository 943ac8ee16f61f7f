#ifndef PSDO_MAPS_HPP
#define PSDO_MAPS_HPP

#include <algorithm>
#include <string>

#include <psdo/errors.hpp>
#include <psdo/scalars.hpp>
#include <psdo/symbol.hpp>

namespace psdo
{

// [ad(x), f xi^p] = -p f xi^{p-1}
inline Symbol ad_x(const Symbol &f)
{
    Symbol r(detail::floor_add(f.floor(), -1));
    for (const auto &[p, c] : f.terms()) {
        r.add_term(p - 1, c * PolyScalar(long(-p)));
    }
    return r;
}

namespace detail
{

// Floor of a termwise map that sends xi^p into degrees <= p (unknown tail
// stays below the input floor); infinite expansions stop at `cut`.
inline int termwise_floor(const Symbol &f, int cut, bool finite)
{
    if (f.is_exact() && finite) {
        return kExact;
    }
    return std::max(f.floor(), cut);
}

} // namespace detail

// f xi^p -> sum_{n>=1} h^n (-1)^{n+1}/n f^{(n)} xi^{p-n}
inline Symbol ad_logxi(const Symbol &f, const PolyScalar &h, int cut = kDefaultFloor)
{
    int floor = detail::termwise_floor(f, cut, false);
    Symbol r(floor);
    for (const auto &[p, c] : f.terms()) {
        CircleFunction deriv = c;
        PolyScalar hn(1);
        for (int n = 1; p - n >= floor; ++n) {
            deriv = fn_derive(deriv, 1);
            if (deriv.is_zero()) {
                break;
            }
            hn *= h;
            Rational coef = make_rational(n % 2 == 1 ? 1 : -1, n);
            r.add_term(p - n, deriv * (hn * PolyScalar(coef)));
        }
    }
    return r;
}

// f xi^p -> sum_k (p choose k) nu^k f xi^{p-k}; the xi -> xi + nu shift.
inline Symbol aut_phi_nu(const Symbol &f, const PolyScalar &nu, int cut = kDefaultFloor)
{
    bool finite = !detail::has_negative_degree(f);
    int floor = detail::termwise_floor(f, cut, finite);
    Symbol r(floor);
    for (const auto &[p, c] : f.terms()) {
        PolyScalar nk(1);
        for (unsigned k = 0; floor == kExact || p - int(k) >= floor; ++k) {
            Rational b = binomial(p, k);
            if (sgn(b) == 0) {
                break;
            }
            r.add_term(p - int(k), c * (nk * PolyScalar(b)));
            nk *= nu;
            if (nk.is_zero()) {
                break;
            }
        }
    }
    return r;
}

// f xi^p -> sum_k hbinom(mu, k, h) f^{(k)} xi^{p-k}; conjugation by xi^mu in
// the h-rescaled product.
inline Symbol aut_psi_mu(const Symbol &f, const PolyScalar &mu, const PolyScalar &h, int cut = kDefaultFloor)
{
    if (mu.is_zero()) {
        return f;
    }
    int floor = detail::termwise_floor(f, cut, false);
    Symbol r(floor);
    std::vector<PolyScalar> coefs;
    for (const auto &[p, c] : f.terms()) {
        CircleFunction deriv = c;
        for (unsigned k = 0; p - int(k) >= floor; ++k) {
            if (k > 0) {
                deriv = fn_derive(deriv, 1);
            }
            if (deriv.is_zero()) {
                break;
            }
            while (coefs.size() <= k) {
                coefs.push_back(hbinom(mu, unsigned(coefs.size()), h));
            }
            r.add_term(p - int(k), deriv * coefs[k]);
        }
    }
    return r;
}

// sum_{k<=depth} (1/k!) (ad F)^k G with ad F = [F, .]_h. F must have order
// <= 0 so that every application lowers the degree.
inline Symbol exp_ad(const Symbol &f, const Symbol &g, unsigned depth, const PolyScalar &h = PolyScalar(1),
                     int cut = kDefaultFloor)
{
    auto ord = f.order_bound();
    if (ord && *ord > 0) {
        throw usage_error("exp(ad F) needs ord F <= 0, got " + std::to_string(*ord));
    }
    Symbol result = g;
    Symbol power = g;
    for (unsigned k = 1; k <= depth; ++k) {
        power = bracket_h(f, power, h, cut);
        power *= PolyScalar(GaussianRational(make_rational(1, long(k))));
        if (power.is_zero()) {
            // Later terms vanish on the accurate range too; keep the floor.
            result.raise_floor(power.floor());
            break;
        }
        result += power;
        if (k == depth) {
            // Omitted terms start strictly below the last one kept.
            if (auto top = power.order_bound()) {
                result.raise_floor(*top);
            }
        }
    }
    return result;
}

} // namespace psdo

#endif
