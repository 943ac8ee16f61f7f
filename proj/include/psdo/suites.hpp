#ifndef PSDO_SUITES_HPP
#define PSDO_SUITES_HPP

#include <cstdint>
#include <exception>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <psdo/charges.hpp>
#include <psdo/circle.hpp>
#include <psdo/cohomology.hpp>
#include <psdo/deformations.hpp>
#include <psdo/errors.hpp>
#include <psdo/maps.hpp>
#include <psdo/report.hpp>
#include <psdo/scalars.hpp>
#include <psdo/symbol.hpp>

namespace psdo
{

struct VerifyConfig {
    int floor = kDefaultFloor;
    unsigned samples = 50;
    std::uint32_t seed = 20240611;
    std::vector<std::string> suites; // empty: all
};

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Random truncated symbols and functions with formal modes.
class Sampler
{
public:
    explicit Sampler(std::uint32_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    PolyScalar coefficient()
    {
        long num = 0;
        while (num == 0) {
            num = integer(-4, 4);
        }
        PolyScalar c(make_rational(num, integer(1, 3)));
        if (integer(0, 3) == 0) {
            c = c * PolyScalar::i();
        }
        return c;
    }

    // One or two modes sign*symbol + k with |k| <= 1.
    CircleFunction function(const std::string &symbol, long sign)
    {
        CircleFunction f;
        long n = integer(1, 2);
        for (long i = 0; i < n; ++i) {
            ModeVector v = ModeVector::symbol(symbol, sign) + ModeVector::integer(integer(-1, 1));
            f.add_term(v, coefficient());
        }
        return f;
    }

    // Terms at degrees in [lo, hi], truncated at `floor`.
    Symbol symbol(const std::string &mode, long sign, int floor, int lo = -2, int hi = 2)
    {
        Symbol s(floor);
        long n = integer(1, 3);
        while (s.is_zero()) {
            for (long i = 0; i < n; ++i) {
                s.add_term(int(integer(lo, hi)), function(mode, sign));
            }
        }
        return s;
    }

    PolyScalar polynomial()
    {
        static const std::vector<std::string> names{"h", "c1", "c2", "l", "mu"};
        PolyScalar p;
        long n = integer(1, 4);
        for (long i = 0; i < n; ++i) {
            PolyScalar t = coefficient();
            long deg = integer(0, 3);
            for (long j = 0; j < deg; ++j) {
                t *= var(names[std::size_t(integer(0, long(names.size()) - 1))]);
            }
            p += t;
        }
        return p;
    }

private:
    std::mt19937 rng_;
};

namespace detail
{

inline Outcome compare(const Symbol &lhs, const Symbol &rhs, const std::string &what)
{
    Symbol diff = lhs - rhs;
    if (diff.is_zero()) {
        return {true, ""};
    }
    return {false, what + ": difference " + diff.to_string()};
}

inline Outcome compare(const PolyScalar &lhs, const PolyScalar &rhs, const std::string &what)
{
    PolyScalar diff = lhs - rhs;
    if (diff.is_zero()) {
        return {true, ""};
    }
    return {false, what + ": difference " + diff.to_string()};
}

inline void require_floor(const VerifyConfig &cfg, int needed, const std::string &what)
{
    if (cfg.floor > needed) {
        throw accuracy_error(what + " needs floor <= " + std::to_string(needed) + ", configured " +
                             std::to_string(cfg.floor));
    }
}

// Collects named checks, turning exceptions into "error" results.
class SuiteRun
{
public:
    SuiteRun(std::string suite, const VerifyConfig &cfg)
        : suite_(std::move(suite)), selection_(cfg.suites), seed_(cfg.seed)
    {
    }

    bool selected(const std::string &name) const
    {
        if (selection_.empty()) {
            return true;
        }
        for (const auto &s : selection_) {
            if (s == suite_ || s == name || s == suite_ + "." + name) {
                return true;
            }
        }
        return false;
    }

    // Starts the check asynchronously with its own sampler, seeded from the
    // configured seed and the check name.
    void check(const std::string &name, std::function<Outcome(Sampler &)> fn)
    {
        if (!selected(name)) {
            return;
        }
        std::string full = suite_ + "." + name;
        std::uint32_t seed = seed_ ^ fnv1a(full);
        jobs_.push_back(std::async(std::launch::async, [full, seed, fn = std::move(fn)] {
            CheckResult r{full, "pass", ""};
            Sampler sampler(seed);
            try {
                Outcome o = fn(sampler);
                r.status = o.ok ? "pass" : "fail";
                r.detail = o.detail;
            } catch (const accuracy_error &e) {
                r.status = "error";
                r.detail = std::string("accuracy: ") + e.what();
            } catch (const std::exception &e) {
                r.status = "error";
                r.detail = e.what();
            }
            return r;
        }));
    }

    // Runs fn on `samples` draws; stops at the first failure.
    void sampled(const std::string &name, unsigned samples, std::function<Outcome(Sampler &, unsigned)> fn)
    {
        check(name, [samples, fn = std::move(fn)](Sampler &s) -> Outcome {
            for (unsigned i = 0; i < samples; ++i) {
                Outcome o = fn(s, i);
                if (!o.ok) {
                    o.detail = "sample " + std::to_string(i) + ": " + o.detail;
                    return o;
                }
            }
            return {true, std::to_string(samples) + " samples"};
        });
    }

    // Waits for every started check; results in start order.
    std::vector<CheckResult> take()
    {
        std::vector<CheckResult> out;
        for (auto &j : jobs_) {
            out.push_back(j.get());
        }
        jobs_.clear();
        return out;
    }

private:
    static std::uint32_t fnv1a(const std::string &s)
    {
        std::uint32_t h = 2166136261u;
        for (unsigned char c : s) {
            h = (h ^ c) * 16777619u;
        }
        return h;
    }

    std::string suite_;
    std::vector<std::string> selection_;
    std::uint32_t seed_;
    std::vector<std::future<CheckResult>> jobs_;
};

inline PolyScalar h_coefficient(const PolyScalar &p, unsigned k)
{
    return p.coefficient("h", k);
}

// sum_k (-nu)^k/k! ad_x^k F
inline Symbol exp_ad_x(const Symbol &f, const PolyScalar &nu, int floor)
{
    Symbol result = f;
    Symbol power = f;
    for (unsigned k = 1;; ++k) {
        power = ad_x(power).truncated(floor);
        power *= -nu * PolyScalar(make_rational(1, long(k)));
        if (power.is_zero()) {
            result.raise_floor(power.floor());
            return result;
        }
        result += power;
    }
}

} // namespace detail

// ---- scalars -------------------------------------------------------------

inline std::vector<CheckResult> suite_scalars(const VerifyConfig &cfg)
{
    detail::SuiteRun run("scalars", cfg);
    run.sampled("ring_axioms", cfg.samples, [&](Sampler &s, unsigned) {
        PolyScalar p = s.polynomial(), q = s.polynomial(), r = s.polynomial();
        if ((p * q) * r != p * (q * r) || (p + q) + r != p + (q + r)) {
            return Outcome{false, "associativity"};
        }
        if (p * q != q * p || p + q != q + p) {
            return Outcome{false, "commutativity"};
        }
        return detail::compare(p * (q + r), p * q + p * r, "distributivity");
    });
    run.sampled("substitute_composition", cfg.samples, [&](Sampler &s, unsigned) {
        PolyScalar p = s.polynomial();
        std::map<std::string, PolyScalar> sigma{{"h", s.polynomial().substitute({{"h", var("c3")}})}};
        std::map<std::string, PolyScalar> tau{{"c3", s.polynomial()}, {"mu", s.polynomial()}};
        std::map<std::string, PolyScalar> composed = tau;
        for (const auto &[k, v] : sigma) {
            composed[k] = v.substitute(tau);
        }
        return detail::compare(p.substitute(sigma).substitute(tau), p.substitute(composed), "composition");
    });
    run.check("hbinom_h1", [&](Sampler &) {
        PolyScalar x = var("mu");
        for (unsigned k = 0; k <= 6; ++k) {
            PolyScalar expected(1);
            for (unsigned j = 0; j < k; ++j) {
                expected *= (x - PolyScalar(long(j))) * PolyScalar(make_rational(1, long(j + 1)));
            }
            Outcome o = detail::compare(hbinom(x, k, PolyScalar(1)), expected, "k=" + std::to_string(k));
            if (!o.ok) {
                return o;
            }
        }
        return Outcome{true, "k <= 6"};
    });
    return run.take();
}

// ---- circle --------------------------------------------------------------

inline std::vector<CheckResult> suite_circle(const VerifyConfig &cfg)
{
    detail::SuiteRun run("circle", cfg);
    VectorField la = VectorField::mode("a");
    VectorField lb = VectorField::mode("b");
    VectorField lab{CircleFunction::mode(ModeVector::symbol("a") + ModeVector::symbol("b"))};
    run.check("bracket_antisymmetry", [&](Sampler &) {
        CircleFunction d = vect_bracket(la, lb).component + vect_bracket(lb, la).component;
        return d.is_zero() ? Outcome{true, ""} : Outcome{false, d.to_string()};
    });
    run.check("bracket_jacobi", [&](Sampler &) {
        VectorField j = vect_bracket(la, vect_bracket(lb, lab)) + vect_bracket(lb, vect_bracket(lab, la)) +
                        vect_bracket(lab, vect_bracket(la, lb));
        return j.component.is_zero() ? Outcome{true, ""} : Outcome{false, j.component.to_string()};
    });
    run.sampled("lie_action", cfg.samples, [&](Sampler &s, unsigned) {
        VectorField x{s.function("a", 1)};
        VectorField y{s.function("b", 1)};
        TensorDensity a{s.integer(-3, 3), s.function("m", 1)};
        TensorDensity lhs = lie_derive(vect_bracket(x, y), a);
        CircleFunction rhs = lie_derive(x, lie_derive(y, a)).component - lie_derive(y, lie_derive(x, a)).component;
        CircleFunction d = lhs.component - rhs;
        return d.is_zero() ? Outcome{true, ""} : Outcome{false, d.to_string()};
    });
    run.sampled("integration_by_parts", cfg.samples, [&](Sampler &s, unsigned) {
        CircleFunction f = s.function("m", 1);
        CircleFunction g = s.function("m", -1);
        return detail::compare(circle_integral(fn_derive(f, 1) * g), -circle_integral(f * fn_derive(g, 1)),
                               "int f'g + int f g'");
    });
    return run.take();
}

// ---- psdo ----------------------------------------------------------------

inline std::vector<CheckResult> suite_psdo(const VerifyConfig &cfg)
{
    detail::SuiteRun run("psdo", cfg);
    int fl = cfg.floor;
    PolyScalar h = var("h");
    run.sampled("associativity", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl), g = s.symbol("b", 1, fl), k = s.symbol("a", -1, fl);
        return detail::compare(compose(compose(f, g, fl), k, fl), compose(f, compose(g, k, fl), fl), "(FG)H - F(GH)");
    });
    run.sampled("jacobi", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl), g = s.symbol("b", 1, fl), k = s.symbol("a", -1, fl);
        Symbol j = bracket_h(f, bracket_h(g, k, h, fl), h, fl) + bracket_h(g, bracket_h(k, f, h, fl), h, fl) +
                   bracket_h(k, bracket_h(f, g, h, fl), h, fl);
        return detail::compare(j, Symbol(j.floor()), "jacobiator");
    });
    run.sampled("trace", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("m", 1, fl), g = s.symbol("m", -1, fl);
        return detail::compare(residue_trace(bracket(f, g, fl)).second, PolyScalar(), "Tr[F,G]");
    });
    run.sampled("contraction", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl), g = s.symbol("b", 1, fl);
        Symbol b = bracket_h(f, g, h, fl);
        Symbol b0 = b.map_coefficients([](const PolyScalar &p) { return detail::h_coefficient(p, 0); });
        if (!b0.is_zero()) {
            return Outcome{false, "h^0 part " + b0.to_string()};
        }
        Symbol b1 = b.map_coefficients([](const PolyScalar &p) { return detail::h_coefficient(p, 1); });
        return detail::compare(b1, poisson(f, g), "h^1 part - Poisson");
    });
    run.sampled("filtration", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, kExact), g = s.symbol("b", 1, kExact);
        int of = *f.order(), og = *g.order();
        auto c = compose(f, g, fl).order();
        auto p = poisson(f, g).order();
        if (c && *c > of + og) {
            return Outcome{false, "ord(FG) = " + std::to_string(*c)};
        }
        if (p && *p > of + og - 1) {
            return Outcome{false, "ord{F,G} = " + std::to_string(*p)};
        }
        return Outcome{true, ""};
    });
    run.sampled("graded_action", cfg.samples, [&](Sampler &s, unsigned) {
        VectorField x{s.function("a", 1)};
        Symbol f = s.symbol("b", 1, kExact);
        auto [n, principal] = order_principal(f);
        Symbol b = bracket(embed_vect(x), f, fl);
        CircleFunction lead = b.coefficient(n);
        if (lead.is_zero()) {
            return Outcome{true, ""};
        }
        CircleFunction d = lead - lie_derive(x, principal).component;
        return d.is_zero() ? Outcome{true, ""} : Outcome{false, d.to_string()};
    });
    return run.take();
}

// ---- maps ----------------------------------------------------------------

inline std::vector<CheckResult> suite_maps(const VerifyConfig &cfg)
{
    detail::SuiteRun run("maps", cfg);
    int fl = cfg.floor;
    PolyScalar h = var("h"), nu = var("nu"), mu = var("mu");
    run.sampled("derivation_ad_x", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl), g = s.symbol("b", 1, fl);
        return detail::compare(ad_x(compose_h(f, g, h, fl)),
                               compose_h(ad_x(f), g, h, fl) + compose_h(f, ad_x(g), h, fl), "Leibniz");
    });
    run.sampled("derivation_ad_logxi", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl), g = s.symbol("b", 1, fl);
        return detail::compare(ad_logxi(compose_h(f, g, h, fl), h, fl),
                               compose_h(ad_logxi(f, h, fl), g, h, fl) + compose_h(f, ad_logxi(g, h, fl), h, fl),
                               "Leibniz");
    });
    run.sampled("automorphism_phi", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl), g = s.symbol("b", 1, fl);
        return detail::compare(aut_phi_nu(compose_h(f, g, h, fl), nu, fl),
                               compose_h(aut_phi_nu(f, nu, fl), aut_phi_nu(g, nu, fl), h, fl), "Phi(FG)");
    });
    run.sampled("automorphism_psi", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl), g = s.symbol("b", 1, fl);
        return detail::compare(aut_psi_mu(compose_h(f, g, h, fl), mu, h, fl),
                               compose_h(aut_psi_mu(f, mu, h, fl), aut_psi_mu(g, mu, h, fl), h, fl), "Psi(FG)");
    });
    run.sampled("group_laws", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl);
        PolyScalar nu2 = var("t"), mu2 = var("s");
        Outcome o = detail::compare(aut_phi_nu(aut_phi_nu(f, nu, fl), nu2, fl), aut_phi_nu(f, nu + nu2, fl),
                                    "Phi_nu Phi_nu'");
        if (!o.ok) {
            return o;
        }
        return detail::compare(aut_psi_mu(aut_psi_mu(f, mu, h, fl), mu2, h, fl), aut_psi_mu(f, mu + mu2, h, fl),
                               "Psi_mu Psi_mu'");
    });
    run.check("restriction", [&](Sampler &) {
        detail::require_floor(cfg, -8, "restriction identity");
        VectorField x = VectorField::mode("a");
        Symbol rhs = theta(1, x, fl) - theta(2, x, fl) * PolyScalar(make_rational(1, 2)) +
                     theta(3, x, fl) * PolyScalar(make_rational(1, 3));
        return detail::compare(ad_logxi(embed_vect(x), PolyScalar(1), fl), rhs, "ad(log xi) - theta combination");
    });
    run.sampled("phi_exp", cfg.samples, [&](Sampler &s, unsigned) {
        Symbol f = s.symbol("a", 1, fl);
        return detail::compare(aut_phi_nu(f, nu, fl), detail::exp_ad_x(f, nu, fl), "Phi_nu - exp(-nu ad x)");
    });
    return run.take();
}

// ---- cohomology ----------------------------------------------------------

inline std::vector<CheckResult> suite_cohomology(const VerifyConfig &cfg)
{
    detail::SuiteRun run("cohomology", cfg);
    int fl = cfg.floor;
    PolyScalar h = var("h");
    for (int i = 0; i < 4; ++i) {
        run.check("theta" + std::to_string(i) + "_cocycle", [&, i](Sampler &) {
            detail::require_floor(cfg, -8, "cocycle check");
            Symbol d1 = check_1cocycle(theta_cochain(i, fl), fl);
            if (!d1.is_zero()) {
                return Outcome{false, "h=1 defect " + d1.to_string()};
            }
            Symbol dh = check_1cocycle(theta_cochain(i, fl, h), fl, h);
            return dh.is_zero() ? Outcome{true, "h=1 and symbolic h"} : Outcome{false, "defect " + dh.to_string()};
        });
    }
    run.check("truncated_theta2_fails", [&](Sampler &) {
        Cochain1 head(Cochain1::Table{{RowKey{-1, 2}, CircleFunction::constant(1)}});
        // theta2 has no xi^-2 term, so the first defect sits at xi^-3.
        detail::require_floor(cfg, -3, "truncated cocycle check");
        Symbol d = check_1cocycle(head, fl);
        if (d.order() != -3) {
            return Outcome{false, "defect " + d.to_string()};
        }
        return Outcome{true, "first defect at xi^-3"};
    });
    run.check("density_cocycles", [&](Sampler &) {
        for (auto which : {DensityCocycle::c0_bar, DensityCocycle::c0, DensityCocycle::c1, DensityCocycle::c2}) {
            TensorDensity d = check_density_cocycle(which);
            if (!d.component.is_zero()) {
                return Outcome{false, d.component.to_string()};
            }
        }
        return Outcome{true, "4 cocycles"};
    });
    run.check("cup_theta01", [&](Sampler &) {
        VectorField x = VectorField::mode("a"), y = VectorField::mode("b");
        for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
            Symbol c = cup(theta_cochain(i, fl), theta_cochain(j, fl), x, y, fl);
            if (!c.is_zero() || !c.is_exact()) {
                return Outcome{false, "cup(theta" + std::to_string(i) + ",theta" + std::to_string(j) +
                                          ") = " + c.to_string()};
            }
        }
        return Outcome{true, "identically zero"};
    });
    run.sampled("cup_coboundary", cfg.samples, [&](Sampler &s, unsigned) {
        // cup(gamma, dF) = gamma' ([X,Y]) - [gamma' X, pi Y] - [pi X, gamma' Y]
        // with gamma'(X) = [F, gamma X].
        int which = int(s.integer(0, 3));
        Cochain1 gamma = theta_cochain(which, fl);
        Symbol f = s.symbol("m", 1, fl, -2, 0);
        Cochain1 psi = Cochain1::from_function([&](const VectorField &x) { return bracket(f, gamma(x), fl); });
        VectorField x = VectorField::mode("a"), y = VectorField::mode("b");
        return detail::compare(cup(gamma, coboundary(f, fl), x, y, fl), check_1cocycle(psi, fl),
                               "cup(theta" + std::to_string(which) + ", dF) + d psi");
    });
    run.check("gelfand_fuchs", [&](Sampler &) {
        VectorField la = VectorField::mode("a"), lb = VectorField::mode("b");
        VectorField lc = VectorField::mode(-ModeVector::symbol("a") - ModeVector::symbol("b"));
        PolyScalar v = check_2cocycle_scalar(gf_cocycle, vect_bracket, la, lb, lc);
        if (!v.is_zero()) {
            return Outcome{false, v.to_string()};
        }
        return detail::compare(gf_cocycle(la, lb), -gf_cocycle(lb, la), "antisymmetry");
    });
    for (auto [name, which] : {std::pair{"c1_cocycle", OuterDerivation::log_xi}, std::pair{"c2_cocycle", OuterDerivation::x}}) {
        run.check(name, [&, which](Sampler &) {
            detail::require_floor(cfg, -4, "central cocycle");
            VectorField la = VectorField::mode("a"), lb = VectorField::mode("b");
            VectorField lc = VectorField::mode(-ModeVector::symbol("a") - ModeVector::symbol("b"));
            auto omega = [&](const VectorField &x, const VectorField &y) {
                return central_cocycle(which, embed_vect(x), embed_vect(y), PolyScalar(1), fl);
            };
            PolyScalar v = check_2cocycle_scalar(omega, vect_bracket, la, lb, lc);
            return v.is_zero() ? Outcome{true, ""} : Outcome{false, v.to_string()};
        });
    }
    run.check("semidirect_cocycles", [&](Sampler &) {
        SemidirectElement u{VectorField::mode("a"), CircleFunction::mode("b")};
        SemidirectElement v{VectorField::mode("b"), CircleFunction::mode(ModeVector::symbol("a", -1))};
        SemidirectElement w{VectorField::mode(-ModeVector::symbol("a") - ModeVector::symbol("b")),
                            CircleFunction::mode(ModeVector::symbol("a") - ModeVector::symbol("b"))};
        for (auto which : {SemidirectCocycle::virasoro, SemidirectCocycle::tilde, SemidirectCocycle::tildetilde}) {
            auto omega = [which](const SemidirectElement &x, const SemidirectElement &y) {
                return semidirect_cocycles(which, x, y);
            };
            PolyScalar r = check_2cocycle_scalar(omega, semidirect_bracket, u, v, w);
            if (!r.is_zero()) {
                return Outcome{false, r.to_string()};
            }
        }
        return Outcome{true, "3 cocycles"};
    });
    return run.take();
}

struct Suite {
    std::string name;
    std::function<std::vector<CheckResult>(const VerifyConfig &)> run;
};

inline const std::vector<Suite> &all_suites()
{
    static const std::vector<Suite> suites{{"scalars", suite_scalars},
                                           {"circle", suite_circle},
                                           {"psdo", suite_psdo},
                                           {"maps", suite_maps},
                                           {"cohomology", suite_cohomology}};
    return suites;
}

// A selection entry names a suite ("psdo"), a check ("trace") or both
// ("psdo.trace"). Suites run concurrently; results keep declaration order.
inline std::vector<CheckResult> run_verify(const VerifyConfig &cfg)
{
    std::vector<std::future<std::vector<CheckResult>>> jobs;
    for (const auto &suite : all_suites()) {
        jobs.push_back(std::async(std::launch::async, [&suite, &cfg] { return suite.run(cfg); }));
    }
    std::vector<CheckResult> out;
    for (auto &job : jobs) {
        for (auto &r : job.get()) {
            out.push_back(std::move(r));
        }
    }
    if (out.empty()) {
        throw usage_error("no check matches the requested suites");
    }
    return out;
}

} // namespace psdo

#endif
