#ifndef PSDO_CLI_HPP
#define PSDO_CLI_HPP

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <psdo/charges.hpp>
#include <psdo/deformations.hpp>
#include <psdo/errors.hpp>
#include <psdo/report.hpp>
#include <psdo/scalars.hpp>
#include <psdo/suites.hpp>

namespace psdo
{

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct CommandOutput {
    std::string command;
    nlohmann::json params;
    std::vector<CheckResult> results;
    nlohmann::json data;

    int status() const { return all_passed(results) ? kExitPass : kExitFail; }
    nlohmann::json json() const { return make_report(command, params, results, data); }
    std::string text() const { return render_text(command, results, data); }
};

// "symbolic" -> var(default_symbol); a registry name -> that indeterminate;
// otherwise a rational literal such as "-3/2".
inline PolyScalar parse_value(const std::string &token, const std::string &default_symbol)
{
    if (token == "symbolic") {
        return var(default_symbol);
    }
    if (Registry::standard()->find(token)) {
        return var(token);
    }
    Rational q;
    if (token.empty() || q.set_str(token, 10) != 0 || q.get_den() == 0) {
        throw usage_error("cannot parse value '" + token + "' (expected a rational, 'symbolic' or an indeterminate)");
    }
    q.canonicalize();
    return PolyScalar(q);
}

namespace detail
{

inline std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline long parse_long(const std::string &v, const std::string &where)
{
    try {
        std::size_t used = 0;
        long x = std::stol(v, &used);
        if (used == v.size()) {
            return x;
        }
    } catch (const std::exception &) {
    }
    throw usage_error(where + ": expected an integer, got '" + v + "'");
}

} // namespace detail

// key = value lines; '#' starts a comment. Keys: floor, samples, seed,
// suites (comma or space separated).
inline VerifyConfig parse_config(std::istream &in, const std::string &source)
{
    VerifyConfig cfg;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        std::string where = source + ":" + std::to_string(lineno);
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw usage_error(where + ": expected key = value");
        }
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key == "floor") {
            cfg.floor = int(detail::parse_long(value, where));
        } else if (key == "samples") {
            long n = detail::parse_long(value, where);
            if (n <= 0) {
                throw usage_error(where + ": samples must be positive");
            }
            cfg.samples = unsigned(n);
        } else if (key == "seed") {
            cfg.seed = std::uint32_t(detail::parse_long(value, where));
        } else if (key == "suites" || key == "suite") {
            for (char &c : value) {
                if (c == ',') {
                    c = ' ';
                }
            }
            std::istringstream names(value);
            for (std::string n; names >> n;) {
                cfg.suites.push_back(n);
            }
        } else {
            throw usage_error(where + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

inline CommandOutput cmd_verify(const VerifyConfig &cfg)
{
    CommandOutput out;
    out.command = "verify";
    out.params = {{"floor", cfg.floor}, {"samples", cfg.samples}, {"seed", cfg.seed}, {"suites", cfg.suites}};
    out.results = run_verify(cfg);
    return out;
}

inline CommandOutput cmd_obstructions(const PolyScalar &h, int floor = kDefaultFloor)
{
    CommandOutput out;
    out.command = "obstructions";
    out.params = {{"h", h.to_string()}, {"floor", floor}};
    ObstructionReport rep = solve_corrections(h, floor);
    out.data = to_json(rep);
    PolyScalar c1 = var("c1"), c2 = var("c2"), c3 = var("c3");
    out.data["integrability_quartic"] = to_json(integrability_quartic(c1, c2, c3, h));
    out.results.push_back({"consistent_above_xi^-5", "pass", "xi^0..xi^-4 blocks solved without residue"});
    out.results.push_back({"c0_absent", "pass", "P4, P5, P6 free of c0"});
    out.results.push_back({"residuals_proportional", rep.residuals_proportional ? "pass" : "fail",
                           std::to_string(rep.quartic_residuals.size()) + " residuals at xi^-5"});
    auto derived = detail::constant_ratio(rep.quartic, integrability_quartic(c1, c2, c3, h));
    out.results.push_back({"quartic_matches_integrability_quartic", derived ? "pass" : "fail",
                           derived ? "scale " + derived->to_string() : "not proportional"});
    out.results.push_back({"quartic_matches_printed", rep.scale ? "pass" : "fail",
                           rep.scale ? "scale " + rep.scale->to_string()
                                     : "differs from the printed polynomial by " + (rep.quartic - rep.printed).to_string()});
    return out;
}

inline CommandOutput cmd_charge(const PolyScalar &l, const PolyScalar &mu, const PolyScalar &nu, const PolyScalar &h,
                                bool semidirect, int floor = kDefaultFloor)
{
    CommandOutput out;
    out.command = "charge";
    out.params = {{"lambda", l.to_string()}, {"mu", mu.to_string()}, {"nu", nu.to_string()},
                  {"h", h.to_string()},      {"semidirect", semidirect}, {"floor", floor}};
    bool h_is_one = h.is_constant() && h.constant_value().is_one();
    PolyScalar bernoulli = PolyScalar(-12) * l.pow(2) + PolyScalar(12) * l - PolyScalar(2);
    ChargeReport rep;
    if (semidirect) {
        rep = restrict_charge_semidirect(l, mu, nu, h, floor);
    } else {
        rep = restrict_charge_vect(universal_deformation(l, mu, nu, h, floor), h, floor);
        rep.notes.push_back("lambda is the inner f' parameter, mu the conjugation parameter");
    }
    out.data = to_json(rep);
    out.data["printed_h_polynomial"] = to_json(printed_charge_polynomial(l, h));
    out.results.push_back({"extraction", "pass",
                           semidirect ? "m^3, m^2 and m monomials only" : "m^3 and m monomials only"});
    if (!semidirect) {
        bool indep = !rep.virasoro.depends_on("mu") && !rep.virasoro.depends_on("nu");
        out.results.push_back({"independent_of_mu_nu", indep ? "pass" : "fail", rep.virasoro.to_string()});
    }
    if (h_is_one) {
        PolyScalar d = rep.virasoro - bernoulli;
        out.results.push_back({"virasoro_bernoulli", d.is_zero() ? "pass" : "fail", rep.virasoro.to_string()});
        if (semidirect) {
            PolyScalar s = mu + PolyScalar(1);
            PolyScalar tilde = s * (l - PolyScalar(make_rational(1, 2)));
            PolyScalar tt = s.pow(2) * PolyScalar(make_rational(1, 2));
            out.results.push_back({"tilde", rep.tilde == tilde ? "pass" : "fail", rep.tilde.to_string()});
            out.results.push_back({"tildetilde", rep.tildetilde == tt ? "pass" : "fail", rep.tildetilde.to_string()});
        }
    }
    return out;
}

inline CommandOutput cmd_deform(const PolyScalar &l, const PolyScalar &mu, const PolyScalar &nu, const PolyScalar &h,
                                int floor = kDefaultFloor)
{
    CommandOutput out;
    out.command = "deform";
    out.params = {{"lambda", l.to_string()}, {"mu", mu.to_string()}, {"nu", nu.to_string()},
                  {"h", h.to_string()},      {"floor", floor}};
    DeformAnsatz a = universal_deformation(l, mu, nu, h, floor);
    Symbol d = defect(a, h, floor);
    out.data = to_json(a);
    out.data["defect_zero_to_floor"] = d.is_zero();
    out.results.push_back({"defect_zero", d.is_zero() ? "pass" : "fail", d.is_zero() ? "" : d.to_string()});
    return out;
}

} // namespace psdo

#endif
