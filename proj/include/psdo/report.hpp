#ifndef PSDO_REPORT_HPP
#define PSDO_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include <psdo/charges.hpp>
#include <psdo/deformations.hpp>
#include <psdo/scalars.hpp>

namespace psdo
{

struct CheckResult {
    std::string name;
    std::string status; // "pass", "fail" or "error"
    std::string detail;

    bool passed() const { return status == "pass"; }
};

inline bool all_passed(const std::vector<CheckResult> &results)
{
    for (const auto &r : results) {
        if (!r.passed()) {
            return false;
        }
    }
    return true;
}

// {schema, command, params, results, data}; nlohmann::json keeps object keys
// sorted, so dump() is byte-stable.
inline nlohmann::json make_report(const std::string &command, const nlohmann::json &params,
                                  const std::vector<CheckResult> &results, const nlohmann::json &data = nullptr)
{
    nlohmann::json j;
    j["schema"] = 1;
    j["command"] = command;
    j["params"] = params.is_null() ? nlohmann::json::object() : params;
    j["results"] = nlohmann::json::array();
    for (const auto &r : results) {
        j["results"].push_back({{"name", r.name}, {"status", r.status}, {"detail", r.detail}});
    }
    if (!data.is_null()) {
        j["data"] = data;
    }
    return j;
}

inline std::string render_text(const std::string &command, const std::vector<CheckResult> &results,
                               const nlohmann::json &data = nullptr)
{
    std::string out = command + "\n";
    for (const auto &r : results) {
        std::string tag = r.status == "pass" ? "PASS " : r.status == "fail" ? "FAIL " : "ERROR";
        out += tag + " " + r.name;
        if (!r.detail.empty()) {
            out += "  " + r.detail;
        }
        out += "\n";
    }
    if (!data.is_null()) {
        out += data.dump(2) + "\n";
    }
    return out;
}

inline nlohmann::json to_json(const PolyScalar &p)
{
    return p.to_string();
}

inline nlohmann::json to_json(const GaussianRational &z)
{
    return z.to_string();
}

inline nlohmann::json to_json(const ObstructionReport &r)
{
    nlohmann::json j;
    j["h"] = to_json(r.h);
    j["floor"] = r.floor;
    j["P4"] = to_json(r.P4);
    j["P5"] = to_json(r.P5);
    j["P6"] = to_json(r.P6);
    j["quartic"] = to_json(r.quartic);
    j["residual_scale"] = to_json(r.residual_scale);
    j["residuals_proportional"] = r.residuals_proportional;
    j["printed_quartic"] = to_json(r.printed);
    j["scale_to_printed"] = r.scale ? to_json(*r.scale) : nlohmann::json(nullptr);
    j["quartic_minus_printed"] = to_json(r.quartic - r.printed);
    j["consistency"] = nlohmann::json::array();
    for (const auto &c : r.consistency) {
        j["consistency"].push_back(to_json(c));
    }
    j["quartic_residuals"] = nlohmann::json::array();
    for (const auto &c : r.quartic_residuals) {
        j["quartic_residuals"].push_back(to_json(c));
    }
    return j;
}

inline nlohmann::json to_json(const ChargeReport &r)
{
    nlohmann::json j;
    j["virasoro"] = to_json(r.virasoro);
    j["tilde"] = to_json(r.tilde);
    j["tildetilde"] = to_json(r.tildetilde);
    j["scaling"] = to_json(r.scaling);
    j["discarded"] = nlohmann::json::array();
    for (const auto &d : r.discarded) {
        j["discarded"].push_back({{"pairing", d.pairing}, {"value", to_json(d.value)}});
    }
    j["notes"] = r.notes;
    return j;
}

// Rows as {"d,j": coefficient} plus the u_n view: u_n is the f^{(n)} xi^{1-n} row.
inline nlohmann::json to_json(const DeformAnsatz &a)
{
    nlohmann::json j;
    j["floor"] = a.floor == kExact ? nlohmann::json("exact") : nlohmann::json(a.floor);
    j["rows"] = nlohmann::json::object();
    j["u"] = nlohmann::json::object();
    for (const auto &[k, c] : a.rows) {
        j["rows"][std::to_string(k.first) + "," + std::to_string(k.second)] = to_json(c);
        if (k.first == 1 - int(k.second)) {
            j["u"]["u_" + std::to_string(k.second)] = to_json(c);
        }
    }
    j["unknowns"] = a.unknowns;
    return j;
}

} // namespace psdo

#endif
