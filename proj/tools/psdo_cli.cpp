// psdo: verification and reproduction driver.
//
//   psdo verify [--config FILE] [--floor N] [--suite NAME]... [--out PATH] [--format json|text]
//   psdo obstructions [--h symbolic|VALUE] [--floor N] [--out PATH]
//   psdo charge [--lambda V] [--mu V] [--nu V] [--h V] [--semidirect] [--out PATH]
//   psdo deform [--lambda V] [--mu V] [--nu V] [--h V] [--floor N] [--out PATH]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <psdo/cli.hpp>

namespace
{

struct OutputOptions {
    std::string out;
    std::string format = "json";
};

void add_output(CLI::App *cmd, OutputOptions &o)
{
    cmd->add_option("--out", o.out, "write the report to PATH instead of stdout");
    cmd->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

int emit(const psdo::CommandOutput &r, const OutputOptions &o)
{
    std::string body = o.format == "text" ? r.text() : r.json().dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) {
            std::cerr << "psdo: cannot write " << o.out << "\n";
            return psdo::kExitUsage;
        }
        f << body;
    }
    return r.status();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Pseudodifferential symbol calculus: verification and reproduction"};
    app.require_subcommand(1);
    // --h is the deformation parameter, so help is long-form only
    app.set_help_flag("--help", "print this help and exit");

    OutputOptions vo, oo, co, dopt;

    auto *verify = app.add_subcommand("verify", "run the invariant suites");
    std::string config_path;
    std::optional<int> vfloor;
    std::optional<unsigned> samples;
    std::vector<std::string> suites;
    verify->add_option("--config", config_path, "key = value configuration file");
    verify->add_option("--floor", vfloor, "accuracy floor (default -10)");
    verify->add_option("--samples", samples, "random samples per property");
    verify->add_option("--suite", suites, "suite or check name (repeatable)");
    add_output(verify, vo);

    auto *obs = app.add_subcommand("obstructions", "re-derive P4, P5 and the integrability quartic");
    std::string oh = "symbolic";
    int ofloor = psdo::kDefaultFloor;
    obs->add_option("--h", oh, "symbolic or a rational value");
    obs->add_option("--floor", ofloor, "accuracy floor");
    add_output(obs, oo);

    auto *charge = app.add_subcommand("charge", "central charge of the universal deformation");
    std::string cl = "symbolic", cmu = "symbolic", cnu = "symbolic", ch = "1";
    bool semidirect = false;
    int cfloor = psdo::kDefaultFloor;
    charge->add_option("--lambda", cl, "inner f' parameter: a rational, 'symbolic' or an indeterminate");
    charge->add_option("--mu", cmu, "conjugation parameter: a rational, 'symbolic' or an indeterminate");
    charge->add_option("--nu", cnu, "f-row parameter: a rational, 'symbolic' or an indeterminate");
    charge->add_option("--h", ch, "deformation parameter: a rational, 'symbolic' or an indeterminate");
    charge->add_option("--floor", cfloor, "accuracy floor");
    charge->add_flag("--semidirect", semidirect, "pair the semidirect-product embedding");
    add_output(charge, co);

    auto *deform = app.add_subcommand("deform", "coefficient table of the universal deformation");
    std::string dl = "symbolic", dmu = "symbolic", dnu = "symbolic", dh = "symbolic";
    int dfloor = psdo::kDefaultFloor;
    deform->add_option("--lambda", dl, "inner f' parameter: a rational, 'symbolic' or an indeterminate");
    deform->add_option("--mu", dmu, "conjugation parameter: a rational, 'symbolic' or an indeterminate");
    deform->add_option("--nu", dnu, "f-row parameter: a rational, 'symbolic' or an indeterminate");
    deform->add_option("--h", dh, "deformation parameter: a rational, 'symbolic' or an indeterminate");
    deform->add_option("--floor", dfloor, "accuracy floor");
    add_output(deform, dopt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : psdo::kExitUsage;
    }

    try {
        if (*verify) {
            psdo::VerifyConfig cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) {
                    throw psdo::usage_error("cannot open config " + config_path);
                }
                cfg = psdo::parse_config(in, config_path);
            }
            if (vfloor) {
                cfg.floor = *vfloor;
            }
            if (samples) {
                cfg.samples = *samples;
            }
            if (!suites.empty()) {
                cfg.suites = suites;
            }
            return emit(psdo::cmd_verify(cfg), vo);
        }
        if (*obs) {
            return emit(psdo::cmd_obstructions(psdo::parse_value(oh, "h"), ofloor), oo);
        }
        if (*charge) {
            return emit(psdo::cmd_charge(psdo::parse_value(cl, "l"), psdo::parse_value(cmu, "mu"),
                                         psdo::parse_value(cnu, "nu"), psdo::parse_value(ch, "h"), semidirect, cfloor),
                        co);
        }
        return emit(psdo::cmd_deform(psdo::parse_value(dl, "l"), psdo::parse_value(dmu, "mu"),
                                     psdo::parse_value(dnu, "nu"), psdo::parse_value(dh, "h"), dfloor),
                    dopt);
    } catch (const psdo::usage_error &e) {
        std::cerr << "psdo: " << e.what() << "\n";
        return psdo::kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "psdo: " << e.what() << "\n";
        return psdo::kExitFail;
    }
}
