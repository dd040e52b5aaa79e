// Command-line workbench for progression-functional experiments over F_p.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ap3/commands.hpp"
#include "ap3/io.hpp"

namespace {

void emit_report(const ap3::RunReport& rep, const std::string& out_path) {
    const std::string text = rep.to_json().dump(2);
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream os(out_path);
        if (!os) throw ap3::Error("cannot write " + out_path);
        os << text << '\n';
    }
}

std::string sibling_path(const std::string& out_path, const std::string& suffix) {
    const auto dot = out_path.rfind('.');
    return (dot == std::string::npos ? out_path : out_path.substr(0, dot)) + suffix;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for three-term progression functionals over F_p"};
    app.require_subcommand(1);

    ap3::MinimizeParams min_params;
    std::string min_out;
    auto* cmd_min = app.add_subcommand("minimize", "constrained descent on Lambda(f)");
    cmd_min->add_option("--p", min_params.p, "prime modulus")->required();
    cmd_min->add_option("--theta", min_params.theta, "target density")->required();
    cmd_min->add_option("--seed", min_params.seed, "master seed");
    cmd_min->add_option("--restarts", min_params.restarts, "independent restarts");
    cmd_min->add_option("--iters", min_params.max_iters, "iteration cap per restart");
    cmd_min->add_option("--step-rule", min_params.step_rule, "full_transfer | line_search");
    cmd_min->add_option("--out", min_out, "report path (stdout if omitted)");

    ap3::VerifyParams ver_params;
    std::string ver_out;
    auto* cmd_ver = app.add_subcommand("verify", "property suites at fixed p");
    cmd_ver->add_option("--p", ver_params.p, "prime modulus")->required();
    cmd_ver->add_option("--suite", ver_params.suite,
                        "identities | varnavides | levelprop | bohr | all");
    cmd_ver->add_option("--seed", ver_params.seed, "master seed");
    cmd_ver->add_option("--samples", ver_params.samples, "Monte Carlo sample count");
    cmd_ver->add_option("--out", ver_out, "report path (stdout if omitted)");

    ap3::VerifyParams lp_params;
    lp_params.suite = "levelprop";
    std::string lp_out;
    auto* cmd_lp = app.add_subcommand("verify-levelprop",
                                      "shorthand for verify --suite levelprop");
    cmd_lp->add_option("--p", lp_params.p, "prime modulus")->required();
    cmd_lp->add_option("--seed", lp_params.seed, "master seed");
    cmd_lp->add_option("--samples", lp_params.samples, "Monte Carlo sample count");
    cmd_lp->add_option("--out", lp_out, "report path (stdout if omitted)");

    ap3::R3Params r3_params;
    r3_params.cache_path = "r3_certificates.csv";
    std::string r3_out;
    auto* cmd_r3s = app.add_subcommand("r3", "exact progression-free maximum on [1,N]");
    cmd_r3s->add_option("--n", r3_params.n, "range bound N")->required();
    cmd_r3s->add_option("--budget", r3_params.budget, "search node budget");
    cmd_r3s->add_option("--cache", r3_params.cache_path,
                        "certificate CSV store (empty string disables)");
    cmd_r3s->add_option("--out", r3_out, "report path (stdout if omitted)");

    ap3::BehrendParams beh_params;
    std::string beh_out;
    auto* cmd_beh = app.add_subcommand("behrend", "digit-sphere progression-free construction");
    cmd_beh->add_option("--n", beh_params.n, "range bound N")->required();
    cmd_beh->add_option("--out", beh_out, "report path (stdout if omitted)");

    ap3::ImproveParams imp_params;
    std::string imp_out;
    auto* cmd_imp = app.add_subcommand("improve", "random dilate/translate surgery");
    cmd_imp->add_option("--p", imp_params.p, "prime modulus")->required();
    cmd_imp->add_option("--theta", imp_params.theta, "target density");
    cmd_imp->add_option("--eps", imp_params.eps, "fuzzy-region margin");
    cmd_imp->add_option("--seed", imp_params.seed, "master seed");
    cmd_imp->add_option("--samples", imp_params.max_tries, "surgery attempts");
    cmd_imp->add_option("--out", imp_out, "report path (stdout if omitted)");

    ap3::BohrParams bohr_params;
    std::string bohr_out;
    auto* cmd_boh = app.add_subcommand("bohr", "spectrum/Bohr/smoothing chain");
    cmd_boh->add_option("--p", bohr_params.p, "prime modulus")->required();
    cmd_boh->add_option("--theta", bohr_params.theta, "target density");
    cmd_boh->add_option("--seed", bohr_params.seed, "master seed");
    cmd_boh->add_option("--out", bohr_out, "report path (stdout if omitted)");

    std::string report_path;
    auto* cmd_rep = app.add_subcommand("report", "validate and summarize a saved report");
    cmd_rep->add_option("file", report_path, "report JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_min) {
            auto outcome = ap3::cmd_minimize(min_params);
            emit_report(outcome.report, min_out);
            if (!min_out.empty())
                ap3::write_gridfn_csv(sibling_path(min_out, ".fn.csv"), outcome.f);
            return 0;
        }
        if (*cmd_ver || *cmd_lp) {
            const auto& params = *cmd_ver ? ver_params : lp_params;
            const auto& out = *cmd_ver ? ver_out : lp_out;
            const ap3::RunReport rep = ap3::cmd_verify(params);
            emit_report(rep, out);
            return rep.all_pass() ? 0 : 1;
        }
        if (*cmd_r3s) {
            auto outcome = ap3::cmd_r3(r3_params);
            emit_report(outcome.report, r3_out);
            return outcome.certificate.certified ? 0 : 1;
        }
        if (*cmd_beh) {
            auto outcome = ap3::cmd_behrend(beh_params);
            emit_report(outcome.report, beh_out);
            if (!beh_out.empty())
                ap3::write_intset_csv(sibling_path(beh_out, ".set.csv"), outcome.set);
            return outcome.report.all_pass() ? 0 : 1;
        }
        if (*cmd_imp) {
            const ap3::RunReport rep = ap3::cmd_improve(imp_params);
            emit_report(rep, imp_out);
            return 0;
        }
        if (*cmd_boh) {
            const ap3::RunReport rep = ap3::cmd_bohr(bohr_params);
            emit_report(rep, bohr_out);
            return rep.all_pass() ? 0 : 1;
        }
        if (*cmd_rep) {
            std::ifstream is(report_path);
            if (!is) throw ap3::Error("cannot open " + report_path);
            nlohmann::json j;
            is >> j;
            const ap3::RunReport rep = ap3::RunReport::from_json(j);
            std::cout << rep.command << " seed=" << rep.seed << " verdicts=" << rep.verdicts.size()
                      << " all_pass=" << (rep.all_pass() ? "true" : "false") << '\n';
            for (const auto& v : rep.verdicts)
                std::cout << (v.pass ? "  [pass] " : "  [FAIL] ") << v.name
                          << (v.detail.empty() ? "" : "  (" + v.detail + ")") << '\n';
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const ap3::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
