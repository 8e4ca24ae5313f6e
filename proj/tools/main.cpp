// Command-line front end: weight dumps, operator application and solves on
// sampled data files, starting-weight dumps, and convergence experiments.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report_io.hpp"
#include "subcalc/gridops.hpp"
#include "subcalc/harness.hpp"
#include "subcalc/starting.hpp"
#include "subcalc/types.hpp"
#include "subcalc/weights.hpp"

namespace {

struct SpecFlags {
    double alpha = 0.0;
    double sigma = 0.0;
    int p = 1;
    double h = 0.0;  // 0 = take the spacing from the input file
};

void add_spec_flags(CLI::App* cmd, SpecFlags& s, bool h_required) {
    cmd->add_option("--alpha", s.alpha, "operator order (negative = integral)")->required();
    cmd->add_option("--sigma", s.sigma, "damping rate");
    cmd->add_option("--p", s.p, "scheme order 1..5")->required()->check(CLI::Range(1, 5));
    auto* h = cmd->add_option("--h", s.h, "grid spacing");
    if (h_required) h->required();
}

// Shared by apply and solve: read samples, reconcile --h with the file.
subcalc::GridFunction load_grid(const std::string& path, SpecFlags& s) {
    const subcalc::cli::GridFile gf = subcalc::cli::read_grid_csv(path);
    if (s.h > 0.0 && std::fabs(gf.h - s.h) > 1e-12 * s.h)
        throw std::runtime_error("--h disagrees with the input file spacing");
    s.h = gf.h;
    return {gf.x0, gf.h, gf.values};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convolution-quadrature calculus for substantial fractional operators"};
    app.require_subcommand(1);
    // The default help flag claims -h, which would shadow the --h option.
    app.set_help_flag("--help", "print help and exit");
    auto sub = [&app](const char* name, const char* desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->set_help_flag("--help", "print help and exit");
        return cmd;
    };
    std::string out = "-";

    SpecFlags ws;
    long long wn = 0;
    auto* weights_cmd = sub("weights", "dump the weight table g_0..g_N as CSV");
    add_spec_flags(weights_cmd, ws, true);
    weights_cmd->add_option("--n", wn, "last weight index N")->required()
        ->check(CLI::NonNegativeNumber);
    weights_cmd->add_option("--out", out, "output path (- = stdout)");

    SpecFlags as;
    std::string apply_in;
    bool fast = false, starting = false;
    double beta = 0.0;
    int r = 0;
    auto* apply_cmd = sub("apply", "apply the discrete operator to sampled data");
    add_spec_flags(apply_cmd, as, false);
    apply_cmd->add_option("input", apply_in, "CSV of (x, f) samples")->required()
        ->check(CLI::ExistingFile);
    auto* fast_flag = apply_cmd->add_flag("--fast", fast, "FFT convolution path");
    auto* starting_flag =
        apply_cmd->add_flag("--starting", starting, "add the starting-weight correction");
    apply_cmd->add_option("--beta", beta, "regularity exponent for --starting");
    apply_cmd->add_option("--r", r, "number of correction nodes for --starting");
    apply_cmd->add_option("--out", out, "output path (- = stdout)");
    fast_flag->excludes(starting_flag);

    SpecFlags ss;
    std::string solve_in;
    double f0 = 0.0;
    bool solve_starting = false;
    double solve_beta = 0.0;
    int solve_r = 0;
    auto* solve_cmd = sub("solve", "solve the discrete equation for f given the rhs");
    add_spec_flags(solve_cmd, ss, false);
    solve_cmd->add_option("input", solve_in, "CSV of (x, rhs) samples")->required()
        ->check(CLI::ExistingFile);
    solve_cmd->add_option("--f0", f0, "prescribed value at the first node");
    solve_cmd->add_flag("--starting", solve_starting, "solve the corrected scheme");
    solve_cmd->add_option("--beta", solve_beta, "regularity exponent for --starting");
    solve_cmd->add_option("--r", solve_r, "number of correction nodes for --starting");
    solve_cmd->add_option("--out", out, "output path (- = stdout)");

    SpecFlags sws_flags;
    double sws_beta = 0.0;
    int sws_r = 0;
    long long sws_n = 0;
    auto* sw_cmd = sub("starting-weights", "dump the correction rows kappa_{n,j}");
    add_spec_flags(sw_cmd, sws_flags, true);
    sw_cmd->add_option("--beta", sws_beta, "regularity exponent")->required();
    sw_cmd->add_option("--r", sws_r, "number of correction nodes (0 = derive from p and beta)");
    sw_cmd->add_option("--n", sws_n, "number of rows")->required()->check(CLI::PositiveNumber);
    sw_cmd->add_option("--out", out, "output path (- = stdout)");

    std::string experiment, format = "csv";
    bool do_assert = false;
    auto* conv_cmd = sub("converge", "run a registered convergence experiment");
    conv_cmd->add_option("--experiment", experiment, "experiment name")->required();
    conv_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    conv_cmd->add_flag("--assert", do_assert, "fail (exit 1) unless the experiment meets its targets");
    conv_cmd->add_option("--out", out, "output path (- = stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (weights_cmd->parsed()) {
            const subcalc::OperatorSpec spec{ws.alpha, ws.sigma, ws.p, ws.h};
            subcalc::cli::write_text(out, subcalc::cli::weights_csv(
                subcalc::weights(spec, static_cast<std::size_t>(wn))));
        } else if (apply_cmd->parsed()) {
            subcalc::GridFunction f = load_grid(apply_in, as);
            const subcalc::OperatorSpec spec{as.alpha, as.sigma, as.p, as.h};
            subcalc::GridFunction result;
            if (starting) {
                if (r == 0) r = subcalc::default_starting_count(as.p, beta);
                const auto sws = subcalc::starting_weights(spec, beta, r, f.values.size() - 1);
                result = subcalc::corrected_apply(spec, sws, f);
            } else {
                result = fast ? subcalc::apply_fast(spec, f) : subcalc::apply(spec, f);
            }
            subcalc::cli::write_text(out, subcalc::cli::grid_csv(result, "value"));
        } else if (solve_cmd->parsed()) {
            subcalc::GridFunction rhs = load_grid(solve_in, ss);
            const subcalc::OperatorSpec spec{ss.alpha, ss.sigma, ss.p, ss.h};
            subcalc::GridFunction f;
            if (solve_starting) {
                if (solve_r == 0) solve_r = subcalc::default_starting_count(ss.p, solve_beta);
                const auto sws =
                    subcalc::starting_weights(spec, solve_beta, solve_r, rhs.values.size() - 1);
                f = subcalc::corrected_solve(spec, sws, rhs, f0);
            } else {
                f = subcalc::solve(spec, rhs, f0);
            }
            subcalc::cli::write_text(out, subcalc::cli::grid_csv(f, "f"));
        } else if (sw_cmd->parsed()) {
            const subcalc::OperatorSpec spec{sws_flags.alpha, sws_flags.sigma, sws_flags.p, sws_flags.h};
            if (sws_r == 0) sws_r = subcalc::default_starting_count(sws_flags.p, sws_beta);
            subcalc::cli::write_text(out, subcalc::cli::starting_csv(subcalc::starting_weights(
                spec, sws_beta, sws_r, static_cast<std::size_t>(sws_n))));
        } else if (conv_cmd->parsed()) {
            const subcalc::Experiment e = subcalc::registry_lookup(experiment);
            const subcalc::ExperimentResult result = subcalc::run_experiment(e);
            subcalc::cli::write_text(out, format == "json" ? subcalc::cli::report_json(result)
                                                           : subcalc::cli::report_csv(result));
            if (do_assert) {
                const std::vector<std::string> failures = subcalc::check_acceptance(result);
                for (const auto& line : failures) std::cerr << "assert failed: " << line << "\n";
                if (!failures.empty()) return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
