// Command-line front end: parses flags into a RunConfig and executes it.

#include <iostream>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "heunrsj/cli.hpp"
#include "heunrsj/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"numerical bridge between the special double confluent Heun equation "
                 "and the overdamped junction phase equation"};
    app.set_version_flag("--version", HEUNRSJ_VERSION);
    app.set_config("--config")->configurable(false);
    app.require_subcommand(1);
    app.fallthrough();

    heunrsj::RunConfig cfg;

    // Shared flags; subcommands inherit through fallthrough.
    double ell = 0, mu = 0, omega = 0, lambda = 0, phi0 = 0, value = 0;
    double rel_tol = 0, abs_tol = 0, t_min = 0, t_max = 0, amp = 0;
    std::vector<double> b_range;
    auto* o_ell = app.add_option("--ell", ell, "order parameter ell");
    auto* o_mu = app.add_option("--mu", mu, "coupling parameter mu (nonzero)");
    auto* o_omega = app.add_option("--omega", omega, "frequency omega (positive)");
    auto* o_lambda = app.add_option("--lambda", lambda, "spectral parameter lambda");
    auto* o_phi0 = app.add_option("--phi0", phi0, "initial phase phi(0)");
    auto* o_value = app.add_option("--value", value, "Cauchy base value E(1)");
    auto* o_rel = app.add_option("--rel-tol", rel_tol, "relative integration tolerance");
    auto* o_abs = app.add_option("--abs-tol", abs_tol, "absolute integration tolerance");
    auto* o_tmin = app.add_option("--t-min", t_min, "left end of the t grid");
    auto* o_tmax = app.add_option("--t-max", t_max, "right end of the t grid");
    app.add_option("--samples", cfg.samples, "number of grid samples");
    app.add_option("--periods", cfg.periods, "forcing periods for rotation estimates");
    app.add_option("--route", cfg.route, "pair construction route: riccati | cauchy");
    app.add_option("--jobs", cfg.jobs, "parallel workers for sweep cells");
    app.add_option("--out", cfg.out_path, "write output to this file instead of stdout");
    app.add_option("--format", cfg.format, "output format: json | csv");

    app.add_subcommand("solve-rsj", "integrate the phase equation, emit {t, phi, P, Q} lines");
    app.add_subcommand("rotation", "estimate the rotation number over n forcing periods");
    app.add_subcommand("build-eigen", "construct the eigen-pair and sample it on the circle");
    auto* sc_verify =
        app.add_subcommand("verify", "run residual checks (target: opC | identities | all)");
    sc_verify->add_option("target", cfg.verify_target, "opC | identities | all");
    app.add_subcommand("invert", "recover phi, P, Q from the eigen-pair and compare");
    app.add_subcommand("monodromy", "monodromy matrix by both routes plus classification");
    auto* sc_sweep = app.add_subcommand("sweep", "phase-lock sweep over the bias B");
    sc_sweep->add_option("--amp", amp, "drive amplitude A");
    sc_sweep->add_option("--b-range", b_range, "B range as lo,hi")->delimiter(',')->expected(2);
    sc_sweep->add_option("--b-steps", cfg.b_steps, "number of B grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (*o_ell) cfg.ell = ell;
    if (*o_mu) cfg.mu = mu;
    if (*o_omega) cfg.omega = omega;
    if (*o_lambda) cfg.lambda = lambda;
    if (*o_phi0) cfg.phi0 = phi0;
    if (*o_value) cfg.value = value;
    if (*o_rel) cfg.rel_tol = rel_tol;
    if (*o_abs) cfg.abs_tol = abs_tol;
    if (*o_tmin) cfg.t_min = t_min;
    if (*o_tmax) cfg.t_max = t_max;
    if (sc_sweep->count("--amp")) cfg.amp = amp;
    if (b_range.size() == 2) {
        cfg.b_lo = b_range[0];
        cfg.b_hi = b_range[1];
    }
    return heunrsj::run(cfg, std::cout, std::cerr);
}
