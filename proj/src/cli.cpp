#include "heunrsj/cli.hpp"

#include <cmath>

#include <Eigen/LU>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "heunrsj/bridge.hpp"
#include "heunrsj/io.hpp"
#include "heunrsj/laurent.hpp"
#include "heunrsj/monodromy.hpp"
#include "heunrsj/sweep.hpp"
#include "heunrsj/version.hpp"

namespace heunrsj {

namespace {

Params resolve_params(const RunConfig& cfg) {
    if (!cfg.ell || !cfg.mu)
        throw std::invalid_argument("--ell and --mu are required");
    if (cfg.omega && cfg.lambda)
        throw std::invalid_argument("give either --omega or --lambda, not both");
    if (cfg.omega) return derive_params(*cfg.ell, *cfg.mu, *cfg.omega);
    if (cfg.lambda) return params_from_heun(*cfg.ell, *cfg.mu, *cfg.lambda);
    throw std::invalid_argument("one of --omega or --lambda is required");
}

Tolerances resolve_tol(const RunConfig& cfg, Tolerances base = {}) {
    if (cfg.rel_tol) base.rel = *cfg.rel_tol;
    if (cfg.abs_tol) base.abs = *cfg.abs_tol;
    return base;
}

json config_json(const RunConfig& cfg) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(); };
    return json{{"command", cfg.command},
                {"ell", opt(cfg.ell)},
                {"mu", opt(cfg.mu)},
                {"omega", opt(cfg.omega)},
                {"lambda", opt(cfg.lambda)},
                {"phi0", opt(cfg.phi0)},
                {"value", opt(cfg.value)},
                {"rel_tol", opt(cfg.rel_tol)},
                {"abs_tol", opt(cfg.abs_tol)},
                {"t_min", opt(cfg.t_min)},
                {"t_max", opt(cfg.t_max)},
                {"samples", cfg.samples},
                {"periods", cfg.periods},
                {"verify_target", cfg.verify_target},
                {"route", cfg.route},
                {"amp", opt(cfg.amp)},
                {"b_lo", opt(cfg.b_lo)},
                {"b_hi", opt(cfg.b_hi)},
                {"b_steps", cfg.b_steps},
                {"jobs", cfg.jobs},
                {"format", cfg.format}};
}

json header_json(const RunConfig& cfg) {
    return json{{"record", "header"}, {"version", HEUNRSJ_VERSION}, {"config", config_json(cfg)}};
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

EigenPair make_pair(const RunConfig& cfg, const Params& params) {
    EigenOptions opt;
    opt.tol = resolve_tol(cfg, opt.tol);
    if (cfg.route == "cauchy") {
        const Complex v(cfg.value.value_or(1.0), 0.0);
        return eigenpair_cauchy(params, v, v, opt);
    }
    if (cfg.route != "riccati")
        throw std::invalid_argument("--route must be riccati or cauchy");
    return eigenpair_from_rsj(params, cfg.phi0.value_or(0.0), opt);
}

int cmd_solve_rsj(const RunConfig& cfg, std::ostream& out) {
    const Params params = resolve_params(cfg);
    const double t_lo = cfg.t_min.value_or(0.0);
    const double t_hi = cfg.t_max.value_or(2.0 * kPi / params.omega);
    const auto sol = solve_rsj(params, cfg.phi0.value_or(0.0), std::min(t_lo, 0.0),
                               std::max(t_hi, 0.0), resolve_tol(cfg, kRsjTol));
    json head = header_json(cfg);
    head["params"] = params;
    out << head.dump() << "\n";
    const int n = std::max(2, cfg.samples);
    for (int i = 0; i < n; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (n - 1);
        const Vec3d y = sol.eval(t);
        out << json{{"t", t}, {"phi", y[0]}, {"P", y[1]}, {"Q", y[2]}}.dump() << "\n";
    }
    return 0;
}

int cmd_rotation(const RunConfig& cfg, std::ostream& out) {
    const Params params = resolve_params(cfg);
    const int n = cfg.periods > 0 ? cfg.periods : 64;
    const double rho =
        rotation_number(params, cfg.phi0.value_or(0.0), n, resolve_tol(cfg, kRsjTol));
    json rec = header_json(cfg);
    rec["record"] = "rotation";
    rec["params"] = params;
    rec["n_periods"] = n;
    rec["rotation_number"] = rho;
    out << rec.dump() << "\n";
    return 0;
}

int cmd_build_eigen(const RunConfig& cfg, std::ostream& out) {
    const Params params = resolve_params(cfg);
    const EigenPair pair = make_pair(cfg, params);
    json head = header_json(cfg);
    head["params"] = params;
    head["degenerate_plus"] = pair.plus.is_zero();
    head["degenerate_minus"] = pair.minus.is_zero();
    out << head.dump() << "\n";
    const int n = std::max(2, cfg.samples);
    for (int i = 0; i < n; ++i) {
        const double theta = -kPi + 2.0 * kPi * i / (n - 1);
        const CoverPoint p{Complex(0.0, theta)};
        const HeunState ep = pair.plus.eval(p);
        const HeunState em = pair.minus.eval(p);
        out << json{{"w", p},
                    {"E_plus", complex_json(ep.value)},
                    {"E_plus_prime", complex_json(ep.derivative)},
                    {"E_minus", complex_json(em.value)},
                    {"E_minus_prime", complex_json(em.derivative)}}
                   .dump()
            << "\n";
    }
    return 0;
}

json verify_opc_json(const RunConfig& cfg, const Params& params, bool& pass) {
    EigenOptions opt;
    opt.tol = resolve_tol(cfg, opt.tol);
    const auto pts = circle_samples(32);
    const double inv_plus = involutivity_residual(
        params, eigenfunction_cauchy(params, Branch::plus, Complex(1.0, 0.0), opt).jet2(), pts);
    const double inv_minus = involutivity_residual(
        params, eigenfunction_cauchy(params, Branch::minus, Complex(1.0, 0.0), opt).jet2(), pts);
    const double one_res = involutivity_residual(
        params, laurent_jet(LaurentPoly::monomial(params.ell, Complex(1.0, 0.0), 0, 0)), pts);
    const double exp_res = involutivity_residual(params, exp_mu_jet(params.mu), pts);
    pass = inv_plus < 1e-7 && inv_minus < 1e-7 && one_res > 1e-4 && exp_res > 1e-4;
    return json{{"involutivity_plus", inv_plus},
                {"involutivity_minus", inv_minus},
                {"nonsolution_one_residual", one_res},
                {"exp_mu_residual", exp_res}};
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Params params = resolve_params(cfg);
    json rec = header_json(cfg);
    rec["record"] = "verify";
    rec["params"] = params;
    bool pass = true;
    if (cfg.verify_target == "opC" || cfg.verify_target == "all") {
        bool ok = true;
        rec["op_c"] = verify_opc_json(cfg, params, ok);
        pass = pass && ok;
    }
    if (cfg.verify_target == "identities" || cfg.verify_target == "all") {
        const EigenPair pair = make_pair(cfg, params);
        const IdentityReport rep = check_identities(pair, 32);
        rec["identities"] = report_json(rep);
        pass = pass && rep.max_residual() < 1e-7;
    }
    if (cfg.verify_target != "opC" && cfg.verify_target != "identities" &&
        cfg.verify_target != "all")
        throw std::invalid_argument("verify target must be opC, identities or all");
    rec["pass"] = pass;
    out << rec.dump() << "\n";
    if (!pass) {
        err << json{{"error",
                     {{"type", "VerificationFailed"},
                      {"message", "residuals exceeded their thresholds"}}}}
                   .dump()
            << "\n";
        return 1;
    }
    return 0;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
    const Params params = resolve_params(cfg);
    const double phi0 = cfg.phi0.value_or(0.0);
    EigenOptions eopt;
    eopt.tol = resolve_tol(cfg, eopt.tol);
    const RsjSolution forward = solve_rsj(params, phi0, resolve_tol(cfg, kRsjTol));
    const EigenPair pair = eigenpair_from_rsj(params, phi0, eopt);
    const Alpha alpha = alpha_from_phi0(pair, phi0);

    const int n = std::max(2, cfg.samples);
    std::vector<double> grid(n);
    const double half = kPi / params.omega;
    for (int i = 0; i < n; ++i) grid[i] = -half + 2.0 * half * (i + 0.5) / n;

    const auto phi = phi_from_eigen(pair, alpha, grid);
    const auto tp = theta(pair, alpha, grid);
    const auto [p_rec, q_rec] = recover_pq(pair, alpha, grid);

    json head = header_json(cfg);
    head["params"] = params;
    head["alpha"] = alpha.value;
    head["theta_ode_residual"] = tp.ode_residual;
    out << head.dump() << "\n";
    for (int i = 0; i < n; ++i) {
        const Vec3d fwd = forward.eval(grid[i]);
        out << json{{"t", grid[i]},
                    {"phi", phi[i]},
                    {"P", p_rec[i]},
                    {"Q", q_rec[i]},
                    {"theta_re", tp.theta[i].real()},
                    {"theta_im", tp.theta[i].imag()},
                    {"phi_forward", fwd[0]},
                    {"P_forward", fwd[1]},
                    {"Q_forward", fwd[2]},
                    {"rsj_residual", bridge_rsj_residual(pair, alpha, grid[i])}}
                   .dump()
            << "\n";
    }
    return 0;
}

int cmd_monodromy(const RunConfig& cfg, std::ostream& out) {
    const Params params = resolve_params(cfg);
    const EigenPair pair = make_pair(cfg, params);
    const MonodromyMatrix closed = monodromy_closed_form(pair);
    const MonodromyMatrix cont =
        monodromy_continuation(params, pair, 1, resolve_tol(cfg, {1e-12, 1e-14}));
    const double disc = lock_discriminant(cont.m);
    const LockClass cls = params.ell_integer ? phase_lock(cont) : classify_discriminant(disc, 1e-6);
    double entry_diff = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            entry_diff = std::max(entry_diff, std::abs(closed.m(r, c) - cont.m(r, c)));
    json rec = header_json(cfg);
    rec["record"] = "monodromy";
    rec["params"] = params;
    rec["closed_form"] = matrix_json(closed.m);
    rec["closed_form_status"] = params.ell_integer ? "verified-order" : "unverified-order";
    rec["continuation"] = matrix_json(cont.m);
    rec["route_max_diff"] = entry_diff;
    rec["det_continuation"] = complex_json(cont.m.determinant());
    rec["discriminant"] = disc;
    rec["off_diag_abs"] = off_diag_magnitude(cont.m);
    rec["classification"] = to_string(cls);
    out << rec.dump() << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.omega || !cfg.amp || !cfg.b_lo || !cfg.b_hi)
        throw std::invalid_argument("sweep requires --omega, --amp and --b-range");
    SweepOptions opt;
    opt.omega = *cfg.omega;
    opt.amp = *cfg.amp;
    opt.b_lo = *cfg.b_lo;
    opt.b_hi = *cfg.b_hi;
    opt.steps = cfg.b_steps;
    opt.n_periods = cfg.periods > 0 ? cfg.periods : 256;
    opt.phi0 = cfg.phi0.value_or(0.0);
    opt.jobs = cfg.jobs;
    opt.rotation_tol = resolve_tol(cfg, kRsjTol);
    const auto rows = run_sweep(opt);

    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format == "csv") {
        out << "B,A,omega,ell,mu,classification,off_diag_abs,trace_re,rotation_number\n";
        for (const auto& r : rows) {
            out << fmt_double(r.b) << ',' << fmt_double(r.a) << ',' << fmt_double(r.omega)
                << ',' << fmt_double(r.ell) << ',' << fmt_double(r.mu) << ','
                << to_string(r.cls) << ',' << fmt_double(r.off_diag_abs) << ','
                << fmt_double(r.trace_re) << ',' << fmt_double(r.rotation) << "\n";
        }
    } else if (format == "json") {
        json head = header_json(cfg);
        out << head.dump() << "\n";
        for (const auto& r : rows) {
            out << json{{"B", r.b},
                        {"A", r.a},
                        {"omega", r.omega},
                        {"ell", r.ell},
                        {"mu", r.mu},
                        {"classification", to_string(r.cls)},
                        {"off_diag_abs", r.off_diag_abs},
                        {"trace_re", r.trace_re},
                        {"rotation_number", r.rotation},
                        {"discriminant", r.discriminant}}
                       .dump()
                << "\n";
        }
    } else {
        throw std::invalid_argument("format must be json or csv");
    }
    return 0;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == "solve-rsj") return cmd_solve_rsj(cfg, out);
    if (cfg.command == "rotation") return cmd_rotation(cfg, out);
    if (cfg.command == "build-eigen") return cmd_build_eigen(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "invert") return cmd_invert(cfg, out);
    if (cfg.command == "monodromy") return cmd_monodromy(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (!config.out_path.empty()) {
            std::ofstream file(config.out_path);
            if (!file) throw Error("Io", "cannot open output file: " + config.out_path);
            return dispatch(config, file, err);
        }
        return dispatch(config, out, err);
    } catch (const Error& e) {
        err << json{{"error", {{"type", e.kind()}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << json{{"error", {{"type", "Internal"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
}

}  // namespace heunrsj
