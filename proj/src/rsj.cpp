#include "heunrsj/rsj.hpp"

#include <cmath>
#include <stdexcept>

namespace heunrsj {

Vec3d RsjSolution::eval(double t) const {
    if (t >= 0.0) {
        if (!has_forward_) {
            if (t == 0.0 && has_backward_) return backward_.initial_state();
            throw OutOfDomain("t beyond stored interval");
        }
        return forward_.eval(t);
    }
    if (!has_backward_) throw OutOfDomain("t beyond stored interval");
    return backward_.eval(t);
}

Vec3d RsjSolution::eval_derivative(double t) const {
    if (t >= 0.0) {
        if (!has_forward_) throw OutOfDomain("t beyond stored interval");
        return forward_.eval_derivative(t);
    }
    if (!has_backward_) throw OutOfDomain("t beyond stored interval");
    return backward_.eval_derivative(t);
}

RsjSolution solve_rsj(const Params& params, double phi0, double t_lo, double t_hi,
                      Tolerances tol) {
    if (!(t_lo <= 0.0 && t_hi >= 0.0))
        throw std::invalid_argument("t span must contain 0 (quadratures anchor there)");
    if (t_lo == t_hi) throw std::invalid_argument("empty t span");
    RsjField field{params};
    Vec3d y0;
    y0 << phi0, 0.0, 0.0;
    RsjSolution sol;
    sol.params_ = params;
    sol.phi0_ = phi0;
    sol.t_min_ = t_lo;
    sol.t_max_ = t_hi;
    if (t_hi > 0.0) {
        sol.forward_ = integrate(field, y0, 0.0, t_hi, tol);
        sol.has_forward_ = true;
    }
    if (t_lo < 0.0) {
        sol.backward_ = integrate(field, y0, 0.0, t_lo, tol);
        sol.has_backward_ = true;
    }
    return sol;
}

RsjSolution solve_rsj(const Params& params, double phi0, Tolerances tol) {
    const double half = kPi / params.omega;
    return solve_rsj(params, phi0, -half, half, tol);
}

double rotation_number(const Params& params, double phi0, int n_periods, Tolerances tol) {
    if (n_periods < 16) throw std::invalid_argument("rotation_number requires n_periods >= 16");
    const double t_end = 2.0 * kPi * n_periods / params.omega;
    RsjField field{params};
    Vec3d y0;
    y0 << phi0, 0.0, 0.0;
    IntegrateOptions opt;
    opt.dense = false;
    const auto run = integrate(field, y0, 0.0, t_end, tol, opt);
    return (run.final_state()[0] - phi0) / (2.0 * kPi * n_periods);
}

double period_map(const Params& params, double phi0, Tolerances tol) {
    RsjField field{params};
    Vec3d y0;
    y0 << phi0, 0.0, 0.0;
    IntegrateOptions opt;
    opt.dense = false;
    const auto run = integrate(field, y0, 0.0, 2.0 * kPi / params.omega, tol, opt);
    return run.final_state()[0];
}

double rsj_residual(const RsjSolution& sol, int n_samples) {
    double worst = 0.0;
    const double lo = sol.t_min();
    const double hi = sol.t_max();
    for (int i = 0; i < n_samples; ++i) {
        const double t = lo + (hi - lo) * (i + 0.5) / n_samples;
        const Vec3d y = sol.eval(t);
        const Vec3d dy = sol.eval_derivative(t);
        const double r = std::abs(dy[0] + std::sin(y[0]) - sol.params().bias_b -
                                  sol.params().bias_a * std::cos(sol.params().omega * t));
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace heunrsj
