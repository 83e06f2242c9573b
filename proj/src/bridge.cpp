#include "heunrsj/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "heunrsj/errors.hpp"

namespace heunrsj {

namespace {

struct BridgeCtx {
    const EigenPair& pair;
    double c, s;  // cos(alpha/2), sin(alpha/2)
    double ell, omega, mu;
    double ep1, em1;  // base values, real for self-conjugated pairs

    BridgeCtx(const EigenPair& p, Alpha a)
        : pair(p),
          c(std::cos(0.5 * a.value)),
          s(std::sin(0.5 * a.value)),
          ell(p.plus.params().ell),
          omega(p.plus.params().omega),
          mu(p.plus.params().mu),
          ep1(std::real(p.plus.value_at_one())),
          em1(std::real(p.minus.value_at_one())) {
        if (p.degenerate())
            throw DegeneratePair("bridge formulas require a non-degenerate pair");
    }

    CoverPoint point(double t) const {
        return CoverPoint{Complex(0.0, omega * t)};
    }

    Complex phi_value(double t) const {
        const CoverPoint p = point(t);
        const CoverPoint q = invert(p);
        const Complex num = c * pair.plus.eval(p).value + kI * s * pair.minus.eval(p).value;
        const Complex den = c * pair.plus.eval(q).value - kI * s * pair.minus.eval(q).value;
        if (std::abs(den) < 1e-12 * std::max(1e-300, std::abs(num))) {
            std::ostringstream os;
            os << "circle-map denominator vanished at t = " << t;
            throw DenominatorVanished(os.str(), t);
        }
        const Complex value = -kI * power(p, ell) * num / den;
        if (std::abs(std::abs(value) - 1.0) > 1e-8) {
            std::ostringstream os;
            os << "|Phi| deviates from 1 by " << std::abs(std::abs(value) - 1.0)
               << " at t = " << t << " (pair not self-conjugate?)";
            throw NonUnimodular(os.str(), t);
        }
        return value;
    }

    Complex theta_value(double t) const {
        const CoverPoint p = point(t);
        const Complex epv = pair.plus.eval(p).value;
        const Complex emv = pair.minus.eval(p).value;
        const Complex num = c * ep1 * ep1 * emv + kI * s * em1 * em1 * epv;
        const Complex den = ep1 * em1 * (c * epv + kI * s * emv);
        if (std::abs(den) < 1e-12 * std::max(1e-300, std::abs(num))) {
            std::ostringstream os;
            os << "theta denominator vanished at t = " << t;
            throw DenominatorVanished(os.str(), t);
        }
        return -kI * num / den;
    }

    Complex theta_dual_value(double t) const {
        const CoverPoint q = invert(point(t));
        const Complex epv = pair.plus.eval(q).value;
        const Complex emv = pair.minus.eval(q).value;
        const Complex num = c * ep1 * ep1 * emv - kI * s * em1 * em1 * epv;
        const Complex den = ep1 * em1 * (c * epv - kI * s * emv);
        if (std::abs(den) < 1e-12 * std::max(1e-300, std::abs(num))) {
            std::ostringstream os;
            os << "dual theta denominator vanished at t = " << t;
            throw DenominatorVanished(os.str(), t);
        }
        return kI * num / den;
    }
};

// Argument increment from t0 to t1, subdividing until each hop stays below
// 0.9 pi so the winding is unambiguous.
double arg_increment(const BridgeCtx& ctx, double t0, Complex v0, double t1, Complex v1,
                     int depth = 0) {
    const double d = std::arg(v1 / v0);
    if (std::abs(d) < 0.9 * kPi || depth > 48) return d;
    const double tm = 0.5 * (t0 + t1);
    const Complex vm = ctx.phi_value(tm);
    return arg_increment(ctx, t0, v0, tm, vm, depth + 1) +
           arg_increment(ctx, tm, vm, t1, v1, depth + 1);
}

}  // namespace

Alpha alpha_from_phi0(const EigenPair& pair, double phi0) {
    if (pair.degenerate()) throw DegeneratePair("alpha_from_phi0 requires a non-degenerate pair");
    const double ep1 = std::real(pair.plus.value_at_one());
    const double em1 = std::real(pair.minus.value_at_one());
    const double half = 0.5 * phi0 - 0.25 * kPi;
    double a = 2.0 * std::atan2(ep1 * std::cos(half), -em1 * std::sin(half));
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    Alpha alpha{a};
    const double scale = std::abs(ep1) + std::abs(em1);
    if (std::abs(alpha_constraint(pair, a, phi0)) > 1e-10 * std::max(1.0, scale))
        throw StructureViolated("alpha constraint violated at construction");
    return alpha;
}

double alpha_constraint(const EigenPair& pair, double alpha, double phi0) {
    const double ep1 = std::real(pair.plus.value_at_one());
    const double em1 = std::real(pair.minus.value_at_one());
    const double half = 0.5 * phi0 - 0.25 * kPi;
    return em1 * std::sin(half) * std::sin(0.5 * alpha) +
           ep1 * std::cos(half) * std::cos(0.5 * alpha);
}

Complex bridge_phi_value(const EigenPair& pair, Alpha alpha, double t) {
    return BridgeCtx(pair, alpha).phi_value(t);
}

Complex bridge_theta(const EigenPair& pair, Alpha alpha, double t) {
    return BridgeCtx(pair, alpha).theta_value(t);
}

Complex bridge_theta_dual(const EigenPair& pair, Alpha alpha, double t) {
    return BridgeCtx(pair, alpha).theta_dual_value(t);
}

std::vector<double> phi_from_eigen(const EigenPair& pair, Alpha alpha,
                                   std::span<const double> t_grid) {
    const BridgeCtx ctx(pair, alpha);
    std::vector<std::size_t> order(t_grid.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });

    const Complex phi1 = ctx.phi_value(0.0);
    const double anchor = std::arg(phi1);

    std::vector<double> out(t_grid.size());
    // Walk outward from t = 0 on each side, accumulating the argument.
    auto sweep = [&](bool positive) {
        double t_prev = 0.0;
        Complex v_prev = phi1;
        double acc = anchor;
        if (positive) {
            for (std::size_t k : order) {
                const double t = t_grid[k];
                if (t < 0.0) continue;
                const Complex v = ctx.phi_value(t);
                acc += arg_increment(ctx, t_prev, v_prev, t, v);
                out[k] = acc;
                t_prev = t;
                v_prev = v;
            }
        } else {
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                const double t = t_grid[*it];
                if (t >= 0.0) continue;
                const Complex v = ctx.phi_value(t);
                acc += arg_increment(ctx, t_prev, v_prev, t, v);
                out[*it] = acc;
                t_prev = t;
                v_prev = v;
            }
        }
    };
    sweep(true);
    sweep(false);
    return out;
}

ThetaPair theta(const EigenPair& pair, Alpha alpha, std::span<const double> t_grid) {
    const BridgeCtx ctx(pair, alpha);
    ThetaPair tp;
    tp.t.assign(t_grid.begin(), t_grid.end());
    tp.theta.reserve(t_grid.size());
    tp.theta_dual.reserve(t_grid.size());
    for (double t : t_grid) {
        tp.theta.push_back(ctx.theta_value(t));
        tp.theta_dual.push_back(ctx.theta_dual_value(t));
    }
    // Report-only consistency of the first-order system the pair satisfies,
    // centered differences on the grid itself.
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < tp.t.size(); ++i) {
        const double dt = tp.t[i + 1] - tp.t[i - 1];
        if (dt <= 0.0) continue;
        const Complex dtheta = (tp.theta[i + 1] - tp.theta[i - 1]) / dt;
        const Complex phi = ctx.phi_value(tp.t[i]);
        const Complex resid = dtheta + (tp.theta[i] - tp.theta_dual[i]) / phi;
        worst = std::max(worst, std::abs(resid));
    }
    tp.ode_residual = worst;
    return tp;
}

std::pair<std::vector<double>, std::vector<double>> recover_pq(const EigenPair& pair,
                                                               Alpha alpha,
                                                               std::span<const double> t_grid) {
    const BridgeCtx ctx(pair, alpha);
    std::vector<double> p_out, q_out;
    p_out.reserve(t_grid.size());
    q_out.reserve(t_grid.size());
    for (double t : t_grid) {
        const Complex th = ctx.theta_value(t);
        const double neg_im = -th.imag();
        if (!(neg_im > 0.0)) {
            std::ostringstream os;
            os << "-Im Theta = " << neg_im << " <= 0 at t = " << t;
            throw LogDomain(os.str(), t);
        }
        p_out.push_back(-std::log(neg_im));
        q_out.push_back(th.real());
    }
    return {std::move(p_out), std::move(q_out)};
}

namespace {

// 5-point fourth-order first derivative.
template <class F>
double stencil_d1(F&& f, double t, double h) {
    return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h);
}

}  // namespace

double bridge_rsj_residual(const EigenPair& pair, Alpha alpha, double t, double h) {
    const BridgeCtx ctx(pair, alpha);
    // Only local phase differences enter, so unwrap within the stencil.
    const Complex v0 = ctx.phi_value(t);
    const double base = std::arg(v0);
    auto phi_local = [&](double tt) {
        return base + std::arg(ctx.phi_value(tt) / v0);
    };
    const double dphi = stencil_d1(phi_local, t, h);
    const Params& par = pair.plus.params();
    return std::abs(dphi + std::sin(base) - par.bias_b - par.bias_a * std::cos(par.omega * t));
}

double theta_flow_residual(const EigenPair& pair, Alpha alpha, std::span<const double> t_grid,
                           double h) {
    const BridgeCtx ctx(pair, alpha);
    double worst = 0.0;
    for (double t : t_grid) {
        const Complex th = ctx.theta_value(t);
        const double phi = std::arg(ctx.phi_value(t));
        const double d_re =
            stencil_d1([&](double tt) { return ctx.theta_value(tt).real(); }, t, h);
        const double d_im =
            stencil_d1([&](double tt) { return ctx.theta_value(tt).imag(); }, t, h);
        worst = std::max(worst, std::abs(d_re + th.imag() * std::sin(phi)));
        worst = std::max(worst, std::abs(d_im + th.imag() * std::cos(phi)));
    }
    return worst;
}

}  // namespace heunrsj
