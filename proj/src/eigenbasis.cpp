#include "heunrsj/eigenbasis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "heunrsj/errors.hpp"

namespace heunrsj {

namespace {

constexpr double kQnan = std::numeric_limits<double>::quiet_NaN();
constexpr double kZeroBranchTol = 1e-10;
constexpr double kNearDegenerateTol = 1e-6;

// chi' and sigma' as functions of (w, chi):
//   chi'   = ell + mu (z + 1/z) - (2 i omega)^{-1} (e^chi - e^{-chi})
//   sigma' = (2 i omega)^{-1} (e^chi + e^{-chi})
struct ChiSigmaField {
    Params params;
    Vec2c operator()(Complex w, const Vec2c& y) const {
        const Complex z = std::exp(w);
        const Complex echi = std::exp(y[0]);
        const Complex g = 1.0 / (2.0 * kI * params.omega);
        Vec2c d;
        d[0] = params.ell + params.mu * (z + 1.0 / z) - g * (echi - 1.0 / echi);
        d[1] = g * (echi + 1.0 / echi);
        return d;
    }
};

struct ChiSigmaJet {
    Complex chi, sigma;
    Complex dchi, dsigma;    // d/dw
    Complex d2chi, d2sigma;  // d2/dw2
};

}  // namespace

struct EigenFunction::Impl {
    Params params;
    Branch branch = Branch::plus;
    Provenance provenance = Provenance::cauchy;
    Complex value_at_one{0.0, 0.0};
    bool zero = false;
    bool factorized = false;
    bool near_degenerate = false;
    double axis_extent = 0.0;
    Tolerances tol;

    // Cauchy build: (E, E') along the circle axis, integrated from the base
    // point upward and downward.
    std::optional<DenseSolution<Vec2c>> axis_up, axis_down;

    // Quadrature build: the real solution supplying chi = i phi, sigma = P
    // on the axis.  Shared with the sibling branch.
    std::shared_ptr<const RsjSolution> rsj;

    HeunState eval(CoverPoint p) const {
        const HeunJet j = eval_jet(p);
        return {j.value, j.d1};
    }

    HeunJet eval_jet(CoverPoint p) const {
        if (zero) return HeunJet{};
        return provenance == Provenance::cauchy ? cauchy_jet(p) : riccati_jet(p);
    }

    // ---- Cauchy route ----

    // State and d(state)/dw at w = i v + u, via axis interpolation plus an
    // optional on-demand extension and radial run.
    HeunJet cauchy_jet(CoverPoint p) const {
        const double v = p.w.imag();
        const double u = p.w.real();
        const HeunField field{params};
        Vec2c y, dydw;
        const double av = std::abs(v);
        const DenseSolution<Vec2c>& axis = (v >= 0.0) ? *axis_up : *axis_down;
        if (av <= std::abs(axis.s_end())) {
            y = axis.eval(v);
            dydw = axis.eval_derivative(v) / kI;
        } else {
            // Extend along the axis from the stored endpoint.
            auto rhs = [&field](double s, const Vec2c& yy) {
                return Vec2c(kI * field(Complex(0.0, s), yy));
            };
            const auto ext = integrate(rhs, axis.final_state(), axis.s_end(), v, tol);
            y = ext.final_state();
            dydw = ext.eval_derivative(v) / kI;
        }
        if (u != 0.0) {
            auto rhs = [&field, v](double s, const Vec2c& yy) {
                return field(Complex(s, v), yy);
            };
            const auto rad = integrate(rhs, y, 0.0, u, tol);
            y = rad.final_state();
            dydw = rad.eval_derivative(u);
        }
        const Complex z = p.z();
        return HeunJet{y[0], y[1], dydw[1] / z};
    }

    // ---- Quadrature route ----

    ChiSigmaJet chi_sigma(Complex w) const {
        const double v = w.imag();
        const double u = w.real();
        const double t = v / params.omega;
        const ChiSigmaField field{params};
        Vec2c y;
        if (t >= rsj->t_min() && t <= rsj->t_max()) {
            const Vec3d s = rsj->eval(t);
            y[0] = kI * s[0];
            y[1] = Complex(s[1], 0.0);
        } else {
            const double t_edge = (t > 0.0) ? rsj->t_max() : rsj->t_min();
            const Vec3d s = rsj->eval(t_edge);
            Vec2c y_edge;
            y_edge[0] = kI * s[0];
            y_edge[1] = Complex(s[1], 0.0);
            auto rhs = [&field, this](double ss, const Vec2c& yy) {
                return Vec2c(kI * params.omega * field(Complex(0.0, ss * params.omega), yy));
            };
            // Axis extension parameterized by t for a direct hand-off.
            const auto ext = integrate(rhs, y_edge, t_edge, t, tol);
            y = ext.final_state();
        }
        if (u != 0.0) {
            auto rhs = [&field, v](double ss, const Vec2c& yy) {
                return field(Complex(ss, v), yy);
            };
            y = integrate(rhs, y, 0.0, u, tol).final_state();
        }
        ChiSigmaJet jet;
        jet.chi = y[0];
        jet.sigma = y[1];
        const Vec2c d = field(w, y);
        jet.dchi = d[0];
        jet.dsigma = d[1];
        const Complex z = std::exp(w);
        const Complex echi = std::exp(y[0]);
        const Complex g = 1.0 / (2.0 * kI * params.omega);
        jet.d2chi = params.mu * (z - 1.0 / z) - g * (echi + 1.0 / echi) * d[0];
        jet.d2sigma = g * (echi - 1.0 / echi) * d[0];
        return jet;
    }

    HeunJet riccati_jet(CoverPoint p) const {
        const int s = branch_sign(branch);
        const Complex w = p.w;
        const Complex z = std::exp(w);
        const ChiSigmaJet here = chi_sigma(w);

        const Complex g_val = 0.5 * params.mu * (z + 1.0 / z - 2.0) - 0.5 * params.ell * w;
        const Complex g_d1 = 0.5 * params.mu * (z - 1.0 / z) - 0.5 * params.ell;
        const Complex g_d2 = 0.5 * params.mu * (z + 1.0 / z);

        const Complex c_s = (1.0 + double(s) * kI) / std::sqrt(2.0);
        const Complex c_ms = (1.0 - double(s) * kI) / std::sqrt(2.0);

        const Complex t1 = c_s * std::exp(g_val + 0.5 * (here.sigma + here.chi));
        const Complex a1 = g_d1 + 0.5 * (here.dsigma + here.dchi);
        const Complex a1p = g_d2 + 0.5 * (here.d2sigma + here.d2chi);

        Complex e, dedw, d2edw2;
        if (factorized) {
            e = t1;
            dedw = t1 * a1;
            d2edw2 = t1 * (a1 * a1 + a1p);
        } else {
            const ChiSigmaJet there = chi_sigma(-w);
            const Complex t2 = c_ms * std::exp(g_val + 0.5 * (there.sigma - there.chi));
            const Complex a2 = g_d1 - 0.5 * (there.dsigma - there.dchi);
            const Complex a2p = g_d2 + 0.5 * (there.d2sigma - there.d2chi);
            e = 0.5 * (t1 + t2);
            dedw = 0.5 * (t1 * a1 + t2 * a2);
            d2edw2 = 0.5 * (t1 * (a1 * a1 + a1p) + t2 * (a2 * a2 + a2p));
        }
        return HeunJet{e, dedw / z, (d2edw2 - dedw) / (z * z)};
    }
};

const Params& EigenFunction::params() const { return impl_->params; }
Branch EigenFunction::branch() const { return impl_->branch; }
EigenFunction::Provenance EigenFunction::provenance() const { return impl_->provenance; }
Complex EigenFunction::value_at_one() const { return impl_->value_at_one; }
bool EigenFunction::is_zero() const { return impl_->zero; }
bool EigenFunction::near_degenerate() const { return impl_->near_degenerate; }
double EigenFunction::axis_extent() const { return impl_->axis_extent; }

HeunState EigenFunction::eval(CoverPoint p) const { return impl_->eval(p); }
HeunJet EigenFunction::eval_jet(CoverPoint p) const { return impl_->eval_jet(p); }

Jet1Fn EigenFunction::jet1() const {
    auto impl = impl_;
    return [impl](CoverPoint p) { return impl->eval(p); };
}

Jet2Fn EigenFunction::jet2() const {
    auto impl = impl_;
    return [impl](CoverPoint p) { return impl->eval_jet(p); };
}

EigenFunction eigenfunction_cauchy(const Params& params, Branch branch, Complex value_at_one,
                                   const EigenOptions& opt) {
    if (value_at_one == Complex(0.0, 0.0))
        throw std::invalid_argument("value_at_one must be nonzero");
    auto impl = std::make_shared<EigenFunction::Impl>();
    impl->params = params;
    impl->branch = branch;
    impl->provenance = EigenFunction::Provenance::cauchy;
    impl->value_at_one = value_at_one;
    impl->axis_extent = opt.axis_extent;
    impl->tol = opt.tol;
    impl->near_degenerate = std::abs(value_at_one) < kNearDegenerateTol;

    const HeunField field{params};
    Vec2c y0;
    y0[0] = value_at_one;
    y0[1] = (branch_sign(branch) / (2.0 * params.omega) + params.mu) * value_at_one;
    auto rhs = [&field](double s, const Vec2c& yy) {
        return Vec2c(kI * field(Complex(0.0, s), yy));
    };
    impl->axis_up = integrate(rhs, y0, 0.0, opt.axis_extent, opt.tol);
    impl->axis_down = integrate(rhs, y0, 0.0, -opt.axis_extent, opt.tol);
    return EigenFunction(std::move(impl));
}

EigenPair eigenpair_cauchy(const Params& params, Complex plus_value, Complex minus_value,
                           const EigenOptions& opt) {
    return EigenPair{eigenfunction_cauchy(params, Branch::plus, plus_value, opt),
                     eigenfunction_cauchy(params, Branch::minus, minus_value, opt),
                     std::nullopt};
}

Complex riccati_value_at_one(double phi0, int sign) {
    return Complex(std::cos(0.5 * phi0 + sign * 0.25 * kPi), 0.0);
}

EigenPair eigenpair_from_rsj(const Params& params, double phi0, const EigenOptions& opt) {
    const double t_reach = opt.axis_extent / params.omega;
    auto rsj = std::make_shared<const RsjSolution>(
        solve_rsj(params, phi0, -t_reach, t_reach, opt.tol));

    auto build = [&](Branch branch) {
        auto impl = std::make_shared<EigenFunction::Impl>();
        impl->params = params;
        impl->branch = branch;
        impl->provenance = EigenFunction::Provenance::riccati;
        impl->axis_extent = opt.axis_extent;
        impl->tol = opt.tol;
        impl->rsj = rsj;
        impl->value_at_one = riccati_value_at_one(phi0, branch_sign(branch));
        const double mag = std::abs(impl->value_at_one);
        impl->zero = mag < kZeroBranchTol;
        impl->near_degenerate = !impl->zero && mag < kNearDegenerateTol;
        return impl;
    };
    auto plus = build(Branch::plus);
    auto minus = build(Branch::minus);
    // At most one branch can vanish; the survivor keeps only the first
    // half-exponent term (the two terms coincide there).
    if (plus->zero && minus->zero)
        throw DegeneratePair("both branches vanished; inconsistent state");
    if (plus->zero) minus->factorized = true;
    if (minus->zero) plus->factorized = true;
    if (plus->zero) plus->value_at_one = Complex(0.0, 0.0);
    if (minus->zero) minus->value_at_one = Complex(0.0, 0.0);
    return EigenPair{EigenFunction(std::move(plus)), EigenFunction(std::move(minus)), phi0};
}

EigenPair branch_projections(const Params& params, Complex value_at_one,
                             Complex derivative_at_one, const EigenOptions& opt) {
    // opC E at the base point is 2 omega (E'(1) - mu E(1)); the projections
    // 1/2 (E ± opC E) are eigenfunctions, pinned by their base values.
    const Complex opc_at_one = 2.0 * params.omega * (derivative_at_one - params.mu * value_at_one);
    const Complex c_plus = 0.5 * (value_at_one + opc_at_one);
    const Complex c_minus = 0.5 * (value_at_one - opc_at_one);
    const double scale = std::abs(value_at_one) + std::abs(derivative_at_one);
    if (std::abs(c_plus) < 1e-12 * scale || std::abs(c_minus) < 1e-12 * scale)
        throw DegeneratePair("input solution is already an eigenfunction");
    return EigenPair{eigenfunction_cauchy(params, Branch::plus, c_plus, opt),
                     eigenfunction_cauchy(params, Branch::minus, c_minus, opt), std::nullopt};
}

std::vector<CoverPoint> identity_samples(int n_circle) {
    std::vector<CoverPoint> pts = circle_samples(n_circle);
    static constexpr double kOff[8][2] = {{0.2, 0.8},  {-0.2, 0.8},  {0.2, -2.0}, {-0.2, -2.0},
                                          {0.12, 1.9}, {-0.12, 1.9}, {0.12, -0.7}, {-0.12, -0.7}};
    for (const auto& uv : kOff) pts.push_back(CoverPoint{Complex(uv[0], uv[1])});
    return pts;
}

double IdentityReport::max_residual() const {
    double worst = 0.0;
    for (double r : {bilinear, wronskian, eigen_plus, eigen_minus, self_conj_plus,
                     self_conj_minus})
        if (!std::isnan(r)) worst = std::max(worst, r);
    return worst;
}

IdentityReport check_identities(const Params& params, const Jet1Fn& plus, const Jet1Fn& minus,
                                Complex plus_at_one, Complex minus_at_one, bool plus_zero,
                                bool minus_zero, int n_circle) {
    IdentityReport rep{kQnan, kQnan, kQnan, kQnan, kQnan, kQnan};
    const auto pts = identity_samples(n_circle);
    const bool pair_ok = !plus_zero && !minus_zero;

    auto eigen_residual = [&params](const Jet1Fn& f, int sign, CoverPoint p) {
        const HeunState fp = f(p);
        const HeunState fq = f(invert(p));
        const Complex lhs = fp.derivative;
        const Complex rhs = double(sign) / (2.0 * params.omega) *
                                power(p, -params.ell - 1.0) * fq.value +
                            params.mu * fp.value;
        return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
    };
    auto self_conj_residual = [](const Jet1Fn& f, CoverPoint p) {
        const Complex direct = f(p).value;
        const Complex mirrored = std::conj(f(CoverPoint{std::conj(p.w)}).value);
        return std::abs(mirrored - direct) / (1.0 + std::abs(direct));
    };

    double bil = 0.0, wron = 0.0, ep = 0.0, em = 0.0, scp = 0.0, scm = 0.0;
    for (const CoverPoint& p : pts) {
        const CoverPoint q = invert(p);
        if (!plus_zero) {
            ep = std::max(ep, eigen_residual(plus, +1, p));
            scp = std::max(scp, self_conj_residual(plus, p));
        }
        if (!minus_zero) {
            em = std::max(em, eigen_residual(minus, -1, p));
            scm = std::max(scm, self_conj_residual(minus, p));
        }
        if (pair_ok) {
            const HeunState pp = plus(p), pq = plus(q);
            const HeunState mp = minus(p), mq = minus(q);
            const Complex z = p.z();
            const Complex ex = std::exp(params.mu * (z + 1.0 / z - 2.0));
            const Complex bil_rhs = 2.0 * ex * plus_at_one * minus_at_one;
            const Complex bil_lhs = pp.value * mq.value + mp.value * pq.value;
            bil = std::max(bil, std::abs(bil_lhs - bil_rhs) / (1.0 + std::abs(bil_rhs)));
            const Complex w_rhs = power(p, -params.ell - 1.0) / params.omega * ex *
                                  plus_at_one * minus_at_one;
            const Complex w_lhs = pp.derivative * mp.value - pp.value * mp.derivative;
            wron = std::max(wron, std::abs(w_lhs - w_rhs) / (1.0 + std::abs(w_rhs)));
        }
    }
    if (!plus_zero) {
        rep.eigen_plus = ep;
        rep.self_conj_plus = scp;
    }
    if (!minus_zero) {
        rep.eigen_minus = em;
        rep.self_conj_minus = scm;
    }
    if (pair_ok) {
        rep.bilinear = bil;
        rep.wronskian = wron;
    }
    return rep;
}

IdentityReport check_identities(const EigenPair& pair, int n_circle) {
    return check_identities(pair.plus.params(), pair.plus.jet1(), pair.minus.jet1(),
                            pair.plus.value_at_one(), pair.minus.value_at_one(),
                            pair.plus.is_zero(), pair.minus.is_zero(), n_circle);
}

}  // namespace heunrsj
