#include "heunrsj/heun.hpp"

#include <cmath>

namespace heunrsj {

Complex apply_op_c(const Params& params, const Jet1Fn& f, CoverPoint p) {
    const CoverPoint q = invert(p);
    const HeunState fq = f(q);
    return 2.0 * params.omega * power(p, -params.ell - 1.0) *
           (fq.derivative - params.mu * fq.value);
}

Complex op_c_derivative(const Params& params, const Jet2Fn& f, CoverPoint p) {
    const CoverPoint q = invert(p);
    const HeunJet fq = f(q);
    const double l1 = params.ell + 1.0;
    return 2.0 * params.omega *
           (-l1 * power(p, -params.ell - 2.0) * (fq.d1 - params.mu * fq.value) -
            power(p, -params.ell - 3.0) * (fq.d2 - params.mu * fq.d1));
}

double involutivity_residual(const Params& params, const Jet2Fn& f,
                             std::span<const CoverPoint> samples) {
    // One-jet of g = opC f, all the outer application needs.
    const Jet1Fn f1 = [&f](CoverPoint r) {
        const HeunJet j = f(r);
        return HeunState{j.value, j.d1};
    };
    auto g = [&](CoverPoint q) {
        return HeunState{apply_op_c(params, f1, q), op_c_derivative(params, f, q)};
    };
    double worst = 0.0;
    for (const CoverPoint& p : samples) {
        const CoverPoint q = invert(p);
        const HeunState gq = g(q);
        const Complex twice =
            2.0 * params.omega * power(p, -params.ell - 1.0) *
            (gq.derivative - params.mu * gq.value);
        const Complex fp = f(p).value;
        worst = std::max(worst, std::abs(twice - fp) / (1.0 + std::abs(fp)));
    }
    return worst;
}

Jet2Fn laurent_jet(const LaurentPoly& poly) {
    const LaurentPoly d1 = poly.derivative();
    const LaurentPoly d2 = d1.derivative();
    return [poly, d1, d2](CoverPoint p) {
        return HeunJet{poly.eval(p), d1.eval(p), d2.eval(p)};
    };
}

Jet2Fn exp_mu_jet(double mu) {
    return [mu](CoverPoint p) {
        const Complex e = std::exp(mu * p.z());
        return HeunJet{e, mu * e, mu * mu * e};
    };
}

std::vector<CoverPoint> circle_samples(int n) {
    std::vector<CoverPoint> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double theta = -kPi + 2.0 * kPi * (i + 0.5) / n;
        pts.push_back(CoverPoint{Complex(0.0, theta)});
    }
    return pts;
}

}  // namespace heunrsj
