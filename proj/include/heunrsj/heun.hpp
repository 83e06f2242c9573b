#ifndef HEUNRSJ_HEUN_HPP
#define HEUNRSJ_HEUN_HPP

#include <functional>
#include <span>

#include "heunrsj/cover.hpp"
#include "heunrsj/laurent.hpp"
#include "heunrsj/params.hpp"
#include "heunrsj/types.hpp"

namespace heunrsj {

/// Value and first z-derivative of a solution at a cover point.
struct HeunState {
    Complex value{0.0, 0.0};
    Complex derivative{0.0, 0.0};
};

/// Two-jet: value, dE/dz and d2E/dz2.
struct HeunJet {
    Complex value{0.0, 0.0};
    Complex d1{0.0, 0.0};
    Complex d2{0.0, 0.0};
};

using Jet1Fn = std::function<HeunState(CoverPoint)>;
using Jet2Fn = std::function<HeunJet(CoverPoint)>;

/// The second-order equation
///   z^2 E'' + ((ell+1) z + mu (1 - z^2)) E' + (-mu (ell+1) z + lambda) E = 0
/// as a first-order field for the state (E, E') in the cover coordinate w:
/// dE/dw = z E', dE'/dw = z E''.  z = exp(w) never vanishes on the cover, so
/// the field is smooth everywhere.
struct HeunField {
    Params params;
    Vec2c operator()(Complex w, const Vec2c& y) const {
        const Complex z = std::exp(w);
        const Complex second = second_derivative(params, z, y[0], y[1]);
        Vec2c d;
        d[0] = z * y[1];
        d[1] = z * second;
        return d;
    }

    /// E'' eliminated through the equation from (E, E') at projection z.
    static Complex second_derivative(const Params& p, Complex z, Complex value,
                                     Complex derivative) {
        const Complex z2 = z * z;
        return -(((p.ell + 1.0) * z + p.mu * (1.0 - z2)) * derivative +
                 (-p.mu * (p.ell + 1.0) * z + p.lambda) * value) /
               z2;
    }
};

inline HeunField heun_field(const Params& params) { return HeunField{params}; }

/// The characteristic operator: 2 omega z^{-ell-1} (E'(1/z) - mu E(1/z)),
/// with the inversion taken on the cover (fixed point at the base point).
Complex apply_op_c(const Params& params, const Jet1Fn& f, CoverPoint p);

/// d/dz of the operator image, with the needed second derivative supplied by
/// the jet rather than eliminated through the equation, so the result is an
/// honest measurement for functions that may not solve it.
Complex op_c_derivative(const Params& params, const Jet2Fn& f, CoverPoint p);

/// max over samples of |opC(opC f)(p) - f(p)| / (1 + |f(p)|).  Vanishes (to
/// the jet's accuracy) exactly on solutions of the equation.
double involutivity_residual(const Params& params, const Jet2Fn& f,
                             std::span<const CoverPoint> samples);

/// Analytic jet of a Laurent polynomial (fixture adaptor).
Jet2Fn laurent_jet(const LaurentPoly& poly);

/// Jet of exp(mu z), the lone eigenfunction with zero eigenvalue.
Jet2Fn exp_mu_jet(double mu);

/// 32-point (or n-point) uniform sample of the unit circle on the principal
/// sheet, w = i theta with theta in (-pi, pi).
std::vector<CoverPoint> circle_samples(int n);

}  // namespace heunrsj

#endif
