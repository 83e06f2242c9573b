#ifndef HEUNRSJ_RSJ_HPP
#define HEUNRSJ_RSJ_HPP

#include "heunrsj/odeint.hpp"
#include "heunrsj/params.hpp"
#include "heunrsj/types.hpp"

namespace heunrsj {

/// The driven overdamped phase equation with its two attached quadratures,
/// as one autonomous-in-state field over t:
///   phi' = B + A cos(omega t) - sin(phi)
///   P'   = cos(phi)
///   Q'   = exp(-P) sin(phi)
struct RsjField {
    Params params;
    Vec3d operator()(double t, const Vec3d& y) const {
        const double phi = y[0];
        Vec3d d;
        d[0] = params.bias_b + params.bias_a * std::cos(params.omega * t) - std::sin(phi);
        d[1] = std::cos(phi);
        d[2] = std::exp(-y[1]) * std::sin(phi);
        return d;
    }
};

/// Dense real solution (phi, P, Q) on an interval containing t = 0, with the
/// quadratures anchored at P(0) = Q(0) = 0 and phi stored unwrapped
/// (continuous, not reduced mod 2 pi).  Immutable and shareable.
class RsjSolution {
  public:
    const Params& params() const { return params_; }
    double phi0() const { return phi0_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }

    /// (phi, P, Q) at t.
    Vec3d eval(double t) const;
    /// Interpolant time derivative of (phi, P, Q) at t.
    Vec3d eval_derivative(double t) const;

    double phi(double t) const { return eval(t)[0]; }
    double p(double t) const { return eval(t)[1]; }
    double q(double t) const { return eval(t)[2]; }

  private:
    friend RsjSolution solve_rsj(const Params&, double, double, double, Tolerances);
    Params params_;
    double phi0_ = 0.0;
    double t_min_ = 0.0, t_max_ = 0.0;
    // Integrated outward from t = 0 in both directions.
    DenseSolution<Vec3d> forward_, backward_;
    bool has_forward_ = false, has_backward_ = false;
};

// The stored interpolant is differentiated when residuals are checked, which
// costs roughly two orders of accuracy; the tighter default keeps those
// residuals comfortably below 1e-7.
inline constexpr Tolerances kRsjTol{1e-12, 1e-14};

/// Integrates the field from t = 0 outward over [t_lo, t_hi] (which must
/// contain 0) with initial phase phi0.
RsjSolution solve_rsj(const Params& params, double phi0, double t_lo, double t_hi,
                      Tolerances tol = kRsjTol);

/// Same over the principal interval (-pi/omega, pi/omega).
RsjSolution solve_rsj(const Params& params, double phi0, Tolerances tol = kRsjTol);

/// [phi(2 pi n / omega) - phi0] / (2 pi n): the average phase winding per
/// forcing period, an estimate of the rotation number of the period map.
/// Requires n_periods >= 16.
double rotation_number(const Params& params, double phi0, int n_periods,
                       Tolerances tol = kRsjTol);

/// Phase after exactly one forcing period: phi(2 pi / omega) from phi(0) = phi0.
double period_map(const Params& params, double phi0, Tolerances tol = kRsjTol);

/// Max over n_samples uniform t of |phi' + sin phi - B - A cos(omega t)|,
/// with phi' taken from the dense interpolant.
double rsj_residual(const RsjSolution& sol, int n_samples = 100);

}  // namespace heunrsj

#endif
