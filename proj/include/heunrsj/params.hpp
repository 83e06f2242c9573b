#ifndef HEUNRSJ_PARAMS_HPP
#define HEUNRSJ_PARAMS_HPP

#include "heunrsj/types.hpp"

namespace heunrsj {

/// Constant parameters (ell, mu, omega) together with the derived quantities
/// they determine: the spectral parameter lambda = (2 omega)^{-2} - mu^2 and
/// the bias pair A = 2 omega mu, B = omega ell of the driven phase equation.
///
/// Immutable value type; freely shareable between threads.
struct Params {
    double ell = 0.0;
    double mu = 0.0;
    double omega = 0.0;
    double lambda = 0.0;
    double bias_a = 0.0;
    double bias_b = 0.0;
    // |ell - round(ell)| < 1e-12.  The closed-form monodromy matrix is only
    // fully trusted for integer orders; consumers check this flag.
    bool ell_integer = false;

    double a() const { return bias_a; }
    double b() const { return bias_b; }
};

/// Fills the derived fields from (ell, mu, omega).
/// Throws ZeroMu / NonPositiveOmega on inadmissible input.
Params derive_params(double ell, double mu, double omega);

/// Recovers omega from (ell, mu, lambda) via 4 omega^2 (lambda + mu^2) = 1,
/// always taking the positive root.  Throws DegenerateScaling when
/// lambda + mu^2 <= 0.
Params params_from_heun(double ell, double mu, double lambda);

/// Inverse of the bias map: mu = A / (2 omega), ell = B / omega.
Params params_from_bias(double bias_a, double bias_b, double omega);

/// True when |ell - round(ell)| < 1e-12.
bool is_integer_order(double ell);

}  // namespace heunrsj

#endif
