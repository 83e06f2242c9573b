#include "heunrsj/params.hpp"

#include <cmath>

#include "heunrsj/errors.hpp"

namespace heunrsj {

bool is_integer_order(double ell) {
    return std::abs(ell - std::round(ell)) < 1e-12;
}

Params derive_params(double ell, double mu, double omega) {
    if (mu == 0.0) throw ZeroMu();
    if (!(omega > 0.0)) throw NonPositiveOmega();
    Params p;
    p.ell = ell;
    p.mu = mu;
    p.omega = omega;
    p.lambda = 1.0 / (4.0 * omega * omega) - mu * mu;
    p.bias_a = 2.0 * omega * mu;
    p.bias_b = omega * ell;
    p.ell_integer = is_integer_order(ell);
    return p;
}

Params params_from_heun(double ell, double mu, double lambda) {
    if (mu == 0.0) throw ZeroMu();
    if (!(lambda + mu * mu > 0.0)) throw DegenerateScaling();
    const double omega = 1.0 / (2.0 * std::sqrt(lambda + mu * mu));
    return derive_params(ell, mu, omega);
}

Params params_from_bias(double bias_a, double bias_b, double omega) {
    if (!(omega > 0.0)) throw NonPositiveOmega();
    return derive_params(bias_b / omega, bias_a / (2.0 * omega), omega);
}

}  // namespace heunrsj
