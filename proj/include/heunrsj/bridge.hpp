#ifndef HEUNRSJ_BRIDGE_HPP
#define HEUNRSJ_BRIDGE_HPP

#include <span>
#include <utility>
#include <vector>

#include "heunrsj/eigenbasis.hpp"

namespace heunrsj {

/// The angular parameter selecting one phase solution from an eigen-pair.
/// Constructed so the base-point constraint
///   E_-(1) sin(phi0/2 - pi/4) sin(a/2) + E_+(1) cos(phi0/2 - pi/4) cos(a/2) = 0
/// holds to 1e-10 at construction.
struct Alpha {
    double value = 0.0;  // in [0, 2 pi)
};

/// Solves the base-point constraint for alpha given phi(0) = phi0, in closed
/// form: alpha = 2 atan2(E_+(1) cos(phi0/2 - pi/4), -E_-(1) sin(phi0/2 - pi/4)).
/// Throws DegeneratePair for pairs with a zero branch.
Alpha alpha_from_phi0(const EigenPair& pair, double phi0);

/// Left-hand side of the base-point constraint (diagnostic).
double alpha_constraint(const EigenPair& pair, double alpha, double phi0);

/// The unimodular circle function
///   Phi(z) = -i z^ell (cos(a/2) E_+(z) + i sin(a/2) E_-(z))
///                   / (cos(a/2) E_+(1/z) - i sin(a/2) E_-(1/z))
/// evaluated at z = e^{i omega t} (cover point w = i omega t).  Verifies
/// |Phi| = 1 within 1e-8 (NonUnimodular otherwise) and that the denominator
/// stays away from zero (DenominatorVanished otherwise).
Complex bridge_phi_value(const EigenPair& pair, Alpha alpha, double t);

/// Theta and its dual, each from its own formula so the duality
/// theta_dual(t) == conj(theta(t)) remains a checkable statement.
Complex bridge_theta(const EigenPair& pair, Alpha alpha, double t);
Complex bridge_theta_dual(const EigenPair& pair, Alpha alpha, double t);

/// Continuous unwrapped phase with e^{i phi(t)} = Phi(e^{i omega t}),
/// anchored at the principal value of arg Phi(1) and continued along the
/// grid with automatic refinement (successive arguments kept below pi).
/// Returns phi at the given t values (any order).
std::vector<double> phi_from_eigen(const EigenPair& pair, Alpha alpha,
                                   std::span<const double> t_grid);

struct ThetaPair {
    std::vector<double> t;
    std::vector<Complex> theta;
    std::vector<Complex> theta_dual;
    // Report-only: max centered-difference residual on the grid of
    // i omega z Theta' = -Phi^{-1} (Theta - ThetaDual).
    double ode_residual = 0.0;
};

/// Evaluates both formulas on the grid (ascending t expected).
ThetaPair theta(const EigenPair& pair, Alpha alpha, std::span<const double> t_grid);

/// P(t) = -log(-Im Theta), Q(t) = Re Theta on the grid.  Throws LogDomain(t)
/// where -Im Theta <= 0.
std::pair<std::vector<double>, std::vector<double>> recover_pq(const EigenPair& pair,
                                                               Alpha alpha,
                                                               std::span<const double> t_grid);

/// |phi' + sin phi - B - A cos(omega t)| at t, the recovered phase
/// differentiated with a 5-point fourth-order stencil of spacing h.
double bridge_rsj_residual(const EigenPair& pair, Alpha alpha, double t, double h = 1e-3);

/// Max over the grid of the two coupled residuals
///   d/dt Re Theta + Im Theta sin phi,   d/dt Im Theta + Im Theta cos phi,
/// with the derivatives from 5-point stencils of spacing h.
double theta_flow_residual(const EigenPair& pair, Alpha alpha, std::span<const double> t_grid,
                           double h = 1e-3);

}  // namespace heunrsj

#endif
