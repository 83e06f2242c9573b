#ifndef HEUNRSJ_EIGENBASIS_HPP
#define HEUNRSJ_EIGENBASIS_HPP

#include <memory>
#include <optional>
#include <vector>

#include "heunrsj/heun.hpp"
#include "heunrsj/odeint.hpp"
#include "heunrsj/params.hpp"
#include "heunrsj/rsj.hpp"

namespace heunrsj {

/// The two eigen-branches of the characteristic operator restricted to the
/// solution space; the eigenvalue is the sign itself.
enum class Branch : int { plus = +1, minus = -1 };

inline int branch_sign(Branch b) { return static_cast<int>(b); }

class EigenFunction;
struct EigenPair;
struct EigenOptions;

EigenFunction eigenfunction_cauchy(const Params& params, Branch branch, Complex value_at_one,
                                   const EigenOptions& opt);
EigenPair eigenpair_from_rsj(const Params& params, double phi0, const EigenOptions& opt);

struct EigenOptions {
    // |Im w| range of the stored axis network.  Evaluation past it extends
    // on demand with a fresh integration, so this is a cost knob, not a hard
    // domain bound.
    double axis_extent = kPi + 0.25;
    Tolerances tol{1e-12, 1e-14};
};

/// One eigen-branch solution, evaluable anywhere on the cover.  Two builds
/// are available: Cauchy data at the base point (value plus the forced
/// derivative (±(2 omega)^{-1} + mu) value), and the quadrature route through
/// the phase-equation variables chi = log Phi, sigma = log Psi.
///
/// Construction integrates the circle axis w = i v, |v| <= axis_extent, once;
/// off-axis points add a short radial integration per call.  All evaluation
/// is const and safe to call concurrently.
class EigenFunction {
  public:
    enum class Provenance { cauchy, riccati };

    const Params& params() const;
    Branch branch() const;
    Provenance provenance() const;
    /// E at the base point.  Nonzero for every genuine eigenfunction; zero
    /// exactly when this is the stored identically-zero degenerate marker.
    Complex value_at_one() const;
    bool is_zero() const;
    /// |E(1)| < 1e-6 but nonzero: built normally, flagged for consumers.
    bool near_degenerate() const;
    double axis_extent() const;

    /// (E, dE/dz) at p.
    HeunState eval(CoverPoint p) const;
    /// Adds d2E/dz2, measured from the stored representation (interpolant
    /// derivative for the Cauchy build, closed-form differentiation for the
    /// quadrature build) rather than eliminated through the equation.
    HeunJet eval_jet(CoverPoint p) const;

    Jet1Fn jet1() const;
    Jet2Fn jet2() const;

    struct Impl;

  private:
    friend EigenFunction eigenfunction_cauchy(const Params&, Branch, Complex,
                                              const EigenOptions&);
    friend EigenPair eigenpair_from_rsj(const Params&, double, const EigenOptions&);
    explicit EigenFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

struct EigenPair {
    EigenFunction plus;
    EigenFunction minus;
    std::optional<double> phi0;  // present for the quadrature route

    bool degenerate() const { return plus.is_zero() || minus.is_zero(); }
    const EigenFunction& branch(Branch b) const {
        return b == Branch::plus ? plus : minus;
    }
};

/// Integrates the equation from the constrained Cauchy data
/// E(1) = value_at_one, E'(1) = (sign (2 omega)^{-1} + mu) value_at_one.
EigenFunction eigenfunction_cauchy(const Params& params, Branch branch, Complex value_at_one,
                                   const EigenOptions& opt = {});

/// Cauchy pair with independent base values (default 1 for both branches;
/// never degenerate).
EigenPair eigenpair_cauchy(const Params& params, Complex plus_value = Complex(1.0, 0.0),
                           Complex minus_value = Complex(1.0, 0.0),
                           const EigenOptions& opt = {});

/// The quadrature route: solves the phase equation with phi(0) = phi0, sets
/// chi = i phi and sigma = P on the circle, and assembles both branches from
/// the half-exponent combination
///   E_s = 1/2 e^{mu(z + 1/z - 2)/2} z^{-ell/2}
///         [ (1+si)/sqrt2 e^{(sigma+chi)/2} + (1-si)/sqrt2 e^{(sigma-chi)/2 at 1/z} ].
/// A branch whose base value cos(phi0/2 + s pi/4) vanishes (phi0 = +-pi/2
/// mod 2 pi) becomes an explicit zero marker and the live branch switches to
/// the factorized single-term form.
EigenPair eigenpair_from_rsj(const Params& params, double phi0, const EigenOptions& opt = {});

/// E_s(1) of the quadrature route, in closed form: cos(phi0/2 + s pi/4).
Complex riccati_value_at_one(double phi0, int sign);

inline HeunState eval_eigen(const EigenFunction& f, CoverPoint p) { return f.eval(p); }

/// Splits a generic solution, given by its unconstrained Cauchy data at the
/// base point, into the two eigen-branches via 1/2 (E ± opC E).  Throws
/// DegeneratePair when either projection vanishes (the input was already an
/// eigenfunction).
EigenPair branch_projections(const Params& params, Complex value_at_one,
                             Complex derivative_at_one, const EigenOptions& opt = {});

/// Max relative residuals of the structural identities over a sample set of
/// circle points plus a fixed set of off-circle points (|Re w| <= 0.2).
/// NaN entries mean "not applicable" (degenerate branch).
struct IdentityReport {
    double bilinear;
    double wronskian;
    double eigen_plus;
    double eigen_minus;
    double self_conj_plus;
    double self_conj_minus;

    double max_residual() const;
};

IdentityReport check_identities(const EigenPair& pair, int n_circle = 32);

/// Same, over externally supplied evaluators (lets tests inject faults).
IdentityReport check_identities(const Params& params, const Jet1Fn& plus, const Jet1Fn& minus,
                                Complex plus_at_one, Complex minus_at_one, bool plus_zero,
                                bool minus_zero, int n_circle);

/// n circle points plus the 8 off-circle probes used by check_identities.
std::vector<CoverPoint> identity_samples(int n_circle);

}  // namespace heunrsj

#endif
