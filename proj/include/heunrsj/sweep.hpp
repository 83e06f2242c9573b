#ifndef HEUNRSJ_SWEEP_HPP
#define HEUNRSJ_SWEEP_HPP

#include <vector>

#include "heunrsj/monodromy.hpp"
#include "heunrsj/rsj.hpp"

namespace heunrsj {

struct SweepOptions {
    double omega = 1.0;
    double amp = 0.6;  // drive amplitude A (mu = A / (2 omega))
    double b_lo = 0.0;
    double b_hi = 2.0;
    int steps = 101;
    int n_periods = 256;
    double phi0 = 0.0;
    int jobs = 1;
    double class_tol = 1e-6;
    Tolerances rotation_tol = kRsjTol;
    Tolerances mono_tol{1e-12, 1e-14};
};

struct SweepRow {
    double b, a, omega, ell, mu;
    LockClass cls = LockClass::boundary;
    double off_diag_abs = 0.0;
    double trace_re = 0.0;
    double rotation = 0.0;
    double discriminant = 0.0;
};

/// Normalized discriminant of the continuation-route matrix at bias point
/// (B, A, omega), built directly from the constrained Cauchy data (no pair
/// object needed).  Positive inside a phase-locked tongue.
double sweep_discriminant(double omega, double amp, double b, Tolerances tol = {1e-12, 1e-14});

/// Grid sweep over B.  Cells are independent and evaluated in parallel when
/// jobs > 1; output order is by grid index, so results are deterministic.
std::vector<SweepRow> run_sweep(const SweepOptions& opt);

/// Fixed-point test of the period map against the 2 pi n shift: locked in
/// tongue n exactly when the displacement phi(2 pi / omega) - phi0 - 2 pi n
/// changes sign over phi0.  The coarse scan is refined around its extrema.
bool period_map_locked(const Params& params, int tongue, int phi_samples = 64,
                       Tolerances tol = kRsjTol);

/// Bisects the lock/unlock transition of a boolean indicator bracketed by
/// b_in (locked) and b_out (unlocked) down to width tol_b.
double bisect_monodromy_edge(double omega, double amp, double b_in, double b_out, double tol_b,
                             Tolerances tol = {1e-12, 1e-14});
double bisect_period_edge(double omega, double amp, int tongue, double b_in, double b_out,
                          double tol_b, Tolerances tol = kRsjTol);

}  // namespace heunrsj

#endif
