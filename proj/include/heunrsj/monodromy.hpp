#ifndef HEUNRSJ_MONODROMY_HPP
#define HEUNRSJ_MONODROMY_HPP

#include <string>

#include "heunrsj/eigenbasis.hpp"

namespace heunrsj {

/// Matrix of the once-around-zero continuation map on the solution space,
/// expressed in the eigen-basis with the row convention: the transported
/// E_j equals sum_k M[j][k] E_k.
struct MonodromyMatrix {
    enum class Source { closed_form, continuation };
    Mat2c m;
    Source source = Source::continuation;
    /// True when ell is integer, the regime in which the closed formula and
    /// the structural claims (equal real diagonal, imaginary off-diagonal,
    /// unit determinant) are established.
    bool order_verified = false;
};

/// Assembles the closed formula from the eigenfunction values at the two
/// nearest preimages of -1 (w = +i pi reached counterclockwise, w = -i pi
/// clockwise):
///   M = e^{4 mu} (2 E_+(1) E_-(1))^{-1} *
///       [ S        E_+(up)^2 - E_+(dn)^2 ]
///       [ E_-(up)^2 - E_-(dn)^2        S ],   S = E_+ E_-(up) + E_+ E_-(dn).
/// For non-integer ell the result is still evaluated but tagged unverified.
MonodromyMatrix monodromy_closed_form(const EigenPair& pair);

/// Ground-truth route: continues the basis Cauchy data along w: 0 -> 2 pi i
/// (loops times; negative loops go clockwise) and solves a 2x2 system
/// against the basis values at the base point.  Throws SingularBasis when
/// the base-point value/derivative matrix is numerically singular.
MonodromyMatrix monodromy_continuation(const Params& params, const EigenPair& pair,
                                       int loops = 1, Tolerances tol = {1e-12, 1e-14});

enum class LockClass { locked, unlocked, boundary };

std::string to_string(LockClass c);

/// Re(trace^2 / (4 det)) - 1.  The normalized discriminant is real for real
/// parameters (conj M = M^{-1}), positive exactly when the eigenvalue pair is
/// real with distinct moduli, and reduces to (trace/2)^2 - 1 = m12 m21 for
/// integer orders where det = 1.
double lock_discriminant(const Mat2c& m);

LockClass classify_discriminant(double disc, double tol);

/// sqrt(|m12 m21|): conjugation-invariant size of the off-diagonal part.
double off_diag_magnitude(const Mat2c& m);

/// Phase-lock classification for integer-order matrices: locked when
/// |trace/2| > 1 + tol, unlocked when |trace/2| < 1 - tol, boundary when an
/// off-diagonal entry's magnitude is below tol or ||trace/2| - 1| <= tol.
/// Verifies the structural invariants first and throws StructureViolated
/// when they fail beyond 10 x tol.
LockClass phase_lock(const MonodromyMatrix& mm, double tol = 1e-6);

}  // namespace heunrsj

#endif
