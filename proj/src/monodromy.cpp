#include "heunrsj/monodromy.hpp"

#include <cmath>

#include <Eigen/LU>

#include "heunrsj/errors.hpp"

namespace heunrsj {

MonodromyMatrix monodromy_closed_form(const EigenPair& pair) {
    if (pair.degenerate())
        throw DegeneratePair("monodromy requires a non-degenerate pair");
    const Params& par = pair.plus.params();
    const Complex ep_up = pair.plus.eval(cover_minus_one_ccw()).value;
    const Complex em_up = pair.minus.eval(cover_minus_one_ccw()).value;
    const Complex ep_dn = pair.plus.eval(cover_minus_one_cw()).value;
    const Complex em_dn = pair.minus.eval(cover_minus_one_cw()).value;
    const Complex pref = std::exp(4.0 * par.mu) /
                         (2.0 * pair.plus.value_at_one() * pair.minus.value_at_one());
    const Complex diag = ep_up * em_up + ep_dn * em_dn;
    MonodromyMatrix mm;
    mm.source = MonodromyMatrix::Source::closed_form;
    mm.order_verified = par.ell_integer;
    mm.m(0, 0) = pref * diag;
    mm.m(0, 1) = pref * (ep_up * ep_up - ep_dn * ep_dn);
    mm.m(1, 0) = pref * (em_up * em_up - em_dn * em_dn);
    mm.m(1, 1) = pref * diag;
    return mm;
}

MonodromyMatrix monodromy_continuation(const Params& params, const EigenPair& pair,
                                       int loops, Tolerances tol) {
    if (pair.degenerate())
        throw DegeneratePair("monodromy requires a non-degenerate pair");
    if (loops == 0) throw std::invalid_argument("loops must be nonzero");

    const HeunState plus1 = pair.plus.eval(cover_one());
    const HeunState minus1 = pair.minus.eval(cover_one());
    Mat2c basis;
    basis << plus1.value, minus1.value, plus1.derivative, minus1.derivative;

    const double fro2 = std::norm(basis(0, 0)) + std::norm(basis(0, 1)) +
                        std::norm(basis(1, 0)) + std::norm(basis(1, 1));
    const double adet = std::abs(basis.determinant());
    // 2x2 spectral condition number from the singular values.
    const double ratio = fro2 / (2.0 * std::max(adet, 1e-300));
    const double cond = ratio + std::sqrt(std::max(ratio * ratio - 1.0, 0.0));
    if (!(cond < 1e12)) throw SingularBasis("basis value/derivative matrix is singular");

    const HeunField field{params};
    const CoverPath loop =
        arc(cover_one(), CoverPoint{Complex(0.0, 2.0 * kPi * loops)},
            std::max(8, 16 * std::abs(loops)));
    IntegrateOptions opt;
    opt.dense = false;

    MonodromyMatrix mm;
    mm.source = MonodromyMatrix::Source::continuation;
    mm.order_verified = params.ell_integer;
    const HeunState starts[2] = {plus1, minus1};
    for (int j = 0; j < 2; ++j) {
        Vec2c y0;
        y0[0] = starts[j].value;
        y0[1] = starts[j].derivative;
        const Vec2c yend = integrate_path(field, y0, loop, tol, opt).final_state();
        // Transported E_j read against the basis at the same projected point.
        const Vec2c coords = basis.partialPivLu().solve(yend);
        mm.m(j, 0) = coords[0];
        mm.m(j, 1) = coords[1];
    }
    return mm;
}

std::string to_string(LockClass c) {
    switch (c) {
        case LockClass::locked: return "locked";
        case LockClass::unlocked: return "unlocked";
        default: return "boundary";
    }
}

double lock_discriminant(const Mat2c& m) {
    const Complex tr = m(0, 0) + m(1, 1);
    const Complex det = m.determinant();
    return (tr * tr / (4.0 * det)).real() - 1.0;
}

LockClass classify_discriminant(double disc, double tol) {
    if (disc > tol) return LockClass::locked;
    if (disc < -tol) return LockClass::unlocked;
    return LockClass::boundary;
}

double off_diag_magnitude(const Mat2c& m) {
    return std::sqrt(std::abs(m(0, 1) * m(1, 0)));
}

LockClass phase_lock(const MonodromyMatrix& mm, double tol) {
    const Mat2c& m = mm.m;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double structure =
        std::max({std::abs(m(0, 0) - m(1, 1)), std::abs(m(0, 0).imag()),
                  std::abs(m(1, 1).imag()), std::abs(m(0, 1).real()), std::abs(m(1, 0).real()),
                  std::abs(m.determinant() - Complex(1.0, 0.0))});
    if (structure > 10.0 * tol * scale)
        throw StructureViolated("monodromy matrix violates the integer-order structure");
    const double half_trace = 0.5 * (m(0, 0) + m(1, 1)).real();
    if (std::abs(m(0, 1)) < tol || std::abs(m(1, 0)) < tol ||
        std::abs(std::abs(half_trace) - 1.0) <= tol)
        return LockClass::boundary;
    if (std::abs(half_trace) > 1.0 + tol) return LockClass::locked;
    if (std::abs(half_trace) < 1.0 - tol) return LockClass::unlocked;
    return LockClass::boundary;
}

}  // namespace heunrsj
