#include <doctest.h>

#include <cmath>
#include <random>

#include "heunrsj/eigenbasis.hpp"
#include "heunrsj/errors.hpp"

using namespace heunrsj;

namespace {

const Params kRef = derive_params(2.0, 1.0, 0.5);

double rel_gap(Complex a, Complex b, double scale) { return std::abs(a - b) / scale; }

}  // namespace

TEST_SUITE("eigenbasis") {

TEST_CASE("cauchy anchor and constrained slope") {
    for (Branch b : {Branch::plus, Branch::minus}) {
        const EigenFunction e = eigenfunction_cauchy(kRef, b, Complex(1.0, 0.0));
        const HeunState at_one = e.eval(cover_one());
        CHECK(at_one.value == Complex(1.0, 0.0));
        const Complex slope =
            Complex(branch_sign(b) / (2.0 * kRef.omega) + kRef.mu, 0.0);
        CHECK(std::abs(at_one.derivative - slope) == 0.0);
    }
    CHECK_THROWS_AS(eigenfunction_cauchy(kRef, Branch::plus, Complex(0.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("cauchy route satisfies the eigen-relation on the circle") {
    for (Branch b : {Branch::plus, Branch::minus}) {
        const EigenFunction e = eigenfunction_cauchy(kRef, b, Complex(1.0, 0.0));
        const double s = branch_sign(b);
        for (const CoverPoint& p : circle_samples(32)) {
            const HeunState ep = e.eval(p);
            const HeunState eq = e.eval(invert(p));
            const Complex resid = ep.derivative -
                                  s / (2.0 * kRef.omega) * power(p, -kRef.ell - 1.0) * eq.value -
                                  kRef.mu * ep.value;
            CHECK(std::abs(resid) < 1e-7);
        }
    }
}

TEST_CASE("cauchy route is an eigenvector of the operator") {
    for (Branch b : {Branch::plus, Branch::minus}) {
        const EigenFunction e = eigenfunction_cauchy(kRef, b, Complex(1.0, 0.0));
        for (const CoverPoint& p : identity_samples(16)) {
            const Complex image = apply_op_c(kRef, e.jet1(), p);
            CHECK(std::abs(image - double(branch_sign(b)) * e.eval(p).value) < 1e-7);
        }
    }
}

TEST_CASE("rogue eigenvalues violate the eigen-relation") {
    // Cauchy data with slope nu/(2 omega) + mu for nu outside {+1, -1} cannot
    // satisfy the relation for either sign.
    const HeunField field{kRef};
    for (double nu : {0.5, 2.0, -0.3}) {
        Vec2c y0;
        y0[0] = Complex(1.0, 0.0);
        y0[1] = Complex(nu / (2.0 * kRef.omega) + kRef.mu, 0.0);
        auto rhs = [&field](double s, const Vec2c& yy) {
            return Vec2c(kI * field(Complex(0.0, s), yy));
        };
        const auto up = integrate(rhs, y0, 0.0, 1.5, {1e-12, 1e-14});
        const auto down = integrate(rhs, y0, 0.0, -1.5, {1e-12, 1e-14});
        double best = 1e300;
        for (double s : {+1.0, -1.0}) {
            double worst = 0.0;
            for (double v : {0.4, 0.9, 1.3}) {
                const Vec2c yp = up.eval(v);
                const Vec2c yq = down.eval(-v);
                const CoverPoint p{Complex(0.0, v)};
                const Complex resid = yp[1] -
                                      s / (2.0 * kRef.omega) * power(p, -kRef.ell - 1.0) * yq[0] -
                                      kRef.mu * yp[0];
                worst = std::max(worst, std::abs(resid));
            }
            best = std::min(best, worst);
        }
        CHECK(best > 1e-3);
    }
}

TEST_CASE("scale equivariance of the cauchy construction") {
    const Complex c(1.7, -0.4);
    const EigenFunction base = eigenfunction_cauchy(kRef, Branch::plus, Complex(1.0, 0.0));
    const EigenFunction scaled = eigenfunction_cauchy(kRef, Branch::plus, c);
    for (const CoverPoint& p : identity_samples(12)) {
        const HeunState a = base.eval(p);
        const HeunState b = scaled.eval(p);
        CHECK(std::abs(b.value - c * a.value) <= 1e-12 * (1.0 + std::abs(c * a.value)));
        CHECK(std::abs(b.derivative - c * a.derivative) <=
              1e-12 * (1.0 + std::abs(c * a.derivative)));
    }
}

TEST_CASE("base values of the quadrature route") {
    // cos(phi0/2 + s pi/4) at phi0 = 0 gives sqrt(2)/2 on both branches.
    const EigenPair pair = eigenpair_from_rsj(kRef, 0.0);
    CHECK(std::real(pair.plus.value_at_one()) == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(std::real(pair.minus.value_at_one()) == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK_FALSE(pair.degenerate());
    CHECK(pair.phi0.has_value());
    // The evaluated base point reproduces the closed-form value.
    CHECK(std::abs(pair.plus.eval(cover_one()).value - pair.plus.value_at_one()) < 1e-12);
    CHECK(std::abs(pair.minus.eval(cover_one()).value - pair.minus.value_at_one()) < 1e-12);
}

TEST_CASE("quadrature route satisfies the eigen-relation and reality") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u_phi(-2.5, 2.5);
    for (int trial = 0; trial < 4; ++trial) {
        const Params par = derive_params(trial % 3, 0.4 + 0.4 * trial, 0.35 + 0.3 * trial);
        const double phi0 = u_phi(rng);
        const EigenPair pair = eigenpair_from_rsj(par, phi0);
        const IdentityReport rep = check_identities(pair, 16);
        CHECK(rep.max_residual() < 1e-7);
    }
}

TEST_CASE("route agreement") {
    // The quadrature build matched by its base value against the Cauchy build.
    for (double phi0 : {0.0, 1.0, -2.2}) {
        const EigenPair ric = eigenpair_from_rsj(kRef, phi0);
        for (Branch b : {Branch::plus, Branch::minus}) {
            const EigenFunction cau =
                eigenfunction_cauchy(kRef, b, ric.branch(b).value_at_one());
            double scale = 0.0;
            const auto pts = circle_samples(32);
            for (const CoverPoint& p : pts)
                scale = std::max(scale, std::abs(cau.eval(p).value));
            for (const CoverPoint& p : pts) {
                CHECK(rel_gap(ric.branch(b).eval(p).value, cau.eval(p).value, scale) < 1e-6);
            }
        }
    }
}

TEST_CASE("degenerate branch at phi0 = pi/2") {
    const EigenPair pair = eigenpair_from_rsj(kRef, kPi / 2);
    CHECK(pair.plus.is_zero());
    CHECK_FALSE(pair.minus.is_zero());
    CHECK(pair.degenerate());
    CHECK(pair.plus.eval(cover_minus_one_ccw()).value == Complex(0.0, 0.0));
    // The live branch, rebuilt from the factorized form, still satisfies the
    // eigen-relation.
    for (const CoverPoint& p : circle_samples(32)) {
        const HeunState ep = pair.minus.eval(p);
        const HeunState eq = pair.minus.eval(invert(p));
        const Complex resid = ep.derivative +
                              1.0 / (2.0 * kRef.omega) * power(p, -kRef.ell - 1.0) * eq.value -
                              kRef.mu * ep.value;
        CHECK(std::abs(resid) < 1e-7);
    }
    // Mirror case: phi0 = -pi/2 kills the minus branch.
    const EigenPair mirror = eigenpair_from_rsj(kRef, -kPi / 2);
    CHECK(mirror.minus.is_zero());
    CHECK_FALSE(mirror.plus.is_zero());
}

TEST_CASE("near-degenerate pairs are flagged but built") {
    const EigenPair pair = eigenpair_from_rsj(kRef, kPi / 2 - 1e-7);
    CHECK_FALSE(pair.plus.is_zero());
    CHECK(pair.plus.near_degenerate());
    CHECK_FALSE(pair.minus.near_degenerate());
}

TEST_CASE("identity residuals on a healthy pair") {
    const EigenPair pair = eigenpair_from_rsj(kRef, 0.0);
    const IdentityReport rep = check_identities(pair, 32);
    CHECK(rep.bilinear < 1e-7);
    CHECK(rep.wronskian < 1e-7);
    CHECK(rep.eigen_plus < 1e-7);
    CHECK(rep.eigen_minus < 1e-7);
    CHECK(rep.self_conj_plus < 1e-8);
    CHECK(rep.self_conj_minus < 1e-8);
}

TEST_CASE("linear independence away from degeneracy") {
    const EigenPair pair = eigenpair_from_rsj(kRef, 0.4);
    const HeunState p1 = pair.plus.eval(cover_one());
    const HeunState m1 = pair.minus.eval(cover_one());
    const Complex wronskian = p1.derivative * m1.value - p1.value * m1.derivative;
    CHECK(std::abs(wronskian) > 1e-8 * std::abs(p1.value * m1.value));
}

TEST_CASE("fault injection is detected by the checker") {
    const EigenPair pair = eigenpair_from_rsj(kRef, 0.0);
    // Scale the minus values without touching derivatives: breaks the
    // value/derivative coupling the eigen-relation encodes.
    const Jet1Fn faulty = [base = pair.minus.jet1()](CoverPoint p) {
        HeunState st = base(p);
        st.value *= 1.0 + 1e-3;
        return st;
    };
    const IdentityReport rep =
        check_identities(kRef, pair.plus.jet1(), faulty, pair.plus.value_at_one(),
                         pair.minus.value_at_one() * (1.0 + 1e-3), false, false, 16);
    CHECK(rep.eigen_minus > 1e-4);
    // The healthy sibling stays clean.
    CHECK(rep.eigen_plus < 1e-7);
}

TEST_CASE("branch projections of a generic solution") {
    // Split unconstrained Cauchy data and compare against direct pointwise
    // projections 1/2 (E ± opC E) of the generic solution.
    const Complex value(0.9, 0.0), slope(0.3, 0.0);
    const EigenPair pair = branch_projections(kRef, value, slope);
    CHECK_FALSE(pair.degenerate());

    const HeunField field{kRef};
    Vec2c y0;
    y0[0] = value;
    y0[1] = slope;
    auto rhs = [&field](double s, const Vec2c& yy) {
        return Vec2c(kI * field(Complex(0.0, s), yy));
    };
    const auto up = integrate(rhs, y0, 0.0, 1.5, {1e-12, 1e-14});
    const auto down = integrate(rhs, y0, 0.0, -1.5, {1e-12, 1e-14});
    const Jet1Fn generic = [&](CoverPoint p) {
        const double v = p.w.imag();
        const Vec2c y = (v >= 0.0 ? up : down).eval(v);
        return HeunState{y[0], y[1]};
    };
    for (double v : {0.3, 0.9, -1.2}) {
        const CoverPoint p{Complex(0.0, v)};
        const Complex e_val = generic(p).value;
        const Complex image = apply_op_c(kRef, generic, p);
        const Complex plus_direct = 0.5 * (e_val + image);
        const Complex minus_direct = 0.5 * (e_val - image);
        CHECK(std::abs(pair.plus.eval(p).value - plus_direct) < 1e-9);
        CHECK(std::abs(pair.minus.eval(p).value - minus_direct) < 1e-9);
    }

    // Feeding eigen-data straight in has a vanishing projection.
    const Complex eig_slope = (1.0 / (2.0 * kRef.omega) + kRef.mu) * value;
    CHECK_THROWS_AS(branch_projections(kRef, value, eig_slope), DegeneratePair);
}

TEST_CASE("two sheets of the same projection differ") {
    const EigenFunction e = eigenfunction_cauchy(kRef, Branch::plus, Complex(1.0, 0.0));
    const Complex up = e.eval(cover_minus_one_ccw()).value;
    const Complex dn = e.eval(cover_minus_one_cw()).value;
    CHECK(std::abs(up - dn) > 1e-3);
    // Self-conjugation ties them together instead.
    CHECK(std::abs(std::conj(dn) - up) < 1e-8);
}

TEST_CASE("on-demand extension beyond the stored axis") {
    EigenOptions wide;
    wide.axis_extent = 2.0 * kPi + 0.5;
    const EigenFunction reference =
        eigenfunction_cauchy(kRef, Branch::plus, Complex(1.0, 0.0), wide);
    EigenOptions narrow;
    narrow.axis_extent = 0.5;
    const EigenFunction lazy =
        eigenfunction_cauchy(kRef, Branch::plus, Complex(1.0, 0.0), narrow);
    for (const Complex w : {Complex(0.0, 2.0), Complex(0.1, -4.0), Complex(-0.15, 5.6)}) {
        const CoverPoint p{w};
        CHECK(std::abs(lazy.eval(p).value - reference.eval(p).value) < 1e-9);
    }
}

TEST_CASE("riccati route agrees off the circle too") {
    const EigenPair ric = eigenpair_from_rsj(kRef, 0.7);
    const EigenFunction cau =
        eigenfunction_cauchy(kRef, Branch::minus, ric.minus.value_at_one());
    for (const Complex w : {Complex(0.2, 0.5), Complex(-0.2, -1.8), Complex(0.1, 2.9)}) {
        const CoverPoint p{w};
        const Complex a = ric.minus.eval(p).value;
        const Complex b = cau.eval(p).value;
        CHECK(std::abs(a - b) < 1e-8 * (1.0 + std::abs(b)));
    }
}

}  // TEST_SUITE
