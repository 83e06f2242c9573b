#include <doctest.h>

#include <cmath>
#include <vector>

#include "heunrsj/bridge.hpp"
#include "heunrsj/errors.hpp"
#include "heunrsj/rsj.hpp"

using namespace heunrsj;

namespace {

const Params kRef = derive_params(2.0, 1.0, 0.5);

std::vector<double> interior_grid(const Params& par, int n) {
    std::vector<double> t(n);
    const double half = kPi / par.omega;
    for (int i = 0; i < n; ++i) t[i] = -half + 2.0 * half * (i + 0.5) / n;
    return t;
}

double wrap_gap(double a, double b) {
    double d = std::fmod(a - b, 2.0 * kPi);
    if (d > kPi) d -= 2.0 * kPi;
    if (d < -kPi) d += 2.0 * kPi;
    return std::abs(d);
}

}  // namespace

TEST_SUITE("bridge") {

TEST_CASE("alpha closed form matches the constraint") {
    const EigenPair pair = eigenpair_from_rsj(kRef, 0.3);
    for (double phi0 : {0.0, 0.3, 1.0, -2.0, 3.0}) {
        const Alpha a = alpha_from_phi0(pair, phi0);
        CHECK(a.value >= 0.0);
        CHECK(a.value < 2.0 * kPi);
        CHECK(std::abs(alpha_constraint(pair, a.value, phi0)) < 1e-10);
    }
    // phi0 = pi/2 kills the sine factor: cos(alpha/2) must vanish, alpha = pi.
    CHECK(alpha_from_phi0(pair, kPi / 2).value == doctest::Approx(kPi));
    // phi0 = -pi/2 is the symmetric case: alpha = 0.
    CHECK(alpha_from_phi0(pair, -kPi / 2).value == doctest::Approx(0.0).epsilon(1e-12));
    // Degenerate pairs are rejected.
    const EigenPair degen = eigenpair_from_rsj(kRef, kPi / 2);
    CHECK_THROWS_AS(alpha_from_phi0(degen, 0.3), DegeneratePair);
}

TEST_CASE("the circle map is unimodular and anchors at phi0") {
    const double phi0 = 1.0;
    const EigenPair pair = eigenpair_from_rsj(kRef, phi0);
    const Alpha a = alpha_from_phi0(pair, phi0);
    for (double t : {-4.0, -1.0, 0.0, 0.5, 3.0}) {
        CHECK(std::abs(std::abs(bridge_phi_value(pair, a, t)) - 1.0) < 1e-8);
    }
    const std::vector<double> t0{0.0};
    const auto phi = phi_from_eigen(pair, a, t0);
    CHECK(wrap_gap(phi[0], phi0) < 1e-8);
}

TEST_CASE("full phase round trip on the principal interval") {
    const double phi0 = 1.0;
    const EigenPair pair = eigenpair_from_rsj(kRef, phi0);
    const Alpha a = alpha_from_phi0(pair, phi0);
    const RsjSolution forward = solve_rsj(kRef, phi0);
    const auto grid = interior_grid(kRef, 64);
    const auto phi = phi_from_eigen(pair, a, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(phi[i] - forward.phi(grid[i])) < 1e-6);
    }
}

TEST_CASE("recovered phase solves the driven equation") {
    const double phi0 = -0.8;
    const EigenPair pair = eigenpair_from_rsj(kRef, phi0);
    const Alpha a = alpha_from_phi0(pair, phi0);
    for (double t : {-3.0, -0.4, 0.0, 1.1, 2.7}) {
        CHECK(bridge_rsj_residual(pair, a, t) < 1e-5);
    }
}

TEST_CASE("theta anchors at -i and dualizes by conjugation") {
    const double phi0 = 0.6;
    const EigenPair pair = eigenpair_from_rsj(kRef, phi0);
    const Alpha a = alpha_from_phi0(pair, phi0);
    CHECK(std::abs(bridge_theta(pair, a, 0.0) - Complex(0.0, -1.0)) < 1e-14);
    const auto grid = interior_grid(kRef, 32);
    const ThetaPair tp = theta(pair, a, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(tp.theta_dual[i] - std::conj(tp.theta[i])) < 1e-8);
    }
}

TEST_CASE("theta flow equations hold to stencil accuracy") {
    const double phi0 = 0.6;
    const EigenPair pair = eigenpair_from_rsj(kRef, phi0);
    const Alpha a = alpha_from_phi0(pair, phi0);
    const auto grid = interior_grid(kRef, 16);
    CHECK(theta_flow_residual(pair, a, grid) < 1e-5);
}

TEST_CASE("quadrature recovery against the forward solution") {
    const double phi0 = 1.0;
    const EigenPair pair = eigenpair_from_rsj(kRef, phi0);
    const Alpha a = alpha_from_phi0(pair, phi0);
    const RsjSolution forward = solve_rsj(kRef, phi0);
    const auto grid = interior_grid(kRef, 64);
    const auto [p_rec, q_rec] = recover_pq(pair, a, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(p_rec[i] - forward.p(grid[i])) < 1e-6);
        CHECK(std::abs(q_rec[i] - forward.q(grid[i])) < 1e-6);
    }
    // At the anchor: theta(1) = -i means P = -log(1) = 0 and Q = 0.
    const std::vector<double> t0{0.0};
    const auto [p0, q0] = recover_pq(pair, a, t0);
    CHECK(std::abs(p0[0]) < 1e-14);
    CHECK(std::abs(q0[0]) < 1e-14);
}

TEST_CASE("dP/dt equals cos(phi) by finite differences") {
    const double phi0 = 0.2;
    const EigenPair pair = eigenpair_from_rsj(kRef, phi0);
    const Alpha a = alpha_from_phi0(pair, phi0);
    const double h = 1e-3;
    for (double t : {-2.0, 0.3, 1.9}) {
        std::vector<double> stencil{t - 2 * h, t - h, t + h, t + 2 * h, t};
        const auto [p, q] = recover_pq(pair, a, stencil);
        const double dp = (p[0] - 8.0 * p[1] + 8.0 * p[2] - p[3]) / (12.0 * h);
        const std::vector<double> tt{t};
        const double phi = phi_from_eigen(pair, a, tt)[0];
        CHECK(std::abs(dp - std::cos(phi)) < 1e-5);
    }
}

TEST_CASE("alpha sweep stays consistent with the recovered phase") {
    // Every alpha yields a phi(0) satisfying the base-point constraint, so
    // the map alpha -> phi0 -> alpha closes.
    const EigenPair pair = eigenpair_from_rsj(kRef, 0.0);
    const std::vector<double> t0{0.0};
    for (int k = 0; k < 64; ++k) {
        const Alpha a{2.0 * kPi * k / 64.0};
        const double phi0_rec = phi_from_eigen(pair, a, t0)[0];
        CHECK(std::abs(alpha_constraint(pair, a.value, phi0_rec)) < 1e-8);
    }
}

TEST_CASE("different alphas recover solutions of the same equation") {
    const EigenPair pair = eigenpair_from_rsj(kRef, 0.0);
    for (double av : {0.7, 2.9}) {
        const Alpha a{av};
        for (double t : {-2.0, -0.5, 1.4}) {
            CHECK(bridge_rsj_residual(pair, a, t) < 1e-5);
        }
    }
}

TEST_CASE("round trip through an off-anchor phi0") {
    // Build the pair at one phase, ask the bridge for a different one.
    const EigenPair pair = eigenpair_from_rsj(kRef, 0.4);
    const double phi0_other = 2.0;
    const Alpha a = alpha_from_phi0(pair, phi0_other);
    const RsjSolution forward = solve_rsj(kRef, phi0_other);
    const auto grid = interior_grid(kRef, 32);
    const auto phi = phi_from_eigen(pair, a, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(wrap_gap(phi[i], forward.phi(grid[i])) < 1e-6);
    }
}

}  // TEST_SUITE
