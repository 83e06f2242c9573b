#include <doctest.h>

#include <cmath>

#include "heunrsj/heun.hpp"
#include "heunrsj/odeint.hpp"

using namespace heunrsj;

namespace {

using Vec1c = Vector<Complex, 1>;

Vec1c one_state(Complex v) {
    Vec1c y;
    y[0] = v;
    return y;
}

}  // namespace

TEST_SUITE("odeint") {

TEST_CASE("exponential growth hits e at tight tolerance") {
    auto rhs = [](double, const Vec1c& y) { return Vec1c(y); };
    const auto sol = integrate(rhs, one_state(1.0), 0.0, 1.0, {1e-10, 1e-12});
    CHECK(std::abs(sol.final_state()[0] - std::exp(1.0)) < 1e-9);
    // Dense endpoints reproduce the stored states exactly.
    CHECK(sol.eval(0.0)[0] == Complex(1.0, 0.0));
    CHECK(sol.eval(1.0)[0] == sol.final_state()[0]);
    CHECK(std::abs(sol.eval(0.5)[0] - std::exp(0.5)) < 1e-9);
    // Interpolant derivative tracks the field.
    CHECK(std::abs(sol.eval_derivative(0.5)[0] - std::exp(0.5)) < 1e-8);
}

TEST_CASE("rotation closes the circle") {
    auto rhs = [](double, const Vec1c& y) { return Vec1c(kI * y); };
    const auto sol = integrate(rhs, one_state(1.0), 0.0, 2.0 * kPi, {1e-10, 1e-12});
    CHECK(std::abs(sol.final_state()[0] - Complex(1.0, 0.0)) < 1e-8);
}

TEST_CASE("tolerance halving converges monotonically") {
    auto rhs = [](double, const Vec1c& y) { return Vec1c(y); };
    auto rhs_circ = [](double, const Vec1c& y) { return Vec1c(kI * y); };
    double prev_exp = 1.0, prev_circ = 1.0;
    for (double rel = 1e-4; rel > 1e-10; rel *= 0.5) {
        const Tolerances tol{rel, rel * 1e-2};
        const double e_exp =
            std::abs(integrate(rhs, one_state(1.0), 0.0, 1.0, tol).final_state()[0] -
                     std::exp(1.0));
        const double e_circ = std::abs(
            integrate(rhs_circ, one_state(1.0), 0.0, 2.0 * kPi, tol).final_state()[0] -
            Complex(1.0, 0.0));
        // Small slack absorbs rounding at the tight end.
        CHECK(e_exp <= prev_exp * 1.2 + 1e-13);
        CHECK(e_circ <= prev_circ * 1.2 + 1e-13);
        prev_exp = e_exp;
        prev_circ = e_circ;
    }
    CHECK(prev_exp < 1e-9);
}

TEST_CASE("backward integration and path reversal return home") {
    const Params params = derive_params(2.0, 1.0, 0.5);
    const HeunField field{params};
    Vec2c y0;
    y0[0] = Complex(1.0, 0.0);
    y0[1] = Complex(2.0, 0.0);
    const Tolerances tol{1e-10, 1e-12};
    const CoverPath there = arc(cover_one(), cover_minus_one_ccw());
    const auto fwd = integrate_path(field, y0, there, tol);
    const auto back = integrate_path(field, fwd.final_state(), there.reversed(), tol);
    for (int i = 0; i < 2; ++i) {
        const double bound = 10.0 * (tol.abs + tol.rel * std::abs(y0[i]));
        CHECK(std::abs(back.final_state()[i] - y0[i]) < bound);
    }
}

TEST_CASE("multi-segment paths chain and evaluate") {
    const Params params = derive_params(1.0, 0.7, 0.8);
    const HeunField field{params};
    Vec2c y0;
    y0[0] = Complex(1.0, 0.0);
    y0[1] = Complex(0.5, 0.0);
    CoverPath path = arc(cover_one(), CoverPoint{Complex(0.0, 1.0)});
    path.then(CoverPoint{Complex(0.2, 1.0)});
    const auto sol = integrate_path(field, y0, path, {1e-10, 1e-12});
    CHECK(sol.s_end() == doctest::Approx(2.0));
    // Corner state agrees with integrating the first segment alone.
    const auto first = integrate_path(field, y0, arc(cover_one(), CoverPoint{Complex(0.0, 1.0)}),
                                      {1e-10, 1e-12});
    CHECK(std::abs(sol.eval(1.0)[0] - first.final_state()[0]) < 1e-9);
}

TEST_CASE("out-of-domain evaluation is rejected") {
    auto rhs = [](double, const Vec1c& y) { return Vec1c(y); };
    const auto sol = integrate(rhs, one_state(1.0), 0.0, 1.0);
    CHECK_THROWS_AS(sol.eval(1.5), OutOfDomain);
    CHECK_THROWS_AS(sol.eval(-0.1), OutOfDomain);
    IntegrateOptions lean;
    lean.dense = false;
    const auto bare = integrate(rhs, one_state(1.0), 0.0, 1.0, {}, lean);
    CHECK_THROWS_AS(bare.eval(0.5), OutOfDomain);
    CHECK(std::abs(bare.final_state()[0] - std::exp(1.0)) < 1e-8);
}

TEST_CASE("approaching the singular center collapses the step size") {
    // Walking w toward -infinity sends z to the irregular singular point at
    // the origin; the solution scale explodes and the controller stalls.
    const Params params = derive_params(1.0, 2.0, 0.5);
    const HeunField field{params};
    Vec2c y0;
    y0[0] = Complex(1.0, 0.0);
    y0[1] = Complex(1.0, 0.0);
    const CoverPath doomed = arc(cover_one(), CoverPoint{Complex(-40.0, 0.0)});
    CHECK_THROWS_AS(integrate_path(field, y0, doomed, {1e-10, 1e-12}), StepSizeUnderflow);
}

TEST_CASE("step budget is enforced") {
    auto rhs = [](double, const Vec1c& y) { return Vec1c(kI * y); };
    IntegrateOptions opt;
    opt.max_steps = 10;
    CHECK_THROWS_AS(integrate(rhs, one_state(1.0), 0.0, 1000.0, {1e-10, 1e-12}, opt),
                    MaxStepsExceeded);
}

TEST_CASE("invalid tolerances are rejected") {
    auto rhs = [](double, const Vec1c& y) { return Vec1c(y); };
    CHECK_THROWS_AS(integrate(rhs, one_state(1.0), 0.0, 1.0, {0.0, 1e-12}),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(rhs, one_state(1.0), 0.0, 1.0, {1e-10, 2.0}),
                    std::invalid_argument);
}

}  // TEST_SUITE
