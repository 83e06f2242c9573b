#include "heunrsj/sweep.hpp"

#include <atomic>
#include <cmath>

#include <Eigen/LU>
#include <functional>
#include <limits>
#include <thread>

#include "heunrsj/heun.hpp"

namespace heunrsj {

namespace {

Mat2c continuation_from_cauchy_data(const Params& params, Tolerances tol) {
    // Basis fixed by the constrained Cauchy data with unit base values:
    // E_s(1) = 1, E_s'(1) = mu + s/(2 omega).
    Mat2c basis;
    basis << Complex(1.0, 0.0), Complex(1.0, 0.0),
        Complex(params.mu + 0.5 / params.omega, 0.0),
        Complex(params.mu - 0.5 / params.omega, 0.0);
    const HeunField field{params};
    const CoverPath loop = arc(cover_one(), CoverPoint{Complex(0.0, 2.0 * kPi)}, 16);
    IntegrateOptions opt;
    opt.dense = false;
    Mat2c m;
    for (int j = 0; j < 2; ++j) {
        Vec2c y0;
        y0[0] = basis(0, j);
        y0[1] = basis(1, j);
        const Vec2c yend = integrate_path(field, y0, loop, tol, opt).final_state();
        const Vec2c coords = basis.partialPivLu().solve(yend);
        m(j, 0) = coords[0];
        m(j, 1) = coords[1];
    }
    return m;
}

}  // namespace

double sweep_discriminant(double omega, double amp, double b, Tolerances tol) {
    const Params params = params_from_bias(amp, b, omega);
    return lock_discriminant(continuation_from_cauchy_data(params, tol));
}

std::vector<SweepRow> run_sweep(const SweepOptions& opt) {
    if (opt.steps < 1) throw std::invalid_argument("sweep needs at least one step");
    std::vector<SweepRow> rows(opt.steps);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= opt.steps) return;
            const double b = (opt.steps == 1)
                                 ? opt.b_lo
                                 : opt.b_lo + (opt.b_hi - opt.b_lo) * i / (opt.steps - 1);
            const Params params = params_from_bias(opt.amp, b, opt.omega);
            SweepRow& row = rows[i];
            row.b = b;
            row.a = opt.amp;
            row.omega = opt.omega;
            row.ell = params.ell;
            row.mu = params.mu;
            const Mat2c m = continuation_from_cauchy_data(params, opt.mono_tol);
            row.discriminant = lock_discriminant(m);
            row.off_diag_abs = off_diag_magnitude(m);
            row.trace_re = (m(0, 0) + m(1, 1)).real();
            row.cls = classify_discriminant(row.discriminant, opt.class_tol);
            row.rotation = rotation_number(params, opt.phi0, opt.n_periods, opt.rotation_tol);
        }
    };
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

bool period_map_locked(const Params& params, int tongue, int phi_samples, Tolerances tol) {
    const double shift = 2.0 * kPi * tongue;
    auto displacement = [&](double phi0) {
        return period_map(params, phi0, tol) - phi0 - shift;
    };
    double d_min = std::numeric_limits<double>::infinity();
    double d_max = -d_min;
    double at_min = 0.0, at_max = 0.0;
    const double h = 2.0 * kPi / phi_samples;
    for (int i = 0; i < phi_samples; ++i) {
        const double phi0 = i * h;
        const double d = displacement(phi0);
        if (d < d_min) {
            d_min = d;
            at_min = phi0;
        }
        if (d > d_max) {
            d_max = d;
            at_max = phi0;
        }
        if (d_min <= 0.0 && d_max >= 0.0) return true;
    }
    // Refine each extremum by ternary search between its grid neighbours.
    auto refine = [&](double center, bool minimize) {
        double lo = center - h, hi = center + h;
        for (int it = 0; it < 60; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            const double f1 = displacement(m1);
            const double f2 = displacement(m2);
            if (minimize ? (f1 < f2) : (f1 > f2))
                hi = m2;
            else
                lo = m1;
            if (hi - lo < 1e-12) break;
        }
        return displacement(0.5 * (lo + hi));
    };
    d_min = std::min(d_min, refine(at_min, true));
    d_max = std::max(d_max, refine(at_max, false));
    return d_min <= 0.0 && 0.0 <= d_max;
}

namespace {

double bisect_bool(const std::function<bool(double)>& locked, double b_in, double b_out,
                   double tol_b) {
    double lo = b_in, hi = b_out;
    while (std::abs(hi - lo) > tol_b) {
        const double mid = 0.5 * (lo + hi);
        if (locked(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double bisect_monodromy_edge(double omega, double amp, double b_in, double b_out, double tol_b,
                             Tolerances tol) {
    return bisect_bool(
        [&](double b) { return sweep_discriminant(omega, amp, b, tol) > 0.0; }, b_in, b_out,
        tol_b);
}

double bisect_period_edge(double omega, double amp, int tongue, double b_in, double b_out,
                          double tol_b, Tolerances tol) {
    return bisect_bool(
        [&](double b) {
            return period_map_locked(params_from_bias(amp, b, omega), tongue, 64, tol);
        },
        b_in, b_out, tol_b);
}

}  // namespace heunrsj
