#ifndef HEUNRSJ_ODEINT_HPP
#define HEUNRSJ_ODEINT_HPP

// Adaptive Dormand-Prince 5(4) integration of small real or complex state
// vectors over a real parameter, with a quartic dense-output interpolant per
// accepted step.  The same engine drives real-time integration and analytic
// continuation along straight segments in the cover coordinate w: a field
// dY/dw = F(w, Y) pulled back along an affine segment w(s) becomes an
// ordinary parameter-domain field dY/ds = F(w(s), Y) * dw/ds.
//
// integrate() is reentrant and stateless; DenseSolution is immutable after
// construction and shareable between threads.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "heunrsj/cover.hpp"
#include "heunrsj/errors.hpp"
#include "heunrsj/types.hpp"

namespace heunrsj {

struct Tolerances {
    double rel = 1e-10;
    double abs = 1e-12;
};

struct IntegrateOptions {
    long max_steps = 10'000'000;
    // When false, only the endpoint state is kept; eval() is unavailable.
    bool dense = true;
};

/// A parameter-domain field of fixed dimension.  The callable receives the
/// path parameter s and the current state and returns the state derivative.
template <class State>
struct FieldSpec {
    std::function<State(double, const State&)> rhs;
};

namespace detail {

inline double cabs(double x) { return std::abs(x); }
inline double cabs(const Complex& x) { return std::abs(x); }

template <class State>
bool all_finite(const State& y) {
    for (int i = 0; i < y.size(); ++i) {
        const double a = cabs(y[i]);
        if (!std::isfinite(a)) return false;
    }
    return true;
}

}  // namespace detail

/// Piecewise-quartic continuous extension of an adaptive integration run.
/// Steps are stored in integration direction (s may decrease).
template <class State>
class DenseSolution {
  public:
    struct Step {
        double s0, s1;
        // Interpolant u(theta) = r1 + theta (r2 + (1-theta)(r3 + theta (r4 + (1-theta) r5))),
        // theta = (s - s0) / (s1 - s0).  u(0) = y(s0), u(1) = y(s1) exactly.
        State r1, r2, r3, r4, r5;
    };

    DenseSolution() = default;

    double s_start() const { return s_start_; }
    double s_end() const { return s_end_; }
    const State& initial_state() const { return y_first_; }
    const State& final_state() const { return y_last_; }
    long accepted_steps() const { return accepted_; }
    long rejected_steps() const { return rejected_; }
    Tolerances tolerance() const { return tol_; }
    bool has_dense() const { return !steps_.empty(); }

    /// Interpolated state at s; s must lie inside the integrated range.
    State eval(double s) const { return eval_interp(s).first; }

    /// d(state)/ds of the interpolant at s.
    State eval_derivative(double s) const { return eval_interp(s).second; }

    /// Concatenates runs that continue one another (used for multi-segment
    /// paths).  Parts must share direction and join end-to-start.
    static DenseSolution chain(std::vector<DenseSolution> parts) {
        if (parts.empty()) throw std::invalid_argument("chain of zero solutions");
        DenseSolution out = std::move(parts.front());
        for (std::size_t i = 1; i < parts.size(); ++i) {
            DenseSolution& p = parts[i];
            if (p.s_start_ != out.s_end_)
                throw std::invalid_argument("chained solutions must be contiguous");
            out.steps_.insert(out.steps_.end(), std::make_move_iterator(p.steps_.begin()),
                              std::make_move_iterator(p.steps_.end()));
            out.s_end_ = p.s_end_;
            out.y_last_ = p.y_last_;
            out.accepted_ += p.accepted_;
            out.rejected_ += p.rejected_;
        }
        return out;
    }

  private:
    std::pair<State, State> eval_interp(double s) const {
        if (steps_.empty()) throw OutOfDomain("dense output was not stored for this run");
        const double dir = (s_end_ >= s_start_) ? 1.0 : -1.0;
        const double span = std::abs(s_end_ - s_start_);
        const double slack = 1e-12 * std::max(1.0, span);
        if (dir * (s - s_start_) < -slack || dir * (s - s_end_) > slack) {
            std::ostringstream os;
            os << "parameter " << s << " outside integrated range [" << s_start_ << ", "
               << s_end_ << "]";
            throw OutOfDomain(os.str());
        }
        s = std::clamp(dir * s, dir * s_start_, dir * s_end_) * dir;
        // Binary search for the step containing s (monotone in direction dir).
        std::size_t lo = 0, hi = steps_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (dir * s <= dir * steps_[mid].s1)
                hi = mid;
            else
                lo = mid + 1;
        }
        const Step& st = steps_[lo];
        const double h = st.s1 - st.s0;
        const double theta = (s - st.s0) / h;
        const double om = 1.0 - theta;
        State u = st.r1 + theta * (st.r2 + om * (st.r3 + theta * (st.r4 + om * st.r5)));
        // d/dtheta of the nested quartic, then back to d/ds.
        State du = st.r2 + (1.0 - 2.0 * theta) * st.r3 + theta * (2.0 - 3.0 * theta) * st.r4 +
                   2.0 * theta * om * (1.0 - 2.0 * theta) * st.r5;
        return {u, State(du / h)};
    }

    std::vector<Step> steps_;
    State y_first_, y_last_;
    double s_start_ = 0.0, s_end_ = 0.0;
    long accepted_ = 0, rejected_ = 0;
    Tolerances tol_;

    template <class S, class Rhs>
    friend DenseSolution<S> integrate(Rhs&& rhs, const S& y0, double s0, double s1,
                                      Tolerances tol, const IntegrateOptions& opt);
};

/// Integrates dY/ds = rhs(s, Y) from s0 to s1 (either direction) with the
/// Dormand-Prince 5(4) embedded pair, PI-free standard step control and
/// dense output.  Local error per step is kept below
/// abs_tol + rel_tol * |state| componentwise (scaled RMS norm).
///
/// Throws StepSizeUnderflow when the accepted step falls below 1e-14 of the
/// domain length (the classic signature of a singularity on the path) and
/// MaxStepsExceeded past opt.max_steps.
template <class State, class Rhs>
DenseSolution<State> integrate(Rhs&& rhs, const State& y0, double s0, double s1,
                               Tolerances tol = {}, const IntegrateOptions& opt = {}) {
    if (!(tol.rel > 0.0 && tol.rel < 1.0 && tol.abs > 0.0 && tol.abs < 1.0))
        throw std::invalid_argument("tolerances must lie in (0, 1)");
    if (s1 == s0) throw std::invalid_argument("empty integration interval");

    // Dormand-Prince 5(4) tableau.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    // Dense-output weights.
    static constexpr double d1 = -12715105075.0 / 11282082432.0;
    static constexpr double d3 = 87487479700.0 / 32700410799.0;
    static constexpr double d4 = -10690763975.0 / 1880347072.0;
    static constexpr double d5 = 701980252875.0 / 199316789632.0;
    static constexpr double d6 = -1453857185.0 / 822651844.0;
    static constexpr double d7 = 69997945.0 / 29380423.0;

    const int n = static_cast<int>(y0.size());
    const double span = std::abs(s1 - s0);
    const double dir = (s1 > s0) ? 1.0 : -1.0;
    const double h_min = 1e-14 * span;

    DenseSolution<State> out;
    out.s_start_ = s0;
    out.s_end_ = s1;
    out.y_first_ = y0;
    out.tol_ = tol;

    auto scaled_err = [&](const State& e, const State& ya, const State& yb) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double sc =
                tol.abs + tol.rel * std::max(detail::cabs(ya[i]), detail::cabs(yb[i]));
            const double q = detail::cabs(e[i]) / sc;
            sum += q * q;
        }
        return std::sqrt(sum / n);
    };

    double s = s0;
    State y = y0;
    State k1 = rhs(s, y);

    // Starting step: bound the first Euler increment by the tolerance scale.
    double h;
    {
        double dy = 0.0, df = 0.0;
        for (int i = 0; i < n; ++i) {
            const double sc = tol.abs + tol.rel * detail::cabs(y[i]);
            dy = std::max(dy, detail::cabs(y[i]) / sc);
            df = std::max(df, detail::cabs(k1[i]) / sc);
        }
        h = (df > 1e-10) ? 0.01 * dy / df : 1e-6 * span;
        h = std::clamp(h, 1e-8 * span, 0.1 * span);
        if (h == 0.0) h = 1e-6 * span;
    }
    h *= dir;

    long steps = 0;
    double facmax = 10.0;
    while (dir * (s1 - s) > 0.0) {
        if (++steps > opt.max_steps) {
            std::ostringstream os;
            os << "exceeded " << opt.max_steps << " steps at s = " << s;
            throw MaxStepsExceeded(os.str());
        }
        bool last = false;
        if (dir * (s + h) >= dir * s1) {
            h = s1 - s;
            last = true;
        }

        State k2 = rhs(s + c2 * h, State(y + h * (a21 * k1)));
        State k3 = rhs(s + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
        State k4 = rhs(s + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
        State k5 = rhs(s + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        State k6 = rhs(s + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        State ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        State k7 = rhs(s + h, ynew);  // FSAL
        State errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = detail::all_finite(ynew) ? scaled_err(errv, y, ynew)
                                              : std::numeric_limits<double>::infinity();

        if (err <= 1.0) {
            const double s_next = last ? s1 : s + h;
            if (opt.dense) {
                typename DenseSolution<State>::Step st;
                st.s0 = s;
                st.s1 = s_next;
                State ydiff = ynew - y;
                State bspl = h * k1 - ydiff;
                st.r1 = y;
                st.r2 = ydiff;
                st.r3 = bspl;
                st.r4 = ydiff - h * k7 - bspl;
                st.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                out.steps_.push_back(std::move(st));
            }
            s = s_next;
            y = ynew;
            k1 = k7;
            ++out.accepted_;
            const double fac =
                (err == 0.0) ? facmax : std::min(facmax, std::max(0.2, 0.9 * std::pow(err, -0.2)));
            h *= fac;
            facmax = 10.0;
        } else {
            ++out.rejected_;
            const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= fac;
            facmax = 1.0;  // no growth right after a rejection
        }

        if (std::abs(h) < h_min && !last) {
            std::ostringstream os;
            os << "step size " << std::abs(h) << " fell below " << h_min << " at s = " << s
               << " (singularity on the integration path?)";
            throw StepSizeUnderflow(os.str());
        }
    }

    out.y_last_ = y;
    return out;
}

/// Convenience overload for FieldSpec.
template <class State>
DenseSolution<State> integrate(const FieldSpec<State>& field, const State& y0, double s0,
                               double s1, Tolerances tol = {}, const IntegrateOptions& opt = {}) {
    return integrate([&field](double s, const State& y) { return field.rhs(s, y); }, y0, s0, s1,
                     tol, opt);
}

/// Integrates a holomorphic field dY/dw = field(w, Y) along a chain of
/// straight w-segments.  Each segment is parameterized affinely by one unit
/// of s and integrated on its own (the pulled-back field is smooth inside a
/// segment but not across corners), so the whole run spans s in
/// [0, #segments].
template <class State, class FieldW>
DenseSolution<State> integrate_path(FieldW&& field, const State& y0, const CoverPath& path,
                                    Tolerances tol = {}, const IntegrateOptions& opt = {}) {
    if (path.empty()) throw std::invalid_argument("integrate_path: empty path");
    const auto& segs = path.segments();
    std::vector<DenseSolution<State>> parts;
    parts.reserve(segs.size());
    State y = y0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const CoverSegment& seg = segs[i];
        const Complex dw = seg.to - seg.from;
        auto rhs = [&field, &seg, dw, i](double s, const State& yy) {
            const Complex w = seg.from + (s - static_cast<double>(i)) * dw;
            return State(field(w, yy) * dw);
        };
        parts.push_back(integrate(rhs, y, static_cast<double>(i), static_cast<double>(i + 1),
                                  tol, opt));
        y = parts.back().final_state();
    }
    return parts.size() == 1 ? std::move(parts.front())
                             : DenseSolution<State>::chain(std::move(parts));
}

}  // namespace heunrsj

#endif
