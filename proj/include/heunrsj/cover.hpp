#ifndef HEUNRSJ_COVER_HPP
#define HEUNRSJ_COVER_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "heunrsj/types.hpp"

namespace heunrsj {

/// A point on the universal cover of the punctured plane, stored in the log
/// coordinate w; the projected point is z = exp(w).  Two CoverPoints are equal
/// iff their w coordinates are equal, not merely their projections, so
/// distinct sheets stay distinct.
struct CoverPoint {
    Complex w{0.0, 0.0};

    Complex z() const { return std::exp(w); }

    friend bool operator==(const CoverPoint& a, const CoverPoint& b) { return a.w == b.w; }
    friend bool operator!=(const CoverPoint& a, const CoverPoint& b) { return !(a == b); }
};

/// The preimage of 1 chosen as base point (w = 0).
inline CoverPoint cover_one() { return CoverPoint{Complex(0.0, 0.0)}; }

/// The preimage of -1 reached from the base point counterclockwise (w = +i pi).
inline CoverPoint cover_minus_one_ccw() { return CoverPoint{Complex(0.0, kPi)}; }

/// The preimage of -1 reached clockwise (w = -i pi).
inline CoverPoint cover_minus_one_cw() { return CoverPoint{Complex(0.0, -kPi)}; }

/// The lift of z -> 1/z fixing the base point: w -> -w.  Involutive and
/// globally defined on the cover.
inline CoverPoint invert(CoverPoint p) { return CoverPoint{-p.w}; }

/// Single-valued power z^a on the cover: exp(a w).  By construction
/// power(invert(p), a) == power(p, -a) exactly.
inline Complex power(CoverPoint p, double a) { return std::exp(a * p.w); }

/// A straight segment in w-space, with a sampling hint for consumers that
/// discretize the projected curve.
struct CoverSegment {
    Complex from{0.0, 0.0};
    Complex to{0.0, 0.0};
    int samples = 32;
};

/// A continuous chain of straight w-segments.  The projection never meets
/// z = 0 (automatic under exp).
class CoverPath {
  public:
    CoverPath() = default;
    explicit CoverPath(CoverSegment seg) { segments_.push_back(seg); }

    /// Appends a segment continuing from the current endpoint.
    CoverPath& then(CoverPoint to, int samples = 32) {
        if (segments_.empty()) throw std::invalid_argument("CoverPath::then on empty path");
        segments_.push_back({segments_.back().to, to.w, samples});
        return *this;
    }

    const std::vector<CoverSegment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }

    CoverPoint start() const { return CoverPoint{segments_.front().from}; }
    CoverPoint end() const { return CoverPoint{segments_.back().to}; }

    /// Reversed traversal of the same chain.
    CoverPath reversed() const {
        CoverPath r;
        for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
            r.segments_.push_back({it->to, it->from, it->samples});
        return r;
    }

  private:
    std::vector<CoverSegment> segments_;
};

/// Single straight segment from one cover point to another.  Pure-imaginary
/// displacements project to circle arcs, real displacements to radial moves.
inline CoverPath arc(CoverPoint from, CoverPoint to, int samples = 32) {
    if (samples < 2) throw std::invalid_argument("arc requires samples >= 2");
    return CoverPath{CoverSegment{from.w, to.w, samples}};
}

}  // namespace heunrsj

#endif
