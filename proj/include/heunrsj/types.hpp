#ifndef HEUNRSJ_TYPES_HPP
#define HEUNRSJ_TYPES_HPP

#include <complex>

#include <Eigen/Core>

namespace heunrsj {

using Real = double;
using Complex = std::complex<double>;

template <class Scalar, int N>
using Vector = Eigen::Matrix<Scalar, N, 1>;

using Vec2c = Vector<Complex, 2>;
using Vec3d = Vector<Real, 3>;
using Mat2c = Eigen::Matrix<Complex, 2, 2>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace heunrsj

#endif
