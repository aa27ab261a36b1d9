#pragma once

/**
 * @file core.hpp
 * @brief Fixed-size types, hat/vee isomorphisms, adjoint matrices and rigid poses.
 *
 * Layout convention
 * -----------------
 * Screw / twist vectors are X = (x, y) with the angular block FIRST:
 *
 *   X = [ x1 x2 x3 | y1 y2 y3 ]
 *
 * and the associated se(3) matrix is
 *
 *   [ x^  y ]
 *   [ 0   0 ]
 *
 * All 6x6 operators (ad, Ad, dexp, dcay, ...) use the same block order.
 */

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>

#include <cmath>
#include <optional>

#include "errors.hpp"

namespace lgmaps {

template<typename S>
using Vec3 = Eigen::Matrix<S, 3, 1>;
template<typename S>
using Vec6 = Eigen::Matrix<S, 6, 1>;
template<typename S>
using Mat3 = Eigen::Matrix<S, 3, 3>;
template<typename S>
using Mat4 = Eigen::Matrix<S, 4, 4>;
template<typename S>
using Mat6 = Eigen::Matrix<S, 6, 6>;

/// Symmetric-part norm above which vee3 rejects its argument.
inline constexpr double kSkewReject = 1e-6;
/// Tolerance below which a matrix is considered skew without projection.
inline constexpr double kSkewTol = 1e-9;
/// Orthonormality tolerance for rotations produced by the closed-form maps.
inline constexpr double kOrthoTol = 1e-12;
/// Bottom-row tolerance for vee6.
inline constexpr double kBottomRowTol = 1e-9;

// ---------------------------------------------------------------------------
// Screw accessors
// ---------------------------------------------------------------------------

/// Angular block x of X = (x, y).
template<typename Derived>
[[nodiscard]] auto angular(const Eigen::MatrixBase<Derived> & X)
{
  return X.template head<3>();
}

/// Translational block y of X = (x, y).
template<typename Derived>
[[nodiscard]] auto linear(const Eigen::MatrixBase<Derived> & X)
{
  return X.template tail<3>();
}

template<typename S>
[[nodiscard]] Vec6<S> screw(const Vec3<S> & x, const Vec3<S> & y)
{
  Vec6<S> X;
  X << x, y;
  return X;
}

/**
 * @brief Instantaneous pitch h = x'y / |x|^2 of a screw.
 *
 * Returns std::nullopt for a pure translation (x = 0), where the pitch is infinite.
 */
template<typename S>
[[nodiscard]] std::optional<S> pitch(const Vec6<S> & X)
{
  const S n2 = angular(X).squaredNorm();
  if (n2 == S(0)) { return std::nullopt; }
  return angular(X).dot(linear(X)) / n2;
}

// ---------------------------------------------------------------------------
// hat / vee
// ---------------------------------------------------------------------------

/// Cross-product matrix: hat3(x) * w = x.cross(w).
template<typename S>
[[nodiscard]] Mat3<S> hat3(const Vec3<S> & x)
{
  Mat3<S> M;
  // clang-format off
  M <<  S(0), -x.z(),  x.y(),
       x.z(),   S(0), -x.x(),
      -x.y(),  x.x(),   S(0);
  // clang-format on
  return M;
}

/// Inverse of hat3 on the antisymmetric part of M. Throws InvalidInput when M is far from skew.
template<typename S>
[[nodiscard]] Vec3<S> vee3(const Mat3<S> & M)
{
  const Mat3<S> sym = S(0.5) * (M + M.transpose());
  if (sym.norm() > S(kSkewReject)) { throw InvalidInput("vee3: matrix is not skew"); }
  const Mat3<S> skew = S(0.5) * (M - M.transpose());
  return Vec3<S>(skew(2, 1), skew(0, 2), skew(1, 0));
}

/// se(3) matrix of the screw X = (x, y).
template<typename S>
[[nodiscard]] Mat4<S> hat6(const Vec6<S> & X)
{
  Mat4<S> M = Mat4<S>::Zero();
  M.template topLeftCorner<3, 3>()  = hat3<S>(angular(X));
  M.template topRightCorner<3, 1>() = linear(X);
  return M;
}

template<typename S>
[[nodiscard]] Vec6<S> vee6(const Mat4<S> & M)
{
  if (M.template bottomRows<1>().cwiseAbs().maxCoeff() > S(kBottomRowTol)) {
    throw InvalidInput("vee6: bottom row of an se(3) matrix must vanish");
  }
  return screw<S>(vee3<S>(M.template topLeftCorner<3, 3>()), M.template topRightCorner<3, 1>());
}

// ---------------------------------------------------------------------------
// Rigid poses
// ---------------------------------------------------------------------------

/// Element (R, r) of SE(3); r is the position of the frame origin.
template<typename S>
struct Pose
{
  Mat3<S> R = Mat3<S>::Identity();
  Vec3<S> r = Vec3<S>::Zero();

  [[nodiscard]] static Pose identity() { return Pose{}; }

  [[nodiscard]] static Pose translation(const Vec3<S> & r) { return Pose{Mat3<S>::Identity(), r}; }

  [[nodiscard]] static Pose from_matrix(const Mat4<S> & C)
  {
    if ((C.template bottomRows<1>() - Eigen::Matrix<S, 1, 4>(0, 0, 0, 1)).cwiseAbs().maxCoeff()
        > S(kBottomRowTol)) {
      throw InvalidInput("Pose: bottom row must be (0, 0, 0, 1)");
    }
    return Pose{C.template topLeftCorner<3, 3>(), C.template topRightCorner<3, 1>()};
  }

  /// Homogeneous 4x4 form.
  [[nodiscard]] Mat4<S> matrix() const
  {
    Mat4<S> C                         = Mat4<S>::Identity();
    C.template topLeftCorner<3, 3>()  = R;
    C.template topRightCorner<3, 1>() = r;
    return C;
  }

  [[nodiscard]] Pose inverse() const { return Pose{R.transpose(), -(R.transpose() * r)}; }

  [[nodiscard]] Pose operator*(const Pose & o) const { return Pose{R * o.R, R * o.r + r}; }

  /// Transform a point.
  [[nodiscard]] Vec3<S> operator*(const Vec3<S> & p) const { return R * p + r; }

  template<typename T>
  [[nodiscard]] Pose<T> cast() const
  {
    return Pose<T>{R.template cast<T>(), r.template cast<T>()};
  }
};

template<typename S>
[[nodiscard]] Pose<S> compose(const Pose<S> & A, const Pose<S> & B)
{
  return A * B;
}

template<typename S>
[[nodiscard]] Pose<S> inverse(const Pose<S> & A)
{
  return A.inverse();
}

/// max |R'R - I| entry.
template<typename S>
[[nodiscard]] S orthonormality_error(const Mat3<S> & R)
{
  return (R.transpose() * R - Mat3<S>::Identity()).cwiseAbs().maxCoeff();
}

/// True when R'R = I and det R = +1 within tol.
template<typename S>
[[nodiscard]] bool is_rotation(const Mat3<S> & R, S tol = S(kOrthoTol))
{
  return orthonormality_error(R) <= tol && std::abs(R.determinant() - S(1)) <= tol;
}

// ---------------------------------------------------------------------------
// Adjoints
// ---------------------------------------------------------------------------

/// Matrix of ad_X: ad6(X) * U is the screw product [X^, U^] in vector form.
template<typename S>
[[nodiscard]] Mat6<S> ad6(const Vec6<S> & X)
{
  Mat6<S> A                            = Mat6<S>::Zero();
  const Mat3<S> xh                     = hat3<S>(angular(X));
  A.template topLeftCorner<3, 3>()     = xh;
  A.template bottomRightCorner<3, 3>() = xh;
  A.template bottomLeftCorner<3, 3>()  = hat3<S>(linear(X));
  return A;
}

/// Frame transformation of twists, [[R, 0], [r^ R, R]].
template<typename S>
[[nodiscard]] Mat6<S> Ad6(const Pose<S> & C)
{
  Mat6<S> A                            = Mat6<S>::Zero();
  A.template topLeftCorner<3, 3>()     = C.R;
  A.template bottomRightCorner<3, 3>() = C.R;
  A.template bottomLeftCorner<3, 3>()  = hat3<S>(C.r) * C.R;
  return A;
}

/// Block lower-triangular 6x6 matrix [[ul, 0], [ll, lr]].
template<typename S>
[[nodiscard]] Mat6<S> block_lower(const Mat3<S> & ul, const Mat3<S> & ll, const Mat3<S> & lr)
{
  Mat6<S> M                            = Mat6<S>::Zero();
  M.template topLeftCorner<3, 3>()     = ul;
  M.template bottomLeftCorner<3, 3>()  = ll;
  M.template bottomRightCorner<3, 3>() = lr;
  return M;
}

/// Entrywise max-abs norm, used for all residual reporting.
template<typename Derived>
[[nodiscard]] typename Derived::Scalar max_abs(const Eigen::MatrixBase<Derived> & M)
{
  return M.cwiseAbs().maxCoeff();
}

}  // namespace lgmaps
