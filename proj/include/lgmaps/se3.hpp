#pragma once

/**
 * @file se3.hpp
 * @brief Exponential and Cayley maps on SE(3), their differentials in block and
 * ad-power form, directional derivatives, and the Cayley map of the adjoint representation.
 *
 * Screws are X = (x, y), U = (u, v), angular block first (see core.hpp).
 */

#include <algorithm>
#include <array>

#include "core.hpp"
#include "scalars.hpp"
#include "so3.hpp"

namespace lgmaps::se3 {

// ---------------------------------------------------------------------------
// Exponential family
// ---------------------------------------------------------------------------

/// exp(X^) = (exp x^, dexp(x) y).
template<typename S>
[[nodiscard]] Pose<S> exp(const Vec6<S> & X, Branch branch = Branch::automatic)
{
  const Vec3<S> x = angular(X);
  return Pose<S>{so3::exp(x, branch), so3::dexp(x, branch) * linear(X)};
}

template<typename S>
[[nodiscard]] Vec6<S> log(const Pose<S> & C)
{
  const Vec3<S> x = so3::log(C.R);
  return screw<S>(x, so3::dexp_inv(x) * C.r);
}

/// dexp = [[dexp_x, 0], [(D_x dexp)(y), dexp_x]].
template<typename S>
[[nodiscard]] Mat6<S> dexp(const Vec6<S> & X, Branch branch = Branch::automatic)
{
  const Vec3<S> x  = angular(X);
  const Mat3<S> dx = so3::dexp(x, branch);
  return block_lower<S>(dx, so3::ddexp<S>(x, linear(X), branch), dx);
}

/// dexp as a polynomial of degree four in ad_X.
template<typename S>
[[nodiscard]] Mat6<S> dexp_adform(const Vec6<S> & X, Branch branch = Branch::automatic)
{
  const auto c     = exp_coeffs(angular(X).norm(), branch);
  const Mat6<S> a  = ad6(X);
  const Mat6<S> a2 = a * a;
  return Mat6<S>::Identity() + c.e1 * a + c.e2 * a2 + (c.e3 * a + c.e4 * a2) * a2;
}

/// dexp^-1 = [[dexp_x^-1, 0], [(D_x dexp^-1)(y), dexp_x^-1]], valid for |x| < 2 pi.
template<typename S>
[[nodiscard]] Mat6<S> dexp_inv(const Vec6<S> & X, Branch branch = Branch::automatic)
{
  const Vec3<S> x  = angular(X);
  const Mat3<S> di = so3::dexp_inv(x, branch);
  return block_lower<S>(di, so3::ddexp_inv<S>(x, linear(X), branch), di);
}

/// dexp^-1 = I - ad/2 + f2 ad^2 + f4 ad^4, valid for |x| < 2 pi.
template<typename S>
[[nodiscard]] Mat6<S> dexp_inv_adform(const Vec6<S> & X, Branch branch = Branch::automatic)
{
  const auto c     = exp_inv_coeffs(angular(X).norm(), branch);
  const Mat6<S> a  = ad6(X);
  const Mat6<S> a2 = a * a;
  return Mat6<S>::Identity() - S(0.5) * a + (c.f2 * Mat6<S>::Identity() + c.f4 * a2) * a2;
}

/// Directional derivative (D_X dexp)(U).
template<typename S>
[[nodiscard]] Mat6<S> ddexp(const Vec6<S> & X, const Vec6<S> & U, Branch branch = Branch::automatic)
{
  const Vec3<S> x = angular(X), y = linear(X), u = angular(U), v = linear(U);
  const Mat3<S> du = so3::ddexp(x, u, branch);
  return block_lower<S>(du, so3::d2dexp(x, y, u, branch) + so3::ddexp(x, v, branch), du);
}

/// Directional derivative (D_X dexp^-1)(U), valid for |x| < 2 pi.
template<typename S>
[[nodiscard]] Mat6<S> ddexp_inv(const Vec6<S> & X, const Vec6<S> & U, Branch branch = Branch::automatic)
{
  const Vec3<S> x = angular(X), y = linear(X), u = angular(U), v = linear(U);
  const Mat3<S> du = so3::ddexp_inv(x, u, branch);
  return block_lower<S>(du, so3::d2dexp_inv(x, y, u, branch) + so3::ddexp_inv(x, v, branch), du);
}

// ---------------------------------------------------------------------------
// Cayley family
// ---------------------------------------------------------------------------

/// cay(X^) = (cay x^, (I + cay x^) y).
template<typename S>
[[nodiscard]] Pose<S> cay(const Vec6<S> & X)
{
  const Mat3<S> R = so3::cay<S>(angular(X));
  return Pose<S>{R, (Mat3<S>::Identity() + R) * linear(X)};
}

/// Position of cay(X^) written as 2 sigma dcay_x^-T y.
template<typename S>
[[nodiscard]] Vec3<S> cay_position_dcay(const Vec6<S> & X)
{
  const Vec3<S> x = angular(X);
  return S(2) * so3::sigma(x) * (so3::dcay_inv(x).transpose() * linear(X));
}

/// Inverse of se3::cay; throws DomainError near a half turn.
template<typename S>
[[nodiscard]] Vec6<S> cay_inv(const Pose<S> & C)
{
  const Vec3<S> x = so3::cay_inv(C.R);
  return screw<S>(x, S(0.5) * (C.r - x.cross(C.r)));
}

/// dcay = [[sigma (I + x^), 0], [sigma y^ (I + x^), 2 I + sigma (x^ + x^2)]].
template<typename S>
[[nodiscard]] Mat6<S> dcay(const Vec6<S> & X)
{
  const Vec3<S> x  = angular(X);
  const S s        = so3::sigma(x);
  const Mat3<S> I  = Mat3<S>::Identity();
  const Mat3<S> xh = hat3(x);
  return block_lower<S>(s * (I + xh), s * hat3<S>(linear(X)) * (I + xh), S(2) * I + s * (xh + xh * xh));
}

/// dcay^-1 = 1/2 [[(2/sigma) I + x^2 - x^, 0], [(x^ - I) y^, I - x^]].
template<typename S>
[[nodiscard]] Mat6<S> dcay_inv(const Vec6<S> & X)
{
  const Vec3<S> x  = angular(X);
  const Mat3<S> I  = Mat3<S>::Identity();
  const Mat3<S> xh = hat3(x);
  return S(0.5) * block_lower<S>((S(2) / so3::sigma(x)) * I + xh * xh - xh, (xh - I) * hat3<S>(linear(X)), I - xh);
}

/// Directional derivative (D_X dcay)(U).
template<typename S>
[[nodiscard]] Mat6<S> ddcay(const Vec6<S> & X, const Vec6<S> & U)
{
  const Vec3<S> x = angular(X), u = angular(U);
  const S s        = so3::sigma(x);
  const S s2xu     = s * s * x.dot(u);
  const Mat3<S> I  = Mat3<S>::Identity();
  const Mat3<S> xh = hat3(x);
  const Mat3<S> yh = hat3<S>(linear(X));
  const Mat3<S> uh = hat3(u);
  const Mat3<S> vh = hat3<S>(linear(U));
  return block_lower<S>(
    s * uh - s2xu * (I + xh),
    s * (vh + vh * xh + yh * uh) - s2xu * (yh + yh * xh),
    s * (uh + xh * uh + uh * xh) - s2xu * (xh + xh * xh));
}

/// Directional derivative (D_X dcay^-1)(U).
template<typename S>
[[nodiscard]] Mat6<S> ddcay_inv(const Vec6<S> & X, const Vec6<S> & U)
{
  const Vec3<S> x = angular(X), u = angular(U);
  const Mat3<S> xh = hat3(x);
  const Mat3<S> yh = hat3<S>(linear(X));
  const Mat3<S> uh = hat3(u);
  const Mat3<S> vh = hat3<S>(linear(U));
  return S(0.5)
       * block_lower<S>(S(2) * x.dot(u) * Mat3<S>::Identity() + uh * xh + xh * uh - uh, xh * vh + uh * yh - vh, -uh);
}

// ---------------------------------------------------------------------------
// Cayley map of the adjoint representation
// ---------------------------------------------------------------------------

/// Lower-left block A(x, y) = (I + R) y^ (I + R) / 2 of adjoint_cay.
template<typename S>
[[nodiscard]] Mat3<S> adjoint_cay_block(const Vec6<S> & X)
{
  const Mat3<S> IR = Mat3<S>::Identity() + so3::cay<S>(angular(X));
  return S(0.5) * IR * hat3<S>(linear(X)) * IR;
}

/// cay(ad_X) = [[cay x^, 0], [A(x, y), cay x^]].
template<typename S>
[[nodiscard]] Mat6<S> adjoint_cay(const Vec6<S> & X)
{
  const Mat3<S> R = so3::cay<S>(angular(X));
  return block_lower<S>(R, adjoint_cay_block(X), R);
}

/// Five algebraically equivalent expressions for the block A(x, y).
template<typename S>
[[nodiscard]] std::array<Mat3<S>, 5> adjoint_cay_block_forms(const Vec6<S> & X)
{
  const Vec3<S> x  = angular(X);
  const Vec3<S> y  = linear(X);
  const Mat3<S> I  = Mat3<S>::Identity();
  const Mat3<S> xh = hat3(x);
  const Mat3<S> yh = hat3(y);
  const Mat3<S> R  = so3::cay(x);
  const Mat3<S> Li = (I - xh).inverse();
  const Mat3<S> dc = so3::dcay(x);
  return {
    S(0.5) * (I + R) * yh * (I + R),
    S(2) * Li * yh * Li,
    Li * yh * (I + R),  // derivative of (I - x^)^-1 (I + x^) along y
    hat3<S>(dc * y) * R,
    yh * dc + so3::sigma(x) * xh * yh * R,
  };
}

/// For each of the five forms, its largest max-abs deviation from the other four.
template<typename S>
[[nodiscard]] std::array<S, 5> adjoint_cay_A_forms(const Vec6<S> & X)
{
  const auto forms = adjoint_cay_block_forms(X);
  std::array<S, 5> res{};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) { res[i] = std::max(res[i], max_abs(forms[i] - forms[j])); }
  }
  return res;
}

template<typename S>
struct PositionPair
{
  /// r = dcay_x y, the position for which Ad_C equals adjoint_cay(X).
  Vec3<S> r_adjoint;
  /// r = (I + cay x^) y, the position of se3::cay(X).
  Vec3<S> r_se3;
};

/// The same parameters X give different poses through se3::cay and adjoint_cay.
template<typename S>
[[nodiscard]] PositionPair<S> adjoint_vs_se3_cay_mismatch(const Vec6<S> & X)
{
  // Ad_C has lower-left block r^ R, so r = vee(A R').
  const Mat3<S> R = so3::cay<S>(angular(X));
  return {vee3<S>(adjoint_cay_block(X) * R.transpose()), (Mat3<S>::Identity() + R) * linear(X)};
}

}  // namespace lgmaps::se3
