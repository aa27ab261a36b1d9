#pragma once

/**
 * @file so3.hpp
 * @brief Exponential and Cayley maps on SO(3), their right-trivialized differentials,
 * inverses and directional derivatives.
 *
 * All differentials are right-trivialized: (D_x exp)(y) = (dexp(x) y)^ exp(x^).
 * Cayley maps use the unhalved convention cay(g^) = (I - g^)^-1 (I + g^),
 * so dcay(0) = 2 I.
 */

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core.hpp"
#include "scalars.hpp"

namespace lgmaps::so3 {

// ---------------------------------------------------------------------------
// Exponential family
// ---------------------------------------------------------------------------

template<typename S>
[[nodiscard]] Mat3<S> exp(const Vec3<S> & x, Branch branch = Branch::automatic)
{
  const auto c     = trig_coeffs(x.norm(), branch);
  const Mat3<S> xh = hat3(x);
  return Mat3<S>::Identity() + c.alpha * xh + S(0.5) * c.beta * xh * xh;
}

/**
 * @brief Principal logarithm, |x| in [0, pi].
 *
 * At |x| = pi the axis is taken from the dominant diagonal of (R + R')/2, with the
 * sign chosen so that its dominant component is positive.
 */
template<typename S>
[[nodiscard]] Vec3<S> log(const Mat3<S> & R)
{
  if (orthonormality_error(R) > S(1e-9)) { throw InvalidInput("so3::log: matrix is not orthonormal"); }
  const S cos_phi  = std::clamp((R.trace() - S(1)) / S(2), S(-1), S(1));
  const Vec3<S> sv = S(0.5) * Vec3<S>(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));  // sin(phi) n
  // acos loses half the digits next to pi; the skew part still resolves the angle there.
  const S phi      = std::atan2(sv.norm(), cos_phi);

  if (cos_phi > S(-0.99)) { return sv / trig_coeffs(phi).alpha; }

  // near pi: (R + R')/2 = cos(phi) I + (1 - cos(phi)) n n'
  const Mat3<S> nn = ((S(0.5) * (R + R.transpose())) - cos_phi * Mat3<S>::Identity()) / (S(1) - cos_phi);
  Eigen::Index k   = 0;
  nn.diagonal().maxCoeff(&k);
  Vec3<S> n = nn.col(k) / std::sqrt(nn(k, k));
  if (n.dot(sv) < S(0)) { n = -n; }
  return phi * n.normalized();
}

/// dexp = I + (beta/2) x^ + (1 - alpha) n^2.
template<typename S>
[[nodiscard]] Mat3<S> dexp(const Vec3<S> & x, Branch branch = Branch::automatic)
{
  const S phi      = x.norm();
  const auto c     = exp_coeffs(phi, branch);
  const Mat3<S> xh = hat3(x);
  if (detail::use_series(phi, branch)) {
    return Mat3<S>::Identity() + S(0.5) * c.beta * xh + c.delta * xh * xh;
  }
  const Mat3<S> nh = xh / phi;
  return Mat3<S>::Identity() + S(0.5) * c.beta * xh + (S(1) - c.alpha) * nh * nh;
}

/// Alternative closed forms of dexp found in the literature; used for cross-checks only.
enum class DexpForm
{
  /// I + (1 - cos)/phi^2 x^ + (phi - sin)/phi^3 x^2
  trigonometric,
  /// [(I - exp x^) x^ + x x'] / phi^2
  rotation,
  /// n n' - alpha n^2 + (beta/2) x^
  axis,
  /// I + sinc^2(phi/2)/2 x^ + (1 - sinc(phi/2) cos(phi/2))/phi^2 x^2
  half_angle,
  /// I + (beta/2) x^ + (1 - alpha) n^2
  coefficients,
};

/// dexp evaluated through one of the closed forms; requires x != 0.
template<typename S>
[[nodiscard]] Mat3<S> dexp(const Vec3<S> & x, DexpForm form)
{
  const S phi      = x.norm();
  const Mat3<S> I  = Mat3<S>::Identity();
  const Mat3<S> xh = hat3(x);
  const Mat3<S> nh = xh / phi;
  const Vec3<S> n  = x / phi;
  switch (form) {
    case DexpForm::trigonometric:
      return I + (S(1) - std::cos(phi)) / (phi * phi) * xh + (phi - std::sin(phi)) / (phi * phi * phi) * xh * xh;
    case DexpForm::rotation: return ((I - exp(x)) * xh + x * x.transpose()) / (phi * phi);
    case DexpForm::axis: {
      const auto c = trig_coeffs(phi);
      return n * n.transpose() - c.alpha * nh * nh + S(0.5) * c.beta * xh;
    }
    case DexpForm::half_angle: {
      const S h     = phi / 2;
      const S sinch = std::sin(h) / h;
      return I + S(0.5) * sinch * sinch * xh + (S(1) - sinch * std::cos(h)) / (phi * phi) * xh * xh;
    }
    case DexpForm::coefficients: break;
  }
  return dexp(x);
}

/// dexp^-1 = I - x^/2 + (1 - gamma)/phi^2 x^2, valid for |x| < 2 pi.
template<typename S>
[[nodiscard]] Mat3<S> dexp_inv(const Vec3<S> & x, Branch branch = Branch::automatic)
{
  const auto c     = exp_inv_coeffs(x.norm(), branch);
  const Mat3<S> xh = hat3(x);
  return Mat3<S>::Identity() - S(0.5) * xh + c.q1 * xh * xh;
}

/// Directional derivative (D_x dexp)(y).
template<typename S>
[[nodiscard]] Mat3<S> ddexp(const Vec3<S> & x, const Vec3<S> & y, Branch branch = Branch::automatic)
{
  const auto c     = exp_coeffs(x.norm(), branch);
  const Mat3<S> xh = hat3(x);
  const Mat3<S> yh = hat3(y);
  return S(0.5) * c.beta * yh + c.delta * (xh * yh + yh * xh) + x.dot(y) * (c.p1 * xh + c.p2 * xh * xh);
}

/// Directional derivative (D_x dexp^-1)(y), valid for |x| < 2 pi.
template<typename S>
[[nodiscard]] Mat3<S> ddexp_inv(const Vec3<S> & x, const Vec3<S> & y, Branch branch = Branch::automatic)
{
  const auto c     = exp_inv_coeffs(x.norm(), branch);
  const Mat3<S> xh = hat3(x);
  const Mat3<S> yh = hat3(y);
  return S(-0.5) * yh + c.q1 * (xh * yh + yh * xh) + (x.dot(y) * c.q2) * xh * xh;
}

/**
 * @brief Second derivative of dexp: D_x[(D_x dexp)(y)](u), bilinear in y and u.
 *
 * The full derivative of x -> (D_x dexp)(y(x)) along (u, v) is d2dexp(x, y, u) + ddexp(x, v).
 */
template<typename S>
[[nodiscard]] Mat3<S> d2dexp(
  const Vec3<S> & x, const Vec3<S> & y, const Vec3<S> & u, Branch branch = Branch::automatic)
{
  const auto c     = exp_coeffs(x.norm(), branch);
  const Mat3<S> xh = hat3(x);
  const Mat3<S> yh = hat3(y);
  const Mat3<S> uh = hat3(u);
  const S xu = x.dot(u), yu = y.dot(u), xy = x.dot(y);
  return c.delta * (yh * uh + uh * yh) + xu * (c.p1 * yh + c.p2 * (xh * yh + yh * xh))
       + yu * (c.p1 * xh + c.p2 * xh * xh) + xy * (c.p1 * uh + c.p2 * (xh * uh + uh * xh))
       + (xy * xu) * (c.r1 * xh + c.r2 * xh * xh);
}

/// Second derivative of dexp^-1, analogous to d2dexp; valid for |x| < 2 pi.
template<typename S>
[[nodiscard]] Mat3<S> d2dexp_inv(
  const Vec3<S> & x, const Vec3<S> & y, const Vec3<S> & u, Branch branch = Branch::automatic)
{
  const auto c     = exp_inv_coeffs(x.norm(), branch);
  const Mat3<S> xh = hat3(x);
  const Mat3<S> yh = hat3(y);
  const Mat3<S> uh = hat3(u);
  const Mat3<S> x2 = xh * xh;
  const S xu = x.dot(u), yu = y.dot(u), xy = x.dot(y);
  return c.q1 * (yh * uh + uh * yh) + (c.q2 * xu) * (xh * yh + yh * xh) + (c.q2 * yu) * x2
       + (c.q2 * xy) * (xh * uh + uh * xh) + (c.t2 * xy * xu) * x2;
}

// ---------------------------------------------------------------------------
// Cayley family
// ---------------------------------------------------------------------------

/// sigma = 2 / (1 + |g|^2), in (0, 2].
template<typename S>
[[nodiscard]] S sigma(const Vec3<S> & g)
{
  return S(2) / (S(1) + g.squaredNorm());
}

/// cay = I + sigma (g^ + g^2).
template<typename S>
[[nodiscard]] Mat3<S> cay(const Vec3<S> & g)
{
  const Mat3<S> gh = hat3(g);
  return Mat3<S>::Identity() + sigma(g) * (gh + gh * gh);
}

/// Gibbs vector of R: g^ = (R - I)(R + I)^-1. Throws DomainError near a half turn.
template<typename S>
[[nodiscard]] Vec3<S> cay_inv(const Mat3<S> & R)
{
  if (orthonormality_error(R) > S(1e-9)) { throw InvalidInput("so3::cay_inv: matrix is not orthonormal"); }
  const S t1 = R.trace() + S(1);
  if (t1 < S(1e-6)) { throw DomainError(Chart::cayley, "Cayley chart: rotation angle must differ from pi"); }
  return Vec3<S>(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1)) / t1;
}

/// dcay = sigma (I + g^); dcay(-g) = dcay(g)'.
template<typename S>
[[nodiscard]] Mat3<S> dcay(const Vec3<S> & g)
{
  return sigma(g) * (Mat3<S>::Identity() + hat3(g));
}

/// dcay^-1 = I / sigma + (g^2 - g^) / 2.
template<typename S>
[[nodiscard]] Mat3<S> dcay_inv(const Vec3<S> & g)
{
  const Mat3<S> gh = hat3(g);
  return Mat3<S>::Identity() / sigma(g) + S(0.5) * (gh * gh - gh);
}

/// dcay^-1 through the rotation matrix, (I + R') / (2 sigma).
template<typename S>
[[nodiscard]] Mat3<S> dcay_inv_rot(const Vec3<S> & g)
{
  return (Mat3<S>::Identity() + cay(g).transpose()) / (S(2) * sigma(g));
}

/// (D_g dcay)(w) = sigma w^ - sigma^2 (g'w)(I + g^).
template<typename S>
[[nodiscard]] Mat3<S> ddcay(const Vec3<S> & g, const Vec3<S> & w)
{
  const S s = sigma(g);
  return s * hat3(w) - (s * s * g.dot(w)) * (Mat3<S>::Identity() + hat3(g));
}

/// (D_g dcay^-1)(w) = (g'w) I + (g^ w^ + w^ g^ - w^) / 2.
template<typename S>
[[nodiscard]] Mat3<S> ddcay_inv(const Vec3<S> & g, const Vec3<S> & w)
{
  const Mat3<S> gh = hat3(g);
  const Mat3<S> wh = hat3(w);
  return g.dot(w) * Mat3<S>::Identity() + S(0.5) * (gh * wh + wh * gh - wh);
}

/// Gibbs vector tan(phi/2) n of the rotation exp(x^); requires |x| < pi.
template<typename S>
[[nodiscard]] Vec3<S> gibbs_from_rotvec(const Vec3<S> & x)
{
  const S phi = x.norm();
  if (phi == S(0)) { return Vec3<S>::Zero(); }
  return (std::tan(phi / 2) / phi) * x;
}

}  // namespace lgmaps::so3
