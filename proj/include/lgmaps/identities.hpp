#pragma once

/**
 * @file identities.hpp
 * @brief Residuals of the algebraic identities linking exp, dexp and the adjoints.
 *
 * Every function returns max-abs residuals; zero means the identity holds exactly.
 */

#include <array>

#include "core.hpp"
#include "oracle.hpp"
#include "se3.hpp"
#include "so3.hpp"

namespace lgmaps {

/**
 * @brief exp x^ against dexp^-T dexp, dexp dexp^-T, I + x^ dexp and I + dexp x^.
 *
 * Requires |x| < 2 pi.
 */
template<typename S>
[[nodiscard]] std::array<S, 4> so3_dexp_identities(const Vec3<S> & x)
{
  const Mat3<S> R   = so3::exp(x);
  const Mat3<S> d   = so3::dexp(x);
  const Mat3<S> dit = so3::dexp_inv(x).transpose();
  const Mat3<S> xh  = hat3(x);
  const Mat3<S> I   = Mat3<S>::Identity();
  return {max_abs(R - dit * d), max_abs(R - d * dit), max_abs(R - (I + xh * d)), max_abs(R - (I + d * xh))};
}

/// Ad of exp X against the series exponential of ad_X.
template<typename S>
[[nodiscard]] S se3_Ad_exp_identity_check(const Vec6<S> & X)
{
  return max_abs(Ad6(se3::exp(X)) - oracle::series_exp(ad6(X)));
}

/**
 * @brief Ad_C against dexp(-X)^-1 dexp(X), dexp(X) dexp(-X)^-1, I + ad dexp and I + dexp ad.
 *
 * C = exp X; requires |x| < 2 pi.
 */
template<typename S>
[[nodiscard]] std::array<S, 4> se3_dexp_Ad_identities(const Vec6<S> & X)
{
  const Mat6<S> Ad  = Ad6(se3::exp(X));
  const Mat6<S> d   = se3::dexp(X);
  const Mat6<S> dim = se3::dexp_inv<S>(-X);
  const Mat6<S> a   = ad6(X);
  const Mat6<S> I   = Mat6<S>::Identity();
  return {max_abs(Ad - dim * d), max_abs(Ad - d * dim), max_abs(Ad - (I + a * d)), max_abs(Ad - (I + d * a))};
}

}  // namespace lgmaps
