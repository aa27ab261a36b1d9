#pragma once

/**
 * @file scalars.hpp
 * @brief Trigonometric coefficient bundle shared by the SO(3) and SE(3) exponential maps.
 *
 * With phi = |x| the base coefficients are
 *
 *   alpha = sinc(phi)            beta  = sinc^2(phi / 2)
 *   gamma = alpha / beta         delta = (1 - alpha) / phi^2
 *
 * Every coefficient below is an even analytic function of phi. Below kSmallAngle
 * it is evaluated from its Taylor series in s = phi^2 (truncated after s^4); above,
 * from its closed form in extended precision (quad precision when LGMAPS_HAVE_FLOAT128
 * is defined), since the higher coefficients divide by up to phi^6 and would otherwise
 * lose most of their digits near the switch.
 *
 * gamma, 1/beta and everything built from them diverge at phi = 2 pi.
 */

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/Core>

#if defined(LGMAPS_HAVE_FLOAT128)
#include <quadmath.h>
#endif

#include "errors.hpp"

namespace lgmaps {

/// Series / closed-form switch on phi = |x|.
inline constexpr double kSmallAngle = 1e-2;
/// Distance to 2 pi at which dexp^-1 (and gamma, 1/beta) are rejected.
inline constexpr double kDexpInvMargin = 1e-6;

/// Evaluation branch for coefficient functions. Only tests force a branch.
enum class Branch
{
  automatic,
  series,
  closed_form,
};

namespace detail {

template<typename S>
struct promote
{
  using type = S;
};
#if defined(LGMAPS_HAVE_FLOAT128)
template<>
struct promote<double>
{
  using type = __float128;
};
#else
template<>
struct promote<double>
{
  using type = long double;
};
#endif
template<>
struct promote<float>
{
  using type = double;
};
template<typename S>
using promote_t = typename promote<S>::type;

template<typename W>
[[nodiscard]] W wide_sin(W v)
{
  return std::sin(v);
}
template<typename W>
[[nodiscard]] W wide_cos(W v)
{
  return std::cos(v);
}
#if defined(LGMAPS_HAVE_FLOAT128)
template<>
[[nodiscard]] inline __float128 wide_sin(__float128 v)
{
  return sinq(v);
}
template<>
[[nodiscard]] inline __float128 wide_cos(__float128 v)
{
  return cosq(v);
}
#endif

template<typename S>
[[nodiscard]] bool use_series(S phi, Branch branch)
{
  if (branch == Branch::series) { return true; }
  if (branch == Branch::closed_form) { return false; }
  return phi < S(kSmallAngle);
}

/// Polynomial sum_k c[k] s^k.
template<typename S, std::size_t N>
[[nodiscard]] S horner(S s, const std::array<long double, N> & c)
{
  S acc = S(c[N - 1]);
  for (std::size_t k = N - 1; k-- > 0;) { acc = acc * s + S(c[k]); }
  return acc;
}

// Taylor coefficients in s = phi^2.
// clang-format off
inline constexpr std::array<long double, 5> kAlpha   {1.L, -1.L/6, 1.L/120, -1.L/5040, 1.L/362880};
inline constexpr std::array<long double, 5> kBeta    {1.L, -1.L/12, 1.L/360, -1.L/20160, 1.L/1814400};
inline constexpr std::array<long double, 5> kDelta   {1.L/6, -1.L/120, 1.L/5040, -1.L/362880, 1.L/39916800};
inline constexpr std::array<long double, 5> kGamma   {1.L, -1.L/12, -1.L/720, -1.L/30240, -1.L/1209600};
inline constexpr std::array<long double, 5> kInvBeta {1.L, 1.L/12, 1.L/240, 1.L/6048, 1.L/172800};
inline constexpr std::array<long double, 5> kP1      {-1.L/12, 1.L/180, -1.L/6720, 1.L/453600, -1.L/47900160};
inline constexpr std::array<long double, 5> kP2      {-1.L/60, 1.L/1260, -1.L/60480, 1.L/4989600, -1.L/622702080};
inline constexpr std::array<long double, 5> kP3      {-1.L/6, -1.L/180, -1.L/5040, -1.L/151200, -1.L/4790016};
inline constexpr std::array<long double, 5> kQ1      {1.L/12, 1.L/720, 1.L/30240, 1.L/1209600, 1.L/47900160};
inline constexpr std::array<long double, 5> kQ2      {1.L/360, 1.L/7560, 1.L/201600, 1.L/5987520, 691.L/130767436800};
inline constexpr std::array<long double, 5> kR1      {1.L/90, -1.L/1680, 1.L/75600, -1.L/5987520, 1.L/726485760};
inline constexpr std::array<long double, 5> kR2      {1.L/630, -1.L/15120, 1.L/831600, -1.L/77837760, 1.L/10897286400};
inline constexpr std::array<long double, 5> kT2      {1.L/3780, 1.L/50400, 1.L/997920, 691.L/16345929600, 1.L/622702080};
inline constexpr std::array<long double, 5> kE1      {1.L/2, 0.L, -1.L/720, 1.L/20160, -1.L/1209600};
inline constexpr std::array<long double, 5> kE2      {1.L/6, 0.L, -1.L/5040, 1.L/181440, -1.L/13305600};
inline constexpr std::array<long double, 5> kE3      {1.L/24, -1.L/360, 1.L/13440, -1.L/907200, 1.L/95800320};
inline constexpr std::array<long double, 5> kE4      {1.L/120, -1.L/2520, 1.L/120960, -1.L/9979200, 1.L/1245404160};
inline constexpr std::array<long double, 5> kF2      {1.L/12, 0.L, -1.L/30240, -1.L/604800, -1.L/15966720};
inline constexpr std::array<long double, 5> kF4      {-1.L/720, -1.L/15120, -1.L/403200, -1.L/11975040, -691.L/261534873600};
// clang-format on

[[noreturn]] inline void throw_dexp_inv_domain(long double phi)
{
  std::ostringstream os;
  os.precision(17);
  os << "dexp^-1 chart: |x| < 2*pi required (|x| = " << phi << ")";
  throw DomainError(Chart::dexp_inverse, os.str());
}

template<typename S>
[[nodiscard]] bool inverse_domain_ok(S phi)
{
  return phi < S(2 * std::numbers::pi_v<long double> - kDexpInvMargin);
}

}  // namespace detail

/**
 * @brief The scalar bundle (alpha, beta, gamma, delta, 1/beta) at angle phi.
 *
 * gamma and 1/beta are only present on [0, 2 pi); their accessors throw DomainError outside.
 */
template<typename S>
struct TrigCoeffs
{
  S phi{};
  S alpha{};
  S beta{};
  S delta{};
  std::optional<S> gamma_value;
  std::optional<S> inv_beta_value;

  [[nodiscard]] bool has_inverse() const noexcept { return gamma_value.has_value(); }

  [[nodiscard]] S gamma() const
  {
    if (!gamma_value) { detail::throw_dexp_inv_domain(static_cast<long double>(phi)); }
    return *gamma_value;
  }

  [[nodiscard]] S inv_beta() const
  {
    if (!inv_beta_value) { detail::throw_dexp_inv_domain(static_cast<long double>(phi)); }
    return *inv_beta_value;
  }
};

template<typename S>
[[nodiscard]] TrigCoeffs<S> trig_coeffs(S phi, Branch branch = Branch::automatic)
{
  TrigCoeffs<S> c;
  c.phi           = phi;
  const bool inv  = detail::inverse_domain_ok(phi);
  if (detail::use_series(phi, branch)) {
    const S s = phi * phi;
    c.alpha   = detail::horner(s, detail::kAlpha);
    c.beta    = detail::horner(s, detail::kBeta);
    c.delta   = detail::horner(s, detail::kDelta);
    if (inv) {
      c.gamma_value    = detail::horner(s, detail::kGamma);
      c.inv_beta_value = detail::horner(s, detail::kInvBeta);
    }
    return c;
  }
  using W       = detail::promote_t<S>;
  const W p     = W(phi);
  const W sh    = detail::wide_sin(p / 2);
  const W ch    = detail::wide_cos(p / 2);
  const W alpha = 2 * sh * ch / p;
  const W sinc2 = 2 * sh / p;
#if defined(LGMAPS_FAULT_INJECTION)
  // Test-only build: a relative 1e-6 error in beta off the series branch.
  const W beta = sinc2 * sinc2 * W(1 + 1e-6);
#else
  const W beta  = sinc2 * sinc2;
#endif
  c.alpha       = S(alpha);
  c.beta        = S(beta);
  c.delta       = S((1 - alpha) / (p * p));
  if (inv) {
    c.gamma_value    = S(alpha / beta);
    c.inv_beta_value = S(1 / beta);
  }
  return c;
}

/**
 * @brief Coefficients for the exponential-family maps and their derivatives at phi.
 *
 * Names follow the structure of the formulas; with s = phi^2 and h(s) := beta/2,
 * d(s) := delta (the x^ and x^2 coefficients of dexp):
 *
 *   p1 = (alpha - beta) / phi^2                 = 2 h'(s)
 *   p2 = (beta/2 - 3 delta) / phi^2             = 2 d'(s)
 *   r1 = (1 - 5 alpha + 4 beta)/phi^4 - beta/(2 phi^2) = 4 h''(s)
 *   r2 = (alpha - 7/2 beta + 15 delta) / phi^4  = 4 d''(s)
 *   e1..e4: coefficients of ad, ad^2, ad^3, ad^4 in the ad-power form of SE(3) dexp.
 */
template<typename S>
struct ExpCoeffs
{
  S phi{};
  S alpha{}, beta{}, delta{};
  S p1{}, p2{};
  S r1{}, r2{};
  S e1{}, e2{}, e3{}, e4{};
};

template<typename S>
[[nodiscard]] ExpCoeffs<S> exp_coeffs(S phi, Branch branch = Branch::automatic)
{
  ExpCoeffs<S> c;
  c.phi = phi;
  if (detail::use_series(phi, branch)) {
    const S s = phi * phi;
    c.alpha   = detail::horner(s, detail::kAlpha);
    c.beta    = detail::horner(s, detail::kBeta);
    c.delta   = detail::horner(s, detail::kDelta);
    c.p1      = detail::horner(s, detail::kP1);
    c.p2      = detail::horner(s, detail::kP2);
    c.r1      = detail::horner(s, detail::kR1);
    c.r2      = detail::horner(s, detail::kR2);
    c.e1      = detail::horner(s, detail::kE1);
    c.e2      = detail::horner(s, detail::kE2);
    c.e3      = detail::horner(s, detail::kE3);
    c.e4      = detail::horner(s, detail::kE4);
    return c;
  }
  using W       = detail::promote_t<S>;
  const W p     = W(phi);
  const W p2    = p * p;
  const W p4    = p2 * p2;
  const W sh    = detail::wide_sin(p / 2);
  const W ch    = detail::wide_cos(p / 2);
  const W alpha = 2 * sh * ch / p;
  const W sinc2 = 2 * sh / p;
  const W beta  = sinc2 * sinc2;
  const W delta = (1 - alpha) / p2;
  c.alpha       = S(alpha);
  c.beta        = S(beta);
  c.delta       = S(delta);
  c.p1          = S((alpha - beta) / p2);
  c.p2          = S((beta / 2 - 3 * delta) / p2);
  c.r1          = S((1 - 5 * alpha + 4 * beta) / p4 - beta / (2 * p2));
  c.r2          = S((alpha - W(3.5) * beta + 15 * delta) / p4);
  c.e1          = S(beta - alpha / 2);
  c.e2          = S((5 * delta - beta / 2) / 2);
  c.e3          = S((beta - alpha) / (2 * p2));
  c.e4          = S((3 * delta - beta / 2) / (2 * p2));
  return c;
}

/**
 * @brief Coefficients for dexp^-1 and its derivatives; only defined for phi < 2 pi.
 *
 * With k(s) := (1 - gamma)/phi^2 (the x^2 coefficient of dexp^-1):
 *
 *   q1 = (1 - gamma) / phi^2                    = k(s)
 *   q2 = (1/beta + gamma - 2) / phi^4           = 2 k'(s)
 *   t2 = -1/(4 phi^4) + (8 - gamma(3+gamma) - 2(1+gamma)/beta) / phi^6 = 4 k''(s)
 *   p3 = (gamma - gamma^2 - phi^2/4) / phi^2    (D gamma)(u) = p3 x'u
 *   f2, f4: coefficients of ad^2 and ad^4 in the ad-power form of SE(3) dexp^-1.
 */
template<typename S>
struct ExpInvCoeffs
{
  S phi{};
  S gamma{}, inv_beta{};
  S q1{}, q2{}, t2{}, p3{};
  S f2{}, f4{};
};

template<typename S>
[[nodiscard]] ExpInvCoeffs<S> exp_inv_coeffs(S phi, Branch branch = Branch::automatic)
{
  if (!detail::inverse_domain_ok(phi)) { detail::throw_dexp_inv_domain(static_cast<long double>(phi)); }
  ExpInvCoeffs<S> c;
  c.phi = phi;
  if (detail::use_series(phi, branch)) {
    const S s  = phi * phi;
    c.gamma    = detail::horner(s, detail::kGamma);
    c.inv_beta = detail::horner(s, detail::kInvBeta);
    c.q1       = detail::horner(s, detail::kQ1);
    c.q2       = detail::horner(s, detail::kQ2);
    c.t2       = detail::horner(s, detail::kT2);
    c.p3       = detail::horner(s, detail::kP3);
    c.f2       = detail::horner(s, detail::kF2);
    c.f4       = detail::horner(s, detail::kF4);
    return c;
  }
  using W       = detail::promote_t<S>;
  const W p     = W(phi);
  const W p2    = p * p;
  const W p4    = p2 * p2;
  const W sh    = detail::wide_sin(p / 2);
  const W ch    = detail::wide_cos(p / 2);
  const W alpha = 2 * sh * ch / p;
  const W sinc2 = 2 * sh / p;
  const W beta  = sinc2 * sinc2;
  const W ib    = 1 / beta;
  const W gamma = alpha * ib;
  c.gamma       = S(gamma);
  c.inv_beta    = S(ib);
  c.q1          = S((1 - gamma) / p2);
  c.q2          = S((ib + gamma - 2) / p4);
  c.t2          = S(-1 / (4 * p4) + (8 - gamma * (3 + gamma) - 2 * (1 + gamma) * ib) / (p4 * p2));
  c.p3          = S((gamma - gamma * gamma - p2 / 4) / p2);
  c.f2          = S((2 - (1 + 3 * alpha) * ib / 2) / p2);
  c.f4          = S((1 - (1 + alpha) * ib / 2) / p4);
  return c;
}

/// Directional derivatives of alpha, beta, delta and gamma at x along u.
template<typename S>
struct TrigCoeffDerivs
{
  S d_alpha{};
  S d_beta{};
  S d_delta{};
  /// Absent when |x| >= 2 pi - kDexpInvMargin.
  std::optional<S> d_gamma;
};

template<typename S>
[[nodiscard]] TrigCoeffDerivs<S> trig_coeff_derivs(
  const Eigen::Matrix<S, 3, 1> & x, const Eigen::Matrix<S, 3, 1> & u, Branch branch = Branch::automatic)
{
  const S phi        = x.norm();
  const S xu         = x.dot(u);
  const ExpCoeffs<S> c = exp_coeffs(phi, branch);
  TrigCoeffDerivs<S> d;
  d.d_alpha = (c.delta - c.beta / 2) * xu;
  d.d_beta  = 2 * c.p1 * xu;
  d.d_delta = c.p2 * xu;
  if (detail::inverse_domain_ok(phi)) { d.d_gamma = exp_inv_coeffs(phi, branch).p3 * xu; }
  return d;
}

}  // namespace lgmaps
