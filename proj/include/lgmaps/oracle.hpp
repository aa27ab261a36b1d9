#pragma once

/**
 * @file oracle.hpp
 * @brief Reference implementations used to certify the closed forms: truncated
 * matrix series, the Bernoulli series for dexp^-1, central finite differences and
 * the Cayley resolvent.
 *
 * Nothing here shares code with the closed-form modules beyond hat/vee and ad6.
 */

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "core.hpp"
#include "errors.hpp"

namespace lgmaps::oracle {

struct SeriesConfig
{
  /// Terms summed before giving up; must be >= 2.
  int max_terms = 40;
  /// Stop once the max-abs entry of a term drops below this.
  double tail_tol = 1e-17;
};

namespace detail {

inline void check_config(const SeriesConfig & cfg)
{
  if (cfg.max_terms < 2) { throw InvalidInput("SeriesConfig: max_terms must be >= 2"); }
}

[[noreturn]] inline void throw_nonconvergence(const char * what, int terms)
{
  throw OracleError(std::string(what) + ": no convergence within " + std::to_string(terms) + " terms");
}

template<typename M>
[[nodiscard]] M commutator(const M & A, const M & B)
{
  return A * B - B * A;
}

}  // namespace detail

/// Bernoulli numbers B_0 .. B_20 with B_1 = -1/2.
inline constexpr std::array<double, 21> kBernoulli{
  1.0,
  -1.0 / 2,
  1.0 / 6,
  0.0,
  -1.0 / 30,
  0.0,
  1.0 / 42,
  0.0,
  -1.0 / 30,
  0.0,
  5.0 / 66,
  0.0,
  -691.0 / 2730,
  0.0,
  7.0 / 6,
  0.0,
  -3617.0 / 510,
  0.0,
  43867.0 / 798,
  0.0,
  -174611.0 / 330,
};

/// exp(M) = sum_i M^i / i!.
template<typename Derived>
[[nodiscard]] typename Derived::PlainObject series_exp(const Eigen::MatrixBase<Derived> & M, const SeriesConfig & cfg = {})
{
  using Mat = typename Derived::PlainObject;
  using S   = typename Derived::Scalar;
  detail::check_config(cfg);
  Mat term = Mat::Identity(M.rows(), M.cols());
  Mat sum  = term;
  for (int i = 1; i < cfg.max_terms; ++i) {
    term = (term * M) / S(i);
    sum += term;
    if (max_abs(term) < S(cfg.tail_tol)) { return sum; }
  }
  detail::throw_nonconvergence("series_exp", cfg.max_terms);
}

/// dexp_A(Y) = sum_i ad_A^i(Y) / (i+1)!, with ad_A(Y) = AY - YA.
template<typename Mat>
[[nodiscard]] Mat series_dexp(const Mat & A, const Mat & Y, const SeriesConfig & cfg = {})
{
  using S = typename Mat::Scalar;
  detail::check_config(cfg);
  Mat term = Y;
  Mat sum  = Y;
  for (int i = 1; i < cfg.max_terms; ++i) {
    term = detail::commutator(A, term) / S(i + 1);
    sum += term;
    if (max_abs(term) < S(cfg.tail_tol)) { return sum; }
  }
  detail::throw_nonconvergence("series_dexp", cfg.max_terms);
}

/// Operator form: sum_i adM^i / (i+1)! for the matrix adM of ad_X acting on coordinates.
template<typename Mat>
[[nodiscard]] Mat series_dexp_matrix(const Mat & adM, const SeriesConfig & cfg = {})
{
  using S = typename Mat::Scalar;
  detail::check_config(cfg);
  Mat term = Mat::Identity();
  Mat sum  = term;
  for (int i = 1; i < cfg.max_terms; ++i) {
    term = (term * adM) / S(i + 1);
    sum += term;
    if (max_abs(term) < S(cfg.tail_tol)) { return sum; }
  }
  detail::throw_nonconvergence("series_dexp_matrix", cfg.max_terms);
}

/// Largest eigenvalue modulus.
template<typename Mat>
[[nodiscard]] typename Mat::Scalar spectral_radius(const Mat & A)
{
  Eigen::ComplexEigenSolver<Mat> es(A, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace detail {

template<typename Mat>
void check_bernoulli_radius(const Mat & A)
{
  using S = typename Mat::Scalar;
  // eigenvalues of ad-type matrices are defective; allow for the sqrt(eps) solver error
  if (spectral_radius(A) > S(1) + S(1e-7)) {
    throw DomainError(Chart::bernoulli_series, "Bernoulli series: spectral radius must not exceed 1");
  }
}

}  // namespace detail

/// dexp_A^-1(Y) = sum_{i<=20} B_i / i! ad_A^i(Y); requires spectral radius of A <= 1.
template<typename Mat>
[[nodiscard]] Mat series_dexp_inv(const Mat & A, const Mat & Y)
{
  using S = typename Mat::Scalar;
  detail::check_bernoulli_radius(A);
  Mat ad_i = Y;
  Mat sum  = Y;
  S fact   = 1;
  for (std::size_t i = 1; i < kBernoulli.size(); ++i) {
    ad_i = detail::commutator(A, ad_i);
    fact *= S(i);
    if (kBernoulli[i] != 0.0) { sum += (S(kBernoulli[i]) / fact) * ad_i; }
  }
  return sum;
}

/// Operator form of series_dexp_inv; adM is the matrix of ad_X, whose spectral radius is checked.
template<typename Mat>
[[nodiscard]] Mat series_dexp_inv_matrix(const Mat & adM)
{
  using S = typename Mat::Scalar;
  detail::check_bernoulli_radius(adM);
  Mat pw  = Mat::Identity();
  Mat sum = pw;
  S fact  = 1;
  for (std::size_t i = 1; i < kBernoulli.size(); ++i) {
    pw   = pw * adM;
    fact *= S(i);
    if (kBernoulli[i] != 0.0) { sum += (S(kBernoulli[i]) / fact) * pw; }
  }
  return sum;
}

/// Default central-difference step, 1e-5 max(1, |at|).
template<typename Vec>
[[nodiscard]] typename Vec::Scalar fd_step(const Vec & at)
{
  using S = typename Vec::Scalar;
  return S(1e-5) * std::max(S(1), at.norm());
}

/// (f(at + h dir) - f(at - h dir)) / 2h.
template<typename F, typename Vec>
[[nodiscard]] auto fd_directional(F && f, const Vec & at, const Vec & dir, typename Vec::Scalar h)
{
  using S     = typename Vec::Scalar;
  const Vec p = at + h * dir;
  const Vec m = at - h * dir;
  auto fp     = f(p);
  auto fm     = f(m);
  return decltype(fp)((fp - fm) / (S(2) * h));
}

template<typename F, typename Vec>
[[nodiscard]] auto fd_directional(F && f, const Vec & at, const Vec & dir)
{
  return fd_directional(std::forward<F>(f), at, dir, fd_step(at));
}

template<typename Mat>
struct ResolventResult
{
  /// (I - M)^-1 (I + M)
  Mat value;
  /// max-abs difference to the commuted form (I + M)(I - M)^-1
  typename Mat::Scalar commuted_residual;
};

/// Cayley transform by dense solve. Throws OracleError when I - M is numerically singular.
template<typename Mat>
[[nodiscard]] ResolventResult<Mat> resolvent_cay(const Mat & M)
{
  using S         = typename Mat::Scalar;
  const Mat I     = Mat::Identity();
  const Mat L     = I - M;
  const auto sv   = Eigen::JacobiSVD<Mat>(L).singularValues();
  const S smin    = sv(sv.size() - 1);
  if (!(smin > S(0)) || sv(0) / smin >= S(1e12)) { throw OracleError("resolvent_cay: I - M is singular"); }
  const Eigen::PartialPivLU<Mat> lu(L);
  const Mat value    = lu.solve(I + M);
  const Mat commuted = (I + M) * lu.inverse();
  return {value, max_abs(value - commuted)};
}

}  // namespace lgmaps::oracle
