#include <gtest/gtest.h>

#include <numbers>

#include "lgmaps/errors.hpp"
#include "lgmaps/oracle.hpp"
#include "lgmaps/sampling.hpp"

using namespace lgmaps;
using V3 = Vec3<double>;
using V6 = Vec6<double>;
using M3 = Mat3<double>;
using M6 = Mat6<double>;

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k)
{
  double r = 1;
  for (int i = 1; i <= k; ++i) { r = r * (n - k + i) / i; }
  return r;
}

}  // namespace

TEST(SeriesExp, KnownValues)
{
  EXPECT_EQ(oracle::series_exp(M3::Zero().eval()), M3::Identity());
  M3 q;
  q << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_LT(max_abs(M3(oracle::series_exp(hat3(V3(0, 0, kPi / 2))) - q)), 1e-14);
}

TEST(SeriesExp, NonConvergenceIsReported)
{
  oracle::SeriesConfig cfg;
  cfg.max_terms = 5;
  EXPECT_THROW((void)oracle::series_exp(hat3(V3(0, 0, 3)), cfg), OracleError);
  cfg.max_terms = 1;
  EXPECT_THROW((void)oracle::series_exp(hat3(V3(0, 0, 3)), cfg), InvalidInput);
}

TEST(SeriesDexp, Trivial)
{
  const M3 Y = hat3(V3(1, 2, 3));
  EXPECT_EQ(oracle::series_dexp(M3::Zero().eval(), Y), Y);
  const M3 A = hat3(V3(0.5, -1, 2));
  EXPECT_LT(max_abs(M3(oracle::series_dexp(A, A) - A)), 1e-15);
}

TEST(SeriesDexp, CommutatorFormMatchesMatrixForm)
{
  Sampler s(61);
  for (int i = 0; i < 100; ++i) {
    const V3 x = s.vec3(0, kPi), y = s.vec3(0, 2);
    const M3 a = oracle::series_dexp(hat3(x), hat3(y));
    const M3 b = hat3<double>(oracle::series_dexp_matrix<M3>(hat3(x)) * y);
    EXPECT_LT(max_abs(M3(a - b)), 1e-13);
  }
}

TEST(Bernoulli, Recurrence)
{
  // sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1.
  for (int n = 1; n <= 20; ++n) {
    double sum = 0;
    for (int k = 0; k <= n; ++k) { sum += binomial(n + 1, k) * oracle::kBernoulli[static_cast<std::size_t>(k)]; }
    EXPECT_NEAR(sum, 0.0, 1e-9 * binomial(n + 1, n / 2)) << n;
  }
  EXPECT_EQ(oracle::kBernoulli[1], -0.5);
}

TEST(SeriesDexpInv, TrivialAndFirstTerm)
{
  const M3 Y = hat3(V3(1, 2, 3));
  EXPECT_EQ(oracle::series_dexp_inv(M3::Zero().eval(), Y), Y);
  // For tiny A the result is Y - [A, Y]/2 up to second order.
  const M3 A = 1e-6 * hat3(V3(0.3, 0.1, -0.2));
  const M3 lin = Y - 0.5 * (A * Y - Y * A);
  EXPECT_LT(max_abs(M3(oracle::series_dexp_inv(A, Y) - lin)), 1e-12);
}

TEST(SeriesDexpInv, InvertsSeriesDexp)
{
  Sampler s(62);
  for (int i = 0; i < 100; ++i) {
    const V3 x = s.vec3(0, 1);
    const M3 D = oracle::series_dexp_matrix<M3>(hat3(x));
    EXPECT_LT(max_abs(M3(oracle::series_dexp_inv_matrix<M3>(hat3(x)) * D - M3::Identity())), 1e-12);
  }
}

TEST(SeriesDexpInv, RadiusEnforced)
{
  const M3 A = hat3(V3(0, 0, 1.5));
  try {
    (void)oracle::series_dexp_inv(A, A);
    FAIL() << "radius above 1 must be rejected";
  } catch (const DomainError & e) {
    EXPECT_EQ(e.chart(), Chart::bernoulli_series);
  }
  EXPECT_NO_THROW((void)oracle::series_dexp_inv_matrix<M6>(ad6<double>(screw<double>(V3(0, 0.99, 0), V3(5, 5, 5)))));
}

TEST(FiniteDifference, ConstantAndLinear)
{
  const V3 at(0.3, 1.0, -2.0), dir(1, 2, 3);
  const M3 C = M3::Random();
  EXPECT_EQ(oracle::fd_directional([&C](const V3 &) { return C; }, at, dir), M3::Zero());
  const M3 fd = oracle::fd_directional([](const V3 & z) { return hat3(z); }, at, dir);
  EXPECT_LT(max_abs(M3(fd - hat3(dir))), 1e-10);
  EXPECT_DOUBLE_EQ(oracle::fd_step(at), 1e-5 * at.norm());
  EXPECT_DOUBLE_EQ(oracle::fd_step(V3(0.1, 0, 0)), 1e-5);
}

TEST(FiniteDifference, SecondOrder)
{
  using V1 = Eigen::Matrix<double, 1, 1>;
  auto f   = [](const V1 & z) { return V1(z(0) * z(0) * z(0) + 2 * z(0)); };
  const V1 at(0.7), dir(1.0);
  const double exact = 3 * 0.7 * 0.7 + 2;
  const double e1    = std::abs(oracle::fd_directional(f, at, dir, 1e-2)(0) - exact);
  const double e2    = std::abs(oracle::fd_directional(f, at, dir, 5e-3)(0) - exact);
  const double ratio = e1 / e2;
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(Resolvent, KnownValuesAndCommutedForm)
{
  const auto z = oracle::resolvent_cay<M3>(M3::Zero());
  EXPECT_EQ(z.value, M3::Identity());
  M3 q;
  q << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_LT(max_abs(M3(oracle::resolvent_cay<M3>(hat3(V3(0, 0, 1))).value - q)), 1e-15);
  Sampler s(63);
  for (int i = 0; i < 100; ++i) {
    const auto r = oracle::resolvent_cay<M6>(ad6(s.screw6(3, 2)));
    EXPECT_LT(r.commuted_residual, 1e-12);
  }
}

TEST(Resolvent, SingularIsReported)
{
  EXPECT_THROW((void)oracle::resolvent_cay<M3>(M3::Identity()), OracleError);
}

TEST(SpectralRadius, SkewMatrix)
{
  EXPECT_NEAR(oracle::spectral_radius(hat3(V3(0, 0.6, 0.8))), 1.0, 1e-14);
}
