#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lgmaps/errors.hpp"
#include "lgmaps/sampling.hpp"
#include "lgmaps/scalars.hpp"

using namespace lgmaps;
using V3 = Vec3<double>;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(TrigCoeffs, LimitsAtZero)
{
  const auto c = trig_coeffs(0.0);
  EXPECT_EQ(c.alpha, 1.0);
  EXPECT_EQ(c.beta, 1.0);
  EXPECT_EQ(c.gamma(), 1.0);
  EXPECT_DOUBLE_EQ(c.delta, 1.0 / 6.0);
  EXPECT_EQ(c.inv_beta(), 1.0);
}

TEST(TrigCoeffs, HalfTurn)
{
  const auto c = trig_coeffs(kPi);
  EXPECT_NEAR(c.alpha, 0.0, 1e-16);
  EXPECT_NEAR(c.beta, 4.0 / (kPi * kPi), 1e-16);
  EXPECT_NEAR(c.gamma(), 0.0, 1e-16);
  EXPECT_NEAR(c.delta, 1.0 / (kPi * kPi), 1e-16);
}

TEST(TrigCoeffs, UnitAngleAgainstLongDouble)
{
  // Independent evaluation with the long double libm.
  const long double s1 = std::sin(1.0L), sh = std::sin(0.5L);
  const long double beta = 4 * sh * sh;
  const auto c          = trig_coeffs(1.0);
  EXPECT_NEAR(c.alpha, static_cast<double>(s1), 1e-16);
  EXPECT_NEAR(c.beta, static_cast<double>(beta), 1e-16);
  EXPECT_NEAR(c.delta, static_cast<double>(1 - s1), 1e-16);
  EXPECT_NEAR(c.gamma(), static_cast<double>(s1 / beta), 1e-16);
  EXPECT_NEAR(c.inv_beta(), static_cast<double>(1 / beta), 1e-16);
}

TEST(TrigCoeffs, DefiningRelations)
{
  Sampler s(11);
  for (int i = 0; i < 1000; ++i) {
    const double phi = s.uniform(0.0, 2 * kPi - 1e-3);
    const auto c     = trig_coeffs(phi);
    EXPECT_NEAR(c.gamma() * c.beta, c.alpha, 1e-13 * std::max(1.0, std::abs(c.alpha))) << phi;
    EXPECT_NEAR(c.delta * phi * phi, 1 - c.alpha, 1e-13) << phi;
    EXPECT_NEAR(c.inv_beta() * c.beta, 1.0, 1e-13) << phi;
  }
}

TEST(TrigCoeffs, InverseDomain)
{
  const double edge = 2 * kPi - kDexpInvMargin;
  const auto c      = trig_coeffs(edge + 1e-9);
  EXPECT_FALSE(c.has_inverse());
  EXPECT_TRUE(std::isfinite(c.alpha));
  EXPECT_TRUE(std::isfinite(c.delta));
  try {
    (void)c.gamma();
    FAIL() << "gamma beyond the chart must throw";
  } catch (const DomainError & e) {
    EXPECT_EQ(e.chart(), Chart::dexp_inverse);
  }
  EXPECT_THROW((void)c.inv_beta(), DomainError);
  EXPECT_THROW((void)exp_inv_coeffs(2 * kPi), DomainError);
  EXPECT_TRUE(trig_coeffs(edge - 1e-3).has_inverse());
  // alpha, beta, delta stay available past 2 pi.
  EXPECT_NO_THROW((void)trig_coeffs(10.0).delta);
}

TEST(TrigCoeffs, BranchContinuity)
{
  for (double eps : {-1e-9, 1e-9}) {
    const double phi = kSmallAngle + eps;
    const auto a     = trig_coeffs(phi, Branch::series);
    const auto b     = trig_coeffs(phi, Branch::closed_form);
    EXPECT_NEAR(a.alpha, b.alpha, 1e-14);
    EXPECT_NEAR(a.beta, b.beta, 1e-14);
    EXPECT_NEAR(a.delta, b.delta, 1e-14);
    EXPECT_NEAR(a.gamma(), b.gamma(), 1e-14);
    EXPECT_NEAR(a.inv_beta(), b.inv_beta(), 1e-14);

    const auto e1 = exp_coeffs(phi, Branch::series), e2 = exp_coeffs(phi, Branch::closed_form);
    for (auto [x, y] : {std::pair{e1.p1, e2.p1}, {e1.p2, e2.p2}, {e1.r1, e2.r1}, {e1.r2, e2.r2}, {e1.e1, e2.e1},
                        {e1.e2, e2.e2}, {e1.e3, e2.e3}, {e1.e4, e2.e4}}) {
      EXPECT_NEAR(x, y, 1e-14);
    }
    const auto i1 = exp_inv_coeffs(phi, Branch::series), i2 = exp_inv_coeffs(phi, Branch::closed_form);
    for (auto [x, y] : {std::pair{i1.q1, i2.q1}, {i1.q2, i2.q2}, {i1.t2, i2.t2}, {i1.p3, i2.p3}, {i1.f2, i2.f2},
                        {i1.f4, i2.f4}}) {
      EXPECT_NEAR(x, y, 1e-14);
    }
  }
}

TEST(TrigCoeffs, SmallAngleAccuracy)
{
  // The closed form loses digits to cancellation in 1 - sinc; compare with the
  // Taylor series (1 - sinc p)/p^2 = sum_k (-1)^k p^2k / (2k+3)! summed in long double.
  for (double phi : {1e-8, 1e-5, 1e-3, 9e-3}) {
    const long double s = static_cast<long double>(phi) * phi;
    long double term = 1.0L / 6, d = 0;
    for (int k = 0; k < 8; ++k) {
      d += term;
      term *= -s / ((2 * k + 4) * (2 * k + 5));
    }
    EXPECT_NEAR(trig_coeffs(phi).delta, static_cast<double>(d), 1e-16) << phi;
  }
}

TEST(TrigCoeffDerivs, VanishAtZeroAndOrthogonal)
{
  const auto z = trig_coeff_derivs(V3::Zero().eval(), V3(1, 2, 3));
  EXPECT_EQ(z.d_alpha, 0.0);
  EXPECT_EQ(z.d_beta, 0.0);
  EXPECT_EQ(z.d_delta, 0.0);
  EXPECT_EQ(*z.d_gamma, 0.0);

  const auto o = trig_coeff_derivs(V3(1.2, 0, 0), V3(0, 1, -1));
  EXPECT_EQ(o.d_alpha, 0.0);
  EXPECT_EQ(o.d_beta, 0.0);
  EXPECT_EQ(o.d_delta, 0.0);
  EXPECT_EQ(*o.d_gamma, 0.0);
}

TEST(TrigCoeffDerivs, CentralDifferenceAlongAxis)
{
  const V3 x(1, 0, 0), u(1, 0, 0);
  const double h = 1e-6;
  const auto p = trig_coeffs((x + h * u).norm()), m = trig_coeffs((x - h * u).norm());
  const auto d = trig_coeff_derivs(x, u);
  EXPECT_NEAR(d.d_alpha, (p.alpha - m.alpha) / (2 * h), 1e-7);
  EXPECT_NEAR(d.d_beta, (p.beta - m.beta) / (2 * h), 1e-7);
  EXPECT_NEAR(d.d_delta, (p.delta - m.delta) / (2 * h), 1e-7);
  EXPECT_NEAR(*d.d_gamma, (p.gamma() - m.gamma()) / (2 * h), 1e-7);
}

TEST(TrigCoeffDerivs, GammaAbsentPastChart)
{
  const auto d = trig_coeff_derivs(V3(0, 0, 2 * kPi), V3(0, 0, 1));
  EXPECT_FALSE(d.d_gamma.has_value());
}

TEST(TrigCoeffs, FloatScalar)
{
  const auto c = trig_coeffs(0.5f);
  EXPECT_NEAR(c.alpha, std::sin(0.5f) / 0.5f, 1e-7f);
}
