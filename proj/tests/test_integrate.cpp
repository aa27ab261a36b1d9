#include <gtest/gtest.h>

#include <cmath>

#include "lgmaps/errors.hpp"
#include "lgmaps/integrate.hpp"
#include "lgmaps/problems.hpp"
#include "lgmaps/se3.hpp"

using namespace lgmaps;
using V3 = Vec3<double>;

namespace {

Vec6d sc(const V3 & x, const V3 & y)
{
  return screw<double>(x, y);
}

double final_error(const IntegrationResult & r, const Posed & expect)
{
  return pose_error(expect, r.trajectory.samples.back().C);
}

}  // namespace

// ----------------------------------------------------------------- coordinate maps

TEST(CoordinateMap, DifferentialInverseAtZero)
{
  EXPECT_EQ(CoordinateMap::exponential().dmap_inv(Vec6d::Zero()), Mat6d::Identity());
  EXPECT_EQ(CoordinateMap::cayley().dmap_inv(Vec6d::Zero()), Mat6d(0.5 * Mat6d::Identity()));
}

TEST(CoordinateMap, Parsing)
{
  EXPECT_EQ(parse_map_kind("exp"), MapKind::exponential);
  EXPECT_EQ(parse_map_kind("cayley"), MapKind::cayley);
  EXPECT_EQ(parse_method("rk4"), Method::mk_rk4);
  EXPECT_EQ(parse_method("implicit_midpoint"), Method::implicit_midpoint);
  EXPECT_THROW((void)parse_map_kind("quat"), InvalidInput);
  EXPECT_THROW((void)parse_method("euler"), InvalidInput);
}

// ----------------------------------------------------------------- single steps

TEST(MkRk4, ConstantTwistIsExactForExp)
{
  const Vec6d V = default_constant_twist();
  const Posed C0{so3::exp(V3(0.2, 0.1, -0.3)), V3(1, 2, 3)};
  for (Frame f : {Frame::body, Frame::spatial}) {
    const LieSystem sys = constant_twist(V, f, C0);
    const StepResult r  = mk_rk4_step(CoordinateMap::exponential(), sys, State{0.0, C0, {}}, 0.3);
    EXPECT_LT(max_abs(Vec6d(r.X - 0.3 * V)), 1e-15);
    EXPECT_LT(pose_error(constant_twist_exact(V, f, C0, 0.3), r.state.C), 1e-15);
  }
}

TEST(MkRk4, ConstantTwistCayleyCoordinates)
{
  // Along a rotation ray the Cayley coordinates obey g' = (1 + |g|^2) w / 2, so
  // g(h) = tan(h |w| / 2) w / |w|, which RK4 only approximates; a pure translation
  // gives g(h) = h v / 2 exactly.
  const V3 w(0.3, -0.2, 0.9);
  const double h  = 0.01;
  const StepResult r = mk_rk4_step(CoordinateMap::cayley(), constant_twist(sc(w, V3::Zero())), State{}, h);
  const V3 g         = std::tan(h * w.norm() / 2) * w.normalized();
  EXPECT_LT(max_abs(V3(angular(r.X) - g)), 1e-12);
  EXPECT_LT(max_abs(V3(linear(r.X))), 1e-16);

  const V3 v(0.5, 0.1, -0.4);
  const StepResult t = mk_rk4_step(CoordinateMap::cayley(), constant_twist(sc(V3::Zero(), v)), State{}, h);
  EXPECT_LT(max_abs(Vec6d(t.X - sc(V3::Zero(), 0.5 * h * v))), 1e-16);
}

TEST(MkRk4, ZeroFieldAndFieldOverload)
{
  TwistField zero{Frame::spatial, [](double, const Posed &) { return Vec6d::Zero().eval(); }};
  const Posed C{so3::exp(V3(1, 0, 0)), V3(0, 1, 0)};
  EXPECT_EQ(mk_rk4_step(CoordinateMap::cayley(), zero, C, 0.0, 0.1).matrix(), C.matrix());
}

TEST(MkRk4, ChartExitIsRejected)
{
  const LieSystem sys = constant_twist(sc(V3(0, 0, 10), V3::Zero()));
  EXPECT_THROW((void)mk_rk4_step(CoordinateMap::exponential(), sys, State{}, 1.0), StepRejected);
}

TEST(ImplicitMidpoint, ConstantTwistOneIteration)
{
  const Vec6d V = default_constant_twist();
  for (Frame f : {Frame::body, Frame::spatial}) {
    const StepResult r = implicit_midpoint_step(CoordinateMap::exponential(), constant_twist(V, f), State{}, 0.2);
    EXPECT_LE(r.iterations, 1);
    EXPECT_LT(max_abs(Vec6d(r.X - 0.2 * V)), 1e-14);
    EXPECT_LT(r.residuals.back(), 1e-12);
  }
}

TEST(ImplicitMidpoint, CayleyRotationCoordinates)
{
  // g = h (1 + |g|^2 / 4) w / 2 along the ray; smaller root of the quadratic in |g|.
  const V3 w(0.0, 0.6, 0.8);
  const double h  = 0.3;
  const StepResult r = implicit_midpoint_step(CoordinateMap::cayley(), constant_twist(sc(w, V3::Zero())), State{}, h);
  const double a     = h * w.norm() / 8;
  const double g     = (1 - std::sqrt(1 - 4 * a * (h * w.norm() / 2))) / (2 * a);
  EXPECT_LT(max_abs(V3(angular(r.X) - g * w.normalized())), 1e-13);
}

TEST(ImplicitMidpoint, JacobianMatchesDifferences)
{
  const LieSystem sys = heavy_top(heavy_top_convergence_params());
  const State s{0.0, sys.C0, sys.aux0};
  for (const CoordinateMap & map : {CoordinateMap::exponential(), CoordinateMap::cayley()}) {
    const MidpointSystem G(map, sys, s, 0.05);
    Eigen::VectorXd Z(G.dim());
    Z << 0.1, -0.2, 0.3, 0.0, 0.0, 0.0, 0.05, -0.02, 0.1;
    const Eigen::MatrixXd J = G.jacobian(Z);
    Eigen::MatrixXd Jfd(G.dim(), G.dim());
    const double e = 1e-6;
    for (int j = 0; j < G.dim(); ++j) {
      Eigen::VectorXd Zp = Z, Zm = Z;
      Zp(j) += e;
      Zm(j) -= e;
      Jfd.col(j) = (G.residual(Zp) - G.residual(Zm)) / (2 * e);
    }
    EXPECT_LT((J - Jfd).norm() / Jfd.norm(), 1e-5);
  }
}

TEST(ImplicitMidpoint, NewtonConvergesQuadratically)
{
  const LieSystem sys = heavy_top(heavy_top_convergence_params());
  for (const CoordinateMap & map : {CoordinateMap::exponential(), CoordinateMap::cayley()}) {
    const StepResult r = implicit_midpoint_step(map, sys, State{0.0, sys.C0, sys.aux0}, 0.05);
    ASSERT_GE(r.residuals.size(), 3u);
    EXPECT_LT(r.residuals.back(), 1e-12);
    for (std::size_t k = 0; k + 1 < r.residuals.size(); ++k) {
      const double rk = r.residuals[k], rn = r.residuals[k + 1];
      // Below ~1e-10 round-off in the residual itself takes over.
      if (rk < 1e-3 && rk > 1e-10) { EXPECT_LE(rn, 1e3 * rk * rk) << k; }
    }
  }
}

TEST(ImplicitMidpoint, NewtonFailureCarriesResidual)
{
  const LieSystem sys = heavy_top(heavy_top_convergence_params());
  NewtonOptions opt;
  opt.max_iters = 1;
  try {
    (void)implicit_midpoint_step(CoordinateMap::exponential(), sys, State{0.0, sys.C0, sys.aux0}, 0.05, opt);
    FAIL() << "one iteration cannot reach 1e-12";
  } catch (const NewtonFailure & e) {
    EXPECT_GT(e.residual(), 1e-12);
  }
}

// ----------------------------------------------------------------- trajectories

TEST(Integrate, ConstantTwistExactAnyStep)
{
  const Vec6d V = default_constant_twist();
  const Posed C0{so3::exp(V3(-0.4, 0.3, 0.2)), V3(0.5, 0, -1)};
  for (Frame f : {Frame::body, Frame::spatial}) {
    for (double h : {0.5, 0.1, 0.013}) {
      const auto r = integrate(constant_twist(V, f, C0), Method::mk_rk4, MapKind::exponential, h, 1.0);
      ASSERT_FALSE(r.error);
      EXPECT_LT(final_error(r, constant_twist_exact(V, f, C0, 1.0)), 1e-12) << h;
    }
  }
}

TEST(Integrate, SamplesAreOrderedAndOnTheGroup)
{
  const auto r = integrate(heavy_top(), Method::mk_rk4, MapKind::cayley, 0.01, 2.0, 7);
  ASSERT_FALSE(r.error);
  const auto & s = r.trajectory.samples;
  EXPECT_DOUBLE_EQ(s.back().t, 2.0);
  for (std::size_t i = 1; i < s.size(); ++i) { EXPECT_GT(s[i].t, s[i - 1].t); }
  for (const auto & smp : s) { EXPECT_TRUE(is_rotation(smp.C.R, 1e-9)); }
}

TEST(Integrate, GroupClosureOverTenThousandSteps)
{
  for (Method m : {Method::mk_rk4, Method::implicit_midpoint}) {
    for (MapKind k : {MapKind::exponential, MapKind::cayley}) {
      const auto r = integrate(heavy_top(), m, k, 1e-3, 10.0, 100);
      ASSERT_FALSE(r.error) << *r.error;
      double worst = 0;
      for (const auto & smp : r.trajectory.samples) { worst = std::max(worst, smp.drift_orth); }
      EXPECT_LT(worst, 1e-11) << to_string(m) << " " << to_string(k);
    }
  }
}

TEST(Integrate, PartialTrajectoryOnFailure)
{
  const auto r = integrate(constant_twist(sc(V3(0, 0, 10), V3::Zero())), Method::mk_rk4, MapKind::exponential, 1.0, 3.0);
  ASSERT_TRUE(r.error);
  EXPECT_EQ(r.trajectory.samples.size(), 1u);
}

TEST(Integrate, InvalidArguments)
{
  EXPECT_THROW((void)integrate(heavy_top(), Method::mk_rk4, MapKind::exponential, 0.0, 1.0), InvalidInput);
  EXPECT_THROW((void)integrate(heavy_top(), Method::mk_rk4, MapKind::exponential, 0.1, 1.0, 0), InvalidInput);
}

// ----------------------------------------------------------------- heavy top

TEST(HeavyTop, SleepingTopSpinsAboutVertical)
{
  HeavyTopParams p;
  p.pi0 = V3(0, 0, 1);
  const auto r = integrate(heavy_top(p), Method::mk_rk4, MapKind::exponential, 1e-2, 5.0);
  ASSERT_FALSE(r.error);
  for (const auto & smp : r.trajectory.samples) {
    EXPECT_LT(*smp.drift_energy, 1e-15);
    EXPECT_NEAR(smp.C.R(2, 2), 1.0, 1e-15);
    EXPECT_LT(max_abs(Vec3<double>(smp.aux - p.pi0)), 1e-15);
  }
  // Spin rate pi_3 / I_3 about e3.
  EXPECT_LT(max_abs(Mat3<double>(r.trajectory.samples.back().C.R - so3::exp(V3(0, 0, 5.0)))), 1e-12);
}

TEST(HeavyTop, ConservesEnergyAndCasimirWithRk4)
{
  const auto r = integrate(heavy_top(), Method::mk_rk4, MapKind::exponential, 1e-3, 10.0, 100);
  ASSERT_FALSE(r.error);
  for (const auto & smp : r.trajectory.samples) {
    EXPECT_LT(*smp.drift_energy, 1e-8);
    EXPECT_LT(*smp.drift_casimir, 1e-8);
    const V3 Gamma = smp.C.R.transpose() * V3::UnitZ();
    EXPECT_NEAR(Gamma.norm(), 1.0, 1e-12);
  }
}

TEST(HeavyTop, RejectsBadInertia)
{
  HeavyTopParams p;
  p.inertia = V3(1, 0, 1);
  EXPECT_THROW((void)heavy_top(p), InvalidInput);
}

// ----------------------------------------------------------------- convergence

TEST(Convergence, Rk4AndMidpointOrders)
{
  const LieSystem sys = heavy_top(heavy_top_convergence_params());
  const std::vector<double> hs{4e-3, 2e-3, 1e-3, 5e-4};
  for (MapKind k : {MapKind::exponential, MapKind::cayley}) {
    const auto rk = convergence_study(sys, Method::mk_rk4, k, hs, kHeavyTopConvergenceTEnd);
    for (std::size_t i = 1; i < rk.size(); ++i) {
      ASSERT_TRUE(rk[i].observed_order);
      EXPECT_GE(*rk[i].observed_order, 3.7);
      EXPECT_LE(*rk[i].observed_order, 4.3);
    }
    const auto mp = convergence_study(sys, Method::implicit_midpoint, k, hs, kHeavyTopConvergenceTEnd);
    for (std::size_t i = 1; i < mp.size(); ++i) {
      ASSERT_TRUE(mp[i].observed_order);
      EXPECT_GE(*mp[i].observed_order, 1.8);
      EXPECT_LE(*mp[i].observed_order, 2.2);
    }
    EXPECT_NEAR(*fitted_order(mp), 2.0, 0.2);
  }
}

TEST(Convergence, ConstantTwistIsExact)
{
  const auto rows = convergence_study(constant_twist(default_constant_twist()), Method::mk_rk4, MapKind::exponential,
                                      {0.1, 0.05, 0.025}, 1.0);
  for (const auto & r : rows) {
    EXPECT_TRUE(r.exact);
    EXPECT_FALSE(r.observed_order);
  }
  EXPECT_FALSE(fitted_order(rows));
}

TEST(Convergence, NeedsThreeSteps)
{
  EXPECT_THROW((void)convergence_study(heavy_top(), Method::mk_rk4, MapKind::exponential, {0.1, 0.05}, 1.0),
               InvalidInput);
}

// ----------------------------------------------------------------- beams

TEST(Beam, ConstantCurvatureOneSegmentIsExact)
{
  const Strain chi = helix_strain(1.0, 0.2);
  const double L   = 2.5;
  const Trajectory tr = beam_reconstruct(chi, L, 1, MapKind::exponential);
  EXPECT_LT(pose_error(se3::exp<double>(L * chi(0.0)), tr.samples.back().C), 1e-12);
  for (int N : {3, 17}) {
    EXPECT_LT(pose_error(se3::exp<double>(L * chi(0.0)), beam_reconstruct(chi, L, N, MapKind::exponential).samples.back().C),
              1e-12);
  }
}

TEST(Beam, ZeroStrainStaysAtStart)
{
  const Posed C0{so3::exp(V3(0.1, 0.2, 0.3)), V3(1, 1, 1)};
  const Strain zero = [](double) { return Vec6d::Zero().eval(); };
  for (MapKind k : {MapKind::exponential, MapKind::cayley}) {
    for (const auto & s : beam_reconstruct(zero, 3.0, 5, k, C0).samples) { EXPECT_EQ(s.C.matrix(), C0.matrix()); }
  }
}

TEST(Beam, CayleyApproachesExpAtSecondOrder)
{
  const Strain chi = varying_strain();
  std::vector<double> diffs;
  for (int N : {16, 32, 64, 128}) {
    const V3 re = beam_reconstruct(chi, 2.0, N, MapKind::exponential).samples.back().C.r;
    const V3 rc = beam_reconstruct(chi, 2.0, N, MapKind::cayley).samples.back().C.r;
    diffs.push_back((re - rc).norm());
  }
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    const double order = std::log2(diffs[i - 1] / diffs[i]);
    EXPECT_NEAR(order, 2.0, 0.2) << i;
  }
}

TEST(Beam, SystemFormMatchesReconstruction)
{
  // The helix is also a constant body twist in arclength.
  const auto r = integrate(beam_system(helix_strain()), Method::mk_rk4, MapKind::exponential, 0.1, 2.0);
  ASSERT_FALSE(r.error);
  EXPECT_LT(final_error(r, se3::exp<double>(2.0 * helix_strain()(0.0))), 1e-12);
  EXPECT_THROW((void)beam_reconstruct(helix_strain(), 1.0, 0, MapKind::exponential), InvalidInput);
}
