#pragma once

/// @file problems.hpp
/// @brief Benchmark systems: constant twists, the heavy top and beam reconstruction.

#include <functional>

#include "integrate.hpp"

namespace lgmaps {

/// Constant twist V in the given frame; the exact flow is C0 exp(t V) (body) or exp(t V) C0 (spatial).
[[nodiscard]] LieSystem constant_twist(const Vec6d & V, Frame frame = Frame::body, const Posed & C0 = Posed::identity());

/// Default twist used by the CLI and tests.
[[nodiscard]] Vec6d default_constant_twist();

/// Closed-form solution of constant_twist at time t.
[[nodiscard]] Posed constant_twist_exact(const Vec6d & V, Frame frame, const Posed & C0, double t);

/**
 * @brief Lagrange top with body axis chi to the center of mass.
 *
 *   pi' = pi x Omega + mgl (Gamma x chi),   Gamma = R' e3,   Omega = I_b^-1 pi
 *
 * The body twist fed to the reconstruction is (Omega, 0).
 */
struct HeavyTopParams
{
  Vec3<double> inertia = Vec3<double>(2.0, 2.0, 1.0);
  double mgl           = 1.0;
  Vec3<double> chi     = Vec3<double>::UnitZ();
  Vec3<double> pi0     = Vec3<double>(0.1, 0.1, 1.0);
  Mat3<double> R0      = Mat3<double>::Identity();
};

/// Faster, tilted top for convergence tables: its truncation error stays well above round-off.
[[nodiscard]] HeavyTopParams heavy_top_convergence_params();
/// Final time paired with heavy_top_convergence_params.
inline constexpr double kHeavyTopConvergenceTEnd = 2.0;

[[nodiscard]] LieSystem heavy_top(const HeavyTopParams & p = {});

[[nodiscard]] double heavy_top_energy(const HeavyTopParams & p, const Posed & C, const Vec3<double> & pi);
[[nodiscard]] double heavy_top_casimir(const Posed & C, const Vec3<double> & pi);

/// Body strain chi(s) of a beam along its arclength s.
using Strain = std::function<Vec6d(double)>;

/// Constant strain ((0, 0, kappa), (1, 0, 0)): a circular or helical centerline.
[[nodiscard]] Strain helix_strain(double kappa = 1.0, double torsion = 0.2);
/// Smoothly varying strain for refinement studies.
[[nodiscard]] Strain varying_strain();

/// C' = C chi(s)^ as a body-frame system with s in the role of time.
[[nodiscard]] LieSystem beam_system(const Strain & strain, const Posed & C0 = Posed::identity());

/**
 * @brief Piecewise reconstruction C_{k+1} = C_k psi(X_k) along s in [0, L] with N segments.
 *
 * X_k = dpsi^-1(0) h chi(s_k + h/2), i.e. h chi for exp and h chi / 2 for the unhalved Cayley map,
 * so that both increments approximate exp(h chi). For constant strain the exp result is exact.
 */
[[nodiscard]] Trajectory beam_reconstruct(
  const Strain & strain, double L, int N, MapKind kind, const Posed & C0 = Posed::identity());

}  // namespace lgmaps
