#include "lgmaps/problems.hpp"

#include <cmath>

#include "lgmaps/errors.hpp"
#include "lgmaps/se3.hpp"

namespace lgmaps {

LieSystem constant_twist(const Vec6d & V, Frame frame, const Posed & C0)
{
  LieSystem sys;
  sys.name  = "constant_twist";
  sys.frame = frame;
  sys.twist = [V](double, const Posed &, const VecXd &) { return V; };
  sys.C0    = C0;
  return sys;
}

Vec6d default_constant_twist()
{
  return screw<double>(Vec3<double>(0.3, -0.2, 0.9), Vec3<double>(0.5, 0.1, -0.4));
}

Posed constant_twist_exact(const Vec6d & V, Frame frame, const Posed & C0, double t)
{
  const Posed E = se3::exp<double>(t * V);
  return frame == Frame::body ? C0 * E : E * C0;
}

HeavyTopParams heavy_top_convergence_params()
{
  HeavyTopParams p;
  p.pi0 = Vec3<double>(6.0, 3.0, 15.0);
  p.mgl = 4.0;
  p.R0  = so3::exp(Vec3<double>(0.6, -0.3, 0.0));
  return p;
}

double heavy_top_energy(const HeavyTopParams & p, const Posed & C, const Vec3<double> & pi)
{
  const Vec3<double> omega = pi.cwiseQuotient(p.inertia);
  const Vec3<double> Gamma = C.R.transpose() * Vec3<double>::UnitZ();
  return 0.5 * pi.dot(omega) + p.mgl * Gamma.dot(p.chi);
}

double heavy_top_casimir(const Posed & C, const Vec3<double> & pi)
{
  return pi.dot(C.R.transpose() * Vec3<double>::UnitZ());
}

LieSystem heavy_top(const HeavyTopParams & p)
{
  if ((p.inertia.array() <= 0.0).any()) { throw InvalidInput("heavy_top: inertia must be positive"); }
  LieSystem sys;
  sys.name     = "heavy_top";
  sys.frame    = Frame::body;
  sys.twist    = [p](double, const Posed &, const VecXd & a) {
    return screw<double>(Vec3<double>(a.head<3>()).cwiseQuotient(p.inertia), Vec3<double>::Zero());
  };
  sys.aux_rate = [p](double, const Posed & C, const VecXd & a) {
    const Vec3<double> pi    = a.head<3>();
    const Vec3<double> omega = pi.cwiseQuotient(p.inertia);
    const Vec3<double> Gamma = C.R.transpose() * Vec3<double>::UnitZ();
    return VecXd(pi.cross(omega) + p.mgl * Gamma.cross(p.chi));
  };
  sys.energy  = [p](const Posed & C, const VecXd & a) { return heavy_top_energy(p, C, a.head<3>()); };
  sys.casimir = [](const Posed & C, const VecXd & a) { return heavy_top_casimir(C, a.head<3>()); };
  sys.C0      = Posed{p.R0, Vec3<double>::Zero()};
  sys.aux0    = p.pi0;
  return sys;
}

Strain helix_strain(double kappa, double torsion)
{
  const Vec6d chi = screw<double>(Vec3<double>(torsion, 0.0, kappa), Vec3<double>(1.0, 0.0, 0.0));
  return [chi](double) { return chi; };
}

Strain varying_strain()
{
  return [](double s) {
    return screw<double>(
      Vec3<double>(0.3 * s, 0.5 * std::sin(s), 1.0 + 0.2 * std::cos(2.0 * s)),
      Vec3<double>(1.0, 0.05 * s, 0.1 * std::sin(s)));
  };
}

LieSystem beam_system(const Strain & strain, const Posed & C0)
{
  LieSystem sys;
  sys.name  = "beam";
  sys.frame = Frame::body;
  sys.twist = [strain](double s, const Posed &, const VecXd &) { return strain(s); };
  sys.C0    = C0;
  return sys;
}

Trajectory beam_reconstruct(const Strain & strain, double L, int N, MapKind kind, const Posed & C0)
{
  if (N < 1) { throw InvalidInput("beam_reconstruct: N must be >= 1"); }
  const CoordinateMap map = CoordinateMap::make(kind);
  const double h          = L / N;
  const double scale      = kind == MapKind::exponential ? 1.0 : 0.5;

  Trajectory tr;
  tr.h       = h;
  tr.map     = kind;
  tr.problem = "beam";
  Posed C    = C0;
  tr.samples.push_back(Sample{0.0, C, VecXd(), orthonormality_error(C.R), std::nullopt, std::nullopt});
  for (int k = 0; k < N; ++k) {
    const double s = k * h;
    C              = C * map.value(scale * h * strain(s + 0.5 * h));
    tr.samples.push_back(Sample{(k + 1) * h, C, VecXd(), orthonormality_error(C.R), std::nullopt, std::nullopt});
  }
  return tr;
}

}  // namespace lgmaps
