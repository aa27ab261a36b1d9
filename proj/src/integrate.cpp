#include "lgmaps/integrate.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <climits>
#include <cmath>
#include <future>

#include "lgmaps/errors.hpp"
#include "lgmaps/se3.hpp"

namespace lgmaps {

std::string to_string(MapKind k)
{
  return k == MapKind::exponential ? "exp" : "cay";
}

std::string to_string(Frame f)
{
  return f == Frame::body ? "body" : "spatial";
}

std::string to_string(Method m)
{
  return m == Method::mk_rk4 ? "mk_rk4" : "implicit_midpoint";
}

MapKind parse_map_kind(const std::string & s)
{
  if (s == "exp" || s == "exponential") { return MapKind::exponential; }
  if (s == "cay" || s == "cayley") { return MapKind::cayley; }
  throw InvalidInput("unknown map '" + s + "' (expected exp or cay)");
}

Method parse_method(const std::string & s)
{
  if (s == "mk_rk4" || s == "rk4") { return Method::mk_rk4; }
  if (s == "implicit_midpoint" || s == "midpoint") { return Method::implicit_midpoint; }
  throw InvalidInput("unknown method '" + s + "' (expected mk_rk4 or implicit_midpoint)");
}

CoordinateMap CoordinateMap::exponential()
{
  CoordinateMap m;
  m.kind      = MapKind::exponential;
  m.value     = [](const Vec6d & X) { return se3::exp(X); };
  m.dmap_inv  = [](const Vec6d & X) { return se3::dexp_inv(X); };
  m.ddmap_inv = [](const Vec6d & X, const Vec6d & U) { return se3::ddexp_inv(X, U); };
  return m;
}

CoordinateMap CoordinateMap::cayley()
{
  CoordinateMap m;
  m.kind      = MapKind::cayley;
  m.value     = [](const Vec6d & X) { return se3::cay(X); };
  m.dmap_inv  = [](const Vec6d & X) { return se3::dcay_inv(X); };
  m.ddmap_inv = [](const Vec6d & X, const Vec6d & U) { return se3::ddcay_inv(X, U); };
  return m;
}

CoordinateMap CoordinateMap::make(MapKind kind)
{
  return kind == MapKind::exponential ? exponential() : cayley();
}

LieSystem LieSystem::from_field(const TwistField & field, const Posed & C0)
{
  LieSystem sys;
  sys.name  = "field";
  sys.frame = field.frame;
  sys.twist = [f = field.eval](double t, const Posed & C, const VecXd &) { return f(t, C); };
  sys.C0    = C0;
  return sys;
}

namespace {

double frame_sign(Frame f)
{
  return f == Frame::spatial ? 1.0 : -1.0;
}

Posed apply(const CoordinateMap & map, Frame frame, const Posed & C, const Vec6d & X)
{
  return frame == Frame::body ? C * map.value(X) : map.value(X) * C;
}

void check_chart(const CoordinateMap & map, const Vec6d & X)
{
  if (!X.allFinite()) { throw StepRejected("non-finite coordinates in stage"); }
  if (map.kind == MapKind::cayley && angular(X).norm() > kCayleyMaxNorm) {
    throw StepRejected("Cayley chart: stage rotation reached a half turn");
  }
}

VecXd aux_rate(const LieSystem & sys, double t, const Posed & C, const VecXd & a)
{
  if (!sys.aux_rate) { return VecXd::Zero(a.size()); }
  return sys.aux_rate(t, C, a);
}

}  // namespace

StepResult mk_rk4_step(const CoordinateMap & map, const LieSystem & sys, const State & s, double h)
{
  const double sg = frame_sign(sys.frame);
  struct Rate
  {
    Vec6d X;
    VecXd a;
  };
  auto F = [&](const Vec6d & X, double c, const VecXd & a) -> Rate {
    check_chart(map, X);
    const Posed Cs  = apply(map, sys.frame, s.C, X);
    const double ts = s.t + c * h;
    const Vec6d V   = sys.twist(ts, Cs, a);
    return {map.dmap_inv(sg * X) * V, aux_rate(sys, ts, Cs, a)};
  };

  StepResult out;
  try {
    const Rate k1 = F(Vec6d::Zero(), 0.0, s.aux);
    const Rate k2 = F(0.5 * h * k1.X, 0.5, s.aux + 0.5 * h * k1.a);
    const Rate k3 = F(0.5 * h * k2.X, 0.5, s.aux + 0.5 * h * k2.a);
    const Rate k4 = F(h * k3.X, 1.0, s.aux + h * k3.a);
    out.X = (h / 6.0) * (k1.X + 2.0 * k2.X + 2.0 * k3.X + k4.X);
    check_chart(map, out.X);
    out.state.t   = s.t + h;
    out.state.C   = apply(map, sys.frame, s.C, out.X);
    out.state.aux = s.aux + (h / 6.0) * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
  } catch (const DomainError & e) {
    throw StepRejected(e.what());
  }
  return out;
}

Posed mk_rk4_step(const CoordinateMap & map, const TwistField & field, const Posed & C, double t, double h)
{
  const LieSystem sys = LieSystem::from_field(field, C);
  return mk_rk4_step(map, sys, State{t, C, VecXd()}, h).state.C;
}

MidpointSystem::MidpointSystem(const CoordinateMap & map, const LieSystem & sys, const State & s, double h)
    : map_(map), sys_(sys), s_(s), h_(h), sign_(frame_sign(sys.frame)), naux_(static_cast<int>(s.aux.size()))
{}

Posed MidpointSystem::midpoint_pose(const Vec6d & X) const
{
  return apply(map_, sys_.frame, s_.C, 0.5 * X);
}

VecXd MidpointSystem::field(const VecXd & Z) const
{
  const Vec6d X = Z.head<6>();
  check_chart(map_, X);
  const Posed Cm  = midpoint_pose(X);
  const VecXd am  = s_.aux + 0.5 * Z.tail(naux_);
  const double tm = s_.t + 0.5 * h_;
  VecXd out(dim());
  out.head<6>()      = sys_.twist(tm, Cm, am);
  out.tail(naux_)    = aux_rate(sys_, tm, Cm, am);
  return out;
}

VecXd MidpointSystem::residual(const VecXd & Z) const
{
  const Vec6d X   = Z.head<6>();
  const VecXd phi = field(Z);
  VecXd G(dim());
  G.head<6>()   = X - h_ * (map_.dmap_inv(sign_ * 0.5 * X) * phi.head<6>());
  G.tail(naux_) = Z.tail(naux_) - h_ * phi.tail(naux_);
  return G;
}

Eigen::MatrixXd MidpointSystem::jacobian(const VecXd & Z) const
{
  const int n     = dim();
  const Vec6d X   = Z.head<6>();
  const Vec6d m   = sign_ * 0.5 * X;
  const VecXd phi = field(Z);
  const Vec6d V   = phi.head<6>();

  // central differences of the field, which is the only part without closed form
  Eigen::MatrixXd Jphi(n, n);
  const double eps = 1e-7 * std::max(1.0, Z.norm());
  for (int j = 0; j < n; ++j) {
    VecXd Zp = Z, Zm = Z;
    Zp(j) += eps;
    Zm(j) -= eps;
    Jphi.col(j) = (field(Zp) - field(Zm)) / (2.0 * eps);
  }

  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n);
  J.topRows<6>() -= h_ * (map_.dmap_inv(m) * Jphi.topRows<6>());
  for (int j = 0; j < 6; ++j) {
    J.col(j).head<6>() -= h_ * (sign_ * 0.5) * (map_.ddmap_inv(m, Vec6d::Unit(j)) * V);
  }
  J.bottomRows(naux_) -= h_ * Jphi.bottomRows(naux_);
  return J;
}

State MidpointSystem::advance(const VecXd & Z) const
{
  const Vec6d X = Z.head<6>();
  check_chart(map_, X);
  return State{s_.t + h_, apply(map_, sys_.frame, s_.C, X), s_.aux + Z.tail(naux_)};
}

StepResult implicit_midpoint_step(
  const CoordinateMap & map, const LieSystem & sys, const State & s, double h, const NewtonOptions & opt)
{
  const MidpointSystem G(map, sys, s, h);
  StepResult out;
  try {
    VecXd Z = VecXd::Zero(G.dim());
    VecXd r = G.residual(Z);
    out.residuals.push_back(r.lpNorm<Eigen::Infinity>());
    while (out.residuals.back() >= opt.tol) {
      if (out.iterations == opt.max_iters) {
        throw NewtonFailure(
          "implicit midpoint: Newton did not converge in " + std::to_string(opt.max_iters) + " iterations",
          out.residuals.back());
      }
      Z -= G.jacobian(Z).partialPivLu().solve(r);
      ++out.iterations;
      r = G.residual(Z);
      out.residuals.push_back(r.lpNorm<Eigen::Infinity>());
      if (!std::isfinite(out.residuals.back())) {
        throw NewtonFailure("implicit midpoint: Newton diverged", out.residuals.back());
      }
    }
    out.X     = Z.head<6>();
    out.state = G.advance(Z);
  } catch (const DomainError & e) {
    throw StepRejected(e.what());
  }
  return out;
}

StepResult implicit_midpoint_step(
  const CoordinateMap & map, const TwistField & field, const Posed & C, double t, double h,
  const NewtonOptions & opt)
{
  const LieSystem sys = LieSystem::from_field(field, C);
  return implicit_midpoint_step(map, sys, State{t, C, VecXd()}, h, opt);
}

IntegrationResult integrate(
  const LieSystem & sys, Method method, MapKind kind, double h, double t_end, int record_every,
  const NewtonOptions & opt)
{
  if (!(h > 0.0) || !(t_end >= 0.0)) { throw InvalidInput("integrate: need h > 0 and t_end >= 0"); }
  if (record_every < 1) { throw InvalidInput("integrate: record_every must be >= 1"); }
  const CoordinateMap map = CoordinateMap::make(kind);
  const long n            = std::max(1L, std::lround(t_end / h));
  const double hh         = t_end > 0.0 ? t_end / static_cast<double>(n) : h;

  IntegrationResult res;
  Trajectory & tr = res.trajectory;
  tr.h            = hh;
  tr.map          = kind;
  tr.method       = method;
  tr.problem      = sys.name;

  State s{0.0, sys.C0, sys.aux0};
  const double E0 = sys.energy ? sys.energy(s.C, s.aux) : 0.0;
  const double K0 = sys.casimir ? sys.casimir(s.C, s.aux) : 0.0;
  auto record     = [&](const State & st) {
    Sample smp;
    smp.t          = st.t;
    smp.C          = st.C;
    smp.aux        = st.aux;
    smp.drift_orth = orthonormality_error(st.C.R);
    if (sys.energy) { smp.drift_energy = std::abs(sys.energy(st.C, st.aux) - E0); }
    if (sys.casimir) { smp.drift_casimir = std::abs(sys.casimir(st.C, st.aux) - K0); }
    tr.samples.push_back(std::move(smp));
  };
  record(s);
  if (t_end == 0.0) { return res; }

  for (long k = 1; k <= n; ++k) {
    try {
      if (method == Method::mk_rk4) {
        s = mk_rk4_step(map, sys, s, hh).state;
      } else {
        StepResult r             = implicit_midpoint_step(map, sys, s, hh, opt);
        tr.max_newton_iterations = std::max(tr.max_newton_iterations, r.iterations);
        s                        = std::move(r.state);
      }
    } catch (const std::exception & e) {
      res.error = "step " + std::to_string(k) + " at t = " + std::to_string(s.t) + ": " + e.what();
      return res;
    }
    s.t = static_cast<double>(k) * hh;
    if (k % record_every == 0 || k == n) { record(s); }
  }
  return res;
}

double pose_error(const Posed & A, const Posed & B)
{
  return max_abs((A.inverse() * B).matrix() - Mat4<double>::Identity());
}

std::vector<ConvergenceRow> convergence_study(
  const LieSystem & sys, Method method, MapKind map, std::vector<double> h_list, double t_end)
{
  if (h_list.size() < 3) { throw InvalidInput("convergence: at least three step sizes are required"); }
  std::sort(h_list.begin(), h_list.end(), std::greater<>());
  const double h_ref = h_list.back() / 8.0;

  auto run = [&sys, map, t_end](Method m, double h) { return integrate(sys, m, map, h, t_end, INT_MAX); };
  auto ref = std::async(std::launch::async, run, Method::mk_rk4, h_ref);
  std::vector<std::future<IntegrationResult>> runs;
  runs.reserve(h_list.size());
  for (double h : h_list) { runs.push_back(std::async(std::launch::async, run, method, h)); }

  const IntegrationResult r_ref = ref.get();
  if (r_ref.error) { throw IntegrationFailure("reference run: " + *r_ref.error); }
  const Posed C_ref = r_ref.trajectory.samples.back().C;

  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    const IntegrationResult r = runs[i].get();
    if (r.error) { throw IntegrationFailure("run h = " + std::to_string(h_list[i]) + ": " + *r.error); }
    ConvergenceRow row;
    row.h              = h_list[i];
    row.err_final_pose = pose_error(C_ref, r.trajectory.samples.back().C);
    if (i == 0) {
      row.exact = row.err_final_pose <= kRoundoffFloor;
    } else {
      const ConvergenceRow & prev = rows.back();
      if (row.err_final_pose <= kRoundoffFloor && prev.err_final_pose <= kRoundoffFloor) {
        row.exact = true;
      } else if (row.err_final_pose > kRoundoffFloor && prev.err_final_pose > kRoundoffFloor) {
        row.observed_order = std::log(prev.err_final_pose / row.err_final_pose) / std::log(prev.h / row.h);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> fitted_order(const std::vector<ConvergenceRow> & rows)
{
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto & r : rows) {
    if (r.err_final_pose <= kRoundoffFloor) { continue; }
    const double lx = std::log(r.h), ly = std::log(r.err_final_pose);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) { return std::nullopt; }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lgmaps
