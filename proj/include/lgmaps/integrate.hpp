#pragma once

/**
 * @file integrate.hpp
 * @brief Lie-group time stepping through the reconstruction equation
 * X' = dpsi^-1(X) V with a pluggable coordinate map psi.
 *
 * Body-frame fields update C <- C psi(X) and integrate X' = dpsi^-1(-X) V;
 * spatial fields update C <- psi(X) C and integrate X' = dpsi^-1(X) V.
 * Both forms rely on psi(-X) = psi(X)^-1, which holds for exp and cay.
 */

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"

namespace lgmaps {

enum class MapKind
{
  exponential,
  cayley,
};

enum class Frame
{
  spatial,
  body,
};

enum class Method
{
  mk_rk4,
  implicit_midpoint,
};

[[nodiscard]] std::string to_string(MapKind k);
[[nodiscard]] std::string to_string(Frame f);
[[nodiscard]] std::string to_string(Method m);
/// Throws InvalidInput on unknown names.
[[nodiscard]] MapKind parse_map_kind(const std::string & s);
[[nodiscard]] Method parse_method(const std::string & s);

using Vec6d  = Vec6<double>;
using Mat6d  = Mat6<double>;
using Posed  = Pose<double>;
using VecXd  = Eigen::VectorXd;

/// psi together with its differential inverse and that inverse's directional derivative.
struct CoordinateMap
{
  MapKind kind = MapKind::exponential;
  std::function<Posed(const Vec6d &)> value;
  std::function<Mat6d(const Vec6d &)> dmap_inv;
  std::function<Mat6d(const Vec6d &, const Vec6d &)> ddmap_inv;

  [[nodiscard]] static CoordinateMap exponential();
  [[nodiscard]] static CoordinateMap cayley();
  [[nodiscard]] static CoordinateMap make(MapKind kind);
};

/// Twist V(t, C) in a fixed frame.
struct TwistField
{
  Frame frame = Frame::body;
  std::function<Vec6d(double, const Posed &)> eval;
};

/**
 * @brief Reconstruction equation coupled to an auxiliary state a in R^n.
 *
 * The twist may depend on a; a' = aux_rate(t, C, a) is integrated with the same stages.
 */
struct LieSystem
{
  std::string name;
  Frame frame = Frame::body;
  std::function<Vec6d(double, const Posed &, const VecXd &)> twist;
  /// Empty when there is no auxiliary state.
  std::function<VecXd(double, const Posed &, const VecXd &)> aux_rate;
  /// Optional conserved quantities, reported as drift.
  std::function<double(const Posed &, const VecXd &)> energy;
  std::function<double(const Posed &, const VecXd &)> casimir;
  Posed C0 = Posed::identity();
  VecXd aux0;

  [[nodiscard]] static LieSystem from_field(const TwistField & field, const Posed & C0 = Posed::identity());
};

struct State
{
  double t = 0.0;
  Posed C  = Posed::identity();
  VecXd aux;
};

/// Raised when a stage leaves the chart of the coordinate map; the step is rejected.
class StepRejected : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Raised when Newton iteration fails; carries the last residual.
class NewtonFailure : public std::runtime_error
{
public:
  NewtonFailure(const std::string & what, double residual) : std::runtime_error(what), residual_(residual) {}
  [[nodiscard]] double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Raised by convergence_study when one of its runs fails.
class IntegrationFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Gibbs-vector norm beyond which a Cayley stage is treated as having reached the half turn.
inline constexpr double kCayleyMaxNorm = 1e6;

struct StepResult
{
  State state;
  /// Coordinate increment X_h of the step.
  Vec6d X = Vec6d::Zero();
  /// Newton updates performed (0 for explicit steps).
  int iterations = 0;
  /// |G| before each update and after the last one.
  std::vector<double> residuals;
};

/// Classical RK4 in the coordinates X, with X(t) = 0.
[[nodiscard]] StepResult mk_rk4_step(const CoordinateMap & map, const LieSystem & sys, const State & s, double h);
[[nodiscard]] Posed mk_rk4_step(const CoordinateMap & map, const TwistField & field, const Posed & C, double t, double h);

struct NewtonOptions
{
  double tol    = 1e-12;
  int max_iters = 20;
};

/**
 * @brief Residual G(Z) and Jacobian of one implicit midpoint step.
 *
 * Z = (X, A) stacks the coordinate increment and the auxiliary increment. With
 * m = X/2 and s = +1 (spatial) or -1 (body):
 *
 *   G_X = X - h dpsi^-1(s m) V(t + h/2, C_m, a + A/2)
 *   G_A = A - h f(t + h/2, C_m, a + A/2)
 *
 * The dpsi^-1 part of the Jacobian is assembled from ddmap_inv; derivatives of the
 * field itself are central differences.
 */
class MidpointSystem
{
public:
  MidpointSystem(const CoordinateMap & map, const LieSystem & sys, const State & s, double h);

  [[nodiscard]] int dim() const noexcept { return 6 + naux_; }
  [[nodiscard]] VecXd residual(const VecXd & Z) const;
  [[nodiscard]] Eigen::MatrixXd jacobian(const VecXd & Z) const;
  [[nodiscard]] State advance(const VecXd & Z) const;

private:
  [[nodiscard]] Posed midpoint_pose(const Vec6d & X) const;
  /// (V, f) at the midpoint described by Z.
  [[nodiscard]] VecXd field(const VecXd & Z) const;

  const CoordinateMap & map_;
  const LieSystem & sys_;
  State s_;
  double h_;
  double sign_;
  int naux_;
};

[[nodiscard]] StepResult implicit_midpoint_step(
  const CoordinateMap & map, const LieSystem & sys, const State & s, double h, const NewtonOptions & opt = {});
[[nodiscard]] StepResult implicit_midpoint_step(
  const CoordinateMap & map, const TwistField & field, const Posed & C, double t, double h,
  const NewtonOptions & opt = {});

struct Sample
{
  double t = 0.0;
  Posed C;
  VecXd aux;
  double drift_orth = 0.0;
  /// Absent when the system has no energy.
  std::optional<double> drift_energy;
  std::optional<double> drift_casimir;
};

struct Trajectory
{
  std::vector<Sample> samples;
  double h = 0.0;
  MapKind map = MapKind::exponential;
  Method method = Method::mk_rk4;
  std::string problem;
  /// Largest Newton iteration count over all steps.
  int max_newton_iterations = 0;
};

struct IntegrationResult
{
  Trajectory trajectory;
  /// Set when a step failed; the trajectory then holds the samples computed so far.
  std::optional<std::string> error;
};

/**
 * @brief Uniform stepping from t = 0 to t_end; the step is adjusted to t_end / round(t_end / h).
 *
 * record_every thins the stored samples; the initial and final states are always kept.
 */
[[nodiscard]] IntegrationResult integrate(
  const LieSystem & sys, Method method, MapKind map, double h, double t_end, int record_every = 1,
  const NewtonOptions & opt = {});

/// Left-invariant pose deviation |A^-1 B - I|_inf.
[[nodiscard]] double pose_error(const Posed & A, const Posed & B);

struct ConvergenceRow
{
  double h = 0.0;
  double err_final_pose = 0.0;
  /// Slope against the previous (larger) step; absent for the first row or at the round-off floor.
  std::optional<double> observed_order;
  /// Both this and the previous error sit at the round-off floor.
  bool exact = false;
};

/// Errors below this are treated as round-off in convergence tables.
inline constexpr double kRoundoffFloor = 1e-12;

/**
 * @brief Final-pose error against a reference for each step in h_list.
 *
 * The reference uses mk_rk4 with the same map at min(h_list) / 8. Runs execute
 * concurrently; rows are returned in decreasing h.
 */
[[nodiscard]] std::vector<ConvergenceRow> convergence_study(
  const LieSystem & sys, Method method, MapKind map, std::vector<double> h_list, double t_end);

/// Least-squares slope of log(err) against log(h) over the rows above the round-off floor.
[[nodiscard]] std::optional<double> fitted_order(const std::vector<ConvergenceRow> & rows);

}  // namespace lgmaps
