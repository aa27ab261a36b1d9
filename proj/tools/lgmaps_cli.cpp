// lgmaps_cli: evaluate map formulas, run the verification batteries, integrate
// benchmark problems and tabulate convergence orders.
//
// Exit codes: 0 success, 1 verification failure, 2 domain or input error,
// 3 integration failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgmaps/errors.hpp"
#include "lgmaps/integrate.hpp"
#include "lgmaps/problems.hpp"
#include "lgmaps/se3.hpp"
#include "lgmaps/so3.hpp"
#include "lgmaps/verify.hpp"

namespace {

using namespace lgmaps;
using json = nlohmann::ordered_json;

constexpr int kExitOk          = 0;
constexpr int kExitVerify      = 1;
constexpr int kExitDomain      = 2;
constexpr int kExitIntegration = 3;

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string & s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) { return s; }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') { out += '"'; }
    out += c;
  }
  return out + "\"";
}

std::string timestamp()
{
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::vector<double> parse_list(const std::string & s)
{
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v         = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception &) {
      throw InvalidInput("not a number: '" + tok + "'");
    }
    if (used != tok.size() && tok.find_first_not_of(" \t", used) != std::string::npos) {
      throw InvalidInput("not a number: '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

Vec3<double> parse_vec3(const std::string & s, const std::string & what)
{
  const auto v = parse_list(s);
  if (v.size() != 3) { throw InvalidInput(what + ": expected 3 comma-separated values"); }
  return Vec3<double>(v[0], v[1], v[2]);
}

/// Three values give a pure rotation (x, 0); six give (x, y).
Vec6<double> parse_screw(const std::string & s, const std::string & what)
{
  const auto v = parse_list(s);
  if (v.size() == 3) { return screw<double>(Vec3<double>(v[0], v[1], v[2]), Vec3<double>::Zero()); }
  if (v.size() == 6) { return Eigen::Map<const Vec6<double>>(v.data()); }
  throw InvalidInput(what + ": expected 3 or 6 comma-separated values");
}

template<typename D>
json matrix_json(const Eigen::MatrixBase<D> & M)
{
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) { row.push_back(M(i, j)); }
    rows.push_back(row);
  }
  return rows;
}

template<typename D>
std::vector<double> flatten(const Eigen::MatrixBase<D> & M)
{
  std::vector<double> out;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) { out.push_back(M(i, j)); }
  }
  return out;
}

/// Writes to the --output file when given, else stdout.
class Sink
{
public:
  explicit Sink(const std::string & path)
  {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) { throw InvalidInput("cannot open output file '" + path + "'"); }
    }
  }
  std::ostream & out() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

// ------------------------------------------------------------------ eval

struct EvalEntry
{
  int dim;       // 3 for so(3), 6 for se(3)
  bool needs_y;  // directional derivatives
  std::string notes;
  std::function<Eigen::MatrixXd(const Vec6<double> &, const Vec6<double> &)> fn;
};

const std::map<std::string, EvalEntry> & eval_table()
{
  using V6 = Vec6<double>;
  auto w   = [](const V6 & v) -> Vec3<double> { return angular(v); };
  const std::string so3_exp =
    "x is a rotation vector; dexp is right-trivialized: d/dt exp(x) = (dexp_x x')^ exp(x); chart |x| < 2 pi";
  const std::string se3_exp =
    "X = (x, y) stacks angular then linear parts; poses are [[R, r], [0, 1]]; right-trivialized differentials";
  const std::string cay =
    "unhalved Cayley map cay(g) = (I - g^)^-1 (I + g^), so cay(g) ~ exp(2 g) and dcay(0) = 2 I";
  const std::string dd = "; the second vector is the direction of differentiation";

  static const std::map<std::string, EvalEntry> t = {
    {"exp_so3", {3, false, so3_exp, [w](const V6 & x, const V6 &) { return Eigen::MatrixXd(so3::exp(w(x))); }}},
    {"dexp_so3", {3, false, so3_exp, [w](const V6 & x, const V6 &) { return Eigen::MatrixXd(so3::dexp(w(x))); }}},
    {"dexpinv_so3",
     {3, false, so3_exp, [w](const V6 & x, const V6 &) { return Eigen::MatrixXd(so3::dexp_inv(w(x))); }}},
    {"ddexp_so3",
     {3, true, so3_exp + dd, [w](const V6 & x, const V6 & y) { return Eigen::MatrixXd(so3::ddexp(w(x), w(y))); }}},
    {"ddexpinv_so3",
     {3, true, so3_exp + dd,
      [w](const V6 & x, const V6 & y) { return Eigen::MatrixXd(so3::ddexp_inv(w(x), w(y))); }}},
    {"exp_se3", {6, false, se3_exp, [](const V6 & x, const V6 &) { return Eigen::MatrixXd(se3::exp(x).matrix()); }}},
    {"dexp_se3", {6, false, se3_exp, [](const V6 & x, const V6 &) { return Eigen::MatrixXd(se3::dexp(x)); }}},
    {"dexpinv_se3", {6, false, se3_exp, [](const V6 & x, const V6 &) { return Eigen::MatrixXd(se3::dexp_inv(x)); }}},
    {"ddexp_se3",
     {6, true, se3_exp + dd, [](const V6 & x, const V6 & y) { return Eigen::MatrixXd(se3::ddexp(x, y)); }}},
    {"ddexpinv_se3",
     {6, true, se3_exp + dd, [](const V6 & x, const V6 & y) { return Eigen::MatrixXd(se3::ddexp_inv(x, y)); }}},
    {"cay_so3", {3, false, cay, [w](const V6 & x, const V6 &) { return Eigen::MatrixXd(so3::cay(w(x))); }}},
    {"dcay_so3", {3, false, cay, [w](const V6 & x, const V6 &) { return Eigen::MatrixXd(so3::dcay(w(x))); }}},
    {"dcayinv_so3", {3, false, cay, [w](const V6 & x, const V6 &) { return Eigen::MatrixXd(so3::dcay_inv(w(x))); }}},
    {"ddcay_so3",
     {3, true, cay + dd, [w](const V6 & x, const V6 & y) { return Eigen::MatrixXd(so3::ddcay(w(x), w(y))); }}},
    {"ddcayinv_so3",
     {3, true, cay + dd, [w](const V6 & x, const V6 & y) { return Eigen::MatrixXd(so3::ddcay_inv(w(x), w(y))); }}},
    {"cay_se3", {6, false, cay, [](const V6 & x, const V6 &) { return Eigen::MatrixXd(se3::cay(x).matrix()); }}},
    {"dcay_se3", {6, false, cay, [](const V6 & x, const V6 &) { return Eigen::MatrixXd(se3::dcay(x)); }}},
    {"dcayinv_se3", {6, false, cay, [](const V6 & x, const V6 &) { return Eigen::MatrixXd(se3::dcay_inv(x)); }}},
    {"ddcay_se3", {6, true, cay + dd, [](const V6 & x, const V6 & y) { return Eigen::MatrixXd(se3::ddcay(x, y)); }}},
    {"ddcayinv_se3",
     {6, true, cay + dd, [](const V6 & x, const V6 & y) { return Eigen::MatrixXd(se3::ddcay_inv(x, y)); }}},
    {"ad_cay",
     {6, false, cay + "; Cayley map of the 6x6 adjoint matrix ad_X, which is not Ad of cay(X)",
      [](const V6 & x, const V6 &) { return Eigen::MatrixXd(se3::adjoint_cay(x)); }}},
  };
  return t;
}

struct EvalArgs
{
  std::string map;
  std::string x;
  std::string y;
};

int cmd_eval(const EvalArgs & a, const std::string & format, Sink & sink)
{
  const auto & table = eval_table();
  const auto it      = table.find(a.map);
  if (it == table.end()) { throw InvalidInput("unknown map '" + a.map + "'"); }
  const EvalEntry & e = it->second;

  auto read = [&e](const std::string & s, const std::string & what) {
    const auto v = parse_list(s);
    if (static_cast<int>(v.size()) != e.dim) {
      throw InvalidInput(what + ": expected " + std::to_string(e.dim) + " comma-separated values");
    }
    Vec6<double> out = Vec6<double>::Zero();
    for (int i = 0; i < e.dim; ++i) { out(i) = v[static_cast<std::size_t>(i)]; }
    return out;
  };
  if (a.x.empty()) { throw InvalidInput("--x is required"); }
  if (e.needs_y && a.y.empty()) { throw InvalidInput(a.map + " takes a direction: --y is required"); }
  if (!e.needs_y && !a.y.empty()) { throw InvalidInput(a.map + " takes a single vector; drop --y"); }
  const Vec6<double> x = read(a.x, "--x");
  const Vec6<double> y = e.needs_y ? read(a.y, "--y") : Vec6<double>::Zero();

  const Eigen::MatrixXd M = e.fn(x, y);
  const auto xs           = std::vector<double>(x.data(), x.data() + e.dim);
  const auto ys           = std::vector<double>(y.data(), y.data() + e.dim);

  std::ostream & os = sink.out();
  if (format == "json") {
    json j;
    j["map"]   = a.map;
    j["input"] = {{"x", xs}};
    if (e.needs_y) { j["input"]["y"] = ys; }
    j["output"]           = matrix_json(M);
    j["convention_notes"] = e.notes;
    os << j.dump(2) << '\n';
    return kExitOk;
  }
  std::vector<std::string> head = {"map"};
  for (int i = 0; i < e.dim; ++i) { head.push_back("x" + std::to_string(i + 1)); }
  if (e.needs_y) {
    for (int i = 0; i < e.dim; ++i) { head.push_back("y" + std::to_string(i + 1)); }
  }
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) { head.push_back("M" + std::to_string(i + 1) + "_" + std::to_string(j + 1)); }
  }
  std::vector<std::string> row = {a.map};
  for (double v : xs) { row.push_back(num(v)); }
  if (e.needs_y) {
    for (double v : ys) { row.push_back(num(v)); }
  }
  for (double v : flatten(M)) { row.push_back(num(v)); }
  for (std::size_t i = 0; i < head.size(); ++i) { os << (i ? "," : "") << head[i]; }
  os << '\n';
  for (std::size_t i = 0; i < row.size(); ++i) { os << (i ? "," : "") << row[i]; }
  os << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ verify

std::string screw_arg(const Vec6<double> & v)
{
  std::string s;
  for (int i = 0; i < 6; ++i) { s += (i ? "," : "") + num(v(i)); }
  return s;
}

struct VerifyArgs
{
  std::string suite = "all";
  int n             = 100;
  std::string x;
  std::string y;
};

int cmd_verify(const VerifyArgs & a, std::uint64_t seed, const std::string & format, Sink & sink)
{
  VerifyOptions opt;
  opt.suite = a.suite;
  opt.n     = a.n;
  opt.seed  = seed;
  if (!a.x.empty()) { opt.x = parse_screw(a.x, "--x"); }
  if (!a.y.empty()) {
    if (!opt.x) { throw InvalidInput("--y requires --x"); }
    opt.y = parse_screw(a.y, "--y");
  }
  const VerifyReport rep = run_verify(opt);

  std::ostream & os = sink.out();
  if (format == "json") {
    json j;
    j["suite"]  = a.suite;
    j["n"]      = a.n;
    j["seed"]   = seed;
    j["checks"] = json::array();
    for (const auto & c : rep.checks) {
      json cj;
      cj["id"]           = c.id;
      cj["suite"]        = c.suite;
      cj["relation"]     = c.relation;
      cj["tolerance"]    = c.tolerance;
      cj["max_residual"] = c.max_residual;
      cj["samples"]      = c.samples;
      cj["passed"]       = c.passed();
      cj["worst_x"]      = std::vector<double>(c.worst.v[0].data(), c.worst.v[0].data() + 6);
      cj["worst_y"]      = std::vector<double>(c.worst.v[1].data(), c.worst.v[1].data() + 6);
      if (c.error) { cj["error"] = *c.error; }
      j["checks"].push_back(cj);
    }
    j["passed"] = rep.all_passed();
    os << j.dump(2) << '\n';
  } else {
    os << "# lgmaps verify suite=" << a.suite << " n=" << a.n << " seed=" << seed << '\n';
    os << "# generated " << timestamp() << '\n';
    os << "id,suite,relation,tolerance,max_residual,samples,status\n";
    for (const auto & c : rep.checks) {
      os << c.id << ',' << c.suite << ',' << csv_field(c.relation) << ',' << num(c.tolerance) << ','
         << num(c.max_residual) << ',' << c.samples << ',' << (c.passed() ? "pass" : "FAIL") << '\n';
    }
  }

  if (const auto w = rep.worst_failure()) {
    const CheckResult & c = rep.checks[*w];
    std::cerr << "verify: " << c.id << " failed (" << c.relation << "): max residual " << num(c.max_residual)
              << " > tolerance " << num(c.tolerance) << '\n';
    if (c.error) { std::cerr << "  error: " << *c.error << '\n'; }
    std::cerr << "  worst input: --x " << screw_arg(c.worst.v[0]) << " --y " << screw_arg(c.worst.v[1]) << '\n';
    std::cerr << "  rerun: lgmaps_cli verify " << c.suite << " --x " << screw_arg(c.worst.v[0]) << " --y "
              << screw_arg(c.worst.v[1]) << '\n';
    return kExitVerify;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ problems

struct ProblemArgs
{
  std::string problem = "constant_twist";
  std::string method  = "mk_rk4";
  std::string map     = "exp";
  std::string frame   = "body";
  std::string twist;
  std::string pi0;
  std::string tilt;
  std::string inertia;
  std::optional<double> mgl;
  double L = 1.0;
  std::optional<double> t_end;
};

const std::vector<std::string> kProblems = {"constant_twist", "heavy_top", "beam_helix", "beam_varying"};

bool is_beam(const std::string & p)
{
  return p == "beam_helix" || p == "beam_varying";
}

Frame parse_frame(const std::string & s)
{
  if (s == "body") { return Frame::body; }
  if (s == "spatial") { return Frame::spatial; }
  throw InvalidInput("unknown frame '" + s + "' (body, spatial)");
}

HeavyTopParams top_params(const ProblemArgs & a, bool for_convergence)
{
  HeavyTopParams p = for_convergence ? heavy_top_convergence_params() : HeavyTopParams{};
  if (!a.pi0.empty()) { p.pi0 = parse_vec3(a.pi0, "--pi0"); }
  if (!a.tilt.empty()) { p.R0 = so3::exp(parse_vec3(a.tilt, "--tilt")); }
  if (!a.inertia.empty()) { p.inertia = parse_vec3(a.inertia, "--inertia"); }
  if (a.mgl) { p.mgl = *a.mgl; }
  return p;
}

Strain beam_strain(const std::string & p)
{
  return p == "beam_helix" ? helix_strain() : varying_strain();
}

LieSystem make_system(const ProblemArgs & a, bool for_convergence)
{
  if (a.problem == "constant_twist") {
    const Vec6d V = a.twist.empty() ? default_constant_twist() : parse_screw(a.twist, "--twist");
    return constant_twist(V, parse_frame(a.frame));
  }
  if (a.problem == "heavy_top") { return heavy_top(top_params(a, for_convergence)); }
  if (is_beam(a.problem)) { return beam_system(beam_strain(a.problem)); }
  throw InvalidInput("unknown problem '" + a.problem + "'");
}

double default_t_end(const ProblemArgs & a, bool for_convergence)
{
  if (a.t_end) { return *a.t_end; }
  if (is_beam(a.problem)) { return a.L; }
  if (a.problem == "heavy_top" && for_convergence) { return kHeavyTopConvergenceTEnd; }
  return 1.0;
}

// ------------------------------------------------------------------ integrate

struct IntegrateArgs
{
  ProblemArgs problem;
  double h            = 0.01;
  int N               = 16;
  int record_every    = 1;
};

void write_trajectory_csv(std::ostream & os, const Trajectory & tr)
{
  os << "t,r1,r2,r3,R11,R12,R13,R21,R22,R23,R31,R32,R33,inv_drift_orth,inv_drift_energy\n";
  for (const Sample & s : tr.samples) {
    os << num(s.t);
    for (int i = 0; i < 3; ++i) { os << ',' << num(s.C.r(i)); }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) { os << ',' << num(s.C.R(i, j)); }
    }
    os << ',' << num(s.drift_orth) << ',';
    if (s.drift_energy) { os << num(*s.drift_energy); }
    os << '\n';
  }
}

json trajectory_json(const Trajectory & tr)
{
  json samples = json::array();
  for (const Sample & s : tr.samples) {
    json sj;
    sj["t"]              = s.t;
    sj["r"]              = std::vector<double>(s.C.r.data(), s.C.r.data() + 3);
    sj["R"]              = matrix_json(s.C.R);
    sj["inv_drift_orth"] = s.drift_orth;
    sj["inv_drift_energy"] = s.drift_energy ? json(*s.drift_energy) : json(nullptr);
    sj["inv_drift_casimir"] = s.drift_casimir ? json(*s.drift_casimir) : json(nullptr);
    samples.push_back(sj);
  }
  return samples;
}

int cmd_integrate(const IntegrateArgs & a, const std::string & format, Sink & sink)
{
  const ProblemArgs & p = a.problem;
  const MapKind kind    = parse_map_kind(p.map);
  const Method method   = parse_method(p.method);

  IntegrationResult res;
  std::string config;
  if (is_beam(p.problem)) {
    res.trajectory = beam_reconstruct(beam_strain(p.problem), p.L, a.N, kind);
    config         = "problem=" + p.problem + " map=" + to_string(kind) + " L=" + num(p.L) + " N=" + std::to_string(a.N);
  } else {
    const LieSystem sys = make_system(p, false);
    const double t_end  = default_t_end(p, false);
    res                 = integrate(sys, method, kind, a.h, t_end, a.record_every);
    config = "problem=" + p.problem + " method=" + to_string(method) + " map=" + to_string(kind) + " h=" + num(a.h) +
             " t_end=" + num(t_end);
  }

  std::ostream & os = sink.out();
  if (format == "json") {
    json j;
    j["problem"] = p.problem;
    j["config"]  = config;
    j["samples"] = trajectory_json(res.trajectory);
    if (res.error) { j["error"] = *res.error; }
    os << j.dump(2) << '\n';
  } else {
    os << "# lgmaps integrate " << config << '\n';
    os << "# generated " << timestamp() << '\n';
    write_trajectory_csv(os, res.trajectory);
  }
  if (res.error) {
    std::cerr << "integrate: " << *res.error << '\n';
    return kExitIntegration;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ convergence

struct ConvergenceArgs
{
  ProblemArgs problem;
  std::string h_list = "4e-3,2e-3,1e-3,5e-4";
};

int cmd_convergence(const ConvergenceArgs & a, const std::string & format, Sink & sink)
{
  const ProblemArgs & p = a.problem;
  const MapKind kind    = parse_map_kind(p.map);
  const Method method   = parse_method(p.method);
  const auto hs         = parse_list(a.h_list);
  for (double h : hs) {
    if (!(h > 0.0)) { throw InvalidInput("--h-list: step sizes must be positive"); }
  }
  const LieSystem sys = make_system(p, true);
  const double t_end  = default_t_end(p, true);

  std::vector<ConvergenceRow> rows;
  try {
    rows = convergence_study(sys, method, kind, hs, t_end);
  } catch (const IntegrationFailure & e) {
    std::cerr << "convergence: " << e.what() << '\n';
    return kExitIntegration;
  }
  const auto fit = fitted_order(rows);

  std::ostream & os = sink.out();
  if (format == "json") {
    json j;
    j["problem"] = p.problem;
    j["method"]  = to_string(method);
    j["map"]     = to_string(kind);
    j["t_end"]   = t_end;
    j["h_ref"]   = rows.back().h / 8.0;
    j["rows"]    = json::array();
    for (const auto & r : rows) {
      json rj;
      rj["h"]              = r.h;
      rj["err_final_pose"] = r.err_final_pose;
      if (r.exact) {
        rj["observed_order"] = "exact";
      } else {
        rj["observed_order"] = r.observed_order ? json(*r.observed_order) : json(nullptr);
      }
      j["rows"].push_back(rj);
    }
    j["fitted_order"] = fit ? json(*fit) : json(nullptr);
    os << j.dump(2) << '\n';
  } else {
    os << "# lgmaps convergence problem=" << p.problem << " method=" << to_string(method) << " map=" << to_string(kind)
       << " t_end=" << num(t_end) << " h_ref=" << num(rows.back().h / 8.0) << '\n';
    os << "# generated " << timestamp() << '\n';
    if (fit) { os << "# fitted_order " << num(*fit) << '\n'; }
    os << "h,err_final_pose,observed_order\n";
    for (const auto & r : rows) {
      os << num(r.h) << ',' << num(r.err_final_pose) << ',';
      if (r.exact) {
        os << "exact";
      } else if (r.observed_order) {
        os << num(*r.observed_order);
      }
      os << '\n';
    }
  }
  return kExitOk;
}

void add_problem_options(CLI::App * sub, ProblemArgs & p)
{
  sub->add_option("--problem", p.problem, "Benchmark problem")->check(CLI::IsMember(kProblems));
  sub->add_option("--method", p.method, "mk_rk4 or implicit_midpoint");
  sub->add_option("--map", p.map, "Coordinate map: exp or cay");
  sub->add_option("--t-end", p.t_end, "Final time (beam problems: arclength, default --L)");
  sub->add_option("--frame", p.frame, "constant_twist: body or spatial");
  sub->add_option("--twist", p.twist, "constant_twist: 6 comma-separated values (angular, linear)");
  sub->add_option("--pi0", p.pi0, "heavy_top: initial body angular momentum");
  sub->add_option("--tilt", p.tilt, "heavy_top: rotation vector of the initial attitude");
  sub->add_option("--inertia", p.inertia, "heavy_top: principal inertias");
  sub->add_option("--mgl", p.mgl, "heavy_top: weight times center-of-mass distance");
  sub->add_option("--L", p.L, "beam problems: length");
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Exponential and Cayley maps on SO(3) and SE(3): evaluation, verification and integration"};
  app.require_subcommand(1);
  app.fallthrough();
  // -h is taken by the step size.
  app.set_help_flag("--help", "Print this help message and exit");

  std::uint64_t seed = 42;
  std::string format = "csv";
  std::string output;
  app.add_option("--seed", seed, "Seed for the random property suites (LIEGROUP_MAPS_SEED overrides)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", output, "Output file (default stdout)");

  EvalArgs eval_args;
  auto * eval = app.add_subcommand("eval", "Evaluate one map at the given inputs");
  eval->add_option("map", eval_args.map, "Map name")->required();
  eval->add_option("--x", eval_args.x, "Comma-separated input vector (3 or 6 values)");
  eval->add_option("--y", eval_args.y, "Direction for the ddexp/ddcay family");

  VerifyArgs verify_args;
  auto * verify = app.add_subcommand("verify", "Run a property battery against the oracles");
  verify->add_option("suite", verify_args.suite, "all, so3, se3, cayley, derivatives or lemmas")
    ->check(CLI::IsMember(verify_suites()));
  verify->add_option("--n", verify_args.n, "Samples per check")->check(CLI::PositiveNumber);
  verify->add_option("--x", verify_args.x, "Fixed first input instead of random draws");
  verify->add_option("--y", verify_args.y, "Fixed second input");

  IntegrateArgs integrate_args;
  auto * integ = app.add_subcommand("integrate", "Integrate a benchmark problem and write the trajectory");
  add_problem_options(integ, integrate_args.problem);
  integ->add_option("--h", integrate_args.h, "Step size")->check(CLI::PositiveNumber);
  integ->add_option("--N", integrate_args.N, "beam problems: number of segments")->check(CLI::PositiveNumber);
  integ->add_option("--record-every", integrate_args.record_every, "Keep every k-th sample")
    ->check(CLI::PositiveNumber);

  ConvergenceArgs conv_args;
  auto * conv = app.add_subcommand("convergence", "Observed order of accuracy over a list of step sizes");
  add_problem_options(conv, conv_args.problem);
  conv_args.problem.problem = "heavy_top";
  conv->add_option("--h-list", conv_args.h_list, "Comma-separated step sizes (at least three)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitDomain;
  }

  if (const char * env = std::getenv("LIEGROUP_MAPS_SEED"); env && *env) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception &) {
      std::cerr << "LIEGROUP_MAPS_SEED: not an unsigned integer: '" << env << "'\n";
      return kExitDomain;
    }
  }

  try {
    Sink sink(output);
    if (*eval) { return cmd_eval(eval_args, format, sink); }
    if (*verify) { return cmd_verify(verify_args, seed, format, sink); }
    if (*integ) { return cmd_integrate(integrate_args, format, sink); }
    if (*conv) { return cmd_convergence(conv_args, format, sink); }
  } catch (const DomainError & e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const InvalidInput & e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitDomain;
  } catch (const StepRejected & e) {
    std::cerr << "integration failure: " << e.what() << '\n';
    return kExitIntegration;
  } catch (const NewtonFailure & e) {
    std::cerr << "integration failure: " << e.what() << '\n';
    return kExitIntegration;
  } catch (const IntegrationFailure & e) {
    std::cerr << "integration failure: " << e.what() << '\n';
    return kExitIntegration;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}
