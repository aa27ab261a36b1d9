// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "lgmaps/problems.hpp"
#include "lgmaps/sampling.hpp"
#include "lgmaps/se3.hpp"
#include "lgmaps/verify.hpp"

using namespace lgmaps;

namespace {

struct Tally
{
  int failed = 0;

  void report(const char * id, bool ok, const std::string & detail)
  {
    std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    failed += ok ? 0 : 1;
  }
};

std::string fmt(const char * f, double a, double b = 0)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

/// Residuals by check id.
std::map<std::string, CheckResult> index(const VerifyReport & r)
{
  std::map<std::string, CheckResult> m;
  for (const auto & c : r.checks) { m[c.id] = c; }
  return m;
}

struct Limit
{
  std::string id;
  double tol;
};

/// Every check must exist, be error free and stay below its criterion tolerance.
void against(Tally & t, const char * ac, const std::map<std::string, CheckResult> & m, const std::vector<Limit> & lims)
{
  bool ok = true;
  std::string detail;
  for (const auto & l : lims) {
    const auto it = m.find(l.id);
    if (it == m.end()) {
      ok = false;
      detail += l.id + " missing; ";
      continue;
    }
    const CheckResult & c = it->second;
    const bool pass       = !c.error && c.max_residual < l.tol;
    ok                    = ok && pass;
    detail += l.id + fmt("=%.2e/%.0e", c.max_residual, l.tol) + (c.error ? " (" + *c.error + ")" : "") + "; ";
  }
  t.report(ac, ok, detail);
}

double worst_orth(const IntegrationResult & r)
{
  double w = 0;
  for (const auto & s : r.trajectory.samples) { w = std::max(w, s.drift_orth); }
  return w;
}

}  // namespace

int main()
{
  Tally t;

  VerifyOptions opt;
  opt.n    = 1000;
  opt.seed = 42;
  const auto all = index(run_verify(opt));
  opt.suite      = "derivatives";
  opt.n          = 500;
  const auto der = index(run_verify(opt));

  against(t, "AC1", all, {{"so3.exp.series", 1e-12}, {"se3.exp.series", 1e-12}});
  against(t, "AC2", all,
          {{"so3.dexp.series", 1e-11},
           {"se3.dexp.series", 1e-11},
           {"so3.dexp_inv.bernoulli", 1e-10},
           {"se3.dexp_inv.bernoulli", 1e-10},
           {"so3.dexp_inv.inverse", 1e-11},
           {"se3.dexp_inv.inverse", 1e-11}});
  std::vector<Limit> lemmas{{"se3.Ad_exp", 1e-11}};
  for (int k = 1; k <= 4; ++k) {
    lemmas.push_back({"so3.exp_dexp." + std::to_string(k), 1e-10});
    lemmas.push_back({"se3.Ad_dexp." + std::to_string(k), 1e-10});
  }
  against(t, "AC3", all, lemmas);
  against(t, "AC4", der,
          {{"se3.ddexp.fd", 1e-6},
           {"se3.ddexp_inv.fd", 1e-6},
           {"se3.ddcay.fd", 1e-6},
           {"se3.ddcay_inv.fd", 1e-6},
           {"se3.product_rule.exp", 1e-9},
           {"se3.product_rule.cay", 1e-9}});
  against(t, "AC5", all,
          {{"so3.cay.resolvent", 1e-12},
           {"se3.cay.resolvent", 1e-12},
           {"se3.adjoint_cay.resolvent", 1e-12},
           {"se3.adjoint_cay.A_forms", 1e-12},
           {"so3.exp_cay_bridge", 1e-11}});
  against(t, "AC6", all, {{"se3.dexp.adform", 1e-10}, {"se3.dexp_inv.adform", 1e-10}});
  against(t, "AC7", all, {{"scalars.branch_continuity", 1e-13}});

  {
    const Vec6d V = default_constant_twist();
    double worst  = 0;
    bool ok       = true;
    for (Frame f : {Frame::body, Frame::spatial}) {
      for (double h : {1.0, 0.5, 0.1, 0.037, 0.01}) {
        const auto r = integrate(constant_twist(V, f), Method::mk_rk4, MapKind::exponential, h, 2.0);
        if (r.error) {
          ok = false;
          continue;
        }
        worst = std::max(worst, pose_error(constant_twist_exact(V, f, Posed::identity(), 2.0),
                                           r.trajectory.samples.back().C));
      }
    }
    t.report("AC8", ok && worst < 1e-12, fmt("max final pose error %.2e (tol 1e-12)", worst));
  }

  {
    const auto start    = std::chrono::steady_clock::now();
    const LieSystem sys = heavy_top(heavy_top_convergence_params());
    const std::vector<double> hs{4e-3, 2e-3, 1e-3, 5e-4};
    bool ok = true;
    std::string detail;
    for (MapKind k : {MapKind::exponential, MapKind::cayley}) {
      for (auto [m, lo, hi] : {std::tuple{Method::mk_rk4, 3.7, 4.3}, {Method::implicit_midpoint, 1.8, 2.2}}) {
        const auto rows = convergence_study(sys, m, k, hs, kHeavyTopConvergenceTEnd);
        detail += to_string(m) + "/" + to_string(k) + " slopes";
        for (std::size_t i = 1; i < rows.size(); ++i) {
          const auto & o = rows[i].observed_order;
          ok             = ok && o && *o >= lo && *o <= hi;
          detail += o ? fmt(" %.3f", *o) : std::string(" -");
        }
        detail += "; ";
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.report("AC9", ok && secs < 10.0, detail + fmt("runtime %.2f s", secs));
  }

  {
    double de = 0, dc = 0, orth = 0;
    bool ok   = true;
    for (MapKind k : {MapKind::exponential, MapKind::cayley}) {
      const auto r = integrate(heavy_top(), Method::mk_rk4, k, 1e-3, 10.0);
      ok           = ok && !r.error;
      for (const auto & s : r.trajectory.samples) {
        de = std::max(de, s.drift_energy.value_or(1.0));
        dc = std::max(dc, s.drift_casimir.value_or(1.0));
      }
      orth = std::max(orth, worst_orth(r));
    }
    t.report("AC10", ok && de < 1e-8 && dc < 1e-8 && orth < 1e-11,
             fmt("energy %.2e, casimir %.2e", de, dc) + fmt(", orthogonality %.2e over 1e4 steps", orth));
  }

  {
    double worst = 0;
    for (double L : {0.5, 1.0, 2.5}) {
      for (auto [kappa, tau] : {std::pair{1.0, 0.2}, {2.0, 0.0}, {0.7, -1.3}}) {
        const Strain chi = helix_strain(kappa, tau);
        const auto tr    = beam_reconstruct(chi, L, 1, MapKind::exponential);
        worst            = std::max(worst, pose_error(se3::exp<double>(L * chi(0.0)), tr.samples.back().C));
      }
    }
    t.report("AC11", worst < 1e-12, fmt("max tip pose error %.2e (tol 1e-12)", worst));
  }

  {
    const auto z    = se3::adjoint_vs_se3_cay_mismatch<double>(Vec6d::Zero());
    const double d0 = max_abs(Vec3<double>(z.r_adjoint - z.r_se3));
    Sampler s(42);
    const Vec6d X   = s.screw6(1.0, 1.0);
    const auto g    = se3::adjoint_vs_se3_cay_mismatch<double>(X);
    const double d1 = max_abs(Vec3<double>(g.r_adjoint - g.r_se3));
    t.report("AC12", d0 == 0.0 && d1 > 1e-2, fmt("difference at 0: %.1e, generic sample: %.3e (need > 1e-2)", d0, d1));
  }

  std::printf("%d of 12 criteria failed\n", t.failed);
  return t.failed == 0 ? 0 : 1;
}
