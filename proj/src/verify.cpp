#include "lgmaps/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "lgmaps/errors.hpp"
#include "lgmaps/identities.hpp"
#include "lgmaps/oracle.hpp"
#include "lgmaps/sampling.hpp"
#include "lgmaps/scalars.hpp"
#include "lgmaps/se3.hpp"
#include "lgmaps/so3.hpp"

namespace lgmaps {

namespace {

using V3 = Vec3<double>;
using V6 = Vec6<double>;
using M3 = Mat3<double>;
using M4 = Mat4<double>;
using M6 = Mat6<double>;

constexpr double kPi    = std::numbers::pi;
constexpr double kChart = 2.0 * kPi - 0.1;

using SampleFn   = std::function<CheckInputs(Sampler &)>;
using ResidualFn = std::function<double(const CheckInputs &)>;

struct CheckDef
{
  std::string suite;
  std::string id;
  std::string relation;
  double tol;
  SampleFn sample;
  ResidualFn residual;
};

std::uint64_t fnv1a(const std::string & s)
{
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

V3 ang(const CheckInputs & in, std::size_t i)
{
  return angular(in.v[i]);
}

V3 lin(const CheckInputs & in, std::size_t i)
{
  return linear(in.v[i]);
}

/// Rotation vectors: v[0] with |x| in [rmin, rmax], v[1] with |u| <= umax.
SampleFn rotvecs(double rmin, double rmax, double umax = 1.0)
{
  return [=](Sampler & s) {
    CheckInputs in;
    in.v[0].head<3>() = s.vec3(rmin, rmax);
    in.v[1].head<3>() = s.vec3(0.0, umax);
    in.v[2].head<3>() = s.vec3(0.0, umax);
    return in;
  };
}

/// Screws: v[0] with |x| <= xmax, |y| <= ymax; v[1], v[2] with both blocks <= umax.
SampleFn screws(double xmax, double ymax = 2.0, double umax = 1.0)
{
  return [=](Sampler & s) {
    CheckInputs in;
    in.v[0] = s.screw6(xmax, ymax);
    in.v[1] = s.screw6(umax, umax);
    in.v[2] = s.screw6(umax, umax);
    return in;
  };
}

double max_of(std::initializer_list<double> xs)
{
  return *std::max_element(xs.begin(), xs.end());
}

/// Inverse computed in extended precision, rounded back to double.
template<int N>
Eigen::Matrix<double, N, N> inverse_wide(const Eigen::Matrix<long double, N, N> & M)
{
  return M.inverse().template cast<double>();
}

template<typename F>
auto fd(F && f, const V6 & at, const V6 & dir)
{
  return oracle::fd_directional(std::forward<F>(f), at, dir);
}

template<typename F>
auto fd3(F && f, const V3 & at, const V3 & dir)
{
  return oracle::fd_directional(std::forward<F>(f), at, dir);
}

/// Largest difference between forced series and closed-form evaluation of every coefficient-bearing op.
double branch_continuity(const CheckInputs & in)
{
  const Branch S = Branch::series;
  const Branch C = Branch::closed_form;
  V3 n           = ang(in, 0);
  n              = n.norm() > 0 ? V3(n.normalized()) : V3::UnitX();
  double worst   = 0.0;
  auto upd       = [&worst](double d) { worst = std::max(worst, std::abs(d)); };
  auto updm      = [&worst](const auto & A, const auto & B) { worst = std::max(worst, max_abs(A - B)); };
  for (double eps : {-1e-9, 1e-9}) {
    const double phi = kSmallAngle + eps;
    const V3 x       = phi * n;
    const V3 y = lin(in, 0), u = ang(in, 1), v = lin(in, 1);
    const V6 X = screw<double>(x, y), U = screw<double>(u, v);

    const auto t1 = trig_coeffs(phi, S), t2 = trig_coeffs(phi, C);
    for (double d : {t1.alpha - t2.alpha, t1.beta - t2.beta, t1.delta - t2.delta, t1.gamma() - t2.gamma(),
                     t1.inv_beta() - t2.inv_beta()}) {
      upd(d);
    }
    const auto e1 = exp_coeffs(phi, S), e2 = exp_coeffs(phi, C);
    for (double d : {e1.p1 - e2.p1, e1.p2 - e2.p2, e1.r1 - e2.r1, e1.r2 - e2.r2, e1.e1 - e2.e1, e1.e2 - e2.e2,
                     e1.e3 - e2.e3, e1.e4 - e2.e4}) {
      upd(d);
    }
    const auto i1 = exp_inv_coeffs(phi, S), i2 = exp_inv_coeffs(phi, C);
    for (double d : {i1.q1 - i2.q1, i1.q2 - i2.q2, i1.t2 - i2.t2, i1.p3 - i2.p3, i1.f2 - i2.f2, i1.f4 - i2.f4}) {
      upd(d);
    }
    const auto d1 = trig_coeff_derivs(x, u, S), d2 = trig_coeff_derivs(x, u, C);
    for (double d : {d1.d_alpha - d2.d_alpha, d1.d_beta - d2.d_beta, d1.d_delta - d2.d_delta,
                     *d1.d_gamma - *d2.d_gamma}) {
      upd(d);
    }
    updm(so3::exp(x, S), so3::exp(x, C));
    updm(so3::dexp(x, S), so3::dexp(x, C));
    updm(so3::dexp_inv(x, S), so3::dexp_inv(x, C));
    updm(so3::ddexp(x, u, S), so3::ddexp(x, u, C));
    updm(so3::ddexp_inv(x, u, S), so3::ddexp_inv(x, u, C));
    updm(so3::d2dexp(x, y, u, S), so3::d2dexp(x, y, u, C));
    updm(so3::d2dexp_inv(x, y, u, S), so3::d2dexp_inv(x, y, u, C));
    updm(se3::exp(X, S).matrix(), se3::exp(X, C).matrix());
    updm(se3::dexp(X, S), se3::dexp(X, C));
    updm(se3::dexp_adform(X, S), se3::dexp_adform(X, C));
    updm(se3::dexp_inv(X, S), se3::dexp_inv(X, C));
    updm(se3::dexp_inv_adform(X, S), se3::dexp_inv_adform(X, C));
    updm(se3::ddexp(X, U, S), se3::ddexp(X, U, C));
    updm(se3::ddexp_inv(X, U, S), se3::ddexp_inv(X, U, C));
  }
  return worst;
}

/// Spatial twist of t -> psi(X(t)) by central differences, against dpsi_X X'.
double reconstruction(const CheckInputs & in)
{
  const double t0 = 0.5;
  auto Xt         = [&](double t) -> V6 { return in.v[0] + t * in.v[1] + t * t * in.v[2] + t * t * t * in.v[3]; };
  const V6 Xd     = in.v[1] + 2.0 * t0 * in.v[2] + 3.0 * t0 * t0 * in.v[3];
  const double h  = 1e-5;
  double worst    = 0.0;
  for (int k = 0; k < 2; ++k) {
    auto psi       = [k](const V6 & X) { return k == 0 ? se3::exp(X).matrix() : se3::cay(X).matrix(); };
    const M4 Cd    = (psi(Xt(t0 + h)) - psi(Xt(t0 - h))) / (2.0 * h);
    const M4 Vhat  = Cd * psi(Xt(t0)).inverse();
    const V6 Vfd   = vee6<double>(Vhat);
    const V6 Vform = (k == 0 ? se3::dexp(Xt(t0)) : se3::dcay(Xt(t0))) * Xd;
    worst          = std::max(worst, max_abs(Vfd - Vform));
  }
  return worst;
}

std::vector<CheckDef> make_registry()
{
  std::vector<CheckDef> r;
  auto add = [&r](std::string suite, std::string id, std::string rel, double tol, SampleFn s, ResidualFn f) {
    r.push_back(CheckDef{std::move(suite), std::move(id), std::move(rel), tol, std::move(s), std::move(f)});
  };

  // ----------------------------------------------------------------- so3
  add("so3", "so3.exp.series", "exp(x^) = sum_i (x^)^i / i!, |x| <= pi", 1e-13, rotvecs(0, kPi),
      [](const CheckInputs & in) {
        const V3 x = ang(in, 0);
        return max_abs(so3::exp(x) - oracle::series_exp(hat3(x)));
      });
  add("so3", "so3.dexp.series", "dexp_x = sum_i (x^)^i / (i+1)!, |x| <= pi", 1e-12, rotvecs(0, kPi),
      [](const CheckInputs & in) {
        const V3 x = ang(in, 0);
        return max_abs(so3::dexp(x) - oracle::series_dexp_matrix<M3>(hat3(x)));
      });
  add("so3", "so3.dexp_inv.bernoulli", "dexp_x^-1 = sum_i B_i/i! (x^)^i, |x| <= 1", 1e-10, rotvecs(0, 1),
      [](const CheckInputs & in) {
        const V3 x = ang(in, 0);
        return max_abs(so3::dexp_inv(x) - oracle::series_dexp_inv_matrix<M3>(hat3(x)));
      });
  add("so3", "so3.dexp_inv.inverse", "dexp_x^-1 = inv(dexp_x), |x| < 2 pi - 0.1", 1e-11, rotvecs(0, kChart),
      [](const CheckInputs & in) {
        const V3 x    = ang(in, 0);
        const M3 invd = inverse_wide(so3::dexp<long double>(x.cast<long double>()));
        return max_of({max_abs(so3::dexp_inv(x) - invd), max_abs(so3::dexp(x) * so3::dexp_inv(x) - M3::Identity())});
      });
  add("so3", "so3.dexp.forms", "five closed forms of dexp agree pairwise, |x| in (1e-3, pi]", 1e-12,
      rotvecs(1e-3, kPi), [](const CheckInputs & in) {
        const V3 x                 = ang(in, 0);
        const std::array<M3, 5> fs = {so3::dexp(x, so3::DexpForm::trigonometric), so3::dexp(x, so3::DexpForm::rotation),
                                      so3::dexp(x, so3::DexpForm::axis), so3::dexp(x, so3::DexpForm::half_angle),
                                      so3::dexp(x, so3::DexpForm::coefficients)};
        double w                   = 0.0;
        for (const auto & a : fs) {
          for (const auto & b : fs) { w = std::max(w, max_abs(a - b)); }
        }
        return w;
      });
  add("so3", "so3.dexp.transpose", "dexp_-x = dexp_x' and dexp_-x^-1 = dexp_x^-T", 1e-12, rotvecs(0, kChart),
      [](const CheckInputs & in) {
        const V3 x = ang(in, 0);
        return max_of({max_abs(so3::dexp<double>(-x) - so3::dexp(x).transpose()),
                       max_abs(so3::dexp_inv<double>(-x) - so3::dexp_inv(x).transpose())});
      });
  add("so3", "so3.log.roundtrip", "exp(log R) = R", 1e-10, rotvecs(0, kPi), [](const CheckInputs & in) {
    const M3 R = so3::exp(ang(in, 0));
    return max_abs(so3::exp(so3::log(R)) - R);
  });
  add("so3", "scalars.derivs.fd", "(D alpha, D beta, D delta, D gamma)(u) = central differences, h = 1e-6", 1e-7,
      rotvecs(1e-8, kChart), [](const CheckInputs & in) {
        // Differences in long double: rounding of |x +- h u| in double alone costs ~1e-7 near 2 pi.
        using L         = long double;
        const V3 x      = ang(in, 0), u = ang(in, 1);
        const L h       = 1e-6L;
        const auto xl   = x.cast<L>();
        const auto ul   = u.cast<L>();
        const auto p    = trig_coeffs<L>((xl + h * ul).norm());
        const auto m    = trig_coeffs<L>((xl - h * ul).norm());
        const auto d    = trig_coeff_derivs(x, u);
        auto gap        = [h](double analytic, L plus, L minus) {
          return static_cast<double>(std::abs(L(analytic) - (plus - minus) / (2 * h)));
        };
        return max_of({gap(d.d_alpha, p.alpha, m.alpha), gap(d.d_beta, p.beta, m.beta),
                       gap(d.d_delta, p.delta, m.delta), gap(*d.d_gamma, p.gamma(), m.gamma())});
      });
  add("so3", "scalars.branch_continuity", "series and closed-form branches agree at |x| = 1e-2 +- 1e-9", 1e-13,
      screws(1.0), branch_continuity);

  // ----------------------------------------------------------------- se3
  add("se3", "se3.exp.series", "exp(X^) = sum_i (X^)^i / i!, |x| <= pi, |y| <= 2", 1e-12, screws(kPi),
      [](const CheckInputs & in) {
        return max_abs(se3::exp(in.v[0]).matrix() - oracle::series_exp(hat6(in.v[0])));
      });
  add("se3", "se3.dexp.series", "dexp_X = sum_i ad_X^i / (i+1)!", 1e-11, screws(kPi), [](const CheckInputs & in) {
    return max_abs(se3::dexp(in.v[0]) - oracle::series_dexp_matrix<M6>(ad6(in.v[0])));
  });
  add("se3", "se3.dexp_inv.bernoulli", "dexp_X^-1 = sum_i B_i/i! ad_X^i, |x| <= 1", 1e-10, screws(1.0),
      [](const CheckInputs & in) {
        return max_abs(se3::dexp_inv(in.v[0]) - oracle::series_dexp_inv_matrix<M6>(ad6(in.v[0])));
      });
  add("se3", "se3.dexp_inv.inverse", "dexp_X^-1 = inv(dexp_X), |x| < 2 pi - 0.1", 1e-11, screws(kChart),
      [](const CheckInputs & in) {
        const M6 d    = se3::dexp(in.v[0]);
        const M6 invd = inverse_wide(se3::dexp<long double>(in.v[0].cast<long double>()));
        return max_of({max_abs(se3::dexp_inv(in.v[0]) - invd), max_abs(d * se3::dexp_inv(in.v[0]) - M6::Identity())});
      });
  add("se3", "se3.dexp.adform", "block form of dexp = polynomial in ad_X", 1e-10, screws(kChart),
      [](const CheckInputs & in) { return max_abs(se3::dexp(in.v[0]) - se3::dexp_adform(in.v[0])); });
  add("se3", "se3.dexp_inv.adform", "block form of dexp^-1 = polynomial in ad_X", 1e-10, screws(kChart),
      [](const CheckInputs & in) { return max_abs(se3::dexp_inv(in.v[0]) - se3::dexp_inv_adform(in.v[0])); });
  add("se3", "se3.Ad_exp", "Ad_exp(X) = exp(ad_X)", 1e-11, screws(kPi),
      [](const CheckInputs & in) { return se3_Ad_exp_identity_check(in.v[0]); });
  add("se3", "se3.log.roundtrip", "exp(log C) = C", 1e-10, screws(kPi), [](const CheckInputs & in) {
    const Pose<double> C = se3::exp(in.v[0]);
    return max_abs(se3::exp(se3::log(C)).matrix() - C.matrix());
  });
  add("se3", "se3.linearity_in_y", "lower-left blocks of dexp, dexp^-1, dcay, dcay^-1 are linear in y", 1e-13,
      screws(kPi), [](const CheckInputs & in) {
        const V3 x = ang(in, 0), y1 = lin(in, 1), y2 = lin(in, 2);
        double w   = 0.0;
        for (int k = 0; k < 4; ++k) {
          auto L = [&](const V3 & y) -> M3 {
            const V6 X = screw<double>(x, y);
            const M6 M = k == 0 ? se3::dexp(X) : k == 1 ? se3::dexp_inv(X) : k == 2 ? se3::dcay(X) : se3::dcay_inv(X);
            return M.bottomLeftCorner<3, 3>();
          };
          w = std::max(w, max_abs(L(y1 + y2) - L(y1) - L(y2) + L(V3::Zero())));
        }
        return w;
      });
  add("se3", "se3.reconstruction", "V^s = dexp_X X' and dcay_X X' match C' C^-1 along a cubic X(t)", 1e-5,
      [](Sampler & s) {
        CheckInputs in;
        in.v[0] = s.screw6(1.0, 1.0);
        for (std::size_t i = 1; i < 4; ++i) { in.v[i] = s.screw6(0.5, 0.5); }
        return in;
      },
      reconstruction);

  // ----------------------------------------------------------------- cayley
  auto gibbs = [](Sampler & s) {
    CheckInputs in;
    in.v[0] = screw<double>(s.vec3(0.0, 3.0), s.vec3(0.0, 2.0));
    in.v[1] = s.screw6(1.0, 1.0);
    in.v[2] = s.screw6(1.0, 1.0);
    return in;
  };
  add("cayley", "so3.cay.resolvent", "cay(g^) = (I - g^)^-1 (I + g^)", 1e-13, gibbs, [](const CheckInputs & in) {
    const auto rv = oracle::resolvent_cay<M3>(hat3(ang(in, 0)));
    return max_of({max_abs(so3::cay(ang(in, 0)) - rv.value), rv.commuted_residual});
  });
  add("cayley", "se3.cay.resolvent", "cay(X^) = (I - X^)^-1 (I + X^) = (R, (I+R) y) = (R, 2 sigma dcay^-T y)", 1e-12,
      gibbs, [](const CheckInputs & in) {
        const auto rv      = oracle::resolvent_cay<M4>(hat6(in.v[0]));
        const Pose<double> C = se3::cay(in.v[0]);
        return max_of({max_abs(C.matrix() - rv.value), rv.commuted_residual,
                       max_abs(C.r - se3::cay_position_dcay(in.v[0]))});
      });
  add("cayley", "se3.adjoint_cay.resolvent", "cay(ad_X) = (I - ad_X)^-1 (I + ad_X)", 1e-12, gibbs,
      [](const CheckInputs & in) {
        const auto rv = oracle::resolvent_cay<M6>(ad6(in.v[0]));
        return max_of({max_abs(se3::adjoint_cay(in.v[0]) - rv.value), rv.commuted_residual});
      });
  add("cayley", "se3.adjoint_cay.A_forms", "five expressions of the lower-left block of cay(ad_X) agree", 1e-12,
      gibbs, [](const CheckInputs & in) {
        const auto res = se3::adjoint_cay_A_forms(in.v[0]);
        return *std::max_element(res.begin(), res.end());
      });
  add("cayley", "so3.dcay_inv.forms", "I/sigma + (g^2 - g^)/2 = (I + R')/(2 sigma)", 1e-13, gibbs,
      [](const CheckInputs & in) { return max_abs(so3::dcay_inv(ang(in, 0)) - so3::dcay_inv_rot(ang(in, 0))); });
  add("cayley", "cay.dcay_inverse", "dcay dcay^-1 = I on SO(3) and SE(3)", 1e-12, gibbs, [](const CheckInputs & in) {
    return max_of({max_abs(so3::dcay(ang(in, 0)) * so3::dcay_inv(ang(in, 0)) - M3::Identity()),
                   max_abs(se3::dcay(in.v[0]) * se3::dcay_inv(in.v[0]) - M6::Identity())});
  });
  add("cayley", "so3.dcay.transpose", "dcay_-g = dcay_g'", 1e-15, gibbs, [](const CheckInputs & in) {
    return max_abs(so3::dcay<double>(-ang(in, 0)) - so3::dcay(ang(in, 0)).transpose());
  });
  add("cayley", "so3.exp_cay_bridge", "exp(phi n^) = cay(tan(phi/2) n^), phi in (0, pi - 0.1)", 1e-11,
      rotvecs(1e-6, kPi - 0.1),
      [](const CheckInputs & in) { return max_abs(so3::exp(ang(in, 0)) - so3::cay(so3::gibbs_from_rotvec(ang(in, 0)))); });
  add("cayley", "cay.inverse_roundtrip", "cay(cay^-1(C)) = C on SO(3) and SE(3)", 1e-10, gibbs,
      [](const CheckInputs & in) {
        const M3 R           = so3::cay(ang(in, 0));
        const Pose<double> C = se3::cay(in.v[0]);
        return max_of({max_abs(so3::cay(so3::cay_inv(R)) - R), max_abs(se3::cay(se3::cay_inv(C)).matrix() - C.matrix())});
      });

  // ----------------------------------------------------------------- derivatives
  add("derivatives", "so3.ddexp.fd", "(D_x dexp)(y) = central differences", 1e-6, rotvecs(0, kPi),
      [](const CheckInputs & in) {
        const V3 x = ang(in, 0), y = ang(in, 1);
        return max_abs(so3::ddexp(x, y) - fd3([](const V3 & z) { return so3::dexp(z); }, x, y));
      });
  add("derivatives", "so3.ddexp_inv.fd", "(D_x dexp^-1)(y) = central differences", 1e-6, rotvecs(0, kPi),
      [](const CheckInputs & in) {
        const V3 x = ang(in, 0), y = ang(in, 1);
        return max_abs(so3::ddexp_inv(x, y) - fd3([](const V3 & z) { return so3::dexp_inv(z); }, x, y));
      });
  add("derivatives", "so3.ddcay.fd", "(D_g dcay)(w) and (D_g dcay^-1)(w) = central differences", 1e-6, gibbs,
      [](const CheckInputs & in) {
        const V3 g = ang(in, 0), w = ang(in, 1);
        return max_of({max_abs(so3::ddcay(g, w) - fd3([](const V3 & z) { return so3::dcay(z); }, g, w)),
                       max_abs(so3::ddcay_inv(g, w) - fd3([](const V3 & z) { return so3::dcay_inv(z); }, g, w))});
      });
  add("derivatives", "so3.defining_relation", "(D_x psi)(y) = (dpsi_x y)^ psi(x) for exp and cay", 1e-6,
      rotvecs(0, kPi - 0.1), [](const CheckInputs & in) {
        const V3 x = ang(in, 0), y = ang(in, 1);
        const M3 De = fd3([](const V3 & z) { return so3::exp(z); }, x, y);
        const M3 Dc = fd3([](const V3 & z) { return so3::cay(z); }, x, y);
        return max_of({max_abs(De - hat3<double>(so3::dexp(x) * y) * so3::exp(x)),
                       max_abs(Dc - hat3<double>(so3::dcay(x) * y) * so3::cay(x))});
      });
  add("derivatives", "so3.product_rule", "Ddexp dexp^-1 + dexp Ddexp^-1 = 0, same for cay", 1e-10, rotvecs(0, kChart),
      [](const CheckInputs & in) {
        const V3 x = ang(in, 0), y = ang(in, 1);
        return max_of({max_abs(so3::ddexp(x, y) * so3::dexp_inv(x) + so3::dexp(x) * so3::ddexp_inv(x, y)),
                       max_abs(so3::ddcay(x, y) * so3::dcay_inv(x) + so3::dcay(x) * so3::ddcay_inv(x, y))});
      });
  add("derivatives", "se3.ddexp.fd", "(D_X dexp)(U) = central differences, h = 1e-5 max(1, |X|)", 1e-6, screws(kPi),
      [](const CheckInputs & in) {
        return max_abs(se3::ddexp(in.v[0], in.v[1]) - fd([](const V6 & z) { return se3::dexp(z); }, in.v[0], in.v[1]));
      });
  add("derivatives", "se3.ddexp_inv.fd", "(D_X dexp^-1)(U) = central differences", 1e-6, screws(kPi),
      [](const CheckInputs & in) {
        return max_abs(
          se3::ddexp_inv(in.v[0], in.v[1]) - fd([](const V6 & z) { return se3::dexp_inv(z); }, in.v[0], in.v[1]));
      });
  add("derivatives", "se3.ddcay.fd", "(D_X dcay)(U) = central differences", 1e-6, gibbs, [](const CheckInputs & in) {
    return max_abs(se3::ddcay(in.v[0], in.v[1]) - fd([](const V6 & z) { return se3::dcay(z); }, in.v[0], in.v[1]));
  });
  add("derivatives", "se3.ddcay_inv.fd", "(D_X dcay^-1)(U) = central differences", 1e-6, gibbs,
      [](const CheckInputs & in) {
        return max_abs(
          se3::ddcay_inv(in.v[0], in.v[1]) - fd([](const V6 & z) { return se3::dcay_inv(z); }, in.v[0], in.v[1]));
      });
  add("derivatives", "se3.defining_relation", "(D_X psi)(U) = (dpsi_X U)^ psi(X) for exp and cay", 1e-6,
      screws(kPi - 0.1), [](const CheckInputs & in) {
        const V6 X = in.v[0], U = in.v[1];
        const M4 De = fd([](const V6 & z) { return se3::exp(z).matrix(); }, X, U);
        const M4 Dc = fd([](const V6 & z) { return se3::cay(z).matrix(); }, X, U);
        return max_of({max_abs(De - hat6<double>(se3::dexp(X) * U) * se3::exp(X).matrix()),
                       max_abs(Dc - hat6<double>(se3::dcay(X) * U) * se3::cay(X).matrix())});
      });
  add("derivatives", "se3.product_rule.exp", "Ddexp dexp^-1 + dexp Ddexp^-1 = 0", 1e-9, screws(kPi),
      [](const CheckInputs & in) {
        const V6 X = in.v[0], U = in.v[1];
        return max_abs(se3::ddexp(X, U) * se3::dexp_inv(X) + se3::dexp(X) * se3::ddexp_inv(X, U));
      });
  add("derivatives", "se3.product_rule.cay", "Ddcay dcay^-1 + dcay Ddcay^-1 = 0", 1e-9, gibbs,
      [](const CheckInputs & in) {
        const V6 X = in.v[0], U = in.v[1];
        return max_abs(se3::ddcay(X, U) * se3::dcay_inv(X) + se3::dcay(X) * se3::ddcay_inv(X, U));
      });

  // ----------------------------------------------------------------- lemmas
  const char * so3_rel[4] = {"exp x^ = dexp^-T dexp", "exp x^ = dexp dexp^-T", "exp x^ = I + x^ dexp",
                             "exp x^ = I + dexp x^"};
  for (std::size_t k = 0; k < 4; ++k) {
    add("lemmas", "so3.exp_dexp." + std::to_string(k + 1), so3_rel[k], 1e-11, rotvecs(1e-6, kChart),
        [k](const CheckInputs & in) { return so3_dexp_identities(ang(in, 0))[k]; });
  }
  const char * se3_rel[4] = {"Ad_C = dexp_-X^-1 dexp_X", "Ad_C = dexp_X dexp_-X^-1", "Ad_C = I + ad_X dexp_X",
                             "Ad_C = I + dexp_X ad_X"};
  for (std::size_t k = 0; k < 4; ++k) {
    add("lemmas", "se3.Ad_dexp." + std::to_string(k + 1), se3_rel[k], 1e-10, screws(kPi),
        [k](const CheckInputs & in) { return se3_dexp_Ad_identities(in.v[0])[k]; });
  }
  return r;
}

const std::vector<CheckDef> & registry()
{
  static const std::vector<CheckDef> r = make_registry();
  return r;
}


}  // namespace

const std::vector<std::string> & verify_suites()
{
  static const std::vector<std::string> s = {"all", "so3", "se3", "cayley", "derivatives", "lemmas"};
  return s;
}

bool VerifyReport::all_passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult & c) { return c.passed(); });
}

std::optional<std::size_t> VerifyReport::worst_failure() const
{
  std::optional<std::size_t> worst;
  double ratio = 0.0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const CheckResult & c = checks[i];
    if (c.passed()) { continue; }
    const double q = c.error ? INFINITY : c.max_residual / c.tolerance;
    if (!worst || q > ratio) {
      worst = i;
      ratio = q;
    }
  }
  return worst;
}

VerifyReport run_verify(const VerifyOptions & opt)
{
  const auto & suites = verify_suites();
  if (std::find(suites.begin(), suites.end(), opt.suite) == suites.end()) {
    throw InvalidInput("unknown suite '" + opt.suite + "'");
  }
  if (opt.n < 1) { throw InvalidInput("verify: n must be >= 1"); }
  const bool fixed = opt.x.has_value();

  VerifyReport rep;
  for (const CheckDef & def : registry()) {
    if (opt.suite != "all" && def.suite != opt.suite) { continue; }
    CheckResult res;
    res.id        = def.id;
    res.suite     = def.suite;
    res.relation  = def.relation;
    res.tolerance = def.tol;
    Sampler smp(opt.seed ^ fnv1a(def.id));
    const int n = fixed ? 1 : opt.n;
    for (int i = 0; i < n; ++i) {
      CheckInputs in = def.sample(smp);
      if (fixed) {
        in.v[0] = *opt.x;
        if (opt.y) { in.v[1] = *opt.y; }
      }
      ++res.samples;
      try {
        double r = def.residual(in);
        if (!std::isfinite(r)) { r = INFINITY; }
        if (i == 0 || r > res.max_residual) {
          res.max_residual = r;
          res.worst        = in;
        }
      } catch (const std::exception & e) {
        res.error = e.what();
        res.worst = in;
        break;
      }
    }
    rep.checks.push_back(std::move(res));
  }
  return rep;
}

}  // namespace lgmaps
