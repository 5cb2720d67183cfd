#include "kropina/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "kropina/errors.hpp"

namespace kropina {

namespace {

constexpr int tl(int e) { return 1 - e; }
constexpr double sgn(int a, int b) { return (a + b) % 2 == 0 ? 1.0 : -1.0; }
constexpr double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

Vec2<double> lz(const Mat32& z, const Vec3<double>& l) {
  return {l[0] * z[0][0] + l[1] * z[1][0] + l[2] * z[2][0], l[0] * z[0][1] + l[1] * z[1][1] + l[2] * z[2][1]};
}

double c_of(const Mat32& z) {
  const double c2 = det_A(z);
  if (!(c2 > 0.0)) throw DegenerateError("immersion: det A = " + std::to_string(c2) + " is not positive");
  return std::sqrt(c2);
}

double e_of(const Mat32& z, const OneFormSpec& beta) {
  const double E = e_index_sum(beta, z);
  if (!(E > 0.0)) {
    throw DegenerateError("immersion: E = " + std::to_string(E) + " is not positive for 1-form " + beta.label());
  }
  return E;
}

double psi_of(const OneFormSpec& beta, double x2) { return x2 - beta.theta(); }

double e_closed(const OneFormSpec& beta, const ProfileValues& p, double x2) {
  const double b2 = beta.b() * beta.b();
  if (!beta.rotational()) return b2 * p.f * p.f;
  const double s = std::sin(psi_of(beta, x2));
  return b2 * p.f * p.f * (p.df * p.df + s * s);
}

template <class Fn>
double contract_hess(const ImmersionJet& j, Fn&& h) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e)
      for (int k = 0; k < 3; ++k)
        for (int g = 0; g < 2; ++g) sum += h(i, e, k, g) * j.phi_xx[k][e][g] * j.v[i];
  return sum;
}

}  // namespace

ImmersionJet RevolutionImmersion::jet(const Vec2<double>& x) const {
  const ProfileValues p = profile_.at(x[0]);
  const double c = std::cos(x[1]);
  const double s = std::sin(x[1]);
  ImmersionJet j;
  j.phi = {p.f * c, p.f * s, x[0]};
  j.z = {{{p.df * c, -p.f * s}, {p.df * s, p.f * c}, {1.0, 0.0}}};
  j.phi_xx[0] = {{{p.d2f * c, -p.df * s}, {-p.df * s, -p.f * c}}};
  j.phi_xx[1] = {{{p.d2f * s, p.df * c}, {p.df * c, -p.f * s}}};
  j.phi_xx[2] = {{{0.0, 0.0}, {0.0, 0.0}}};
  j.v = {-c, -s, p.df};
  return j;
}

PullbackData compute_CE(const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x) {
  const ImmersionJet j = im.jet(x);
  const ProfileValues p = im.profile().at(x[0]);
  PullbackData d;
  for (int e = 0; e < 2; ++e)
    for (int t = 0; t < 2; ++t) d.A[e][t] = j.z[0][e] * j.z[0][t] + j.z[1][e] * j.z[1][t] + j.z[2][e] * j.z[2][t];
  d.C = c_of(j.z);
  d.C_closed = p.f * std::sqrt(1.0 + p.df * p.df);
  d.E = e_of(j.z, beta);
  d.E_closed = e_closed(beta, p, x[1]);
  d.volume = 2.0 * d.C * d.C * d.C / d.E;
  d.beta_norm_sq = beta_norm_sq(AmbientKropina(beta), d.A, j.z);
  return d;
}

MetricField pullback_metric(const RevolutionImmersion& im, const OneFormSpec& beta) {
  const ProfileFunction prof = im.profile();
  const Vec3<double> l = beta.direction();
  const double b = beta.b();
  const double theta = beta.theta();
  const bool rotational = beta.rotational();

  const auto den = [prof, l, b](const Vec2<double>& x, const Vec2<double>& y) {
    const double f = prof.f(x[0]), df = prof.df(x[0]);
    const double c = std::cos(x[1]), s = std::sin(x[1]);
    return b * (l[0] * (df * c * y[0] - f * s * y[1]) + l[1] * (df * s * y[0] + f * c * y[1]) + l[2] * y[0]);
  };
  MetricField m(
      "pullback[" + prof.spec() + ", " + beta.label() + ", b=" + std::to_string(b) + "]",
      [prof, l, b](const auto& x, const auto& y) {
        using S = std::decay_t<decltype(x[0])>;
        const S f = prof.f(x[0]);
        const S df = prof.df(x[0]);
        const S c = cos(x[1]);
        const S s = sin(x[1]);
        const S u0 = df * c * y[0] - f * s * y[1];
        const S u1 = df * s * y[0] + f * c * y[1];
        const S& u2 = y[0];
        return (sq(u0) + sq(u1) + sq(u2)) / (b * (l[0] * u0 + l[1] * u1 + l[2] * u2));
      },
      [prof, den](const Vec2<double>& x, const Vec2<double>& y) {
        return prof.interval().contains(x[0]) && den(x, y) > 0.0;
      });
  return m.with_density(VolumeDensity([prof, b, theta, rotational](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    const S f = prof.f(x[0]);
    const S df = prof.df(x[0]);
    const S c2 = sq(f) * (1.0 + sq(df));
    const S E = rotational ? (b * b) * sq(f) * (sq(df) + sq(sin(x[1] - theta))) : (b * b) * sq(f);
    return 2.0 * (c2 * sqrt(c2)) / E;
  }));
}

ZJet volume_functional(const Mat32& z, const OneFormSpec& beta) {
  ZMat<ZJet> zj;
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e) zj[i][e] = ZJet::variable(z[i][e], zvar(i, e));
  return volume_functional_eval(beta, zj);
}

MeanCurvature mean_curvature(const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x,
                             const Vec3<double>& v) {
  ImmersionJet j = im.jet(x);
  j.v = v;
  const ZJet vf = volume_functional(j.z, beta);
  MeanCurvature out;
  out.volume = vf.value();
  if (!(out.volume > 0.0)) throw DegenerateError("mean curvature: volume functional is not positive");
  out.hessian_term = contract_hess(j, [&](int i, int e, int k, int g) { return vf.hess(zvar(i, e), zvar(k, g)); });

  // Ambient terms: jets over (x~1, x~2, x~3, z^i_e), one pass per z variable.
  using J = Jet2<double, 4>;
  Vec3<double> grad_x{};
  for (int i = 0; i < 3; ++i) {
    for (int e = 0; e < 2; ++e) {
      const Vec3<J> xt{J::variable(j.phi[0], 0), J::variable(j.phi[1], 1), J::variable(j.phi[2], 2)};
      ZMat<J> zj;
      for (int k = 0; k < 3; ++k)
        for (int g = 0; g < 2; ++g) zj[k][g] = J(j.z[k][g]);
      zj[i][e] = J::variable(j.z[i][e], 3);
      const J a = ambient_volume_functional(beta, xt, zj);
      for (int k = 0; k < 3; ++k) out.mixed_term += a.hess(3, k) * j.z[k][e] * v[i];
      if (i == 0 && e == 0) grad_x = {a.grad(0), a.grad(1), a.grad(2)};
    }
  }
  out.point_term = grad_x[0] * v[0] + grad_x[1] * v[1] + grad_x[2] * v[2];
  out.H = (out.hessian_term + out.mixed_term - out.point_term) / out.volume;
  return out;
}

MeanCurvature mean_curvature(const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x) {
  return mean_curvature(im, beta, x, im.jet(x).v);
}

// ---------------------------------------------------------------------------

Mat32 c_first_partials(const Mat32& z) {
  const double C = c_of(z);
  Mat32 d{};
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e) {
      double s = 0.0;
      for (int l = 0; l < 3; ++l) {
        if (l == i) continue;
        s += (z[i][0] * z[l][1] - z[i][1] * z[l][0]) * (e == 0 ? z[l][1] : -z[l][0]);
      }
      d[i][e] = s / C;
    }
  return d;
}

ZHess half_c2_second_partials(const Mat32& z) {
  ZHess h{};
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e)
      for (int j = 0; j < 3; ++j)
        for (int n = 0; n < 2; ++n) {
          double s = 0.0;
          for (int l = 0; l < 3; ++l) {
            if (l == i) continue;
            const double de = e == 0 ? z[l][1] : -z[l][0];
            const double a = delta(i, j) * (n == 0 ? z[l][1] : -z[l][0]) +
                             delta(l, j) * (n == 1 ? z[i][0] : -z[i][1]);
            const double flip = (e == 0 && n == 1) ? 1.0 : (e == 1 && n == 0) ? -1.0 : 0.0;
            s += a * de + (z[i][0] * z[l][1] - z[i][1] * z[l][0]) * delta(j, l) * flip;
          }
          h[i][e][j][n] = s;
        }
  return h;
}

Mat32 e_first_partials(const Mat32& z, const OneFormSpec& beta) {
  const Vec3<double>& l = beta.direction();
  const Vec2<double> w = lz(z, l);
  const double b2 = beta.b() * beta.b();
  Mat32 d{};
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e) {
      double first = 0.0, second = 0.0;
      for (int t = 0; t < 2; ++t) {
        first += w[tl(e)] * sgn(tl(e), t) * z[i][tl(t)] * w[t];
        for (int k = 0; k < 3; ++k) second += sgn(e, t) * w[t] * z[k][tl(t)] * z[k][tl(e)];
      }
      d[i][e] = 2.0 * b2 * (first + l[i] * second);
    }
  return d;
}

ZHess e_second_partials(const Mat32& z, const OneFormSpec& beta, PrintedForm form) {
  const Vec3<double>& l = beta.direction();
  const Vec2<double> w = lz(z, l);
  const double b2 = beta.b() * beta.b();
  ZHess h{};
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e)
      for (int j = 0; j < 3; ++j)
        for (int n = 0; n < 2; ++n) {
          const int et = tl(e), nt = tl(n);
          double s1 = 0.0, s3 = 0.0, kk = 0.0;
          for (int t = 0; t < 2; ++t) {
            s1 += sgn(et, t) * z[i][tl(t)] * w[t];
            s3 += sgn(e, t) * w[t] * z[j][tl(t)];
          }
          const int kn = form == PrintedForm::kCorrected ? nt : n;
          for (int k = 0; k < 3; ++k) kk += z[k][kn] * z[k][et];
          double v = l[j] * delta(n, et) * s1;
          v += w[et] * (sgn(et, nt) * delta(i, j) * w[nt] + sgn(et, n) * l[j] * z[i][nt]);
          v += l[i] * (sgn(e, n) * l[j] * kk + sgn(e, nt) * w[nt] * z[j][et] + delta(n, et) * s3);
          h[i][e][j][n] = 2.0 * b2 * v;
        }
  return h;
}

ZHess volume_hessian_closed(const Mat32& z, const OneFormSpec& beta) {
  const double C = c_of(z);
  const double E = e_of(z, beta);
  const Mat32 Cz = c_first_partials(z);
  const Mat32 Ez = e_first_partials(z, beta);
  const ZHess C2 = half_c2_second_partials(z);
  const ZHess Ezz = e_second_partials(z, beta);
  const double C2v = C * C, C3 = C2v * C, E2 = E * E, E3 = E2 * E;
  ZHess h{};
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e)
      for (int j = 0; j < 3; ++j)
        for (int n = 0; n < 2; ++n) {
          h[i][e][j][n] = 4.0 * C3 / E3 * Ez[i][e] * Ez[j][n] -
                          6.0 * C2v / E2 * (Cz[j][n] * Ez[i][e] + Ez[j][n] * Cz[i][e]) -
                          2.0 * C3 / E2 * Ezz[i][e][j][n] + 6.0 * C / E * Cz[j][n] * Cz[i][e] +
                          3.0 * C / E * 2.0 * C2[i][e][j][n];
        }
  return h;
}

ContractedPartials contracted_partials_closed(const RevolutionImmersion& im, const OneFormSpec& beta,
                                              const Vec2<double>& x, PrintedForm form) {
  const ProfileValues p = im.profile().at(x[0]);
  const double f = p.f, df = p.df, ff2 = p.f * p.d2f;
  const double b2 = beta.b() * beta.b();
  ContractedPartials c;
  c.Cz_v = {0.0, 0.0};
  c.Cz_phixx = {df / std::sqrt(1.0 + df * df) * (ff2 + 1.0 + df * df), 0.0};
  c.half_C2zz_phixx_v = f * (-ff2 + 1.0 + df * df);
  if (beta.rotational()) {
    const double psi = psi_of(beta, x[1]);
    const double cs = std::cos(psi), sn = std::sin(psi);
    const double sin_term = form == PrintedForm::kAsPrinted && beta.variant() == OneFormVariant::kTilted ? sn : sn * sn;
    c.Ez_v = {2.0 * b2 * f * cs * (-f * df * cs), 2.0 * b2 * f * cs * (1.0 + df * df) * sn};
    c.Ez_phixx = {2.0 * b2 * f * df * (ff2 + df * df + sin_term), 2.0 * b2 * f * f * sn * cs};
    c.Ezz_phixx_v = -2.0 * b2 * f * (ff2 - cs * cs);
  } else {
    c.Ez_v = {2.0 * b2 * f * f * df, 0.0};
    c.Ez_phixx = {2.0 * b2 * f * df, 0.0};
    c.Ezz_phixx_v = 2.0 * b2 * f * (1.0 + 2.0 * df * df);
  }
  return c;
}

ContractedPartials contracted_partials_jet(const RevolutionImmersion& im, const OneFormSpec& beta,
                                           const Vec2<double>& x) {
  const ImmersionJet j = im.jet(x);
  ZMat<ZJet> zj;
  for (int i = 0; i < 3; ++i)
    for (int e = 0; e < 2; ++e) zj[i][e] = ZJet::variable(j.z[i][e], zvar(i, e));
  const ZJet c2 = det_A(zj);
  const ZJet C = sqrt(c2);
  const ZJet E = e_index_sum(beta, zj);
  ContractedPartials c;
  for (int e = 0; e < 2; ++e) {
    for (int i = 0; i < 3; ++i) {
      c.Cz_v[e] += C.grad(zvar(i, e)) * j.v[i];
      c.Ez_v[e] += E.grad(zvar(i, e)) * j.v[i];
      for (int n = 0; n < 2; ++n) {
        c.Cz_phixx[e] += C.grad(zvar(i, n)) * j.phi_xx[i][e][n];
        c.Ez_phixx[e] += E.grad(zvar(i, n)) * j.phi_xx[i][e][n];
      }
    }
  }
  c.half_C2zz_phixx_v = 0.5 * contract_hess(j, [&](int i, int e, int k, int g) { return c2.hess(zvar(i, e), zvar(k, g)); });
  c.Ezz_phixx_v = contract_hess(j, [&](int i, int e, int k, int g) { return E.hess(zvar(i, e), zvar(k, g)); });
  return c;
}

double minimality_residual_bracket(const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x) {
  const ImmersionJet j = im.jet(x);
  const double C = c_of(j.z);
  const double E = e_of(j.z, beta);
  const Mat32 Cz = c_first_partials(j.z);
  const Mat32 Ez = e_first_partials(j.z, beta);
  const ZHess C2 = half_c2_second_partials(j.z);
  const ZHess Ezz = e_second_partials(j.z, beta);
  return contract_hess(j, [&](int i, int e, int k, int g) {
    return -2.0 * C * C * E * Ezz[i][e][k][g] + 4.0 * C * C * Ez[i][e] * Ez[k][g] -
           6.0 * C * E * (Cz[i][e] * Ez[k][g] + Ez[i][e] * Cz[k][g]) - 6.0 * C * E * E * Cz[i][e] * Cz[k][g] +
           3.0 * E * E * 2.0 * C2[i][e][k][g];
  });
}

double bracket_from_contracted(const ContractedPartials& p, double C, double E) {
  double ee = 0.0, ce = 0.0, cc = 0.0;
  for (int e = 0; e < 2; ++e) {
    ee += p.Ez_v[e] * p.Ez_phixx[e];
    ce += p.Cz_v[e] * p.Ez_phixx[e] + p.Ez_v[e] * p.Cz_phixx[e];
    cc += p.Cz_v[e] * p.Cz_phixx[e];
  }
  return -2.0 * C * C * E * p.Ezz_phixx_v + 4.0 * C * C * ee - 6.0 * C * E * ce - 6.0 * C * E * E * cc +
         3.0 * E * E * 2.0 * p.half_C2zz_phixx_v;
}

// ---------------------------------------------------------------------------

Cos2Polynomial extract_cos2_polynomial(const RevolutionImmersion& im, const OneFormSpec& beta, double x1) {
  if (!beta.rotational()) throw ConfigError("cos^2 structure applies to the x1 and tilted 1-forms only");
  constexpr int kNodes = 12;
  const double pi = std::numbers::pi;
  std::array<double, kNodes> c{}, r{};
  double scale = 0.0;
  for (int k = 0; k < kNodes; ++k) {
    const double psi = 0.5 * pi * (1.0 + std::cos((2 * k + 1) * pi / (2.0 * kNodes)));
    const double cs = std::cos(psi);
    c[k] = cs * cs;
    r[k] = minimality_residual_bracket(im, beta, {x1, beta.theta() + psi});
    scale = std::max(scale, std::abs(r[k]));
  }
  // Normal equations for r ~ k4 c^2 + k2 c + k0, solved by Gaussian elimination.
  double M[3][4] = {};
  for (int k = 0; k < kNodes; ++k) {
    const double basis[3] = {c[k] * c[k], c[k], 1.0};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) M[a][b] += basis[a] * basis[b];
      M[a][3] += basis[a] * r[k];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(M[row][col]) > std::abs(M[piv][col])) piv = row;
    std::swap(M[col], M[piv]);
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      const double factor = M[row][col] / M[col][col];
      for (int k = col; k < 4; ++k) M[row][k] -= factor * M[col][k];
    }
  }
  Cos2Polynomial out;
  out.samples = kNodes;
  for (int a = 0; a < 3; ++a) out.raw[a] = M[a][3] / M[a][a];
  double worst = 0.0;
  for (int k = 0; k < kNodes; ++k) {
    const double fit = out.raw[0] * c[k] * c[k] + out.raw[1] * c[k] + out.raw[2];
    worst = std::max(worst, std::abs(fit - r[k]));
  }
  out.fit_residual = scale > 0.0 ? worst / scale : 0.0;
  if (out.fit_residual > 1e-9) {
    throw StructureError("bracket is not a quadratic in cos^2(psi) at x1 = " + std::to_string(x1) +
                         " (relative fit residual " + std::to_string(out.fit_residual) + ")");
  }
  const double f = im.profile().at(x1).f;
  const double b = beta.b();
  const double norm = 2.0 * std::pow(b, 4) * std::pow(f, 5);
  for (int a = 0; a < 3; ++a) out.normalized[a] = out.raw[a] / norm;
  return out;
}

std::array<double, 3> cos2_coefficients_closed(const ProfileValues& p, int power) {
  const double d2 = p.df * p.df;
  const double ff2 = p.f * p.d2f;
  const double k = ff2 + d2 + 1.0;
  return {-3.0 * (1.0 + 2.0 * d2) * k, 2.0 * (1.0 + d2) * (2.0 * ff2 - d2 * k),
          std::pow(1.0 + d2, power) * (-ff2 + 3.0 * d2 + 3.0)};
}

// ---------------------------------------------------------------------------

double profile_ode_residual(const ProfileValues& v) {
  return (1.0 + 2.0 * v.df * v.df) * (v.df * v.df + 3.0 * v.f * v.d2f) - 1.0;
}

double profile_ode_residual(const ProfileFunction& p, double x1) { return profile_ode_residual(p.at(x1)); }

namespace {

double ode_rhs(double f, double df) {
  if (!(f > 0.0)) throw DomainError("profile ODE", f, "f must stay positive");
  return (1.0 / (1.0 + 2.0 * df * df) - df * df) / (3.0 * f);
}

ProfileOdeSolution integrate_profile(double x0, double f0, double df0, double x_end, double h, double f_min) {
  ProfileOdeSolution s;
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(x_end - x0) / h - 1e-9)));
  const double step = (x_end - x0) / n;
  double f = f0, df = df0;
  s.x.push_back(x0);
  s.f.push_back(f);
  s.df.push_back(df);
  for (int k = 0; k < n; ++k) {
    const double k1f = df, k1d = ode_rhs(f, df);
    const double f2 = f + 0.5 * step * k1f, d2 = df + 0.5 * step * k1d;
    if (!(f2 > f_min)) break;
    const double k2f = d2, k2d = ode_rhs(f2, d2);
    const double f3 = f + 0.5 * step * k2f, d3 = df + 0.5 * step * k2d;
    if (!(f3 > f_min)) break;
    const double k3f = d3, k3d = ode_rhs(f3, d3);
    const double f4 = f + step * k3f, d4 = df + step * k3d;
    if (!(f4 > f_min)) break;
    const double k4f = d4, k4d = ode_rhs(f4, d4);
    const double fn = f + step / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    const double dn = df + step / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    if (!(fn > f_min)) break;
    f = fn;
    df = dn;
    s.x.push_back(x0 + (k + 1) * step);
    s.f.push_back(f);
    s.df.push_back(df);
  }
  s.hit_vertex = static_cast<int>(s.x.size()) < n + 1;
  s.x_stop = s.x.back();
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    const ProfileValues v{s.f[k], s.df[k], ode_rhs(s.f[k], s.df[k])};
    s.max_ode_residual = std::max(s.max_ode_residual, std::abs(profile_ode_residual(v)));
  }
  return s;
}

}  // namespace

ProfileOdeSolution solve_profile_ode(double x0, double f0, double df0, double x_end, double h, double f_min) {
  if (!(f0 > 0.0)) throw DomainError("solve_profile_ode", f0, "initial f must be positive");
  if (!(h > 0.0)) throw ConfigError("solve_profile_ode: step must be positive");
  ProfileOdeSolution coarse = integrate_profile(x0, f0, df0, x_end, h, f_min);
  const ProfileOdeSolution fine = integrate_profile(x0, f0, df0, x_end, 0.5 * h, f_min);
  for (std::size_t k = 0; k < coarse.x.size() && 2 * k < fine.x.size(); ++k) {
    coarse.richardson_delta = std::max(coarse.richardson_delta, std::abs(coarse.f[k] - fine.f[2 * k]));
  }
  return coarse;
}

// ---------------------------------------------------------------------------

double linear_profile_residual(double slope, const OneFormSpec& beta, ResidualPipeline pipeline,
                               const Vec2<double>& probe) {
  const RevolutionImmersion im(ProfileFunction::linear(slope, 0.0));
  return pipeline == ResidualPipeline::kMeanCurvature ? mean_curvature(im, beta, probe).H
                                                      : minimality_residual_bracket(im, beta, probe);
}

double bisect_minimal_slope(const OneFormSpec& beta, ResidualPipeline pipeline, double lo, double hi, double tol,
                            const Vec2<double>& probe) {
  double rlo = linear_profile_residual(lo, beta, pipeline, probe);
  const double rhi = linear_profile_residual(hi, beta, pipeline, probe);
  if (rlo == 0.0) return lo;
  if (rhi == 0.0) return hi;
  if ((rlo > 0.0) == (rhi > 0.0)) {
    throw DegenerateError("no sign change of the minimality residual for slopes in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double r = linear_profile_residual(mid, beta, pipeline, probe);
    if (r == 0.0) return mid;
    if ((r > 0.0) == (rlo > 0.0)) {
      lo = mid;
      rlo = r;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

MinimalityReport minimality_report(const RevolutionImmersion& im, const OneFormSpec& beta,
                                   const std::vector<Vec2<double>>& points) {
  MinimalityReport rep;
  rep.variant = beta.label();
  rep.profile = im.profile().spec();
  std::set<double> x1s;
  for (const Vec2<double>& x : points) {
    MinimalitySample s;
    s.x = x;
    s.H = mean_curvature(im, beta, x).H;
    s.bracket = minimality_residual_bracket(im, beta, x);
    const PullbackData d = compute_CE(im, beta, x);
    s.expected_ratio = 2.0 * d.C * d.C * d.E * d.E;
    s.observed_ratio = s.H != 0.0 ? s.bracket / s.H : std::numeric_limits<double>::quiet_NaN();
    rep.max_abs_H = std::max(rep.max_abs_H, std::abs(s.H));
    rep.max_abs_bracket = std::max(rep.max_abs_bracket, std::abs(s.bracket));
    if (std::abs(s.H) > 1e-6) {
      rep.max_ratio_error = std::max(rep.max_ratio_error, std::abs(s.observed_ratio / s.expected_ratio - 1.0));
    }
    const bool h0 = std::abs(s.H) < 1e-9, b0 = std::abs(s.bracket) < 1e-9;
    const bool h1 = std::abs(s.H) > 1e-6, b1 = std::abs(s.bracket) > 1e-6;
    if ((h0 && b1) || (b0 && h1)) rep.zero_sets_agree = false;
    rep.samples.push_back(s);
    x1s.insert(x[0]);
  }
  if (beta.rotational()) {
    for (double x1 : x1s) rep.cos2.emplace_back(x1, extract_cos2_polynomial(im, beta, x1));
  }
  rep.minimal = !points.empty() && rep.max_abs_H < 1e-9 && rep.max_abs_bracket < 1e-9;
  return rep;
}

}  // namespace kropina
