#include "kropina/finsler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kropina/errors.hpp"
#include "kropina/quadrature.hpp"

namespace kropina {

namespace {

void require_inside(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y, DomainPolicy policy) {
  if (policy == DomainPolicy::kConic && !m.inside(x, y)) {
    throw DomainError(m.name(), y[0], "(x, y) outside the conic domain");
  }
}

template <class J, class S>
Vec2<J> seed_pair(const Vec2<S>& v, int first) {
  return {J::variable(v[0], first), J::variable(v[1], first + 1)};
}

// Spray coefficients with scalar type S; F^2 is differentiated with Jet2<S, 4>,
// so S = Dual yields G together with its first and second derivatives.
template <class S>
Vec2<S> spray_impl(const MetricField& m, const Vec2<S>& x, const Vec2<S>& y) {
  using J = Jet2<S, kBundleVars>;
  const J F = m.eval<J>(seed_pair<J>(x, 0), seed_pair<J>(y, 2));
  const J L = F * F;
  const S g11 = 0.5 * L.hess(2, 2);
  const S g12 = 0.5 * L.hess(2, 3);
  const S g22 = 0.5 * L.hess(3, 3);
  const S det = g11 * g22 - g12 * g12;
  if (scalar_value(det) == 0.0) throw SingularError(m.name() + ": fundamental tensor is singular");
  const S inv = recip(det);
  const S i11 = g22 * inv;
  const S i12 = -(g12 * inv);
  const S i22 = g11 * inv;
  Vec2<S> w;
  for (int l = 0; l < 2; ++l) w[l] = L.hess(0, 2 + l) * y[0] + L.hess(1, 2 + l) * y[1] - L.g[l];
  return {0.25 * (i11 * w[0] + i12 * w[1]), 0.25 * (i12 * w[0] + i22 * w[1])};
}

Mat2 invert(const Mat2& g, double det) {
  return {{{g[1][1] / det, -g[0][1] / det}, {-g[1][0] / det, g[0][0] / det}}};
}

double inner(const Mat2& g, const Vec2<double>& a, const Vec2<double>& b) {
  return g[0][0] * a[0] * b[0] + g[0][1] * (a[0] * b[1] + a[1] * b[0]) + g[1][1] * a[1] * b[1];
}

}  // namespace

Vec2<double> symmetric_eigenvalues(const Mat2& a) {
  const double mean = 0.5 * (a[0][0] + a[1][1]);
  const double half = 0.5 * (a[0][0] - a[1][1]);
  const double r = std::hypot(half, a[0][1]);
  return {mean - r, mean + r};
}

FundamentalTensor fundamental_tensor(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                                     DomainPolicy policy) {
  require_inside(m, x, y, policy);
  const Dual F = m.eval<Dual>(seed_pair<Dual>(x, 0), seed_pair<Dual>(y, 2));
  const Dual L = F * F;
  FundamentalTensor t;
  t.g = {{{0.5 * L.hess(2, 2), 0.5 * L.hess(2, 3)}, {0.5 * L.hess(2, 3), 0.5 * L.hess(3, 3)}}};
  const Vec2<double> eig = symmetric_eigenvalues(t.g);
  if (!(eig[0] > 0.0) || !std::isfinite(eig[1])) {
    throw DefinitenessError(m.name() + ": fundamental tensor is not positive definite", {eig[0], eig[1]});
  }
  t.det_g = t.g[0][0] * t.g[1][1] - t.g[0][1] * t.g[0][1];
  t.g_inv = invert(t.g, t.det_g);
  return t;
}

SprayCoeffs spray(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y, DomainPolicy policy) {
  require_inside(m, x, y, policy);
  return {spray_impl<double>(m, x, y)};
}

SprayJacobian spray_jacobian(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                             DomainPolicy policy) {
  require_inside(m, x, y, policy);
  const Dual3 F = m.eval<Dual3>(seed_pair<Dual3>(x, 0), seed_pair<Dual3>(y, 2));
  const Dual3 L = F * F;

  Mat2 g{};
  std::array<Mat2, 4> dg{};  // dg[v][a][b] = d g_ab / d var_v
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      g[a][b] = 0.5 * L.hess(2 + a, 2 + b);
      for (int v = 0; v < 4; ++v) dg[v][a][b] = 0.5 * L.third(2 + a, 2 + b, v);
    }
  }
  const double det = g[0][0] * g[1][1] - g[0][1] * g[0][1];
  if (det == 0.0) throw SingularError(m.name() + ": fundamental tensor is singular");
  const Mat2 gi = invert(g, det);

  Vec2<double> w{};
  std::array<Vec2<double>, 4> dw{};  // dw[v][l]
  for (int l = 0; l < 2; ++l) {
    w[l] = L.hess(0, 2 + l) * y[0] + L.hess(1, 2 + l) * y[1] - L.grad(l);
    for (int v = 0; v < 4; ++v) {
      double s = L.third(0, 2 + l, v) * y[0] + L.third(1, 2 + l, v) * y[1] - L.hess(l, v);
      if (v >= 2) s += L.hess(v - 2, 2 + l);
      dw[v][l] = s;
    }
  }

  SprayJacobian out;
  for (int i = 0; i < 2; ++i) {
    out.G[i] = 0.25 * (gi[i][0] * w[0] + gi[i][1] * w[1]);
    for (int v = 0; v < 4; ++v) {
      // d g^{-1} = -g^{-1} (dg) g^{-1}
      double d = 0.0;
      for (int l = 0; l < 2; ++l) {
        double dgi = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) dgi -= gi[i][a] * dg[v][a][b] * gi[b][l];
        d += dgi * w[l] + gi[i][l] * dw[v][l];
      }
      (v < 2 ? out.dx[i][v] : out.dy[i][v - 2]) = 0.25 * d;
    }
  }
  return out;
}

RiemannCurvature riemann(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y, DomainPolicy policy) {
  require_inside(m, x, y, policy);
  const Vec2<Dual> G = spray_impl<Dual>(m, seed_pair<Dual>(x, 0), seed_pair<Dual>(y, 2));
  RiemannCurvature out;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      double r = 2.0 * G[i].grad(k);
      for (int j = 0; j < 2; ++j) {
        r -= y[j] * G[i].hess(j, 2 + k);
        r += 2.0 * G[j].value() * G[i].hess(2 + j, 2 + k);
        r -= G[i].grad(2 + j) * G[j].grad(2 + k);
      }
      out.R[i][k] = r;
    }
  }
  return out;
}

double flag_curvature(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y, const Vec2<double>& u,
                      DomainPolicy policy) {
  const FundamentalTensor t = fundamental_tensor(m, x, y, policy);
  const double yy = inner(t.g, y, y);
  const double uu = inner(t.g, u, u);
  const double yu = inner(t.g, y, u);
  const double area = yy * uu - yu * yu;
  if (!(area > 1e-14 * yy * uu)) throw DegenerateError("flag_curvature: pole y and transverse u are parallel");
  const Mat2 R = riemann(m, x, y, policy).R;
  const Vec2<double> Ru{R[0][0] * u[0] + R[0][1] * u[1], R[1][0] * u[0] + R[1][1] * u[1]};
  return inner(t.g, Ru, u) / area;
}

double flag_curvature(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y, DomainPolicy policy) {
  const FundamentalTensor t = fundamental_tensor(m, x, y, policy);
  // Gram-Schmidt of e1 or e2 (whichever is less aligned with y) against y.
  const Vec2<double> gy{t.g[0][0] * y[0] + t.g[0][1] * y[1], t.g[1][0] * y[0] + t.g[1][1] * y[1]};
  const double yy = gy[0] * y[0] + gy[1] * y[1];
  const Vec2<double> e = std::abs(gy[0]) <= std::abs(gy[1]) ? Vec2<double>{1.0, 0.0} : Vec2<double>{0.0, 1.0};
  const double c = (gy[0] * e[0] + gy[1] * e[1]) / yy;
  const Vec2<double> u{e[0] - c * y[0], e[1] - c * y[1]};
  return flag_curvature(m, x, y, u, policy);
}

ReconstructionResidual riemann_reconstruction_check(const MetricField& m, const Vec2<double>& x,
                                                    const Vec2<double>& y, DomainPolicy policy) {
  require_inside(m, x, y, policy);
  const Mat2 R = riemann(m, x, y, policy).R;
  const double K = flag_curvature(m, x, y, policy);
  const Dual F = m.eval<Dual>(seed_pair<Dual>(x, 0), seed_pair<Dual>(y, 2));
  const double f = F.value();
  ReconstructionResidual out;
  out.flag_curvature = K;
  double scale = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double rebuilt = K * (f * f * (i == j ? 1.0 : 0.0) - f * F.grad(2 + j) * y[i]);
      out.absolute = std::max(out.absolute, std::abs(R[i][j] - rebuilt));
      scale = std::max({scale, std::abs(R[i][j]), std::abs(rebuilt)});
    }
  }
  const double floor = 1e-14 * f * f;
  out.relative = out.absolute <= floor ? 0.0 : out.absolute / std::max(scale, floor);
  return out;
}

double distortion(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y, DomainPolicy policy) {
  if (!m.has_density()) throw ConfigError(m.name() + ": distortion needs a volume density");
  const FundamentalTensor t = fundamental_tensor(m, x, y, policy);
  const double sigma = m.density<double>(x);
  if (!(sigma > 0.0)) throw DomainError("volume density", sigma, "sigma_F must be positive");
  return std::log(std::sqrt(t.det_g) / sigma);
}

double s_curvature(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y, DomainPolicy policy) {
  if (!m.has_density()) throw ConfigError(m.name() + ": S-curvature needs a volume density");
  const SprayJacobian jac = spray_jacobian(m, x, y, policy);
  const Dual sigma = m.density<Dual>(seed_pair<Dual>(x, 0));
  if (!(sigma.value() > 0.0)) throw DomainError("volume density", sigma.value(), "sigma_F must be positive");
  const double trace = jac.dy[0][0] + jac.dy[1][1];
  const double transport = (y[0] * sigma.grad(0) + y[1] * sigma.grad(1)) / sigma.value();
  return trace - transport;
}

CurvatureReport curvature_report(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                                 DomainPolicy policy) {
  CurvatureReport r;
  r.x = x;
  r.y = y;
  require_inside(m, x, y, policy);
  r.F = m(x, y);
  r.g = fundamental_tensor(m, x, y, policy).g;
  r.G = spray(m, x, y, policy).G;
  r.R = riemann(m, x, y, policy).R;
  r.K = flag_curvature(m, x, y, policy);
  r.S = s_curvature(m, x, y, policy);
  r.tau = distortion(m, x, y, policy);
  return r;
}

double bh_volume_coefficient(const std::function<double(double)>& phi, int n, double b_norm) {
  if (n < 2) throw DimensionError("bh_volume_coefficient: n must be at least 2");
  const auto weight = [n](double t) { return n == 2 ? 1.0 : std::pow(std::sin(t), n - 2); };
  const double pi = std::numbers::pi;
  const QuadratureResult num = adaptive_simpson(weight, 0.0, pi);
  const auto integrand = [&](double t) { return weight(t) / std::pow(phi(b_norm * std::cos(t)), n); };
  const QuadratureResult den = adaptive_simpson(integrand, 0.0, pi);
  const QuadratureResult mag = adaptive_simpson([&](double t) { return std::abs(integrand(t)); }, 0.0, pi);
  if (!std::isfinite(den.value) || !std::isfinite(mag.value) || den.value <= 1e-10 * mag.value) {
    throw DegenerateError("bh_volume_coefficient: denominator integral " + std::to_string(den.value) +
                          " is not positive (n = " + std::to_string(n) + ")");
  }
  return num.value / den.value;
}

double kropina_bh_coefficient(double beta_norm_sq) {
  if (!(beta_norm_sq > 0.0)) throw DomainError("kropina_bh_coefficient", beta_norm_sq, "requires |beta|^2 > 0");
  return 2.0 / beta_norm_sq;
}

}  // namespace kropina
