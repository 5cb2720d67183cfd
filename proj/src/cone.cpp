#include "kropina/cone.hpp"

#include <cmath>
#include <string>

#include "kropina/errors.hpp"

namespace kropina {

ConeMetric::ConeMetric(double p, double q, double b) : p_(p), q_(q), b_(b) {
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("ConeMetric", p > 0.0 ? q : p, "p and q must be positive");
  if (b == 0.0 || !std::isfinite(b)) throw DomainError("ConeMetric", b, "b must be nonzero");
}

ConeMetric ConeMetric::from_slope(double slope, double b) {
  if (!(slope > 0.0)) throw DomainError("ConeMetric::from_slope", slope, "slope must be positive");
  return ConeMetric(1.0 + slope * slope, slope * slope, b);
}

MetricField ConeMetric::metric() const {
  const double p = p_, q = q_, b = b_;
  const double bh = 2.0 * p * std::sqrt(p * q) / (b * b);
  MetricField m(
      "cone(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ",b=" + std::to_string(b) + ")",
      [p, q, b](const auto& x, const auto& y) { return (p * sq(y[0]) + q * sq(x[0]) * sq(y[1])) / (b * y[0]); },
      [b](const Vec2<double>&, const Vec2<double>& y) { return b * y[0] > 0.0; });
  const ConeMetric self = *this;
  return m.with_density(VolumeDensity([bh](const auto& x) { return bh * x[0]; }))
      .with_spray_extension([self](const Vec2<double>& x, const Vec2<double>& y) { return self.spray(x, y); },
                            [self](const Vec2<double>& x, const Vec2<double>& y) { return self.D(x, y); });
}

double ConeMetric::D(const Vec2<double>& x, const Vec2<double>& y) const {
  return p_ * y[0] * y[0] + q_ * x[0] * x[0] * y[1] * y[1];
}

double ConeMetric::F(const Vec2<double>& x, const Vec2<double>& y) const {
  if (!(b_ * y[0] > 0.0)) throw DomainError("cone metric", y[0], "requires b y1 > 0");
  return D(x, y) / (b_ * y[0]);
}

Mat2 ConeMetric::g(const Vec2<double>& x, const Vec2<double>& y) const {
  const double y1 = y[0], y2 = y[1];
  const double k = q_ * x[0] * x[0];  // q (x1)^2
  const double b2 = b_ * b_;
  const double g11 = (p_ * p_ * std::pow(y1, 4) + 3.0 * k * k * std::pow(y2, 4)) / (b2 * std::pow(y1, 4));
  const double g12 = -4.0 * k * k * std::pow(y2, 3) / (b2 * std::pow(y1, 3));
  const double g22 = 2.0 * k * (p_ * y1 * y1 + 3.0 * k * y2 * y2) / (b2 * y1 * y1);
  return {{{g11, g12}, {g12, g22}}};
}

Mat2 ConeMetric::g_inv(const Vec2<double>& x, const Vec2<double>& y) const {
  const double y1 = y[0], y2 = y[1];
  const double k = q_ * x[0] * x[0];
  const double d3 = std::pow(D(x, y), 3);
  const double b2 = b_ * b_;
  const double i11 = b2 * std::pow(y1, 4) * (p_ * y1 * y1 + 3.0 * k * y2 * y2) / d3;
  const double i12 = 2.0 * b2 * k * std::pow(y1, 3) * std::pow(y2, 3) / d3;
  const double i22 = b2 * y1 * y1 * (p_ * p_ * std::pow(y1, 4) + 3.0 * k * k * std::pow(y2, 4)) / (2.0 * k * d3);
  return {{{i11, i12}, {i12, i22}}};
}

double ConeMetric::det_g(const Vec2<double>& x, const Vec2<double>& y) const {
  const double k = q_ * x[0] * x[0];
  return 2.0 * k * std::pow(D(x, y), 3) / (std::pow(b_, 4) * std::pow(y[0], 6));
}

Vec2<double> ConeMetric::spray(const Vec2<double>& x, const Vec2<double>& y) const {
  const double d = D(x, y);
  if (d == 0.0) throw SingularError("cone spray: y = 0");
  const double x1 = x[0], y1 = y[0], y2 = y[1];
  return {-q_ * x1 * y1 * y1 * y2 * y2 / d, p_ * y1 * y1 * y1 * y2 / (x1 * d)};
}

Mat2 ConeMetric::riemann(const Vec2<double>& x, const Vec2<double>& y) const {
  const double x1 = x[0], y1 = y[0], y2 = y[1];
  const double d3 = std::pow(D(x, y), 3);
  const double pq = p_ * q_;
  const double t = q_ * x1 * x1 * y2 * y2 - p_ * y1 * y1;
  const double r11 = -6.0 * pq * q_ * x1 * x1 * std::pow(y1, 4) * std::pow(y2, 4) / d3;
  const double r12 = 6.0 * pq * q_ * x1 * x1 * std::pow(y1, 5) * std::pow(y2, 3) / d3;
  const double r21 = -3.0 * pq * std::pow(y1, 3) * std::pow(y2, 3) * t / d3;
  const double r22 = 3.0 * pq * std::pow(y1, 4) * y2 * y2 * t / d3;
  return {{{r11, r12}, {r21, r22}}};
}

double ConeMetric::flag_curvature(const Vec2<double>& x, const Vec2<double>& y) const {
  return -3.0 * b_ * b_ * p_ * q_ * std::pow(y[0], 6) * y[1] * y[1] / std::pow(D(x, y), 4);
}

double ConeMetric::s_curvature(const Vec2<double>& x, const Vec2<double>& y) const {
  return -3.0 * q_ * x[0] * y[0] * y[1] * y[1] / D(x, y);
}

double ConeMetric::bh_density(const Vec2<double>& x) const {
  return 2.0 * p_ * std::sqrt(p_ * q_) * x[0] / (b_ * b_);
}

MetricField cone_riemannian_metric(double a11, double c) {
  if (!(a11 > 0.0) || !(c > 0.0)) throw DomainError("cone_riemannian_metric", a11, "coefficients must be positive");
  MetricField m("riemannian-cone",
                [a11, c](const auto& x, const auto& y) { return sqrt(a11 * sq(y[0]) + c * sq(x[0]) * sq(y[1])); });
  return m.with_density(VolumeDensity([a11, c](const auto& x) { return std::sqrt(a11 * c) * x[0]; }));
}

}  // namespace kropina
