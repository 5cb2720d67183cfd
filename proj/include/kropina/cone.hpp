#pragma once

// Kropina metrics induced on a cone of revolution by the vertical 1-form:
//
//   F(x, y) = (p (y1)^2 + q (x1)^2 (y2)^2) / (b y1),   D = p (y1)^2 + q (x1)^2 (y2)^2,
//
// defined for y1 > 0. The profile f = s x1 + c gives p = 1 + s^2, q = s^2.
// p = 2, q = 1 (slope 1) is the classical closed-form example; p = 3/2,
// q = 1/2 (slope 1/sqrt 2) is the minimal cone. Everything below is exact.

#include "kropina/finsler.hpp"

namespace kropina {

class ConeMetric {
 public:
  ConeMetric(double p, double q, double b);

  static ConeMetric unit_slope(double b = 1.0) { return ConeMetric(2.0, 1.0, b); }
  static ConeMetric minimal(double b = 1.0) { return ConeMetric(1.5, 0.5, b); }
  static ConeMetric from_slope(double slope, double b = 1.0);

  double p() const { return p_; }
  double q() const { return q_; }
  double b() const { return b_; }

  // Generic metric field with the Busemann-Hausdorff density and the closed-form
  // spray (continuous up to y1 = 0) attached.
  MetricField metric() const;

  double D(const Vec2<double>& x, const Vec2<double>& y) const;
  double F(const Vec2<double>& x, const Vec2<double>& y) const;
  Mat2 g(const Vec2<double>& x, const Vec2<double>& y) const;
  Mat2 g_inv(const Vec2<double>& x, const Vec2<double>& y) const;
  double det_g(const Vec2<double>& x, const Vec2<double>& y) const;
  Vec2<double> spray(const Vec2<double>& x, const Vec2<double>& y) const;
  Mat2 riemann(const Vec2<double>& x, const Vec2<double>& y) const;
  double flag_curvature(const Vec2<double>& x, const Vec2<double>& y) const;
  double s_curvature(const Vec2<double>& x, const Vec2<double>& y) const;
  // sigma_BH = 2 p sqrt(pq) x1 / b^2
  double bh_density(const Vec2<double>& x) const;

 private:
  double p_;
  double q_;
  double b_;
};

// Riemannian metric sqrt(a11 (y1)^2 + a22(x1) (y2)^2) with a22(x1) = c (x1)^2:
// the Euclidean metric induced on a cone (a11 = 1 + s^2, c = s^2).
MetricField cone_riemannian_metric(double a11, double c);

}  // namespace kropina
