#include "kropina/ambient.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace kropina {

OneFormSpec::OneFormSpec(OneFormVariant v, double b, double theta) : variant_(v), b_(b), theta_(theta) {
  if (b == 0.0 || !std::isfinite(b)) throw ConfigError("1-form: b must be a nonzero finite number");
  if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) {
    throw ConfigError("1-form: theta must lie in [0, 2 pi), got " + std::to_string(theta));
  }
  switch (v) {
    case OneFormVariant::kAlongX1: l_ = {1.0, 0.0, 0.0}; break;
    case OneFormVariant::kTilted: l_ = {std::cos(theta), std::sin(theta), 0.0}; break;
    case OneFormVariant::kAlongX3: l_ = {0.0, 0.0, 1.0}; break;
  }
}

OneFormSpec OneFormSpec::along_x1(double b) { return {OneFormVariant::kAlongX1, b, 0.0}; }
OneFormSpec OneFormSpec::tilted(double b, double theta) { return {OneFormVariant::kTilted, b, theta}; }
OneFormSpec OneFormSpec::along_x3(double b) { return {OneFormVariant::kAlongX3, b, 0.0}; }

std::string OneFormSpec::label() const {
  switch (variant_) {
    case OneFormVariant::kAlongX1: return "x1";
    case OneFormVariant::kAlongX3: return "x3";
    case OneFormVariant::kTilted: break;
  }
  std::ostringstream os;
  os.precision(17);
  os << "tilted(" << theta_ << ")";
  return os.str();
}

OneFormSpec OneFormSpec::parse(const std::string& variant, double b, double theta) {
  if (variant == "x1") return along_x1(b);
  if (variant == "x3") return along_x3(b);
  if (variant == "tilted") return tilted(b, theta);
  throw ConfigError("unknown 1-form variant '" + variant + "' (expected x1, tilted or x3)");
}

double HyperbolicMetric::eval(const Vec3<double>& x, const Vec3<double>& y) {
  if (!(x[2] > 0.0)) throw DomainError("hyperbolic metric", x[2], "x3 must be positive");
  return std::sqrt(alpha_sq(x, y));
}

double ambient_eval(const AmbientKropina& k, const Vec3<double>& x, const Vec3<double>& y) {
  if (!(x[2] > 0.0)) throw DomainError("ambient Kropina metric", x[2], "outside the upper half space");
  const double beta = k.beta(x, y);
  if (!(beta > 0.0)) throw DomainError("ambient Kropina metric", beta, "beta must be positive (conic domain)");
  return HyperbolicMetric::alpha_sq(x, y) / beta;
}

double beta_norm_sq(const AmbientKropina& k, const Mat2& A, const Mat32& z) {
  const double det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  if (det == 0.0 || !std::isfinite(det)) throw SingularError("beta_norm_sq: A is singular");
  const Vec3<double>& l = k.beta_spec().direction();
  double w[2];
  for (int e = 0; e < 2; ++e) w[e] = l[0] * z[0][e] + l[1] * z[1][e] + l[2] * z[2][e];
  const double quad = A[1][1] * w[0] * w[0] - (A[0][1] + A[1][0]) * w[0] * w[1] + A[0][0] * w[1] * w[1];
  const double b = k.beta_spec().b();
  return b * b * quad / det;
}

}  // namespace kropina
