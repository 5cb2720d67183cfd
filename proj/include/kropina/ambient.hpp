#pragma once

// Upper half space H^3 with the hyperbolic metric
//   alpha~ = |y~| / x~3
// and the Kropina deformation F~ = alpha~^2 / beta~ by one of three 1-forms
//   beta~ = b (l . y~) / (x~3)^2,
// l = e1 (along x~1), (cos t, sin t, 0) (tilted), e3 (along x~3).

#include <array>
#include <string>

#include "kropina/errors.hpp"
#include "kropina/scalar.hpp"

namespace kropina {

using Mat32 = std::array<std::array<double, 2>, 3>;  // z[i][eps] = d phi^i / d x^eps

enum class OneFormVariant { kAlongX1, kTilted, kAlongX3 };

class OneFormSpec {
 public:
  static OneFormSpec along_x1(double b);
  static OneFormSpec tilted(double b, double theta);
  static OneFormSpec along_x3(double b);

  OneFormVariant variant() const { return variant_; }
  double b() const { return b_; }
  double theta() const { return theta_; }
  // Euclidean direction l of the 1-form.
  const Vec3<double>& direction() const { return l_; }
  // Rotational variants depend on x2 only through cos^2(x2 - theta).
  bool rotational() const { return variant_ != OneFormVariant::kAlongX3; }

  // "x1", "tilted(0.785398...)" or "x3"; accepted back by parse().
  std::string label() const;
  static OneFormSpec parse(const std::string& variant, double b, double theta = 0.0);

 private:
  OneFormSpec(OneFormVariant v, double b, double theta);
  OneFormVariant variant_;
  double b_;
  double theta_;
  Vec3<double> l_;
};

struct HyperbolicMetric {
  template <class S>
  static S alpha_sq(const Vec3<S>& x, const Vec3<S>& y) {
    return (sq(y[0]) + sq(y[1]) + sq(y[2])) / sq(x[2]);
  }
  static double eval(const Vec3<double>& x, const Vec3<double>& y);
};

class AmbientKropina {
 public:
  explicit AmbientKropina(OneFormSpec beta) : beta_(beta) {}
  const OneFormSpec& beta_spec() const { return beta_; }

  template <class S>
  S beta(const Vec3<S>& x, const Vec3<S>& y) const {
    const Vec3<double>& l = beta_.direction();
    return beta_.b() * (l[0] * y[0] + l[1] * y[1] + l[2] * y[2]) / sq(x[2]);
  }
  // alpha~^2 / beta~ with no domain checks (generic scalar types).
  template <class S>
  S eval_unchecked(const Vec3<S>& x, const Vec3<S>& y) const {
    return HyperbolicMetric::alpha_sq(x, y) / beta(x, y);
  }

 private:
  OneFormSpec beta_;
};

// Throws DomainError when x~3 <= 0 (outside H^3) or beta~ <= 0 (outside the cone).
double ambient_eval(const AmbientKropina& k, const Vec3<double>& x, const Vec3<double>& y);

// |beta|^2_alpha = b^2 A^{eps eta} (l.z)_eps (l.z)_eta for the pulled-back forms.
// Throws SingularError when A is not invertible.
double beta_norm_sq(const AmbientKropina& k, const Mat2& A, const Mat32& z);

}  // namespace kropina
