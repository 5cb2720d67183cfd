#pragma once

// Finsler tensor calculus on a 2-dimensional chart.
//
// A MetricField is evaluated on jets over (x1, x2, y1, y2); all tensors are
// obtained from F^2 by forward-mode differentiation:
//   g_ij   = 1/2 [F^2]_{y^i y^j}
//   G^i    = 1/4 g^{il} ([F^2]_{x^k y^l} y^k - [F^2]_{x^l})
//   R^i_k  = 2 G^i_{x^k} - y^j G^i_{x^j y^k} + 2 G^j G^i_{y^j y^k} - G^i_{y^j} G^j_{y^k}
//   K      = g_y(R_y u, u) / (g_y(y,y) g_y(u,u) - g_y(y,u)^2)
//   S      = G^m_{y^m} - y^m (ln sigma_F)_{x^m}
//   tau    = ln(sqrt(det g) / sigma_F)
// The Riemann tensor needs second derivatives of G, i.e. fourth derivatives of
// F^2; it is evaluated with nested jets.

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "kropina/scalar.hpp"

namespace kropina {

// kConic rejects points outside the metric's conic domain. kAlgebraic
// evaluates the defining expression wherever it is finite (e.g. F(x,-y) for
// a Kropina metric, whose F^2 is even in y).
enum class DomainPolicy { kConic, kAlgebraic };

using VolumeDensity = PolyFn<PointSig>;
using SprayFunction = std::function<Vec2<double>(const Vec2<double>&, const Vec2<double>&)>;
using SingularityMeasure = std::function<double(const Vec2<double>&, const Vec2<double>&)>;

class MetricField {
 public:
  using Domain = std::function<bool(const Vec2<double>& x, const Vec2<double>& y)>;

  // generic_eval must be callable as S(const Vec2<S>& x, const Vec2<S>& y) for
  // double and every jet type; use kropina::sqrt etc. inside it.
  template <class G>
  MetricField(std::string name, G generic_eval, Domain domain = {})
      : name_(std::move(name)), eval_(std::move(generic_eval)), domain_(std::move(domain)) {}

  const std::string& name() const { return name_; }

  template <class S>
  S eval(const Vec2<S>& x, const Vec2<S>& y) const {
    return eval_.template eval<S>(x, y);
  }
  double operator()(const Vec2<double>& x, const Vec2<double>& y) const { return eval<double>(x, y); }

  bool inside(const Vec2<double>& x, const Vec2<double>& y) const { return !domain_ || domain_(x, y); }

  // BH (or other) volume density sigma_F(x), required by distortion and S.
  MetricField with_density(VolumeDensity density) const {
    MetricField m = *this;
    m.density_ = std::move(density);
    return m;
  }
  bool has_density() const { return static_cast<bool>(density_); }
  template <class S>
  S density(const Vec2<S>& x) const {
    return density_.template eval<S>(x);
  }

  // Closed-form spray valid on the closure of the conic domain. Geodesic
  // integration prefers it over the jet pipeline. The singularity measure
  // must stay positive wherever the spray is finite.
  MetricField with_spray_extension(SprayFunction spray, SingularityMeasure singularity = {}) const {
    MetricField m = *this;
    m.spray_ext_ = std::move(spray);
    m.singularity_ = std::move(singularity);
    return m;
  }
  const SprayFunction& spray_extension() const { return spray_ext_; }
  const SingularityMeasure& singularity_measure() const { return singularity_; }

 private:
  std::string name_;
  PolyFn<BundleSig> eval_;
  Domain domain_;
  VolumeDensity density_;
  SprayFunction spray_ext_;
  SingularityMeasure singularity_;
};

struct FundamentalTensor {
  Mat2 g{};
  Mat2 g_inv{};
  double det_g = 0.0;
};

struct SprayCoeffs {
  Vec2<double> G{};
};

// G together with its first derivatives: dx[i][k] = dG^i/dx^k, dy[i][k] = dG^i/dy^k.
struct SprayJacobian {
  Vec2<double> G{};
  Mat2 dx{};
  Mat2 dy{};
};

struct RiemannCurvature {
  Mat2 R{};  // R[i][k] = R^i_k
};

struct ReconstructionResidual {
  double absolute = 0.0;
  double relative = 0.0;
  double flag_curvature = 0.0;
};

struct CurvatureReport {
  Vec2<double> x{};
  Vec2<double> y{};
  double F = 0.0;
  Mat2 g{};
  Vec2<double> G{};
  Mat2 R{};
  double K = 0.0;
  double S = 0.0;
  double tau = 0.0;
};

FundamentalTensor fundamental_tensor(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                                     DomainPolicy policy = DomainPolicy::kConic);

SprayCoeffs spray(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                  DomainPolicy policy = DomainPolicy::kConic);

// First derivatives of the spray from third-order jets of F^2.
SprayJacobian spray_jacobian(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                             DomainPolicy policy = DomainPolicy::kConic);

RiemannCurvature riemann(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                         DomainPolicy policy = DomainPolicy::kConic);

// Flag curvature of the flag span{y, u}. Throws DegenerateError when y and u
// are (numerically) parallel.
double flag_curvature(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                      const Vec2<double>& u, DomainPolicy policy = DomainPolicy::kConic);

// In dimension 2 the flag is the whole tangent plane; u is taken as the
// g_y-orthogonal complement of y.
double flag_curvature(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                      DomainPolicy policy = DomainPolicy::kConic);

// max_ij |R^i_j - K (F^2 delta^i_j - F F_{y^j} y^i)|. Differences below
// 1e-14 F^2 are treated as round-off and reported as zero relative error.
ReconstructionResidual riemann_reconstruction_check(const MetricField& m, const Vec2<double>& x,
                                                    const Vec2<double>& y,
                                                    DomainPolicy policy = DomainPolicy::kConic);

double distortion(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                  DomainPolicy policy = DomainPolicy::kConic);

double s_curvature(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                   DomainPolicy policy = DomainPolicy::kConic);

CurvatureReport curvature_report(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y,
                                 DomainPolicy policy = DomainPolicy::kConic);

// Busemann-Hausdorff coefficient of an (alpha, beta)-metric F = alpha phi(beta/alpha):
//   int_0^pi sin^{n-2} t dt / int_0^pi sin^{n-2} t / phi(b cos t)^n dt
// by adaptive quadrature (abs tol 1e-12). Throws DegenerateError when the
// denominator vanishes or is not finite (Kropina with odd n).
double bh_volume_coefficient(const std::function<double(double)>& phi, int n, double b_norm);

// Closed form of the coefficient above for Kropina (phi(s) = 1/s) surfaces.
double kropina_bh_coefficient(double beta_norm_sq);

// Symmetric 2x2 eigenvalues, ascending.
Vec2<double> symmetric_eigenvalues(const Mat2& a);

}  // namespace kropina
