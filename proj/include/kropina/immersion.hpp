#pragma once

// Surfaces of revolution phi(x1, x2) = (f(x1) cos x2, f(x1) sin x2, x1) in the
// ambient Kropina space, their pullback metrics and their mean curvature.
//
// Notation: z[i][e] = d phi^i / d x^e, A = z^T z, C = sqrt(det A), w = l.z and
//   E = b^2 sum_{g,t} (-1)^{g+t} A_{g~ t~} w_g w_t      (~ swaps the two indices)
// so that E = C^2 |beta|^2_alpha and the Busemann-Hausdorff volume functional is
//   VF(z) = 2 C^3 / E.
// The mean curvature along a field v is
//   H(v) = (1/VF) { VF_{z^i_e z^j_h} phi^j_{eh} + VF_{z^i_e x~^j} z^j_e - VF_{x~^i} } v^i,
// whose last two terms vanish because the ambient metric is Minkowskian.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kropina/ambient.hpp"
#include "kropina/finsler.hpp"
#include "kropina/profile.hpp"

namespace kropina {

template <class S>
using ZMat = std::array<std::array<S, 2>, 3>;
// H[i][e][j][h] = d^2 (.) / d z^i_e d z^j_h
using ZHess = std::array<std::array<std::array<std::array<double, 2>, 3>, 2>, 3>;
using ZJet = Jet2<double, 6>;  // variable index 2 i + e

inline constexpr int zvar(int i, int e) { return 2 * i + e; }

struct ImmersionJet {
  Vec3<double> phi{};
  Mat32 z{};
  std::array<Mat2, 3> phi_xx{};  // phi_xx[j][e][h]
  Vec3<double> v{};              // (-cos x2, -sin x2, f'(x1))
};

class RevolutionImmersion {
 public:
  explicit RevolutionImmersion(ProfileFunction profile) : profile_(std::move(profile)) {}
  const ProfileFunction& profile() const { return profile_; }

  // Throws DomainError when x1 leaves the profile's working interval.
  ImmersionJet jet(const Vec2<double>& x) const;

  template <class S>
  Vec3<S> phi(const Vec2<S>& x) const {
    const S f = profile_.f(x[0]);
    return {f * cos(x[1]), f * sin(x[1]), x[0]};
  }
  template <class S>
  ZMat<S> z(const Vec2<S>& x) const {
    const S f = profile_.f(x[0]);
    const S df = profile_.df(x[0]);
    const S c = cos(x[1]);
    const S s = sin(x[1]);
    return {{{df * c, -(f * s)}, {df * s, f * c}, {S(1.0), S(0.0)}}};
  }

 private:
  ProfileFunction profile_;
};

inline ImmersionJet immersion_jet(const RevolutionImmersion& im, const Vec2<double>& x) { return im.jet(x); }

struct PullbackData {
  Mat2 A{};
  double C = 0.0;         // sqrt(det A)
  double C_closed = 0.0;  // f sqrt(1 + f'^2)
  double E = 0.0;         // index-sum definition
  double E_closed = 0.0;  // variant closed form
  double volume = 0.0;    // 2 C^3 / E
  double beta_norm_sq = 0.0;
};

// C and E from both the index-sum definitions and the closed forms.
// Throws DegenerateError when C or E is not positive.
PullbackData compute_CE(const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x);

// F(x, y) = |z y|^2 / (b l.(z y)) on {b l.(z y) > 0}, with sigma = 2 C^3 / E attached.
MetricField pullback_metric(const RevolutionImmersion& im, const OneFormSpec& beta);

// ---------------------------------------------------------------------------
// Volume functional.

template <class S>
S det_A(const ZMat<S>& z) {
  S A[2][2];
  for (int e = 0; e < 2; ++e)
    for (int t = 0; t < 2; ++t) A[e][t] = z[0][e] * z[0][t] + z[1][e] * z[1][t] + z[2][e] * z[2][t];
  return A[0][0] * A[1][1] - A[0][1] * A[1][0];
}

// E by its index-sum definition.
template <class S>
S e_index_sum(const OneFormSpec& beta, const ZMat<S>& z) {
  const Vec3<double>& l = beta.direction();
  S w[2];
  for (int e = 0; e < 2; ++e) w[e] = l[0] * z[0][e] + l[1] * z[1][e] + l[2] * z[2][e];
  S E = 0.0 * w[0];
  for (int g = 0; g < 2; ++g)
    for (int t = 0; t < 2; ++t) {
      const S a = z[0][1 - g] * z[0][1 - t] + z[1][1 - g] * z[1][1 - t] + z[2][1 - g] * z[2][1 - t];
      const S term = a * w[g] * w[t];
      E = ((g + t) % 2 == 0) ? E + term : E - term;
    }
  return (beta.b() * beta.b()) * E;
}

template <class S>
S volume_functional_eval(const OneFormSpec& beta, const ZMat<S>& z) {
  const S c2 = det_A(z);
  const S E = e_index_sum(beta, z);
  if (!(scalar_value(E) > 0.0)) throw DegenerateError("volume functional: E = " + std::to_string(scalar_value(E)));
  return 2.0 * (c2 * sqrt(c2)) / E;
}

// The same functional built from the ambient data at x~ without using the
// Minkowski reduction: alpha~ = I / (x~3)^2 and beta~ = b l / (x~3)^2 pulled
// back by z, VF = 2 sqrt(det A_alpha) / |beta|^2_alpha.
template <class S>
S ambient_volume_functional(const OneFormSpec& beta, const Vec3<S>& xt, const ZMat<S>& z) {
  const Vec3<double>& l = beta.direction();
  const S inv = recip(sq(xt[2]));
  S A[2][2];
  for (int e = 0; e < 2; ++e)
    for (int t = 0; t < 2; ++t) A[e][t] = inv * (z[0][e] * z[0][t] + z[1][e] * z[1][t] + z[2][e] * z[2][t]);
  S w[2];
  for (int e = 0; e < 2; ++e) w[e] = (beta.b() * inv) * (l[0] * z[0][e] + l[1] * z[1][e] + l[2] * z[2][e]);
  const S det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  const S norm = (A[1][1] * w[0] * w[0] - 2.0 * (A[0][1] * w[0] * w[1]) + A[0][0] * w[1] * w[1]) / det;
  if (!(scalar_value(norm) > 0.0)) throw DegenerateError("volume functional: |beta|^2 is not positive");
  return 2.0 * sqrt(det) / norm;
}

// Value, gradient and Hessian of VF in the six variables z^i_e.
ZJet volume_functional(const Mat32& z, const OneFormSpec& beta);

struct MeanCurvature {
  double H = 0.0;
  double volume = 0.0;        // VF at z
  double hessian_term = 0.0;  // VF_{zz} phi_xx v
  double mixed_term = 0.0;    // VF_{z x~} z v
  double point_term = 0.0;    // VF_{x~} v
};

MeanCurvature mean_curvature(const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x,
                             const Vec3<double>& v);
// Uses the immersion's normal field v.
MeanCurvature mean_curvature(const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x);

// ---------------------------------------------------------------------------
// Closed-form partial derivatives in z.

enum class PrintedForm { kCorrected, kAsPrinted };

// dC/dz^i_e = (1/C) sum_{l != i} (z^i_1 z^l_2 - z^i_2 z^l_1)(d_e1 z^l_2 - d_e2 z^l_1)
Mat32 c_first_partials(const Mat32& z);
// (1/2) d^2 C^2 / dz dz
ZHess half_c2_second_partials(const Mat32& z);
// dE/dz for a general direction l.
Mat32 e_first_partials(const Mat32& z, const OneFormSpec& beta);
// d^2E/dz dz. kAsPrinted reproduces the published variant whose l_i l_j term
// contracts z^k_h instead of z^k_{h~}.
ZHess e_second_partials(const Mat32& z, const OneFormSpec& beta, PrintedForm form = PrintedForm::kCorrected);
// VF_zz assembled from the partials above:
// 4C^3/E^3 E_z E_z - 6C^2/E^2 (C_z E_z + E_z C_z) - 2C^3/E^2 E_zz + 6C/E C_z C_z + 3C/E (C^2)_zz
ZHess volume_hessian_closed(const Mat32& z, const OneFormSpec& beta);

// Partials contracted with v (index i) and phi_xx (index j, h); vectors are indexed by e.
struct ContractedPartials {
  Vec2<double> Cz_v{};
  Vec2<double> Ez_v{};
  Vec2<double> Cz_phixx{};
  Vec2<double> Ez_phixx{};
  double half_C2zz_phixx_v = 0.0;
  double Ezz_phixx_v = 0.0;
};

// Paper closed forms in f, f', f'' and psi = x2 - theta. kAsPrinted uses
// sin(psi) instead of sin^2(psi) in Ez_phixx for the tilted form.
ContractedPartials contracted_partials_closed(const RevolutionImmersion& im, const OneFormSpec& beta,
                                              const Vec2<double>& x, PrintedForm form = PrintedForm::kCorrected);
// The same contractions from jets of C and E in z.
ContractedPartials contracted_partials_jet(const RevolutionImmersion& im, const OneFormSpec& beta,
                                           const Vec2<double>& x);

// The minimality bracket
//   phi^j_{eh} v^i [ -2C^2 E E_zz + 4C^2 E_z E_z - 6CE (C_z E_z + E_z C_z) - 6CE^2 C_z C_z + 3E^2 (C^2)_zz ]
// with the index-form partials. It equals 2 C^2 E^2 H because every C_z v term vanishes.
double minimality_residual_bracket(const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x);
// The same bracket assembled from contracted quantities.
double bracket_from_contracted(const ContractedPartials& p, double C, double E);

// ---------------------------------------------------------------------------
// Structure of the bracket along circles of latitude.

struct Cos2Polynomial {
  // Bracket = k4 cos^4(psi) + k2 cos^2(psi) + k0 at fixed x1.
  std::array<double, 3> raw{};         // {k4, k2, k0}
  std::array<double, 3> normalized{};  // raw / (2 b^4 f^5)
  double fit_residual = 0.0;           // max |fit - sample| / max |sample|
  int samples = 0;
};

// Least-squares fit over 12 Chebyshev nodes of psi in [0, pi]. Throws
// StructureError when the fit residual exceeds 1e-9 (relative).
Cos2Polynomial extract_cos2_polynomial(const RevolutionImmersion& im, const OneFormSpec& beta, double x1);

// Analytic coefficients (divided by 2 b^4 f^5):
//   k4 = -3(1+2f'^2)(ff''+f'^2+1)
//   k2 = 2(1+f'^2)(2ff'' - f'^2(ff''+f'^2+1))
//   k0 = (1+f'^2)^power (-ff''+3f'^2+3)
// power = 2 is what the bracket realizes; power = 1 is the other published form.
std::array<double, 3> cos2_coefficients_closed(const ProfileValues& p, int power = 2);

// ---------------------------------------------------------------------------
// Profile ODE for the vertical 1-form: (1 + 2f'^2)(f'^2 + 3 f f'') - 1 = 0.

double profile_ode_residual(const ProfileFunction& p, double x1);
double profile_ode_residual(const ProfileValues& v);

struct ProfileOdeSolution {
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> df;
  bool hit_vertex = false;        // f fell below f_min before reaching the end
  double x_stop = 0.0;
  double richardson_delta = 0.0;  // max |f_h - f_{h/2}| at shared nodes
  double max_ode_residual = 0.0;  // ODE residual along the trajectory
};

// RK4 with step h (and a second pass at h/2 for the Richardson estimate).
ProfileOdeSolution solve_profile_ode(double x0, double f0, double df0, double x_end, double h = 1e-3,
                                     double f_min = 1e-6);

// ---------------------------------------------------------------------------
// Reports.

enum class ResidualPipeline { kMeanCurvature, kBracket };

// Residual of the linear profile f = s x1 at the probe point.
double linear_profile_residual(double slope, const OneFormSpec& beta, ResidualPipeline pipeline,
                               const Vec2<double>& probe = {1.0, 0.3});

// Bisection for a sign change of linear_profile_residual in [lo, hi].
// Throws DegenerateError when the ends do not bracket a root.
double bisect_minimal_slope(const OneFormSpec& beta, ResidualPipeline pipeline, double lo = 0.3, double hi = 1.2,
                            double tol = 1e-10, const Vec2<double>& probe = {1.0, 0.3});

struct MinimalitySample {
  Vec2<double> x{};
  double H = 0.0;
  double bracket = 0.0;
  double expected_ratio = 0.0;  // 2 C^2 E^2
  double observed_ratio = 0.0;  // bracket / H (NaN when H = 0)
};

struct MinimalityReport {
  std::string variant;
  std::string profile;
  std::vector<MinimalitySample> samples;
  std::vector<std::pair<double, Cos2Polynomial>> cos2;  // (x1, fit) for rotational variants
  double max_abs_H = 0.0;
  double max_abs_bracket = 0.0;
  double max_ratio_error = 0.0;  // max |observed / expected - 1| over samples with |H| > 1e-6
  bool zero_sets_agree = true;   // both < 1e-9 or both > 1e-6 at every sample
  bool minimal = false;          // max |H| < 1e-9 and max |bracket| < 1e-9
};

MinimalityReport minimality_report(const RevolutionImmersion& im, const OneFormSpec& beta,
                                   const std::vector<Vec2<double>>& points);

}  // namespace kropina
