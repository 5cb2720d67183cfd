#pragma once

// Geodesics of a 2-dimensional Finsler chart: x'' + 2 G(x, x') = 0, with G the
// spray coefficients G^i = 1/4 g^{il}{...}. Integration uses the metric's
// closed-form spray when one is attached (it may extend past the conic domain,
// e.g. to the circles y1 = 0 of a cone) and the jet pipeline otherwise.

#include <functional>
#include <string>
#include <vector>

#include "kropina/finsler.hpp"

namespace kropina {

struct GeodesicState {
  double t = 0.0;
  Vec2<double> x{};
  Vec2<double> xdot{};
};

enum class TerminationKind { kHorizon, kBoundaryHit, kStepFailure };

struct Termination {
  TerminationKind kind = TerminationKind::kHorizon;
  std::string which;          // boundary or failure description
  double t_stop = 0.0;        // time of the last accepted state
  double t_boundary = 0.0;    // boundary hits: interpolated guard crossing
  double t_extrapolated = 0.0;  // boundary hits at x1_min: linear extrapolation to x1 = 0
};

std::string to_string(TerminationKind kind);

struct TrajectoryRecord {
  std::vector<GeodesicState> samples;
  std::vector<double> F;  // F(x, x') per sample; NaN where (x, x') is outside the conic domain
  Termination termination;
  double max_F_drift = 0.0;  // max |F - F0| / F0 over samples where both are defined
};

struct IntegratorOptions {
  double x1_min = 1e-3;            // vertex guard
  double singularity_tol = 1e-12;  // stop when the spray singularity measure drops below this
  bool adaptive = false;           // step doubling
  double tolerance = 1e-9;         // adaptive local error target
};

// Throws DomainError when (x0, y0) is not a valid start: x1 <= x1_min, or y0
// outside the conic domain of a metric without an extended spray.
TrajectoryRecord integrate(const MetricField& m, const Vec2<double>& x0, const Vec2<double>& y0, double t_max,
                           double dt = 1e-3, const IntegratorOptions& options = {});

// Spray used by the integrator.
Vec2<double> geodesic_spray(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y);

struct CurvePoint {
  Vec2<double> x{};
  Vec2<double> xdot{};
  Vec2<double> xddot{};
};
using Curve = std::function<CurvePoint(double)>;

// max over samples of |x'' + 2 G(x, x')| (max norm).
double residual_on_curve(const MetricField& m, const Curve& curve, const std::vector<double>& samples);

}  // namespace kropina
