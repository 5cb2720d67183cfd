#include "kropina/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kropina/errors.hpp"

namespace kropina {

namespace {

struct Phase {
  Vec2<double> x;
  Vec2<double> y;
};

Phase axpy(const Phase& s, double h, const Phase& k) {
  return {{s.x[0] + h * k.x[0], s.x[1] + h * k.x[1]}, {s.y[0] + h * k.y[0], s.y[1] + h * k.y[1]}};
}

class Stepper {
 public:
  Stepper(const MetricField& m, const IntegratorOptions& o) : m_(m), o_(o) {}

  // Empty string on success, otherwise the reason the state is unusable.
  std::string check(const Phase& s) const {
    if (!std::isfinite(s.x[0]) || !std::isfinite(s.x[1]) || !std::isfinite(s.y[0]) || !std::isfinite(s.y[1]))
      return "non-finite state";
    if (s.x[0] <= o_.x1_min) return "x1_min";
    if (const auto& measure = m_.singularity_measure(); measure && measure(s.x, s.y) < o_.singularity_tol)
      return "spray singularity";
    return {};
  }

  Phase rhs(const Phase& s) const {
    const Vec2<double> G = geodesic_spray(m_, s.x, s.y);
    return {s.y, {-2.0 * G[0], -2.0 * G[1]}};
  }

  // One RK4 step; throws on an unusable stage.
  Phase step(const Phase& s, double h) const {
    const Phase k1 = rhs(s);
    const Phase s2 = axpy(s, 0.5 * h, k1);
    guard(s2);
    const Phase k2 = rhs(s2);
    const Phase s3 = axpy(s, 0.5 * h, k2);
    guard(s3);
    const Phase k3 = rhs(s3);
    const Phase s4 = axpy(s, h, k3);
    guard(s4);
    const Phase k4 = rhs(s4);
    Phase out = s;
    for (int i = 0; i < 2; ++i) {
      out.x[i] += h / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
      out.y[i] += h / 6.0 * (k1.y[i] + 2.0 * k2.y[i] + 2.0 * k3.y[i] + k4.y[i]);
    }
    return out;
  }

 private:
  void guard(const Phase& s) const {
    if (const std::string why = check(s); !why.empty()) throw StageFailure{why};
  }

 public:
  struct StageFailure {
    std::string why;
  };

 private:
  const MetricField& m_;
  const IntegratorOptions& o_;
};

double metric_value(const MetricField& m, const Phase& s) {
  if (!m.inside(s.x, s.y)) return std::numeric_limits<double>::quiet_NaN();
  try {
    return m(s.x, s.y);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::string to_string(TerminationKind kind) {
  switch (kind) {
    case TerminationKind::kHorizon: return "horizon";
    case TerminationKind::kBoundaryHit: return "boundary_hit";
    case TerminationKind::kStepFailure: return "step_failure";
  }
  return "unknown";
}

Vec2<double> geodesic_spray(const MetricField& m, const Vec2<double>& x, const Vec2<double>& y) {
  if (const auto& ext = m.spray_extension()) return ext(x, y);
  return spray(m, x, y).G;
}

TrajectoryRecord integrate(const MetricField& m, const Vec2<double>& x0, const Vec2<double>& y0, double t_max,
                           double dt, const IntegratorOptions& options) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) throw ConfigError("integrate: need dt > 0 and t_max >= 0");
  if (!(x0[0] > options.x1_min)) throw DomainError("geodesic start", x0[0], "x1 must exceed x1_min");
  if (!m.spray_extension() && !m.inside(x0, y0)) {
    throw DomainError("geodesic start", y0[0], "initial direction outside the conic domain");
  }

  Stepper stepper(m, options);
  TrajectoryRecord rec;
  Phase s{x0, y0};
  double t = 0.0;
  const double F0 = metric_value(m, s);
  const auto record = [&](double time, const Phase& p) {
    rec.samples.push_back({time, p.x, p.y});
    const double F = metric_value(m, p);
    rec.F.push_back(F);
    if (std::isfinite(F0) && std::isfinite(F) && F0 != 0.0) {
      rec.max_F_drift = std::max(rec.max_F_drift, std::abs(F - F0) / std::abs(F0));
    }
  };
  record(t, s);

  const auto finish = [&](TerminationKind kind, std::string which, const Phase* bad, double t_bad) {
    rec.termination.kind = kind;
    rec.termination.which = std::move(which);
    rec.termination.t_stop = t;
    rec.termination.t_boundary = t;
    rec.termination.t_extrapolated = t;
    if (kind == TerminationKind::kBoundaryHit && rec.termination.which == "x1_min") {
      const double v = s.y[0];
      if (bad && bad->x[0] != s.x[0]) {
        const double frac = (s.x[0] - options.x1_min) / (s.x[0] - bad->x[0]);
        rec.termination.t_boundary = t + std::clamp(frac, 0.0, 1.0) * (t_bad - t);
      }
      if (v < 0.0) rec.termination.t_extrapolated = t - s.x[0] / v;
    }
  };

  double h = std::min(dt, t_max);
  constexpr double kTimeEps = 1e-12;
  while (t < t_max - kTimeEps * std::max(1.0, t_max)) {
    h = std::min(h, t_max - t);
    Phase next;
    double h_used = h;
    try {
      if (!options.adaptive) {
        next = stepper.step(s, h);
      } else {
        while (true) {
          const Phase full = stepper.step(s, h);
          const Phase half = stepper.step(stepper.step(s, 0.5 * h), 0.5 * h);
          double err = 0.0;
          for (int i = 0; i < 2; ++i) {
            err = std::max({err, std::abs(full.x[i] - half.x[i]), std::abs(full.y[i] - half.y[i])});
          }
          err /= 15.0;
          if (err <= options.tolerance || h < 1e-14) {
            next = half;
            for (int i = 0; i < 2; ++i) {
              next.x[i] += (half.x[i] - full.x[i]) / 15.0;
              next.y[i] += (half.y[i] - full.y[i]) / 15.0;
            }
            h_used = h;
            const double grow = err > 0.0 ? 0.9 * std::pow(options.tolerance / err, 0.2) : 2.0;
            h = std::min({2.0 * h, h * grow, dt * 1e3});
            break;
          }
          h *= std::max(0.1, 0.9 * std::pow(options.tolerance / err, 0.2));
        }
      }
    } catch (const Stepper::StageFailure& f) {
      // A stage left the chart: locate the crossing with a single Euler probe.
      const Phase probe = axpy(s, h, stepper.rhs(s));
      finish(TerminationKind::kBoundaryHit, f.why, &probe, t + h);
      return rec;
    } catch (const Error& e) {
      finish(TerminationKind::kStepFailure, e.what(), nullptr, t);
      return rec;
    }

    if (const std::string why = stepper.check(next); !why.empty()) {
      const TerminationKind kind =
          why == "non-finite state" ? TerminationKind::kStepFailure : TerminationKind::kBoundaryHit;
      finish(kind, why, &next, t + h_used);
      return rec;
    }
    s = next;
    t += h_used;
    record(t, s);
  }
  finish(TerminationKind::kHorizon, "t_max", nullptr, t);
  return rec;
}

double residual_on_curve(const MetricField& m, const Curve& curve, const std::vector<double>& samples) {
  double worst = 0.0;
  for (double t : samples) {
    const CurvePoint p = curve(t);
    const Vec2<double> G = geodesic_spray(m, p.x, p.xdot);
    for (int i = 0; i < 2; ++i) worst = std::max(worst, std::abs(p.xddot[i] + 2.0 * G[i]));
  }
  return worst;
}

}  // namespace kropina
