#include <cmath>

#include "doctest.h"
#include "kropina/cone.hpp"
#include "kropina/geodesics.hpp"

using namespace kropina;
using doctest::Approx;

namespace {

double endpoint_error(double dt) {
  const TrajectoryRecord r = integrate(ConeMetric::unit_slope().metric(), {1.0, 0.0}, {1.0, 0.5}, 1.0, dt);
  const TrajectoryRecord ref = integrate(ConeMetric::unit_slope().metric(), {1.0, 0.0}, {1.0, 0.5}, 1.0, dt / 8.0);
  const auto& a = r.samples.back().x;
  const auto& b = ref.samples.back().x;
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

}  // namespace

TEST_SUITE("geodesics") {
  TEST_CASE("radial line") {
    const TrajectoryRecord r = integrate(ConeMetric::unit_slope().metric(), {1.0, 0.0}, {1.0, 0.0}, 1.0);
    CHECK(r.termination.kind == TerminationKind::kHorizon);
    CHECK(std::abs(r.samples.back().t - 1.0) < 1e-12);
    CHECK(std::abs(r.samples.back().x[0] - 2.0) < 1e-6);
    CHECK(std::abs(r.samples.back().x[1]) < 1e-12);
    CHECK(r.max_F_drift < 1e-6);
  }

  TEST_CASE("circle orthogonal to the axis") {
    const TrajectoryRecord r = integrate(ConeMetric::unit_slope().metric(), {1.0, 0.0}, {0.0, 1.0}, 1.0);
    CHECK(r.termination.kind == TerminationKind::kHorizon);
    for (const GeodesicState& s : r.samples) {
      CHECK(std::abs(s.x[0] - 1.0) < 1e-6);
      CHECK(std::abs(s.x[1] - s.t) < 1e-6);
    }
    // F is undefined on y1 = 0.
    CHECK(std::isnan(r.F.front()));
  }

  TEST_CASE("inward line exits through the vertex guard") {
    const TrajectoryRecord r = integrate(ConeMetric::unit_slope().metric(), {1.0, 0.0}, {-1.0, 0.0}, 2.0);
    CHECK(r.termination.kind == TerminationKind::kBoundaryHit);
    CHECK(r.termination.which.find("x1_min") != std::string::npos);
    CHECK(std::abs(r.termination.t_boundary - 0.999) < 1e-9);
    CHECK(std::abs(r.termination.t_extrapolated - 1.0) < 1e-3);
    CHECK(r.samples.back().t <= r.termination.t_boundary);
    CHECK(to_string(r.termination.kind) == "boundary_hit");
  }

  TEST_CASE("times increase strictly and the record is populated") {
    const TrajectoryRecord r = integrate(ConeMetric::minimal().metric(), {1.5, 0.2}, {0.7, -0.9}, 1.0);
    REQUIRE(r.samples.size() > 2);
    CHECK(r.samples.size() == r.F.size());
    for (std::size_t i = 1; i < r.samples.size(); ++i) CHECK(r.samples[i].t > r.samples[i - 1].t);
    CHECK(r.max_F_drift < 1e-6);
  }

  TEST_CASE("RK4 error drops by at least 8x under step halving") {
    const double coarse = endpoint_error(0.02);
    const double fine = endpoint_error(0.01);
    CHECK(coarse > 0.0);
    CHECK(coarse / fine >= 8.0);
  }

  TEST_CASE("adaptive mode reaches the horizon with conserved F") {
    IntegratorOptions opt;
    opt.adaptive = true;
    const TrajectoryRecord r = integrate(ConeMetric::unit_slope().metric(), {1.0, 0.0}, {1.0, 0.5}, 1.0, 1e-2, opt);
    const TrajectoryRecord fixed = integrate(ConeMetric::unit_slope().metric(), {1.0, 0.0}, {1.0, 0.5}, 1.0, 1e-3);
    CHECK(r.termination.kind == TerminationKind::kHorizon);
    CHECK(r.samples.back().t == Approx(1.0));
    CHECK(r.max_F_drift < 1e-6);
    CHECK(std::abs(r.samples.back().x[0] - fixed.samples.back().x[0]) < 1e-7);
    CHECK(std::abs(r.samples.back().x[1] - fixed.samples.back().x[1]) < 1e-7);
  }

  TEST_CASE("generic pipeline agrees with the closed-form spray") {
    const ConeMetric c = ConeMetric::minimal();
    const MetricField plain("cone-plain", [](const auto& x, const auto& y) {
      return (1.5 * sq(y[0]) + 0.5 * sq(x[0]) * sq(y[1])) / y[0];
    });
    for (const Vec2<double>& y : {Vec2<double>{1.0, 0.3}, Vec2<double>{0.4, -1.2}}) {
      const Vec2<double> a = geodesic_spray(plain, {1.3, 0.0}, y);
      const Vec2<double> b = c.spray({1.3, 0.0}, y);
      CHECK(a[0] == Approx(b[0]).epsilon(1e-11));
      CHECK(a[1] == Approx(b[1]).epsilon(1e-11));
    }
    const TrajectoryRecord r = integrate(plain, {1.5, 0.2}, {0.7, -0.9}, 0.5);
    const TrajectoryRecord s = integrate(c.metric(), {1.5, 0.2}, {0.7, -0.9}, 0.5);
    CHECK(r.samples.back().x[0] == Approx(s.samples.back().x[0]).epsilon(1e-10));
    CHECK(r.samples.back().x[1] == Approx(s.samples.back().x[1]).epsilon(1e-10));
  }

  TEST_CASE("spray is continuous as y1 tends to 0+") {
    const ConeMetric c = ConeMetric::unit_slope();
    for (double y1 : {1e-2, 1e-4, 1e-6}) {
      const Vec2<double> g = c.spray({1.0, 0.0}, {y1, 1.0});
      CHECK(std::abs(g[0]) < 2.0 * y1 * y1);
      CHECK(std::abs(g[1]) < 3.0 * y1 * y1 * y1);
    }
    // Crossing y1 = 0 from the conic domain does not blow up.
    const TrajectoryRecord r = integrate(c.metric(), {1.0, 0.0}, {1e-4, 1.0}, 1.0);
    CHECK(r.termination.kind == TerminationKind::kHorizon);
  }

  TEST_CASE("invalid starts") {
    const MetricField m = ConeMetric::unit_slope().metric();
    CHECK_THROWS_AS(integrate(m, {1e-4, 0.0}, {1.0, 0.0}, 1.0), DomainError);
    const MetricField plain("cone-plain", [](const auto& x, const auto& y) {
      return (2.0 * sq(y[0]) + sq(x[0]) * sq(y[1])) / y[0];
    }, [](const Vec2<double>&, const Vec2<double>& y) { return y[0] > 0.0; });
    CHECK_THROWS_AS(integrate(plain, {1.0, 0.0}, {-1.0, 0.0}, 1.0), DomainError);
  }

  TEST_CASE("residual on coordinate curves") {
    const MetricField m = ConeMetric::unit_slope().metric();
    const std::vector<double> ts{0.0, 0.25, 0.5, 0.75, 1.0};
    const Curve line = [](double t) { return CurvePoint{{1.0 + t, 0.0}, {1.0, 0.0}, {0.0, 0.0}}; };
    const Curve circle = [](double t) { return CurvePoint{{1.0, t}, {0.0, 1.0}, {0.0, 0.0}}; };
    CHECK(residual_on_curve(m, line, ts) < 1e-10);
    CHECK(residual_on_curve(m, circle, ts) < 1e-10);
    // The circle is not a geodesic of the Euclidean-induced cone metric.
    const MetricField riem = cone_riemannian_metric(1.5, 0.5);
    CHECK(residual_on_curve(riem, circle, ts) > 0.1);
  }
}
