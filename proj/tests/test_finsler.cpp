#include <array>
#include <cmath>

#include "doctest.h"
#include "kropina/cone.hpp"
#include "kropina/fd_oracle.hpp"
#include "kropina/finsler.hpp"

using namespace kropina;
using doctest::Approx;

namespace {

MetricField constant_riemannian(double a11, double a12, double a22) {
  return MetricField("riemannian-const", [a11, a12, a22](const auto&, const auto& y) {
           return kropina::sqrt(a11 * sq(y[0]) + 2.0 * a12 * (y[0] * y[1]) + a22 * sq(y[1]));
         })
      .with_density(VolumeDensity([d = std::sqrt(a11 * a22 - a12 * a12)](const auto& x) { return 0.0 * x[0] + d; }));
}

// x-independent non-Riemannian (Randers-type) metric.
MetricField minkowski() {
  return MetricField("minkowski", [](const auto&, const auto& y) {
    return kropina::sqrt(sq(y[0]) + sq(y[1])) + 0.3 * y[0];
  });
}

const std::array<Vec2<double>, 3> kXs{{{0.6, 0.0}, {1.0, 0.4}, {1.8, -1.0}}};
const std::array<Vec2<double>, 4> kYs{{{1.0, 1.0}, {0.5, -0.7}, {2.0, 0.3}, {0.3, 1.5}}};

}  // namespace

TEST_SUITE("finsler") {
  TEST_CASE("cone fundamental tensor at y = (1, 0) is 4 I") {
    const MetricField m = ConeMetric::unit_slope(1.0).metric();
    const auto t = fundamental_tensor(m, {1.0, 0.0}, {1.0, 0.0});
    CHECK(t.g[0][0] == Approx(4.0));
    CHECK(std::abs(t.g[0][1]) < 1e-14);
    CHECK(t.g[1][1] == Approx(4.0));
    CHECK(t.det_g == Approx(16.0));
  }

  TEST_CASE("cone fundamental tensor at y = (1, 1) is [[7, -4], [-4, 10]]") {
    const MetricField m = ConeMetric::unit_slope(1.0).metric();
    const auto t = fundamental_tensor(m, {1.0, 0.0}, {1.0, 1.0});
    CHECK(t.g[0][0] == Approx(7.0));
    CHECK(t.g[0][1] == Approx(-4.0));
    CHECK(t.g[1][0] == Approx(-4.0));
    CHECK(t.g[1][1] == Approx(10.0));
    // FD Hessian of F^2 / 2 agrees.
    const std::array<double, 2> y{1.0, 1.0};
    const auto fd = fd_derivatives(
        [&m](std::span<const double> v) { return 0.5 * sq(m({1.0, 0.0}, {v[0], v[1]})); }, y, 2);
    CHECK(fd.hess[0][0] == Approx(7.0).epsilon(1e-6));
    CHECK(fd.hess[0][1] == Approx(-4.0).epsilon(1e-6));
    CHECK(fd.hess[1][1] == Approx(10.0).epsilon(1e-6));
  }

  TEST_CASE("fundamental tensor and its inverse") {
    const MetricField m = ConeMetric::unit_slope(1.3).metric();
    for (const auto& x : kXs) {
      for (const auto& y : kYs) {
        const auto t = fundamental_tensor(m, x, y);
        CHECK(t.det_g > 0.0);
        const auto ev = symmetric_eigenvalues(t.g);
        CHECK(ev[0] > 0.0);
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            const double id = t.g[i][0] * t.g_inv[0][j] + t.g[i][1] * t.g_inv[1][j];
            CHECK(std::abs(id - (i == j ? 1.0 : 0.0)) < 1e-10);
          }
        }
      }
    }
  }

  TEST_CASE("jets match the FD Hessian of F^2 / 2 where |y1| >= 0.2") {
    const MetricField m = ConeMetric::minimal(1.0).metric();
    for (const auto& x : kXs) {
      for (const auto& y : kYs) {
        const auto t = fundamental_tensor(m, x, y);
        const std::array<double, 2> p{y[0], y[1]};
        const auto fd = fd_derivatives([&](std::span<const double> v) { return 0.5 * sq(m(x, {v[0], v[1]})); }, p, 2);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            CHECK(std::abs(fd.hess[i][j] - t.g[i][j]) <= 1e-6 * std::max(1.0, std::abs(t.g[i][j])));
      }
    }
  }

  TEST_CASE("constant Riemannian metric has g = A, G = 0, R = 0, tau = 0") {
    const MetricField m = constant_riemannian(2.0, 0.5, 3.0);
    for (const auto& y : kYs) {
      const auto t = fundamental_tensor(m, {0.3, 0.2}, y);
      CHECK(t.g[0][0] == Approx(2.0));
      CHECK(t.g[0][1] == Approx(0.5));
      CHECK(t.g[1][1] == Approx(3.0));
      const auto G = spray(m, {0.3, 0.2}, y);
      CHECK(std::abs(G.G[0]) < 1e-14);
      CHECK(std::abs(G.G[1]) < 1e-14);
      const auto R = riemann(m, {0.3, 0.2}, y);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(R.R[i][j]) < 1e-13);
      CHECK(std::abs(distortion(m, {0.3, 0.2}, y)) < 1e-14);
      CHECK(riemann_reconstruction_check(m, {0.3, 0.2}, y).absolute < 1e-13);
    }
  }

  TEST_CASE("locally Minkowski metrics have vanishing spray") {
    const MetricField m = minkowski();
    for (const auto& y : kYs) {
      const auto G = spray(m, {0.7, -0.2}, y);
      CHECK(std::abs(G.G[0]) < 1e-14);
      CHECK(std::abs(G.G[1]) < 1e-14);
    }
  }

  TEST_CASE("cone spray, Riemann tensor, K and S at x = (1, 0), y = (1, 1)") {
    const MetricField m = ConeMetric::unit_slope(1.0).metric();
    const Vec2<double> x{1.0, 0.0}, y{1.0, 1.0};
    const auto G = spray(m, x, y);
    CHECK(G.G[0] == Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(G.G[1] == Approx(2.0 / 3.0).epsilon(1e-12));
    const auto R = riemann(m, x, y);
    CHECK(R.R[0][0] == Approx(-4.0 / 9.0).epsilon(1e-12));
    CHECK(R.R[0][1] == Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(R.R[1][0] == Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(R.R[1][1] == Approx(-2.0 / 9.0).epsilon(1e-12));
    CHECK(flag_curvature(m, x, y, {1.0, 0.0}) == Approx(-2.0 / 27.0).epsilon(1e-12));
    CHECK(flag_curvature(m, x, y) == Approx(-2.0 / 27.0).epsilon(1e-12));
    CHECK(s_curvature(m, x, y) == Approx(-1.0).epsilon(1e-12));
    CHECK(riemann_reconstruction_check(m, x, y).relative < 1e-7);
  }

  TEST_CASE("y2 = 0 gives zero spray, curvature and S") {
    const MetricField m = ConeMetric::unit_slope(1.0).metric();
    for (double x1 : {0.5, 1.0, 2.0}) {
      const Vec2<double> x{x1, 0.1}, y{1.3, 0.0};
      const auto G = spray(m, x, y);
      CHECK(std::abs(G.G[0]) < 1e-14);
      CHECK(std::abs(G.G[1]) < 1e-14);
      const auto R = riemann(m, x, y);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(R.R[i][j]) < 1e-13);
      CHECK(std::abs(flag_curvature(m, x, y, {0.2, 1.0})) < 1e-13);
      CHECK(std::abs(s_curvature(m, x, y)) < 1e-13);
      CHECK(riemann_reconstruction_check(m, x, y).absolute < 1e-13);
    }
  }

  TEST_CASE("flag curvature does not depend on the transverse vector") {
    const MetricField m = ConeMetric::minimal(1.0).metric();
    const Vec2<double> x{1.2, 0.0}, y{0.8, 0.6};
    const double K = flag_curvature(m, x, y);
    for (const Vec2<double>& u : {Vec2<double>{1.0, 0.0}, Vec2<double>{0.0, 1.0}, Vec2<double>{-2.0, 0.5}})
      CHECK(flag_curvature(m, x, y, u) == Approx(K).epsilon(1e-10));
  }

  TEST_CASE("parallel flags are degenerate") {
    const MetricField m = ConeMetric::unit_slope(1.0).metric();
    CHECK_THROWS_AS(flag_curvature(m, {1.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}), DegenerateError);
  }

  TEST_CASE("flag curvature is symmetric in the direction") {
    // Reversible metric: both y and -y lie in the domain.
    const MetricField riem = cone_riemannian_metric(1.5, 0.5);
    // The cone closed form is even in y as well.
    const ConeMetric cone = ConeMetric::unit_slope(1.0);
    for (const auto& x : kXs) {
      for (const auto& y : kYs) {
        const Vec2<double> ny{-y[0], -y[1]};
        CHECK(flag_curvature(riem, x, y) == Approx(flag_curvature(riem, x, ny)).epsilon(1e-10));
        CHECK(cone.flag_curvature(x, y) == Approx(cone.flag_curvature(x, ny)).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("homogeneity ladder") {
    const MetricField m = ConeMetric::unit_slope(1.0).metric();
    for (const auto& x : kXs) {
      for (const auto& y : kYs) {
        const double F = m(x, y);
        const auto g = fundamental_tensor(m, x, y).g;
        const auto G = spray(m, x, y).G;
        const double K = flag_curvature(m, x, y);
        for (double lam : {0.5, 2.0, 3.7}) {
          const Vec2<double> ly{lam * y[0], lam * y[1]};
          CHECK(m(x, ly) == Approx(lam * F).epsilon(1e-12));
          if (lam == 3.7) continue;
          const auto gl = fundamental_tensor(m, x, ly).g;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(gl[i][j] == Approx(g[i][j]).epsilon(1e-10));
          const auto Gl = spray(m, x, ly).G;
          for (int i = 0; i < 2; ++i) CHECK(Gl[i] == Approx(lam * lam * G[i]).epsilon(1e-10));
          CHECK(flag_curvature(m, x, ly) == Approx(K).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("outside the conic domain is a domain error") {
    const MetricField m = ConeMetric::unit_slope(1.0).metric();
    CHECK_FALSE(m.inside({1.0, 0.0}, {-1.0, 0.0}));
    CHECK_THROWS_AS(fundamental_tensor(m, {1.0, 0.0}, {-1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(spray(m, {1.0, 0.0}, {0.0, 1.0}), DomainError);
  }

  TEST_CASE("indefinite Hessians raise a definiteness error with eigenvalues") {
    const MetricField bad("indefinite", [](const auto&, const auto& y) { return kropina::sqrt(sq(y[0]) - 0.5 * sq(y[1]) + 0.0 * y[0]); });
    try {
      (void)fundamental_tensor(bad, {1.0, 0.0}, {1.0, 0.5});
      FAIL("no definiteness error");
    } catch (const DefinitenessError& e) {
      REQUIRE(e.eigenvalues().size() == 2);
      CHECK(e.eigenvalues()[0] < 0.0);
    }
  }

  TEST_CASE("distortion") {
    // kropina::sqrt(det g) = 4 at y = (1, 0) with a caller-supplied sigma = 3 kropina::sqrt(3) / 2.
    const MetricField m = ConeMetric::unit_slope(1.0).metric().with_density(
        VolumeDensity([](const auto& x) { return 0.0 * x[0] + 1.5 * std::sqrt(3.0); }));
    CHECK(distortion(m, {1.0, 0.0}, {1.0, 0.0}) == Approx(std::log(8.0 / (3.0 * std::sqrt(3.0)))).epsilon(1e-12));
    // The cone's own BH density gives tau = ln(1/sqrt 2) there.
    const MetricField own = ConeMetric::unit_slope(1.0).metric();
    CHECK(distortion(own, {1.0, 0.0}, {1.0, 0.0}) == Approx(std::log(1.0 / std::sqrt(2.0))).epsilon(1e-12));
    // tau is 0-homogeneous in y.
    for (const auto& y : kYs) {
      CHECK(distortion(own, {1.4, 0.0}, {2.0 * y[0], 2.0 * y[1]}) ==
            Approx(distortion(own, {1.4, 0.0}, y)).epsilon(1e-12));
    }
    // No density attached: configuration error.
    const MetricField bare("bare", [](const auto&, const auto& y) { return kropina::sqrt(sq(y[0]) + sq(y[1])); });
    CHECK_THROWS_AS(distortion(bare, {1.0, 0.0}, {1.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(s_curvature(bare, {1.0, 0.0}, {1.0, 0.0}), ConfigError);
  }

  TEST_CASE("curvature report") {
    const MetricField m = ConeMetric::unit_slope(1.0).metric();
    const auto r = curvature_report(m, {1.0, 0.0}, {1.0, 1.0});
    CHECK(r.F == Approx(3.0));
    CHECK(r.K == Approx(-2.0 / 27.0));
    CHECK(r.S == Approx(-1.0));
    CHECK(std::isfinite(r.tau));
    CHECK(r.G[0] == Approx(-1.0 / 3.0));
  }

  TEST_CASE("Busemann-Hausdorff coefficients") {
    const auto kropina = [](double s) { return 1.0 / s; };
    CHECK(bh_volume_coefficient(kropina, 2, 1.0) == Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(bh_volume_coefficient(kropina, 2, 2.0) - 0.5) < 1e-10);
    for (int n : {2, 3, 4}) CHECK(bh_volume_coefficient([](double) { return 1.0; }, n, 0.8) == Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(bh_volume_coefficient(kropina, 3, 1.0), DegenerateError);
    CHECK(kropina_bh_coefficient(0.25) == Approx(8.0));
    // Randers phi(s) = 1 + s, n = 2: (1 - b^2)^{3/2}.
    CHECK(bh_volume_coefficient([](double s) { return 1.0 + s; }, 2, 0.5) ==
          Approx(std::pow(0.75, 1.5)).epsilon(1e-10));
  }
}

TEST_SUITE("cone") {
  TEST_CASE("generic pipeline matches closed forms on the 5x5x5 grid") {
    for (const ConeMetric& cone : {ConeMetric::unit_slope(1.0), ConeMetric::minimal(0.7)}) {
      const MetricField m = cone.metric();
      double Kmax = 0.0, Smax = 0.0;
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
          for (int c = 0; c < 5; ++c) {
            const Vec2<double> x{0.5 + 0.375 * a, 0.0}, y{0.5 + 0.375 * b, -1.0 + 0.5 * c};
            Kmax = std::max(Kmax, std::abs(cone.flag_curvature(x, y)));
            Smax = std::max(Smax, std::abs(cone.s_curvature(x, y)));
          }
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
          for (int c = 0; c < 5; ++c) {
            const Vec2<double> x{0.5 + 0.375 * a, 0.0}, y{0.5 + 0.375 * b, -1.0 + 0.5 * c};
            const auto t = fundamental_tensor(m, x, y);
            const Mat2 g = cone.g(x, y), gi = cone.g_inv(x, y), R = cone.riemann(x, y);
            const auto Rp = riemann(m, x, y).R;
            const auto G = spray(m, x, y).G;
            for (int i = 0; i < 2; ++i) {
              CHECK(std::abs(G[i] - cone.spray(x, y)[i]) <= 1e-8 * std::max(std::abs(cone.spray(x, y)[i]), 1e-3));
              for (int j = 0; j < 2; ++j) {
                CHECK(t.g[i][j] == Approx(g[i][j]).epsilon(1e-10));
                CHECK(t.g_inv[i][j] == Approx(gi[i][j]).epsilon(1e-10));
                CHECK(std::abs(Rp[i][j] - R[i][j]) <= 1e-8 * std::max(std::abs(R[i][j]), 1e-3));
              }
            }
            CHECK(t.det_g == Approx(cone.det_g(x, y)).epsilon(1e-10));
            CHECK(std::abs(flag_curvature(m, x, y) - cone.flag_curvature(x, y)) <=
                  1e-8 * std::max(std::abs(cone.flag_curvature(x, y)), 1e-3 * Kmax));
            CHECK(std::abs(s_curvature(m, x, y) - cone.s_curvature(x, y)) <=
                  1e-8 * std::max(std::abs(cone.s_curvature(x, y)), 1e-3 * Smax));
            CHECK(riemann_reconstruction_check(m, x, y).relative < 1e-7);
          }
    }
  }

  TEST_CASE("closed forms for the printed and minimal members") {
    const ConeMetric printed = ConeMetric::unit_slope(1.0);
    CHECK(printed.p() == 2.0);
    CHECK(printed.q() == 1.0);
    const ConeMetric minimal = ConeMetric::minimal(1.0);
    const ConeMetric from = ConeMetric::from_slope(1.0 / std::sqrt(2.0), 1.0);
    CHECK(from.p() == Approx(minimal.p()));
    CHECK(from.q() == Approx(minimal.q()));
    const Vec2<double> x{1.0, 0.0}, y{1.0, 1.0};
    CHECK(minimal.F(x, y) == Approx(2.0));
    CHECK(minimal.flag_curvature(x, y) == Approx(-0.140625));
    CHECK(minimal.s_curvature(x, y) == Approx(-0.75));
    CHECK(minimal.bh_density(x) == Approx(1.5 * std::sqrt(3.0)));
    CHECK(printed.bh_density(x) == Approx(4.0 * std::sqrt(2.0)));
  }

  TEST_CASE("K is never positive") {
    const ConeMetric cone = ConeMetric::minimal(2.0);
    for (double x1 : {0.2, 1.0, 4.0})
      for (double y2 : {-3.0, -0.1, 0.0, 0.5, 2.0}) CHECK(cone.flag_curvature({x1, 0.0}, {0.7, y2}) <= 0.0);
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(ConeMetric(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ConeMetric(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(ConeMetric::from_slope(-1.0), DomainError);
    CHECK_THROWS_AS(ConeMetric::unit_slope().F({1.0, 0.0}, {-1.0, 1.0}), DomainError);
  }

  TEST_CASE("negative b flips the conic domain") {
    const MetricField m = ConeMetric::unit_slope(-1.0).metric();
    CHECK(m.inside({1.0, 0.0}, {-1.0, 0.3}));
    CHECK_FALSE(m.inside({1.0, 0.0}, {1.0, 0.3}));
    CHECK(m({1.0, 0.0}, {-1.0, 1.0}) == Approx(3.0));
  }
}
