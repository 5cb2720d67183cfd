#include <cmath>
#include <random>

#include "doctest.h"
#include "kropina/ambient.hpp"

using namespace kropina;
using doctest::Approx;

TEST_SUITE("ambient") {
  TEST_CASE("examples") {
    CHECK(ambient_eval(AmbientKropina(OneFormSpec::along_x3(1.0)), {0, 0, 1}, {0, 0, 1}) == Approx(1.0));
    CHECK(ambient_eval(AmbientKropina(OneFormSpec::along_x1(1.0)), {0, 0, 1}, {1, 1, 0}) == Approx(2.0));
    CHECK_THROWS_AS(ambient_eval(AmbientKropina(OneFormSpec::along_x1(1.0)), {0, 0, 1}, {-1, 0, 0}), DomainError);
    CHECK_THROWS_AS(ambient_eval(AmbientKropina(OneFormSpec::along_x3(1.0)), {0, 0, 1}, {1, 0, 0}), DomainError);
    CHECK_THROWS_AS(ambient_eval(AmbientKropina(OneFormSpec::along_x3(1.0)), {0, 0, -1}, {0, 0, 1}), DomainError);
    CHECK_THROWS_AS(ambient_eval(AmbientKropina(OneFormSpec::along_x3(1.0)), {0, 0, 0}, {0, 0, 1}), DomainError);
  }

  TEST_CASE("hyperbolic metric is invariant under joint scaling") {
    for (double lam : {0.5, 2.0, 7.0}) {
      CHECK(HyperbolicMetric::eval({0.3, 0.1, lam * 1.2}, {lam * 1.0, lam * -2.0, lam * 0.5}) ==
            Approx(HyperbolicMetric::eval({0.3, 0.1, 1.2}, {1.0, -2.0, 0.5})).epsilon(1e-14));
    }
    CHECK(HyperbolicMetric::eval({0, 0, 2.0}, {3.0, 4.0, 0.0}) == Approx(2.5));
  }

  TEST_CASE("ambient metric is position independent and 1-homogeneous") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const OneFormSpec& beta : {OneFormSpec::along_x1(1.0), OneFormSpec::tilted(2.0, 1.0), OneFormSpec::along_x3(0.5)}) {
      const AmbientKropina k(beta);
      for (int n = 0; n < 25; ++n) {
        Vec3<double> y{u(rng), u(rng), u(rng)};
        const auto& l = beta.direction();
        if (l[0] * y[0] + l[1] * y[1] + l[2] * y[2] < 0.0) y = {-y[0], -y[1], -y[2]};
        const double ref = ambient_eval(k, {0.0, 0.0, 1.0}, y);
        for (double x3 : {0.5, 2.0}) CHECK(std::abs(ambient_eval(k, {u(rng), u(rng), x3}, y) - ref) <= 1e-14 * ref);
        for (double lam : {0.3, 4.0}) {
          CHECK(ambient_eval(k, {0.0, 0.0, 1.0}, {lam * y[0], lam * y[1], lam * y[2]}) ==
                Approx(lam * ref).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("one-form specs") {
    CHECK(OneFormSpec::along_x1(2.0).label() == "x1");
    CHECK(OneFormSpec::along_x3(2.0).label() == "x3");
    CHECK(OneFormSpec::parse("tilted", 1.0, 0.5).variant() == OneFormVariant::kTilted);
    CHECK(OneFormSpec::parse("x3", 1.0).variant() == OneFormVariant::kAlongX3);
    CHECK_FALSE(OneFormSpec::along_x3(1.0).rotational());
    CHECK(OneFormSpec::tilted(1.0, 0.3).rotational());
    CHECK_THROWS_AS(OneFormSpec::along_x1(0.0), ConfigError);
    CHECK_THROWS_AS(OneFormSpec::tilted(1.0, -0.1), ConfigError);
    CHECK_THROWS_AS(OneFormSpec::tilted(1.0, 2.0 * M_PI), ConfigError);
    CHECK_THROWS_AS(OneFormSpec::parse("x2", 1.0), ConfigError);
    const auto& l = OneFormSpec::tilted(1.0, M_PI / 2.0).direction();
    CHECK(std::abs(l[0]) < 1e-16);
    CHECK(l[1] == Approx(1.0));
  }

  TEST_CASE("tilted(0) evaluates like along_x1") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    const AmbientKropina a(OneFormSpec::along_x1(1.5)), t(OneFormSpec::tilted(1.5, 0.0));
    for (int n = 0; n < 20; ++n) {
      const Vec3<double> x{u(rng), u(rng), u(rng)}, y{u(rng), u(rng) - 0.5, u(rng) - 0.5};
      CHECK(ambient_eval(a, x, y) == ambient_eval(t, x, y));
      const Mat2 A{{{1.0 + u(rng), 0.2}, {0.2, 1.0 + u(rng)}}};
      const Mat32 z{{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}}};
      CHECK(beta_norm_sq(a, A, z) == Approx(beta_norm_sq(t, A, z)).epsilon(1e-15));
    }
  }

  TEST_CASE("beta norm examples") {
    // Cone f = x / sqrt 2 at x1 = 1: A = diag(3/2, 1/2), z^3 = (1, 0).
    const Mat2 A{{{1.5, 0.0}, {0.0, 0.5}}};
    const double s = 1.0 / std::sqrt(2.0);
    const Mat32 z{{{s, 0.0}, {0.0, s}, {1.0, 0.0}}};
    CHECK(beta_norm_sq(AmbientKropina(OneFormSpec::along_x3(2.0)), A, z) == Approx(4.0 * 2.0 / 3.0));
    // A = I: b^2 times the squared row of z.
    const Mat2 I{{{1.0, 0.0}, {0.0, 1.0}}};
    const Mat32 w{{{0.6, 0.8}, {0.8, -0.6}, {0.0, 0.0}}};
    CHECK(beta_norm_sq(AmbientKropina(OneFormSpec::along_x1(3.0)), I, w) == Approx(9.0));
    const Mat2 singular{{{1.0, 2.0}, {2.0, 4.0}}};
    CHECK_THROWS_AS(beta_norm_sq(AmbientKropina(OneFormSpec::along_x1(1.0)), singular, w), SingularError);
  }
}
