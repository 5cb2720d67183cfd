#include <cmath>
#include <string>

#include "doctest.h"
#include "kropina/profile.hpp"

using namespace kropina;
using doctest::Approx;

TEST_SUITE("profile") {
  TEST_CASE("factories evaluate the analytic triple") {
    const auto lin = ProfileFunction::linear(2.0, 1.0);
    CHECK(lin.at(1.5).f == Approx(4.0));
    CHECK(lin.at(1.5).df == Approx(2.0));
    CHECK(lin.at(1.5).d2f == 0.0);
    const auto poly = ProfileFunction::polynomial({1.0, 0.0, 3.0});
    CHECK(poly.at(2.0).f == Approx(13.0));
    CHECK(poly.at(2.0).df == Approx(12.0));
    CHECK(poly.at(2.0).d2f == Approx(6.0));
    const auto lg = ProfileFunction::logarithmic(2.0, 6.0);
    CHECK(lg.at(1.0).f == Approx(6.0));
    CHECK(lg.at(2.0).d2f == Approx(-0.5));
    const auto pw = ProfileFunction::power(1.0, 2.0, 0.5);
    CHECK(pw.at(3.0).f == Approx(9.5));
    const auto cone = ProfileFunction::cone(0.3);
    CHECK(cone.at(2.0).f == Approx(std::sqrt(2.0) + 0.3));
    CHECK(cone.at(2.0).df == Approx(1.0 / std::sqrt(2.0)));
  }

  TEST_CASE("generic evaluation on jets") {
    const auto lg = ProfileFunction::logarithmic(1.0, 3.0);
    const Dual x = Dual::variable(1.7, 0);
    const Dual f = lg.f(x);
    CHECK(f.grad(0) == Approx(lg.df(1.7)));
    CHECK(f.hess(0, 0) == Approx(lg.d2f(1.7)));
  }

  TEST_CASE("positivity and derivative consistency gates") {
    CHECK_THROWS_AS(ProfileFunction::linear(1.0, -0.5), DomainError);
    CHECK_THROWS_AS(ProfileFunction::logarithmic(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(ProfileFunction("wrong-derivative", [](const auto& x) { return x * x + 1.0; },
                                    [](const auto& x) { return 3.0 * x; }, [](const auto& x) { return 0.0 * x + 2.0; }),
                    ConfigError);
    CHECK_THROWS_AS(ProfileFunction("wrong-second", [](const auto& x) { return x * x + 1.0; },
                                    [](const auto& x) { return 2.0 * x; }, [](const auto& x) { return 0.0 * x + 1.0; }),
                    ConfigError);
    CHECK_NOTHROW(ProfileFunction("ok", [](const auto& x) { return x * x + 1.0; }, [](const auto& x) { return 2.0 * x; },
                                  [](const auto& x) { return 0.0 * x + 2.0; }));
  }

  TEST_CASE("working interval") {
    const auto lin = ProfileFunction::linear(1.0, 0.0);
    CHECK(lin.interval().lo == 0.1);
    CHECK(lin.interval().hi == 5.0);
    CHECK_THROWS_AS(lin.at(0.05), DomainError);
    CHECK_THROWS_AS(lin.at(5.5), DomainError);
    const auto wide = lin.with_interval({0.5, 10.0});
    CHECK(wide.at(8.0).f == Approx(8.0));
    CHECK_THROWS_AS(lin.with_interval({2.0, 1.0}), ConfigError);
  }

  TEST_CASE("spec parsing") {
    CHECK(parse_profile("linear:1.5,0.2").at(1.0).f == Approx(1.7));
    CHECK(parse_profile("poly:1,0,2").at(1.0).f == Approx(3.0));
    CHECK(parse_profile("log:1,3").at(1.0).f == Approx(3.0));
    CHECK(parse_profile("power:1,2,0.5").at(1.0).f == Approx(1.5));
    CHECK(parse_profile("cone:0").at(2.0).f == Approx(std::sqrt(2.0)));
  }

  TEST_CASE("malformed specs name the field and the column") {
    const auto message = [](const std::string& spec) {
      try {
        (void)parse_profile(spec);
      } catch (const ConfigError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    const std::string abc = message("linear:abc");
    CHECK(abc.find("slope") != std::string::npos);
    CHECK(abc.find("column 8") != std::string::npos);
    CHECK(message("linear:1,x").find("intercept") != std::string::npos);
    CHECK(message("spline:1").find("unknown profile") != std::string::npos);
    CHECK(!message("linear:1").empty());
    CHECK(!message("poly:").empty());
    CHECK(!message("power:1,2").empty());
  }
}
