#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "kropina/app/acceptance.hpp"
#include "kropina/app/commands.hpp"
#include "kropina/app/config.hpp"
#include "kropina/app/report.hpp"

using namespace kropina;
using namespace kropina::app;
using nlohmann::json;

namespace {

std::string config_error(RunConfig& cfg, const std::string& text) {
  try {
    apply_config_text(cfg, text, "test.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_SUITE("app") {
  TEST_CASE("ranges") {
    CHECK(Range{1.0, 2.0, 3}.values() == std::vector<double>{1.0, 1.5, 2.0});
    CHECK(Range{0.7, 9.0, 1}.values() == std::vector<double>{0.7});
  }

  TEST_CASE("config text round-trips") {
    RunConfig cfg;
    apply_config_text(cfg,
                      "# comment\n"
                      "b = 0.3\n"
                      "variant = tilted   # trailing comment\n"
                      "theta = 0.1\n"
                      "profile = log:1,3\n"
                      "x1 = 0.2, 4, 7\n"
                      "start = 1.5, 0.25\n"
                      "adaptive = true\n"
                      "seed = 42\n");
    CHECK(cfg.b == 0.3);
    CHECK(cfg.variant == "tilted");
    CHECK(cfg.x1 == Range{0.2, 4.0, 7});
    CHECK(cfg.start == Vec2<double>{1.5, 0.25});
    CHECK(cfg.adaptive);
    CHECK(cfg.seed == 42u);
    RunConfig back;
    apply_config_text(back, to_config_text(cfg));
    CHECK(back == cfg);
    cfg.tol = 1.0 / 3.0;
    RunConfig again;
    apply_config_text(again, to_config_text(cfg));
    CHECK(again.tol == cfg.tol);
    CHECK_NOTHROW(validate(cfg));
    CHECK(lines(to_config_text(cfg)).size() == config_keys().size());
  }

  TEST_CASE("config errors name the source, key and column") {
    RunConfig cfg;
    const std::string unknown = config_error(cfg, "b = 1\n\nbogus = 2\n");
    CHECK(unknown.find("test.cfg:3") != std::string::npos);
    CHECK(unknown.find("bogus") != std::string::npos);
    const std::string range = config_error(cfg, "x1 = 0.5, oops, 3\n");
    CHECK(range.find("x1") != std::string::npos);
    CHECK(range.find("column") != std::string::npos);
    CHECK(!config_error(cfg, "b 1\n").empty());
    CHECK(!config_error(cfg, "adaptive = maybe\n").empty());
    CHECK(!config_error(cfg, "seed = -4\n").empty());
    CHECK_THROWS_AS(apply_config_file(cfg, "/nonexistent/kropina.cfg"), ConfigError);
  }

  TEST_CASE("cross-field validation") {
    const auto invalid = [](auto mutate) {
      RunConfig cfg;
      mutate(cfg);
      try {
        validate(cfg);
      } catch (const ConfigError&) {
        return true;
      }
      return false;
    };
    CHECK(invalid([](RunConfig& c) { c.theta = 7.0; }));
    CHECK(invalid([](RunConfig& c) { c.b = 0.0; }));
    CHECK(invalid([](RunConfig& c) { c.variant = "x2"; }));
    CHECK(invalid([](RunConfig& c) { c.profile = "linear:abc"; }));
    CHECK(invalid([](RunConfig& c) { c.dt = 0.0; }));
    CHECK(invalid([](RunConfig& c) { c.x1 = {1.0, 2.0, 0}; }));
    CHECK(invalid([](RunConfig& c) { c.format = "xml"; }));
    CHECK_FALSE(invalid([](RunConfig&) {}));
  }

  TEST_CASE("check builders") {
    CHECK(within("1", "a", 1.0, 1.05, 0.1).status == Status::kPass);
    CHECK(within("1", "a", 1.0, 1.5, 0.1).status == Status::kFail);
    CHECK(within("1", "a", std::nan(""), 1.0, 0.1).status == Status::kFail);
    CHECK(at_most("1", "b", -1e-12, 1e-10).status == Status::kPass);
    CHECK(at_most("1", "b", 1e-9, 1e-10).status == Status::kFail);
    CHECK(at_least("1", "c", 0.2, 0.1).status == Status::kPass);
    CHECK(at_least("1", "c", 0.1, 0.1).status == Status::kFail);
    CHECK(holds("1", "d", true).observed == 1.0);
    CHECK(info("", "e", 3.0).status == Status::kInfo);
    CHECK(all_pass({within("1", "a", 1.0, 1.0, 0.0), info("", "e", 3.0)}));
    CHECK_FALSE(all_pass({holds("1", "d", false)}));
  }

  TEST_CASE("check JSON") {
    const json j = to_json(within("4", "spot", 0.5, 0.25, 1e-3, "why"));
    CHECK(j["check"] == "spot");
    CHECK(j["status"] == "fail");
    CHECK(j["comparison"] == "abs_diff");
    CHECK(j["observed"] == 0.5);
    CHECK(j["criterion"] == "4");
    CHECK(j["detail"] == "why");
    const json n = to_json(info("", "nan", std::numeric_limits<double>::quiet_NaN()));
    CHECK(n.dump().find("\"observed\":null") != std::string::npos);
    CHECK_FALSE(n.contains("criterion"));
    const json r = report_json("verify", RunConfig{}, {holds("1", "x", true), info("", "y", 1.0)});
    CHECK(r["meta"]["tool"] == "kropina");
    CHECK(r["meta"]["version"] == kToolVersion);
    CHECK(r["summary"]["total"] == 2);
    CHECK(r["summary"]["passed"] == 1);
    CHECK(r["summary"]["info"] == 1);
    CHECK(r["summary"]["status"] == "pass");
    CHECK(r["config"]["variant"] == "x3");
  }

  TEST_CASE("numbers and CSV") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    std::ostringstream out;
    CsvWriter w(out);
    w.comment("hello");
    w.header({"a", "b", "c"});
    w.row({1.5, 7LL, std::string("ok")});
    CHECK(out.str() == "# hello\na,b,c\n1.5,7,ok\n");
    CHECK_THROWS(w.row({1.0}));
    std::ostringstream checks;
    write_checks_csv(checks, {within("2", "n", 1.0, 1.0, 0.0)});
    CHECK(lines(checks.str()).size() == 2);
  }

  TEST_CASE("verify passes on defaults and fails on a non-minimal profile") {
    RunConfig cfg;
    std::ostringstream out;
    CHECK(run_verify(cfg, out) == 0);
    const json j = json::parse(out.str());
    CHECK(j["summary"]["status"] == "pass");
    CHECK(j["meta"]["timings_seconds"].size() == 8);
    cfg.profile = "linear:1,0";
    std::ostringstream bad;
    CHECK(run_verify(cfg, bad) == 1);
    CHECK(json::parse(bad.str())["summary"]["status"] == "fail");
  }

  TEST_CASE("curvature table") {
    RunConfig cfg;
    std::ostringstream out;
    CHECK(run_curvature_table(cfg, out) == 0);
    const auto rows = lines(out.str());
    CHECK(rows.front() == "x1,x2,y1,y2,F,G1,G2,K_pipeline,K_closed,K_rel_err,S_pipeline,S_closed,S_rel_err,status");
    CHECK(rows.size() == 1 + 5 * 1 * 5 * 5);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].substr(rows[i].rfind(',') + 1) == "ok");
    cfg.format = "json";
    std::ostringstream js;
    CHECK(run_curvature_table(cfg, js) == 0);
    CHECK(json::parse(js.str())["rows"].size() == 125);
  }

  TEST_CASE("geodesic trajectory CSV") {
    RunConfig cfg;
    cfg.direction = {-1.0, 0.0};
    cfg.t_max = 2.0;
    std::ostringstream out;
    CHECK(run_geodesic(cfg, out) == 0);
    const auto rows = lines(out.str());
    CHECK(rows.front() == "t,x1,x2,y1,y2,F,F_drift");
    CHECK(rows.back().rfind("# termination kind=boundary_hit", 0) == 0);
    CHECK(rows.back().find("t_boundary=0.9989999") != std::string::npos);
  }

  TEST_CASE("volume and minimality reports") {
    RunConfig cfg;
    std::ostringstream vol;
    CHECK(run_volume(cfg, vol) == 0);
    const json v = json::parse(vol.str());
    CHECK(v["columns"].size() == 9);
    CHECK_FALSE(v["rows"].empty());
    std::ostringstream mini;
    CHECK(run_minimality(cfg, mini) == 0);
    const json m = json::parse(mini.str());
    CHECK(m["variant"] == "x3");
    CHECK(m["summary"]["status"] == "pass");
    CHECK_THROWS_AS(run_command("frobnicate", cfg, mini), ConfigError);
  }

  TEST_CASE("acceptance battery") {
    CHECK(acceptance_criteria().size() == 8);
    CHECK(battery_profiles().size() == 7);
    const CriterionResult r = run_criterion(1, RunConfig{});
    CHECK(r.criterion.id == 1);
    CHECK_FALSE(r.checks.empty());
    CHECK(all_pass(r.checks));
    CHECK_THROWS(run_criterion(9, RunConfig{}));
  }
}
