#include "kropina/app/commands.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kropina/app/acceptance.hpp"
#include "kropina/app/report.hpp"
#include "kropina/cone.hpp"
#include "kropina/errors.hpp"
#include "kropina/geodesics.hpp"
#include "kropina/immersion.hpp"

namespace kropina::app {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int exit_code(const std::vector<Check>& checks) { return all_pass(checks) ? 0 : 1; }

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::vector<double> profile_x1s(const RunConfig& cfg, const ProfileFunction& p) {
  const std::vector<double> xs = cfg.x1.values();
  for (double x : xs) {
    if (!p.interval().contains(x)) {
      throw ConfigError("x1 grid value " + format_number(x) + " lies outside the profile interval [" +
                        format_number(p.interval().lo) + ", " + format_number(p.interval().hi) + "]");
    }
  }
  return xs;
}

// Minimality of the configured surface: the ODE residual for X3, max |H| otherwise.
Check configured_minimality(const RunConfig& cfg) {
  const ProfileFunction p = cfg.profile_function();
  const OneFormSpec beta = cfg.one_form();
  const auto xs = profile_x1s(cfg, p);
  double worst = 0.0;
  if (!beta.rotational()) {
    for (double x1 : xs) worst = std::max(worst, std::abs(profile_ode_residual(p, x1)));
    return at_most("", "config_minimality", worst, cfg.zero_tol,
                   "ODE form (1+2f'^2)(f'^2+3ff'')-1, profile " + cfg.profile + ", 1-form " + beta.label());
  }
  const RevolutionImmersion im(p);
  for (double x1 : xs) {
    for (int k = 0; k < 16; ++k) {
      worst = std::max(worst, std::abs(mean_curvature(im, beta, {x1, 2.0 * std::numbers::pi * k / 16.0}).H));
    }
  }
  return at_most("", "config_minimality", worst, cfg.zero_tol,
                 "max |H|, profile " + cfg.profile + ", 1-form " + beta.label());
}

}  // namespace

Format resolve_format(const RunConfig& cfg, Format fallback) {
  if (cfg.format == "csv") return Format::kCsv;
  if (cfg.format == "json") return Format::kJson;
  return fallback;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  std::vector<Check> checks;
  json timings = json::object();
  for (const CriterionResult& r : run_acceptance(cfg)) {
    checks.insert(checks.end(), r.checks.begin(), r.checks.end());
    timings[std::to_string(r.criterion.id)] = r.seconds;
  }
  checks.push_back(configured_minimality(cfg));
  if (resolve_format(cfg, Format::kJson) == Format::kCsv) {
    write_checks_csv(out, checks);
  } else {
    json j = report_json("verify", cfg, checks);
    j["meta"]["timings_seconds"] = timings;
    emit_json(out, j);
  }
  return exit_code(checks);
}

int run_curvature_table(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const ConeMetric cone = ConeMetric::from_slope(cfg.cone_slope, cfg.b);
  const MetricField m = pullback_metric(
      RevolutionImmersion(ProfileFunction::linear(cfg.cone_slope, 0.0, cfg.profile_interval)),
      OneFormSpec::along_x3(cfg.b));

  struct Row {
    Vec2<double> x, y;
    std::string status = "ok";
    double F = kNaN, G1 = kNaN, G2 = kNaN, K = kNaN, Kc = kNaN, S = kNaN, Sc = kNaN;
  };
  std::vector<Row> rows;
  double Kmax = 0.0, Smax = 0.0;
  for (double x1 : cfg.x1.values())
    for (double x2 : cfg.x2.values())
      for (double y1 : cfg.y1.values())
        for (double y2 : cfg.y2.values()) {
          Row r{{x1, x2}, {y1, y2}};
          if (!cfg.profile_interval.contains(x1)) {
            r.status = "outside_profile_interval";
          } else if (!m.inside(r.x, r.y)) {
            r.status = "outside_domain";
          } else {
            try {
              const CurvatureReport c = curvature_report(m, r.x, r.y);
              r.F = c.F;
              r.G1 = c.G[0];
              r.G2 = c.G[1];
              r.K = c.K;
              r.S = c.S;
              r.Kc = cone.flag_curvature(r.x, r.y);
              r.Sc = cone.s_curvature(r.x, r.y);
              Kmax = std::max(Kmax, std::abs(r.Kc));
              Smax = std::max(Smax, std::abs(r.Sc));
            } catch (const Error& e) {
              r.status = std::string("error: ") + e.what();
            }
          }
          rows.push_back(r);
        }

  double eK = 0.0, eS = 0.0;
  long long evaluated = 0;
  std::vector<std::vector<Cell>> cells;
  for (Row& r : rows) {
    double dK = kNaN, dS = kNaN;
    if (r.status == "ok") {
      dK = std::abs(r.K - r.Kc) / std::max(std::abs(r.Kc), 1e-3 * Kmax + 1e-300);
      dS = std::abs(r.S - r.Sc) / std::max(std::abs(r.Sc), 1e-3 * Smax + 1e-300);
      if (dK > cfg.tol || dS > cfg.tol) r.status = "mismatch";
      eK = std::max(eK, dK);
      eS = std::max(eS, dS);
      ++evaluated;
    }
    cells.push_back({r.x[0], r.x[1], r.y[0], r.y[1], r.F, r.G1, r.G2, r.K, r.Kc, dK, r.S, r.Sc, dS, r.status});
  }
  const std::vector<std::string> columns{"x1",        "x2",       "y1",        "y2",         "F",
                                         "G1",        "G2",       "K_pipeline", "K_closed",  "K_rel_err",
                                         "S_pipeline", "S_closed", "S_rel_err", "status"};
  std::vector<Check> checks{
      at_most("", "K_max_rel_err", eK, cfg.tol, "pullback pipeline vs cone closed form"),
      at_most("", "S_max_rel_err", eS, cfg.tol, "pullback pipeline vs cone closed form"),
      info("", "rows_evaluated", static_cast<double>(evaluated)),
  };
  if (resolve_format(cfg, Format::kCsv) == Format::kCsv) {
    CsvWriter w(out);
    w.header(columns);
    for (const auto& c : cells) w.row(c);
  } else {
    json jr = json::array();
    for (const auto& c : cells) {
      json row = json::array();
      for (const Cell& cell : c) std::visit([&row](const auto& v) { row.push_back(v); }, cell);
      jr.push_back(row);
    }
    emit_json(out, report_json("curvature-table", cfg, checks, {{"columns", columns}, {"rows", jr}}));
  }
  return exit_code(checks);
}

int run_geodesic(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const MetricField m = ConeMetric::from_slope(cfg.cone_slope, cfg.b).metric();
  IntegratorOptions opts;
  opts.adaptive = cfg.adaptive;
  const TrajectoryRecord rec = integrate(m, cfg.start, cfg.direction, cfg.t_max, cfg.dt, opts);
  const Termination& t = rec.termination;
  const double F0 = rec.F.empty() ? kNaN : rec.F.front();
  std::vector<Check> checks{
      info("", "max_F_drift", rec.max_F_drift, "relative to F at the start"),
      info("", "samples", static_cast<double>(rec.samples.size())),
      holds("", "no_step_failure", t.kind != TerminationKind::kStepFailure, t.which),
  };
  if (resolve_format(cfg, Format::kCsv) == Format::kCsv) {
    CsvWriter w(out);
    w.header({"t", "x1", "x2", "y1", "y2", "F", "F_drift"});
    for (std::size_t k = 0; k < rec.samples.size(); ++k) {
      const GeodesicState& s = rec.samples[k];
      const double drift = std::isfinite(rec.F[k]) && std::isfinite(F0) ? (rec.F[k] - F0) / F0 : kNaN;
      w.row({s.t, s.x[0], s.x[1], s.xdot[0], s.xdot[1], rec.F[k], drift});
    }
    w.comment("termination kind=" + to_string(t.kind) + " which=" + (t.which.empty() ? "-" : t.which) +
              " t_stop=" + format_number(t.t_stop) + " t_boundary=" + format_number(t.t_boundary) +
              " t_extrapolated=" + format_number(t.t_extrapolated));
  } else {
    json traj = json::array();
    for (std::size_t k = 0; k < rec.samples.size(); ++k) {
      const GeodesicState& s = rec.samples[k];
      traj.push_back({s.t, s.x[0], s.x[1], s.xdot[0], s.xdot[1], rec.F[k]});
    }
    json term = {{"kind", to_string(t.kind)},
                 {"which", t.which},
                 {"t_stop", t.t_stop},
                 {"t_boundary", t.t_boundary},
                 {"t_extrapolated", t.t_extrapolated}};
    emit_json(out, report_json("geodesic", cfg, checks,
                               {{"columns", {"t", "x1", "x2", "y1", "y2", "F"}},
                                {"rows", traj},
                                {"termination", term}}));
  }
  return exit_code(checks);
}

int run_volume(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const ProfileFunction p = cfg.profile_function();
  const OneFormSpec beta = cfg.one_form();
  const RevolutionImmersion im(p);
  const auto kropina = [](double s) { return 1.0 / s; };
  const std::vector<std::string> columns{"x1",    "x2", "C", "E", "beta_norm_sq", "sigma_BH", "bh_quadrature",
                                         "bh_closed", "bh_rel_err"};
  std::vector<std::vector<Cell>> cells;
  double worst = 0.0;
  for (double x1 : profile_x1s(cfg, p)) {
    for (double x2 : cfg.x2.values()) {
      const PullbackData d = compute_CE(im, beta, {x1, x2});
      const double quad = bh_volume_coefficient(kropina, 2, std::sqrt(d.beta_norm_sq));
      const double closed = kropina_bh_coefficient(d.beta_norm_sq);
      const double err = std::abs(quad - closed) / closed;
      worst = std::max(worst, err);
      cells.push_back({x1, x2, d.C, d.E, d.beta_norm_sq, d.volume, quad, closed, err});
    }
  }
  std::vector<Check> checks{
      at_most("", "bh_quadrature_vs_closed", worst, 1e-10, "2 / |beta|^2 against adaptive quadrature"),
      within("", "riemannian_control", bh_volume_coefficient([](double) { return 1.0; }, 2, 0.5), 1.0, 1e-10),
  };
  if (resolve_format(cfg, Format::kJson) == Format::kCsv) {
    CsvWriter w(out);
    w.header(columns);
    for (const auto& c : cells) w.row(c);
  } else {
    json rows = json::array();
    for (const auto& c : cells) {
      json row = json::array();
      for (const Cell& cell : c) std::visit([&row](const auto& v) { row.push_back(v); }, cell);
      rows.push_back(row);
    }
    emit_json(out, report_json("volume", cfg, checks, {{"columns", columns}, {"rows", rows}}));
  }
  return exit_code(checks);
}

int run_minimality(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const ProfileFunction p = cfg.profile_function();
  const OneFormSpec beta = cfg.one_form();
  const RevolutionImmersion im(p);
  std::vector<Vec2<double>> points;
  for (double x1 : profile_x1s(cfg, p))
    for (double x2 : cfg.x2.values()) points.push_back({x1, x2});
  const MinimalityReport rep = minimality_report(im, beta, points);

  std::vector<Check> checks{
      holds("", "zero_sets_agree", rep.zero_sets_agree, "H and the contracted bracket vanish together"),
      at_most("", "bracket_over_H_ratio", rep.max_ratio_error, 1e-8, "bracket = 2 C^2 E^2 H"),
      info("", "max_abs_H", rep.max_abs_H),
      info("", "max_abs_bracket", rep.max_abs_bracket),
      info("", "minimal", rep.minimal ? 1.0 : 0.0),
  };
  if (!beta.rotational()) {
    double ode = 0.0;
    for (const auto& x : points) ode = std::max(ode, std::abs(profile_ode_residual(p, x[0])));
    checks.push_back(info("", "max_ode_residual", ode));
  }
  if (resolve_format(cfg, Format::kJson) == Format::kCsv) {
    CsvWriter w(out);
    w.header({"x1", "x2", "H", "bracket", "expected_ratio", "observed_ratio"});
    for (const auto& s : rep.samples) w.row({s.x[0], s.x[1], s.H, s.bracket, s.expected_ratio, s.observed_ratio});
  } else {
    json samples = json::array();
    for (const auto& s : rep.samples) samples.push_back({s.x[0], s.x[1], s.H, s.bracket, s.expected_ratio, s.observed_ratio});
    json cos2 = json::array();
    for (const auto& [x1, fit] : rep.cos2) {
      cos2.push_back({{"x1", x1},
                      {"normalized", fit.normalized},
                      {"closed", cos2_coefficients_closed(p.at(x1))},
                      {"fit_residual", fit.fit_residual}});
    }
    emit_json(out, report_json("minimality", cfg, checks,
                               {{"columns", {"x1", "x2", "H", "bracket", "expected_ratio", "observed_ratio"}},
                                {"rows", samples},
                                {"cos2", cos2},
                                {"variant", rep.variant},
                                {"profile", rep.profile}}));
  }
  return exit_code(checks);
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out) {
  if (name == "verify") return run_verify(cfg, out);
  if (name == "curvature-table") return run_curvature_table(cfg, out);
  if (name == "geodesic") return run_geodesic(cfg, out);
  if (name == "volume") return run_volume(cfg, out);
  if (name == "minimality") return run_minimality(cfg, out);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace kropina::app
