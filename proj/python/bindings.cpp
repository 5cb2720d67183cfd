#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "kropina/ambient.hpp"
#include "kropina/app/commands.hpp"
#include "kropina/app/config.hpp"
#include "kropina/app/report.hpp"
#include "kropina/cone.hpp"
#include "kropina/geodesics.hpp"
#include "kropina/immersion.hpp"

namespace py = pybind11;
using namespace kropina;

namespace {

py::dict pullback_dict(const PullbackData& d) {
  py::dict out;
  out["A"] = d.A;
  out["C"] = d.C;
  out["C_closed"] = d.C_closed;
  out["E"] = d.E;
  out["E_closed"] = d.E_closed;
  out["volume"] = d.volume;
  out["beta_norm_sq"] = d.beta_norm_sq;
  return out;
}

py::dict mean_curvature_dict(const MeanCurvature& m) {
  py::dict out;
  out["H"] = m.H;
  out["volume"] = m.volume;
  out["hessian_term"] = m.hessian_term;
  out["mixed_term"] = m.mixed_term;
  out["point_term"] = m.point_term;
  return out;
}

ResidualPipeline pipeline_from(const std::string& name) {
  if (name == "mean_curvature") return ResidualPipeline::kMeanCurvature;
  if (name == "bracket") return ResidualPipeline::kBracket;
  throw ConfigError("pipeline must be 'mean_curvature' or 'bracket' (got '" + name + "')");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kropina surfaces of revolution: metrics, curvature, minimality and geodesics.";
  m.attr("__version__") = app::kToolVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<DegenerateError>(m, "DegenerateError", base);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ConeMetric>(m, "ConeMetric")
      .def(py::init<double, double, double>(), py::arg("p"), py::arg("q"), py::arg("b") = 1.0)
      .def_static("unit_slope", &ConeMetric::unit_slope, py::arg("b") = 1.0)
      .def_static("minimal", &ConeMetric::minimal, py::arg("b") = 1.0)
      .def_static("from_slope", &ConeMetric::from_slope, py::arg("slope"), py::arg("b") = 1.0)
      .def_property_readonly("p", &ConeMetric::p)
      .def_property_readonly("q", &ConeMetric::q)
      .def_property_readonly("b", &ConeMetric::b)
      .def("F", &ConeMetric::F, py::arg("x"), py::arg("y"))
      .def("g", &ConeMetric::g, py::arg("x"), py::arg("y"))
      .def("spray", &ConeMetric::spray, py::arg("x"), py::arg("y"))
      .def("riemann", &ConeMetric::riemann, py::arg("x"), py::arg("y"))
      .def("flag_curvature", &ConeMetric::flag_curvature, py::arg("x"), py::arg("y"))
      .def("s_curvature", &ConeMetric::s_curvature, py::arg("x"), py::arg("y"))
      .def("bh_density", &ConeMetric::bh_density, py::arg("x"))
      .def("curvature", [](const ConeMetric& c, const Vec2<double>& x, const Vec2<double>& y) {
        // Generic pipeline values, for comparison with the closed forms above.
        const MetricField f = c.metric();
        py::dict out;
        out["K"] = flag_curvature(f, x, y);
        out["S"] = s_curvature(f, x, y);
        return out;
      }, py::arg("x"), py::arg("y"));

  py::class_<OneFormSpec>(m, "OneForm")
      .def_static("along_x1", &OneFormSpec::along_x1, py::arg("b") = 1.0)
      .def_static("tilted", &OneFormSpec::tilted, py::arg("b"), py::arg("theta"))
      .def_static("along_x3", &OneFormSpec::along_x3, py::arg("b") = 1.0)
      .def_static("parse", &OneFormSpec::parse, py::arg("variant"), py::arg("b") = 1.0, py::arg("theta") = 0.0)
      .def_property_readonly("b", &OneFormSpec::b)
      .def_property_readonly("theta", &OneFormSpec::theta)
      .def_property_readonly("rotational", &OneFormSpec::rotational)
      .def("label", &OneFormSpec::label)
      .def("__repr__", [](const OneFormSpec& s) { return "OneForm(" + s.label() + ", b=" + app::format_number(s.b()) + ")"; });

  py::class_<ProfileFunction>(m, "Profile")
      .def(py::init([](const std::string& spec, double lo, double hi) { return parse_profile(spec, Interval{lo, hi}); }),
           py::arg("spec"), py::arg("lo") = 0.1, py::arg("hi") = 5.0)
      .def_property_readonly("spec", &ProfileFunction::spec)
      .def("at", [](const ProfileFunction& p, double x1) {
        const ProfileValues v = p.at(x1);
        return py::make_tuple(v.f, v.df, v.d2f);
      }, py::arg("x1"))
      .def("ode_residual", [](const ProfileFunction& p, double x1) { return profile_ode_residual(p, x1); }, py::arg("x1"));

  py::class_<RevolutionImmersion>(m, "Surface")
      .def(py::init<ProfileFunction>(), py::arg("profile"))
      .def("pullback", [](const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x) {
        return pullback_dict(compute_CE(im, beta, x));
      }, py::arg("beta"), py::arg("x"))
      .def("F", [](const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x, const Vec2<double>& y) {
        const MetricField f = pullback_metric(im, beta);
        if (!f.inside(x, y)) throw DomainError("pullback metric", y[0], "direction outside the conic domain");
        return f(x, y);
      }, py::arg("beta"), py::arg("x"), py::arg("y"))
      .def("mean_curvature", [](const RevolutionImmersion& im, const OneFormSpec& beta, const Vec2<double>& x) {
        return mean_curvature_dict(mean_curvature(im, beta, x));
      }, py::arg("beta"), py::arg("x"))
      .def("bracket", &minimality_residual_bracket, py::arg("beta"), py::arg("x"))
      .def("cos2_coefficients", [](const RevolutionImmersion& im, const OneFormSpec& beta, double x1) {
        const Cos2Polynomial fit = extract_cos2_polynomial(im, beta, x1);
        py::dict out;
        out["raw"] = fit.raw;
        out["normalized"] = fit.normalized;
        out["fit_residual"] = fit.fit_residual;
        return out;
      }, py::arg("beta"), py::arg("x1"));

  m.def("ambient_eval", [](const OneFormSpec& beta, const Vec3<double>& x, const Vec3<double>& y) {
    return ambient_eval(AmbientKropina(beta), x, y);
  }, py::arg("beta"), py::arg("x"), py::arg("y"));

  m.def("bisect_minimal_slope", [](const OneFormSpec& beta, const std::string& pipeline, double lo, double hi, double tol) {
    return bisect_minimal_slope(beta, pipeline_from(pipeline), lo, hi, tol);
  }, py::arg("beta"), py::arg("pipeline") = "mean_curvature", py::arg("lo") = 0.3, py::arg("hi") = 1.2,
        py::arg("tol") = 1e-10);

  m.def("integrate", [](const ConeMetric& cone, const Vec2<double>& x0, const Vec2<double>& y0, double t_max, double dt,
                        bool adaptive) {
    IntegratorOptions opt;
    opt.adaptive = adaptive;
    const TrajectoryRecord r = integrate(cone.metric(), x0, y0, t_max, dt, opt);
    py::list t, x, y;
    for (const GeodesicState& s : r.samples) {
      t.append(s.t);
      x.append(py::make_tuple(s.x[0], s.x[1]));
      y.append(py::make_tuple(s.xdot[0], s.xdot[1]));
    }
    py::dict term;
    term["kind"] = to_string(r.termination.kind);
    term["which"] = r.termination.which;
    term["t_stop"] = r.termination.t_stop;
    term["t_boundary"] = r.termination.t_boundary;
    term["t_extrapolated"] = r.termination.t_extrapolated;
    py::dict out;
    out["t"] = t;
    out["x"] = x;
    out["y"] = y;
    out["F"] = r.F;
    out["max_F_drift"] = r.max_F_drift;
    out["termination"] = term;
    return out;
  }, py::arg("cone"), py::arg("x0"), py::arg("y0"), py::arg("t_max"), py::arg("dt") = 1e-3, py::arg("adaptive") = false);

  m.def("config_keys", [] {
    std::map<std::string, std::string> keys;
    for (const app::KeyInfo& k : app::config_keys()) keys[k.key] = k.help;
    return keys;
  });

  m.def("run_command", [](const std::string& name, const std::map<std::string, std::string>& settings) {
    app::RunConfig cfg;
    for (const auto& [key, value] : settings) app::apply_setting(cfg, key, value);
    app::validate(cfg);
    std::ostringstream out;
    const int code = app::run_command(name, cfg, out);
    return py::make_tuple(code, out.str());
  }, py::arg("name"), py::arg("settings") = std::map<std::string, std::string>{},
        "Runs a CLI subcommand in process and returns (exit_code, output).");
}
