import json
import math

import jsonschema
import pytest

import kropina

S = 1.0 / math.sqrt(2.0)


def test_cone_closed_forms():
    cone = kropina.ConeMetric.minimal()
    assert (cone.p, cone.q, cone.b) == (1.5, 0.5, 1.0)
    assert cone.flag_curvature((1.0, 0.0), (1.0, 1.0)) == pytest.approx(-0.140625, rel=1e-14)
    unit = kropina.ConeMetric.unit_slope()
    assert unit.flag_curvature((1.0, 0.0), (1.0, 1.0)) == pytest.approx(-2.0 / 27.0, rel=1e-14)
    assert unit.s_curvature((1.0, 0.0), (1.0, 1.0)) == pytest.approx(-1.0, rel=1e-14)
    pipeline = unit.curvature((1.3, 0.2), (0.8, -0.4))
    assert pipeline["K"] == pytest.approx(unit.flag_curvature((1.3, 0.2), (0.8, -0.4)), rel=1e-8)
    assert pipeline["S"] == pytest.approx(unit.s_curvature((1.3, 0.2), (0.8, -0.4)), rel=1e-8)


def test_cone_surface_is_minimal_along_x3():
    surface = kropina.Surface(kropina.Profile("cone:0.3"))
    beta = kropina.OneForm.along_x3(1.0)
    for x in [(0.5, 0.0), (1.7, 2.0), (4.0, 5.5)]:
        assert abs(surface.mean_curvature(beta, x)["H"]) < 1e-9
        assert abs(surface.bracket(beta, x)) < 1e-9


def test_minimal_slope_on_both_pipelines():
    beta = kropina.OneForm.along_x3(1.0)
    for pipeline in ("mean_curvature", "bracket"):
        assert abs(kropina.bisect_minimal_slope(beta, pipeline) - S) < 1e-6
    with pytest.raises(kropina.ConfigError):
        kropina.bisect_minimal_slope(beta, "neither")


def test_pullback_data_and_cos2():
    data = kropina.Surface(kropina.Profile("cone:0")).pullback(kropina.OneForm.along_x3(2.0), (1.0, 0.0))
    assert data["C"] ** 2 == pytest.approx(0.75, rel=1e-14)
    assert data["E"] == pytest.approx(2.0, rel=1e-14)
    fit = kropina.Surface(kropina.Profile("linear:1,0")).cos2_coefficients(kropina.OneForm.along_x1(), 1.0)
    assert fit["normalized"] == pytest.approx([-18.0, -8.0, 24.0], rel=1e-8)


def test_profile_and_ambient():
    assert kropina.Profile("linear:1,0").ode_residual(2.0) == pytest.approx(2.0)
    assert kropina.Profile("cone:0").at(2.0) == pytest.approx((math.sqrt(2.0), S, 0.0))
    assert kropina.ambient_eval(kropina.OneForm.along_x1(), (0, 0, 1), (1, 1, 0)) == pytest.approx(2.0)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError, match="slope"):
        kropina.Profile("linear:abc")
    with pytest.raises(kropina.DomainError):
        kropina.ambient_eval(kropina.OneForm.along_x3(), (0, 0, 1), (1, 0, 0))
    with pytest.raises(kropina.DomainError):
        kropina.Profile("linear:1,0").at(9.0)
    with pytest.raises(kropina.Error):
        kropina.Surface(kropina.Profile("cone:0")).F(kropina.OneForm.along_x3(), (1.0, 0.0), (-1.0, 0.0))


def test_geodesic_boundary_hit():
    record = kropina.integrate(kropina.ConeMetric.unit_slope(), (1.0, 0.0), (-1.0, 0.0), 2.0)
    assert record["termination"]["kind"] == "boundary_hit"
    assert record["termination"]["t_extrapolated"] == pytest.approx(1.0, abs=1e-3)
    assert all(b > a for a, b in zip(record["t"], record["t"][1:]))
    line = kropina.integrate(kropina.ConeMetric.unit_slope(), (1.0, 0.0), (1.0, 0.0), 1.0)
    assert line["x"][-1] == pytest.approx((2.0, 0.0), abs=1e-6)
    assert line["max_F_drift"] < 1e-6


@pytest.mark.parametrize("command", ["verify", "curvature-table", "geodesic", "volume", "minimality"])
def test_reports_match_schema(command, report_schema):
    code, out = kropina.run_command(command, {"format": "json"})
    report = json.loads(out)
    jsonschema.validate(report, report_schema)
    assert code == 0
    assert report["meta"]["command"] == command
    assert report["summary"]["status"] == "pass"
    assert report["summary"]["total"] == len(report["checks"])


def test_failing_verify_is_reported(report_schema):
    code, out = kropina.run_command("verify", {"profile": "linear:1,0"})
    report = json.loads(out)
    jsonschema.validate(report, report_schema)
    assert code == 1
    assert report["summary"]["status"] == "fail"
    failed = [c["check"] for c in report["checks"] if c["status"] == "fail"]
    assert failed == ["config_minimality"]


def test_config_keys_and_bad_settings():
    keys = kropina.config_keys()
    assert {"b", "variant", "profile", "x1", "seed", "format"} <= set(keys)
    with pytest.raises(ValueError):
        kropina.run_command("verify", {"bogus": "1"})
    with pytest.raises(ValueError):
        kropina.run_command("frobnicate")
