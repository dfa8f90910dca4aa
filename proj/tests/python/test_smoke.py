import cmath
import math

import pytest

import boussinesq_lab as bq


def test_params_and_symbols():
    kdv = bq.AbcdParams.kdv_kdv()
    assert (kdv.a, kdv.b, kdv.c, kdv.d) == (1.0, 0.0, 1.0, 0.0)
    generic = bq.AbcdParams(-1.0, 1.0, -2.0, 0.5)
    assert "a=-1" in repr(generic)
    assert bq.h(0.0, generic) > 0.0
    with pytest.raises(bq.RegimeError):
        bq.AbcdParams(1.0, -1.0, 3.0, 2.0)


def test_propagators_are_unitary_rotations():
    p = bq.AbcdParams(-1.0, 1.0, -1.0, 1.0)
    identity = bq.propagator_1d(3.0, 0.0, p)
    assert identity[0][0] == pytest.approx(1.0)
    assert abs(identity[0][1]) < 1e-15
    m = bq.propagator_2d([0.3, -0.4], 1.7, p)
    assert len(m) == 3 and all(len(row) == 3 for row in m)
    # The 2D flow is the identity at zero frequency.
    zero = bq.propagator_2d([0.0, 0.0], 5.0, p)
    assert zero[1][1] == pytest.approx(1.0)
    assert isinstance(m[0][0], complex)
    assert cmath.isfinite(m[2][2])


def test_regime_tables():
    assert bq.regimes() == ["gen1d", "kdv1d", "gen2d", "kdv2d", "bbm2d"]
    assert bq.predicted_exponent("gen1d", -1.0) == pytest.approx(1.0)
    assert bq.critical_regularity("kdv2d") == pytest.approx(-1.5)
    assert bq.time_scale("gen1d", 100.0) == pytest.approx(1e-4)
    with pytest.raises(bq.ConfigError):
        bq.time_scale("nls", 100.0)


def test_inflation_sweep_slope():
    report = bq.inflation_sweep("gen1d", -1.0)
    assert report.passed
    assert report.slope == pytest.approx(1.0, abs=0.15)
    assert [p.N for p in report.points] == [128.0, 256.0, 512.0, 1024.0]
    assert report.max_certificate < 1e-4


def test_lemma_and_geometry():
    lemma = bq.lemma_check("kdv1d", seed=3, samples=500)
    assert lemma.violations == 0 and lemma.samples == 500
    geometry = bq.geometry_check(17.0, 200, 3)
    assert geometry.violations == 0
    assert geometry.max_cos_beta <= -0.75


def test_schur_and_diagnostics():
    flat = bq.schur_sum(2, 0.0)
    assert flat.bounded and flat.sup == pytest.approx(112.0)
    growing = bq.schur_sum(1, -1.0, "I")
    assert not growing.bounded
    assert growing.growth_exponent == pytest.approx(1.0, abs=0.1)
    assert bq.diagonalization_check(200, 1).passed
    assert all(c.passed for c in bq.semigroup_checks(1, 1))


def test_energy_and_picard():
    series = bq.energy_series(1, bq.AbcdParams(-1.0, 1.0, -1.0, 1.0), dt=0.1, T=1.0)
    assert series[0].relative_drift == 0.0
    assert max(s.relative_drift for s in series) < 1e-6
    defect = bq.picard_defect("gen1d")
    assert 6.0 <= defect.ratio <= 10.0


def test_run_cli():
    code, out, err = bq.run_cli(["schur", "n=2"])
    assert code == 0, err
    lines = out.splitlines()
    assert lines[0] == "# schema=schur/1"
    assert lines[1] == "n,s,case,Nmax,sup_or_exponent,bounded,pass"
    assert len(lines) == 5
    code, out, err = bq.run_cli(["sweep", "s=-1"])
    assert code == 1 and out == "" and "regime" in err
    assert math.isfinite(float(lines[2].split(",")[4]))
