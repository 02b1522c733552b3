import math
from dataclasses import replace

import numpy as np
import pytest

from hulthen_dirac import analytic
from hulthen_dirac.errors import InvalidParameterError
from hulthen_dirac.potential import PotentialParams
from hulthen_dirac.sweeps import (
    PRESETS,
    ResonancePeak,
    SweepSpec,
    SweepTable,
    find_resonances,
    first_resonance,
    golden_section_max,
    preset,
    run_sweep,
)

FIG1 = PotentialParams(V0=4.0, a=1.0, q=0.9)


@pytest.fixture(scope="module")
def window():
    # first two fig1 resonances, 96 points
    return run_sweep(SweepSpec("energy", 1.0, 3.4, 96, FIG1))


def fake_table(T):
    spec = SweepSpec("energy", 1.0, 2.0, len(T), FIG1)
    T = np.asarray(T, dtype=float)
    n = len(T)
    return SweepTable(spec, spec.grid(), 1 - T, T, np.zeros(n), None, [None] * n)


def test_grid_is_half_open_and_uniform():
    spec = SweepSpec("energy", 1.0, 10.0, 512, FIG1)
    x = spec.grid()
    assert len(x) == 512 and x[0] > 1.0 and x[-1] == 10.0
    np.testing.assert_allclose(np.diff(x), 9.0 / 512, rtol=1e-12)


@pytest.mark.parametrize("kwargs", [
    {"variable": "energy", "lo": 2.0, "hi": 1.5},
    {"variable": "energy", "lo": 1.0, "hi": 2.0, "points": 1},
    {"variable": "energy", "lo": 0.5, "hi": 2.0},
    {"variable": "strength", "lo": 0.0, "hi": 2.0},
    {"variable": "strength", "lo": -1.0, "hi": 2.0, "energy": 2.0},
    {"variable": "time", "lo": 1.0, "hi": 2.0},
    {"variable": "energy", "lo": 1.0, "hi": 2.0, "engine": "magic"},
])
def test_invalid_specs(kwargs):
    kwargs.setdefault("points", 8)
    with pytest.raises(InvalidParameterError):
        SweepSpec(params=FIG1, **kwargs)


def test_strength_point_replaces_V0():
    spec = SweepSpec("strength", 0.0, 20.0, 8, replace(FIG1, V0=0.0), energy=2.0)
    params, E = spec.point(5.0)
    assert params.V0 == 5.0 and E == 2.0 and params.q == FIG1.q


def test_rows_match_direct_evaluation(window):
    for i in (0, 17, 95):
        c = analytic.transmission(FIG1, window.values[i])
        assert window.T[i] == c.T and window.R[i] == c.R
    assert not window.failed
    assert np.all(window.unitarity_residual <= 1e-8)


def test_records_keys(window):
    rec = window.records()
    assert len(rec) == 96
    assert list(rec[0]) == ["variable", "R", "T", "unitarity_residual"]


def test_row_error_is_flagged(monkeypatch):
    from hulthen_dirac import sweeps
    from hulthen_dirac.errors import HypergeometricConvergenceError

    real = sweeps._engine

    def flaky(spec, value, use_oracle):
        if abs(value - 1.5) < 1e-12:
            raise HypergeometricConvergenceError("forced", iterations=1, last_term=1.0)
        return real(spec, value, use_oracle)

    monkeypatch.setattr(sweeps, "_engine", flaky)
    table = run_sweep(SweepSpec("energy", 1.0, 2.0, 4, FIG1))
    assert table.failed
    assert math.isnan(table.T[1])
    assert table.errors[1].startswith("analytic: hypergeometric non-convergence")
    assert table.errors[0] is None and np.isfinite(table.T[0])


def test_both_engines_discrepancy():
    table = run_sweep(SweepSpec("energy", 1.0, 4.0, 12, FIG1, engine="both"))
    assert table.discrepancy.shape == (12,)
    assert np.max(table.discrepancy) <= 1e-6
    assert "t_discrepancy" in table.records()[0]


def test_oracle_engine_rows():
    table = run_sweep(SweepSpec("energy", 1.0, 4.0, 4, FIG1, engine="oracle"))
    reference = run_sweep(SweepSpec("energy", 1.0, 4.0, 4, FIG1))
    np.testing.assert_allclose(table.T, reference.T, atol=1e-6)
    assert table.discrepancy is None


def test_workers_do_not_change_results():
    spec = SweepSpec("energy", 1.0, 3.0, 16, FIG1)
    serial = run_sweep(spec)
    parallel = run_sweep(spec, workers=2)
    np.testing.assert_array_equal(serial.T, parallel.T)
    np.testing.assert_array_equal(serial.values, parallel.values)


def test_deterministic():
    spec = SweepSpec("energy", 1.0, 3.0, 16, FIG1)
    np.testing.assert_array_equal(run_sweep(spec).T, run_sweep(spec).T)


def test_strength_sweep_free_end():
    spec = preset("fig5", points=32, hi=1e-3)
    table = run_sweep(spec)
    assert table.values[0] == pytest.approx(1e-3 / 32)
    # 1 - T vanishes like V0^2
    assert 1 - table.T[0] < 1e-8
    assert np.all(np.diff(table.T) < 0)


# ---- resonances ----------------------------------------------------------

def test_golden_section_on_parabola():
    x, fx = golden_section_max(lambda v: -(v - 0.3) ** 2, 0.0, 1.0, tol=1e-10)
    assert x == pytest.approx(0.3, abs=1e-9)
    assert fx == pytest.approx(0.0, abs=1e-18)


def test_monotone_input_has_no_resonance():
    assert find_resonances(fake_table(np.linspace(0.1, 0.999, 32)), refine=False) == []
    assert find_resonances(fake_table(np.linspace(0.999, 0.1, 32)), refine=False) == []


def test_too_few_points():
    with pytest.raises(InvalidParameterError):
        find_resonances(fake_table(np.linspace(0, 1, 8)))


def test_unrefined_peak_on_synthetic_curve():
    x = np.linspace(1.0, 2.0, 65)[1:]
    T = 0.2 + 0.795 / (1 + ((x - 1.5) / 0.05) ** 2)
    peaks = find_resonances(fake_table(T), refine=False)
    assert len(peaks) == 1
    peak = peaks[0]
    assert not peak.refined
    assert peak.location == pytest.approx(1.5)
    # Lorentzian above a flat baseline: FWHM = 2 * 0.05, up to interpolation
    assert peak.fwhm == pytest.approx(0.1, rel=0.05)


def test_subthreshold_peak_ignored():
    x = np.linspace(1.0, 2.0, 65)[1:]
    T = 0.9 / (1 + ((x - 1.5) / 0.05) ** 2)
    assert find_resonances(fake_table(T), refine=False) == []


def test_refined_peaks_invariants(window):
    peaks = find_resonances(window)
    assert len(peaks) >= 2
    x = window.values
    for peak in peaks:
        assert isinstance(peak, ResonancePeak) and peak.refined
        assert 0.99 <= peak.peak_T <= 1 + 1e-8
        assert peak.fwhm > 0
        assert peak.left_edge < peak.location < peak.right_edge
        direct = analytic.transmission(FIG1, peak.location).T
        assert abs(direct - peak.peak_T) <= 1e-8
        assert direct >= analytic.transmission(FIG1, peak.location - peak.fwhm / 2).T
        assert direct >= analytic.transmission(FIG1, peak.location + peak.fwhm / 2).T
        # stays inside the grid interval around its sampled maximum
        i = int(np.argmin(np.abs(x - peak.location)))
        assert x[max(i - 1, 0)] <= peak.location <= x[min(i + 1, len(x) - 1)]
        for edge in (peak.left_edge, peak.right_edge):
            assert analytic.transmission(FIG1, edge).T == pytest.approx(peak.half_level, abs=1e-6)


def test_first_resonance_is_lowest(window):
    peaks = find_resonances(window)
    assert first_resonance(window) == peaks[0]
    assert peaks == sorted(peaks, key=lambda p: p.location)


def test_unrefined_peaks_are_a_subset_of_refined(window):
    # the first fig1 resonance is narrower than the grid step, so no sample
    # reaches the threshold and only refinement finds it
    refined = find_resonances(window)
    rough = find_resonances(window, refine=False)
    assert 0 < len(rough) < len(refined)
    step = window.values[1] - window.values[0]
    for peak in rough:
        assert min(abs(peak.location - r.location) for r in refined) <= step


def test_first_fig1_resonance_fixed(presets):
    peak = presets.resonances("fig1")[0]
    assert peak.location == pytest.approx(1.10576, abs=1e-5)
    assert peak.fwhm == pytest.approx(0.0118048, rel=1e-4)


# ---- presets -------------------------------------------------------------

@pytest.mark.parametrize("name,variable,V0,a,q,energy", [
    ("fig1", "energy", 4.0, 1.0, 0.9, None),
    ("fig2", "energy", 4.0, 0.5, 0.9, None),
    ("fig3", "energy", 4.0, 1.0, 0.5, None),
    ("fig4", "energy", 4.0, 0.5, 0.5, None),
    ("fig5", "strength", None, 1.0, 0.9, 2.0),
    ("fig6", "strength", None, 0.5, 0.9, 2.0),
])
def test_preset_expansion(name, variable, V0, a, q, energy):
    spec = preset(name)
    assert spec.variable == variable
    assert (spec.params.a, spec.params.q, spec.params.m) == (a, q, 1.0)
    assert spec.points == 512
    if variable == "energy":
        assert spec.params.V0 == V0 and (spec.lo, spec.hi) == (1.0, 10.0)
    else:
        assert spec.energy == energy and (spec.lo, spec.hi) == (0.0, 20.0)


def test_preset_scales_with_mass():
    spec = preset("fig1", m=2.0)
    assert (spec.lo, spec.hi) == (2.0, 20.0)


def test_unknown_preset():
    with pytest.raises(InvalidParameterError):
        preset("fig7")
    assert set(PRESETS) == {f"fig{i}" for i in range(1, 7)}


def test_fig1_has_near_unit_transmission(presets):
    assert np.max(presets.sweep("fig1").T) > 0.999


def test_fig5_transmits_at_weak_barrier(presets):
    table = presets.sweep("fig5")
    assert table.T[0] > 0.99  # V0 = 20 / 512
    assert max(p.peak_T for p in presets.resonances("fig5")) > 0.999
