"""Transmission sweeps over energy or barrier strength, and resonance finding."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import bisect

from . import analytic, oracle
from .errors import HulthenError, InvalidParameterError
from .potential import PotentialParams

VARIABLES = ("energy", "strength")
ENGINES = ("analytic", "oracle", "both")
RESONANCE_THRESHOLD = 0.99
REFINE_TOL = 1e-8
MIN_POINTS_FOR_PEAKS = 16
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepSpec:
    """A uniform grid over ``(lo, hi]`` in energy or in V0.

    For strength sweeps ``params.V0`` is replaced point by point and the
    energy is held at ``energy``.
    """

    variable: str
    lo: float
    hi: float
    points: int
    params: PotentialParams
    energy: float | None = None
    engine: str = "analytic"
    oracle_config: oracle.IntegrationConfig = field(default_factory=oracle.IntegrationConfig)

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise InvalidParameterError(f"variable must be one of {VARIABLES}")
        if self.engine not in ENGINES:
            raise InvalidParameterError(f"engine must be one of {ENGINES}")
        if not self.lo < self.hi:
            raise InvalidParameterError(f"empty range ({self.lo}, {self.hi}]")
        if self.points < 2:
            raise InvalidParameterError("a sweep needs at least 2 points")
        if self.variable == "energy" and self.lo < self.params.m:
            raise InvalidParameterError(
                f"energy sweep must start at or above m = {self.params.m}"
            )
        if self.variable == "strength":
            if self.energy is None:
                raise InvalidParameterError("strength sweep needs a fixed energy")
            if self.lo < 0:
                raise InvalidParameterError("V0 range must be non-negative")

    def grid(self) -> np.ndarray:
        # the open end keeps E = m and V0 = 0 off the grid
        i = np.arange(1, self.points + 1)
        return self.lo + (self.hi - self.lo) * i / self.points

    def point(self, value: float):
        """``(params, E)`` at one value of the swept variable."""
        if self.variable == "energy":
            return self.params, float(value)
        return replace(self.params, V0=float(value)), float(self.energy)


@dataclass
class SweepTable:
    """Rows of a sweep, ascending in the swept variable.

    ``discrepancy`` is ``|T_analytic - T_oracle|`` and only present for
    ``engine="both"``.  Failed points hold NaN and a message in ``errors``.
    """

    spec: SweepSpec
    values: np.ndarray
    R: np.ndarray
    T: np.ndarray
    unitarity_residual: np.ndarray
    discrepancy: np.ndarray | None
    errors: list

    def __len__(self):
        return len(self.values)

    @property
    def failed(self) -> bool:
        return any(e is not None for e in self.errors)

    def records(self) -> list[dict]:
        out = []
        for i, value in enumerate(self.values):
            row = {
                "variable": float(value),
                "R": float(self.R[i]),
                "T": float(self.T[i]),
                "unitarity_residual": float(self.unitarity_residual[i]),
            }
            if self.discrepancy is not None:
                row["t_discrepancy"] = float(self.discrepancy[i])
            out.append(row)
        return out

    def transmission(self, value: float) -> float:
        """T at an arbitrary point of the swept variable, same engine as the rows."""
        params, E = self.spec.point(value)
        if self.spec.engine == "oracle":
            return oracle.oracle_transmission(params, E, self.spec.oracle_config).T
        return analytic.transmission(params, E).T


def _engine(spec: SweepSpec, value: float, use_oracle: bool):
    params, E = spec.point(value)
    if use_oracle:
        return oracle.oracle_transmission(params, E, spec.oracle_config)
    return analytic.transmission(params, E)


def _evaluate(spec: SweepSpec, value: float):
    """One row: ``(R, T, residual, discrepancy, error)``.

    Errors are prefixed with the engine that raised them.
    """
    nan = math.nan
    primary_is_oracle = spec.engine == "oracle"
    try:
        c = _engine(spec, value, primary_is_oracle)
    except HulthenError as exc:
        name = "oracle" if primary_is_oracle else "analytic"
        return nan, nan, nan, nan, f"{name}: {exc.reason}: {exc}"
    if spec.engine != "both":
        return c.R, c.T, c.unitarity_residual, nan, None
    try:
        reference = _engine(spec, value, True)
    except HulthenError as exc:
        return c.R, c.T, c.unitarity_residual, nan, f"oracle: {exc.reason}: {exc}"
    return c.R, c.T, c.unitarity_residual, abs(c.T - reference.T), None


def _evaluate_packed(args):
    return _evaluate(*args)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepTable:
    """Evaluate ``spec`` on its grid.

    ``workers > 1`` spreads points over processes; rows come back in grid
    order either way, so the table does not depend on the parallelism.
    """
    values = spec.grid()
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_packed, [(spec, v) for v in values],
                                 chunksize=max(1, len(values) // (4 * workers))))
    else:
        rows = [_evaluate(spec, v) for v in values]
    R, T, residual, discrepancy, errors = zip(*rows)
    return SweepTable(
        spec=spec,
        values=values,
        R=np.array(R),
        T=np.array(T),
        unitarity_residual=np.array(residual),
        discrepancy=np.array(discrepancy) if spec.engine == "both" else None,
        errors=list(errors),
    )


@dataclass(frozen=True)
class ResonancePeak:
    """A transmission resonance.

    ``fwhm`` is the full width where T crosses halfway between the peak and
    the higher of the two neighbouring minima.
    """

    location: float
    peak_T: float
    fwhm: float
    refined: bool
    half_level: float = math.nan
    left_edge: float = math.nan
    right_edge: float = math.nan


def golden_section_max(f, lo: float, hi: float, tol: float = REFINE_TOL):
    """Maximise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc > fd else (d, fd)


def _walk_to_minimum(T: np.ndarray, i: int, step: int) -> int:
    j = i
    while 0 <= j + step < len(T) and T[j + step] <= T[j]:
        j += step
    return j


def find_resonances(sweep: SweepTable, refine: bool = True,
                    threshold: float = RESONANCE_THRESHOLD) -> list[ResonancePeak]:
    """Resonances of a sweep, in ascending order of the swept variable.

    Every strict local maximum of the sampled T is a candidate.  With
    ``refine`` each candidate is polished by golden-section search inside its
    bracketing grid interval and kept if the polished peak reaches
    ``threshold``; its half-maximum crossings are then found by bisection on
    T itself.  Without ``refine`` the sampled maximum must reach
    ``threshold`` and the crossings are linearly interpolated.
    """
    x, T = sweep.values, sweep.T
    if len(x) < MIN_POINTS_FOR_PEAKS:
        raise InvalidParameterError(
            f"resonance search needs >= {MIN_POINTS_FOR_PEAKS} points, got {len(x)}"
        )
    peaks = []
    for i in range(1, len(x) - 1):
        if not (T[i] > T[i - 1] and T[i] > T[i + 1]):
            continue
        if refine:
            f = sweep.transmission
            location, peak_T = golden_section_max(f, x[i - 1], x[i + 1])
            if peak_T < T[i]:
                location, peak_T = x[i], T[i]
        else:
            f = None
            location, peak_T = x[i], T[i]
        if peak_T < threshold:
            continue

        baseline = max(T[_walk_to_minimum(T, i, -1)], T[_walk_to_minimum(T, i, +1)])
        half = 0.5 * (peak_T + baseline)
        if refine:
            left = _edge(f, location, x, T, i, half, -1)
            right = _edge(f, location, x, T, i, half, +1)
        else:
            left = _interpolated_edge(x, T, i, half, -1)
            right = _interpolated_edge(x, T, i, half, +1)
        peaks.append(ResonancePeak(
            location=float(location), peak_T=float(peak_T), fwhm=float(right - left),
            refined=refine, half_level=float(half), left_edge=float(left),
            right_edge=float(right),
        ))
    return peaks


def _edge(f, location, x, T, i, half, step):
    """Half-level crossing on one side of a refined peak, by bisection on ``f``.

    The baseline is at most the side's minimum, so some grid point between the
    peak and that minimum lies at or below ``half``.
    """
    j = i
    while T[j + step] > half:
        j += step
    inside = location if j == i else x[j]
    return bisect(lambda v: f(v) - half, inside, x[j + step], xtol=REFINE_TOL)


def _interpolated_edge(x, T, i, half, step):
    j = i
    while T[j + step] > half:
        j += step
    k = j + step
    w = (T[j] - half) / (T[j] - T[k])
    return x[j] + w * (x[k] - x[j])


def first_resonance(sweep: SweepTable, refine: bool = True) -> ResonancePeak | None:
    peaks = find_resonances(sweep, refine=refine)
    return peaks[0] if peaks else None


# Fixed parameters of the six standard curves; the ranges are our choice.
PRESETS = {
    "fig1": {"variable": "energy", "V0": 4.0, "a": 1.0, "q": 0.9},
    "fig2": {"variable": "energy", "V0": 4.0, "a": 0.5, "q": 0.9},
    "fig3": {"variable": "energy", "V0": 4.0, "a": 1.0, "q": 0.5},
    "fig4": {"variable": "energy", "V0": 4.0, "a": 0.5, "q": 0.5},
    "fig5": {"variable": "strength", "energy": 2.0, "a": 1.0, "q": 0.9},
    "fig6": {"variable": "strength", "energy": 2.0, "a": 0.5, "q": 0.9},
}
DEFAULT_POINTS = 512
ENERGY_RANGE = (1.0, 10.0)
STRENGTH_RANGE = (0.0, 20.0)


def preset(name: str, points: int = DEFAULT_POINTS, engine: str = "analytic",
           m: float = 1.0, lo: float | None = None, hi: float | None = None) -> SweepSpec:
    """SweepSpec for one of ``fig1`` ... ``fig6``.

    Energy ranges scale with the mass: ``(m, 10 m]``.  Strength sweeps run
    over ``V0 in (0, 20]``.
    """
    try:
        p = PRESETS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown preset {name!r}; choose from {', '.join(PRESETS)}"
        ) from None
    if p["variable"] == "energy":
        default_lo, default_hi = ENERGY_RANGE[0] * m, ENERGY_RANGE[1] * m
        params = PotentialParams(V0=p["V0"], a=p["a"], q=p["q"], m=m)
        energy = None
    else:
        default_lo, default_hi = STRENGTH_RANGE
        params = PotentialParams(V0=0.0, a=p["a"], q=p["q"], m=m)
        energy = p["energy"]
    return SweepSpec(
        variable=p["variable"],
        lo=default_lo if lo is None else lo,
        hi=default_hi if hi is None else hi,
        points=points,
        params=params,
        energy=energy,
        engine=engine,
    )
