"""The general Hulthen barrier ``V(x) = V0 / (exp(a|x|) - q)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DerivativeDiscontinuityError, InvalidParameterError

#: q must lie strictly inside (Q_EPS, 1 - Q_EPS)
Q_EPS = 1e-12


@dataclass(frozen=True)
class PotentialParams:
    """Shape of the barrier plus the particle mass (hbar = c = 1).

    Attributes:
        V0: strength, energy units. ``V0 = 0`` is accepted as the free particle.
        a: diffuseness, inverse length.
        q: shape parameter, ``0 < q < 1``.
        m: particle mass.
    """

    V0: float
    a: float
    q: float
    m: float = 1.0

    def __post_init__(self):
        for name in ("V0", "a", "q", "m"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite, got {value!r}")
        if self.V0 < 0:
            raise InvalidParameterError(f"V0 must be >= 0, got {self.V0}")
        if self.a <= 0:
            raise InvalidParameterError(f"a must be > 0, got {self.a}")
        if self.m <= 0:
            raise InvalidParameterError(f"m must be > 0, got {self.m}")
        if not Q_EPS < self.q < 1.0 - Q_EPS:
            raise InvalidParameterError(f"q must satisfy 0 < q < 1, got {self.q}")


def evaluate(params: PotentialParams, x):
    """Potential at ``x`` (scalar or array). Even in x, maximal at the origin."""
    x = np.asarray(x, dtype=float)
    # both branches of the piecewise definition reduce to a function of |x|
    value = params.V0 / (np.exp(params.a * np.abs(x)) - params.q)
    return float(value) if value.ndim == 0 else value


def derivative(params: PotentialParams, x, one_sided: str | None = None):
    """dV/dx away from the cusp at the origin.

    ``derivative`` raises at ``x == 0`` unless ``one_sided`` is ``"left"`` or
    ``"right"``, in which case the corresponding limit ``+-V0 a / (1 - q)**2``
    is returned.
    """
    V0, a, q = params.V0, params.a, params.q
    if one_sided is not None:
        if one_sided not in ("left", "right"):
            raise ValueError("one_sided must be 'left' or 'right'")
        limit = V0 * a / (1.0 - q) ** 2
        return limit if one_sided == "left" else -limit
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise DerivativeDiscontinuityError(
            "dV/dx is discontinuous at x = 0; pass one_sided='left' or 'right'"
        )
    e = np.exp(a * np.abs(x))
    value = -np.sign(x) * V0 * a * e / (e - q) ** 2
    return float(value) if value.ndim == 0 else value


def barrier_height(params: PotentialParams) -> float:
    """Maximum of the potential, reached at x = 0."""
    return params.V0 / (1.0 - params.q)
