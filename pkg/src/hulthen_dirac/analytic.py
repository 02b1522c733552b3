"""Exact scattering solution of the 1+1 dimensional Dirac equation.

The upper combination ``phi = u1 + i u2`` obeys a second-order equation that
is solved in each half-line by hypergeometric functions of ``y = q exp(a x)``
(x < 0) and ``z = q exp(-a x)`` (x > 0).  Both variables equal ``q`` at the
origin, where ``phi`` and ``dphi/dx`` are matched.

Conventions: the incident amplitude ``A`` is fixed to one, ``B`` multiplies
the reflected basis function and ``D`` the transmitted one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import potential
from .errors import (
    DegenerateMatchingError,
    SubThresholdEnergyError,
    UnitarityError,
)
from .potential import PotentialParams
from .special_fn import gauss_2f1_with_derivative

MAX_CONDITION = 1e12
UNITARITY_LIMIT = 1e-6


@dataclass(frozen=True)
class Kinematics:
    """Energy-dependent quantities of one scattering state.

    ``mu``, ``nu`` and ``lam`` are purely imaginary: ``i k / a``,
    ``i p / a`` and ``i V0 / (a q)``.
    """

    E: float
    m: float
    k: float
    p: float
    mu: complex
    nu: complex
    lam: complex


@dataclass(frozen=True)
class SolutionAtOrigin:
    """Value and x-derivative of one basis function at x = 0."""

    phi: complex
    dphi: complex


@dataclass(frozen=True)
class MatchedAmplitudes:
    A: complex
    B: complex
    D: complex
    residual: float = 0.0


@dataclass(frozen=True)
class ScatteringCoefficients:
    R: float
    T: float
    unitarity_residual: float


def kinematics(params: PotentialParams, E: float) -> Kinematics:
    """Wavenumbers and hypergeometric exponents for energy ``E > m``."""
    m, V0, a, q = params.m, params.V0, params.a, params.q
    if not E > m:
        raise SubThresholdEnergyError(
            f"E = {E} must exceed the mass m = {m} for a scattering state"
        )
    k = math.sqrt((E - m) * (E + m))
    shifted = E + V0 / q
    p = math.sqrt((shifted - m) * (shifted + m))
    return Kinematics(
        E=float(E),
        m=m,
        k=k,
        p=p,
        mu=1j * k / a,
        nu=1j * p / a,
        lam=1j * V0 / (a * q),
    )


def _basis_at_origin(power: complex, damping: complex, alpha, beta, gamma,
                     q: float, dxdw: float) -> SolutionAtOrigin:
    """``w**power (1-w)**damping F(alpha, beta; gamma; w)`` at ``w = q``.

    ``dxdw`` converts d/dw to d/dx: ``+a q`` on the left, ``-a q`` on the right.
    """
    log_w = math.log(q)
    log_1mw = math.log1p(-q)
    prefactor = cmath.exp(power * log_w + damping * log_1mw)
    F, dF = gauss_2f1_with_derivative(alpha, beta, gamma, q)
    phi = prefactor * F
    dphi_dw = prefactor * (F * (power / q - damping / (1.0 - q)) + dF)
    return SolutionAtOrigin(phi=phi, dphi=dxdw * dphi_dw)


def left_solution_at_origin(kin: Kinematics, params: PotentialParams):
    """The incident (``A``) and reflected (``B``) basis functions of x < 0.

    Returns a pair ``(incident, reflected)`` of :class:`SolutionAtOrigin`.
    """
    mu, nu, lam = kin.mu, kin.nu, kin.lam
    q, scale = params.q, params.a * params.q
    incident = _basis_at_origin(
        mu, lam, mu - nu + lam, mu + nu + lam, 1 + 2 * mu, q, scale
    )
    reflected = _basis_at_origin(
        -mu, lam, -mu - nu + lam, -mu + nu + lam, 1 - 2 * mu, q, scale
    )
    return incident, reflected


def right_solution_at_origin(kin: Kinematics, params: PotentialParams) -> SolutionAtOrigin:
    """The purely transmitted basis function of x > 0."""
    mu, nu, lam = kin.mu, kin.nu, kin.lam
    return _basis_at_origin(
        -mu, -lam, -mu - nu - lam, -mu + nu - lam, 1 - 2 * mu,
        params.q, -params.a * params.q,
    )


def wronskian(first: SolutionAtOrigin, second: SolutionAtOrigin) -> complex:
    return first.phi * second.dphi - second.phi * first.dphi


def match(left, right: SolutionAtOrigin) -> MatchedAmplitudes:
    """Solve ``incident + B reflected = D transmitted`` for phi and phi'.

    The 2x2 system is eliminated by hand with partial pivoting.
    """
    incident, reflected = left
    # unknowns (B, D); rows: value equation, derivative equation
    rows = [
        [reflected.phi, -right.phi, -incident.phi],
        [reflected.dphi, -right.dphi, -incident.dphi],
    ]
    # equilibrate rows so the pivot choice and condition estimate are scale-free
    for row in rows:
        norm = max(abs(row[0]), abs(row[1]))
        if norm == 0.0:
            raise DegenerateMatchingError("matching row vanishes identically")
        row[:] = [c / norm for c in row]
    if abs(rows[1][0]) > abs(rows[0][0]):
        rows.reverse()
    (a11, a12, b1), (a21, a22, b2) = rows
    if a11 == 0.0:
        raise DegenerateMatchingError("reflected basis function vanishes at the origin")
    factor = a21 / a11
    pivot2 = a22 - factor * a12
    det = a11 * pivot2
    inv_norm = (max(abs(a22) + abs(a12), abs(a21) + abs(a11)) / abs(det)
                if det != 0 else math.inf)
    condition = max(abs(a11) + abs(a12), abs(a21) + abs(a22)) * inv_norm
    if not condition <= MAX_CONDITION:
        raise DegenerateMatchingError(f"matching system is ill-conditioned (cond ~ {condition:.3g})")
    D = (b2 - factor * b1) / pivot2
    B = (b1 - a12 * D) / a11

    scale = max(abs(incident.phi), abs(reflected.phi), abs(right.phi),
                abs(incident.dphi), abs(reflected.dphi), abs(right.dphi))
    r_value = incident.phi + B * reflected.phi - D * right.phi
    r_slope = incident.dphi + B * reflected.dphi - D * right.dphi
    residual = max(abs(r_value), abs(r_slope)) / (scale * max(1.0, abs(B), abs(D)))
    return MatchedAmplitudes(A=1.0 + 0.0j, B=B, D=D, residual=residual)


def coefficients(kin: Kinematics, amps: MatchedAmplitudes) -> ScatteringCoefficients:
    """Reflection and transmission from the flux ``(|phi|^2 - |chi|^2) / 2``.

    A plane wave ``exp(+-ikx)`` carries current ``+-k / (E +- k)``, hence the
    factor ``(E + k) / (E - k)`` on the reflected side.
    """
    E, k = kin.E, kin.k
    norm = abs(amps.A) ** 2
    R = abs(amps.B) ** 2 / norm * (E + k) / (E - k)
    T = abs(amps.D) ** 2 / norm
    residual = abs(R + T - 1.0)
    if residual > UNITARITY_LIMIT:
        raise UnitarityError(f"R + T - 1 = {R + T - 1.0:.3g} at E = {E}")
    return ScatteringCoefficients(R=R, T=T, unitarity_residual=residual)


def spinor_components(phi: complex, dphi: complex, kin: Kinematics, V: float):
    """Reconstruct ``(u1, u2)`` from ``phi`` and ``dphi/dx`` at a point with potential ``V``."""
    chi = (1j * (kin.E - V) * phi - dphi) / (1j * kin.m)
    return (phi + chi) / 2, (phi - chi) / 2j


def solve(params: PotentialParams, E: float):
    """Run the full pipeline; returns ``(kinematics, amplitudes, coefficients)``."""
    kin = kinematics(params, E)
    left = left_solution_at_origin(kin, params)
    right = right_solution_at_origin(kin, params)
    amps = match(left, right)
    return kin, amps, coefficients(kin, amps)


def transmission(params: PotentialParams, E: float) -> ScatteringCoefficients:
    """R, T and the unitarity residual at energy ``E``."""
    return solve(params, E)[2]


def spinor_at_origin(params: PotentialParams, E: float):
    """``(u1, u2)`` at x = 0 built from the left and from the right solution.

    Returns ``(left_spinor, right_spinor)``; they agree when matching succeeded.
    """
    kin, amps, _ = solve(params, E)
    incident, reflected = left_solution_at_origin(kin, params)
    right = right_solution_at_origin(kin, params)
    V = potential.barrier_height(params)
    phi_l = amps.A * incident.phi + amps.B * reflected.phi
    dphi_l = amps.A * incident.dphi + amps.B * reflected.dphi
    left_spinor = spinor_components(phi_l, dphi_l, kin, V)
    right_spinor = spinor_components(amps.D * right.phi, amps.D * right.dphi, kin, V)
    return left_spinor, right_spinor
