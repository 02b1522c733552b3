"""Gauss hypergeometric function for complex parameters on ``0 <= t < 1``.

The power series is summed first in double precision.  Large imaginary
parameters make the terms grow by many orders of magnitude before they
decay, so the double-precision sum can lose most of its digits to
cancellation.  The size of the largest term relative to the result measures
that loss; when it is too large the same series is re-summed with gmpy2
multiprecision complex numbers at a working precision that covers it.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import gmpy2
from scipy import special

from .errors import HypergeometricConvergenceError, SpecialFunctionDomainError

MAX_TERMS = 10_000
REL_TOL = 1e-16
# largest tolerated ratio max|term| / |sum| before switching to multiprecision
_MAX_DOUBLE_LOSS = 1e2
_GUARD_DIGITS = 10


class HypergeometricArgs(NamedTuple):
    """Argument bundle ``(alpha, beta, gamma, t)`` for :func:`gauss_2f1`."""

    alpha: complex
    beta: complex
    gamma: complex
    t: float


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _check(alpha, beta, gamma, t):
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise SpecialFunctionDomainError(f"t must satisfy 0 <= t < 1, got {t}")
    if _is_nonpositive_integer(gamma):
        raise SpecialFunctionDomainError(f"gamma = {gamma} is a pole of 2F1")
    return alpha, beta, gamma, t


def _sum_series(alpha, beta, gamma, t, one, max_terms):
    """Sum ``F`` and ``t dF/dt`` term by term in the number type of ``one``.

    Returns ``(terms, weighted_terms, largest, largest_weighted)`` where the
    weighted terms are ``n * term_n``.  Stops once two consecutive terms are
    below ``REL_TOL`` of their partial sums and the term ratio has dropped
    below one, so the remaining tail is geometrically bounded.
    """
    term = one
    partial = one
    partial_w = 0 * one
    terms = [term]
    weighted = []
    largest = largest_w = 0.0
    small_run = 0
    for n in range(max_terms):
        ratio = (alpha + n) * (beta + n) / ((gamma + n) * (n + 1)) * t
        term = term * ratio
        term_w = (n + 1) * term
        partial = partial + term
        partial_w = partial_w + term_w
        terms.append(term)
        weighted.append(term_w)
        mag = float(abs(term))
        mag_w = (n + 1) * mag
        largest = max(largest, mag)
        largest_w = max(largest_w, mag_w)
        # cheapest test first; abs() of a multiprecision sum is not free
        if (mag <= REL_TOL * abs(partial) and mag_w <= REL_TOL * abs(partial_w)
                and abs(ratio) < 1):
            small_run += 1
            if small_run >= 2:
                return terms, weighted, max(largest, 1.0), largest_w
        else:
            small_run = 0
    raise HypergeometricConvergenceError(
        f"2F1({alpha}, {beta}; {gamma}; {t}) did not converge in {max_terms} terms",
        iterations=max_terms,
        last_term=float(abs(term)),
    )


def _loss(largest, total):
    return largest / abs(total) if total != 0 else math.inf


def _series_value(alpha, beta, gamma, t, max_terms):
    """``(F, dF/dt)`` at ``t > 0`` with cancellation-aware precision."""
    terms, weighted, largest, largest_w = _sum_series(
        alpha, beta, gamma, t, 1.0 + 0.0j, max_terms
    )
    value = complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))
    slope = complex(math.fsum(z.real for z in weighted), math.fsum(z.imag for z in weighted))
    loss = max(_loss(largest, value), _loss(largest_w, slope) if largest_w else 1.0)
    if loss <= _MAX_DOUBLE_LOSS:
        return value, slope / t

    # a double sum that lost everything misjudges its own size; the largest
    # term is the better guess for the digits at stake then
    lost = math.log10(min(loss, 1e300))
    if lost > 12:
        lost = max(lost, math.log10(max(largest, largest_w)))
    digits = 17 + _GUARD_DIGITS + int(math.ceil(lost))
    while True:
        bits = int(digits * 3.33) + 8
        with gmpy2.context(gmpy2.get_context(), precision=bits):
            one = gmpy2.mpc(1)
            terms, weighted, largest, largest_w = _sum_series(
                gmpy2.mpc(alpha), gmpy2.mpc(beta), gmpy2.mpc(gamma),
                gmpy2.mpfr(t), one, max_terms,
            )
            total = sum(terms, 0 * one)
            total_w = sum(weighted, 0 * one)
            lost = math.log10(max(_loss(largest, total),
                                  _loss(largest_w, total_w) if largest_w else 1.0,
                                  1.0))
            if lost + 17 + _GUARD_DIGITS / 2 <= digits:
                return complex(total), complex(total_w) / t
        if math.isinf(lost):
            raise HypergeometricConvergenceError(
                "2F1 series summed to zero; relative accuracy undefined",
                iterations=len(terms),
                last_term=float(abs(terms[-1])),
            )
        digits = int(lost) + 17 + _GUARD_DIGITS


def gauss_2f1(alpha, beta, gamma, t, *, transform: bool = False,
              max_terms: int = MAX_TERMS) -> complex:
    """Gauss hypergeometric function ``2F1(alpha, beta; gamma; t)``.

    Args:
        alpha, beta, gamma: complex parameters; gamma must not be a pole.
        t: real argument in ``[0, 1)``.
        transform: evaluate through the ``t -> 1 - t`` connection formula
            instead of the direct series.  Only meant as a cross-check.
        max_terms: iteration cap for each series.

    Returns:
        The complex function value.
    """
    alpha, beta, gamma, t = _check(alpha, beta, gamma, t)
    if t == 0.0:
        return 1.0 + 0.0j
    if transform:
        return _connection_formula(alpha, beta, gamma, t, max_terms)
    return _series_value(alpha, beta, gamma, t, max_terms)[0]


def gauss_2f1_derivative(alpha, beta, gamma, t, *, max_terms: int = MAX_TERMS) -> complex:
    """dF/dt via the identity ``F' = (alpha beta / gamma) F(alpha+1, beta+1; gamma+1; t)``."""
    alpha, beta, gamma, t = _check(alpha, beta, gamma, t)
    scale = alpha * beta / gamma
    if t == 0.0:
        return scale
    return scale * _series_value(alpha + 1, beta + 1, gamma + 1, t, max_terms)[0]


def gauss_2f1_with_derivative(alpha, beta, gamma, t, *, max_terms: int = MAX_TERMS):
    """``(F, dF/dt)`` from a single pass over the series.

    Cheaper than calling :func:`gauss_2f1` and :func:`gauss_2f1_derivative`
    separately; the derivative is summed from ``n * term_n / t``.
    """
    alpha, beta, gamma, t = _check(alpha, beta, gamma, t)
    if t == 0.0:
        return 1.0 + 0.0j, alpha * beta / gamma
    return _series_value(alpha, beta, gamma, t, max_terms)


def log_gamma_complex(zeta) -> complex:
    """Principal branch of ``log Gamma(zeta)``."""
    zeta = complex(zeta)
    if _is_nonpositive_integer(zeta):
        raise SpecialFunctionDomainError(f"Gamma has a pole at {zeta}")
    return complex(special.loggamma(zeta))


def _connection_formula(alpha, beta, gamma, t, max_terms):
    excess = gamma - alpha - beta
    if _is_nonpositive_integer(excess) or _is_nonpositive_integer(-excess):
        raise SpecialFunctionDomainError(
            f"gamma - alpha - beta = {excess} is an integer; connection formula degenerates"
        )
    lg = log_gamma_complex
    s = 1.0 - t

    def coeff(num, den):
        # 1/Gamma vanishes at its poles, so that branch drops out
        if any(_is_nonpositive_integer(z) for z in den):
            return 0.0
        return cmath.exp(sum(lg(z) for z in num) - sum(lg(z) for z in den))

    first = coeff((gamma, excess), (gamma - alpha, gamma - beta))
    second = coeff((gamma, -excess), (alpha, beta))
    value = 0.0 + 0.0j
    if first != 0.0:
        value += first * _series_value(alpha, beta, 1.0 - excess, s, max_terms)[0]
    if second != 0.0:
        value += (second * cmath.exp(excess * math.log(s))
                  * _series_value(gamma - alpha, gamma - beta, 1.0 + excess, s, max_terms)[0])
    return value

