"""
Sign certificates for the real eigenvalue of a case-(i) class.

With the disc mode at index 0 and the reality condition ρ_0 + ρ_2 < 0, the class
characteristic polynomial is negative at λ† = √(-ρ_1(ρ_0 + ρ_2)); since it grows like xⁿ,
a real root lies above λ†. The root is then bracketed and bisected using the recurrences
alone, without a dense eigensolver.
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import ConsistencyError
from ..lattice import TruncationKind
from .recurrence import CoefficientSequence, ScaledValue, a_eval_scaled, t_eval_scaled

logger = logging.getLogger(__name__)

BISECTION_TOL = 1e-12
MAX_DOUBLINGS = 2000


def lower_bound_lambda(rho: Sequence[float], side: str = "front") -> Optional[float]:
    """
    λ† from one side of the disc mode.

    Args:
        rho: ρ-sequence re-rooted so that ρ_0 is the disc mode (indices taken cyclically)
        side: "front" uses ρ_1, ρ_2; "back" uses ρ_{n-1}, ρ_{n-2}

    Returns:
        √(-ρ_1(ρ_0 + ρ_2)) (or its back analogue) if the radicand is positive, else None
    """
    if len(rho) < 3:
        return None
    if side == "front":
        radicand = -rho[1] * (rho[0] + rho[2])
    elif side == "back":
        radicand = -rho[-1] * (rho[0] + rho[-2])
    else:
        raise ValueError(f"Unknown side '{side}' (expected front or back)")
    return math.sqrt(radicand) if radicand > 0.0 else None


def disc_index(rho: Sequence[float]) -> Optional[int]:
    """Index of the unique negative ρ, or None if there is not exactly one."""
    negative = np.flatnonzero(np.asarray(rho) < 0.0)
    return int(negative[0]) if len(negative) == 1 else None


def lambda_dagger(rho: Sequence[float], kind: TruncationKind) -> Optional[float]:
    """
    The larger valid λ† of the two sides of the disc mode.

    Zeitlin classes are rotated cyclically so the disc mode sits at index 0. Galerkin classes
    keep their linear order; a side whose neighbours fall off the chain gives no bound.
    """
    rho = np.asarray(rho, dtype=float)
    d = disc_index(rho)
    if d is None:
        return None
    if kind is TruncationKind.ZEITLIN:
        rooted = np.roll(rho, -d)
        bounds = [lower_bound_lambda(rooted, side) for side in ("front", "back")]
    else:
        bounds = []
        if d + 2 < len(rho):
            bounds.append(lower_bound_lambda(np.array([rho[d], rho[d + 1], rho[d + 2]]), "front"))
        if d - 2 >= 0:
            bounds.append(lower_bound_lambda(np.array([rho[d], rho[d - 1], rho[d - 2]]), "front"))
    valid = [b for b in bounds if b is not None]
    return max(valid) if valid else None


def characteristic_scaled(rho: Sequence[float], kind: TruncationKind, x: float) -> ScaledValue:
    """Class characteristic polynomial at x: 𝒜 for Zeitlin, 𝒯_0^{n-1} for Galerkin."""
    if kind is TruncationKind.ZEITLIN:
        return a_eval_scaled(CoefficientSequence.from_rho(rho, cyclic=True), x)
    seq = CoefficientSequence.from_rho(rho, cyclic=False)
    return t_eval_scaled(seq, 0, seq.n - 1, x)


def characteristic_sign(rho: Sequence[float], kind: TruncationKind, x: float) -> int:
    return characteristic_scaled(rho, kind, x).sign()


def certify_negative_at_bound(rho: Sequence[float], kind: TruncationKind) -> bool:
    """
    Check that the class characteristic polynomial is negative at λ†.

    Returns:
        True if λ† exists and the polynomial value there is negative; False when λ† is
        absent (certificate inapplicable) or the sign is not negative
    """
    bound = lambda_dagger(rho, kind)
    if bound is None:
        return False
    return characteristic_sign(rho, kind, bound) < 0


def gershgorin_bound(rho: Sequence[float], kind: TruncationKind) -> float:
    """max_k |ρ_{k-1}| + |ρ_{k+1}|, neighbours wrapped for Zeitlin."""
    values = np.abs(np.asarray(rho, dtype=float))
    if kind is TruncationKind.ZEITLIN:
        return float(np.max(np.roll(values, 1) + np.roll(values, -1)))
    padded = np.concatenate([[0.0], values, [0.0]])
    return float(np.max(padded[:-2] + padded[2:]))


def bracket_real_root(rho: Sequence[float], kind: TruncationKind,
                      start: Optional[float] = None) -> Tuple[float, float]:
    """
    Interval (lo, hi) with the characteristic polynomial negative at lo and positive at hi.

    Starting from λ† (or `start`), hi doubles until the sign turns positive, capped at the
    Gershgorin bound.

    Raises:
        ValueError: If the polynomial is not negative at the starting point
        ConsistencyError: If no sign change is found below the Gershgorin bound
    """
    lo = start if start is not None else lambda_dagger(rho, kind)
    if lo is None:
        lo = np.finfo(float).eps
    if characteristic_sign(rho, kind, lo) >= 0:
        raise ValueError(f"Characteristic polynomial is not negative at the bracket start {lo:.6g}")
    ceiling = gershgorin_bound(rho, kind)
    hi = lo
    for _ in range(MAX_DOUBLINGS):
        hi = min(2.0 * hi, ceiling)
        if characteristic_sign(rho, kind, hi) > 0:
            return lo, hi
        if hi >= ceiling:
            break
    raise ConsistencyError(f"No sign change of the characteristic polynomial below {ceiling:.6g}")


def bisect_root(rho: Sequence[float], kind: TruncationKind, lo: float, hi: float,
                tol: float = BISECTION_TOL) -> float:
    """Bisection on a sign-changing bracket down to width `tol`."""
    sign_lo = characteristic_sign(rho, kind, lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        sign_mid = characteristic_sign(rho, kind, mid)
        if sign_mid == 0:
            return mid
        if sign_mid == sign_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def certified_root(rho: Sequence[float], kind: TruncationKind, tol: float = BISECTION_TOL) -> Optional[float]:
    """Recurrence-only real root above λ†, or None when the certificate does not apply."""
    if not certify_negative_at_bound(rho, kind):
        return None
    lo, hi = bracket_real_root(rho, kind)
    root = bisect_root(rho, kind, lo, hi, tol)
    logger.debug("Certified real root %.12f in [%.6g, %.6g]", root, lo, hi)
    return root
