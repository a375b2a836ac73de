"""
Exponential decay of the eigenvector of a real class eigenvalue.

Far from the disc mode ρ_k tends to 1/|p|², so the eigenvector recurrence
λ v_k = ρ_{k+1} v_{k+1} - ρ_{k-1} v_{k-1} approaches v_{k+1} = λ|p|² v_k + v_{k-1},
whose characteristic roots solve μ² - λ|p|²μ - 1 = 0.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..truncation import ClassMatrix
from .eigen import eigenpairs

logger = logging.getLogger(__name__)

EIGENVALUE_MATCH_TOL = 1e-8
MIN_CLASS_SIZE = 41


@dataclass
class DecayAnalysis:
    """Asymptotic decay data of one real eigenvector."""
    lambda_: float
    mu1: float
    mu2: float
    tail_ratio_error: float
    hamiltonian_residual: float


def decay_roots(lam: float, p_norm_sq: int) -> Tuple[float, float]:
    """
    Roots (μ1, μ2) of μ² - λ|p|²μ - 1 = 0 with |μ1| < 1 < |μ2| and μ1·μ2 = -1.
    """
    b = lam * p_norm_sq
    mu2 = 0.5 * (b + math.copysign(math.sqrt(b * b + 4.0), b))
    return -1.0 / mu2, mu2


def _tail_indices(n: int, disc: int, cyclic: bool) -> np.ndarray:
    """Indices k (in walking order) whose ratios |v_{k+1}/v_k| form the measured tail."""
    skip = max(3, n // 40)
    if cyclic:
        # stop well before the antipode of the disc mode, where both tails meet
        stop = n // 2 - max(skip, n // 8)
        return (disc + np.arange(skip, stop)) % n
    forward = n - 1 - disc
    backward = disc
    if forward >= backward:
        stop = disc + skip + (3 * (forward - skip)) // 4
        return np.arange(disc + skip, stop)
    stop = disc - skip - (3 * (backward - skip)) // 4
    return np.arange(disc - skip, stop, -1)


def eigenvector_decay(matrix: ClassMatrix, lam: float) -> DecayAnalysis:
    """
    Compare the eigenvector tail of a real eigenvalue of A with the predicted ratio |μ1|.

    Args:
        matrix: Class matrix (the eigenvalue refers to A, without α)
        lam: A real eigenvalue of A

    Returns:
        DecayAnalysis with the largest relative deviation of |v_{k+1}/v_k| from |μ1| over the
        tail and the Hamiltonian residual |Σ ρ_k v_k²| / ‖v‖²

    Raises:
        ValueError: If lam is not real, not an eigenvalue, or the class is too small
    """
    if isinstance(lam, complex):
        if lam.imag != 0.0:
            raise ValueError(f"Eigenvector decay needs a real eigenvalue, got {lam}")
        lam = lam.real
    n = matrix.size
    if n < MIN_CLASS_SIZE:
        raise ValueError(f"Class of size {n} is too small for a tail measurement (need {MIN_CLASS_SIZE})")

    values, vectors = eigenpairs(matrix.entries)
    nearest = int(np.argmin(np.abs(values - lam)))
    scale = max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    if abs(values[nearest] - lam) > EIGENVALUE_MATCH_TOL * scale or abs(values[nearest].imag) > EIGENVALUE_MATCH_TOL * scale:
        raise ValueError(f"{lam} is not a real eigenvalue of the class matrix")
    vector = vectors[:, nearest]
    # a real eigenvector up to a complex phase
    vector = np.real(vector * np.exp(-1j * np.angle(vector[np.argmax(np.abs(vector))])))

    residual = np.linalg.norm(matrix.entries @ vector - lam * vector)
    if residual > EIGENVALUE_MATCH_TOL * scale * np.linalg.norm(vector) * n:
        raise ValueError(f"{lam} fails the eigenpair residual check ({residual:.3e})")

    mu1, mu2 = decay_roots(lam, matrix.descriptor.p.norm_sq())
    disc = int(np.argmin(matrix.rho))
    step = 1
    tail = _tail_indices(n, disc, matrix.descriptor.cyclic)
    if len(tail) > 1 and not matrix.descriptor.cyclic and tail[1] < tail[0]:
        step = -1
    following = (tail + step) % n
    ratios = np.abs(vector[following] / vector[tail])
    tail_error = float(np.max(np.abs(ratios - abs(mu1)))) / abs(mu1)

    hamiltonian_residual = abs(float(np.sum(matrix.rho * vector * vector))) / float(np.dot(vector, vector))
    logger.debug("Eigenvector decay for λ=%.6g: |μ1|=%.6f, tail error %.3e, H residual %.3e",
                 lam, abs(mu1), tail_error, hamiltonian_residual)
    return DecayAnalysis(lam, mu1, mu2, tail_error, hamiltonian_residual)
