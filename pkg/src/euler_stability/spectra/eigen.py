"""
Dense eigenvalue computation and classification of class spectra.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.linalg

from ..errors import ClassificationError, EigensolverError

logger = logging.getLogger(__name__)

DEFAULT_TOL_REL = 1e-8
PAIRING_TOL_REL = 1e-6
RESIDUAL_FACTOR = 100.0


class EigenvalueType(Enum):
    """Location of an eigenvalue in the complex plane."""
    ZERO = "zero"
    IMAGINARY = "imaginary"
    REAL = "real"
    COMPLEX = "complex"


@dataclass
class Classification:
    """Counts of eigenvalue types for one spectrum."""
    zero: int = 0
    imaginary: int = 0
    real_pairs: int = 0
    quadruplets: int = 0
    labels: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def total(self) -> int:
        return 2 * self.real_pairs + 4 * self.quadruplets + self.imaginary + self.zero

    @property
    def nonimaginary(self) -> int:
        return 2 * self.real_pairs + 4 * self.quadruplets

    def counts(self) -> Dict[str, int]:
        return {
            'zero': self.zero,
            'imaginary': self.imaginary,
            'real_pairs': self.real_pairs,
            'quadruplets': self.quadruplets,
        }


def _check_matrix(matrix: np.ndarray) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise EigensolverError("Matrix has non-finite entries")
    return matrix


def eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """
    All eigenvalues of a dense real matrix.

    LAPACK's balanced Hessenberg QR (through scipy.linalg.eigvals) is used as a black box.

    Raises:
        EigensolverError: On non-finite input, non-convergence or non-finite output
    """
    matrix = _check_matrix(matrix)
    if matrix.size == 0:
        return np.zeros(0, dtype=complex)
    try:
        values = scipy.linalg.eigvals(matrix, check_finite=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise EigensolverError(f"Eigenvalue iteration failed to converge: {exc}")
    if not np.all(np.isfinite(values)):
        raise EigensolverError("Eigensolver returned non-finite eigenvalues")
    return values.astype(complex)


def eigenpairs(matrix: np.ndarray, check_residual: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues and unit eigenvectors (columns).

    Raises:
        EigensolverError: On failure or when ‖Av - λv‖ exceeds c·n·ulp·‖A‖ for some pair
    """
    matrix = _check_matrix(matrix)
    try:
        values, vectors = scipy.linalg.eig(matrix, check_finite=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise EigensolverError(f"Eigenvalue iteration failed to converge: {exc}")
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(vectors))):
        raise EigensolverError("Eigensolver returned non-finite output")
    if check_residual and matrix.size:
        scale = max(np.linalg.norm(matrix, 1), np.finfo(float).tiny)
        residual = np.linalg.norm(matrix @ vectors - vectors * values[None, :], axis=0)
        limit = RESIDUAL_FACTOR * matrix.shape[0] * np.finfo(float).eps * scale
        if np.max(residual) > limit:
            raise EigensolverError(f"Eigenpair residual {np.max(residual):.3e} exceeds {limit:.3e}")
    return values.astype(complex), vectors


def spectral_scale(spectrum: np.ndarray) -> float:
    """Spectral radius, the default scale for classification tolerances."""
    spectrum = np.asarray(spectrum)
    return float(np.max(np.abs(spectrum))) if spectrum.size else 0.0


def label_eigenvalues(spectrum: np.ndarray, scale: float, tol_rel: float = DEFAULT_TOL_REL) -> np.ndarray:
    """Label every eigenvalue as zero, imaginary, real or complex."""
    spectrum = np.asarray(spectrum, dtype=complex)
    tol = tol_rel * scale
    labels = np.empty(spectrum.shape, dtype=object)
    re, im = np.abs(spectrum.real), np.abs(spectrum.imag)
    labels[:] = EigenvalueType.COMPLEX
    labels[im <= tol] = EigenvalueType.REAL
    labels[re <= tol] = EigenvalueType.IMAGINARY
    labels[np.abs(spectrum) <= tol] = EigenvalueType.ZERO
    return labels


def _pair_reals(values: np.ndarray, tol: float) -> int:
    positive = np.sort(values[values > 0])
    negative = np.sort(-values[values < 0])
    if len(positive) != len(negative):
        raise ClassificationError(
            f"{len(positive)} positive vs {len(negative)} negative real eigenvalues cannot be paired")
    if len(positive) and np.max(np.abs(positive - negative)) > tol:
        raise ClassificationError("Real eigenvalues are not symmetric under λ -> -λ")
    return len(positive)


def _take_nearest(pool: list, target: complex, tol: float) -> complex:
    distances = [abs(value - target) for value in pool]
    best = int(np.argmin(distances))
    if distances[best] > tol:
        raise ClassificationError(f"No partner for {target:.6g} within {tol:.3g}")
    return pool.pop(best)


def _group_quadruplets(values: np.ndarray, tol: float) -> int:
    ordered = sorted(values, key=lambda z: (z.real, z.imag))
    first = [z for z in ordered if z.real > 0 and z.imag > 0]
    second = [z for z in ordered if z.real < 0 and z.imag > 0]
    third = [z for z in ordered if z.real < 0 and z.imag < 0]
    fourth = [z for z in ordered if z.real > 0 and z.imag < 0]
    if not (len(first) == len(second) == len(third) == len(fourth)):
        raise ClassificationError(
            f"Complex eigenvalues do not split evenly into quadrants: "
            f"{len(first)}, {len(second)}, {len(third)}, {len(fourth)}")
    for z in first:
        _take_nearest(fourth, z.conjugate(), tol)
        _take_nearest(second, -z.conjugate(), tol)
        _take_nearest(third, -z, tol)
    return len(first)


def classify(spectrum: np.ndarray, scale: Optional[float] = None, tol_rel: float = DEFAULT_TOL_REL,
             pairing_tol_rel: float = PAIRING_TOL_REL) -> Classification:
    """
    Classify a Hamiltonian spectrum.

    Args:
        spectrum: Eigenvalues
        scale: Reference magnitude (defaults to the spectral radius)
        tol_rel: Relative tolerance for the zero/imaginary/real labels
        pairing_tol_rel: Relative tolerance for matching ±λ and conjugate partners

    Returns:
        Classification counts with per-eigenvalue labels

    Raises:
        ClassificationError: If real or complex eigenvalues cannot be grouped
    """
    spectrum = np.asarray(spectrum, dtype=complex)
    scale = spectral_scale(spectrum) if scale is None else scale
    labels = label_eigenvalues(spectrum, scale, tol_rel)
    pairing_tol = max(pairing_tol_rel, tol_rel) * scale

    reals = spectrum[labels == EigenvalueType.REAL].real
    complexes = spectrum[labels == EigenvalueType.COMPLEX]
    result = Classification(
        zero=int(np.sum(labels == EigenvalueType.ZERO)),
        imaginary=int(np.sum(labels == EigenvalueType.IMAGINARY)),
        real_pairs=_pair_reals(reals, pairing_tol),
        quadruplets=_group_quadruplets(complexes, pairing_tol),
        labels=labels,
    )
    if result.total != len(spectrum):
        raise ClassificationError(f"Classified {result.total} of {len(spectrum)} eigenvalues")
    return result
