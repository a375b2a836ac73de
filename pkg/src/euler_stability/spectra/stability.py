"""
Stability taxonomy of classes and full spectral analysis of a single class.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from ..charpoly import certified_root, lambda_dagger
from ..errors import ConsistencyError
from ..lattice import (ClassDescriptor, LatticeVector, TruncationKind, alpha, rho_of_mode, rho_sequence,
                       unstable_disc)
from ..truncation import ClassMatrix, class_matrix
from .eigen import DEFAULT_TOL_REL, Classification, EigenvalueType, classify, eigenvalues

logger = logging.getLogger(__name__)

CERTIFICATE_SLACK = 1e-9


class StabilityCase(Enum):
    """How a class meets the unstable disc."""
    ZERO_ALPHA = "ZeroAlpha"
    STABLE = "Stable"
    CASE_I = "CaseI"
    CASE_II = "CaseII"
    CASE_III = "CaseIII"


def stability_case(descriptor: ClassDescriptor, rho: Optional[np.ndarray] = None) -> StabilityCase:
    """
    Classify a class by the sign pattern of its ρ-sequence.

    Args:
        descriptor: The class
        rho: Precomputed ρ-sequence (computed when omitted)

    Returns:
        ZeroAlpha, Stable, CaseI, CaseII or CaseIII

    Raises:
        ConsistencyError: If a Galerkin class shows non-consecutive disc modes
    """
    if alpha(descriptor.leader, descriptor.p, 1.0, descriptor.domain, descriptor.kind) == 0.0:
        return StabilityCase.ZERO_ALPHA
    rho = rho_sequence(descriptor) if rho is None else np.asarray(rho)
    negative = np.flatnonzero(rho < 0.0)
    if len(negative) == 0:
        return StabilityCase.STABLE
    if len(negative) == 1:
        return StabilityCase.CASE_I
    if len(negative) == 2:
        first, second = int(negative[0]), int(negative[1])
        n = len(rho)
        consecutive = second - first == 1 or (descriptor.cyclic and (first - second) % n == 1)
        if consecutive:
            return StabilityCase.CASE_II
    if descriptor.kind is TruncationKind.GALERKIN:
        raise ConsistencyError(f"Galerkin class led by {descriptor.leader} meets the disc at "
                               f"non-consecutive modes {negative.tolist()}")
    return StabilityCase.CASE_III


def _untruncated_rho(a: LatticeVector, k: int, p: LatticeVector) -> Optional[float]:
    m = a + k * p
    return None if m.is_zero() else rho_of_mode(m, p)


def reality_condition(a: LatticeVector, p: LatticeVector) -> bool:
    """
    Reality condition for the class led by a lens point a.

    True iff ρ_0 < 0, ρ_{±1} > 0 and (ρ_0 + ρ_2 < 0 or ρ_0 + ρ_{-2} < 0), using the
    untruncated ρ of the modes a + k·p.
    """
    values = {k: _untruncated_rho(a, k, p) for k in (-2, -1, 0, 1, 2)}
    if any(v is None for v in values.values()):
        return False
    if not (values[0] < 0.0 and values[1] > 0.0 and values[-1] > 0.0):
        return False
    return values[0] + values[2] < 0.0 or values[0] + values[-2] < 0.0


def find_case_i_leader(p: LatticeVector) -> Optional[LatticeVector]:
    """
    First point of the unstable disc (lexicographic order) satisfying the reality condition.

    Returns:
        A suitable leader, or None (which happens only for p = (1,0), (1,1), (1,2) up to symmetry)
    """
    for a in sorted(unstable_disc(p)):
        if not a.is_zero() and reality_condition(a, p):
            return a
    return None


@dataclass
class Certificates:
    """λ† and the recurrence-only root, both scaled by |α|."""
    lambda_dagger: float
    bracketed_root: Optional[float] = None


@dataclass
class ClassSpectrum:
    """Spectrum of one class with its classification and certificates."""
    descriptor: ClassDescriptor
    gamma: float
    alpha: float
    rho: np.ndarray
    case: StabilityCase
    matrix_eigenvalues: Optional[np.ndarray]
    classification: Optional[Classification]
    certificates: Optional[Certificates] = None

    @property
    def solved(self) -> bool:
        return self.matrix_eigenvalues is not None

    @property
    def eigenvalues(self) -> Optional[np.ndarray]:
        """Spectrum of α·A."""
        if self.matrix_eigenvalues is None:
            return None
        return self.alpha * self.matrix_eigenvalues

    def real_eigenvalue(self, scaled: bool = False) -> Optional[float]:
        """Largest real eigenvalue of A (or of α·A when scaled), None if there is none."""
        if self.classification is None or self.matrix_eigenvalues is None:
            return None
        values = self.eigenvalues if scaled else self.matrix_eigenvalues
        mask = self.classification.labels == EigenvalueType.REAL
        if not np.any(mask):
            return None
        return float(np.max(values[mask].real))


def analyze_class(descriptor: ClassDescriptor, gamma: float, tol_rel: float = DEFAULT_TOL_REL,
                  solve_stable: bool = True) -> ClassSpectrum:
    """
    Build, solve, classify and certify one class.

    Args:
        descriptor: The class
        gamma: Equilibrium amplitude
        tol_rel: Classification tolerance relative to the spectral radius
        solve_stable: Run the dense solver on Stable classes too

    Returns:
        ClassSpectrum; certificates are attached for case-(i) classes with a valid λ†

    Raises:
        EigensolverError, ClassificationError: Propagated from the solver and classifier
        ConsistencyError: If the dense real eigenvalue falls below the certified bound
    """
    matrix = class_matrix(descriptor, gamma)
    if matrix.alpha == 0.0:
        zeros = np.zeros(descriptor.size, dtype=complex)
        classification = Classification(zero=descriptor.size,
                                        labels=np.full(descriptor.size, EigenvalueType.ZERO, dtype=object))
        return ClassSpectrum(descriptor, gamma, 0.0, matrix.rho, StabilityCase.ZERO_ALPHA, zeros, classification)

    case = stability_case(descriptor, matrix.rho)
    if case is StabilityCase.STABLE and not solve_stable:
        return ClassSpectrum(descriptor, gamma, matrix.alpha, matrix.rho, case, None, None)

    values = eigenvalues(matrix.entries)
    # classification is invariant under the real scaling by α
    classification = classify(values, tol_rel=tol_rel)
    spectrum = ClassSpectrum(descriptor, gamma, matrix.alpha, matrix.rho, case, values, classification)
    if case is StabilityCase.CASE_I:
        spectrum.certificates = _certify(spectrum, matrix)
    logger.debug("Class %s: %s, %s", descriptor.leader, case.value, classification.counts())
    return spectrum


def _certify(spectrum: ClassSpectrum, matrix: ClassMatrix) -> Optional[Certificates]:
    bound = lambda_dagger(matrix.rho, matrix.descriptor.kind)
    if bound is None:
        return None
    scale = abs(matrix.alpha)
    root = certified_root(matrix.rho, matrix.descriptor.kind)
    certificates = Certificates(bound * scale, None if root is None else root * scale)
    if root is not None:
        dense = spectrum.real_eigenvalue()
        if dense is None or dense < bound - CERTIFICATE_SLACK:
            raise ConsistencyError(f"Class {matrix.descriptor.leader}: dense real eigenvalue {dense} "
                                   f"below the certified bound {bound:.12f}")
    return certificates


def count_hyperbolic(spectra: Iterable[ClassSpectrum]) -> int:
    """Number of eigenvalues off the imaginary axis over a set of classes."""
    return sum(s.classification.nonimaginary for s in spectra if s.classification is not None)


def eigenvalue_table(spectra: Iterable[ClassSpectrum]) -> pd.DataFrame:
    """
    All solved eigenvalues of α·A, one row each, sorted by (re, im, leader).
    """
    rows = []
    for spectrum in spectra:
        if not spectrum.solved:
            continue
        leader = spectrum.descriptor.leader
        for value, label in zip(spectrum.eigenvalues, spectrum.classification.labels):
            rows.append({
                'leader_x1': leader.x1,
                'leader_x2': leader.x2,
                're': float(value.real),
                'im': float(value.imag),
                'type': label.value,
            })
    table = pd.DataFrame(rows, columns=['leader_x1', 'leader_x2', 're', 'im', 'type'])
    return table.sort_values(['re', 'im', 'leader_x1', 'leader_x2'], kind='mergesort').reset_index(drop=True)


def describe_unstable(classification: Classification) -> str:
    """Short name of the hyperbolic content of one class."""
    parts = []
    if classification.real_pairs:
        parts.append("real pair" if classification.real_pairs == 1 else f"{classification.real_pairs} real pairs")
    if classification.quadruplets:
        parts.append("quadruplet" if classification.quadruplets == 1
                     else f"{classification.quadruplets} quadruplets")
    return " + ".join(parts) if parts else "none"


def leader_type_table(spectra: Iterable[ClassSpectrum]) -> pd.DataFrame:
    """One row per class with hyperbolic eigenvalues: leader, case and eigenvalue type."""
    rows = []
    for spectrum in spectra:
        if spectrum.classification is None or spectrum.classification.nonimaginary == 0:
            continue
        leader = spectrum.descriptor.leader
        rows.append({
            'leader_x1': leader.x1,
            'leader_x2': leader.x2,
            'case': spectrum.case.value,
            'type': describe_unstable(spectrum.classification),
            'real_eigenvalue': spectrum.real_eigenvalue(scaled=True),
        })
    return pd.DataFrame(rows, columns=['leader_x1', 'leader_x2', 'case', 'type', 'real_eigenvalue'])
