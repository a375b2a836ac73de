"""
Spectra module for the euler_stability package.
Provides a unified interface for class spectra, their classification and stability cases.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List

from ..lattice import ClassDescriptor
from .eigen import (DEFAULT_TOL_REL, PAIRING_TOL_REL, EigenvalueType, Classification, eigenvalues, eigenpairs,
                    spectral_scale, label_eigenvalues, classify)
from .stability import (StabilityCase, Certificates, ClassSpectrum, stability_case, reality_condition,
                        find_case_i_leader, analyze_class, count_hyperbolic, eigenvalue_table,
                        leader_type_table, describe_unstable)
from .decay import DecayAnalysis, decay_roots, eigenvector_decay

logger = logging.getLogger(__name__)


class SpectraManager:
    """Main interface for spectral analysis of class systems."""

    def __init__(self, gamma: float, tol_rel: float = DEFAULT_TOL_REL, threads: int = 1):
        """
        Initialize spectra manager.

        Args:
            gamma: Equilibrium amplitude Γ
            tol_rel: Classification tolerance relative to the spectral radius
            threads: Worker threads for sweeps over classes
        """
        if threads < 1:
            raise ValueError("threads must be a positive integer")
        self.gamma = gamma
        self.tol_rel = tol_rel
        self.threads = threads

    def analyze(self, descriptor: ClassDescriptor, solve_stable: bool = True) -> ClassSpectrum:
        return analyze_class(descriptor, self.gamma, self.tol_rel, solve_stable)

    def analyze_all(self, classes: List[ClassDescriptor], solve_stable: bool = True) -> List[ClassSpectrum]:
        """
        Analyse every class; results keep the order of `classes`.

        Classes carrying no dynamics never reach the dense solver. The eigensolver releases
        the GIL, so a thread pool gives real parallelism.
        """
        if self.threads == 1:
            return [self.analyze(descriptor, solve_stable) for descriptor in classes]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(lambda d: self.analyze(d, solve_stable), classes))


__all__ = [
    'SpectraManager', 'DEFAULT_TOL_REL', 'PAIRING_TOL_REL', 'EigenvalueType', 'Classification', 'eigenvalues',
    'eigenpairs', 'spectral_scale', 'label_eigenvalues', 'classify', 'StabilityCase', 'Certificates',
    'ClassSpectrum', 'stability_case', 'reality_condition', 'find_case_i_leader', 'analyze_class',
    'count_hyperbolic', 'eigenvalue_table', 'leader_type_table', 'describe_unstable', 'DecayAnalysis',
    'decay_roots', 'eigenvector_decay',
]
