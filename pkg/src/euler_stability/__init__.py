"""
Main module for the euler_stability package.
Provides a unified interface for the linear stability analysis of truncated 2D Euler equilibria.
"""

__version__ = "0.1.0"

from typing import Any, Dict, List, Optional

from .lattice import Domain, LatticeManager, LatticeVector, TruncationKind, ClassDescriptor
from .truncation import TruncationManager
from .spectra import SpectraManager, ClassSpectrum, DEFAULT_TOL_REL, count_hyperbolic, leader_type_table
from .charpoly import CharPolyManager
from .density import DensityManager


class EulerStabilitySystem:
    """Main interface for the stability analysis of one equilibrium Γ·cos(p·x)."""

    def __init__(self, p: LatticeVector, gamma: float = 0.5, kind: TruncationKind = TruncationKind.ZEITLIN,
                 tol_rel: float = DEFAULT_TOL_REL, threads: int = 1):
        """
        Initialize the stability system.

        Args:
            p: Equilibrium wave vector
            gamma: Equilibrium amplitude Γ (default 0.5)
            kind: Truncation kind (default Zeitlin)
            tol_rel: Classification tolerance relative to the spectral radius
            threads: Worker threads for ensemble sweeps
        """
        if p.is_zero():
            raise ValueError("The equilibrium wave vector must be nonzero")
        self.p = p
        self.gamma = gamma
        self.kind = kind
        self.lattice_manager = LatticeManager(p, kind)
        self.truncation_manager = TruncationManager(p, gamma, kind)
        self.spectra_manager = SpectraManager(gamma, tol_rel, threads)
        self.charpoly_manager = CharPolyManager()
        self.density_manager = DensityManager(gamma)

    def domain(self, N: Optional[int] = None, n_tilde: Optional[int] = None, strict: bool = False) -> Domain:
        """
        Truncation domain from either N or the admissible index ñ.

        Raises:
            AdmissibilityError: If ñ is too small, or strict mode rejects N
        """
        return self.lattice_manager.domain_for(N, n_tilde, strict)

    def analyze_class(self, a: LatticeVector, domain: Domain) -> ClassSpectrum:
        """
        Spectrum, stability case and certificates of the class led by a.

        Args:
            a: Class leader inside the domain
            domain: Truncation domain

        Returns:
            Solved ClassSpectrum
        """
        return self.spectra_manager.analyze(self.lattice_manager.class_of(a, domain))

    def analyze_ensemble(self, domain: Domain, fast: bool = False) -> List[ClassSpectrum]:
        """
        Analyse every canonical class of the domain.

        Args:
            domain: Truncation domain
            fast: Leave Stable classes unsolved

        Returns:
            Class spectra in canonical order
        """
        classes: List[ClassDescriptor] = self.lattice_manager.classes(domain)
        return self.spectra_manager.analyze_all(classes, solve_stable=not fast)

    def ensemble_summary(self, domain: Domain, fast: bool = False) -> Dict[str, Any]:
        """
        Hyperbolic eigenvalue counts of the whole domain next to the disc census.

        Returns:
            Dictionary with nonimaginary/real/complex counts, the census and the per-leader table
        """
        spectra = self.analyze_ensemble(domain, fast)
        solved = [s.classification for s in spectra if s.classification is not None]
        real = sum(2 * c.real_pairs for c in solved)
        complex_ = sum(4 * c.quadruplets for c in solved)
        census = self.lattice_manager.disc_census()
        return {
            'nonimaginary': count_hyperbolic(spectra),
            'real': real,
            'complex': complex_,
            'interior_points': census['interior_points'],
            'lens_points': census['lens_points'],
            'leader_types': leader_type_table(spectra),
        }

    def certificate(self, a: LatticeVector, domain: Domain) -> Dict[str, Any]:
        """Characteristic-polynomial certificate of the class led by a (eigenvalues of A, α omitted)."""
        matrix = self.truncation_manager.class_matrices([self.lattice_manager.class_of(a, domain)])[0]
        return self.charpoly_manager.certificate(matrix.rho, self.kind)

    def density_comparison(self, a: LatticeVector, N: int) -> Dict[str, Any]:
        """Zeitlin imaginary-part histogram of the class led by a against the limiting density."""
        return self.density_manager.compare(a, self.p, N)


__all__ = ['EulerStabilitySystem', '__version__']
