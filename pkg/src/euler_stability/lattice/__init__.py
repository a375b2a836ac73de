"""
Lattice module for the euler_stability package.
Provides a unified interface for truncation domains, class enumeration and admissible grid sizes.
"""

from typing import List

from ..errors import AdmissibilityError

from .geometry import (Domain, LatticeVector, TruncationKind, ORIGIN, MAX_N, wrap, wrap_array,
                       unstable_disc, lens_points, in_reality_disc)
from .classes import (ClassDescriptor, alpha, reduced_cross, rho, rho_of_mode, rho_sequence,
                      enumerate_class, galerkin_chain, canonical_classes, canonical_leaders,
                      zeitlin_class_size, galerkin_class_bound, admissible_N, is_admissible_N,
                      admissible_sequence)


class LatticeManager:
    """Main interface for lattice geometry in the euler_stability package."""

    def __init__(self, p: LatticeVector, kind: TruncationKind = TruncationKind.ZEITLIN):
        """
        Initialize lattice manager.

        Args:
            p: Equilibrium wave vector
            kind: Truncation kind used for class enumeration
        """
        if p.is_zero():
            raise ValueError("Wave vector p must be nonzero")
        self.p = p
        self.kind = kind

    def domain_for(self, N: int = None, n_tilde: int = None, strict: bool = False) -> Domain:
        """
        Build the truncation domain from either N or the admissible index ñ.

        Raises:
            ValueError: If neither or both sizes are given
            AdmissibilityError: If strict mode rejects N
        """
        if (N is None) == (n_tilde is None):
            raise ValueError("Exactly one of N and n_tilde must be given")
        if n_tilde is not None:
            return Domain(admissible_N(self.p, n_tilde))
        if strict and self.kind is TruncationKind.ZEITLIN and not is_admissible_N(self.p, N):
            raise AdmissibilityError(f"N={N} is not admissible for p={self.p}")
        return Domain(N)

    def classes(self, domain: Domain) -> List[ClassDescriptor]:
        """Canonical class partition of the domain."""
        return canonical_classes(self.p, domain, self.kind)

    def class_of(self, a: LatticeVector, domain: Domain) -> ClassDescriptor:
        return enumerate_class(a, self.p, domain, self.kind)

    def disc_census(self) -> dict:
        """Interior and lens point counts of the unstable disc."""
        disc = unstable_disc(self.p)
        return {
            'interior_points': len(disc) - 1,
            'lens_points': len(lens_points(self.p)),
        }


__all__ = [
    'LatticeManager', 'Domain', 'LatticeVector', 'TruncationKind', 'ORIGIN', 'MAX_N', 'wrap',
    'wrap_array', 'unstable_disc', 'lens_points', 'in_reality_disc', 'ClassDescriptor', 'alpha',
    'reduced_cross', 'rho', 'rho_of_mode', 'rho_sequence', 'enumerate_class', 'galerkin_chain',
    'canonical_classes', 'canonical_leaders', 'zeitlin_class_size', 'galerkin_class_bound',
    'admissible_N', 'is_admissible_N', 'admissible_sequence',
]
