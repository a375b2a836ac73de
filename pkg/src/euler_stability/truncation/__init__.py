"""
Truncation module for the euler_stability package.
Provides a unified interface for truncated vector fields, the equilibrium and its linearisation.
"""

from typing import List

import numpy as np

from ..lattice import ClassDescriptor, Domain, LatticeVector, TruncationKind
from .mode_state import ModeState, Equilibrium, equilibrium_state, random_state, hamiltonian
from .vector_field import vector_field, integrate_rk4
from .linearization import (FullJacobian, ClassMatrix, full_jacobian, linearized_field, class_matrix,
                            skew_pattern)


class TruncationManager:
    """Main interface for the truncated dynamics about one equilibrium."""

    def __init__(self, p: LatticeVector, gamma: float, kind: TruncationKind = TruncationKind.ZEITLIN):
        """
        Initialize truncation manager.

        Args:
            p: Equilibrium wave vector
            gamma: Equilibrium amplitude Γ
            kind: Truncation kind
        """
        self.equilibrium = Equilibrium(p, gamma)
        self.kind = kind

    def equilibrium_state(self, domain: Domain) -> ModeState:
        return self.equilibrium.state(domain)

    def derivative(self, state: ModeState) -> ModeState:
        return vector_field(state, self.kind)

    def energy(self, state: ModeState) -> float:
        return hamiltonian(state)

    def energy_drift(self, state: ModeState, dt: float, steps: int) -> float:
        """Absolute change of the Hamiltonian over an RK4 run."""
        final = integrate_rk4(state, self.kind, dt, steps)
        return abs(hamiltonian(final) - hamiltonian(state))

    def jacobian(self, domain: Domain) -> FullJacobian:
        return full_jacobian(self.equilibrium.p, self.equilibrium.gamma, domain, self.kind)

    def class_matrices(self, classes: List[ClassDescriptor]) -> List[ClassMatrix]:
        return [class_matrix(descriptor, self.equilibrium.gamma) for descriptor in classes]

    def block_residual(self, domain: Domain, classes: List[ClassDescriptor]) -> float:
        """
        Largest deviation between the full Jacobian and the class blocks α·A.

        Zero when the linearisation decouples exactly into the given classes.
        """
        jacobian = self.jacobian(domain)
        position = jacobian.index()
        residual = 0.0
        for matrix in self.class_matrices(classes):
            members = [m for m in matrix.descriptor.modes if not m.is_zero()]
            idx = [position[m] for m in members]
            keep = [matrix.descriptor.index_of(m) for m in members]
            block = jacobian.matrix[np.ix_(idx, idx)]
            expected = matrix.scaled[np.ix_(keep, keep)]
            residual = max(residual, float(np.max(np.abs(block - expected), initial=0.0)))
            outside = np.delete(jacobian.matrix[idx, :], idx, axis=1)
            residual = max(residual, float(np.max(np.abs(outside), initial=0.0)))
        return residual


__all__ = [
    'TruncationManager', 'ModeState', 'Equilibrium', 'equilibrium_state', 'random_state', 'hamiltonian',
    'vector_field', 'integrate_rk4', 'FullJacobian', 'ClassMatrix', 'full_jacobian',
    'linearized_field', 'class_matrix', 'skew_pattern',
]
