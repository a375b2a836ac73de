"""
Linearisation about the equilibrium: the full Jacobian and the per-class matrices A = J·S.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from ..lattice import (ClassDescriptor, Domain, LatticeVector, TruncationKind, alpha, rho_of_mode,
                       rho_sequence, wrap)
from .mode_state import ModeState

logger = logging.getLogger(__name__)


@dataclass
class FullJacobian:
    """Jacobian of the truncated field at the equilibrium, over the modes D∖{0}."""
    modes: List[LatticeVector]
    matrix: np.ndarray
    p: LatticeVector
    gamma: float
    kind: TruncationKind
    domain: Domain

    def index(self) -> Dict[LatticeVector, int]:
        return {mode: i for i, mode in enumerate(self.modes)}

    def apply(self, state: ModeState) -> ModeState:
        """Linearised field J·δ for a perturbation state."""
        vector = np.array([state[mode] for mode in self.modes])
        image = self.matrix @ vector
        return ModeState.from_mapping(self.domain, dict(zip(self.modes, image)))


def _neighbour(k: LatticeVector, step: LatticeVector, domain: Domain, kind: TruncationKind):
    target = k + step
    if kind is TruncationKind.ZEITLIN:
        return wrap(target, domain)
    return target if domain.contains(target) else None


def full_jacobian(p: LatticeVector, gamma: float, domain: Domain, kind: TruncationKind) -> FullJacobian:
    """
    Dense linearisation over all nonzero modes.

    Row k reads ω̇_k = c_k [ρ(k+p) ω_{k+p} - ρ(k-p) ω_{k-p}] with c_k = Γ(k×p) (Galerkin)
    or Γ sin(ε k×p)/ε (Zeitlin, neighbours wrapped).

    Args:
        p: Equilibrium wave vector, a nonzero mode of D
        gamma: Equilibrium amplitude
        domain: Truncation domain
        kind: Truncation kind

    Returns:
        FullJacobian in lexicographic mode order
    """
    if p.is_zero() or not domain.contains(p):
        raise ValueError(f"p={p} must be a nonzero mode of the domain with N={domain.N}")
    modes = [k for k in domain.points() if not k.is_zero()]
    position = {mode: i for i, mode in enumerate(modes)}
    matrix = np.zeros((len(modes), len(modes)))

    for row, k in enumerate(modes):
        coefficient = alpha(k, p, gamma, domain, kind)
        if coefficient == 0.0:
            continue
        for step, sign in ((p, 1.0), (-p, -1.0)):
            target = _neighbour(k, step, domain, kind)
            if target is None or target.is_zero():
                continue
            matrix[row, position[target]] += sign * coefficient * rho_of_mode(target, p)

    logger.debug("Built %s full Jacobian of order %d for p=%s", kind.value, len(modes), p)
    return FullJacobian(modes, matrix, p, gamma, kind, domain)


def linearized_field(state: ModeState, p: LatticeVector, gamma: float, kind: TruncationKind) -> ModeState:
    """Linearised field at the equilibrium applied to a perturbation state."""
    return full_jacobian(p, gamma, state.domain, kind).apply(state)


@dataclass
class ClassMatrix:
    """Class system ω̇ = α·A·ω with A = J·S."""
    descriptor: ClassDescriptor
    rho: np.ndarray
    alpha: float
    gamma: float
    entries: np.ndarray
    J: np.ndarray
    S: np.ndarray

    @property
    def size(self) -> int:
        return len(self.rho)

    @property
    def scaled(self) -> np.ndarray:
        """α·A, the matrix of the class dynamics."""
        return self.alpha * self.entries

    def gershgorin_bound(self) -> float:
        """max_k |ρ_{k-1}| + |ρ_{k+1}| over the rows of A."""
        return float(np.max(np.abs(self.entries).sum(axis=1))) if self.size else 0.0


def skew_pattern(n: int, cyclic: bool) -> np.ndarray:
    """The ±1 skew-symmetric pattern J: +1 above, -1 below the diagonal, wrapped when cyclic."""
    pattern = np.zeros((n, n))
    if n < 2:
        return pattern
    upper = np.arange(n - 1)
    pattern[upper, upper + 1] = 1.0
    pattern[upper + 1, upper] = -1.0
    if cyclic and n > 2:
        pattern[n - 1, 0] = 1.0
        pattern[0, n - 1] = -1.0
    return pattern


def class_matrix(descriptor: ClassDescriptor, gamma: float) -> ClassMatrix:
    """
    Matrix of the class recurrence ω̇_k = α(ρ_{k+1}ω_{k+1} - ρ_{k-1}ω_{k-1}).

    Indices run modulo n for Zeitlin classes.

    Args:
        descriptor: The class
        gamma: Equilibrium amplitude

    Returns:
        ClassMatrix with entries = J·S; alpha is 0.0 for classes carrying no dynamics
    """
    class_alpha = alpha(descriptor.leader, descriptor.p, gamma, descriptor.domain, descriptor.kind)
    rho = rho_sequence(descriptor, allow_origin=(class_alpha == 0.0))
    J = skew_pattern(descriptor.size, descriptor.cyclic)
    S = np.diag(rho)
    return ClassMatrix(descriptor, rho, class_alpha, gamma, J @ S, J, S)
