"""
Vorticity mode states and the equilibrium 2Γcos(p·x).
"""

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..lattice import Domain, LatticeVector


@dataclass
class ModeState:
    """
    Real Fourier coefficients ω_k for all modes k in D.

    Coefficients are stored in a (2N+1) x (2N+1) array indexed by (k1 + N, k2 + N),
    so the flattened array follows the lexicographic mode order of the domain.
    """
    domain: Domain
    coefficients: np.ndarray

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        shape = (self.domain.width, self.domain.width)
        if self.coefficients.shape != shape:
            raise ValueError(f"Coefficient array must have shape {shape}, got {self.coefficients.shape}")
        if self.coefficients[self.domain.N, self.domain.N] != 0.0:
            raise ValueError("The mean mode (0,0) must have zero coefficient")

    @classmethod
    def zeros(cls, domain: Domain) -> "ModeState":
        return cls(domain, np.zeros((domain.width, domain.width)))

    @classmethod
    def from_mapping(cls, domain: Domain, values: Mapping[LatticeVector, float]) -> "ModeState":
        """
        Build a state from a mode -> coefficient mapping; unspecified modes are zero.

        Raises:
            ValueError: If a mode lies outside D
        """
        state = cls.zeros(domain)
        for mode, value in values.items():
            state[mode] = value
        return state

    @classmethod
    def from_flat(cls, domain: Domain, flat: np.ndarray) -> "ModeState":
        return cls(domain, np.asarray(flat, dtype=float).reshape(domain.width, domain.width))

    def _position(self, mode: LatticeVector):
        if not self.domain.contains(mode):
            raise ValueError(f"Mode {mode} lies outside the domain with N={self.domain.N}")
        return mode.x1 + self.domain.N, mode.x2 + self.domain.N

    def __getitem__(self, mode: LatticeVector) -> float:
        return float(self.coefficients[self._position(mode)])

    def __setitem__(self, mode: LatticeVector, value: float):
        if mode.is_zero() and value != 0.0:
            raise ValueError("The mean mode (0,0) must have zero coefficient")
        self.coefficients[self._position(mode)] = value

    @property
    def flat(self) -> np.ndarray:
        return self.coefficients.ravel()

    def copy(self) -> "ModeState":
        return ModeState(self.domain, self.coefficients.copy())

    def _check_compatible(self, other: "ModeState"):
        if other.domain != self.domain:
            raise ValueError("Mode states live on different domains")

    def __add__(self, other: "ModeState") -> "ModeState":
        self._check_compatible(other)
        return ModeState(self.domain, self.coefficients + other.coefficients)

    def __sub__(self, other: "ModeState") -> "ModeState":
        self._check_compatible(other)
        return ModeState(self.domain, self.coefficients - other.coefficients)

    def __mul__(self, factor: float) -> "ModeState":
        return ModeState(self.domain, self.coefficients * factor)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coefficients)))


@dataclass(frozen=True)
class Equilibrium:
    """The steady vorticity 2Γcos(p·x), i.e. ω_{±p} = Γ."""
    p: LatticeVector
    gamma: float

    def state(self, domain: Domain) -> ModeState:
        """
        Mode state of the equilibrium on a domain.

        Raises:
            ValueError: If p is zero or lies outside D
        """
        if self.p.is_zero():
            raise ValueError("Equilibrium wave vector p must be nonzero")
        return ModeState.from_mapping(domain, {self.p: self.gamma, -self.p: self.gamma})


def equilibrium_state(equilibrium: Equilibrium, domain: Domain) -> ModeState:
    return equilibrium.state(domain)


def random_state(domain: Domain, rng: np.random.Generator, scale: float = 1.0) -> ModeState:
    """Normally distributed coefficients with the mean mode removed."""
    values = rng.normal(scale=scale, size=(domain.width, domain.width))
    values[domain.N, domain.N] = 0.0
    return ModeState(domain, values)


def hamiltonian(state: ModeState) -> float:
    """
    Energy H = ½ Σ_{k≠0} ω_k ω_{-k} / |k|².

    Args:
        state: Mode state

    Returns:
        The truncated Hamiltonian
    """
    domain = state.domain
    modes = domain.mode_array()
    norm_sq = (modes * modes).sum(axis=1)
    weights = np.where(norm_sq > 0, 1.0 / np.where(norm_sq > 0, norm_sq, 1), 0.0)
    flat = state.flat
    # ω_{-k} in lexicographic order is the reversed array
    return 0.5 * float(np.sum(weights * flat * flat[::-1]))
