"""
Class decomposition of the truncated mode lattice.
A class collects the modes a + k·p (wrapped for Zeitlin) coupled by the linearisation.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import AdmissibilityError, ConsistencyError, DegenerateClassError
from .geometry import Domain, LatticeVector, TruncationKind, wrap, wrap_array

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassDescriptor:
    """Ordered modes of one class together with the data that generated them."""
    leader: LatticeVector
    p: LatticeVector
    kind: TruncationKind
    domain: Domain
    modes: Tuple[LatticeVector, ...]
    m1: Optional[int] = None
    m2: Optional[int] = None
    _index: Dict[LatticeVector, int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {mode: i for i, mode in enumerate(self.modes)}
        if len(index) != len(self.modes):
            raise ConsistencyError(f"Class led by {self.leader} contains duplicate modes")
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.modes)

    @property
    def cyclic(self) -> bool:
        return self.kind is TruncationKind.ZEITLIN

    def index_of(self, mode: LatticeVector) -> int:
        return self._index[mode]

    def __contains__(self, mode: LatticeVector) -> bool:
        return mode in self._index

    def mode_array(self) -> np.ndarray:
        return np.array([m.as_tuple() for m in self.modes], dtype=np.int64)

    def contains_origin(self) -> bool:
        return LatticeVector(0, 0) in self._index


def _require_nonzero(p: LatticeVector):
    if p.is_zero():
        raise ValueError("Wave vector p must be nonzero")


def reduced_cross(a: LatticeVector, p: LatticeVector, domain: Domain, kind: TruncationKind) -> int:
    """
    Cross product a×p, reduced to [-N, N] modulo 2N+1 for Zeitlin.

    The reduced value is the same for every member of a Zeitlin class.
    """
    c = a.cross(p)
    if kind is TruncationKind.ZEITLIN:
        c = (c + domain.N) % domain.width - domain.N
    return c


def alpha(a: LatticeVector, p: LatticeVector, gamma: float, domain: Domain,
          kind: TruncationKind) -> float:
    """
    Class prefactor α = Γ·(a×p) (Galerkin) or α′ = Γ·sin(ε·a×p)/ε (Zeitlin).

    Args:
        a: Any member of the class
        p: Equilibrium wave vector
        gamma: Equilibrium amplitude Γ
        domain: Truncation domain
        kind: Truncation kind

    Returns:
        The prefactor; exactly 0.0 when the class carries no dynamics
    """
    c = reduced_cross(a, p, domain, kind)
    if c == 0:
        return 0.0
    if kind is TruncationKind.GALERKIN:
        return gamma * c
    eps = domain.epsilon
    return gamma * math.sin(eps * c) / eps


def rho_of_mode(m: LatticeVector, p: LatticeVector) -> float:
    """
    ρ = 1/|p|² - 1/|m|², with the sign taken from the exact integer numerator.

    Raises:
        DegenerateClassError: If m is the zero mode
    """
    m_sq = m.norm_sq()
    if m_sq == 0:
        raise DegenerateClassError("ρ is undefined at the zero mode; classes through the origin have α = 0")
    p_sq = p.norm_sq()
    return (m_sq - p_sq) / (p_sq * m_sq)


def rho(a: LatticeVector, k: int, p: LatticeVector, domain: Domain, kind: TruncationKind) -> float:
    """
    ρ coefficient of the class member a + k·p.

    Args:
        a: Class leader
        k: Offset along the class
        p: Equilibrium wave vector
        domain: Truncation domain (used for Zeitlin wrapping)
        kind: Truncation kind

    Returns:
        1/|p|² - 1/|m|² for m = a + k·p (wrapped for Zeitlin); negative exactly when m is in the unstable disc
    """
    m = a + k * p
    if kind is TruncationKind.ZEITLIN:
        m = wrap(m, domain)
    return rho_of_mode(m, p)


def rho_sequence(descriptor: ClassDescriptor, allow_origin: bool = False) -> np.ndarray:
    """
    ρ coefficients for all modes of a class, in class order.

    Args:
        descriptor: The class
        allow_origin: Put 0.0 at the zero mode instead of failing (for α = 0 classes)

    Returns:
        Array of length n
    """
    modes = descriptor.mode_array()
    m_sq = (modes * modes).sum(axis=1)
    if np.any(m_sq == 0) and not allow_origin:
        raise DegenerateClassError(f"Class led by {descriptor.leader} contains the zero mode")
    p_sq = descriptor.p.norm_sq()
    safe = np.where(m_sq == 0, 1, m_sq)
    values = (m_sq - p_sq) / (p_sq * safe.astype(float))
    return np.where(m_sq == 0, 0.0, values)


def zeitlin_class_size(p: LatticeVector, domain: Domain) -> int:
    """n = (2N+1)/gcd(2N+1, κ), κ = gcd(p1, p2)."""
    kappa = math.gcd(p.x1, p.x2)
    return domain.width // math.gcd(domain.width, kappa)


def galerkin_class_bound(p: LatticeVector, domain: Domain) -> int:
    """Upper bound floor(2N/max(|p1|,|p2|)) + 1 on the Galerkin class size."""
    return 2 * domain.N // max(abs(p.x1), abs(p.x2)) + 1


def enumerate_class(a: LatticeVector, p: LatticeVector, domain: Domain,
                    kind: TruncationKind) -> ClassDescriptor:
    """
    Enumerate the class led by a.

    Galerkin walks ±p from a until leaving D; Zeitlin wraps a + k·p until it returns to a.

    Args:
        a: Leader, a mode of D
        p: Nonzero wave vector
        domain: Truncation domain
        kind: Truncation kind

    Returns:
        ClassDescriptor with modes in class order

    Raises:
        ValueError: If a is outside D or p is zero
    """
    _require_nonzero(p)
    if not domain.contains(a):
        raise ValueError(f"Leader {a} lies outside the domain with N={domain.N}")

    if kind is TruncationKind.GALERKIN:
        m1 = 0
        while domain.contains(a - (m1 + 1) * p):
            m1 += 1
        m2 = 0
        while domain.contains(a + (m2 + 1) * p):
            m2 += 1
        modes = tuple(a + k * p for k in range(-m1, m2 + 1))
        return ClassDescriptor(a, p, kind, domain, modes, m1, m2)

    n = zeitlin_class_size(p, domain)
    steps = np.arange(n, dtype=np.int64)[:, None]
    raw = np.array(a.as_tuple(), dtype=np.int64) + steps * np.array(p.as_tuple(), dtype=np.int64)
    wrapped = wrap_array(raw, domain)
    if wrap(a + n * p, domain) != a:
        raise ConsistencyError(f"Zeitlin class of {a} does not close after n={n} steps")
    modes = tuple(LatticeVector(int(x1), int(x2)) for x1, x2 in wrapped)
    return ClassDescriptor(a, p, kind, domain, modes)


def galerkin_chain(a: LatticeVector, p: LatticeVector, n_modes: int) -> ClassDescriptor:
    """
    A Galerkin chain of exactly n_modes = 2m+1 modes a - m·p, ..., a + m·p.

    The domain is the smallest square containing the chain; the chain is the
    matched-mode-count counterpart of a Zeitlin class with n_modes modes.
    """
    _require_nonzero(p)
    if n_modes < 1 or n_modes % 2 == 0:
        raise ValueError(f"Chain length must be a positive odd integer, got {n_modes}")
    m = n_modes // 2
    modes = tuple(a + k * p for k in range(-m, m + 1))
    extent = max(max(abs(mode.x1), abs(mode.x2)) for mode in modes)
    return ClassDescriptor(a, p, TruncationKind.GALERKIN, Domain(max(extent, 1)), modes, m, m)


def canonical_classes(p: LatticeVector, domain: Domain, kind: TruncationKind) -> List[ClassDescriptor]:
    """
    Partition D into classes by a visited-set sweep in lexicographic order.

    The first unvisited mode met by the sweep becomes the leader of its class.
    """
    _require_nonzero(p)
    visited = np.zeros((domain.width, domain.width), dtype=bool)
    classes = []
    for x1 in range(-domain.N, domain.N + 1):
        for x2 in range(-domain.N, domain.N + 1):
            if visited[x1 + domain.N, x2 + domain.N]:
                continue
            descriptor = enumerate_class(LatticeVector(x1, x2), p, domain, kind)
            modes = descriptor.mode_array() + domain.N
            visited[modes[:, 0], modes[:, 1]] = True
            classes.append(descriptor)
    logger.debug("Partitioned N=%d %s domain for p=%s into %d classes",
                 domain.N, kind.value, p, len(classes))
    return classes


def canonical_leaders(p: LatticeVector, domain: Domain, kind: TruncationKind) -> List[LatticeVector]:
    """Leaders of the canonical class partition of D."""
    return [descriptor.leader for descriptor in canonical_classes(p, domain, kind)]


def admissible_N(p: LatticeVector, n_tilde: int) -> int:
    """
    Zeitlin grid size N = ((2ñ+1)κ - 1)/2 free of spurious disc re-entries.

    Args:
        p: Equilibrium wave vector with odd κ = gcd(p1, p2)
        n_tilde: Sequence index ñ, larger than (2|p|² - κ)/(2κ)

    Returns:
        The admissible N

    Raises:
        AdmissibilityError: If κ is even or ñ is too small
    """
    _require_nonzero(p)
    kappa = math.gcd(p.x1, p.x2)
    if kappa % 2 == 0:
        raise AdmissibilityError(f"no admissible N exists for even gcd (p={p}, κ={kappa})")
    if 2 * kappa * n_tilde <= 2 * p.norm_sq() - kappa:
        raise AdmissibilityError(
            f"ñ={n_tilde} must exceed (2|p|² - κ)/(2κ) = {(2 * p.norm_sq() - kappa) / (2 * kappa):.2f}")
    return ((2 * n_tilde + 1) * kappa - 1) // 2


def is_admissible_N(p: LatticeVector, N: int) -> bool:
    """True if N belongs to the admissible sequence of p."""
    kappa = math.gcd(p.x1, p.x2)
    width = 2 * N + 1
    if kappa % 2 == 0 or width % kappa:
        return False
    n_tilde = (width // kappa - 1) // 2
    return 2 * kappa * n_tilde > 2 * p.norm_sq() - kappa


def admissible_sequence(p: LatticeVector, count: int, start: Optional[int] = None) -> List[int]:
    """
    Consecutive admissible grid sizes.

    Args:
        p: Equilibrium wave vector
        count: Number of values
        start: Smallest ñ to use (defaults to the smallest valid one)
    """
    kappa = math.gcd(p.x1, p.x2)
    smallest = (2 * p.norm_sq() - kappa) // (2 * kappa) + 1
    first = smallest if start is None else max(start, smallest)
    return [admissible_N(p, n_tilde) for n_tilde in range(first, first + count)]
