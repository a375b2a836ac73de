"""
Integer-lattice geometry for truncated Fourier modes on the torus.
Provides lattice vectors, the truncation domain, Zeitlin wrapping and the unstable disc.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Set

import numpy as np

logger = logging.getLogger(__name__)

MAX_N = 100_000


class TruncationKind(Enum):
    """Finite-mode truncations of the Euler equations."""
    GALERKIN = "galerkin"
    ZEITLIN = "zeitlin"

    @classmethod
    def parse(cls, value: str) -> "TruncationKind":
        """Parse a case-insensitive truncation name."""
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise ValueError(f"Unknown truncation kind '{value}' (expected galerkin or zeitlin)")


@dataclass(frozen=True, order=True)
class LatticeVector:
    """Integer 2-vector used for Fourier mode indices."""
    x1: int
    x2: int

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.x1, -self.x2)

    def __mul__(self, k: int) -> "LatticeVector":
        return LatticeVector(k * self.x1, k * self.x2)

    __rmul__ = __mul__

    def cross(self, other: "LatticeVector") -> int:
        """Scalar cross product x1*y2 - x2*y1."""
        return self.x1 * other.x2 - self.x2 * other.x1

    def norm_sq(self) -> int:
        """Squared Euclidean norm."""
        return self.x1 * self.x1 + self.x2 * self.x2

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0

    def as_tuple(self):
        return (self.x1, self.x2)

    @classmethod
    def parse(cls, text: str) -> "LatticeVector":
        """
        Parse a vector written as ``X,Y``.

        Raises:
            ValueError: If the text is not two comma-separated integers
        """
        parts = [part.strip() for part in str(text).split(",")]
        if len(parts) != 2:
            raise ValueError(f"Expected a lattice vector written X,Y, got '{text}'")
        try:
            return cls(int(parts[0]), int(parts[1]))
        except ValueError:
            raise ValueError(f"Lattice vector components must be integers, got '{text}'")

    def __str__(self) -> str:
        return f"({self.x1},{self.x2})"


ORIGIN = LatticeVector(0, 0)


@dataclass(frozen=True)
class Domain:
    """The truncation square D = [-N, N]^2 of integer modes."""
    N: int

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ValueError(f"Domain size N must be a positive integer, got {self.N!r}")
        if self.N > MAX_N:
            raise ValueError(f"Domain size N={self.N} exceeds the supported maximum {MAX_N}")

    @property
    def width(self) -> int:
        """Number of modes per axis, 2N + 1."""
        return 2 * self.N + 1

    @property
    def epsilon(self) -> float:
        """Deformation parameter 2π/(2N+1) of the sine bracket."""
        return 2.0 * math.pi / self.width

    @property
    def size(self) -> int:
        return self.width * self.width

    def contains(self, k: LatticeVector) -> bool:
        return abs(k.x1) <= self.N and abs(k.x2) <= self.N

    def points(self) -> Iterator[LatticeVector]:
        """All modes of D in lexicographic order."""
        for x1 in range(-self.N, self.N + 1):
            for x2 in range(-self.N, self.N + 1):
                yield LatticeVector(x1, x2)

    def mode_array(self) -> np.ndarray:
        """All modes of D as an (M, 2) integer array, lexicographic order."""
        axis = np.arange(-self.N, self.N + 1, dtype=np.int64)
        g1, g2 = np.meshgrid(axis, axis, indexing="ij")
        return np.stack([g1.ravel(), g2.ravel()], axis=1)

    def flat_index(self, x1, x2):
        """Position of mode (x1, x2) in the lexicographic order; works elementwise on arrays."""
        return (x1 + self.N) * self.width + (x2 + self.N)


def wrap(k: LatticeVector, domain: Domain) -> LatticeVector:
    """
    Map a mode to its representative in [-N, N]^2 modulo 2N+1.

    Args:
        k: Any integer vector
        domain: Truncation domain

    Returns:
        The unique k̂ in D with k - k̂ divisible by 2N+1 componentwise
    """
    n, w = domain.N, domain.width
    return LatticeVector((k.x1 + n) % w - n, (k.x2 + n) % w - n)


def wrap_array(modes: np.ndarray, domain: Domain) -> np.ndarray:
    """Vectorised wrap for an (..., 2) integer array."""
    return np.mod(modes + domain.N, domain.width) - domain.N


def unstable_disc(p: LatticeVector) -> Set[LatticeVector]:
    """
    Lattice points strictly inside the disc of radius |p|.

    Args:
        p: Equilibrium wave vector

    Returns:
        Set of x with |x| < |p|, origin included

    Raises:
        ValueError: If p is the zero vector
    """
    if p.is_zero():
        raise ValueError("The unstable disc is undefined for p = (0,0)")
    radius_sq = p.norm_sq()
    bound = math.isqrt(radius_sq)
    disc = set()
    for x1 in range(-bound, bound + 1):
        for x2 in range(-bound, bound + 1):
            if x1 * x1 + x2 * x2 < radius_sq:
                disc.add(LatticeVector(x1, x2))
    return disc


def lens_points(p: LatticeVector) -> List[LatticeVector]:
    """
    Nonzero points of the unstable disc whose two class neighbours a ± p lie outside it.

    These are the points with ρ0 < 0 and ρ±1 >= 0 in the untruncated ρ formula; a neighbour on
    the boundary circle counts as outside.
    """
    radius_sq = p.norm_sq()
    points = [a for a in unstable_disc(p)
              if not a.is_zero()
              and (a + p).norm_sq() >= radius_sq
              and (a - p).norm_sq() >= radius_sq]
    return sorted(points)


def in_reality_disc(a: LatticeVector, p: LatticeVector) -> bool:
    """
    Sufficient condition for the reality condition of a lens point.

    True when |a| < (√3 - 1)|p| and |a ± p| > |p|, which places a in one of the two
    discs of radius (2/√3 - 1)|p| centred at ±(1/√3)(-p2, p1).
    """
    radius_sq = p.norm_sq()
    if a.is_zero():
        return False
    if (a + p).norm_sq() <= radius_sq or (a - p).norm_sq() <= radius_sq:
        return False
    # (√3 - 1)^2 = 4 - 2√3
    return a.norm_sq() < (4.0 - 2.0 * math.sqrt(3.0)) * radius_sq
