"""
Run configuration for the command-line front end.
"""

import argparse
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..errors import AdmissibilityError
from ..lattice import Domain, LatticeVector, TruncationKind, admissible_N, is_admissible_N
from ..spectra import DEFAULT_TOL_REL


def lattice_vector_arg(text: str) -> LatticeVector:
    """argparse type for ``X,Y`` vectors."""
    try:
        return LatticeVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def int_list_arg(text: str) -> List[int]:
    """argparse type for comma-separated integer lists."""
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError("Expected at least one integer")
    return values


@dataclass
class RunConfig:
    """All options of one CLI run."""
    command: str
    p: Optional[LatticeVector] = None
    gamma: float = 0.5
    N: Optional[int] = None
    n_tilde: Optional[int] = None
    kind: TruncationKind = TruncationKind.ZEITLIN
    a: Optional[LatticeVector] = None
    tolerance: float = DEFAULT_TOL_REL
    bins: int = 40
    fast: bool = False
    strict_admissible: bool = False
    threads: int = 1
    out: Optional[str] = None
    fmt: str = "json"
    Ns: List[int] = field(default_factory=list)
    preset: Optional[str] = None
    level: str = "quick"
    seed: int = 2024

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """Build a configuration from parsed arguments, ignoring options a subcommand lacks."""
        values = {name: getattr(args, name) for name in cls.__dataclass_fields__ if hasattr(args, name)}
        if isinstance(values.get('kind'), str):
            values['kind'] = TruncationKind.parse(values['kind'])
        return cls(**values)

    def validate(self) -> Tuple[bool, str]:
        """
        Check the configuration for the selected command.

        Returns:
            Tuple of (is_valid, error_message)
        """
        if self.command in ("class", "ensemble", "convergence") and self.p is None:
            return False, "--p is required"
        if self.p is not None and self.p.is_zero():
            return False, "p must be nonzero"
        if self.command == "density" and self.preset is None and (self.p is None) != (self.a is None):
            return False, "--p and --a must be given together (or use --preset)"
        if self.command in ("class", "ensemble", "density") and (self.N is None) == (self.n_tilde is None):
            return False, "exactly one of --N and --n-tilde is required"
        if self.command in ("class", "convergence") and self.a is None:
            return False, "--a is required"
        if self.command == "convergence" and not self.Ns:
            return False, "--Ns is required"
        if self.N is not None and self.N < 1:
            return False, "N must be positive"
        if any(n < 1 for n in self.Ns):
            return False, "all grid sizes must be positive"
        if self.tolerance <= 0.0 or self.tolerance >= 1.0:
            return False, "tolerance must lie in (0, 1)"
        if self.threads < 1:
            return False, "threads must be positive"
        if self.bins < 3:
            return False, "bins must be at least 3"
        if self.fmt not in ("json", "csv"):
            return False, f"unknown format '{self.fmt}'"
        return True, ""

    def resolve_N(self) -> int:
        """
        The grid size of the run.

        Raises:
            AdmissibilityError: If strict mode rejects the requested Zeitlin N
        """
        if self.n_tilde is not None:
            return admissible_N(self.p, self.n_tilde)
        if self.strict_admissible and self.kind is TruncationKind.ZEITLIN and not is_admissible_N(self.p, self.N):
            raise AdmissibilityError(f"N={self.N} is not admissible for p={self.p}")
        return self.N

    def domain(self) -> Domain:
        return Domain(self.resolve_N())

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready echo of the configuration."""
        data = asdict(self)
        for name in ("p", "a"):
            vector = getattr(self, name)
            data[name] = None if vector is None else [vector.x1, vector.x2]
        data['kind'] = self.kind.value
        return data
