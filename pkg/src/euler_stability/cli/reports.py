"""
Report builders behind the CLI subcommands: single class, ensemble, convergence and density.
"""

import json
import logging
import math
import os
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from .. import __version__
from ..density import PRESETS, density_model, empirical_density, compare_density, essential_support
from ..lattice import (Domain, LatticeVector, TruncationKind, admissible_N, canonical_classes, enumerate_class,
                       galerkin_chain, is_admissible_N, lens_points, unstable_disc)
from ..spectra import ClassSpectrum, SpectraManager, analyze_class
from .config import RunConfig

logger = logging.getLogger(__name__)


def _vector(values) -> LatticeVector:
    return LatticeVector(int(values[0]), int(values[1]))


def _complex_pairs(values: Optional[np.ndarray]) -> Optional[List[List[float]]]:
    if values is None:
        return None
    return [[float(v.real), float(v.imag)] for v in values]


@dataclass
class ClassRecord:
    """Per-class line of an ensemble report."""
    leader: LatticeVector
    case: str
    size: int
    alpha: float
    solved: bool
    counts: Optional[Dict[str, int]] = None
    lambda_dagger: Optional[float] = None
    bracketed_root: Optional[float] = None

    @classmethod
    def from_spectrum(cls, spectrum: ClassSpectrum) -> "ClassRecord":
        certificates = spectrum.certificates
        return cls(
            leader=spectrum.descriptor.leader,
            case=spectrum.case.value,
            size=spectrum.descriptor.size,
            alpha=float(spectrum.alpha),
            solved=spectrum.solved,
            counts=None if spectrum.classification is None else spectrum.classification.counts(),
            lambda_dagger=None if certificates is None else certificates.lambda_dagger,
            bracketed_root=None if certificates is None else certificates.bracketed_root,
        )

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['leader'] = [self.leader.x1, self.leader.x2]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ClassRecord":
        values = dict(data)
        values['leader'] = _vector(values['leader'])
        return cls(**values)


@dataclass
class EnsembleReport:
    """Aggregate of all canonical classes for one (p, Γ, N, kind)."""
    config: Dict[str, Any]
    records: List[ClassRecord] = field(default_factory=list)
    counts: Dict[str, int] = field(default_factory=dict)
    census: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_spectra(cls, config: Dict[str, Any], p: LatticeVector, spectra: List[ClassSpectrum]) -> "EnsembleReport":
        records = [ClassRecord.from_spectrum(s) for s in spectra]
        real = sum(2 * r.counts['real_pairs'] for r in records if r.counts)
        complex_ = sum(4 * r.counts['quadruplets'] for r in records if r.counts)
        interior = len(unstable_disc(p)) - 1
        return cls(
            config=config,
            records=records,
            counts={'nonimaginary': real + complex_, 'real': real, 'complex': complex_},
            census={'interior_points': interior, 'lens_points': len(lens_points(p)),
                    'hyperbolic_bound': 2 * interior},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'config': self.config,
            'records': [record.to_dict() for record in self.records],
            'counts': dict(self.counts),
            'census': dict(self.census),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EnsembleReport":
        return cls(
            config=data['config'],
            records=[ClassRecord.from_dict(record) for record in data['records']],
            counts=dict(data['counts']),
            census=dict(data['census']),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "EnsembleReport":
        return cls.from_dict(json.loads(text))


def class_record(spectrum: ClassSpectrum) -> Dict[str, Any]:
    """Full JSON record of one class: modes, ρ, α, both spectra, case and certificates."""
    certificates = spectrum.certificates
    return {
        'leader': [spectrum.descriptor.leader.x1, spectrum.descriptor.leader.x2],
        'p': [spectrum.descriptor.p.x1, spectrum.descriptor.p.x2],
        'kind': spectrum.descriptor.kind.value,
        'N': spectrum.descriptor.domain.N,
        'gamma': spectrum.gamma,
        'modes': [[m.x1, m.x2] for m in spectrum.descriptor.modes],
        'rho': [float(r) for r in spectrum.rho],
        'alpha': float(spectrum.alpha),
        'case': spectrum.case.value,
        'eigenvalues': _complex_pairs(spectrum.eigenvalues),
        'matrix_eigenvalues': _complex_pairs(spectrum.matrix_eigenvalues),
        'counts': None if spectrum.classification is None else spectrum.classification.counts(),
        'certificates': None if certificates is None else asdict(certificates),
    }


def run_class(config: RunConfig) -> Tuple[Dict[str, Any], ClassSpectrum]:
    """Analyse the single class led by config.a."""
    domain = config.domain()
    descriptor = enumerate_class(config.a, config.p, domain, config.kind)
    spectrum = analyze_class(descriptor, config.gamma, config.tolerance)
    return class_record(spectrum), spectrum


def run_ensemble(config: RunConfig) -> Tuple[EnsembleReport, List[ClassSpectrum]]:
    """Sweep all canonical classes and aggregate their classifications."""
    domain = config.domain()
    start = time.perf_counter()
    classes = canonical_classes(config.p, domain, config.kind)
    manager = SpectraManager(config.gamma, config.tolerance, config.threads)
    spectra = manager.analyze_all(classes, solve_stable=not config.fast)
    report = EnsembleReport.from_spectra(config.to_dict(), config.p, spectra)
    logger.info("Ensemble p=%s N=%d %s: %d classes, %d non-imaginary eigenvalues in %.2fs",
                config.p, domain.N, config.kind.value, len(classes), report.counts['nonimaginary'],
                time.perf_counter() - start)
    return report, spectra


def _largest_real(spectrum: ClassSpectrum) -> float:
    value = spectrum.real_eigenvalue()
    return math.nan if value is None else value


def run_convergence(config: RunConfig) -> pd.DataFrame:
    """
    Largest real eigenvalue of A (α omitted) per grid size, for both truncations.

    A Galerkin chain with 2N+1 modes is added per N as the matched-mode-count series.
    The classes of all grid sizes are solved together on `config.threads` workers.
    """
    jobs = []
    for N in sorted(set(config.Ns)):
        domain = Domain(N)
        if not domain.contains(config.a):
            logger.warning("Skipping N=%d: leader %s lies outside the domain", N, config.a)
            continue
        if config.strict_admissible and not is_admissible_N(config.p, N):
            logger.info("Skipping non-admissible Zeitlin N=%d", N)
        else:
            jobs.append((N, 'zeitlin', enumerate_class(config.a, config.p, domain, TruncationKind.ZEITLIN)))
        jobs.append((N, 'galerkin', enumerate_class(config.a, config.p, domain, TruncationKind.GALERKIN)))
        jobs.append((N, 'galerkin_matched', galerkin_chain(config.a, config.p, 2 * N + 1)))
    manager = SpectraManager(config.gamma, config.tolerance, config.threads)
    spectra = manager.analyze_all([descriptor for _, _, descriptor in jobs])
    rows = [{'n': N, 'kind': kind, 'class_size': descriptor.size, 'real_eigenvalue': _largest_real(spectrum)}
            for (N, kind, descriptor), spectrum in zip(jobs, spectra)]
    table = pd.DataFrame(rows, columns=['n', 'kind', 'class_size', 'real_eigenvalue'])
    return table.sort_values(['kind', 'n'], kind='mergesort').reset_index(drop=True)


def density_inputs(config: RunConfig) -> Tuple[LatticeVector, LatticeVector]:
    """(p, a) of a density run: explicit values win over the preset."""
    preset_p, preset_a = PRESETS[config.preset or 'caption']
    return (config.p or preset_p), (config.a or preset_a)


def run_density(config: RunConfig) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """Empirical Im λ histogram of one Zeitlin class next to the limiting density."""
    p, a = density_inputs(config)
    domain = Domain(admissible_N(p, config.n_tilde) if config.n_tilde is not None else config.N)
    descriptor = enumerate_class(a, p, domain, TruncationKind.ZEITLIN)
    spectrum = analyze_class(descriptor, config.gamma, config.tolerance)
    model = density_model(a, p, config.gamma)
    histogram = empirical_density(spectrum, config.bins)
    table = pd.DataFrame({
        'bin_center': histogram['bin_center'],
        'empirical': histogram['density'],
        'model': model.pdf(histogram['bin_center'].to_numpy()),
    })
    half_width = essential_support(a, p, config.gamma)
    metadata = {
        'p': [p.x1, p.x2],
        'a': [a.x1, a.x2],
        'N': domain.N,
        'support': [-half_width, half_width],
        'alpha_limit': model.alpha,
        'alpha_grid': float(spectrum.alpha),
        'max_imag': float(np.max(np.abs(spectrum.eigenvalues.imag))),
        'sup_gap_relative': compare_density(histogram, model),
    }
    return table, metadata


def build_manifest(command: str, config: RunConfig, started: datetime, wall_time: float) -> Dict[str, Any]:
    """Provenance record of one run; only `started` and `wall_time_s` vary between reruns."""
    return {
        'version': __version__,
        'command': command,
        'config': config.to_dict(),
        'tolerance': config.tolerance,
        'started': started.astimezone(timezone.utc).isoformat(),
        'wall_time_s': round(wall_time, 3),
    }


def write_json(data: Dict[str, Any], path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_csv(table: pd.DataFrame, path: str):
    table.to_csv(path, index=False, float_format="%.17g")


def output_path(config: RunConfig, name: str) -> str:
    os.makedirs(config.out, exist_ok=True)
    return os.path.join(config.out, name)
