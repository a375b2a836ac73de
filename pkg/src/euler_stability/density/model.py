"""
Large-N model of a stable class spectrum.

With every ρ_k replaced by 1/|p|² the Zeitlin class matrix is circulant, its eigenvalues
are (2i/|p|²)·sin(2πj/n), and the imaginary parts of α·A follow the arcsine law
F(x) = |p|² / (π·√(4α² - |p|⁴x²)) on the essential spectrum i·[-|β|, |β|].
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import integrate

from ..errors import DensityDomainError
from ..lattice import Domain, LatticeVector, TruncationKind, alpha, enumerate_class
from ..spectra import ClassSpectrum, EigenvalueType, analyze_class

logger = logging.getLogger(__name__)

PRESETS = {
    'caption': (LatticeVector(3, 1), LatticeVector(1, -2)),
    'text': (LatticeVector(7, 5), LatticeVector(-4, 7)),
}
DEFAULT_PRESET = 'caption'


def circulant_spectrum(n: int, p: LatticeVector) -> np.ndarray:
    """
    Eigenvalues (2i/|p|²)·sin(2πj/n), j = 0..n-1, of the all-ρ-equal cyclic class matrix.

    Raises:
        ValueError: If n is not an odd integer ≥ 3
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"Circulant class size must be odd and at least 3, got {n}")
    j = np.arange(n)
    return 1j * (2.0 / p.norm_sq()) * np.sin(2.0 * np.pi * j / n)


def density_f(x, p: LatticeVector, alpha_value: float):
    """
    Arcsine density F(x) = |p|²/(π·√(4α² - |p|⁴x²)).

    Args:
        x: Scalar or array inside the open support |x| < 2|α|/|p|²
        p: Equilibrium wave vector
        alpha_value: Class prefactor α

    Raises:
        DensityDomainError: If any x lies at or outside the support
    """
    x_arr = np.asarray(x, dtype=float)
    p_sq = p.norm_sq()
    radicand = 4.0 * alpha_value * alpha_value - (p_sq * p_sq) * x_arr * x_arr
    if np.any(radicand <= 0.0):
        raise DensityDomainError(f"Density evaluated outside its support |x| < {2 * abs(alpha_value) / p_sq:.6g}")
    values = p_sq / (math.pi * np.sqrt(radicand))
    return float(values) if np.ndim(values) == 0 else values


def essential_support(a: LatticeVector, p: LatticeVector, gamma: float) -> float:
    """|β| = (2/|p|²)·|a×p|·|Γ|, the half-width of the essential spectrum."""
    return abs(2.0 / p.norm_sq() * a.cross(p) * gamma)


@dataclass(frozen=True)
class DensityModel:
    """Limiting spectral density of the class led by a."""
    p: LatticeVector
    a: LatticeVector
    gamma: float
    alpha: float
    beta: float
    support: Tuple[float, float]

    def pdf(self, x):
        return density_f(x, self.p, self.alpha)

    def peak(self) -> float:
        """F(0) = |p|²/(2π|α|)."""
        return self.p.norm_sq() / (2.0 * math.pi * abs(self.alpha))

    def normalization(self) -> float:
        """∫ F over the open support by adaptive quadrature."""
        half = 2.0 * abs(self.alpha) / self.p.norm_sq()
        value, _ = integrate.quad(self.pdf, -half, half, limit=200)
        return value


def density_model(a: LatticeVector, p: LatticeVector, gamma: float,
                  domain: Optional[Domain] = None) -> DensityModel:
    """
    Density model of the class led by a.

    Args:
        a: Class leader
        p: Equilibrium wave vector
        gamma: Equilibrium amplitude
        domain: Zeitlin grid; α′ on that grid is used when given, the limit α = Γ·(a×p) otherwise

    Raises:
        ValueError: If the class carries no dynamics
    """
    if domain is None:
        alpha_value = gamma * a.cross(p)
    else:
        alpha_value = alpha(a, p, gamma, domain, TruncationKind.ZEITLIN)
    if alpha_value == 0.0:
        raise ValueError(f"Class led by {a} has α = 0 and no density")
    beta = 2.0 / p.norm_sq() * a.cross(p) * gamma
    return DensityModel(p, a, gamma, alpha_value, beta, (-abs(beta), abs(beta)))


def imaginary_histogram(values: Iterable[float], half_width: float, bins: int) -> pd.DataFrame:
    """Normalised histogram of values over [-half_width, half_width]."""
    if bins < 1:
        raise ValueError("bins must be a positive integer")
    values = np.asarray(list(values), dtype=float)
    if values.size == 0:
        raise ValueError("No values to bin")
    density, edges = np.histogram(values, bins=bins, range=(-half_width, half_width), density=True)
    return pd.DataFrame({
        'bin_left': edges[:-1],
        'bin_right': edges[1:],
        'bin_center': 0.5 * (edges[:-1] + edges[1:]),
        'density': density,
    })


def empirical_density(spectrum: ClassSpectrum, bins: int) -> pd.DataFrame:
    """
    Normalised histogram of Im λ over the eigenvalues labelled imaginary.

    Args:
        spectrum: A solved class spectrum
        bins: Number of equal-width bins over [-|β|, |β|]

    Returns:
        DataFrame with bin_left, bin_right, bin_center and density columns
    """
    if not spectrum.solved:
        raise ValueError("Spectrum has not been computed")
    mask = spectrum.classification.labels == EigenvalueType.IMAGINARY
    half_width = essential_support(spectrum.descriptor.leader, spectrum.descriptor.p, spectrum.gamma)
    return imaginary_histogram(spectrum.eigenvalues[mask].imag, half_width, bins)


def exact_bin_density(histogram: pd.DataFrame, half_width: float) -> np.ndarray:
    """Arcsine-law mass of each bin divided by its width."""
    left = np.clip(histogram['bin_left'].to_numpy() / half_width, -1.0, 1.0)
    right = np.clip(histogram['bin_right'].to_numpy() / half_width, -1.0, 1.0)
    mass = (np.arcsin(right) - np.arcsin(left)) / math.pi
    return mass / (histogram['bin_right'].to_numpy() - histogram['bin_left'].to_numpy())


def compare_density(histogram: pd.DataFrame, model: DensityModel, exclude_edges: int = 1) -> float:
    """
    Sup-norm gap between histogram and F at bin centres, relative to F(0).

    The outermost `exclude_edges` bins on each side are skipped since F diverges at ±|β|.
    """
    inner = histogram.iloc[exclude_edges:len(histogram) - exclude_edges]
    if inner.empty:
        raise ValueError("No bins left after excluding the edges")
    model_values = model.pdf(inner['bin_center'].to_numpy())
    return float(np.max(np.abs(inner['density'].to_numpy() - model_values))) / model.peak()


def support_convergence(a: LatticeVector, p: LatticeVector, gamma: float, Ns: Iterable[int],
                        tol_rel: float = 1e-8) -> pd.DataFrame:
    """Largest |Im λ| of the Zeitlin class spectrum against |β|, per grid size."""
    beta = essential_support(a, p, gamma)
    rows = []
    for N in Ns:
        descriptor = enumerate_class(a, p, Domain(N), TruncationKind.ZEITLIN)
        spectrum = analyze_class(descriptor, gamma, tol_rel)
        max_imag = float(np.max(np.abs(spectrum.eigenvalues.imag)))
        rows.append({'n': N, 'max_imag': max_imag, 'beta': beta, 'gap': (beta - max_imag) / beta})
        logger.debug("N=%d: max |Im λ| = %.6f, |β| = %.6f", N, max_imag, beta)
    return pd.DataFrame(rows, columns=['n', 'max_imag', 'beta', 'gap'])
