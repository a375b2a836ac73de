"""
Density module for the euler_stability package.
Provides a unified interface for the large-N spectral density of stable classes.
"""

from typing import Any, Dict

from ..lattice import Domain, LatticeVector, TruncationKind, enumerate_class
from ..spectra import analyze_class
from .model import (PRESETS, DEFAULT_PRESET, DensityModel, circulant_spectrum, density_f, essential_support,
                    density_model, imaginary_histogram, empirical_density, exact_bin_density,
                    compare_density, support_convergence)


class DensityManager:
    """Main interface for spectral density comparisons."""

    def __init__(self, gamma: float, bins: int = 40):
        """
        Initialize density manager.

        Args:
            gamma: Equilibrium amplitude Γ
            bins: Number of histogram bins
        """
        if bins < 3:
            raise ValueError("At least three bins are needed to exclude the edge bins")
        self.gamma = gamma
        self.bins = bins

    def compare(self, a: LatticeVector, p: LatticeVector, N: int) -> Dict[str, Any]:
        """
        Empirical histogram of one Zeitlin class against the limiting density.

        Returns:
            Dictionary with the histogram (with a model column), the model and the sup-norm gap
        """
        descriptor = enumerate_class(a, p, Domain(N), TruncationKind.ZEITLIN)
        spectrum = analyze_class(descriptor, self.gamma)
        model = density_model(a, p, self.gamma)
        histogram = empirical_density(spectrum, self.bins)
        histogram['model'] = model.pdf(histogram['bin_center'].to_numpy())
        return {
            'histogram': histogram,
            'model': model,
            'gap': compare_density(histogram, model),
            'spectrum': spectrum,
        }


__all__ = [
    'DensityManager', 'PRESETS', 'DEFAULT_PRESET', 'DensityModel', 'circulant_spectrum', 'density_f',
    'essential_support', 'density_model', 'imaginary_histogram', 'empirical_density', 'exact_bin_density',
    'compare_density', 'support_convergence',
]
