"""
Characteristic polynomial module for the euler_stability package.
Provides a unified interface for recurrence evaluation and real-root certificates.
"""

from typing import Any, Dict, Sequence

from ..lattice import TruncationKind
from .recurrence import (CoefficientSequence, ScaledValue, normalize, t_eval, t_eval_scaled, t_at_zero,
                         dt_at_zero, a_eval, a_eval_scaled, tridiagonal_matrix, cyclic_matrix)
from .certificates import (BISECTION_TOL, lower_bound_lambda, disc_index, lambda_dagger,
                           characteristic_scaled, characteristic_sign, certify_negative_at_bound,
                           gershgorin_bound, bracket_real_root, bisect_root, certified_root)


class CharPolyManager:
    """Main interface for characteristic-polynomial certificates."""

    def __init__(self, tol: float = BISECTION_TOL):
        """
        Initialize the certificate manager.

        Args:
            tol: Absolute bisection tolerance
        """
        self.tol = tol

    def certificate(self, rho: Sequence[float], kind: TruncationKind) -> Dict[str, Any]:
        """
        Certificate data for one class ρ-sequence.

        Returns:
            Dictionary with lambda_dagger, certified flag, bracket and root (None where inapplicable)
        """
        bound = lambda_dagger(rho, kind)
        certified = certify_negative_at_bound(rho, kind)
        result = {
            'lambda_dagger': bound,
            'certified': certified,
            'bracket': None,
            'root': None,
        }
        if certified:
            lo, hi = bracket_real_root(rho, kind)
            result['bracket'] = (lo, hi)
            result['root'] = bisect_root(rho, kind, lo, hi, self.tol)
        return result


__all__ = [
    'CharPolyManager', 'CoefficientSequence', 'ScaledValue', 'normalize', 't_eval', 't_eval_scaled',
    't_at_zero', 'dt_at_zero', 'a_eval', 'a_eval_scaled', 'tridiagonal_matrix', 'cyclic_matrix',
    'BISECTION_TOL', 'lower_bound_lambda', 'disc_index', 'lambda_dagger', 'characteristic_scaled',
    'characteristic_sign', 'certify_negative_at_bound', 'gershgorin_bound', 'bracket_real_root',
    'bisect_root', 'certified_root',
]
