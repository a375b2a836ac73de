"""
CLI module for the euler_stability package.
Provides the run configuration, report builders and the verification suite behind the command line.
"""

from .config import RunConfig, lattice_vector_arg, int_list_arg
from .reports import (ClassRecord, EnsembleReport, class_record, run_class, run_ensemble, run_convergence,
                      run_density, build_manifest)
from .verify import CheckOutcome, run_verify, summary, check_stable_disc

__all__ = [
    'RunConfig', 'lattice_vector_arg', 'int_list_arg', 'ClassRecord', 'EnsembleReport', 'class_record',
    'run_class', 'run_ensemble', 'run_convergence', 'run_density', 'build_manifest', 'CheckOutcome',
    'run_verify', 'summary', 'check_stable_disc',
]
