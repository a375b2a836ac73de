"""
Verification suite behind ``euler-stability verify``.

Each check is a small function returning ``(passed, detail)``. The quick level runs the
oracles and recurrence checks in seconds; the full level adds the ensemble, quadruplet,
certificate, density and decay reproductions.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy import linalg
from scipy.optimize import linear_sum_assignment

from ..charpoly import (CoefficientSequence, a_eval, cyclic_matrix, dt_at_zero, lambda_dagger, t_at_zero,
                        t_eval, tridiagonal_matrix)
from ..density import circulant_spectrum, compare_density, density_model, empirical_density, essential_support
from ..errors import VerificationError
from ..lattice import (Domain, LatticeVector, TruncationKind, admissible_sequence, canonical_classes,
                       enumerate_class, galerkin_chain, lens_points, unstable_disc)
from ..spectra import (StabilityCase, analyze_class, count_hyperbolic, eigenvalues, eigenvector_decay,
                       find_case_i_leader)
from ..truncation import (ClassMatrix, TruncationManager, class_matrix, equilibrium_state, linearized_field,
                          random_state, skew_pattern, vector_field)

logger = logging.getLogger(__name__)

CheckResult = Tuple[bool, str]

STABLE_DISC_TOL = 1e-9
BLOCK_SPECTRUM_TOL = 1e-7
RECURRENCE_TOL = 1e-10
PERTURBATION_FACTOR = 100.0


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str
    seconds: float


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


def check_recurrences(rng: np.random.Generator, instances: int = 100) -> CheckResult:
    """t_eval and a_eval against dense determinants of random sequences."""
    worst = 0.0
    for _ in range(instances):
        n = int(rng.choice([3, 5, 7, 9]))
        seq = CoefficientSequence(tuple(rng.uniform(-1.0, 1.0, n)))
        x = float(rng.uniform(-1.5, 1.5))
        identity = np.eye(n)
        dense_t = linalg.det(x * identity - tridiagonal_matrix(seq))
        dense_a = linalg.det(x * identity - cyclic_matrix(CoefficientSequence(seq.a, cyclic=True)))
        for direction in ("forward", "backward"):
            worst = max(worst, _relative(t_eval(seq, 0, n - 1, x, direction), dense_t))
        worst = max(worst, _relative(a_eval(seq, x), dense_a))
    return worst <= RECURRENCE_TOL, f"max relative error {worst:.2e}"


def check_zero_closed_forms(rng: np.random.Generator, instances: int = 50) -> CheckResult:
    """Closed forms of 𝒯(0) and 𝒯′(0) against the recurrence and a central difference."""
    worst = 0.0
    h = 1e-6
    for _ in range(instances):
        n = int(rng.integers(2, 10))
        seq = CoefficientSequence(tuple(rng.uniform(0.2, 1.0, n) * rng.choice([-1.0, 1.0], n)))
        lo = int(rng.integers(0, n))
        hi = int(rng.integers(lo, n))
        worst = max(worst, abs(t_at_zero(seq, lo, hi) - t_eval(seq, lo, hi, 0.0)))
        difference = (t_eval(seq, lo, hi, h) - t_eval(seq, lo, hi, -h)) / (2.0 * h)
        worst = max(worst, abs(dt_at_zero(seq, lo, hi) - difference))
    return worst <= 1e-8, f"max deviation {worst:.2e}"


def _match_spectra(first: np.ndarray, second: np.ndarray) -> float:
    if len(first) != len(second):
        return np.inf
    cost = np.abs(first[:, None] - second[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols], initial=0.0))


def check_block_decoupling(max_N: int = 4) -> CheckResult:
    """Full Jacobian versus the class blocks, entrywise and spectrally."""
    worst_entry = 0.0
    worst_spectrum = 0.0
    for p in (LatticeVector(1, 0), LatticeVector(1, 1), LatticeVector(2, 1)):
        for kind in TruncationKind:
            for N in range(2, max_N + 1):
                domain = Domain(N)
                classes = canonical_classes(p, domain, kind)
                manager = TruncationManager(p, 1.0, kind)
                worst_entry = max(worst_entry, manager.block_residual(domain, classes))
                full = eigenvalues(manager.jacobian(domain).matrix)
                blocks = []
                for matrix in manager.class_matrices(classes):
                    keep = [i for i, m in enumerate(matrix.descriptor.modes) if not m.is_zero()]
                    if keep:
                        blocks.append(linalg.eigvals(matrix.scaled[np.ix_(keep, keep)]))
                worst_spectrum = max(worst_spectrum, _match_spectra(full, np.concatenate(blocks)))
    passed = worst_entry <= 1e-12 and worst_spectrum <= BLOCK_SPECTRUM_TOL
    return passed, f"entry residual {worst_entry:.2e}, spectrum distance {worst_spectrum:.2e}"


def check_partition() -> CheckResult:
    """Canonical classes tile the domain exactly once."""
    for p in (LatticeVector(2, 1), LatticeVector(3, 1), LatticeVector(5, 3)):
        for kind in TruncationKind:
            domain = Domain(7)
            modes = [m for c in canonical_classes(p, domain, kind) for m in c.modes]
            if len(modes) != domain.size or set(modes) != set(domain.points()):
                return False, f"p={p} {kind.value}: {len(modes)} modes for {domain.size} points"
    return True, "all partitions exact"


def check_jacobian(rng: np.random.Generator) -> CheckResult:
    """Central difference of the nonlinear field at the equilibrium against J·δ."""
    worst = 0.0
    p = LatticeVector(2, 1)
    for kind in TruncationKind:
        domain = Domain(3)
        base = equilibrium_state(TruncationManager(p, 0.7, kind).equilibrium, domain)
        delta = random_state(domain, rng)
        h = 1e-3
        difference = (vector_field(base + delta * h, kind) - vector_field(base - delta * h, kind)) * (0.5 / h)
        linear = linearized_field(delta, p, 0.7, kind)
        worst = max(worst, (difference - linear).max_abs() / max(linear.max_abs(), 1e-300))
    return worst <= 1e-8, f"max relative deviation {worst:.2e}"


def check_energy(rng: np.random.Generator) -> CheckResult:
    """Hamiltonian drift of a short RK4 run stays at integrator accuracy."""
    worst = 0.0
    for kind in TruncationKind:
        manager = TruncationManager(LatticeVector(1, 1), 1.0, kind)
        state = random_state(Domain(4), rng, scale=0.1)
        worst = max(worst, manager.energy_drift(state, 1e-3, 50) / abs(manager.energy(state)))
    return worst <= 1e-6, f"relative drift {worst:.2e}"


def _stable_matrices(rng: np.random.Generator, samples: int) -> List[ClassMatrix]:
    pool = []
    for p in (LatticeVector(3, 1), LatticeVector(5, 3), LatticeVector(4, 1)):
        domain = Domain(admissible_sequence(p, 1)[0])
        for descriptor in canonical_classes(p, domain, TruncationKind.ZEITLIN):
            matrix = class_matrix(descriptor, 1.0)
            if matrix.alpha != 0.0 and np.all(matrix.rho > 0.0):
                pool.append(matrix)
    chosen = rng.choice(len(pool), size=min(samples, len(pool)), replace=False)
    return [pool[i] for i in chosen]


def _perturbed(matrix: ClassMatrix, rng: np.random.Generator) -> np.ndarray:
    rho = matrix.rho.copy()
    rho[int(rng.integers(1, matrix.size - 1))] = -PERTURBATION_FACTOR * float(np.max(rho))
    return matrix.alpha * (matrix.J @ np.diag(rho))


def check_stable_disc(rng: np.random.Generator, samples: int = 200, perturb: bool = False) -> CheckResult:
    """
    Classes avoiding the unstable disc have purely imaginary spectra.

    Args:
        rng: Random generator choosing the sampled classes
        samples: Number of stable classes to test
        perturb: Flip one ρ of every fixture to a large negative value (negative control)
    """
    worst = 0.0
    worst_leader = None
    for matrix in _stable_matrices(rng, samples):
        dense = _perturbed(matrix, rng) if perturb else matrix.scaled
        values = eigenvalues(dense)
        ratio = float(np.max(np.abs(values.real))) / max(float(np.linalg.norm(dense, 2)), 1e-300)
        if ratio > worst:
            worst, worst_leader = ratio, matrix.descriptor.leader
    return worst <= STABLE_DISC_TOL, f"max |Re λ|/‖αA‖ = {worst:.2e} (leader {worst_leader})"



def check_negative_control(rng: np.random.Generator) -> CheckResult:
    """The stable-disc check must reject fixtures with a flipped ρ."""
    passed, detail = check_stable_disc(rng, samples=5, perturb=True)
    return not passed, f"perturbed fixtures: {detail}"


def check_circulant(max_n: int = 101) -> CheckResult:
    """Closed-form circulant spectrum against dense solves."""
    p = LatticeVector(3, 1)
    worst = 0.0
    for n in range(3, max_n + 1, 2):
        rho = np.full(n, 1.0 / p.norm_sq())
        dense = eigenvalues(skew_pattern(n, True) @ np.diag(rho))
        worst = max(worst, _match_spectra(dense, circulant_spectrum(n, p)))
    return worst <= 1e-10, f"max distance {worst:.2e}"


def check_exceptions(max_norm: int = 12) -> CheckResult:
    """find_case_i_leader is absent only for p ~ (1,0), (1,1), (1,2)."""
    expected = {(0, 1), (1, 1), (1, 2)}
    wrong = []
    for x1 in range(-max_norm, max_norm + 1):
        for x2 in range(-max_norm, max_norm + 1):
            p = LatticeVector(x1, x2)
            if p.is_zero() or p.norm_sq() > max_norm * max_norm:
                continue
            absent = find_case_i_leader(p) is None
            if absent != (tuple(sorted((abs(x1), abs(x2)))) in expected):
                wrong.append(str(p))
    return not wrong, "exceptions as expected" if not wrong else f"unexpected: {', '.join(wrong[:5])}"


def check_lambda_dagger() -> CheckResult:
    """Local lower bound for p=(3,1), a=(1,-2) from the untruncated ρ."""
    p, a = LatticeVector(3, 1), LatticeVector(1, -2)
    chain = galerkin_chain(a, p, 5)
    bound = lambda_dagger(class_matrix(chain, 1.0).rho, TruncationKind.GALERKIN)
    return bound is not None and abs(bound - 0.028988) < 1e-6, f"λ† = {bound}"


def check_certificates() -> CheckResult:
    """Dense real eigenvalue above λ† and equal to the bisection root on both truncations."""
    p, a = LatticeVector(3, 1), LatticeVector(1, -2)
    details = []
    for kind, sizes in ((TruncationKind.ZEITLIN, (19, 39, 79)), (TruncationKind.GALERKIN, (20, 40, 80))):
        for N in sizes:
            spectrum = analyze_class(enumerate_class(a, p, Domain(N), kind), 1.0)
            certificates = spectrum.certificates
            dense = spectrum.real_eigenvalue()
            if certificates is None or certificates.bracketed_root is None or dense is None:
                return False, f"{kind.value} N={N}: no certificate"
            scale = abs(spectrum.alpha)
            if dense <= certificates.lambda_dagger / scale:
                return False, f"{kind.value} N={N}: λ={dense} not above λ†"
            gap = abs(certificates.bracketed_root / scale - dense)
            if gap > 1e-8:
                return False, f"{kind.value} N={N}: root and dense eigenvalue differ by {gap:.2e}"
            details.append(f"{kind.value[0]}{N}:{dense:.6f}")
    return True, " ".join(details)


def check_decay() -> CheckResult:
    """Eigenvector tail of the real eigenvalue for p=(3,1), a=(1,-2), N=100."""
    descriptor = enumerate_class(LatticeVector(1, -2), LatticeVector(3, 1), Domain(100), TruncationKind.ZEITLIN)
    matrix = class_matrix(descriptor, 0.5)
    spectrum = analyze_class(descriptor, 0.5)
    analysis = eigenvector_decay(matrix, spectrum.real_eigenvalue())
    passed = analysis.hamiltonian_residual <= 1e-8 and analysis.tail_ratio_error <= 0.05
    return passed, (f"tail error {analysis.tail_ratio_error:.3f}, "
                    f"Hamiltonian residual {analysis.hamiltonian_residual:.2e}")


def check_ensemble() -> CheckResult:
    """Hyperbolic eigenvalue counts for p=(5,3), Γ=0.5, Zeitlin N=200."""
    p = LatticeVector(5, 3)
    spectra = [analyze_class(d, 0.5, solve_stable=False)
               for d in canonical_classes(p, Domain(200), TruncationKind.ZEITLIN)]
    counts = [s.classification for s in spectra if s.classification is not None]
    real = sum(2 * c.real_pairs for c in counts)
    complex_ = sum(4 * c.quadruplets for c in counts)
    interior = len(unstable_disc(p)) - 1
    lens = len(lens_points(p))
    passed = (count_hyperbolic(spectra), real, complex_, interior, lens) == (200, 56, 144, 100, 24)
    return passed, f"nonimaginary={real + complex_} real={real} complex={complex_} interior={interior} lens={lens}"


def check_quadruplet() -> CheckResult:
    """Complex quadruplet of p=(1,1), a=(0,1), Γ=1 at N=101 and N=201."""
    target = complex(0.24822, 0.35172)
    found = []
    for N in (101, 201):
        spectrum = analyze_class(enumerate_class(LatticeVector(0, 1), LatticeVector(1, 1), Domain(N),
                                                 TruncationKind.ZEITLIN), 1.0)
        values = spectrum.eigenvalues
        quadrant = values[(values.real > 0) & (values.imag > 0) & (np.abs(values.real) > 1e-6)]
        if quadrant.size == 0:
            return False, f"N={N}: no quadruplet"
        found.append(complex(quadrant[np.argmin(np.abs(quadrant - target))]))
    error = abs(found[-1] - target)
    return error <= 2e-3, f"λ(201) = {found[-1]:.5f}, |λ(201) - λ(101)| = {abs(found[1] - found[0]):.2e}"


def check_density() -> CheckResult:
    """Imaginary-part histogram for p=(3,1), a=(1,-2), N=1000 against the arcsine law."""
    p, a, gamma = LatticeVector(3, 1), LatticeVector(1, -2), 0.5
    spectrum = analyze_class(enumerate_class(a, p, Domain(1000), TruncationKind.ZEITLIN), gamma)
    gap = compare_density(empirical_density(spectrum, 40), density_model(a, p, gamma))
    beta = essential_support(a, p, gamma)
    support_gap = abs(beta - float(np.max(np.abs(spectrum.eigenvalues.imag)))) / beta
    return gap < 0.15 and support_gap < 0.01, f"sup gap {gap:.3f}, support gap {support_gap:.4f}"


def check_case_iii() -> CheckResult:
    """The class led by (1,6) for p=(6,2) meets the disc twice."""
    p = LatticeVector(6, 2)
    case = analyze_class(enumerate_class(LatticeVector(1, 6), p, Domain(20), TruncationKind.ZEITLIN), 0.5).case
    return case is StabilityCase.CASE_III, f"case {case.value}"


def suite(level: str, rng: np.random.Generator) -> Dict[str, Callable[[], CheckResult]]:
    """Named checks of the requested level, in execution order."""
    if level not in ("quick", "full"):
        raise ValueError(f"Unknown verification level '{level}'")
    checks = {
        'recurrences': lambda: check_recurrences(rng),
        'zero_closed_forms': lambda: check_zero_closed_forms(rng),
        'block_decoupling': check_block_decoupling,
        'partition': check_partition,
        'jacobian': lambda: check_jacobian(rng),
        'energy': lambda: check_energy(rng),
        'stable_disc': lambda: check_stable_disc(rng, samples=50 if level == "quick" else 200),
        'negative_control': lambda: check_negative_control(rng),
        'circulant': lambda: check_circulant(31 if level == "quick" else 101),
        'lambda_dagger': check_lambda_dagger,
        'exceptions': lambda: check_exceptions(6 if level == "quick" else 12),
    }
    if level == "full":
        checks.update({
            'certificates': check_certificates,
            'decay': check_decay,
            'case_iii': check_case_iii,
            'quadruplet': check_quadruplet,
            'density': check_density,
            'ensemble': check_ensemble,
        })
    return checks


def run_verify(level: str = "quick", seed: int = 2024, raise_on_failure: bool = True) -> List[CheckOutcome]:
    """
    Run the verification suite.

    Args:
        level: "quick" or "full"
        seed: Seed of the random fixtures
        raise_on_failure: Raise instead of returning when a check fails

    Returns:
        One outcome per check

    Raises:
        VerificationError: If any check fails and raise_on_failure is set
    """
    rng = np.random.default_rng(seed)
    outcomes = []
    for name, check in suite(level, rng).items():
        start = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as exc:
            logger.exception("Check %s raised", name)
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        outcome = CheckOutcome(name, bool(passed), detail, time.perf_counter() - start)
        logger.info("%-18s %s (%.2fs) %s", name, "ok" if outcome.passed else "FAILED", outcome.seconds, detail)
        outcomes.append(outcome)
    failures = [o.name for o in outcomes if not o.passed]
    if failures and raise_on_failure:
        raise VerificationError(failures)
    return outcomes


def summary(outcomes: List[CheckOutcome]) -> str:
    """Human-readable summary, one line per check."""
    lines = [f"{'PASS' if o.passed else 'FAIL'}  {o.name:<18} {o.seconds:7.2f}s  {o.detail}" for o in outcomes]
    passed = sum(o.passed for o in outcomes)
    lines.append(f"{passed}/{len(outcomes)} checks passed")
    return "\n".join(lines)
