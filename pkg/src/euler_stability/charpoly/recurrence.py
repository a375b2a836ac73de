"""
Characteristic polynomials of the tridiagonal class blocks and of the cyclic Zeitlin matrix.

For coefficients a_0, ..., a_{n-1} the block T_α^β has entries T[i, i+1] = a_{i+1} and
T[i+1, i] = -a_i on rows/columns α..β. Its characteristic polynomial 𝒯_α^β(x) = det(xI - T_α^β)
satisfies

    𝒯_α^β = x 𝒯_α^{β-1} + a_β a_{β-1} 𝒯_α^{β-2}      (expansion from the top left)
    𝒯_α^β = x 𝒯_{α+1}^β + a_α a_{α+1} 𝒯_{α+2}^β      (expansion from the bottom right)

with the empty block 𝒯_α^{α-1} = 1, so that 𝒯_α^α = x. Values are carried as a mantissa and
a binary exponent so that classes of a few thousand modes never overflow.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

RENORMALIZE_ABOVE = 2.0 ** 500
RENORMALIZE_BELOW = 2.0 ** -500


class ScaledValue(NamedTuple):
    """The number mantissa·2^exponent."""
    mantissa: float
    exponent: int

    def value(self) -> float:
        """Plain float, saturating to ±inf or 0 outside the double range."""
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.copysign(math.inf, self.mantissa)

    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def scaled_by(self, factor: float) -> "ScaledValue":
        return normalize(self.mantissa * factor, self.exponent)

    def plus(self, other: "ScaledValue") -> "ScaledValue":
        """Sum of two scaled values, aligned to the larger exponent."""
        if self.mantissa == 0.0:
            return other
        if other.mantissa == 0.0:
            return self
        exponent = max(self.exponent, other.exponent)
        total = (math.ldexp(self.mantissa, self.exponent - exponent)
                 + math.ldexp(other.mantissa, other.exponent - exponent))
        return normalize(total, exponent)


def normalize(mantissa: float, exponent: int) -> ScaledValue:
    """Bring the mantissa into [0.5, 1) in magnitude."""
    if mantissa == 0.0:
        return ScaledValue(0.0, 0)
    fraction, shift = math.frexp(mantissa)
    return ScaledValue(fraction, exponent + shift)


@dataclass(frozen=True)
class CoefficientSequence:
    """Coefficients a_0 ... a_{n-1} of a tridiagonal (or cyclic) class matrix."""
    a: tuple
    cyclic: bool = False

    def __post_init__(self):
        values = tuple(float(v) for v in self.a)
        if len(values) < 2:
            raise ValueError("A coefficient sequence needs at least two entries")
        object.__setattr__(self, "a", values)

    @classmethod
    def from_rho(cls, rho: Sequence[float], cyclic: bool) -> "CoefficientSequence":
        return cls(tuple(rho), cyclic)

    @property
    def n(self) -> int:
        return len(self.a)


def _check_block(seq: CoefficientSequence, alpha_idx: int, beta_idx: int):
    if not (0 <= alpha_idx <= beta_idx + 1 and beta_idx <= seq.n - 1 and alpha_idx <= seq.n):
        raise ValueError(f"Block [{alpha_idx}, {beta_idx}] is not inside a sequence of length {seq.n}")


def _rescale(previous: float, current: float, exponent: int):
    magnitude = max(abs(previous), abs(current))
    if magnitude > RENORMALIZE_ABOVE or 0.0 < magnitude < RENORMALIZE_BELOW:
        shift = math.frexp(magnitude)[1]
        return math.ldexp(previous, -shift), math.ldexp(current, -shift), exponent + shift
    return previous, current, exponent


def t_eval_scaled(seq: CoefficientSequence, alpha_idx: int, beta_idx: int, x: float,
                  direction: str = "forward") -> ScaledValue:
    """
    𝒯_α^β(x) as a scaled value.

    Args:
        seq: Coefficient sequence
        alpha_idx: First row of the block
        beta_idx: Last row of the block (alpha_idx - 1 gives the empty block)
        x: Evaluation point
        direction: "forward" (top-left expansion) or "backward" (bottom-right expansion)

    Returns:
        Scaled determinant value
    """
    _check_block(seq, alpha_idx, beta_idx)
    if direction not in ("forward", "backward"):
        raise ValueError(f"Unknown expansion direction '{direction}'")
    a = seq.a
    previous, current, exponent = 0.0, 1.0, 0
    if direction == "forward":
        for j in range(alpha_idx, beta_idx + 1):
            coupling = a[j] * a[j - 1] if j > alpha_idx else 0.0
            previous, current = current, x * current + coupling * previous
            previous, current, exponent = _rescale(previous, current, exponent)
    else:
        for j in range(beta_idx, alpha_idx - 1, -1):
            coupling = a[j] * a[j + 1] if j < beta_idx else 0.0
            previous, current = current, x * current + coupling * previous
            previous, current, exponent = _rescale(previous, current, exponent)
    return normalize(current, exponent)


def t_eval(seq: CoefficientSequence, alpha_idx: int, beta_idx: int, x: float,
           direction: str = "forward") -> float:
    """Value of 𝒯_α^β(x) = det(xI - T_α^β) by the three-term recurrence."""
    return t_eval_scaled(seq, alpha_idx, beta_idx, x, direction).value()


def t_at_zero(seq: CoefficientSequence, alpha_idx: int, beta_idx: int) -> float:
    """𝒯_α^β(0): the product a_α ... a_β when β - α is odd, else 0."""
    _check_block(seq, alpha_idx, beta_idx)
    if beta_idx < alpha_idx:
        return 1.0
    if (beta_idx - alpha_idx) % 2 == 0:
        return 0.0
    return float(np.prod(seq.a[alpha_idx:beta_idx + 1]))


def dt_at_zero(seq: CoefficientSequence, alpha_idx: int, beta_idx: int) -> float:
    """
    Derivative of 𝒯_α^β at 0.

    Zero when β - α is odd; otherwise the sum over k = 0..(β-α)/2 of the products of all
    a_j, α ≤ j ≤ β, except a_{α+2k}.
    """
    _check_block(seq, alpha_idx, beta_idx)
    if beta_idx < alpha_idx or (beta_idx - alpha_idx) % 2 == 1:
        return 0.0
    block = seq.a[alpha_idx:beta_idx + 1]
    total = 0.0
    for skip in range(0, len(block), 2):
        total += float(np.prod(block[:skip] + block[skip + 1:]))
    return total


def a_eval_scaled(seq: CoefficientSequence, x: float) -> ScaledValue:
    """
    𝒜(x) = 𝒯_0^{n-1}(x) + a_0 a_{n-1} 𝒯_1^{n-2}(x) as a scaled value.

    Raises:
        ValueError: If n is even (the cycle terms no longer cancel)
    """
    if seq.n % 2 == 0:
        raise ValueError(f"The cyclic characteristic polynomial requires odd n, got n={seq.n}")
    head = t_eval_scaled(seq, 0, seq.n - 1, x)
    corner = t_eval_scaled(seq, 1, seq.n - 2, x).scaled_by(seq.a[0] * seq.a[-1])
    return head.plus(corner)


def a_eval(seq: CoefficientSequence, x: float) -> float:
    """Value of 𝒜(x) = det(xI - A′) for the cyclic matrix of an odd-length sequence."""
    return a_eval_scaled(seq, x).value()


def tridiagonal_matrix(seq: CoefficientSequence, alpha_idx: int = 0, beta_idx: int = None) -> np.ndarray:
    """Dense block T_α^β, used as an oracle for the recurrences."""
    beta_idx = seq.n - 1 if beta_idx is None else beta_idx
    a = np.array(seq.a[alpha_idx:beta_idx + 1])
    size = len(a)
    matrix = np.zeros((size, size))
    rows = np.arange(size - 1)
    matrix[rows, rows + 1] = a[1:]
    matrix[rows + 1, rows] = -a[:-1]
    return matrix


def cyclic_matrix(seq: CoefficientSequence) -> np.ndarray:
    """Dense cyclic matrix A′ with corners A′[0, n-1] = -a_{n-1} and A′[n-1, 0] = a_0."""
    matrix = tridiagonal_matrix(seq)
    matrix[0, -1] = -seq.a[-1]
    matrix[-1, 0] = seq.a[0]
    return matrix
