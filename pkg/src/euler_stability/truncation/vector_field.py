"""
Nonlinear vector fields of the Galerkin and Zeitlin truncations and a classical RK4 stepper.
"""

import logging
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from ..lattice import Domain, TruncationKind, wrap_array
from .mode_state import ModeState

logger = logging.getLogger(__name__)

Field = Callable[[ModeState], ModeState]


@lru_cache(maxsize=16)
def _interaction(N: int, kind: TruncationKind) -> Tuple[np.ndarray, np.ndarray]:
    """
    Dense interaction weights W[k, l] and target indices T[k, l] of k + l.

    Rows and columns follow the lexicographic mode order. For Galerkin, targets outside D
    point at a padding slot holding zero.
    """
    domain = Domain(N)
    modes = domain.mode_array()
    size = len(modes)
    cross = np.outer(modes[:, 0], modes[:, 1]) - np.outer(modes[:, 1], modes[:, 0])
    norm_sq = (modes * modes).sum(axis=1)
    inverse = np.where(norm_sq > 0, 1.0 / np.where(norm_sq > 0, norm_sq, 1), 0.0)

    if kind is TruncationKind.GALERKIN:
        weights = cross * inverse[None, :]
    else:
        eps = domain.epsilon
        weights = np.sin(eps * cross) / eps * inverse[None, :]

    target = modes[:, None, :] + modes[None, :, :]
    if kind is TruncationKind.ZEITLIN:
        target = wrap_array(target, domain)
        index = domain.flat_index(target[..., 0], target[..., 1])
    else:
        inside = np.all(np.abs(target) <= N, axis=-1)
        index = np.where(inside, domain.flat_index(target[..., 0], target[..., 1]), size)
    weights.setflags(write=False)
    index.setflags(write=False)
    return weights, index


def vector_field(state: ModeState, kind: TruncationKind) -> ModeState:
    """
    Time derivative of the truncated Euler equations.

    Galerkin: ω̇_k = Σ_{l∈D∖0} (k×l)/|l|² ω_{-l} ω_{k+l}, with ω = 0 outside D.
    Zeitlin:  ω̇_k = Σ_{l∈D∖0} sin(ε k×l)/(ε|l|²) ω_{-l} ω_{wrap(k+l)}.

    Args:
        state: Current mode state
        kind: Truncation kind

    Returns:
        The derivative as a mode state
    """
    weights, index = _interaction(state.domain.N, kind)
    flat = state.flat
    padded = np.append(flat, 0.0)
    derivative = (weights * padded[index]) @ flat[::-1]
    derivative[state.domain.N * state.domain.width + state.domain.N] = 0.0
    return ModeState.from_flat(state.domain, derivative)


def integrate_rk4(state: ModeState, kind: TruncationKind, dt: float, steps: int,
                  field: Optional[Field] = None) -> ModeState:
    """
    Classical fourth-order Runge-Kutta integration.

    Args:
        state: Initial state
        kind: Truncation kind of the nonlinear field
        dt: Step size
        steps: Number of steps
        field: Optional replacement vector field (for example a linearised one)

    Returns:
        State after `steps` steps
    """
    if steps < 0:
        raise ValueError("Number of steps must be nonnegative")
    rhs = field if field is not None else (lambda s: vector_field(s, kind))
    current = state.copy()
    for _ in range(steps):
        k1 = rhs(current)
        k2 = rhs(current + k1 * (0.5 * dt))
        k3 = rhs(current + k2 * (0.5 * dt))
        k4 = rhs(current + k3 * dt)
        current = current + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (dt / 6.0)
    return current
