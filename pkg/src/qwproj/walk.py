"""Coin and step operators and the one-step evolution U = SC.

Two independent engines advance a state by one step:

* :func:`evolve` applies the coin operator to every occupied position and
  then scatters each coin component along its displacement (multiplying in
  the optional per-direction step phase).  The scatter is vectorized over
  the support.
* :func:`evolve_recurrence` computes the next state in gather form, reading
  the new coin vector at a position x componentwise from the preimages:
  the c-th entry at x is the c-th entry of (C alpha) taken at the position
  that c maps onto x.

The engines share no stepping code, so their elementwise agreement is a
meaningful cross-check.  Operators are never materialized as matrices on
infinite spaces; :func:`dense_unitary` builds the full matrix for finite
spaces only, as an oracle for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidParameter,
    MissingSigma,
    NotUnitary,
    SpaceMismatch,
)
from .hilbert import WalkState
from .spaces import Position, PositionSpace

UNITARY_TOL = 1e-12

__all__ = [
    "UNITARY_TOL",
    "CoinAssignment",
    "StepPhase",
    "WalkSpec",
    "grover_coin",
    "hadamard_coin",
    "coin_from_config",
    "apply_coin",
    "apply_step",
    "evolve",
    "evolve_recurrence",
    "absorbed_phase_walk",
    "dense_unitary",
    "state_to_vector",
    "vector_to_state",
]


def grover_coin(dim: int = 4) -> np.ndarray:
    """The dim x dim Grover diffusion coin, 2/dim off-diagonal and 2/dim - 1 on it."""
    if dim < 1:
        raise InvalidParameter(f"coin dimension must be >= 1, got {dim}")
    return (2.0 / dim) * np.ones((dim, dim), dtype=np.complex128) - np.eye(
        dim, dtype=np.complex128
    )


def hadamard_coin() -> np.ndarray:
    """The 2 x 2 Hadamard coin (1/sqrt(2)) [[1, 1], [1, -1]]."""
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


def _check_unitary(mat: np.ndarray, dim: int) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.shape != (dim, dim):
        raise DimensionMismatch(f"coin matrix has shape {mat.shape}, expected ({dim}, {dim})")
    resid = np.max(np.abs(mat.conj().T @ mat - np.eye(dim)))
    if resid >= UNITARY_TOL:
        raise NotUnitary(f"unitarity residual {resid:.3e} exceeds {UNITARY_TOL:.0e}")
    return mat


@dataclass(frozen=True)
class CoinAssignment:
    """A coin operator: one unitary shared by all positions, or one per position."""

    dimension: int
    matrix: np.ndarray | None = None
    matrix_fn: Callable[[Position], np.ndarray] | None = None

    @staticmethod
    def homogeneous(matrix: np.ndarray) -> "CoinAssignment":
        matrix = np.asarray(matrix, dtype=np.complex128)
        dim = matrix.shape[0]
        return CoinAssignment(dim, matrix=_check_unitary(matrix, dim))

    @staticmethod
    def positional(fn: Callable[[Position], np.ndarray], dimension: int) -> "CoinAssignment":
        return CoinAssignment(dimension, matrix_fn=fn)

    @property
    def is_homogeneous(self) -> bool:
        return self.matrix is not None

    def at(self, pos: Position) -> np.ndarray:
        """The coin matrix acting at ``pos`` (validated for unitarity)."""
        if self.matrix is not None:
            return self.matrix
        return _check_unitary(self.matrix_fn(pos), self.dimension)


@dataclass(frozen=True)
class StepPhase:
    """Per-direction phases picked up by the step: exp(i*phi*sigma_c[label])."""

    phi: float
    sigma_c: Mapping[str, int]


@dataclass(frozen=True)
class WalkSpec:
    """A walk: a space, a coin assignment, and optional step phases."""

    space: PositionSpace
    coin: CoinAssignment
    phase: StepPhase | None = None

    def __post_init__(self) -> None:
        if self.coin.dimension != self.space.coin_dimension:
            raise DimensionMismatch(
                f"coin dimension {self.coin.dimension} != |Gamma| = {self.space.coin_dimension}"
            )
        if self.phase is not None:
            missing = [l for l in self.space.labels if l not in self.phase.sigma_c]
            if missing:
                raise MissingSigma(f"no sigma weight for displacements {missing}")

    def step_phases(self) -> np.ndarray | None:
        """Phase factors in displacement order, or None when the walk is phase-free."""
        if self.phase is None:
            return None
        phi = self.phase.phi
        return np.array(
            [np.exp(1j * phi * self.phase.sigma_c[d.label]) for d in self.space.displacements]
        )


def _check_state(spec: WalkSpec, state: WalkState) -> None:
    if spec.space.signature != state.space.signature:
        raise SpaceMismatch(
            f"state on {state.space.name!r} fed to a walk on {spec.space.name!r}"
        )


def apply_coin(spec: WalkSpec, state: WalkState) -> WalkState:
    """Multiply each coin vector by the coin matrix of its position."""
    _check_state(spec, state)
    if not state.support:
        return state
    positions = list(state.support)
    stacked = np.array([state.support[p] for p in positions])
    if spec.coin.is_homogeneous:
        out = stacked @ spec.coin.matrix.T
    else:
        out = np.array([spec.coin.at(p) @ state.support[p] for p in positions])
    return WalkState(spec.space, dict(zip(positions, out)))


def apply_step(spec: WalkSpec, state: WalkState) -> WalkState:
    """Move the c-th coin component of every position along displacement c.

    When the walk carries step phases, the moved component is multiplied by
    exp(i*phi*sigma_c).  Positions receiving cancelling contributions keep
    an explicit zero vector (no implicit pruning).
    """
    _check_state(spec, state)
    if not state.support:
        return state
    disps = spec.space.displacements
    phases = spec.step_phases()
    if all(d.apply_array is not None for d in disps):
        return _apply_step_vectorized(spec, state, phases)
    # generic fallback for displacement families without a vectorized action
    dim = len(disps)
    out: dict[Position, np.ndarray] = {}
    for pos, vec in state.support.items():
        for ci, disp in enumerate(disps):
            amp = vec[ci] if phases is None else vec[ci] * phases[ci]
            target = disp.apply(pos)
            if target not in out:
                out[target] = np.zeros(dim, dtype=np.complex128)
            out[target][ci] += amp
    return WalkState(spec.space, out)


def _apply_step_vectorized(
    spec: WalkSpec, state: WalkState, phases: np.ndarray | None
) -> WalkState:
    disps = spec.space.displacements
    dim = len(disps)
    positions = list(state.support)
    n = len(positions)
    coords = np.array(positions, dtype=np.int64)
    values = np.array([state.support[p] for p in positions])
    all_coords = np.concatenate([d.apply_array(coords) for d in disps])
    uniq, inverse = np.unique(all_coords, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    out = np.zeros((len(uniq), dim), dtype=np.complex128)
    for ci in range(dim):
        amps = values[:, ci] if phases is None else values[:, ci] * phases[ci]
        np.add.at(out[:, ci], inverse[ci * n : (ci + 1) * n], amps)
    support = dict(zip(map(tuple, uniq.tolist()), out))
    return WalkState(spec.space, support)


def evolve(spec: WalkSpec, state: WalkState, n: int) -> WalkState:
    """Apply n steps of U = (step . coin) to the state."""
    if n < 0:
        raise InvalidParameter(f"step count must be >= 0, got {n}")
    for _ in range(n):
        state = apply_step(spec, apply_coin(spec, state))
    return state


def evolve_recurrence(spec: WalkSpec, state: WalkState, n: int) -> WalkState:
    """Advance the state by the gather-form recurrence.

    The new coin vector at x has c-th entry (C_y alpha_y)_c where y is the
    unique preimage of x under displacement c, times the step phase of c.
    Results agree with :func:`evolve` elementwise to machine precision.
    """
    if n < 0:
        raise InvalidParameter(f"step count must be >= 0, got {n}")
    _check_state(spec, state)
    for _ in range(n):
        state = _recurrence_step(spec, state)
    return state


def _recurrence_step(spec: WalkSpec, state: WalkState) -> WalkState:
    disps = spec.space.displacements
    dim = len(disps)
    phases = spec.step_phases()
    if spec.coin.is_homogeneous:
        mat = spec.coin.matrix
        coined = {pos: mat @ vec for pos, vec in state.support.items()}
    else:
        coined = {pos: spec.coin.at(pos) @ vec for pos, vec in state.support.items()}
    candidates: set[Position] = set()
    for pos in coined:
        for disp in disps:
            candidates.add(disp.apply(pos))
    out: dict[Position, np.ndarray] = {}
    for x in sorted(candidates):
        vec = np.zeros(dim, dtype=np.complex128)
        for ci, disp in enumerate(disps):
            src = coined.get(disp.unapply(x))
            if src is not None:
                vec[ci] = src[ci] if phases is None else src[ci] * phases[ci]
        out[x] = vec
    return WalkState(spec.space, out)


def absorbed_phase_walk(spec: WalkSpec) -> WalkSpec:
    """Fold the step phases into the coin, leaving a phase-free step.

    The diagonal phase matrix D with entries exp(i*phi*sigma_c) commutes
    past the plain step exactly as the phased step applies it, so the
    one-step operator of the returned walk equals that of ``spec``; only
    the split between coin and step differs.
    """
    phases = spec.step_phases()
    if phases is None:
        return spec
    diag = np.diag(phases)
    if spec.coin.is_homogeneous:
        coin = CoinAssignment.homogeneous(diag @ spec.coin.matrix)
    else:
        fn = spec.coin.matrix_fn
        coin = CoinAssignment.positional(
            lambda pos: diag @ fn(pos), spec.coin.dimension
        )
    return WalkSpec(spec.space, coin, phase=None)


def dense_unitary(spec: WalkSpec) -> tuple[np.ndarray, tuple[Position, ...]]:
    """The full one-step matrix S @ C for a finite space, plus the basis order.

    Basis index of (position p_i, coin c) is i*dim + c with positions in the
    space's enumeration order.  Intended as a test oracle; raises
    InvalidParameter for spaces without a finite enumeration.
    """
    pts = spec.space.positions
    if pts is None:
        raise InvalidParameter(f"space {spec.space.name!r} has no finite enumeration")
    dim = spec.coin.dimension
    index = {p: i for i, p in enumerate(pts)}
    total = len(pts) * dim
    cmat = np.zeros((total, total), dtype=np.complex128)
    for p, i in index.items():
        cmat[i * dim : (i + 1) * dim, i * dim : (i + 1) * dim] = spec.coin.at(p)
    phases = spec.step_phases()
    smat = np.zeros((total, total), dtype=np.complex128)
    for p, i in index.items():
        for ci, disp in enumerate(spec.space.displacements):
            j = index[disp.apply(p)]
            smat[j * dim + ci, i * dim + ci] = 1.0 if phases is None else phases[ci]
    return smat @ cmat, pts


def state_to_vector(state: WalkState) -> np.ndarray:
    """Flatten a state on a finite space into the dense basis order."""
    pts = state.space.positions
    if pts is None:
        raise InvalidParameter(f"space {state.space.name!r} has no finite enumeration")
    dim = state.coin_dimension
    vec = np.zeros(len(pts) * dim, dtype=np.complex128)
    for i, p in enumerate(pts):
        if p in state.support:
            vec[i * dim : (i + 1) * dim] = state.support[p]
    return vec


def vector_to_state(space: PositionSpace, vec: np.ndarray) -> WalkState:
    """Inverse of :func:`state_to_vector`."""
    pts = space.positions
    if pts is None:
        raise InvalidParameter(f"space {space.name!r} has no finite enumeration")
    dim = space.coin_dimension
    support = {
        p: np.array(vec[i * dim : (i + 1) * dim], dtype=np.complex128)
        for i, p in enumerate(pts)
    }
    return WalkState(space, support)


_NAMED_COINS = {
    "grover4": lambda: grover_coin(4),
    "hadamard2": hadamard_coin,
}


def coin_from_config(cfg: Mapping) -> CoinAssignment:
    """Build a coin from a descriptor.

    Accepted forms: {"coin": "grover4"}, {"coin": "hadamard2"}, and
    {"coin": "matrix", "rows": [[[re, im], ...], ...]}.
    """
    try:
        kind = cfg["coin"]
    except (KeyError, TypeError):
        raise InvalidParameter(f"not a coin descriptor: {cfg!r}") from None
    if kind in _NAMED_COINS:
        return CoinAssignment.homogeneous(_NAMED_COINS[kind]())
    if kind == "matrix":
        rows = [[complex(re, im) for re, im in row] for row in cfg["rows"]]
        return CoinAssignment.homogeneous(np.array(rows, dtype=np.complex128))
    raise InvalidParameter(f"unknown coin kind {kind!r}")
