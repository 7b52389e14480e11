"""Sparse vectors on the position (x) coin Hilbert space.

A state assigns a complex coin vector to finitely many positions of a
:class:`~qwproj.spaces.PositionSpace`; positions not listed carry the zero
vector.  States are immutable values: every operation returns a new state
and never mutates its inputs, so states can be shared freely across threads.
Coin vectors are stored as ``complex128`` arrays whose length equals the
number of displacements of the owning space, with entries ordered like the
space's displacement family.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionMismatch, InvalidPosition, SpaceMismatch
from .spaces import Position, PositionSpace

__all__ = [
    "WalkState",
    "state_new",
    "norm",
    "inner",
    "position_distribution",
    "prune",
    "scale",
    "add",
    "sub",
    "diff_norm",
    "max_abs_difference",
    "to_json_dict",
    "from_json_dict",
    "state_to_json",
    "state_from_json",
    "distribution_csv",
]


@dataclass(frozen=True, eq=False)
class WalkState:
    """A finitely supported vector in the position (x) coin space.

    ``support`` maps position tuples to coin-vector arrays.  Treat both the
    dict and the arrays as read-only; all module functions do.  Compare
    states numerically (:func:`diff_norm`, :func:`max_abs_difference`), not
    with ``==``.
    """

    space: PositionSpace
    support: dict[Position, np.ndarray]

    @property
    def coin_dimension(self) -> int:
        return self.space.coin_dimension

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<WalkState on {self.space.name}: {len(self.support)} positions, norm={norm(self):.6g}>"


def _check_compatible(a: WalkState, b: WalkState) -> None:
    if a.space.signature != b.space.signature:
        raise SpaceMismatch(
            f"states live on different spaces: {a.space.name!r} vs {b.space.name!r}"
        )


def state_new(
    space: PositionSpace,
    assignments: Iterable[tuple[Position, Iterable[complex]]],
) -> WalkState:
    """Build a state from (position, coin vector) pairs.

    Duplicate positions are summed.  Every position must belong to the space
    (InvalidPosition), every coin vector must have exactly one entry per
    displacement (DimensionMismatch), and all amplitudes must be finite.
    """
    dim = space.coin_dimension
    support: dict[Position, np.ndarray] = {}
    for pos, vec in assignments:
        pos = tuple(pos)
        if not space.contains(pos):
            raise InvalidPosition(f"{pos} is not a position of space {space.name!r}")
        arr = np.array(vec, dtype=np.complex128)
        if arr.shape != (dim,):
            raise DimensionMismatch(
                f"coin vector at {pos} has length {arr.size}, space needs {dim}"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError(f"non-finite amplitude at {pos}")
        pos = tuple(int(c) for c in pos)
        if pos in support:
            support[pos] = support[pos] + arr
        else:
            support[pos] = arr
    return WalkState(space, support)


def norm(state: WalkState) -> float:
    """The 2-norm, sqrt of the summed squared moduli of all amplitudes."""
    total = 0.0
    for vec in state.support.values():
        total += float(np.vdot(vec, vec).real)
    return math.sqrt(total)


def inner(a: WalkState, b: WalkState) -> complex:
    """Scalar product, conjugate-linear in ``a`` and linear in ``b``."""
    _check_compatible(a, b)
    total = 0j
    small, big = (a, b) if len(a.support) <= len(b.support) else (b, a)
    for pos, vec in small.support.items():
        other = big.support.get(pos)
        if other is None:
            continue
        if small is a:
            total += complex(np.vdot(vec, other))
        else:
            total += complex(np.vdot(other, vec))
    return total


def position_distribution(state: WalkState) -> dict[Position, float]:
    """Marginal position probabilities: sum of |amplitude|^2 per position."""
    return {
        pos: float(np.vdot(vec, vec).real) for pos, vec in state.support.items()
    }


def prune(state: WalkState, eps: float = 0.0) -> WalkState:
    """Drop support points whose coin vector has 2-norm <= ``eps``.

    The default drops exactly-zero vectors only; evolution and projection
    never prune implicitly, so exact cancellations stay observable until
    this is called.
    """
    kept = {
        pos: vec
        for pos, vec in state.support.items()
        if math.sqrt(float(np.vdot(vec, vec).real)) > eps
    }
    return WalkState(state.space, kept)


def scale(z: complex, state: WalkState) -> WalkState:
    return WalkState(state.space, {p: z * v for p, v in state.support.items()})


def add(a: WalkState, b: WalkState) -> WalkState:
    _check_compatible(a, b)
    out = dict(a.support)
    for pos, vec in b.support.items():
        out[pos] = out[pos] + vec if pos in out else vec
    return WalkState(a.space, out)


def sub(a: WalkState, b: WalkState) -> WalkState:
    return add(a, scale(-1.0, b))


def diff_norm(a: WalkState, b: WalkState) -> float:
    """2-norm of the difference a - b."""
    return norm(sub(a, b))


def max_abs_difference(a: WalkState, b: WalkState) -> float:
    """Largest |difference| over all amplitudes of a - b (elementwise)."""
    _check_compatible(a, b)
    worst = 0.0
    zero = np.zeros(a.coin_dimension, dtype=np.complex128)
    for pos in set(a.support) | set(b.support):
        d = a.support.get(pos, zero) - b.support.get(pos, zero)
        worst = max(worst, float(np.max(np.abs(d))))
    return worst


def to_json_dict(state: WalkState) -> dict:
    """State dump: {"space": name, "support": [{"pos": [...], "coin": [[re, im], ...]}]}."""
    entries = []
    for pos in sorted(state.support):
        vec = state.support[pos]
        entries.append(
            {
                "pos": [int(c) for c in pos],
                "coin": [[float(z.real), float(z.imag)] for z in vec],
            }
        )
    return {"space": state.space.name, "support": entries}


def from_json_dict(space: PositionSpace, data: Mapping) -> WalkState:
    """Rebuild a state on ``space`` from its dump; the space name must match."""
    if data.get("space") != space.name:
        raise SpaceMismatch(
            f"dump is for space {data.get('space')!r}, expected {space.name!r}"
        )
    assignments = []
    for entry in data["support"]:
        pos = tuple(entry["pos"])
        vec = [complex(re, im) for re, im in entry["coin"]]
        assignments.append((pos, vec))
    return state_new(space, assignments)


def state_to_json(state: WalkState) -> str:
    return json.dumps(to_json_dict(state), sort_keys=True, indent=2) + "\n"


def state_from_json(space: PositionSpace, text: str) -> WalkState:
    return from_json_dict(space, json.loads(text))


def distribution_csv(state: WalkState) -> str:
    """Position distribution as CSV text.

    One row per support position sorted lexicographically by coordinates,
    columns are the coordinates followed by the probability, 17 significant
    digits, LF line endings.
    """
    dist = position_distribution(state)
    dim = state.space.dimension
    lines = [",".join([f"x{i}" for i in range(dim)] + ["p"])]
    for pos in sorted(dist):
        lines.append(",".join(str(c) for c in pos) + "," + format(dist[pos], ".17g"))
    return "\n".join(lines) + "\n"
