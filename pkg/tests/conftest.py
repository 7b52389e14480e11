"""Shared fixtures and state generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from qwproj import (
    CoinAssignment,
    WalkSpec,
    circle,
    grover_coin,
    hadamard_coin,
    lattice_2d,
    line,
    llattice,
    state_new,
)


def random_sparse_state(space, rng, points=4, radius=6, normalized=True):
    """A random finitely supported state with complex Gaussian amplitudes."""
    dim = space.coin_dimension
    assignments = []
    for _ in range(points):
        if space.name.startswith("circle"):
            n = space.positions and len(space.positions)
            pos = (int(rng.integers(0, n)),)
        else:
            pos = tuple(int(c) for c in rng.integers(-radius, radius + 1, size=space.dimension))
        vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        assignments.append((pos, vec))
    state = state_new(space, assignments)
    if normalized:
        from qwproj import norm, scale

        total = norm(state)
        if total > 0:
            state = scale(1.0 / total, state)
    return state


def walk_zoo():
    """One walk per catalog space family, for engine cross-checks."""
    return [
        WalkSpec(lattice_2d(), CoinAssignment.homogeneous(grover_coin())),
        WalkSpec(line(), CoinAssignment.homogeneous(hadamard_coin())),
        WalkSpec(circle(4), CoinAssignment.homogeneous(hadamard_coin())),
        WalkSpec(llattice(), CoinAssignment.homogeneous(hadamard_coin())),
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
