"""Recovering a parent state from its phase-weighted projections.

For the planar lattice quotients the pair (rho, sigma) is a unimodular
change of coordinates, so a source amplitude is addressed by (r, s) just as
well as by (x, y).  The coefficient of target position r in the projection
at phase value phi is

    P(phi)[r] = sum_s exp(i*phi*s) * alpha[(r, s)],

a trigonometric polynomial in phi whose frequencies are the sigma values
present in that fiber.  Averaging exp(-i*t*phi) * P(phi) over the circle
isolates alpha at s = t exactly.  With M phases sampled uniformly at
phi_j = delta + 2*pi*j/M the average becomes a length-M DFT and isolates s
only modulo M:

    (1/M) sum_j exp(-2i*pi*t*j/M) P(phi_j)[r]
        = sum_{s == t (mod M)} exp(i*s*delta) * alpha[(r, s)].

Recovery of a coefficient is therefore exact whenever no other support
point of the same fiber has sigma congruent to it mod M.  A sufficient
condition is that all sigma values to be recovered fit into M consecutive
integers, which is what :func:`reconstruct` enforces for its global window;
:func:`reconstruct_support` instead checks the congruence condition
directly on a caller-supplied candidate region, which admits much smaller
grids when the per-fiber sigma spread is narrow.  The grid offset delta is
not corrected for: recovered coefficients at sigma = s carry exp(i*s*delta),
and the default grids start at zero.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    GridTooCoarse,
    InconsistentGrid,
    InvalidParameter,
    MissingSigma,
)
from .hilbert import WalkState
from .projection import induced_walk, project_state
from .spaces import Position, ProjectionMap
from .walk import WalkSpec, evolve

logger = logging.getLogger(__name__)

GRID_TOL = 1e-9

__all__ = [
    "ReconstructionPlan",
    "plan_reconstruction",
    "sigma_support_bounds",
    "phase_grid",
    "phase_projection_family",
    "reconstruct",
    "reconstruct_support",
]


@dataclass(frozen=True)
class ReconstructionPlan:
    """Grid size and sigma window for one inversion run."""

    pmap: ProjectionMap
    phi_samples: int
    phi_grid: tuple[float, ...]
    sigma_min: int
    sigma_max: int


def sigma_support_bounds(state: WalkState, pmap: ProjectionMap) -> tuple[int, int]:
    """Smallest and largest sigma value over the state's support."""
    if pmap.sigma is None:
        raise MissingSigma(f"projection {pmap.name!r} has no sigma homomorphism")
    values = [pmap.sigma(pos) for pos in state.support]
    if not values:
        return (0, 0)
    return (min(values), max(values))


def phase_grid(samples: int, delta: float = 0.0) -> tuple[float, ...]:
    """The uniform grid delta + 2*pi*j/samples for j = 0..samples-1."""
    if samples < 1:
        raise InvalidParameter(f"need at least one phase sample, got {samples}")
    return tuple(delta + 2.0 * math.pi * j / samples for j in range(samples))


def plan_reconstruction(
    state: WalkState, pmap: ProjectionMap, samples: int | None = None
) -> ReconstructionPlan:
    """Size a grid for recovering ``state``'s support window.

    The default sample count is the global sigma span rounded up to the next
    odd integer; an explicit smaller count raises GridTooCoarse.
    """
    sigma_min, sigma_max = sigma_support_bounds(state, pmap)
    width = sigma_max - sigma_min + 1
    if samples is None:
        samples = width if width % 2 == 1 else width + 1
    elif samples < width:
        raise GridTooCoarse(f"{samples} samples cannot resolve a sigma span of {width}")
    return ReconstructionPlan(pmap, samples, phase_grid(samples), sigma_min, sigma_max)


def phase_projection_family(
    walk: WalkSpec,
    pmap: ProjectionMap,
    psi0: WalkState,
    n: int,
    samples: int,
    delta: float = 0.0,
) -> list[tuple[float, WalkState]]:
    """Evolve the induced walk at every grid phase, starting from the projection.

    Returns (phi_j, state_j) pairs where state_j is n induced steps applied
    to the phi_j projection of psi0.  By the intertwining identity each
    state_j equals the phi_j projection of the evolved parent, so this is
    the family the inversion consumes, produced without ever evolving the
    parent.  The walks are independent of one another and may be distributed
    across workers; here they run sequentially.
    """
    family = []
    for phi in phase_grid(samples, delta):
        projected = project_state(pmap, phi, psi0)
        spec = induced_walk(walk, pmap, phi)
        family.append((phi, evolve(spec, projected, n)))
    logger.debug("built projection family: %d phases, %d steps", samples, n)
    return family


def _sorted_grid(
    projections: Sequence[tuple[float, WalkState]],
) -> list[WalkState]:
    """Validate uniform spacing 2*pi/M and return the states in grid order."""
    if not projections:
        raise InvalidParameter("empty projection family")
    ordered = sorted(projections, key=lambda pair: pair[0])
    m = len(ordered)
    step = 2.0 * math.pi / m
    for j in range(1, m):
        if abs((ordered[j][0] - ordered[0][0]) - j * step) > GRID_TOL:
            raise InconsistentGrid(
                f"sample {j} at phi={ordered[j][0]:.12g} is off the uniform "
                f"grid of spacing 2*pi/{m}"
            )
    return [state for _, state in ordered]


def _fiber_stacks(
    states: Sequence[WalkState], dim: int
) -> dict[Position, np.ndarray]:
    """For each target position, the (M, dim) DFT bins of its coin vectors.

    Entry t of a stack is (1/M) sum_j exp(-2i*pi*t*j/M) times the coin
    vector at that position in the j-th projection; the FFT keeps the
    reduction order fixed and numerically stable.
    """
    m = len(states)
    fibers: set[Position] = set()
    for st in states:
        fibers.update(st.support)
    zero = np.zeros(dim, dtype=np.complex128)
    bins: dict[Position, np.ndarray] = {}
    for pos in fibers:
        stack = np.array([st.support.get(pos, zero) for st in states])
        bins[pos] = np.fft.fft(stack, axis=0) / m
    return bins


def reconstruct(
    projections: Sequence[tuple[float, WalkState]],
    pmap: ProjectionMap,
    bounds: tuple[int, int],
) -> WalkState:
    """Invert a projection family over a global sigma window.

    ``bounds`` is the inclusive window of sigma values to recover; every
    (r, s) with s in the window maps back to the unique source position
    with rho = r and sigma = s.  The window must fit into the grid
    (GridTooCoarse when M < window width), and the family's phases must be
    uniform with spacing 2*pi/M (InconsistentGrid otherwise).  Exactness
    additionally requires the source support's sigma values to lie inside
    the window; use :func:`reconstruct_support` when they do not.
    """
    if pmap.invert_rs is None:
        raise InvalidParameter(
            f"projection {pmap.name!r} does not invert (rho, sigma) coordinates"
        )
    sigma_min, sigma_max = int(bounds[0]), int(bounds[1])
    width = sigma_max - sigma_min + 1
    if width < 1:
        raise InvalidParameter(f"empty sigma window {bounds}")
    m = len(projections)
    if m < width:
        raise GridTooCoarse(f"{m} samples cannot resolve a sigma span of {width}")
    states = _sorted_grid(projections)
    bins = _fiber_stacks(states, pmap.source.coin_dimension)
    support: dict[Position, np.ndarray] = {}
    for r_pos, stack in bins.items():
        r = r_pos[0]
        for s in range(sigma_min, sigma_max + 1):
            vec = stack[s % m]
            if np.any(vec):
                support[pmap.invert_rs(r, s)] = vec
    return WalkState(pmap.source, support)


def reconstruct_support(
    projections: Sequence[tuple[float, WalkState]],
    pmap: ProjectionMap,
    candidates: Iterable[Position],
) -> WalkState:
    """Invert a projection family onto a candidate source region.

    Recovers the amplitude at every candidate position from the DFT bin of
    its fiber at sigma mod M.  This is exact as long as no two candidates of
    one fiber share a bin, which is checked directly (GridTooCoarse names
    the colliding pair); the grid can therefore be much smaller than the
    global sigma span whenever sigma varies little within each fiber.
    """
    if pmap.sigma is None:
        raise MissingSigma(f"projection {pmap.name!r} has no sigma homomorphism")
    m = len(projections)
    cand = sorted(set(tuple(p) for p in candidates))
    taken: dict[tuple[Position, int], Position] = {}
    for pos in cand:
        key = (pmap.rho(pos), pmap.sigma(pos) % m)
        if key in taken:
            raise GridTooCoarse(
                f"candidates {taken[key]} and {pos} share fiber {key[0]} "
                f"and sigma bin {key[1]} of {m}"
            )
        taken[key] = pos
    states = _sorted_grid(projections)
    bins = _fiber_stacks(states, pmap.source.coin_dimension)
    support: dict[Position, np.ndarray] = {}
    for pos in cand:
        stack = bins.get(pmap.rho(pos))
        if stack is None:
            continue
        vec = stack[pmap.sigma(pos) % m]
        if np.any(vec):
            support[pos] = vec
    return WalkState(pmap.source, support)
