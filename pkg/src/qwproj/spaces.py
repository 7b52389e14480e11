"""Position sets, displacement families, and quotient projection maps.

A walking space is an (at most countable) set of positions together with an
ordered family of injective displacements acting on it.  All spaces used here
are realized on tuples of Python integers, so coordinate arithmetic is exact
and unbounded.  Quotient constructors return :class:`ProjectionMap` objects
bundling the surjection ``rho``, the optional additive weight ``sigma``, the
induced displacement family on the quotient, and the bookkeeping needed to
invert the ``(rho, sigma)`` coordinate pair where that is possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import (
    InvalidModulus,
    InvalidParameter,
    InvalidPosition,
    NotCoprime,
    UnknownDisplacement,
)

Position = tuple[int, ...]


@dataclass(frozen=True)
class Displacement:
    """One coin direction: an injective map on the position set.

    ``apply`` moves a position forward, ``unapply`` is the inverse on the
    image (total for all catalog spaces, whose displacements are bijections).
    ``delta`` is set for pure integer translations and ``apply_array`` is a
    vectorized form acting on an ``(n, dim)`` int64 coordinate array.
    """

    label: str
    apply: Callable[[Position], Position]
    unapply: Callable[[Position], Position]
    delta: tuple[int, ...] | None = None
    apply_array: Callable[[np.ndarray], np.ndarray] | None = None


@dataclass(frozen=True)
class PositionSpace:
    """A named position set with its ordered displacement family.

    ``signature`` is a structural identity: two space instances with equal
    signatures are interchangeable (states may be compared across them).
    ``positions`` enumerates the space when it is finite, else ``None``.
    """

    name: str
    dimension: int
    displacements: tuple[Displacement, ...]
    contains: Callable[[Position], bool]
    signature: tuple
    positions: tuple[Position, ...] | None = None

    def __post_init__(self) -> None:
        labels = [d.label for d in self.displacements]
        if len(set(labels)) != len(labels):
            raise InvalidParameter(f"duplicate displacement labels: {labels}")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(d.label for d in self.displacements)

    @property
    def coin_dimension(self) -> int:
        return len(self.displacements)

    def displacement(self, label: str) -> Displacement:
        for d in self.displacements:
            if d.label == label:
                return d
        raise UnknownDisplacement(f"space {self.name!r} has no displacement {label!r}")


@dataclass(frozen=True)
class BezoutPair:
    """Integers with u*k + v*l = 1 for the coprime pair they were built from."""

    u: int
    v: int


@dataclass(frozen=True)
class ProjectionMap:
    """A surjection of walking spaces consistent with every displacement.

    ``rho`` maps source positions onto target positions; its fibers are the
    equivalence classes that get summed by the projection operator.  When the
    source carries a group structure, ``sigma`` is an additive integer weight
    (``sigma(x . c) = sigma(x) + sigma_c[c]``) enabling phase-decorated
    projections, and ``section`` picks one representative per fiber.
    ``invert_rs`` recovers the unique source position from the value pair
    ``(rho, sigma)`` for maps where that pair is a bijective coordinate
    change (the planar lattice quotients).

    The target space carries the induced displacement family under the same
    labels as the source, so projected states keep their coin dimension.
    """

    source: PositionSpace
    target: PositionSpace
    rho: Callable[[Position], Position]
    sigma: Callable[[Position], int] | None = None
    sigma_c: Mapping[str, int] | None = None
    section: Callable[[Position], Position] | None = None
    invert_rs: Callable[[int, int], Position] | None = None
    name: str = ""
    bezout: BezoutPair | None = None

    def induced(self, label: str) -> Displacement:
        """The displacement induced on the target for a source label."""
        return self.target.displacement(label)


@dataclass(frozen=True)
class ConsistencyReport:
    """Result of a windowed consistency check of rho against the displacements."""

    passed: bool
    positions: int
    pairs: int
    counterexample: tuple | None = None  # (x, y, label, direction)


def _translation(label: str, delta: tuple[int, ...]) -> Displacement:
    d = tuple(int(v) for v in delta)
    arr = np.asarray(d, dtype=np.int64)
    return Displacement(
        label=label,
        apply=lambda p, _d=d: tuple(a + b for a, b in zip(p, _d)),
        unapply=lambda p, _d=d: tuple(a - b for a, b in zip(p, _d)),
        delta=d,
        apply_array=lambda c, _a=arr: c + _a,
    )


def _modular(label: str, delta: int, n: int) -> Displacement:
    return Displacement(
        label=label,
        apply=lambda p: ((p[0] + delta) % n,),
        unapply=lambda p: ((p[0] - delta) % n,),
        delta=(delta,),
        apply_array=lambda c: (c + delta) % n,
    )


def _int_tuple_predicate(dim: int) -> Callable[[Position], bool]:
    def contains(p: Position) -> bool:
        return len(p) == dim and all(isinstance(c, (int, np.integer)) for c in p)

    return contains


def lattice_2d() -> PositionSpace:
    """The planar integer lattice with unit steps right, left, up, down."""
    disp = (
        _translation("R", (1, 0)),
        _translation("L", (-1, 0)),
        _translation("U", (0, 1)),
        _translation("D", (0, -1)),
    )
    return PositionSpace("z2", 2, disp, _int_tuple_predicate(2), signature=("z2",))


def line(jumps: Iterable[tuple[str, int]] = (("R", 1), ("L", -1))) -> PositionSpace:
    """The integer line; ``jumps`` gives the (label, step) displacement family."""
    jumps = tuple((str(lbl), int(d)) for lbl, d in jumps)
    disp = tuple(_translation(lbl, (d,)) for lbl, d in jumps)
    return PositionSpace("z1", 1, disp, _int_tuple_predicate(1), signature=("z1", jumps))


def circle(n: int, jumps: Iterable[tuple[str, int]] = (("R", 1), ("L", -1))) -> PositionSpace:
    """A cycle of ``n`` vertices with modular steps; positions are 0..n-1."""
    if n < 1:
        raise InvalidModulus(f"circle size must be >= 1, got {n}")
    jumps = tuple((str(lbl), int(d)) for lbl, d in jumps)
    disp = tuple(_modular(lbl, d, n) for lbl, d in jumps)

    def contains(p: Position) -> bool:
        return (
            len(p) == 1
            and isinstance(p[0], (int, np.integer))
            and 0 <= p[0] < n
        )

    return PositionSpace(
        f"circle{n}",
        1,
        disp,
        contains,
        signature=("circle", n, jumps),
        positions=tuple((m,) for m in range(n)),
    )


def _llattice_a() -> Displacement:
    # a raises x+y by one everywhere: +x at even parity, +y at odd parity.
    def apply(p: Position) -> Position:
        x, y = p
        return (x + 1, y) if (x + y) % 2 == 0 else (x, y + 1)

    def unapply(p: Position) -> Position:
        x, y = p
        return (x - 1, y) if (x + y) % 2 == 1 else (x, y - 1)

    def apply_array(c: np.ndarray) -> np.ndarray:
        out = c.copy()
        even = (c[:, 0] + c[:, 1]) % 2 == 0
        out[even, 0] += 1
        out[~even, 1] += 1
        return out

    return Displacement("a", apply, unapply, None, apply_array)


def _llattice_b() -> Displacement:
    # b lowers x+y by one everywhere: -x at even parity, -y at odd parity.
    def apply(p: Position) -> Position:
        x, y = p
        return (x - 1, y) if (x + y) % 2 == 0 else (x, y - 1)

    def unapply(p: Position) -> Position:
        x, y = p
        return (x + 1, y) if (x + y) % 2 == 1 else (x, y + 1)

    def apply_array(c: np.ndarray) -> np.ndarray:
        out = c.copy()
        even = (c[:, 0] + c[:, 1]) % 2 == 0
        out[even, 0] -= 1
        out[~even, 1] -= 1
        return out

    return Displacement("b", apply, unapply, None, apply_array)


def llattice() -> PositionSpace:
    """The alternating planar lattice with two diagonal-monotone displacements.

    Vertices are all integer pairs.  At a vertex of even coordinate parity
    (x+y even) the displacement ``a`` steps in +x and ``b`` in -x; at odd
    parity ``a`` steps in +y and ``b`` in -y.  Horizontal and vertical edge
    pairs therefore alternate in a checkerboard pattern, and the diagonal
    coordinate x+y increases by one under ``a`` and decreases by one under
    ``b`` at every vertex, which is what the diagonal quotient relies on.

    Note that this concrete embedding realizes the walking graph rather than
    a faithful group Cayley graph: a^2 shifts by (1, 1) while b^2 shifts by
    (-1, -1), so a^2 and b^2 are distinct lattice translations even though
    both advance the diagonal coordinate by the same amount.  No result
    computed here depends on identifying them.
    """
    return PositionSpace(
        "llattice",
        2,
        (_llattice_a(), _llattice_b()),
        _int_tuple_predicate(2),
        signature=("llattice",),
    )


def displacement_apply(space: PositionSpace, x: Position, label: str) -> Position:
    """Apply the displacement named ``label`` to position ``x``.

    Raises InvalidPosition if ``x`` is not in the space and
    UnknownDisplacement if the label is not declared.
    """
    x = tuple(x)
    if not space.contains(x):
        raise InvalidPosition(f"{x} is not a position of space {space.name!r}")
    return space.displacement(label).apply(x)


def bezout(k: int, l: int) -> BezoutPair:
    """Return integers (u, v) with u*k + v*l = 1, canonicalized.

    Among all solutions, |u| is minimized; a tie (possible only when |l| is
    even) is broken toward the smaller, i.e. negative, u.  When l = 0 the
    solution is (k, 0) since k must be +-1.

    Raises NotCoprime unless gcd(k, l) == 1.
    """
    k, l = int(k), int(l)
    if math.gcd(k, l) != 1:
        raise NotCoprime(f"gcd({k}, {l}) != 1")
    if l == 0:
        return BezoutPair(k, 0)  # u = 1/k with k in {1, -1}
    big_l = abs(l)
    u = pow(k, -1, big_l) if big_l > 1 else 0
    if 2 * u >= big_l:
        u -= big_l
    v = (1 - u * k) // l
    return BezoutPair(u, v)


def lattice_quotient(k: int, l: int) -> ProjectionMap:
    """Quotient of the planar lattice by the direction (-l, k).

    Positions (x, y) map to the single integer k*x + l*y; the four unit
    displacements induce line steps +k, -k, +l, -l under the same labels.
    The attached weight is sigma(x, y) = u*y - v*x with (u, v) the canonical
    Bezout pair, making (rho, sigma) a unimodular coordinate change whose
    inverse is (x, y) = (u*r - l*s, v*r + k*s).
    """
    pair = bezout(k, l)
    u, v = pair.u, pair.v
    source = lattice_2d()
    target = line(jumps=(("R", k), ("L", -k), ("U", l), ("D", -l)))
    return ProjectionMap(
        source=source,
        target=target,
        rho=lambda p: (k * p[0] + l * p[1],),
        sigma=lambda p: u * p[1] - v * p[0],
        sigma_c={"R": -v, "L": v, "U": u, "D": -u},
        section=lambda q: (u * q[0], v * q[0]),
        invert_rs=lambda r, s: (u * r - l * s, v * r + k * s),
        name=f"lattice(k={k},l={l})",
        bezout=pair,
    )


def cyclic_quotient(n: int, source: PositionSpace | None = None) -> ProjectionMap:
    """Fold an integer line onto a cycle of ``n`` vertices via x mod n.

    ``source`` defaults to the standard two-displacement line; any line
    space whose displacements are pure translations is accepted, so folded
    versions of lazy or jump walks can be formed as well.  The weight is
    sigma(x) = x, the identity injection of the line into the integers.
    """
    if n < 1:
        raise InvalidModulus(f"modulus must be >= 1, got {n}")
    src = source if source is not None else line()
    if src.dimension != 1 or any(d.delta is None for d in src.displacements):
        raise InvalidParameter("cyclic quotient needs a translation line as source")
    jumps = tuple((d.label, d.delta[0]) for d in src.displacements)
    target = circle(n, jumps=jumps)
    return ProjectionMap(
        source=src,
        target=target,
        rho=lambda p: (p[0] % n,),
        sigma=lambda p: p[0],
        sigma_c={lbl: d for lbl, d in jumps},
        section=lambda q: (q[0],),
        name=f"mod{n}",
    )


def llattice_quotient() -> ProjectionMap:
    """Collapse the alternating lattice onto the line along its diagonals.

    rho(x, y) = x + y, so the displacement ``a`` induces +1 and ``b``
    induces -1 on the line; the same value serves as sigma.
    """
    source = llattice()
    target = line(jumps=(("a", 1), ("b", -1)))
    return ProjectionMap(
        source=source,
        target=target,
        rho=lambda p: (p[0] + p[1],),
        sigma=lambda p: p[0] + p[1],
        sigma_c={"a": 1, "b": -1},
        section=lambda q: (q[0], 0),
        name="llattice-diag",
    )


def identity_projection(space: PositionSpace) -> ProjectionMap:
    """The trivial quotient of a space by itself (a relabeling)."""
    return ProjectionMap(
        source=space,
        target=space,
        rho=lambda p: p,
        sigma=lambda p: 0,
        sigma_c={lbl: 0 for lbl in space.labels},
        section=lambda q: q,
        name=f"identity({space.name})",
    )


def compose(outer: ProjectionMap, inner: ProjectionMap) -> ProjectionMap:
    """The composite quotient ``outer . inner`` applied as a single map.

    ``outer`` must be defined on the target space of ``inner`` (equal
    signatures).  Sigma, when present on the outer map, is pulled back
    through the inner rho.
    """
    if outer.source.signature != inner.target.signature:
        raise InvalidParameter("outer map is not defined on the inner map's target")
    sigma = None
    if outer.sigma is not None:
        sigma = lambda p: outer.sigma(inner.rho(p))  # noqa: E731
    section = None
    if outer.section is not None and inner.section is not None:
        section = lambda q: inner.section(outer.section(q))  # noqa: E731
    return ProjectionMap(
        source=inner.source,
        target=outer.target,
        rho=lambda p: outer.rho(inner.rho(p)),
        sigma=sigma,
        sigma_c=dict(outer.sigma_c) if outer.sigma_c is not None else None,
        section=section,
        name=f"{outer.name}.{inner.name}",
    )


def check_rho_consistency(pmap: ProjectionMap, window: Iterable[Position]) -> ConsistencyReport:
    """Check rho(x) = rho(y) <=> rho(x.c) = rho(y.c) over a finite window.

    Both implications are verified for every position pair in the window and
    every displacement of the source space; the first counterexample found
    is reported as (x, y, label, direction) where direction says which
    implication broke.  Failure is a report, never an exception.
    """
    xs = sorted(set(tuple(p) for p in window))
    n = len(xs)
    pairs = n * (n - 1) // 2
    rho_of = {x: pmap.rho(x) for x in xs}
    for disp in pmap.source.displacements:
        img = {x: pmap.rho(disp.apply(x)) for x in xs}
        # forward: equal classes must keep equal image classes
        by_class: dict[Position, Position] = {}
        rep: dict[Position, Position] = {}
        for x in xs:
            c = rho_of[x]
            if c in by_class:
                if img[x] != by_class[c]:
                    return ConsistencyReport(False, n, pairs, (rep[c], x, disp.label, "forward"))
            else:
                by_class[c] = img[x]
                rep[c] = x
        # backward: equal image classes must come from equal classes
        by_image: dict[Position, Position] = {}
        irep: dict[Position, Position] = {}
        for x in xs:
            c = img[x]
            if c in by_image:
                if rho_of[x] != by_image[c]:
                    return ConsistencyReport(False, n, pairs, (irep[c], x, disp.label, "backward"))
            else:
                by_image[c] = rho_of[x]
                irep[c] = x
    return ConsistencyReport(True, n, pairs)


def reachable_window(space: PositionSpace, start: Iterable[Position], steps: int) -> set[Position]:
    """All positions reachable from ``start`` in at most ``steps`` displacement hops."""
    seen = set(tuple(p) for p in start)
    frontier = set(seen)
    for _ in range(steps):
        nxt = {d.apply(p) for p in frontier for d in space.displacements}
        frontier = nxt - seen
        if not frontier:
            break
        seen |= frontier
    return seen


_SPACE_BUILDERS = {
    "z2": lambda cfg: lattice_2d(),
    "z1": lambda cfg: line(),
    "circle": lambda cfg: circle(int(cfg["n"])),
    "llattice": lambda cfg: llattice(),
}


def space_from_config(cfg: Mapping) -> PositionSpace:
    """Build a space from a descriptor like {"space": "circle", "n": 4}."""
    try:
        kind = cfg["space"]
    except (KeyError, TypeError):
        raise InvalidParameter(f"not a space descriptor: {cfg!r}") from None
    try:
        builder = _SPACE_BUILDERS[kind]
    except KeyError:
        raise InvalidParameter(f"unknown space kind {kind!r}") from None
    return builder(cfg)


def projection_from_config(cfg: Mapping) -> ProjectionMap:
    """Build a quotient from a descriptor like {"rho": "lattice", "k": 2, "l": 1}."""
    try:
        kind = cfg["rho"]
    except (KeyError, TypeError):
        raise InvalidParameter(f"not a projection descriptor: {cfg!r}") from None
    if kind == "lattice":
        return lattice_quotient(int(cfg["k"]), int(cfg["l"]))
    if kind == "mod":
        return cyclic_quotient(int(cfg["n"]))
    if kind == "llattice-diag":
        return llattice_quotient()
    raise InvalidParameter(f"unknown projection kind {kind!r}")
