"""The fundamental alcove of ``W^tau ⋉ pi(Q^vee)`` acting on ``h^tau``.

Walls are indexed by the nodes of the twisted affine diagram: node 0 is the
affine wall ``theta_tau(h) <= 1/r`` and node ``i >= 1`` is ``alpha_i(h) >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import floor, gcd
from typing import Sequence

from . import rational as qa
from .folding import FoldedSystem

STEP_GUARD = 10_000


class OutsideAlcove(ValueError):
    """The point is a valid vector but does not lie in the closed alcove."""


@dataclass(frozen=True)
class Wall:
    node: int
    covector: tuple[Fraction, ...]
    bound: Fraction
    upper: bool

    def slack(self, p: Sequence) -> Fraction:
        """Nonnegative exactly on the alcove side; zero on the wall."""
        v = qa.dot(self.covector, p)
        return self.bound - v if self.upper else v - self.bound


@dataclass(frozen=True)
class AlcovePoint:
    coords: tuple[Fraction, ...]
    tight: frozenset[int]


@dataclass(frozen=True)
class Face:
    tight: frozenset[int]
    vertices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class Alcove:
    fs: FoldedSystem

    @cached_property
    def walls(self) -> tuple[Wall, ...]:
        fs = self.fs
        zero = Fraction(0)
        out = [Wall(0, tuple(fs.theta_tau), Fraction(1, fs.r), True)]
        out += [Wall(i + 1, tuple(lam), zero, False) for i, lam in enumerate(fs.restricted_simple)]
        return tuple(out)

    @property
    def dim(self) -> int:
        return self.fs.dim

    @cached_property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """Vertex ``j`` is the point where every wall except wall ``j`` is tight."""
        out = []
        for j in range(self.dim + 1):
            rows = [list(w.covector) for w in self.walls if w.node != j]
            rhs = [w.bound for w in self.walls if w.node != j]
            out.append(tuple(qa.solve(rows, rhs)))
        return tuple(out)

    @cached_property
    def barycenter(self) -> tuple[Fraction, ...]:
        k = len(self.vertices)
        return tuple(sum(c, Fraction(0)) / k for c in zip(*self.vertices))

    def contains(self, p: Sequence) -> bool:
        return all(w.slack(p) >= 0 for w in self.walls)


def build_alcove(fs: FoldedSystem) -> Alcove:
    return Alcove(fs)


def _as_point(alcove: Alcove, p: Sequence) -> tuple[Fraction, ...]:
    if len(p) != alcove.dim:
        raise ValueError(f"expected {alcove.dim} coordinates, got {len(p)}")
    return tuple(qa.frac(x) for x in p)


def face_of(alcove: Alcove, p: Sequence) -> AlcovePoint:
    pt = _as_point(alcove, p)
    slacks = [w.slack(pt) for w in alcove.walls]
    if any(s < 0 for s in slacks):
        raise OutsideAlcove(f"point {[str(x) for x in pt]} lies outside the closed alcove")
    return AlcovePoint(pt, frozenset(w.node for w, s in zip(alcove.walls, slacks) if s == 0))


def vertices_and_faces(alcove: Alcove) -> list[Face]:
    """All faces of the simplex, lowest dimension first.

    The face with tight set ``S`` is the convex hull of the vertices not in
    ``S``; the interior has ``S`` empty.
    """
    nodes = [w.node for w in alcove.walls]
    faces = []
    for k in range(len(nodes) - 1, -1, -1):
        for s in combinations(nodes, k):
            faces.append(Face(frozenset(s), tuple(j for j in nodes if j not in s)))
    return faces


def face_point(alcove: Alcove, face: Face) -> tuple[Fraction, ...]:
    """Barycenter of a face (a point with exactly the face's tight set)."""
    vs = [alcove.vertices[j] for j in face.vertices]
    return tuple(sum(c, Fraction(0)) / len(vs) for c in zip(*vs))


# --- the affine action ---------------------------------------------------------

def reflect(fs: FoldedSystem, node: int, p: Sequence) -> list[Fraction]:
    """Reflection in the wall of ``node`` (node 0: the affine wall)."""
    if node == 0:
        lam, level = fs.theta_tau, Fraction(1, fs.r)
    else:
        lam, level = fs.restricted_simple[node - 1], Fraction(0)
    co = fs.coroot(lam)
    t = qa.dot(lam, p) - level
    return [x - t * c for x, c in zip(p, co)]


def translate(p: Sequence, v: Sequence) -> list[Fraction]:
    return [Fraction(x) + y for x, y in zip(p, v)]


def apply_witness(fs: FoldedSystem, p: Sequence, witness) -> list[Fraction]:
    out = [qa.frac(x) for x in p]
    for kind, arg in witness:
        if kind == "reflect":
            out = reflect(fs, arg, out)
        elif kind == "translate":
            out = translate(out, arg)
        else:
            raise ValueError(f"unknown witness step {kind!r}")
    return out


def reduce_to_alcove(fs: FoldedSystem, h: Sequence, alcove: Alcove | None = None):
    """Move ``h`` into the closed alcove.

    Returns ``(AlcovePoint, witness)``; the witness is a list of
    ``("translate", vector)`` and ``("reflect", node)`` steps which, applied in
    order to ``h``, give the point.
    """
    alcove = alcove or build_alcove(fs)
    p = list(_as_point(alcove, h))
    witness = []
    if not alcove.contains(p):
        basis = fs.proj_lattice
        coords = qa.coordinates_in(basis, p)
        shift = [-floor(c) for c in coords]
        if any(shift):
            vec = [sum((s * b[k] for s, b in zip(shift, basis)), Fraction(0)) for k in range(fs.dim)]
            p = translate(p, vec)
            witness.append(("translate", tuple(vec)))
    for _ in range(STEP_GUARD):
        bad = next((w for w in alcove.walls if w.slack(p) < 0), None)
        if bad is None:
            return face_of(alcove, p), witness
        p = reflect(fs, bad.node, p)
        witness.append(("reflect", bad.node))
    raise RuntimeError("alcove reduction did not terminate")


# --- SU(n) diagonal chart -------------------------------------------------------

def _require_type_a(fs: FoldedSystem) -> int:
    t = fs.base.type
    if t is None or t.family != "A":
        raise ValueError("the diagonal chart exists only for type A")
    return t.rank + 1


def chart_dim(fs: FoldedSystem) -> int:
    n = _require_type_a(fs)
    return n if fs.r == 1 else n // 2


def su_chart(fs: FoldedSystem, p: Sequence) -> tuple[Fraction, ...]:
    """``h^tau`` coordinates to ``(x_1, ...)`` with ``H = diag(x_1, ..., x_n)``.

    Untwisted: all ``n`` entries (summing to zero).  Twisted: the first
    ``n // 2`` entries, the rest being fixed by ``x_i = -x_{n+1-i}``.
    """
    n = _require_type_a(fs)
    v = [Fraction(0)] + fs.embed([qa.frac(x) for x in p]) + [Fraction(0)]
    x = tuple(v[i + 1] - v[i] for i in range(n))
    return x if fs.r == 1 else x[: n // 2]


def _chart_to_full(fs: FoldedSystem, x: list[Fraction]) -> list[Fraction]:
    n = fs.base.rank + 1
    if fs.r == 1:
        return x
    return x + ([Fraction(0)] if n % 2 else []) + [-t for t in reversed(x)]


def _prefix(x: list[Fraction]) -> list[Fraction]:
    v, acc = [], Fraction(0)
    for t in x[:-1]:
        acc += t
        v.append(acc)
    return v


def su_unchart(fs: FoldedSystem, x: Sequence) -> tuple[Fraction, ...]:
    n = _require_type_a(fs)
    x = [qa.frac(t) for t in x]
    if fs.r == 1:
        if len(x) == n - 1:
            x = x + [-sum(x, Fraction(0))]
        if len(x) != n or sum(x) != 0:
            raise ValueError(f"expected {n} entries summing to zero")
    elif len(x) != n // 2:
        raise ValueError(f"expected {n // 2} chart coordinates")
    v = _prefix(_chart_to_full(fs, x))
    c = [v[orb[0]] for orb in fs.orbits]
    if fs.embed(c) != v:
        raise ValueError("chart point is not tau-invariant")
    return tuple(c)


def chart_walls(alcove: Alcove) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Walls as ``(coefficients, bound)`` meaning ``coefficients . x >= bound`` in chart coordinates.

    Coefficients are scaled to primitive integers.  In the untwisted chart the
    last coefficient is zero (forms are taken modulo ``sum x_i``).
    """
    fs = alcove.fs
    k = chart_dim(fs)
    cols = []
    for j in range(k):
        e = [Fraction(int(i == j)) for i in range(k)]
        v = _prefix(_chart_to_full(fs, e))
        cols.append([v[orb[0]] for orb in fs.orbits])
    out = []
    for w in alcove.walls:
        coeffs = [qa.dot(w.covector, col) for col in cols]
        out.append(normalize_inequality(coeffs, w.bound, upper=w.upper))
    return out


def normalize_inequality(coeffs: Sequence, bound, upper: bool = False, untwisted: bool = False):
    """Canonical form of ``coeffs . x >= bound`` (or ``<=`` when ``upper``)."""
    coeffs = [qa.frac(c) for c in coeffs]
    bound = qa.frac(bound)
    if untwisted:
        last = coeffs[-1]
        coeffs = [c - last for c in coeffs]
    if upper:
        coeffs, bound = [-c for c in coeffs], -bound
    d = qa.denominator_lcm(coeffs + [bound])
    ints = [int(c * d) for c in coeffs]
    g = 0
    for t in ints:
        g = gcd(g, t)
    return tuple(Fraction(t, g) for t in ints), bound * d / g
