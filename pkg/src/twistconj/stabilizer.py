"""Stabilizers of (twisted) conjugacy classes by deleting affine-diagram nodes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import rational as qa
from .alcove import Alcove, AlcovePoint, build_alcove, face_of
from .folding import FoldedSystem
from .rootsys import SimpleType, connected_components, identify, is_finite_type

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class SubDiagram:
    kept: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class StabilizerDescriptor:
    kept: tuple[int, ...]
    components: tuple[SimpleType, ...]
    torus_rank: int
    pi1_free_rank: int
    pi1_torsion: tuple[int, ...]
    central_quotient: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return self.torus_rank + sum(t.dimension for t in self.components)

    @property
    def label(self) -> str:
        return label(self)


def kept_nodes(point: AlcovePoint) -> tuple[int, ...]:
    """Nodes kept at an alcove point: exactly its tight walls.

    At a vertex a non-tight ``alpha_i`` may still take an integer value (for
    C2 at the central element it equals 1), but that root is then already in
    the span of the kept ones, so nodes are selected by tightness.
    """
    return tuple(sorted(point.tight))


def _checked(fs: FoldedSystem, h, alcove: Alcove | None):
    alcove = alcove or build_alcove(fs)
    return face_of(alcove, h)


def stabilizer_diagram(fs: FoldedSystem, h: Sequence, alcove: Alcove | None = None) -> SubDiagram:
    point = _checked(fs, h, alcove)
    kept = kept_nodes(point)
    a = fs.affine_cartan
    return SubDiagram(kept, tuple(tuple(a[i][j] for j in kept) for i in kept))


def recognize_components(sub: SubDiagram) -> list[SimpleType]:
    if not sub.kept:
        return []
    if not is_finite_type(sub.matrix):
        raise ValueError("sub-diagram is not of finite type")
    out = []
    for comp in connected_components(sub.matrix):
        out.append(identify([[sub.matrix[i][j] for j in comp] for i in comp]))
    return sorted(out, key=lambda t: (-t.rank, t.family))


def kept_coroots(fs: FoldedSystem, kept: Sequence[int]) -> list[list[Fraction]]:
    return [fs.coroot(fs.node_covectors[k]) for k in kept]


def pi1_and_quotient(fs: FoldedSystem, h: Sequence, alcove: Alcove | None = None):
    """``(free rank, torsion, central quotient)`` of the stabilizer at ``h``.

    ``pi_1 = Z^l / Q_H`` with ``Q_H`` spanned by the coroots of the kept nodes.
    The central quotient is ``Z^l / (Q_H + (Z^l ∩ Q_H^perp))``, the finite group
    dividing (semisimple cover) x (central torus).
    """
    point = _checked(fs, h, alcove)
    return _lattice_data(fs, kept_nodes(point))


def _lattice_data(fs: FoldedSystem, kept):
    l = fs.dim
    unit = qa.identity(l)
    cor = kept_coroots(fs, kept)
    free, torsion = qa.quotient_invariants(unit, cor)
    pairing = [qa.matvec(fs.gram, c) for c in cor]
    perp = qa.integer_kernel(pairing, l) if cor else unit
    fr, central = qa.quotient_invariants(unit, cor + perp)
    assert fr == 0
    return free, tuple(torsion), tuple(central)


def describe(fs: FoldedSystem, h: Sequence, alcove: Alcove | None = None) -> StabilizerDescriptor:
    sub = stabilizer_diagram(fs, h, alcove)
    comps = recognize_components(sub)
    free, torsion, central = _lattice_data(fs, sub.kept)
    torus = fs.dim - sum(t.rank for t in comps)
    return StabilizerDescriptor(sub.kept, tuple(comps), torus, free, torsion, central)


def weight_dimension(fs: FoldedSystem, h: Sequence) -> int:
    """Stabilizer dimension counted directly from the eigenspace weights.

    ``dim h^tau`` plus the number of ``(lambda, k)``, with multiplicity, such
    that ``lambda(h) + k/r`` is an integer.
    """
    h = [qa.frac(x) for x in h]
    total = fs.dim
    for k in range(fs.r):
        for lam, mult in fs.gk_weights(k).items():
            if any(lam) and qa.is_integer(qa.dot(lam, h) + Fraction(k, fs.r)):
                total += mult
    return total


def cover_name(t: SimpleType) -> str:
    n = t.rank
    if t.family == "A":
        name = f"SU{n + 1}"
    elif t.family == "B":
        name = "Sp4" if n == 2 else f"Spin{2 * n + 1}"
    elif t.family == "C":
        name = f"Sp{2 * n}"
    elif t.family == "D":
        name = f"Spin{2 * n}"
    else:
        name = f"{t.family}{n}"
    return name.translate(_SUB)


def label(desc: StabilizerDescriptor) -> str:
    parts = [cover_name(t) for t in desc.components] + ["U₁"] * desc.torus_rank
    body = "×".join(parts)
    if not desc.central_quotient:
        return body
    group = "×".join(f"ℤ{str(f).translate(_SUB)}" for f in desc.central_quotient)
    return f"({body})/{group}" if len(parts) > 1 else f"{body}/{group}"
