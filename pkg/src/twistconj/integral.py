"""Integral (twisted) conjugacy classes at level ``a``.

The conditions are ``a * 2/(lam,lam) * (lam(H) + k/r) ∈ Z`` for every nonzero
weight ``lam`` of every eigenspace ``g_k``: integrality against all affine
coroots.  Their solutions in ``h^tau`` form a lattice coset, which is cut by
the alcove.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from . import rational as qa
from .alcove import Alcove, AlcovePoint, build_alcove, face_of, reduce_to_alcove
from .folding import FoldedSystem

_LP_MARGIN = 1e-7


@dataclass(frozen=True)
class CongruenceSystem:
    """Conditions ``a * (mu(H) + o) ∈ Z``, one per ``(mu, o)``."""

    conditions: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    def holds(self, h: Sequence, a) -> bool:
        return all(qa.is_integer(a * (qa.dot(mu, h) + o)) for mu, o in self.conditions)


@dataclass(frozen=True)
class IntegralClass:
    point: AlcovePoint
    level: int
    labels: tuple[int, ...]


@lru_cache(maxsize=None)
def congruence_system(fs: FoldedSystem) -> CongruenceSystem:
    conds = set()
    for k in range(fs.r):
        for lam in fs.gk_weights(k):
            if not any(lam):
                continue
            s = 2 / fs.cov_form(lam, lam)
            conds.add((tuple(s * x for x in lam), s * Fraction(k, fs.r)))
    return CongruenceSystem(tuple(sorted(conds)))


def _check_level(a) -> bool:
    """False for non-integral levels; raises for zero."""
    if a == 0:
        raise ValueError("level must lie in Z \\ {0}; a = 0 is excluded")
    return qa.is_integer(Fraction(a))


def is_integral(fs: FoldedSystem, h: Sequence, a, alcove: Alcove | None = None) -> bool:
    if not _check_level(a):
        return False
    point = face_of(alcove or build_alcove(fs), h)
    return congruence_system(fs).holds(point.coords, Fraction(a))


def _solution_coset(fs: FoldedSystem, a: int):
    """Return ``(c0, basis)`` with solutions ``c0 + Z-span(basis)``, or ``None``."""
    cs = congruence_system(fs)
    rows = [[a * x for x in mu] for mu, _ in cs.conditions]
    offs = [a * o for _, o in cs.conditions]
    d = qa.denominator_lcm(x for r in rows for x in r)
    n = [[int(x * d) for x in r] for r in rows]
    u, dm, v = qa.smith_normal_form(n)
    l = fs.dim
    uo = qa.matvec(u, offs)
    diag = [dm[i][i] for i in range(l)]
    if any(x == 0 for x in diag):
        raise AssertionError("integrality conditions do not have full rank")
    if any(not qa.is_integer(t) for t in uo[l:]):
        return None
    y0 = [Fraction(d, diag[i]) * (-uo[i]) for i in range(l)]
    c0 = qa.matvec(v, y0)
    basis = [[v[r][i] * Fraction(d, diag[i]) for r in range(l)] for i in range(l)]
    return c0, qa.lattice_basis(basis)


def _enumerate_coset(alcove: Alcove, c0, basis) -> list[tuple[Fraction, ...]]:
    """Exact lattice-coset points in the alcove; LP bounds all but the last coordinate, which is bounded exactly."""
    l = len(basis)
    # wall w in lattice coordinates n:  g . n <= b
    a_ub, b_ub = [], []
    for w in alcove.walls:
        g = [qa.dot(w.covector, b) for b in basis]
        base = qa.dot(w.covector, c0)
        if w.upper:
            a_ub.append(g)
            b_ub.append(w.bound - base)
        else:
            a_ub.append([-x for x in g])
            b_ub.append(base - w.bound)
    a_f = np.array(a_ub, dtype=float)
    b_f = np.array(b_ub, dtype=float)
    found = []

    def bound(fixed: list[int], k: int):
        fixed_part = a_f[:, :k] @ np.array(fixed, dtype=float) if k else 0.0
        sub_a, sub_b = a_f[:, k:], b_f - fixed_part
        lims = []
        for sign in (1.0, -1.0):
            cost = np.zeros(l - k)
            cost[0] = sign
            res = linprog(cost, A_ub=sub_a, b_ub=sub_b, bounds=[(None, None)] * (l - k), method="highs")
            if res.status == 2:
                return None
            if res.status != 0:
                raise RuntimeError(f"bounding LP failed: {res.message}")
            lims.append(sign * res.fun)
        return ceil(lims[0] - _LP_MARGIN), floor(lims[1] + _LP_MARGIN)

    def last_exact(fixed: list[int]):
        lo, hi = None, None
        for g, b in zip(a_ub, b_ub):
            rest = b - sum((x * y for x, y in zip(g, fixed)), Fraction(0))
            if g[-1] > 0:
                hi = floor(rest / g[-1]) if hi is None else min(hi, floor(rest / g[-1]))
            elif g[-1] < 0:
                lo = ceil(rest / g[-1]) if lo is None else max(lo, ceil(rest / g[-1]))
            elif rest < 0:
                return None
        return lo, hi

    def rec(fixed: list[int]):
        k = len(fixed)
        if k == l:
            p = [c0[j] + sum((fixed[i] * basis[i][j] for i in range(l)), Fraction(0)) for j in range(l)]
            if alcove.contains(p):
                found.append(tuple(p))
            return
        lim = last_exact(fixed) if k == l - 1 else bound(fixed, k)
        if lim is None:
            return
        for t in range(lim[0], lim[1] + 1):
            rec(fixed + [t])

    rec([])
    return found


def enumerate_integral(fs: FoldedSystem, a: int) -> list[IntegralClass]:
    """All level-``a`` integral alcove points, sorted by coordinates."""
    if not isinstance(a, int) or a <= 0:
        raise ValueError("enumeration needs a positive integer level (a ∈ Z \\ {0}, negatives via H -> -H)")
    alcove = build_alcove(fs)
    coset = _solution_coset(fs, a)
    if coset is None:
        return []
    pts = sorted(_enumerate_coset(alcove, *coset))
    return [IntegralClass(face_of(alcove, p), a, weight_labels(fs, p, a, alcove)) for p in pts]


def weight_labels(fs: FoldedSystem, h: Sequence, a: int, alcove: Alcove | None = None) -> tuple[int, ...]:
    """Affine Dynkin labels ``(m_0, ..., m_l)`` of an integral point."""
    alcove = alcove or build_alcove(fs)
    if not is_integral(fs, h, a, alcove):
        raise ValueError("point is not integral at this level")
    h = [qa.frac(x) for x in h]
    c = fs.comarks
    m = [a * 2 / fs.cov_form(lam, lam) * qa.dot(lam, h) for lam in fs.restricted_simple]
    m0 = (a - sum((ci * mi for ci, mi in zip(c[1:], m)), Fraction(0))) / c[0]
    th = fs.theta_tau
    direct = a * 2 / fs.cov_form(th, th) * (Fraction(1, fs.r) - qa.dot(th, h))
    if m0 != direct:
        raise AssertionError("comark relation disagrees with the affine wall value")
    labels = [m0] + m
    if not all(qa.is_integer(x) and x >= 0 for x in labels):
        raise AssertionError(f"non-integral labels {labels}")
    return tuple(int(x) for x in labels)


def comark_count(comarks: Sequence[int], a: int) -> int:
    """Number of ``m >= 0`` with ``sum c_i m_i = a``."""
    ways = [1] + [0] * a
    for c in comarks:
        for t in range(c, a + 1):
            ways[t] += ways[t - c]
    return ways[a]


def rho_and_dual_coxeter(fs: FoldedSystem):
    """``(rho_tau, h^vee)``: the form-identified projected Weyl vector and the comark sum."""
    l = fs.dim
    total = [Fraction(0)] * l
    for beta in fs.base.positive_roots:
        total = [x + y for x, y in zip(total, fs.restrict(beta))]
    rho_cov = [x / 2 for x in total]
    return tuple(fs.to_vector(rho_cov)), sum(fs.comarks)


def orbit_shift(fs: FoldedSystem, h: Sequence, a: int):
    """``((a H + rho_tau)/(a + h^vee)`` reduced to the alcove, ``a + h^vee)``."""
    if a == 0:
        raise ValueError("level must be nonzero")
    rho, hv = rho_and_dual_coxeter(fs)
    b = a + hv
    if b == 0:
        raise ValueError("shifted level a + h^vee vanishes")
    p = [(a * qa.frac(x) + y) / b for x, y in zip(h, rho)]
    point, _ = reduce_to_alcove(fs, p)
    return point, b


def orbit_unshift(fs: FoldedSystem, h_shifted: Sequence, a: int) -> tuple[Fraction, ...]:
    """Inverse of :func:`orbit_shift` for an unreduced shifted point and original level ``a``."""
    rho, hv = rho_and_dual_coxeter(fs)
    return tuple(((a + hv) * qa.frac(x) - y) / a for x, y in zip(h_shifted, rho))
