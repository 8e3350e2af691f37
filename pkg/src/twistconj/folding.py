"""Diagram automorphisms and the folded (restricted) root data.

A point of the fixed subspace ``h^tau`` is stored by its coordinates in the
basis of orbit sums of simple coroots, so ``(Q^vee)^tau`` is exactly ``Z^l``.
A covector on ``h^tau`` is stored by its values on that basis.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import rational as qa
from .rootsys import RootSystem, identify

Covector = tuple[Fraction, ...]


@dataclass(frozen=True)
class DiagramAutomorphism:
    perm: tuple[int, ...]

    @property
    def order(self) -> int:
        k, p = 1, self.perm
        while p != tuple(range(len(p))):
            p = tuple(self.perm[i] for i in p)
            k += 1
        return k

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm)))

    def orbits(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for i in range(len(self.perm)):
            if i in seen:
                continue
            orb, j = [], i
            while j not in seen:
                seen.add(j)
                orb.append(j)
                j = self.perm[j]
            out.append(tuple(sorted(orb)))
        return out

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        return DiagramAutomorphism(tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))


def is_automorphism(rs: RootSystem, perm: Sequence[int]) -> bool:
    n = rs.rank
    if sorted(perm) != list(range(n)):
        return False
    a = rs.cartan
    return all(a[perm[i]][perm[j]] == a[i][j] for i in range(n) for j in range(n))


def diagram_automorphisms(rs: RootSystem) -> list[DiagramAutomorphism]:
    """All Cartan-preserving node permutations, identity first."""
    n = rs.rank
    a = rs.cartan
    found = []

    def extend(prefix: list[int]):
        k = len(prefix)
        if k == n:
            found.append(DiagramAutomorphism(tuple(prefix)))
            return
        for img in range(n):
            if img in prefix:
                continue
            if all(a[img][prefix[j]] == a[k][j] and a[prefix[j]][img] == a[j][k] for j in range(k)):
                extend(prefix + [img])

    extend([])
    found.sort(key=lambda t: (not t.is_identity, t.order, t.perm))
    return found


def identity_automorphism(rs: RootSystem) -> DiagramAutomorphism:
    return DiagramAutomorphism(tuple(range(rs.rank)))


def canonical_outer(rs: RootSystem, order: int = 2) -> DiagramAutomorphism:
    """The documented nontrivial automorphism of a given order.

    For ``D4`` and order 3 this is the 3-cycle sending node 1 -> 3 -> 4 -> 1;
    otherwise the unique nontrivial automorphism of that order (for ``D4``,
    order 2, the one swapping nodes 3 and 4).
    """
    cands = [t for t in diagram_automorphisms(rs) if t.order == order]
    if not cands:
        raise ValueError(f"{rs.type} has no diagram automorphism of order {order}")
    if rs.type is not None and str(rs.type) == "D4":
        pick = (2, 1, 3, 0) if order == 3 else (0, 1, 3, 2)
        return DiagramAutomorphism(pick)
    return cands[0]


@dataclass(frozen=True)
class FoldedSystem:
    """Restricted root data of ``(base, tau)``; affine node is index 0."""

    base: RootSystem
    tau: DiagramAutomorphism

    # --- fixed subspace ------------------------------------------------------

    @cached_property
    def orbits(self) -> list[tuple[int, ...]]:
        return sorted(self.tau.orbits())

    @property
    def r(self) -> int:
        return self.tau.order

    @property
    def dim(self) -> int:
        return len(self.orbits)

    @cached_property
    def _orbit_of(self) -> list[int]:
        out = [0] * self.base.rank
        for k, orb in enumerate(self.orbits):
            for i in orb:
                out[i] = k
        return out

    @property
    def is_a2n(self) -> bool:
        t = self.base.type
        return self.r == 2 and t is not None and t.family == "A" and t.rank % 2 == 0

    @cached_property
    def htau_basis(self) -> list[list[int]]:
        """Orbit sums of simple coroots, in coroot coordinates of h."""
        return [[int(i in orb) for i in range(self.base.rank)] for orb in self.orbits]

    def embed(self, c: Sequence) -> list[Fraction]:
        """Point of h^tau (basis coordinates) to coroot coordinates of h."""
        return [Fraction(c[self._orbit_of[i]]) for i in range(self.base.rank)]

    @cached_property
    def proj(self) -> list[list[Fraction]]:
        """Matrix of the orthogonal projection h -> h^tau (basis coordinates)."""
        return [[Fraction(int(i in orb), len(orb)) for i in range(self.base.rank)] for orb in self.orbits]

    def project(self, v: Sequence) -> list[Fraction]:
        return qa.matvec(self.proj, [Fraction(x) for x in v])

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        f = self.base.form
        return [[sum((f[i][j] for i in p for j in q), Fraction(0)) for q in self.orbits] for p in self.orbits]

    @cached_property
    def gram_inverse(self) -> list[list[Fraction]]:
        return qa.inverse(self.gram)

    def form(self, c: Sequence, d: Sequence) -> Fraction:
        return qa.dot(c, qa.matvec(self.gram, d))

    # --- covectors -----------------------------------------------------------

    def restrict(self, beta: Sequence[int]) -> Covector:
        """Restriction to h^tau of a root-side vector of the base system."""
        vals = [self.base.coroot_pairing(beta, i) for i in range(self.base.rank)]
        return tuple(Fraction(sum(vals[i] for i in orb)) for orb in self.orbits)

    @staticmethod
    def pair(lam: Sequence, c: Sequence) -> Fraction:
        return qa.dot(lam, c)

    def to_vector(self, lam: Sequence) -> list[Fraction]:
        """Form-identify a covector with an element of h^tau."""
        return qa.matvec(self.gram_inverse, lam)

    def cov_form(self, lam: Sequence, mu: Sequence) -> Fraction:
        return qa.dot(lam, self.to_vector(mu))

    def coroot(self, lam: Sequence) -> list[Fraction]:
        n2 = self.cov_form(lam, lam)
        return [2 * x / n2 for x in self.to_vector(lam)]

    @cached_property
    def restricted_simple(self) -> list[Covector]:
        n = self.base.rank
        return [self.restrict([int(i == orb[0]) for i in range(n)]) for orb in self.orbits]

    @cached_property
    def delta_tau(self) -> Counter:
        """Restricted roots with the number of roots restricting to each."""
        return Counter(self.restrict(b) for b in self.base.all_roots)

    def restricted_kind(self, lam: Covector) -> str:
        """``'short'``, ``'long'``, ``'double'`` (twice a restricted root) or ``'intermediate'``."""
        if lam not in self.delta_tau:
            raise ValueError("not a restricted root")
        half = tuple(x / 2 for x in lam)
        if half in self.delta_tau:
            return "double"
        twice = tuple(2 * x for x in lam)
        if twice in self.delta_tau:
            return "short"
        norms = {self.cov_form(m, m) for m in self.g0_root_covectors}
        n2 = self.cov_form(lam, lam)
        if len(norms) == 1:
            return "long"
        if n2 == max(norms):
            return "long"
        return "short" if n2 == min(norms) else "intermediate"

    # --- fixed-point algebra g0 ----------------------------------------------

    @cached_property
    def g0_cartan(self) -> list[list[int]]:
        s = self.restricted_simple
        out = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                v = 2 * self.cov_form(s[i], s[j]) / self.cov_form(s[i], s[i])
                if v.denominator != 1:
                    raise AssertionError("restricted Cartan entry is not integral")
                row.append(int(v))
            out.append(row)
        return out

    @cached_property
    def g0(self) -> RootSystem:
        t = identify(self.g0_cartan)
        return RootSystem.from_cartan(self.g0_cartan, t)

    def g0_to_covector(self, coords: Sequence) -> Covector:
        s = self.restricted_simple
        return tuple(sum((Fraction(coords[j]) * s[j][k] for j in range(self.dim)), Fraction(0))
                     for k in range(self.dim))

    @cached_property
    def g0_root_covectors(self) -> list[Covector]:
        return [self.g0_to_covector(b) for b in self.g0.all_roots]

    @cached_property
    def theta_tau(self) -> Covector:
        if self.r == 1:
            return self.restrict(self.base.theta)
        g0 = self.g0
        pos = g0.positive_roots
        short_norm = min(g0.root_inner(b, b) for b in pos)
        top = max((b for b in pos if g0.root_inner(b, b) == short_norm), key=sum)
        cov = self.g0_to_covector(top)
        if self.is_a2n:
            cov = tuple(2 * x for x in cov)
        return cov

    @cached_property
    def theta_labels(self) -> tuple[int, ...]:
        """Dynkin labels of ``theta_tau`` for g0 (its highest weight in g_k, k > 0)."""
        s = self.restricted_simple
        out = []
        for i in range(self.dim):
            v = 2 * self.cov_form(self.theta_tau, s[i]) / self.cov_form(s[i], s[i])
            out.append(int(v))
        return tuple(out)

    # --- eigenspace decomposition of g_C under tau --------------------------

    def _tau_root(self, beta: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.base.rank
        for i, b in enumerate(beta):
            out[self.tau.perm[i]] = b
        return tuple(out)

    @cached_property
    def _eigen_multiplicities(self) -> dict[int, Counter]:
        """Weights of each g_k with multiplicity, from the tau-action on root vectors.

        On an orbit of ``s`` root vectors, ``tau^s`` acts by a sign ``eps``.
        With the standard lift ``eps = +1``, except on the tau-fixed roots of
        ``A_{2n}`` where ``eps = -1``; the eigenvalues are the ``s``-th roots
        of ``eps``.
        """
        r = self.r
        out = {k: Counter() for k in range(r)}
        zero = tuple(Fraction(0) for _ in range(self.dim))
        for orb in self.orbits:
            s = len(orb)
            for j in range(s):
                out[j * r // s][zero] += 1
        seen: set[tuple[int, ...]] = set()
        for beta in self.base.all_roots:
            if beta in seen:
                continue
            orb = [beta]
            nxt = self._tau_root(beta)
            while nxt != beta:
                orb.append(nxt)
                nxt = self._tau_root(nxt)
            seen.update(orb)
            s = len(orb)
            lam = self.restrict(beta)
            if s == 1 and self.is_a2n:
                out[1][lam] += 1
            else:
                for j in range(s):
                    out[j * r // s][lam] += 1
        return out

    def gk_weights(self, k: int) -> Counter:
        """Weights of the ``exp(2 pi i k / r)``-eigenspace of tau, with multiplicity."""
        if not 0 <= k < self.r:
            raise ValueError("k out of range")
        return Counter(self._eigen_multiplicities[k])

    def gk_weight_set(self, k: int) -> set[Covector]:
        """The weight set of g_k computed from g0 alone.

        ``k = 0``: roots of g0 and zero; ``k > 0``: the weight system of the
        g0-module with highest weight ``theta_tau``.
        """
        zero = tuple(Fraction(0) for _ in range(self.dim))
        if k == 0:
            return set(self.g0_root_covectors) | {zero}
        g0 = self.g0
        out = set()
        for lab in g0.weight_system(self.theta_labels):
            out.add(self.g0_to_covector(g0.labels_to_root_coords(lab)))
        return out

    # --- twisted affine diagram ----------------------------------------------

    @cached_property
    def node_covectors(self) -> list[Covector]:
        """Node 0 is ``-theta_tau``; nodes 1..l are the restricted simple roots."""
        return [tuple(-x for x in self.theta_tau)] + list(self.restricted_simple)

    @cached_property
    def affine_cartan(self) -> list[list[int]]:
        nodes = self.node_covectors
        out = []
        for a in nodes:
            aa = self.cov_form(a, a)
            out.append([int(2 * self.cov_form(a, b) / aa) for b in nodes])
        return out

    @cached_property
    def comarks(self) -> tuple[int, ...]:
        ker = qa.nullspace(qa.transpose(self.affine_cartan))
        if len(ker) != 1:
            raise AssertionError("affine Cartan matrix does not have corank 1")
        v = qa.primitive_integer(ker[0])
        if v[0] < 0:
            v = [-x for x in v]
        if min(v) <= 0:
            raise AssertionError("comarks are not positive")
        return tuple(v)

    # --- lattices ------------------------------------------------------------

    @cached_property
    def inv_lattice(self) -> list[list[Fraction]]:
        """Basis of ``(Q^vee)^tau`` in h^tau coordinates."""
        return [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def proj_lattice(self) -> list[list[Fraction]]:
        """Basis of ``pi(Q^vee)`` in h^tau coordinates."""
        n = self.base.rank
        return qa.lattice_basis([self.project([int(i == j) for j in range(n)]) for i in range(n)])

    def component_group(self) -> list[int]:
        """Invariant factors of ``pi(Q^vee) / (Q^vee)^tau`` (empty when trivial)."""
        free, torsion = qa.quotient_invariants(self.proj_lattice, self.inv_lattice)
        assert free == 0
        return torsion


def fold(rs: RootSystem, tau: DiagramAutomorphism | None = None) -> FoldedSystem:
    if tau is None:
        tau = identity_automorphism(rs)
    if not is_automorphism(rs, tau.perm):
        raise ValueError("tau is not a diagram automorphism of this root system")
    return FoldedSystem(rs, tau)
