"""Finite root systems with exact arithmetic.

Conventions (fixed once, used everywhere):

* Nodes are numbered as in Bourbaki's tables.  For ``E_n`` the chain is
  1-3-4-5-...-n with node 2 attached to node 4; ``B_n`` has its short simple
  root last, ``C_n`` its long simple root last, ``G_2`` has ``alpha_1`` short.
* ``cartan[i][j] = alpha_j(alpha_i^vee)``.
* Roots and weights on the root side are integer vectors in the simple-root
  basis.  Elements of the Cartan subalgebra ``h`` are rational vectors in the
  simple-coroot basis.
* The invariant form is normalized so long roots have squared length 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import rational as qa

FAMILIES = "ABCDEFG"

_ROOT_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}

_CENTER_ORDER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2,
    "C": lambda n: 2,
    "D": lambda n: 4,
    "E": lambda n: {6: 3, 7: 2, 8: 1}[n],
    "F": lambda n: 1,
    "G": lambda n: 1,
}


@dataclass(frozen=True, order=True)
class SimpleType:
    """Cartan type of a simple Lie algebra, canonicalized on coincidences.

    ``SimpleType("C", 2) == SimpleType("B", 2)`` and ``D3`` becomes ``A3``.
    """

    family: str
    rank: int

    def __post_init__(self):
        fam = str(self.family).upper()
        n = int(self.rank)
        ok = {
            "A": n >= 1,
            "B": n >= 1,
            "C": n >= 1,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(fam, False)
        if not ok:
            raise ValueError(f"invalid simple type {self.family}{self.rank}")
        if fam in "BC" and n == 1:
            fam = "A"
        elif fam == "C" and n == 2:
            fam = "B"
        elif fam == "D" and n == 3:
            fam = "A"
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "rank", n)

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        text = text.strip()
        if text.lower().startswith("su"):
            return cls("A", int(text[2:]) - 1)
        return cls(text[0], int(text[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def root_count(self) -> int:
        return _ROOT_COUNT[self.family](self.rank)

    @property
    def dimension(self) -> int:
        return self.root_count + self.rank

    @property
    def center_order(self) -> int:
        return _CENTER_ORDER[self.family](self.rank)


def catalog_cartan(t: SimpleType) -> list[list[int]]:
    """Cartan matrix of ``t`` in the package's node numbering."""
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    fam = t.family
    if fam in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if fam == "B" and n >= 2:
            link(n - 2, n - 1, -1, -2)
        if fam == "C" and n >= 2:
            link(n - 2, n - 1, -2, -1)
    elif fam == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif fam == "G":
        link(0, 1, -3, -1)
    return a


def root_norms(cartan: Sequence[Sequence[int]]) -> list[Fraction]:
    """Squared lengths ``(alpha_i, alpha_i)`` with the longest equal to 2.

    Works component by component, so a disconnected matrix gets each
    component normalized separately.
    """
    n = len(cartan)
    norms: list[Fraction | None] = [None] * n
    for start in range(n):
        if norms[start] is not None:
            continue
        norms[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and norms[j] is None:
                    if cartan[j][i] == 0:
                        raise ValueError("Cartan matrix is not symmetrizable")
                    norms[j] = norms[i] * Fraction(cartan[i][j], cartan[j][i])
                    comp.append(j)
                    queue.append(j)
        top = max(norms[i] for i in comp)
        for i in comp:
            norms[i] = norms[i] * 2 / top
    for i in range(n):
        for j in range(n):
            if cartan[i][j] * norms[i] != cartan[j][i] * norms[j]:
                raise ValueError("Cartan matrix is not symmetrizable")
    return norms  # type: ignore[return-value]


def is_finite_type(cartan: Sequence[Sequence[int]]) -> bool:
    """Positive-definiteness of the symmetrized matrix (leading minors)."""
    n = len(cartan)
    if n == 0:
        return True
    norms = root_norms(cartan)
    sym = [[Fraction(cartan[i][j]) * norms[i] / 2 for j in range(n)] for i in range(n)]
    return all(qa.det([r[:k] for r in sym[:k]]) > 0 for k in range(1, n + 1))


def connected_components(cartan: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(cartan)
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _closure_roots(cartan) -> list[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    queue = deque(simple)
    while queue:
        b = queue.popleft()
        pair = [sum(cartan[i][j] * b[j] for j in range(n)) for i in range(n)]
        for i in range(n):
            if pair[i]:
                c = list(b)
                c[i] -= pair[i]
                c = tuple(c)
                if c not in found:
                    found.add(c)
                    queue.append(c)
    return sorted(found, key=lambda r: (sum(r), r))


def identify(cartan: Sequence[Sequence[int]]) -> SimpleType:
    """Recognize a connected finite-type Cartan matrix up to node permutation."""
    if not is_finite_type(cartan):
        raise ValueError("Cartan matrix is not of finite type")
    if len(connected_components(cartan)) != 1:
        raise ValueError("Cartan matrix is not connected")
    n = len(cartan)
    norms = root_norms(cartan)
    nroots = len(_closure_roots(cartan))
    short = sum(1 for x in norms if x != 2)
    laced = short == 0
    candidates = []
    for fam in FAMILIES:
        try:
            t = SimpleType(fam, n)
        except ValueError:
            continue
        if t.root_count != nroots:
            continue
        ref = root_norms(catalog_cartan(t))
        ref_short = sum(1 for x in ref if x != 2)
        if (ref_short == 0) != laced or ref_short != short:
            continue
        if sorted(norms) != sorted(ref):
            continue
        candidates.append(t)
    if not candidates:
        raise ValueError("unrecognized Cartan matrix")
    return candidates[0]


@dataclass(frozen=True)
class RootSystem:
    """A finite (possibly reducible) root system given by its Cartan matrix."""

    cartan: tuple[tuple[int, ...], ...]
    type: SimpleType | None = None

    @classmethod
    def from_cartan(cls, cartan, type: SimpleType | None = None) -> "RootSystem":
        return cls(tuple(tuple(int(x) for x in r) for r in cartan), type)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def norms(self) -> list[Fraction]:
        return root_norms(self.cartan)

    @cached_property
    def root_form(self) -> list[list[Fraction]]:
        """``(alpha_i, alpha_j)`` on simple roots."""
        n = self.rank
        return [[self.cartan[i][j] * self.norms[i] / 2 for j in range(n)] for i in range(n)]

    @cached_property
    def form(self) -> list[list[Fraction]]:
        """``<alpha_i^vee, alpha_j^vee>``: the invariant form on h in coroot coordinates."""
        n = self.rank
        return [[2 * self.cartan[i][j] / self.norms[j] for j in range(n)] for i in range(n)]

    @cached_property
    def all_roots(self) -> list[tuple[int, ...]]:
        return _closure_roots(self.cartan)

    @cached_property
    def positive_roots(self) -> list[tuple[int, ...]]:
        return [r for r in self.all_roots if sum(r) > 0]

    @cached_property
    def negative_roots(self) -> list[tuple[int, ...]]:
        return [r for r in self.all_roots if sum(r) < 0]

    @cached_property
    def theta(self) -> tuple[int, ...]:
        top = max(self.positive_roots, key=sum)
        return top

    @property
    def dimension(self) -> int:
        return self.rank + len(self.all_roots)

    # --- pairings ------------------------------------------------------------

    def coroot_pairing(self, beta: Sequence, i: int):
        """``beta(alpha_i^vee)``."""
        return sum(self.cartan[i][j] * beta[j] for j in range(self.rank))

    def evaluate(self, beta: Sequence, v: Sequence) -> Fraction:
        """``beta(v)`` for a root-side vector ``beta`` and ``v`` in h."""
        return sum((Fraction(v[i]) * self.coroot_pairing(beta, i) for i in range(self.rank)), Fraction(0))

    def form_data(self, v: Sequence, w: Sequence) -> Fraction:
        if len(v) != self.rank or len(w) != self.rank:
            raise ValueError("dimension mismatch")
        f = self.form
        return sum((Fraction(v[i]) * f[i][j] * w[j] for i in range(self.rank) for j in range(self.rank)),
                   Fraction(0))

    def root_inner(self, beta: Sequence, gamma: Sequence) -> Fraction:
        f = self.root_form
        n = self.rank
        return sum((Fraction(beta[i]) * f[i][j] * gamma[j] for i in range(n) for j in range(n)), Fraction(0))

    def nu_inverse(self, beta: Sequence) -> list[Fraction]:
        """The element of h representing ``beta`` under the invariant form."""
        return [Fraction(beta[j]) * self.norms[j] / 2 for j in range(self.rank)]

    def coroot(self, beta: Sequence) -> list[Fraction]:
        if not any(beta):
            raise ValueError("zero vector has no coroot")
        n2 = self.root_inner(beta, beta)
        return [2 * x / n2 for x in self.nu_inverse(beta)]

    def is_long(self, beta: Sequence) -> bool:
        return self.root_inner(beta, beta) == 2

    # --- Weyl group ----------------------------------------------------------

    def reflect_root(self, i: int, beta: Sequence) -> tuple:
        c = list(beta)
        c[i] -= self.coroot_pairing(beta, i)
        return tuple(c)

    def simple_value(self, i: int, v: Sequence) -> Fraction:
        """``alpha_i(v)`` for ``v`` in h."""
        return sum((Fraction(v[k]) * self.cartan[k][i] for k in range(self.rank)), Fraction(0))

    def reflect_vector(self, i: int, v: Sequence) -> list[Fraction]:
        a = self.simple_value(i, v)
        out = [Fraction(x) for x in v]
        out[i] -= a
        return out

    def apply_word(self, word: Iterable[int], v: Sequence) -> list[Fraction]:
        out = [Fraction(x) for x in v]
        for i in word:
            out = self.reflect_vector(i, out)
        return out

    def chamber_reduce(self, v: Sequence) -> tuple[list[Fraction], list[int]]:
        """Move ``v`` into the closed fundamental chamber by simple reflections."""
        out = [Fraction(x) for x in v]
        word: list[int] = []
        while True:
            i = next((i for i in range(self.rank) if self.simple_value(i, out) < 0), None)
            if i is None:
                return out, word
            out = self.reflect_vector(i, out)
            word.append(i)

    # --- weights -------------------------------------------------------------

    def labels_to_root_coords(self, labels: Sequence) -> list[Fraction]:
        """Dynkin labels ``mu(alpha_i^vee)`` to simple-root coordinates."""
        return qa.solve([list(r) for r in self.cartan], list(labels))

    def root_labels(self, beta: Sequence) -> tuple[int, ...]:
        return tuple(self.coroot_pairing(beta, i) for i in range(self.rank))

    def _subtract(self, mu: Sequence[int], j: int, times: int = 1) -> tuple[int, ...]:
        return tuple(mu[i] - times * self.cartan[i][j] for i in range(self.rank))

    def dominant_weights(self, top: Sequence[int]) -> set[tuple[int, ...]]:
        """Dominant weights below ``top`` (Dynkin labels).

        Any two dominant weights ``mu < lam`` are joined by a chain of
        dominant weights differing by positive roots, so a search that
        subtracts positive roots and keeps dominant results is complete.
        """
        pos_labels = [self.root_labels(b) for b in self.positive_roots]
        top = tuple(int(x) for x in top)
        found = {top}
        queue = deque([top])
        while queue:
            mu = queue.popleft()
            for lab in pos_labels:
                nu = tuple(m - l for m, l in zip(mu, lab))
                if min(nu) >= 0 and nu not in found:
                    found.add(nu)
                    queue.append(nu)
        return found

    def weyl_orbit(self, mu: Sequence[int]) -> set[tuple[int, ...]]:
        mu = tuple(int(x) for x in mu)
        found = {mu}
        queue = deque([mu])
        while queue:
            w = queue.popleft()
            for i in range(self.rank):
                if w[i]:
                    nu = self._subtract(w, i, w[i])
                    if nu not in found:
                        found.add(nu)
                        queue.append(nu)
        return found

    def weight_system(self, top: Sequence[int]) -> set[tuple[int, ...]]:
        """Set of weights (Dynkin labels) of the irreducible module with highest weight ``top``."""
        top = tuple(int(x) for x in top)
        if len(top) != self.rank:
            raise ValueError("dimension mismatch")
        if min(top, default=0) < 0:
            raise ValueError("highest weight must be dominant")
        out: set[tuple[int, ...]] = set()
        for mu in self.dominant_weights(top):
            out |= self.weyl_orbit(mu)
        return out


def build_root_system(t: SimpleType | str) -> RootSystem:
    if isinstance(t, str):
        t = SimpleType.parse(t)
    return RootSystem.from_cartan(catalog_cartan(t), t)
