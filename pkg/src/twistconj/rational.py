"""Exact linear algebra over Q and Z.

Matrices are plain lists of rows; entries are ``int`` or ``Fraction``.
Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list]
Vector = list


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; rationalize first")
    return Fraction(x)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else abs(a or b)


def denominator_lcm(values) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def is_integer(x) -> bool:
    return Fraction(x).denominator == 1


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def transpose(m: Matrix) -> Matrix:
    return [list(r) for r in zip(*m)] if m else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[dot(r, c) for c in bt] for r in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [dot(r, v) for r in a]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _rref(m: Matrix):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [[Fraction(x) for x in r] for r in m]
    pivots = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(_rref(m)[1])


def det(m: Matrix) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(r) + identity(n)[i] for i, r in enumerate(m)]
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in rows]


def solve(m: Matrix, b: Sequence) -> list:
    """Solve the square system ``m x = b``."""
    return matvec(inverse(m), b)


def nullspace(m: Matrix) -> list[list[Fraction]]:
    """Basis of the right kernel ``{x : m x = 0}``."""
    if not m:
        return []
    ncols = len(m[0])
    rows, pivots = _rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -rows[r][f]
        basis.append(x)
    return basis


def primitive_integer(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    d = denominator_lcm(v)
    ints = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


# --- integer lattices -------------------------------------------------------

def smith_normal_form(m: Matrix):
    """Smith normal form of an integer matrix.

    Returns ``(U, D, V)`` with ``U * m * V == D``, ``U`` and ``V`` unimodular
    and ``D`` diagonal with each nonzero entry dividing the next.
    """
    a = [[int(x) for x in r] for r in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = identity(nr)
    v = identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        a[dst] = [x - f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for r in a:
            r[dst] -= f * r[src]
        for r in v:
            r[dst] -= f * r[src]

    t = 0
    while t < min(nr, nc):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility: fold any offending row into row t and retry
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                u[t] = [x + y for x, y in zip(u[t], u[bad[0]])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def invariant_factors(m: Matrix) -> list[int]:
    """Diagonal of the Smith form (zeros included for rank deficiency)."""
    _, d, _ = smith_normal_form(m)
    k = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(k)]


def lattice_basis(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """A basis of the Z-span of rational vectors."""
    vectors = [list(v) for v in vectors if any(x != 0 for x in v)]
    if not vectors:
        return []
    d = denominator_lcm(x for v in vectors for x in v)
    ints = [[int(Fraction(x) * d) for x in v] for v in vectors]
    # rows of ints generate the lattice; U * ints * V = D  =>  span = rows of D V^-1
    u, dmat, v = smith_normal_form(ints)
    vinv = [[int(x) for x in r] for r in inverse(v)]
    basis = []
    for i in range(min(len(dmat), len(dmat[0]))):
        if dmat[i][i]:
            basis.append([Fraction(dmat[i][i] * x, d) for x in vinv[i]])
    return basis


def coordinates_in(basis: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    """Coordinates of ``v`` in a full-rank square ``basis`` (rows)."""
    return solve(transpose([list(b) for b in basis]), v)


def quotient_invariants(outer: Sequence[Sequence], inner: Sequence[Sequence]) -> tuple[int, list[int]]:
    """Structure of ``span_Z(outer) / span_Z(inner)`` for ``inner`` inside ``outer``.

    ``outer`` must be a basis (rows).  Returns ``(free_rank, torsion)`` where
    torsion lists the nontrivial invariant factors.
    """
    n = len(outer)
    coords = []
    for v in inner:
        c = coordinates_in(outer, v)
        if not all(is_integer(x) for x in c):
            raise ValueError("inner lattice is not contained in outer lattice")
        coords.append([int(x) for x in c])
    if not coords:
        return n, []
    factors = invariant_factors(coords)
    nonzero = [f for f in factors if f]
    return n - len(nonzero), [f for f in nonzero if f != 1]


def integer_kernel(m: Matrix, ncols: int) -> list[list[int]]:
    """Basis of ``{x in Z^n : m x = 0}`` (saturated)."""
    if not m:
        return identity(ncols)
    d = denominator_lcm(x for r in m for x in r)
    ints = [[int(Fraction(x) * d) for x in r] for r in m]
    _, dmat, v = smith_normal_form(ints)
    k = sum(1 for i in range(min(len(dmat), ncols)) if dmat[i][i])
    return [[v[r][c] for r in range(ncols)] for c in range(k, ncols)]
