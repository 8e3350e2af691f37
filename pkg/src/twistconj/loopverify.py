"""Floating-point checks of the loop-group picture for SU(n).

Conventions: ``exp(H) = exp(2 pi i diag(x))`` on the diagonal chart, the
invariant form is ``<A, B> = -tr(AB) / (4 pi^2)`` (so the coroot matrices
``2 pi i (E_ii - E_jj)`` have square length 2), and for ``twist = 2`` the
involution is ``tau(A) = J conj(A) J^-1``.  Loops satisfy
``g(theta) = tau(g(theta + 2 pi))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

TWO_PI = 2 * np.pi
MIN_STEPS = 64


# --- su(n) basics ---------------------------------------------------------------

def j_matrix(n: int) -> np.ndarray:
    """``antidiag(1, ..., 1)`` for odd ``n``, ``antidiag(1, ..., 1, -1, ..., -1)`` for even ``n``."""
    d = [1] * n if n % 2 else [1] * (n // 2) + [-1] * (n // 2)
    out = np.zeros((n, n))
    for i in range(n):
        out[i, n - 1 - i] = d[i]
    return out


def tau(a: np.ndarray, twist: int) -> np.ndarray:
    """The involution on matrices (or stacks of matrices); identity when ``twist == 1``."""
    if twist == 1:
        return a
    jm = j_matrix(a.shape[-1])
    return jm @ np.conj(a) @ jm.T


def inner(a: np.ndarray, b: np.ndarray):
    """Normalized invariant form, batched over leading axes."""
    return -np.einsum("...ij,...ji->...", a, b).real / (4 * np.pi**2)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def su_basis(n: int) -> list[np.ndarray]:
    """A real basis of su(n)."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), complex)
            e[i, j], e[j, i] = 1, -1
            out.append(e)
            e = np.zeros((n, n), complex)
            e[i, j] = e[j, i] = 1j
            out.append(e)
    for i in range(n - 1):
        e = np.zeros((n, n), complex)
        e[i, i], e[i + 1, i + 1] = 1j, -1j
        out.append(e)
    return out


def random_su(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    x = (m - m.conj().T) / 2
    return scale * (x - np.trace(x) / n * np.eye(n))


def eigen_part(x: np.ndarray, twist: int, sign: int) -> np.ndarray:
    """Projection to the ``sign``-eigenspace of tau."""
    return (x + sign * tau(x, twist)) / 2


def diag_element(x: Sequence) -> np.ndarray:
    """``2 pi i diag(x)``, the Lie algebra element with ``exp`` equal to ``diag(e^{2 pi i x})``."""
    return 2j * np.pi * np.diag(np.asarray([float(t) for t in x], dtype=float))


def full_chart(n: int, twist: int, x: Sequence) -> list:
    """Extend twisted chart coordinates ``(x_1, ..., x_{n//2})`` to all ``n`` entries."""
    x = list(x)
    if len(x) == n:
        return x
    if twist == 2 and len(x) == n // 2:
        return x + ([0] if n % 2 else []) + [-t for t in reversed(x)]
    if twist == 1 and len(x) == n - 1:
        return x + [-sum(x)]
    raise ValueError(f"cannot read {len(x)} chart coordinates for n={n}, twist={twist}")


# --- loops ------------------------------------------------------------------------

def _check_shape(n: int, twist: int):
    if n < 2:
        raise ValueError("n must be at least 2")
    if twist not in (1, 2):
        raise ValueError("twist must be 1 or 2")
    if twist == 2 and n < 3:
        raise ValueError("SU(2) has no outer automorphism")


class MatrixLoop:
    """A loop ``theta -> n x n`` matrix; call with a scalar or an array of angles."""

    n: int
    twist: int
    kind: str

    def __call__(self, theta):
        raise NotImplementedError

    def derivative(self, theta):
        raise NotImplementedError

    def boundary_defect(self, thetas) -> float:
        t = np.asarray(thetas, dtype=float)
        return float(np.max(np.abs(self(t) - tau(self(t + TWO_PI), self.twist))))


@dataclass
class FourierLoop(MatrixLoop):
    """Algebra-valued trigonometric polynomial ``sum_m C_m cos(m theta) + S_m sin(m theta)``."""

    n: int
    twist: int
    modes: list[tuple[float, np.ndarray, np.ndarray]]
    kind: str = field(default="algebra", init=False)

    def _eval(self, theta, deriv: bool):
        t = np.asarray(theta, dtype=float)
        out = np.zeros(t.shape + (self.n, self.n), complex)
        for m, c, s in self.modes:
            if deriv:
                wc, ws = -m * np.sin(m * t), m * np.cos(m * t)
            else:
                wc, ws = np.cos(m * t), np.sin(m * t)
            out = out + wc[..., None, None] * c + ws[..., None, None] * s
        return out

    def __call__(self, theta):
        return self._eval(theta, False)

    def derivative(self, theta):
        return self._eval(theta, True)


def constant_loop(x: np.ndarray, twist: int = 1) -> FourierLoop:
    n = x.shape[0]
    return FourierLoop(n, twist, [(0.0, np.asarray(x, complex), np.zeros((n, n), complex))])


def exp_with_derivative(f: np.ndarray, fp: np.ndarray):
    """``exp(f)`` and its derivative along ``fp`` for anti-hermitian ``f`` (batched).

    With ``f = U diag(i w) U^*`` the derivative is ``U (Phi * U^* fp U) U^*``
    where ``Phi_jk = e^{i(w_j+w_k)/2} sinc((w_j-w_k)/2 pi)``, the divided
    difference of ``exp`` written so that it stays accurate at coincident
    eigenvalues.
    """
    w, u = np.linalg.eigh(-1j * f)
    uh = np.conj(np.swapaxes(u, -1, -2))
    e = u @ (np.exp(1j * w)[..., None] * uh)
    wj, wk = w[..., :, None], w[..., None, :]
    phi = np.exp(0.5j * (wj + wk)) * np.sinc((wj - wk) / (2 * np.pi))
    de = u @ (phi * (uh @ fp @ u)) @ uh
    return e, de


@dataclass
class ExpLoop(MatrixLoop):
    """Group-valued loop ``exp(f_1(theta)) exp(f_2(theta)) ...``."""

    factors: list[FourierLoop]
    kind: str = field(default="group", init=False)

    @property
    def n(self) -> int:
        return self.factors[0].n

    @property
    def twist(self) -> int:
        return self.factors[0].twist

    def value_and_derivative(self, theta):
        t = np.asarray(theta, dtype=float)
        g = np.broadcast_to(np.eye(self.n, dtype=complex), t.shape + (self.n, self.n))
        gp = np.zeros(t.shape + (self.n, self.n), complex)
        for f in self.factors:
            e, ep = exp_with_derivative(f(t), f.derivative(t))
            g, gp = g @ e, gp @ e + g @ ep
        return g, gp

    def __call__(self, theta):
        return self.value_and_derivative(theta)[0]

    def derivative(self, theta):
        return self.value_and_derivative(theta)[1]

    def inverse(self, theta):
        return np.conj(np.swapaxes(self(theta), -1, -2))

    def then(self, other: "ExpLoop") -> "ExpLoop":
        """The pointwise product ``other * self``."""
        return ExpLoop(other.factors + self.factors)


@dataclass
class CoadjointLoop(MatrixLoop):
    """``g Y g^-1 - a g' g^-1``: the loop-group coadjoint action on level ``a``."""

    y: MatrixLoop
    a: float
    g: ExpLoop
    kind: str = field(default="algebra", init=False)

    @property
    def n(self) -> int:
        return self.y.n

    @property
    def twist(self) -> int:
        return self.y.twist

    def __call__(self, theta):
        g, gp = self.g.value_and_derivative(theta)
        gi = np.conj(np.swapaxes(g, -1, -2))
        return g @ self.y(theta) @ gi - self.a * gp @ gi


def sample_loop(n: int, twist: int, seed: int, degree: int, kind: str = "algebra",
                decay: float = 0.5, scale: float = 1.0) -> MatrixLoop:
    """A smooth random loop obeying the twisted boundary condition.

    Modes are ``k / twist`` for ``k = 0 .. twist * degree``; a mode is paired with
    the tau-eigenspace whose sign makes ``g(theta) = tau(g(theta + 2 pi))`` hold.
    Group loops are pointwise exponentials of an algebra loop.
    """
    _check_shape(n, twist)
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if kind not in ("algebra", "group"):
        raise ValueError("kind must be 'algebra' or 'group'")
    rng = np.random.default_rng(seed)
    modes = []
    for k in range(twist * degree + 1):
        m = k / twist
        sign = 1 if k % twist == 0 else -1
        amp = scale * decay**m
        c = eigen_part(random_su(n, rng, amp), twist, sign)
        s = eigen_part(random_su(n, rng, amp), twist, sign) if k else np.zeros((n, n), complex)
        modes.append((m, c, s))
    loop = FourierLoop(n, twist, modes)
    return loop if kind == "algebra" else ExpLoop([loop])


def coadjoint_transform(y: MatrixLoop, a: float, g: ExpLoop) -> CoadjointLoop:
    if y.kind != "algebra" or g.kind != "group":
        raise ValueError("expected an algebra loop and a group loop")
    if (y.n, y.twist) != (g.n, g.twist):
        raise ValueError("loops have mismatched size or twist")
    return CoadjointLoop(y, a, g)


# --- monodromy ------------------------------------------------------------------

@dataclass
class MonodromyResult:
    thetas: np.ndarray
    samples: np.ndarray
    steps: int
    unitarity_drift: float
    halving_error: float | None = None

    @property
    def endpoint(self) -> np.ndarray:
        return self.samples[-1]


def _polar(z: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(z)
    return u @ vh


def _integrate(y: MatrixLoop, a: float, steps: int):
    h = TWO_PI / steps
    thetas = np.linspace(0.0, TWO_PI, steps + 1)
    mids = thetas[:-1] + h / 2
    yt, ym = y(thetas), y(mids)
    n = y.n
    z = np.eye(n, dtype=complex)
    out = np.empty((steps + 1, n, n), complex)
    out[0] = z
    drift = 0.0
    for i in range(steps):
        k1 = -yt[i] @ z / a
        k2 = -ym[i] @ (z + h / 2 * k1) / a
        k3 = -ym[i] @ (z + h / 2 * k2) / a
        k4 = -yt[i + 1] @ (z + h * k3) / a
        z = z + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        drift = max(drift, float(np.max(np.abs(z.conj().T @ z - np.eye(n)))))
        z = _polar(z)
        out[i + 1] = z
    return thetas, out, drift


def solve_monodromy(y: MatrixLoop, a: float, steps: int = 1024, estimate_error: bool = False) -> MonodromyResult:
    """Solve ``z' = -(1/a) Y z``, ``z(0) = 1`` on a uniform grid by RK4 with unitary projection."""
    if a == 0:
        raise ValueError("level must be nonzero")
    if steps < MIN_STEPS:
        raise ValueError(f"need at least {MIN_STEPS} steps")
    thetas, samples, drift = _integrate(y, a, steps)
    err = None
    if estimate_error:
        _, coarse, _ = _integrate(y, a, steps // 2) if steps // 2 >= MIN_STEPS else _integrate(y, a, 2 * steps)
        err = float(np.max(np.abs(coarse[-1] - samples[-1])))
    return MonodromyResult(thetas, samples, steps, drift, err)


def convergence_order(y: MatrixLoop, a: float, coarse: int = 64, reference: int = 4096) -> float:
    """Observed order from the endpoint errors at ``coarse`` and ``2 * coarse`` steps."""
    ref = solve_monodromy(y, a, reference).endpoint
    e1 = np.max(np.abs(solve_monodromy(y, a, coarse).endpoint - ref))
    e2 = np.max(np.abs(solve_monodromy(y, a, 2 * coarse).endpoint - ref))
    return float(np.log2(e1 / e2))


@dataclass
class EquivarianceReport:
    residual: float
    endpoint_residual: float


def check_equivariance(x: MatrixLoop, a: float, g: ExpLoop, steps: int = 4096) -> EquivarianceReport:
    """Compare ``z_(Y,a)`` with ``g z_(X,a) g(0)^-1`` for ``Y`` the transform of ``X`` by ``g``.

    ``endpoint_residual`` measures ``z_Y(2 pi) = h z_X(2 pi) tau(h)^-1`` with
    ``h = g(2 pi)``, i.e. that the two monodromies are twisted conjugate.
    """
    y = coadjoint_transform(x, a, g)
    zx = solve_monodromy(x, a, steps)
    zy = solve_monodromy(y, a, steps)
    gt = g(zx.thetas)
    g0inv = g.inverse(0.0)
    pred = gt @ zx.samples @ g0inv
    res = float(np.max(np.linalg.norm(zy.samples - pred, axis=(1, 2), ord=2)))
    h = g(TWO_PI)
    tw = tau(h, x.twist)
    end = h @ zx.endpoint @ tw.conj().T
    return EquivarianceReport(res, float(np.linalg.norm(zy.endpoint - end, ord=2)))


# --- the symplectic identity ------------------------------------------------------------

def simpson(values: np.ndarray, h: float) -> float:
    if (len(values) - 1) % 2:
        raise ValueError("Simpson's rule needs an even number of intervals")
    return float(h / 3 * (values[0] + values[-1] + 4 * values[1:-1:2].sum() + 2 * values[2:-1:2].sum()))


@dataclass
class TwoFormResult:
    sigma_term: float
    varpi_term: float
    omega: float
    d_beta: float

    @property
    def lhs(self) -> float:
        return self.sigma_term - self.varpi_term

    @property
    def raw_residual(self) -> float:
        """``|2 pi a sigma(eta) - 2 pi a F*varpi - omega|`` without the exact correction."""
        return abs(self.lhs - self.omega)

    @property
    def residual(self) -> float:
        return abs(self.lhs + self.d_beta - self.omega)

    @property
    def scale(self) -> float:
        return max(abs(self.omega), 1.0)

    @property
    def relative(self) -> float:
        return self.residual / self.scale

    @property
    def raw_relative(self) -> float:
        return self.raw_residual / self.scale


def two_form_residual(x, a: float, b1: FourierLoop, b2: FourierLoop, quad_points: int = 2048) -> TwoFormResult:
    """Evaluate both sides of the symplectic identity on tangent vectors ``B_1, B_2``.

    ``x`` is a constant algebra element (matrix) or an algebra loop.  The
    pulled-back 2-form differs from ``omega`` by the exact form ``d beta``,
    which is evaluated from the same data; ``residual`` includes it and
    ``raw_residual`` does not.  All terms are written antisymmetrically, so
    ``B_1 = B_2`` gives exact zeros.
    """
    if a == 0:
        raise ValueError("level must be nonzero")
    y = x if isinstance(x, MatrixLoop) else constant_loop(np.asarray(x, complex), b1.twist)
    twist = y.twist
    for b in (b1, b2):
        if b.twist != twist or b.n != y.n:
            raise ValueError("tangent loops must match the twist and size of X")
        if b.boundary_defect(np.linspace(0, TWO_PI, 7)) > 1e-10:
            raise ValueError("tangent loop violates the twisted boundary condition")
    if quad_points < 256 or quad_points & (quad_points - 1):
        raise ValueError("quad_points must be a power of two >= 256")

    mono = solve_monodromy(y, a, quad_points)
    th, z = mono.thetas, mono.samples
    h = TWO_PI / quad_points
    zi = np.conj(np.swapaxes(z, -1, -2))
    yt = y(th)
    v1, v2 = b1(th), b2(th)
    d1, d2 = b1.derivative(th), b2.derivative(th)
    ad1, ad2 = z @ v1[0] @ zi, z @ v2[0] @ zi
    xi1, xi2 = v1 - ad1, v2 - ad2
    xi1p = d1 + commutator(yt, ad1) / a
    xi2p = d2 + commutator(yt, ad2) / a

    sigma = simpson(inner(yt, commutator(xi1, xi2)), h) / (4 * np.pi)
    zt = z[-1]
    varpi = a / (4 * np.pi) * (inner(zt @ v1[0] @ zt.conj().T, v2[-1]) - inner(zt @ v2[0] @ zt.conj().T, v1[-1]))
    omega = (simpson(inner(yt, commutator(v1, v2)), h) / (2 * np.pi)
             + a / (4 * np.pi) * simpson(inner(d1, v2) - inner(d2, v1), h))
    d_beta = sigma + a / (4 * np.pi) * simpson(inner(xi1p, xi2) - inner(xi2p, xi1), h)
    return TwoFormResult(float(sigma), float(varpi), float(omega), float(d_beta))


# --- stabilizer oracle -----------------------------------------------------------------

def fixed_subalgebra_dim(n: int, twist: int, x: Sequence, tol: float = 1e-9) -> int:
    """``dim {X : Ad(exp H) tau(X) = X}`` for ``H`` given in the diagonal chart."""
    if twist == 2:
        _check_shape(n, twist)
    full = full_chart(n, twist, [Fraction(t) if not isinstance(t, float) else t for t in x])
    g = np.diag(np.exp(2j * np.pi * np.array([float(t) for t in full])))
    cols = []
    for e in su_basis(n):
        d = g @ tau(e, twist) @ g.conj().T - e
        cols.append(np.concatenate([d.real.ravel(), d.imag.ravel()]))
    s = np.linalg.svd(np.array(cols).T, compute_uv=False)
    return int(np.sum(s < tol))


def form_on_coroot(n: int, i: int, j: int) -> float:
    """Square length of the coroot matrix ``2 pi i (E_ii - E_jj)`` under :func:`inner`."""
    e = np.zeros(n)
    e[i], e[j] = 1, -1
    m = diag_element(e)
    return float(inner(m, m))
