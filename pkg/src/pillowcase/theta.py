"""Level-N theta functions, the odd basis zeta_j and the weighted L^2 oracle.

The inner product on sections is

    <f, g> = int_{[0,1]^2} f(z) conj(g(z)) exp(-2 N pi y^2) dx dy,   z = x + iy,

evaluated by quadrature: the periodic trapezoid rule in x, which is exact for
the band-limited integrands that occur here, and composite Gauss-Legendre in
y.  Nothing in this module uses a closed form for a norm or matrix element;
it is the reference the closed forms in :mod:`pillowcase.weyl` are checked
against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "ThetaSpec",
    "GroupElement",
    "SIGMA",
    "truncation_radius",
    "theta_eval",
    "zeta_eval",
    "theta_norm_sq",
    "inner_product",
    "zeta_inner_product",
    "monomial_table",
    "gram_matrix",
    "check_quasi_periodicity",
    "check_index_shift",
    "cocycle_eval",
    "verify_cocycle",
    "hermitian_residual",
    "section_residual",
]

_GL_PANEL = 20


def truncation_radius(N: int, jmax: float, ymax: float, tol: float) -> int:
    """Smallest M whose discarded tail sum_{|n|>M} is below tol/10.

    Each summand with |n| = n is bounded by exp(-pi(N n^2 - 2 jmax n - 2 N ymax n)).
    The exponent is a concave quadratic, so once successive ratios drop below
    one the tail is dominated by a geometric series.
    """
    def log_term(n: int) -> float:
        return -math.pi * (N * n * n - 2 * jmax * n - 2 * N * ymax * n)

    target = math.log(tol / 10)
    M = 0
    while True:
        n0 = M + 1
        log_ratio = log_term(n0 + 1) - log_term(n0)
        if log_ratio < 0:
            # two sides, geometric tail
            log_tail = math.log(2) + log_term(n0) - math.log1p(-math.exp(log_ratio))
            if log_tail < target:
                return M
        M += 1


@dataclass(frozen=True)
class ThetaSpec:
    """Configuration of every analytic computation at level N.

    ``M`` bounds the theta series (|n| <= M) for |j| <= 2N and |Im z| <= 1;
    ``quad_x`` trapezoid nodes in x, ``quad_y`` Gauss-Legendre nodes in y.
    """

    N: int
    M: int
    quad_x: int
    quad_y: int
    tol: float

    def __post_init__(self):
        if self.N < 6 or self.N % 2:
            raise ValueError(f"N must be an even integer >= 6, got {self.N}")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        need = truncation_radius(self.N, 2 * self.N, 1.0, self.tol)
        if self.M < need:
            raise ValueError(f"M={self.M} too small for tol={self.tol}; need M >= {need}")
        if self.quad_x < 2 * (2 * self.N) + 1:
            raise ValueError(f"quad_x must be >= {4 * self.N + 1}")
        if self.quad_y < _GL_PANEL or self.quad_y % _GL_PANEL:
            raise ValueError(f"quad_y must be a positive multiple of {_GL_PANEL}")

    @classmethod
    def for_level(cls, N: int, tol: float = 1e-10, quad_y: int = 400, max_freq: int = 6) -> ThetaSpec:
        """Build a spec whose x grid is exact for symbols up to ``max_freq``."""
        if N < 6 or N % 2:
            raise ValueError(f"N must be an even integer >= 6, got {N}")
        M = truncation_radius(N, 2 * N, 1.0, tol)
        quad_x = 2 * (N * M + N + max_freq) + 1
        return cls(N=N, M=M, quad_x=quad_x, quad_y=quad_y, tol=tol)

    @property
    def r(self) -> int:
        return self.N // 2

    @property
    def max_symbol_frequency(self) -> int:
        """Largest |p| for which x-quadrature of <e^{2 pi i p x} theta_j, theta_k>
        is exact when 0 <= j, k < N."""
        return (self.quad_x - 1) // 2 - (self.N * self.M + self.N)

    def __str__(self) -> str:
        return f"ThetaSpec(N={self.N}, M={self.M}, quad_x={self.quad_x}, quad_y={self.quad_y}, tol={self.tol:g})"


def theta_eval(j: int, z, spec: ThetaSpec):
    """theta_j(z) = sum_n exp(-pi(N n^2 + 2 j n) + 2 pi i z (j + N n)).

    Accepts scalar or array z.  The series radius is spec.M, widened when
    |j| or |Im z| exceed the range spec.M was sized for.
    """
    N = spec.N
    z_arr = np.asarray(z, dtype=complex)
    ymax = float(np.max(np.abs(z_arr.imag))) if z_arr.size else 0.0
    M = spec.M
    if abs(j) > 2 * N or ymax > 1.0:
        M = max(M, truncation_radius(N, abs(j), ymax, spec.tol))
    n = np.arange(-M, M + 1)
    log_amp = -np.pi * (N * n * n + 2 * j * n)
    freq = j + N * n
    phase = 2j * np.pi * np.multiply.outer(z_arr, freq)
    out = np.exp(phase + log_amp).sum(axis=-1)
    return complex(out) if np.ndim(out) == 0 else out


def zeta_eval(j: int, z, spec: ThetaSpec):
    """zeta_j = (N/2)^{1/4} exp(-pi j^2/N) (theta_j - theta_{-j}), any integer j."""
    N = spec.N
    c = (N / 2) ** 0.25 * math.exp(-math.pi * j * j / N)
    return c * (theta_eval(j, z, spec) - theta_eval(-j, z, spec))


@lru_cache(maxsize=16)
def _grid(spec: ThetaSpec):
    x = np.arange(spec.quad_x) / spec.quad_x
    wx = np.full(spec.quad_x, 1.0 / spec.quad_x)
    nodes, weights = np.polynomial.legendre.leggauss(_GL_PANEL)
    panels = spec.quad_y // _GL_PANEL
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    y = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    wy = (half[:, None] * weights[None, :]).ravel()
    return x, wx, y, wy


@lru_cache(maxsize=512)
def _weighted_values(kind: str, j: int, spec: ThetaSpec) -> np.ndarray:
    """f(z) exp(-N pi y^2) on the (y, x) grid for f = theta_j or zeta_j."""
    x, _, y, _ = _grid(spec)
    z = x[None, :] + 1j * y[:, None]
    f = theta_eval(j, z, spec) if kind == "theta" else zeta_eval(j, z, spec)
    vals = f * np.exp(-spec.N * np.pi * y * y)[:, None]
    vals.flags.writeable = False
    return vals


def _check_symbol(p: int, spec: ThetaSpec) -> None:
    if abs(p) > spec.max_symbol_frequency:
        raise ValueError(
            f"|p|={abs(p)} exceeds the exact x-quadrature range "
            f"{spec.max_symbol_frequency} of {spec}; rebuild with a larger max_freq"
        )


def _monomial(f) -> tuple[int, int]:
    if f is None or (not isinstance(f, tuple) and f == 1):
        return 0, 0
    p, q = f
    return int(p), int(q)


def _integrate(kind: str, f, j: int, k: int, spec: ThetaSpec) -> complex:
    p, q = _monomial(f)
    _check_symbol(p, spec)
    x, wx, y, wy = _grid(spec)
    a = _weighted_values(kind, j, spec)
    b = _weighted_values(kind, k, spec)
    sym = np.exp(2j * np.pi * (p * x[None, :] + q * y[:, None]))
    inner_x = (sym * a * np.conj(b)) @ wx
    return complex(inner_x @ wy)


def inner_product(f, j: int, k: int, spec: ThetaSpec) -> complex:
    """<f theta_j, theta_k> by quadrature; f is 1 or a monomial (p, q) meaning
    exp(2 pi i (p x + q y))."""
    return _integrate("theta", f, j, k, spec)


def zeta_inner_product(f, j: int, k: int, spec: ThetaSpec) -> complex:
    """<f zeta_j, zeta_k> by quadrature."""
    return _integrate("zeta", f, j, k, spec)


def theta_norm_sq(j: int, spec: ThetaSpec) -> float:
    """||theta_j||^2 measured by the quadrature oracle."""
    return inner_product(1, j, j, spec).real


@lru_cache(maxsize=64)
def _x_resolved(kind: str, p: int, indices: tuple[int, ...], spec: ThetaSpec) -> np.ndarray:
    # out[y, a, b] = sum_x w_x e^{2 pi i p x} f_a conj(f_b)
    x, wx, _, _ = _grid(spec)
    vals = np.stack([_weighted_values(kind, j, spec) for j in indices])  # (n, Ny, Nx)
    phase = np.exp(2j * np.pi * p * x) * wx
    lhs = (vals * phase).transpose(1, 0, 2)
    rhs = np.conj(vals).transpose(1, 2, 0)
    out = lhs @ rhs
    out.flags.writeable = False
    return out


def monomial_table(p: int, q: int, indices, spec: ThetaSpec, kind: str = "zeta") -> np.ndarray:
    """Matrix T[b, a] = <e^{2 pi i (p x + q y)} f_a, f_b> for f = theta or zeta
    over the given indices (row = target, column = source)."""
    if kind not in ("theta", "zeta"):
        raise ValueError(f"kind must be 'theta' or 'zeta', got {kind!r}")
    _check_symbol(p, spec)
    _, _, y, wy = _grid(spec)
    table = _x_resolved(kind, int(p), tuple(int(i) for i in indices), spec)
    wq = wy * np.exp(2j * np.pi * q * y)
    return np.einsum("yab,y->ba", table, wq)


def gram_matrix(spec: ThetaSpec) -> np.ndarray:
    """G[k, j] = <zeta_j, zeta_k> for j, k = 1..r-1."""
    return monomial_table(0, 0, range(1, spec.r), spec, kind="zeta")


def _relative(a, b) -> float:
    scale = max(abs(b), 1e-300)
    return float(abs(a - b) / scale)


def check_quasi_periodicity(j: int, m: int, n: int, z: complex, spec: ThetaSpec) -> float:
    """Relative residual of theta_j(z+m+in) = exp(N pi (n^2 - 2inz)) theta_j(z)."""
    lhs = theta_eval(j, z + m + 1j * n, spec)
    rhs = np.exp(spec.N * np.pi * (n * n - 2j * n * z)) * theta_eval(j, z, spec)
    return _relative(lhs, rhs)


def check_index_shift(j: int, z: complex, spec: ThetaSpec) -> float:
    """Relative residual of theta_{j+N} = exp(pi (N + 2j)) theta_j."""
    lhs = theta_eval(j + spec.N, z, spec)
    rhs = math.exp(math.pi * (spec.N + 2 * j)) * theta_eval(j, z, spec)
    return _relative(lhs, rhs)


@dataclass(frozen=True)
class GroupElement:
    """z -> s*z + (m + i n); s = -1 includes the symmetry sigma (applied first)."""

    m: int
    n: int
    s: int = 1

    def __post_init__(self):
        if self.s not in (1, -1):
            raise ValueError(f"s must be +1 or -1, got {self.s}")

    def act(self, z):
        return self.s * z + (self.m + 1j * self.n)

    def then(self, other: GroupElement) -> GroupElement:
        """The element 'apply self, then other'."""
        return GroupElement(other.s * self.m + other.m, other.s * self.n + other.n, other.s * self.s)


SIGMA = GroupElement(0, 0, -1)


def _log_translation(z, m: int, n: int, variant: str):
    """chi(z, m+in) as (parity, log |.|-and-phase part): chi = (-1)^parity exp(log)."""
    if variant not in ("standard", "mu-nu"):
        raise ValueError(f"unknown cocycle variant {variant!r}")
    parity = m * n + (m + n if variant == "mu-nu" else 0)
    return parity % 2, np.pi * (z * (m - 1j * n) + 0.5 * (m * m + n * n))


def _log_cocycle(z, g: GroupElement, variant: str):
    if g.s == 1:
        return _log_translation(z, g.m, g.n, variant)
    # chi(z, tau o sigma) = chi(z, sigma) chi(-z, tau), chi(z, sigma) = -1
    parity, log = _log_translation(-z, g.m, g.n, variant)
    return (parity + 1) % 2, log


def cocycle_eval(z, g: GroupElement, N: int = 1, variant: str = "standard"):
    """chi_N(z, g) = chi(z, g)^N for the line bundle over the pillow case.

    Translations use chi(z, m+in) = (-1)^{mn} exp(pi[z(m-in) + (m^2+n^2)/2]) and
    chi(z, sigma) = -1.  An element with s = -1 is tau o sigma, so
    chi(z, tau o sigma) = chi(z, sigma) chi(-z, tau).
    """
    parity, log = _log_cocycle(z, g, variant)
    return (-1) ** (N * parity) * np.exp(N * log)


def verify_cocycle(z, g: GroupElement, h: GroupElement, N: int = 1, variant: str = "standard") -> float:
    """Relative residual of chi(z, g) chi(g z, h) = chi(z, h g).

    Compared through logarithms, so large translations do not overflow.
    """
    pa, la = _log_cocycle(z, g, variant)
    pb, lb = _log_cocycle(g.act(z), h, variant)
    pc, lc = _log_cocycle(z, g.then(h), variant)
    sign = (-1) ** (N * (pa + pb - pc))
    return float(abs(sign * np.exp(N * (la + lb - lc)) - 1))


def hermitian_residual(z, m: int, n: int, variant: str = "standard") -> float:
    """Relative residual of |chi(z, m+in)| = h(z)/h(z+m+in), h = exp(-pi|z|^2/2)."""
    def h(w):
        return np.exp(-np.pi * abs(w) ** 2 / 2)

    lhs = abs(cocycle_eval(z, GroupElement(m, n), 1, variant))
    return _relative(lhs, h(z) / h(z + m + 1j * n))


def section_residual(j: int, z: complex, m: int, n: int, spec: ThetaSpec) -> float:
    """F(z) = exp(N pi z^2/2) theta_j(z) transforms by chi_N under translations."""
    N = spec.N

    def F(w):
        return np.exp(N * np.pi * w * w / 2) * theta_eval(j, w, spec)

    lhs = F(z + m + 1j * n)
    rhs = cocycle_eval(z, GroupElement(m, n), N) * F(z)
    return _relative(lhs, rhs)
