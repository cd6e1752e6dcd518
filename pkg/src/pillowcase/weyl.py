"""Weyl quantization of the pillow case as Toeplitz operators on H_N.

Weyl quantization with symbol f equals Toeplitz quantization with symbol
exp(-Delta/4N) f, where Delta = (1/2pi)(d_xx + d_yy).  On c_{p,q} this is the
scalar factor exp(pi (p^2 + q^2) / 2N).

Toeplitz matrix elements between theta functions have a closed form.  With
0 <= j < N and k = (j + p) mod N,

    T_{exp 2 pi i (p x + q y)} theta_j
        = exp(-pi (p^2 + q^2) / 2N) exp(pi (j^2 - k^2) / N)
          exp(-i pi q (2j + p) / N) theta_k.

The formula comes from completing the square in the y integral and refolding
theta_{j+p} = exp(pi(N g^2 + 2 k g)) theta_k, j + p = k + gN.  It is checked
against the quadrature oracle in :mod:`pillowcase.theta`.  The regime labels
"p0"/"p1" say whether the target index was reached without (j + p0 < N) or
with (j + p0 >= N) a wrap, where p0 = p mod N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import CycloMatrix
from .qgroup import cosine_operator
from .theta import ThetaSpec, monomial_table
from .trigpoly import TrigPolynomial

__all__ = [
    "ComplexMatrix",
    "SymbolMonomial",
    "lemma_regime",
    "toeplitz_monomial_closed_form",
    "weyl_symbol_factor",
    "weyl_cosine_matrix",
    "op_matrix",
    "EquivalenceReport",
    "compare_with_qgroup",
]


@dataclass
class ComplexMatrix:
    entries: np.ndarray
    basis: str = "zeta_1..r-1"

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other: ComplexMatrix) -> ComplexMatrix:
        if other.basis != self.basis:
            raise ValueError(f"basis tags differ: {self.basis} vs {other.basis}")
        return ComplexMatrix(self.entries + other.entries, self.basis)

    def scale(self, c: complex) -> ComplexMatrix:
        return ComplexMatrix(c * self.entries, self.basis)

    def max_abs_diff(self, other) -> float:
        b = other.entries if isinstance(other, ComplexMatrix) else np.asarray(other)
        return float(np.max(np.abs(self.entries - b))) if self.entries.size else 0.0


@dataclass(frozen=True)
class SymbolMonomial:
    """exp(sign * 2 pi i (p x + q y))."""

    p: int
    q: int
    sign: int = 1

    def frequencies(self) -> tuple[int, int]:
        return self.sign * self.p, self.sign * self.q


def weyl_symbol_factor(p: int, q: int, N: int) -> float:
    """exp(-Delta/4N) acting on c_{p,q}: multiplication by exp(pi (p^2+q^2) / 2N)."""
    return math.exp(math.pi * (p * p + q * q) / (2 * N))


def lemma_regime(p: int, j: int, N: int) -> tuple[str, int]:
    """Return ("p0", p0) when j + p0 < N, else ("p1", p1 = p0 - N).

    p0 = p mod N; in both cases the target index is j + p_eff in 0..N-1.
    """
    p0 = p % N
    if j + p0 < N:
        return "p0", p0
    return "p1", p0 - N


def toeplitz_monomial_closed_form(p: int, q: int, j: int, spec: ThetaSpec) -> tuple[int, complex]:
    """Target index k and scalar s with T_{e^{2 pi i(px+qy)}} theta_j = s theta_k.

    s equals <e^{2 pi i (px+qy)} theta_j, theta_k> / ||theta_k||^2.
    """
    N = spec.N
    if not 0 <= j < N:
        raise ValueError(f"j must lie in 0..{N - 1}, got {j}")
    _, p_eff = lemma_regime(p, j, N)
    k = j + p_eff
    log_mag = -math.pi * (p * p + q * q) / (2 * N) + math.pi * (j * j - k * k) / N
    phase = -math.pi * q * (2 * j + p) / N
    return k, complex(math.exp(log_mag) * complex(math.cos(phase), math.sin(phase)))


def _zeta_in_theta(j: int, N: int) -> dict[int, float]:
    """zeta_j expanded in theta_0..theta_{N-1} (1 <= j < N/2)."""
    c = (N / 2) ** 0.25 * math.exp(-math.pi * j * j / N)
    # theta_{-j} = exp(-pi (N - 2j)) theta_{N-j}
    return {j: c, N - j: -c * math.exp(-math.pi * (N - 2 * j))}


def _closed_form_matrix(p: int, q: int, spec: ThetaSpec) -> np.ndarray:
    N, r = spec.N, spec.r
    out = np.zeros((r - 1, r - 1), dtype=complex)
    for j in range(1, r):
        image = np.zeros(N, dtype=complex)
        for src, coeff in _zeta_in_theta(j, N).items():
            for a, b in ((p, q), (-p, -q)):
                k, s = toeplitz_monomial_closed_form(a, b, src, spec)
                image[k] += coeff * s
        # coordinates in the zeta basis: theta_k (1 <= k < r) appears only in zeta_k
        for k in range(1, r):
            out[k - 1, j - 1] = image[k] / _zeta_in_theta(k, N)[k]
    return out


def _oracle_matrix(p: int, q: int, spec: ThetaSpec) -> np.ndarray:
    idx = range(1, spec.r)
    return monomial_table(p, q, idx, spec) + monomial_table(-p, -q, idx, spec)


def weyl_cosine_matrix(p: int, q: int, spec: ThetaSpec, method: str = "oracle") -> ComplexMatrix:
    """Matrix of op_N(2 cos 2 pi (p x + q y)) in the orthonormal zeta basis.

    ``method="oracle"`` integrates <2cos * zeta_j, zeta_k> by quadrature;
    ``method="closed_form"`` assembles it from the theta-level closed form.
    """
    if method == "oracle":
        body = _oracle_matrix(p, q, spec)
    elif method == "closed_form":
        body = _closed_form_matrix(p, q, spec)
    else:
        raise ValueError(f"method must be 'oracle' or 'closed_form', got {method!r}")
    return ComplexMatrix(weyl_symbol_factor(p, q, spec.N) * body)


def op_matrix(f: TrigPolynomial, spec: ThetaSpec, method: str = "oracle") -> ComplexMatrix:
    """op_N(f) for a cosine polynomial f with complex coefficients."""
    total = ComplexMatrix(np.zeros((spec.r - 1, spec.r - 1), dtype=complex))
    for (p, q), c in f:
        total = total + weyl_cosine_matrix(p, q, spec, method).scale(complex(c))
    return total


@dataclass
class EquivalenceReport:
    p: int
    q: int
    r: int
    max_abs_deviation: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.max_abs_deviation < self.tol


def compare_with_qgroup(p: int, q: int, r: int, spec: ThetaSpec | None = None,
                        tol: float = 1e-8, method: str = "oracle") -> EquivalenceReport:
    """Entrywise distance between op_N(c_{p,q}) and C(p,q) evaluated at t."""
    if spec is None:
        spec = ThetaSpec.for_level(2 * r, max_freq=max(6, abs(p)))
    if spec.N != 2 * r:
        raise ValueError(f"level mismatch: N={spec.N} but r={r}")
    weyl = weyl_cosine_matrix(p, q, spec, method)
    exact: CycloMatrix = cosine_operator(p, q, r)
    return EquivalenceReport(p, q, r, weyl.max_abs_diff(exact.to_complex()), tol)

