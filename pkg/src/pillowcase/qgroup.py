"""Quantum-group quantization of the pillow case.

Operators act on the basis V^1(alpha), ..., V^{r-1}(alpha), identified with
zeta_1, ..., zeta_{r-1}.  Row/column i-1 of every matrix corresponds to basis
vector i (ascending order, the ``zeta_ascending`` convention).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .cyclotomic import CycloMatrix, CyclotomicElement, LevelMismatch, t_pow

__all__ = [
    "ExactOperator",
    "ReducedIndex",
    "ZERO",
    "reduce_index",
    "cosine_operator",
    "sine_operator",
    "sine_chain",
    "kauffman_operator",
    "identity_operator",
    "op_add",
    "op_mul",
    "op_scale",
    "op_adjoint",
    "verify_product_to_sum",
    "determinant",
]

ExactOperator = CycloMatrix


@dataclass(frozen=True)
class ReducedIndex:
    """A basis index folded into 1..r-1 with a sign, or the zero vector."""

    value: int | None
    sign: int = 1

    @property
    def is_zero(self) -> bool:
        return self.value is None


ZERO = ReducedIndex(None, 0)


def reduce_index(k: int, r: int) -> ReducedIndex:
    """Fold k using V^{n+2r} = V^n, V^{r+n} = -V^{r-n} and V^r = V^0 = 0."""
    if r < 3:
        raise ValueError(f"level r must be >= 3, got {r}")
    kk = k % (2 * r)
    if kk == 0 or kk == r:
        return ZERO
    if kk > r:
        return ReducedIndex(2 * r - kk, -1)
    return ReducedIndex(kk, 1)


def determinant(m: int, n: int, p: int, q: int) -> int:
    return m * q - n * p


def identity_operator(r: int) -> ExactOperator:
    return CycloMatrix.identity(r - 1, r)


def _accumulate(op: ExactOperator, target: int, col: int, coeff: CyclotomicElement, r: int) -> None:
    red = reduce_index(target, r)
    if red.is_zero:
        return
    op.data[red.value - 1, col - 1, :] += red.sign * np.asarray(coeff.coeffs, dtype=np.int64)


@lru_cache(maxsize=4096)
def _cosine_cached(p: int, q: int, r: int) -> ExactOperator:
    op = CycloMatrix.zeros(r - 1, r)
    for k in range(1, r):
        _accumulate(op, k - p, k, t_pow(-p * q + 2 * q * k, r), r)
        _accumulate(op, k + p, k, t_pow(-p * q - 2 * q * k, r), r)
    op.data.flags.writeable = False
    return op


def cosine_operator(p: int, q: int, r: int) -> ExactOperator:
    """C(p,q) V^k = t^{-pq} (t^{2qk} V^{k-p} + t^{-2qk} V^{k+p})."""
    if r < 3:
        raise ValueError(f"level r must be >= 3, got {r}")
    return _cosine_cached(int(p), int(q), int(r))


def sine_chain(p: int, q: int, n: int, r: int) -> ExactOperator:
    """S_n for the primitive direction (p, q): S_0 = 0, S_1 = I,
    S_{m+1} = C(m p, m q) + S_{m-1}."""
    if n < 0:
        raise ValueError(f"coloring index must be >= 0, got {n}")
    prev, cur = CycloMatrix.zeros(r - 1, r), identity_operator(r)
    if n == 0:
        return prev
    for m in range(1, n):
        prev, cur = cur, cosine_operator(m * p, m * q, r) + prev
    return cur


def sine_operator(p: int, q: int, r: int) -> ExactOperator:
    """Quantization of sin 2*pi*n(p'x+q'y) / sin 2*pi(p'x+q'y), n = gcd(p, q)."""
    if p == 0 and q == 0:
        raise ValueError("S(0, 0) is undefined: (0, 0) is not a curve slope")
    n = gcd(p, q)
    return sine_chain(p // n, q // n, n, r)


def kauffman_operator(p: int, q: int, r: int) -> ExactOperator:
    """(p,q)_T acting on the Jones-Wenzl basis S_{k-1}(alpha), k = 1..r-1.

    Built from its own action formula, (-1)^q t^{-pq}(t^{2qk} S_{k-p-1} +
    t^{-2qk} S_{k+p-1}), not by rescaling C(p,q).
    """
    if r < 3:
        raise ValueError(f"level r must be >= 3, got {r}")
    sign = -1 if q % 2 else 1
    op = CycloMatrix.zeros(r - 1, r)
    for k in range(1, r):
        # slot k holds S_{k-1}; S_{k-p-1} sits in slot k-p
        _accumulate(op, k - p, k, sign * t_pow(-p * q + 2 * q * k, r), r)
        _accumulate(op, k + p, k, sign * t_pow(-p * q - 2 * q * k, r), r)
    return op


def op_add(a: ExactOperator, b: ExactOperator) -> ExactOperator:
    return a + b


def op_mul(a: ExactOperator, b: ExactOperator) -> ExactOperator:
    return a @ b


def op_scale(c: CyclotomicElement | int, a: ExactOperator) -> ExactOperator:
    if isinstance(c, CyclotomicElement) and c.level_r != a.r:
        raise LevelMismatch(f"levels differ: r={c.level_r} vs r={a.r}")
    return a.scale(c)


def op_adjoint(a: ExactOperator) -> ExactOperator:
    return a.adjoint()


def verify_product_to_sum(m: int, n: int, p: int, q: int, r: int) -> bool:
    """C(m,n) C(p,q) == t^D C(m+p, n+q) + t^-D C(m-p, n-q), D = mq - np, exactly."""
    d = determinant(m, n, p, q)
    lhs = cosine_operator(m, n, r) @ cosine_operator(p, q, r)
    rhs = cosine_operator(m + p, n + q, r).shift(d) + cosine_operator(m - p, n - q, r).shift(-d)
    return lhs == rhs
