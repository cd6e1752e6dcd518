"""Cosine polynomials sum_{p,q} a_{p,q} c_{p,q} with c_{p,q} = 2 cos 2 pi (p x + q y).

Keys are canonical lattice representatives: p > 0, or p = 0 and q >= 0.  Since
c_{p,q} = c_{-p,-q}, any input key is folded onto its representative.
c_{0,0} is the constant 2.

Coefficients come from a pluggable ring:

* :class:`ComplexRing` - complex numbers, t = exp(i pi / N) as a float.
* :class:`CyclotomicRing` - :class:`~pillowcase.cyclotomic.CyclotomicElement`
  at level r, t exact.
* :class:`FormalRing` - truncated series in 1/N, see :class:`FormalSeries`.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .cyclotomic import CyclotomicElement, t_pow

__all__ = [
    "canonical_key",
    "FormalSeries",
    "ComplexRing",
    "CyclotomicRing",
    "FormalRing",
    "RingMismatch",
    "TrigPolynomial",
]


class RingMismatch(ValueError):
    """Raised when polynomials over different coefficient rings are combined."""


def canonical_key(p: int, q: int) -> tuple[tuple[int, int], int]:
    """Return the representative of (p, q) and +1/-1 saying whether it was negated."""
    if p > 0 or (p == 0 and q >= 0):
        return (p, q), 1
    return (-p, -q), -1


class FormalSeries:
    """Truncated series sum_{k<=K} a_k (i pi / N)^k with rational a_k.

    The symbolic factor (i pi)^k is implicit in the position of a_k, so the
    order-k coefficient always carries exactly the k-th power of i pi.
    """

    __slots__ = ("K", "coeffs")

    def __init__(self, K: int, coeffs: Iterable = ()):
        if K < 0:
            raise ValueError("truncation order must be >= 0")
        c = [Fraction(x) for x in coeffs][: K + 1]
        self.K = K
        self.coeffs = tuple(c + [Fraction(0)] * (K + 1 - len(c)))

    @classmethod
    def t_pow(cls, D: int, K: int) -> FormalSeries:
        """t^D = exp(i pi D / N) = sum_k D^k/k! (i pi/N)^k."""
        return cls(K, [Fraction(D**k, math.factorial(k)) for k in range(K + 1)])

    def _match(self, other) -> FormalSeries:
        if isinstance(other, (int, Fraction)):
            return FormalSeries(self.K, [other])
        if not isinstance(other, FormalSeries):
            return NotImplemented
        if other.K != self.K:
            raise RingMismatch(f"truncation orders differ: {self.K} vs {other.K}")
        return other

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return FormalSeries(self.K, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> FormalSeries:
        return FormalSeries(self.K, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        out = [Fraction(0)] * (self.K + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.K + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return FormalSeries(self.K, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._match(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.K, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order(self, k: int) -> Fraction:
        """Rational multiplier of (i pi)^k N^{-k}."""
        return self.coeffs[k]

    def evaluate(self, N: float) -> complex:
        h = 1j * math.pi / N
        return complex(sum(complex(float(a)) * h**k for k, a in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        return f"FormalSeries(K={self.K}, {format_series(self)!r})"


def format_series(s: FormalSeries) -> str:
    """Text form with h standing for i*pi/N, e.g. ``1 + 1/2*h^2``."""
    parts = []
    for k, a in enumerate(s.coeffs):
        if a == 0:
            continue
        mag = abs(a)
        if k == 0:
            mono = str(mag)
        else:
            base = "h" if k == 1 else f"h^{k}"
            mono = base if mag == 1 else f"{mag}*{base}"
        parts.append(("-" if a < 0 else "+", mono))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        text += f" {sign} {mono}"
    return text


class ComplexRing:
    name = "complex"

    def __init__(self, N: int):
        self.N = N
        self._t = cmath.exp(1j * math.pi / N)

    def zero(self) -> complex:
        return 0j

    def from_int(self, n: int) -> complex:
        return complex(n)

    def t_pow(self, D: int) -> complex:
        return cmath.exp(1j * math.pi * D / self.N)

    def is_zero(self, c) -> bool:
        return c == 0

    def coerce(self, c) -> complex:
        return complex(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, ComplexRing) and other.N == self.N

    def __hash__(self) -> int:
        return hash(("complex", self.N))

    def __repr__(self) -> str:
        return f"ComplexRing(N={self.N})"


class CyclotomicRing:
    name = "exact"

    def __init__(self, r: int):
        self.r = r

    @property
    def N(self) -> int:
        return 2 * self.r

    def zero(self) -> CyclotomicElement:
        return CyclotomicElement.zero(self.r)

    def from_int(self, n: int) -> CyclotomicElement:
        return CyclotomicElement.from_int(n, self.r)

    def t_pow(self, D: int) -> CyclotomicElement:
        return t_pow(D, self.r)

    def is_zero(self, c) -> bool:
        return c.is_zero()

    def coerce(self, c) -> CyclotomicElement:
        if isinstance(c, (int, np.integer)):
            return self.from_int(int(c))
        if not isinstance(c, CyclotomicElement) or c.level_r != self.r:
            raise RingMismatch(f"{c!r} is not an element of Z[t] at r={self.r}")
        return c

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicRing) and other.r == self.r

    def __hash__(self) -> int:
        return hash(("exact", self.r))

    def __repr__(self) -> str:
        return f"CyclotomicRing(r={self.r})"


class FormalRing:
    name = "formal"

    def __init__(self, K: int = 8):
        self.K = K

    def zero(self) -> FormalSeries:
        return FormalSeries(self.K)

    def from_int(self, n: int) -> FormalSeries:
        return FormalSeries(self.K, [n])

    def t_pow(self, D: int) -> FormalSeries:
        return FormalSeries.t_pow(D, self.K)

    def is_zero(self, c) -> bool:
        return c.is_zero()

    def coerce(self, c) -> FormalSeries:
        if isinstance(c, (int, Fraction)):
            return FormalSeries(self.K, [c])
        if not isinstance(c, FormalSeries) or c.K != self.K:
            raise RingMismatch(f"{c!r} is not a series truncated at K={self.K}")
        return c

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalRing) and other.K == self.K

    def __hash__(self) -> int:
        return hash(("formal", self.K))

    def __repr__(self) -> str:
        return f"FormalRing(K={self.K})"


class TrigPolynomial:
    """Finite combination of c_{p,q} over a coefficient ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms: Mapping[tuple[int, int], object] | Iterable = ()):
        self.ring = ring
        acc: dict[tuple[int, int], object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (p, q), c in items:
            key, _ = canonical_key(int(p), int(q))
            c = ring.coerce(c)
            acc[key] = acc[key] + c if key in acc else c
        self.terms = {k: v for k, v in sorted(acc.items()) if not ring.is_zero(v)}

    @classmethod
    def basis(cls, ring, p: int, q: int, coeff=1) -> TrigPolynomial:
        return cls(ring, {(p, q): coeff})

    @classmethod
    def zero(cls, ring) -> TrigPolynomial:
        return cls(ring)

    def _check(self, other: TrigPolynomial) -> None:
        if not isinstance(other, TrigPolynomial):
            raise TypeError(f"expected TrigPolynomial, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other: TrigPolynomial) -> TrigPolynomial:
        self._check(other)
        return TrigPolynomial(self.ring, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> TrigPolynomial:
        return TrigPolynomial(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: TrigPolynomial) -> TrigPolynomial:
        return self + (-other)

    def scale(self, c) -> TrigPolynomial:
        c = self.ring.coerce(c)
        return TrigPolynomial(self.ring, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def map_coefficients(self, fn, ring) -> TrigPolynomial:
        return TrigPolynomial(ring, {k: fn(v) for k, v in self.terms.items()})

    def to_complex(self, N: int | None = None) -> TrigPolynomial:
        """Numeric image; formal series are summed at level N."""
        if isinstance(self.ring, ComplexRing):
            return self
        if isinstance(self.ring, CyclotomicRing):
            return self.map_coefficients(lambda c: c.to_complex(), ComplexRing(self.ring.N))
        if N is None:
            raise ValueError("a level N is needed to evaluate formal coefficients")
        return self.map_coefficients(lambda c: c.evaluate(N), ComplexRing(N))

    def max_abs_diff(self, other: TrigPolynomial) -> float:
        """Largest coefficient difference between two complex polynomials."""
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys), default=0.0)

    def __call__(self, x, y):
        """Evaluate as a function (complex coefficients only)."""
        total = 0
        for (p, q), c in self.terms.items():
            total = total + complex(c) * 2 * np.cos(2 * np.pi * (p * x + q * y))
        return total

    def __repr__(self) -> str:
        from .serialize import format_polynomial

        return f"TrigPolynomial({self.ring!r}, {format_polynomial(self)!r})"
