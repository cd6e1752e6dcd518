"""Exact arithmetic in Z[t], t = exp(i*pi/2r).

Elements live in the quotient ring Z[x]/(x^{2r} + 1).  The root of unity t
satisfies x^{2r} + 1 = 0, so evaluation at t is a ring homomorphism and every
identity proved here also holds numerically.  Equality is structural (dense
coefficient vectors of length 2r); use :meth:`CyclotomicElement.vanishes` when
you need equality modulo the full cyclotomic polynomial Phi_{4r}.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

import numpy as np

__all__ = [
    "CyclotomicElement",
    "CycloMatrix",
    "LevelMismatch",
    "t_pow",
    "quantum_integer",
    "to_complex",
    "cyclotomic_polynomial",
]

_INT64_HEADROOM = 2**62


class LevelMismatch(ValueError):
    """Raised when two objects defined at different levels are combined."""


def _check_level(r: int) -> None:
    if not isinstance(r, (int, np.integer)) or r < 3:
        raise ValueError(f"level r must be an integer >= 3, got {r!r}")


def _fold_exponent(e: int, r: int) -> tuple[int, int]:
    """Return (i, sign) with t^e = sign * t^i and 0 <= i < 2r."""
    e %= 4 * r
    if e >= 2 * r:
        return e - 2 * r, -1
    return e, 1


class CyclotomicElement:
    """An element of Z[x]/(x^{2r}+1), stored as 2r integer coefficients.

    ``coeffs[i]`` is the coefficient of t^i.  Instances are immutable and
    hashable.
    """

    __slots__ = ("_r", "_coeffs")

    def __init__(self, r: int, coeffs: Iterable[int] = ()):
        _check_level(r)
        c = [int(x) for x in coeffs]
        n = 2 * r
        if len(c) > n:
            # fold higher powers with t^{2r} = -1
            folded = [0] * n
            for i, x in enumerate(c):
                j, s = _fold_exponent(i, r)
                folded[j] += s * x
            c = folded
        else:
            c = c + [0] * (n - len(c))
        self._r = int(r)
        self._coeffs = tuple(c)

    @property
    def level_r(self) -> int:
        return self._r

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @classmethod
    def zero(cls, r: int) -> CyclotomicElement:
        return cls(r)

    @classmethod
    def one(cls, r: int) -> CyclotomicElement:
        return cls(r, [1])

    @classmethod
    def from_int(cls, n: int, r: int) -> CyclotomicElement:
        return cls(r, [n])

    def _coerce(self, other) -> CyclotomicElement:
        if isinstance(other, CyclotomicElement):
            if other._r != self._r:
                raise LevelMismatch(f"levels differ: r={self._r} vs r={other._r}")
            return other
        if isinstance(other, (int, np.integer)):
            return CyclotomicElement(self._r, [int(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement(self._r, [a + b for a, b in zip(self._coeffs, other._coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicElement:
        return CyclotomicElement(self._r, [-a for a in self._coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = 2 * self._r
        out = [0] * n
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                if b == 0:
                    continue
                k = i + j
                if k >= n:
                    out[k - n] -= a * b
                else:
                    out[k] += a * b
        return CyclotomicElement(self._r, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CyclotomicElement:
        if e < 0:
            raise ValueError("negative powers are only defined for monomials; use t_pow")
        result = CyclotomicElement.one(self._r)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            return self._coeffs == CyclotomicElement(self._r, [int(other)])._coeffs
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if other._r != self._r:
            raise LevelMismatch(f"levels differ: r={self._r} vs r={other._r}")
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._r, self._coeffs))

    def __bool__(self) -> bool:
        return any(self._coeffs)

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def shift(self, e: int) -> CyclotomicElement:
        """Multiply by t^e (cheap; a signed rotation of the coefficients)."""
        return self * t_pow(e, self._r)

    def conjugate(self) -> CyclotomicElement:
        """Complex conjugation, t -> t^{-1}."""
        out = [0] * (2 * self._r)
        for i, a in enumerate(self._coeffs):
            if a:
                j, s = _fold_exponent(-i, self._r)
                out[j] += s * a
        return CyclotomicElement(self._r, out)

    def to_complex(self) -> complex:
        return complex(np.dot(np.asarray(self._coeffs, dtype=float), _powers_of_t(self._r)))

    def vanishes(self) -> bool:
        """True iff the element is zero at t, i.e. divisible by Phi_{4r}."""
        rem = _poly_rem(list(self._coeffs), cyclotomic_polynomial(4 * self._r))
        return not any(rem)

    def to_json(self) -> dict:
        return {"r": self._r, "coeffs": list(self._coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> CyclotomicElement:
        r = int(data["r"])
        coeffs = data["coeffs"]
        if len(coeffs) != 2 * r:
            raise ValueError(f"expected {2 * r} coefficients, got {len(coeffs)}")
        return cls(r, coeffs)

    def __repr__(self) -> str:
        return f"CyclotomicElement(r={self._r}, {format_cyclotomic(self)!r})"

    def __str__(self) -> str:
        return format_cyclotomic(self)


def format_cyclotomic(a: CyclotomicElement) -> str:
    """Render as a signed sum of monomials, e.g. ``t^2 - 3*t^5``."""
    parts = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if i == 0:
            mono = str(abs(c))
        else:
            base = "t" if i == 1 else f"t^{i}"
            mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
        parts.append(("-" if c < 0 else "+", mono))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        text += f" {sign} {mono}"
    return text


@lru_cache(maxsize=None)
def _powers_of_t(r: int) -> np.ndarray:
    return np.exp(1j * np.pi * np.arange(2 * r) / (2 * r))


def t_pow(e: int, r: int) -> CyclotomicElement:
    """Canonical representative of t^e for any integer e."""
    _check_level(r)
    i, s = _fold_exponent(int(e), r)
    coeffs = [0] * (2 * r)
    coeffs[i] = s
    return CyclotomicElement(r, coeffs)


def quantum_integer(n: int, r: int) -> CyclotomicElement:
    """[n] = t^{2(n-1)} + t^{2(n-3)} + ... + t^{-2(n-1)}; [0] = 0, [-n] = -[n]."""
    _check_level(r)
    if n == 0:
        return CyclotomicElement.zero(r)
    if n < 0:
        return -quantum_integer(-n, r)
    coeffs = [0] * (2 * r)
    for e in range(-(n - 1), n, 2):
        i, s = _fold_exponent(2 * e, r)
        coeffs[i] += s
    return CyclotomicElement(r, coeffs)


def to_complex(a: CyclotomicElement) -> complex:
    return a.to_complex()


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


def _poly_rem(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic
    num = num[:]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return num[: len(den) - 1]


class CycloMatrix:
    """Square matrix over Z[t] at level r.

    Backed by an integer array of shape (n, n, 2r); the last axis holds the
    coefficients of t^0 .. t^{2r-1}.  Arithmetic uses int64 while the result
    provably fits and switches to Python integers otherwise.
    """

    __slots__ = ("r", "data")

    def __init__(self, r: int, data):
        _check_level(r)
        arr = np.asarray(data)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 2 * r:
            raise ValueError(f"expected shape (n, n, {2 * r}), got {arr.shape}")
        if arr.dtype != object and arr.dtype != np.int64:
            arr = arr.astype(np.int64)
        self.r = int(r)
        self.data = arr

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @classmethod
    def zeros(cls, n: int, r: int) -> CycloMatrix:
        return cls(r, np.zeros((n, n, 2 * r), dtype=np.int64))

    @classmethod
    def identity(cls, n: int, r: int) -> CycloMatrix:
        m = cls.zeros(n, r)
        m.data[np.arange(n), np.arange(n), 0] = 1
        return m

    @classmethod
    def from_entries(cls, rows, r: int) -> CycloMatrix:
        n = len(rows)
        m = cls(r, np.zeros((n, n, 2 * r), dtype=object))
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("matrix must be square")
            for j, x in enumerate(row):
                if isinstance(x, (int, np.integer)):
                    x = CyclotomicElement.from_int(int(x), r)
                elif x.level_r != r:
                    raise LevelMismatch(f"entry at level {x.level_r}, matrix at level {r}")
                m.data[i, j, :] = x.coeffs
        return m._compact()

    def _compact(self) -> CycloMatrix:
        if self.data.dtype == object:
            if self.data.size == 0 or np.max(np.abs(self.data)) < _INT64_HEADROOM:
                self.data = self.data.astype(np.int64)
        return self

    def _match(self, other: CycloMatrix) -> None:
        if not isinstance(other, CycloMatrix):
            raise TypeError(f"expected CycloMatrix, got {type(other).__name__}")
        if other.r != self.r:
            raise LevelMismatch(f"levels differ: r={self.r} vs r={other.r}")
        if other.dim != self.dim:
            raise ValueError(f"dimensions differ: {self.dim} vs {other.dim}")

    def __getitem__(self, idx: tuple[int, int]) -> CyclotomicElement:
        i, j = idx
        return CyclotomicElement(self.r, self.data[i, j, :].tolist())

    def entries(self) -> list[list[CyclotomicElement]]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def _maxabs(self) -> int:
        return int(np.max(np.abs(self.data))) if self.data.size else 0

    def __add__(self, other: CycloMatrix) -> CycloMatrix:
        self._match(other)
        if self._maxabs() + other._maxabs() >= _INT64_HEADROOM:
            return CycloMatrix(self.r, self.data.astype(object) + other.data.astype(object))
        return CycloMatrix(self.r, self.data + other.data)

    def __neg__(self) -> CycloMatrix:
        return CycloMatrix(self.r, -self.data)

    def __sub__(self, other: CycloMatrix) -> CycloMatrix:
        return self + (-other)

    def __matmul__(self, other: CycloMatrix) -> CycloMatrix:
        self._match(other)
        n, two_r = self.dim, 2 * self.r
        bound = self._maxabs() * other._maxabs() * n * two_r
        dtype = np.int64 if bound < _INT64_HEADROOM else object
        # shifted[a, j, k, :] = t^a * other[j, k]
        shifted = np.empty((two_r, n, n, two_r), dtype=dtype)
        b = other.data.astype(dtype)
        for a in range(two_r):
            shifted[a, :, :, a:] = b[:, :, : two_r - a]
            shifted[a, :, :, :a] = -b[:, :, two_r - a:]
        lhs = self.data.astype(dtype).reshape(n, n * two_r)
        rhs = shifted.transpose(1, 0, 2, 3).reshape(n * two_r, n * two_r)
        out = (lhs @ rhs).reshape(n, n, two_r)
        return CycloMatrix(self.r, out)._compact()

    def __pow__(self, e: int) -> CycloMatrix:
        if e < 0:
            raise ValueError("negative matrix powers are not supported")
        result = CycloMatrix.identity(self.dim, self.r)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def scale(self, c: CyclotomicElement | int) -> CycloMatrix:
        """Multiply every entry by the ring element c."""
        if isinstance(c, (int, np.integer)):
            return CycloMatrix(self.r, self.data * int(c))._compact()
        if c.level_r != self.r:
            raise LevelMismatch(f"levels differ: r={self.r} vs r={c.level_r}")
        diag = CycloMatrix.zeros(self.dim, self.r)
        diag.data[np.arange(self.dim), np.arange(self.dim), :] = c.coeffs
        return diag @ self

    def shift(self, e: int) -> CycloMatrix:
        """Multiply every entry by t^e."""
        i, s = _fold_exponent(int(e), self.r)
        two_r = 2 * self.r
        out = np.empty_like(self.data)
        out[:, :, i:] = self.data[:, :, : two_r - i]
        out[:, :, :i] = -self.data[:, :, two_r - i:]
        return CycloMatrix(self.r, s * out)

    def adjoint(self) -> CycloMatrix:
        """Conjugate transpose with t -> t^{-1}."""
        conj = np.empty_like(self.data)
        conj[:, :, 0] = self.data[:, :, 0]
        # t^{-i} = -t^{2r-i} for 0 < i < 2r
        conj[:, :, 1:] = -self.data[:, :, :0:-1]
        return CycloMatrix(self.r, conj.transpose(1, 0, 2).copy())

    def transpose(self) -> CycloMatrix:
        return CycloMatrix(self.r, self.data.transpose(1, 0, 2).copy())

    def to_complex(self) -> np.ndarray:
        return self.data.astype(float) @ _powers_of_t(self.r)

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        self._match(other)
        return bool(np.array_equal(self.data, other.data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"CycloMatrix(r={self.r}, dim={self.dim})"
