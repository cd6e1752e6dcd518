"""Text and JSON formats for polynomials and operator matrices.

Polynomial text uses ``c(p,q)`` for 2cos 2pi(px+qy) with a coefficient in
front, e.g. ``2*c(1,0) + t^3*c(2,-1)`` over Z[t], ``1/2*h^2*c(1,1)`` for formal
series (h = i pi/N) and ``(0.5+0.25j)*c(0,1)`` for complex numbers.  Terms are
emitted in canonical key order, so the output is stable across runs.
"""
from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .cyclotomic import CycloMatrix, CyclotomicElement, format_cyclotomic, t_pow
from .trigpoly import (
    ComplexRing,
    CyclotomicRing,
    FormalRing,
    FormalSeries,
    TrigPolynomial,
    format_series,
)
from .weyl import ComplexMatrix

__all__ = [
    "format_polynomial",
    "parse_polynomial",
    "emit_matrix",
    "parse_matrix",
    "emit_polynomial",
    "parse_polynomial_json",
]

_TERM = re.compile(r"^(?:(?P<coef>.*?)\s*\*\s*)?c\(\s*(?P<p>[+-]?\d+)\s*,\s*(?P<q>[+-]?\d+)\s*\)$")
_MONO = re.compile(
    r"^(?P<num>\d+(?:/\d+)?)?\s*(?:\*\s*)?(?:(?P<var>[th])(?:\^(?P<exp>[+-]?\d+))?)?$"
)


def _coef_text(ring, c) -> str:
    if isinstance(ring, ComplexRing):
        return repr(complex(c))
    if isinstance(ring, CyclotomicRing):
        return format_cyclotomic(c)
    return format_series(c)


def format_polynomial(f: TrigPolynomial) -> str:
    if f.is_zero():
        return "0"
    out = ""
    for (p, q), c in f:
        text = _coef_text(f.ring, c)
        basis = f"c({p},{q})"
        simple = " " not in text and not isinstance(f.ring, ComplexRing)
        sign = "+"
        if simple and text.startswith("-"):
            sign, text = "-", text[1:]
        if simple:
            term = basis if text == "1" else f"{text}*{basis}"
        else:
            term = f"{text}*{basis}" if text.startswith("(") else f"({text})*{basis}"
        if not out:
            out = ("-" if sign == "-" else "") + term
        else:
            out += f" {sign} {term}"
    return out


def _split_top(text: str) -> list[tuple[int, str]]:
    """Split on + and - at parenthesis depth 0, keeping signs; '^-' and
    exponent signs ('1e-5') stay attached."""
    parts, depth, start, sign = [], 0, 0, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            prev = text[:i].rstrip()
            if prev and prev[-1] not in "^eE*":
                parts.append((sign, text[start:i].strip()))
                sign, start = (1 if ch == "+" else -1), i + 1
            elif not prev:
                sign, start = (1 if ch == "+" else -1), i + 1
        i += 1
    parts.append((sign, text[start:].strip()))
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    return [(s, t) for s, t in parts if t]


def _parse_coefficient(text: str, ring):
    text = text.strip()
    if not text:
        return ring.from_int(1)
    if isinstance(ring, ComplexRing):
        return complex(text.replace(" ", ""))
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    total = ring.zero()
    for sign, mono in _split_top(text):
        m = _MONO.match(mono)
        if not m or (m.group("num") is None and m.group("var") is None):
            raise ValueError(f"cannot parse monomial {mono!r}")
        num = Fraction(m.group("num") or 1)
        var = m.group("var")
        exp = int(m.group("exp") or (1 if var else 0))
        if isinstance(ring, CyclotomicRing):
            if var == "h" or num.denominator != 1:
                raise ValueError(f"{mono!r} is not an element of Z[t]")
            term = t_pow(exp, ring.r) * int(num) if var else ring.from_int(int(num))
        else:
            if var == "t":
                raise ValueError(f"formal coefficients use h = i*pi/N, got {mono!r}")
            if exp < 0:
                raise ValueError(f"negative order in {mono!r}")
            coeffs = [Fraction(0)] * (ring.K + 1)
            if exp <= ring.K:
                coeffs[exp] = num
            term = FormalSeries(ring.K, coeffs)
        total = total + (term if sign > 0 else -term)
    return total


def parse_polynomial(text: str, ring) -> TrigPolynomial:
    """Inverse of :func:`format_polynomial` for the given ring."""
    text = text.strip()
    if text == "0":
        return TrigPolynomial.zero(ring)
    terms = []
    for sign, body in _split_top(text):
        m = _TERM.match(body)
        if not m:
            raise ValueError(f"cannot parse term {body!r}")
        coef = _parse_coefficient(m.group("coef") or "", ring)
        terms.append(((int(m.group("p")), int(m.group("q"))), coef if sign > 0 else -coef))
    return TrigPolynomial(ring, terms)


def _ring_descriptor(ring) -> dict:
    if isinstance(ring, CyclotomicRing):
        return {"mode": "exact", "r": ring.r}
    if isinstance(ring, FormalRing):
        return {"mode": "formal", "K": ring.K}
    return {"mode": "complex", "N": ring.N}


def emit_polynomial(f: TrigPolynomial) -> dict:
    return {**_ring_descriptor(f.ring), "expr": format_polynomial(f)}


def parse_polynomial_json(data: dict) -> TrigPolynomial:
    mode = data["mode"]
    if mode == "exact":
        ring = CyclotomicRing(int(data["r"]))
    elif mode == "formal":
        ring = FormalRing(int(data["K"]))
    elif mode == "complex":
        ring = ComplexRing(int(data["N"]))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return parse_polynomial(data["expr"], ring)


def emit_matrix(m, r: int | None = None) -> dict:
    """JSON payload for an exact operator or a complex matrix."""
    if isinstance(m, CycloMatrix):
        return {
            "r": m.r,
            "basis": "zeta_ascending",
            "exact": [[[int(c) for c in m.data[i, j]] for j in range(m.dim)] for i in range(m.dim)],
        }
    if isinstance(m, ComplexMatrix):
        return {
            "r": r if r is not None else m.dim + 1,
            "basis": m.basis,
            "complex": [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in m.entries],
        }
    raise TypeError(f"cannot serialize {type(m).__name__}")


def parse_matrix(data: dict):
    r = int(data["r"])
    if "exact" in data:
        rows = [[CyclotomicElement.from_json({"r": r, "coeffs": e}) for e in row] for row in data["exact"]]
        return CycloMatrix.from_entries(rows, r)
    if "complex" in data:
        entries = np.array([[complex(e["re"], e["im"]) for e in row] for row in data["complex"]], dtype=complex)
        return ComplexMatrix(entries.reshape(len(entries), -1), data["basis"])
    raise ValueError("matrix payload needs an 'exact' or 'complex' field")
