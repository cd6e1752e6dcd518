"""The noncommutative cosine algebra.

    c_{m,n} * c_{p,q} = t^D c_{m+p,n+q} + t^{-D} c_{m-p,n-q},   D = mq - np,

with t = exp(i pi / N).  Over :class:`~pillowcase.trigpoly.FormalRing` the
powers t^{+-D} are expanded in 1/N and the product is a formal deformation
whose order-k term is B_k(f, g).

Brackets and bidifferential operators below are computed on exponential
components: c_{m,n} = e_{(m,n)} + e_{(-m,-n)}, and any constant-coefficient
derivative acts on e_{(m,n)} = exp(2 pi i (m x + n y)) by multiplication.
Their coefficients are rational multiples of (i pi)^k, stored as
FormalSeries entries so they compare exactly with star-product terms.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .cyclotomic import CycloMatrix
from .qgroup import ExactOperator, cosine_operator, determinant
from .trigpoly import (
    ComplexRing,
    CyclotomicRing,
    FormalRing,
    FormalSeries,
    RingMismatch,
    TrigPolynomial,
)

__all__ = [
    "star",
    "formal_order",
    "poisson_bracket",
    "b1",
    "bk",
    "check_associativity",
    "CorrespondenceReport",
    "check_correspondence",
    "check_bk_exponential",
    "operator_image",
]


def star(f: TrigPolynomial, g: TrigPolynomial) -> TrigPolynomial:
    if f.ring != g.ring:
        raise RingMismatch(f"cannot multiply over {f.ring!r} and {g.ring!r}")
    ring = f.ring
    out = []
    for (m, n), a in f:
        for (p, q), b in g:
            d = determinant(m, n, p, q)
            ab = a * b
            out.append(((m + p, n + q), ring.t_pow(d) * ab))
            out.append(((m - p, n - q), ring.t_pow(-d) * ab))
    return TrigPolynomial(ring, out)


def formal_order(f: TrigPolynomial, k: int) -> TrigPolynomial:
    """The N^{-k} part of a formal polynomial, as a formal polynomial with
    only that order populated."""
    if not isinstance(f.ring, FormalRing):
        raise TypeError("formal_order needs formal coefficients")
    K = f.ring.K

    def pick(c: FormalSeries) -> FormalSeries:
        coeffs = [Fraction(0)] * (K + 1)
        coeffs[k] = c.order(k)
        return FormalSeries(K, coeffs)

    return f.map_coefficients(pick, f.ring)


def _exponentials(f: TrigPolynomial):
    for (p, q), c in f:
        yield (p, q), c
        if (p, q) != (0, 0):
            yield (-p, -q), c
        else:
            # c_{0,0} = 2 = e_0 + e_0
            yield (0, 0), c


def _formal_scalar(ring: FormalRing, k: int, rational: Fraction) -> FormalSeries:
    coeffs = [Fraction(0)] * (ring.K + 1)
    coeffs[k] = Fraction(rational)
    return FormalSeries(ring.K, coeffs)


def _collect(ring: FormalRing, pieces) -> TrigPolynomial:
    """Turn exponential terms (freq, coefficient) back into cosines.

    A real-symmetric combination sum a_v e_v with a_v = a_{-v} equals
    sum over representatives of a_v c_v (half weight at v = 0).
    """
    acc: dict[tuple[int, int], object] = {}
    for v, c in pieces:
        acc[v] = acc[v] + c if v in acc else c
    out = []
    for v, c in acc.items():
        if v < (0, 0) and (-v[0], -v[1]) not in acc and not c.is_zero():
            raise ArithmeticError(f"result is not a cosine polynomial at {v}")
        if v >= (0, 0):
            partner = acc.get((-v[0], -v[1]), ring.zero())
            if v != (0, 0) and partner != c:
                raise ArithmeticError(f"result is not a cosine polynomial at {v}")
            out.append((v, c * Fraction(1, 2) if v == (0, 0) else c))
    return TrigPolynomial(ring, out)


def _as_formal(f: TrigPolynomial, K: int) -> TrigPolynomial:
    if isinstance(f.ring, FormalRing):
        return f
    # only integer/rational inputs lift without loss
    return TrigPolynomial(FormalRing(K), [(k, c) for k, c in f])


def poisson_bracket(f: TrigPolynomial, g: TrigPolynomial) -> TrigPolynomial:
    """{f, g} = (1/i pi)(f_x g_y - f_y g_x), exactly.

    On exponentials: d/dx e_v = 2 pi i v_x e_v, so
    {e_a, e_b} = (2 pi i)^2 det(a, b) / (i pi) e_{a+b} = 4 (i pi) det(a, b) e_{a+b}.
    Coefficients are returned as rational multiples of (i pi)^1 (order-1
    FormalSeries entries).
    """
    if f.ring != g.ring or not isinstance(f.ring, FormalRing):
        raise RingMismatch("poisson_bracket needs two formal polynomials")
    ring = f.ring
    pieces = []
    for a, ca in _exponentials(f):
        for b, cb in _exponentials(g):
            d = determinant(a[0], a[1], b[0], b[1])
            if d:
                pieces.append(((a[0] + b[0], a[1] + b[1]), _formal_scalar(ring, 1, 4 * d) * ca * cb))
    return _collect(ring, pieces)


def bk(f: TrigPolynomial, g: TrigPolynomial, k: int) -> TrigPolynomial:
    """B_1^k / k! applied to f (x) g and restricted to the diagonal.

    B_1 = (1/4 pi i)(d_{x1} d_{y2} - d_{y1} d_{x2}).  Its k-th power is expanded
    binomially; on e_a (x) e_b each d_{x1} d_{y2} gives (2 pi i)^2 a_x b_y and
    (2 pi i)^2 / (4 pi i) = i pi.
    """
    if f.ring != g.ring or not isinstance(f.ring, FormalRing):
        raise RingMismatch("bk needs two formal polynomials")
    ring = f.ring
    if k > ring.K:
        raise ValueError(f"order {k} exceeds truncation {ring.K}")
    pieces = []
    for a, ca in _exponentials(f):
        for b, cb in _exponentials(g):
            u, w = a[0] * b[1], a[1] * b[0]
            total = sum(comb(k, i) * u**i * (-w) ** (k - i) for i in range(k + 1))
            if total:
                coeff = _formal_scalar(ring, k, Fraction(total, factorial(k)))
                pieces.append(((a[0] + b[0], a[1] + b[1]), coeff * ca * cb))
    return _collect(ring, pieces)


def b1(f: TrigPolynomial, g: TrigPolynomial) -> TrigPolynomial:
    return bk(f, g, 1)


def check_associativity(f: TrigPolynomial, g: TrigPolynomial, h: TrigPolynomial,
                        atol: float = 1e-10) -> bool:
    """(f*g)*h == f*(g*h); exact for exact/formal rings, within atol for complex."""
    lhs = star(star(f, g), h)
    rhs = star(f, star(g, h))
    if isinstance(f.ring, ComplexRing):
        return lhs.max_abs_diff(rhs) < atol
    return lhs == rhs


class CorrespondenceReport:
    """Order-1/N commutator against B_1 antisymmetrization and the Poisson bracket."""

    def __init__(self, commutator, b1_antisym, bracket):
        self.commutator = commutator
        self.b1_antisym = b1_antisym
        self.bracket = bracket
        self.matches_b1 = commutator == b1_antisym
        self.ratio = _ratio(commutator, bracket)

    def as_dict(self) -> dict:
        return {
            "commutator_equals_b1_antisymmetrization": self.matches_b1,
            "ratio_to_poisson_bracket": None if self.ratio is None else str(self.ratio),
        }


def _ratio(num: TrigPolynomial, den: TrigPolynomial):
    """The rational c with num == c * den at order 1; None when den is zero or
    the two are not proportional."""
    if den.is_zero() or set(num.terms) != set(den.terms):
        return None
    ratios = {num.terms[k].order(1) / den.terms[k].order(1) for k in den.terms}
    return ratios.pop() if len(ratios) == 1 else None


def check_correspondence(f: TrigPolynomial, g: TrigPolynomial, K: int = 8) -> CorrespondenceReport:
    f, g = _as_formal(f, K), _as_formal(g, K)
    comm = formal_order(star(f, g) - star(g, f), 1)
    return CorrespondenceReport(comm, b1(f, g) - b1(g, f), poisson_bracket(f, g))


def check_bk_exponential(f: TrigPolynomial, g: TrigPolynomial, K: int = 6) -> bool:
    """Order-k part of f*g equals B_1^k/k! (f, g) for every k <= K (B_0 = fg)."""
    if K > 10:
        raise ValueError("truncation order is limited to K <= 10")
    f, g = _as_formal(f, K), _as_formal(g, K)
    product = star(f, g)
    return all(formal_order(product, k) == bk(f, g, k) for k in range(K + 1))


def operator_image(f: TrigPolynomial) -> ExactOperator:
    """The operator sum a_{p,q} C(p,q) for an exact polynomial at level r."""
    if not isinstance(f.ring, CyclotomicRing):
        raise TypeError("operator_image needs cyclotomic coefficients")
    r = f.ring.r
    total = CycloMatrix.zeros(r - 1, r)
    for (p, q), c in f:
        total = total + cosine_operator(p, q, r).scale(c)
    return total
