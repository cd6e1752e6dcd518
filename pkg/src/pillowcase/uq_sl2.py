"""Representation matrices of U_t(sl2) on V^k at t = exp(i*pi/2r).

Weights are indexed by doubled values w = 2j in {-(k-1), -(k-3), ..., k-1},
ascending, so every index is an integer.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycloMatrix, quantum_integer, t_pow

__all__ = ["RepMatrices", "RelationReport", "build_rep", "verify_relations", "weights"]


def weights(k: int) -> list[int]:
    """Doubled weights 2j of the basis e_j of V^k, ascending."""
    return list(range(-(k - 1), k, 2))


@dataclass(frozen=True)
class RepMatrices:
    k: int
    r: int
    X: CycloMatrix
    Y: CycloMatrix
    K: CycloMatrix

    @property
    def weights(self) -> list[int]:
        return weights(self.k)


@dataclass(frozen=True)
class RelationReport:
    k: int
    r: int
    kx_commutation: bool
    ky_commutation: bool
    xy_commutator: bool
    nilpotent: bool
    k_order: bool

    @property
    def all_hold(self) -> bool:
        return all(
            (self.kx_commutation, self.ky_commutation, self.xy_commutator, self.nilpotent, self.k_order)
        )

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "KX=t^2XK": self.kx_commutation,
            "KY=t^-2YK": self.ky_commutation,
            "[X,Y]=(K^2-K^-2)/(t^2-t^-2)": self.xy_commutator,
            "X^r=Y^r=0": self.nilpotent,
            "K^4r=1": self.k_order,
        }


def build_rep(k: int, r: int) -> RepMatrices:
    if r < 3:
        raise ValueError(f"level r must be >= 3, got {r}")
    if not 1 <= k <= r - 1:
        raise ValueError(f"dimension k must lie in 1..{r - 1}, got {k}")
    w = weights(k)
    top = k - 1  # 2m
    X = CycloMatrix.zeros(k, r)
    Y = CycloMatrix.zeros(k, r)
    K = CycloMatrix.zeros(k, r)
    for a, wa in enumerate(w):
        K.data[a, a, :] = t_pow(wa, r).coeffs
        # X e_j = [m+j+1] e_{j+1}; column a maps to row a+1
        if a + 1 < k:
            X.data[a + 1, a, :] = quantum_integer((top + wa) // 2 + 1, r).coeffs
        # Y e_j = [m-j+1] e_{j-1}
        if a - 1 >= 0:
            Y.data[a - 1, a, :] = quantum_integer((top - wa) // 2 + 1, r).coeffs
    return RepMatrices(k=k, r=r, X=X, Y=Y, K=K)


def _diag(values, r: int) -> CycloMatrix:
    n = len(values)
    m = CycloMatrix.zeros(n, r)
    for a, v in enumerate(values):
        m.data[a, a, :] = v.coeffs
    return m


def verify_relations(k: int, r: int) -> RelationReport:
    """Check the defining relations exactly on V^k.

    The commutator relation is checked twice, both division free: as
    (XY - YX)(t^2 - t^-2) = K^2 - K^-2 and against the diagonal of quantum
    integers [2j].
    """
    rep = build_rep(k, r)
    X, Y, K = rep.X, rep.Y, rep.K
    w = rep.weights
    K_inv = _diag([t_pow(-wa, r) for wa in w], r)
    ident = CycloMatrix.identity(k, r)

    kx = K @ X == (X @ K).shift(2)
    ky = K @ Y == (Y @ K).shift(-2)

    comm = X @ Y - Y @ X
    scaled = comm.shift(2) - comm.shift(-2)
    cleared = scaled == K @ K - K_inv @ K_inv
    diagonal = comm == _diag([quantum_integer(wa, r) for wa in w], r)

    nil = (X ** r).is_zero() and (Y ** r).is_zero()
    order = K ** (4 * r) == ident
    return RelationReport(k, r, kx, ky, cleared and diagonal, nil, order)
