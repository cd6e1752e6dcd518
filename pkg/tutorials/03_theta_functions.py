"""
Theta functions on the torus
============================

Level-N theta functions, the odd combinations zeta_j, and their Gram matrix.
"""
import numpy as np

from pillowcase.theta import (
    ThetaSpec, theta_eval, zeta_eval, gram_matrix, theta_norm_sq,
    check_quasi_periodicity, GroupElement, verify_cocycle,
)

N = 8
spec = ThetaSpec.for_level(N)
print(spec)

z = 0.13 + 0.21j
print("theta_1(z) =", theta_eval(1, z, spec))
print("zeta_{r}(z) =", zeta_eval(N // 2, z, spec), "(identically zero)")
print("quasi-periodicity residual:", check_quasi_periodicity(1, 1, -1, z, spec))

# Gram matrix of zeta_1 .. zeta_{r-1}, computed by quadrature
G = gram_matrix(spec)
print("max |G - I| =", np.max(np.abs(G - np.eye(G.shape[0]))))
print("||theta_2||^2 =", theta_norm_sq(2, spec), "vs", np.exp(2 * np.pi * 4 / N) / np.sqrt(2 * N))

g, h = GroupElement(1, 2, -1), GroupElement(-1, 0, 1)
print("cocycle residual:", verify_cocycle(z, g, h))
