"""
Two quantizations, one matrix
=============================

The Weyl quantization of 2cos(2pi(px+qy)), computed by quadrature in the
zeta basis, agrees with the exact cosine operator evaluated at t.
"""
import numpy as np

from pillowcase.theta import ThetaSpec
from pillowcase.weyl import weyl_cosine_matrix, toeplitz_monomial_closed_form, compare_with_qgroup
from pillowcase.qgroup import cosine_operator

r = 4
spec = ThetaSpec.for_level(2 * r, max_freq=3)

W = weyl_cosine_matrix(2, 1, spec, method="oracle")
C = cosine_operator(2, 1, r).to_complex()
print(np.round(W.entries, 6))
print(np.round(C, 6))

worst = max(compare_with_qgroup(p, q, r, spec).max_abs_deviation for p in range(-3, 4) for q in range(-3, 4))
print("worst deviation over |p|,|q| <= 3:", worst)

# a single Toeplitz monomial on theta_j lands on theta_{j+p} with a known scalar
k, scalar = toeplitz_monomial_closed_form(1, 1, 2, spec)
print(f"T(e(x+y)) theta_2 = {scalar:.6e} * theta_{k}")
