"""
Cosine operators and the sign twist
===================================

C(p,q) acts on the r-1 dimensional space spanned by V^1 .. V^{r-1}.
"""
import numpy as np

from pillowcase.qgroup import cosine_operator, kauffman_operator, op_mul, op_add, sine_operator
from pillowcase.qgroup import determinant, verify_product_to_sum
from pillowcase.cyclotomic import t_pow

r = 4
C10, C01 = cosine_operator(1, 0, r), cosine_operator(0, 1, r)
print("C(1,0) at t:\n", np.round(C10.to_complex(), 4))
print("C(0,1) at t:\n", np.round(C01.to_complex(), 4))

# product-to-sum: C(1,0) C(0,1) = t^D C(1,1) + t^-D C(1,-1), all in Z[t]
d = determinant(1, 0, 0, 1)
lhs = op_mul(C10, C01)
rhs = op_add(cosine_operator(1, 1, r).scale(t_pow(d, r)), cosine_operator(1, -1, r).scale(t_pow(-d, r)))
print("product-to-sum exact:", lhs == rhs, verify_product_to_sum(2, -1, 1, 3, r))

print("sine operator S(1,1):\n", np.round(sine_operator(1, 1, r).to_complex(), 4))

# (p,q)_T differs from C(p,q) by (-1)^q
for q in range(3):
    same = kauffman_operator(1, q, r) == cosine_operator(1, q, r)
    print(f"q={q}: (1,q)_T == C(1,q)? {same}")
