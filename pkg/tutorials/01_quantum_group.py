"""
Exact arithmetic at a root of unity
===================================

Everything on the quantum group side lives in Z[t] with t = exp(i pi / 2r).
"""
from pillowcase.cyclotomic import quantum_integer, t_pow, to_complex, format_cyclotomic
from pillowcase.uq_sl2 import build_rep, verify_relations

r = 5

# t^{2r} = -1 holds structurally in the ring
print("t^10 =", format_cyclotomic(t_pow(2 * r, r)))

# quantum integers [n] vanish at n = r
for n in range(1, r + 1):
    qn = quantum_integer(n, r)
    print(f"[{n}] = {format_cyclotomic(qn):>24}  ~ {to_complex(qn).real:+.6f}")

# the k-dimensional representation and its defining relations
rep = build_rep(3, r)
print("weights of V_3:", rep.weights)
for k in range(1, r):
    print(verify_relations(k, r).as_dict())
