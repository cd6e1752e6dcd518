"""
The star product on trigonometric polynomials
=============================================

c(m,n) * c(p,q) = t^D c(m+p,n+q) + t^-D c(m-p,n-q), over three coefficient rings.
"""
from pillowcase.trigpoly import CyclotomicRing, FormalRing
from pillowcase.serialize import parse_polynomial, format_polynomial
from pillowcase.star import star, operator_image, check_correspondence, poisson_bracket

ring = CyclotomicRing(6)
f = parse_polynomial("c(1,0) + 2*c(0,1)", ring)
g = parse_polynomial("t*c(1,1)", ring)
print("f * g =", format_polynomial(star(f, g)))

# the operator image is an algebra map
print("homomorphism:", operator_image(star(f, g)) == operator_image(f) @ operator_image(g))

# in the formal ring, h stands for i*pi/N
formal = FormalRing(4)
a, b = parse_polynomial("c(1,0)", formal), parse_polynomial("c(0,1)", formal)
print("a * b =", format_polynomial(star(a, b)))
print("{a, b} =", format_polynomial(poisson_bracket(a, b)))
print(check_correspondence(a, b).as_dict())
