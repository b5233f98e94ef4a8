"""
The sign at a simple zero
=========================

A cosection of the trivial rank-n bundle on an n-dimensional chart, with a
nondegenerate isolated zero, localizes the virtual class to ``(-1)^n`` times
that point.  Only the certificate looks at the components.
"""
from fractions import Fraction

from canonhilb import DegenerateZero, Polynomial, ToyCosectionModel, certify_simple_zero, localized_degree_simple_point
from canonhilb.virtual_degree import random_toy_model

x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
m = ToyCosectionModel(2, (x + y**2, y), (Fraction(0), Fraction(0)))
print(certify_simple_zero(m), "->", localized_degree_simple_point(m))

###############################################################################
# Random translated models with higher-order terms.
for n in range(5):
    m = random_toy_model(n, seed=1)
    cert = certify_simple_zero(m)
    print(f"n={n}: zero at {tuple(str(c) for c in cert.point)}, det J = {cert.jacobian_det}, degree {localized_degree_simple_point(m):+d}")

###############################################################################
# A double zero is rejected.
t = Polynomial.variable(1, 0)
try:
    certify_simple_zero(ToyCosectionModel(1, (t**2,), (Fraction(0),)))
except DegenerateZero as exc:
    print("x^2:", exc)
