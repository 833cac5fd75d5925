"""Rogers and Askey-Wilson polynomials as symmetric Laurent objects.

x is never a variable here: every polynomial lives in z with
x = (z + 1/z)/2 implicit, which makes the z <-> 1/z symmetry and the
parameter symmetry of the Askey-Wilson family directly testable.
"""

from fractions import Fraction

from qrucible import SeriesContext, equal_to_order, mono, qpow
from qrucible.cyclotomic import OMEGA
from qrucible.ortho import (
    AWParam,
    RogersParam,
    aw_poly,
    rogers_at_minus_half,
    rogers_half_sum,
    rogers_poly,
    transform_check,
)

ctx = SeriesContext(2, 40)
q = qpow(1)

# C_2(x; a | q) has Laurent degrees {2, 0, -2}, symmetric in z <-> 1/z.
c2 = rogers_poly(2, RogersParam(qpow(3), q), ctx)
print("C_2 degrees:", sorted(c2.terms))

# Askey-Wilson polynomials are symmetric in all four parameters.
params = (qpow(1), mono(-1, 1), mono(1, Fraction(1, 2)), mono(-1, Fraction(1, 2)))
p3 = aw_poly(3, AWParam(*params, q), ctx)
shuffled = AWParam(params[2], params[0], params[3], params[1], q)
p3s = aw_poly(3, shuffled, ctx)
same = all(
    equal_to_order(p3.coefficient(d), p3s.coefficient(d), 30)
    for d in set(p3.terms) | set(p3s.terms)
)
print("AW parameter symmetry:", same)

# At z a cube root of unity (x = -1/2) the Rogers polynomial dissects
# into a finite cube-indexed sum.
p = RogersParam(mono(OMEGA, 1), q)
lhs = rogers_at_minus_half(9, p, ctx)
rhs = rogers_half_sum(9, p, ctx)
print("cube-root dissection:", equal_to_order(lhs, rhs, 36))

# The quartic transform, checked exactly at a summable specialization.
rep = transform_check("quartic", {"a": qpow(1), "t": qpow(2)}, SeriesContext(1, 30))
print("quartic transform:", "PASS" if rep.ok else f"FAIL {rep.mismatch}")
