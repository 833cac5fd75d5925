"""Pochhammer products, theta sums, and basic hypergeometric series.

The evaluator accepts any monomial parameters c*q^e (c in Q(w), rational
e), decides summability formally from valuation growth, and refuses
divergent input instead of guessing.
"""

from qrucible import (
    INF,
    SeriesContext,
    equal_to_order,
    mono,
    phi_series,
    poch,
    pochhammer_multi,
    qpow,
    theta_sum,
)
from qrucible.cyclotomic import OMEGA
from qrucible.errors import NonSummable

ctx = SeriesContext(1, 24)
q = qpow(1)

# The q-binomial theorem as a live computation:
#   sum (a;q)_n / (q;q)_n z^n = (az;q)_inf / (z;q)_inf
a, z = qpow(2), qpow(1)
lhs = phi_series([a], [], q, z, ctx)
rhs = poch(a * z, q, ctx) * poch(z, q, ctx).inverse()
print("q-binomial at a=q^2, z=q:", equal_to_order(lhs, rhs, 24))

# Jacobi's triple product: the two-sided theta sum against the product.
for zm, label in [(qpow(2), "q^2"), (mono(-1, 1), "-q"), (mono(OMEGA, 1), "wq")]:
    t = theta_sum(zm, ctx)
    p = pochhammer_multi([q, zm, q * zm.inv()], q, INF, ctx)
    print(f"triple product at z={label}:", equal_to_order(t, p, 23))

# theta at z=1 collapses: every term cancels against its mirror.
print("theta(1) vanishes:", theta_sum(mono(1, 0), ctx).is_zero())

# A series whose argument does not shrink is rejected, not mis-summed.
try:
    phi_series([q], [], q, mono(1, 0), ctx)
except NonSummable as exc:
    print("rejected as expected:", exc)
