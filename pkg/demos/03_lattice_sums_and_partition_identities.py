"""Rogers-Ramanujan-type identities: lattice sums against product sides.

F(u,v,w) is the triple sum with quadratic exponent 3k(k-1) + L(L-1),
L = i + 2j + 3k, weights u^i v^j w^k over (q;q)_i (q^4;q^4)_j (q^6;q^6)_k.
Nine specializations factor into infinite products; this demo checks two
of them plus the Capparelli double sum, then confronts a product side
with a brute-force partition count.
"""

from qrucible import INF, SeriesContext, equal_to_order, f_triple, mono, poch, pochhammer_multi, qpow
from qrucible.harness import partition_count
from qrucible.qkernel import capparelli_spec, multisum

ctx = SeriesContext(1, 40)
q = qpow(1)

# F(q, 1, q^3) = (q^3; q^12)_inf / (q, q^2; q^4)_inf
lhs = f_triple(qpow(1), mono(1, 0), qpow(3), ctx)
rhs = poch(qpow(3), qpow(12), ctx) * pochhammer_multi([qpow(1), qpow(2)], qpow(4), INF, ctx).inverse()
print("F(q,1,q^3) vs product:", equal_to_order(lhs, rhs, 40))

# F(q^2, 1/q, q^6): a negative exponent in the weights is handled exactly.
lhs = f_triple(qpow(2), qpow(-1), qpow(6), ctx)
rhs = (pochhammer_multi([qpow(1)], qpow(4), INF, ctx)
       * pochhammer_multi([qpow(7), qpow(8)], qpow(12), INF, ctx)).inverse()
print("F(q^2,1/q,q^6) vs product:", equal_to_order(lhs, rhs, 40))

# Capparelli's double sum.
cap = multisum(capparelli_spec(ctx), ctx)
rhs = (poch(qpow(3), qpow(6), ctx)
       * pochhammer_multi([qpow(2), qpow(10)], qpow(12), INF, ctx)).inverse()
print("Capparelli double sum:", equal_to_order(cap, rhs, 40))

# The first Rogers-Ramanujan product counts partitions into parts
# congruent to +-1 mod 5; so does an exhaustive enumeration.
prod = pochhammer_multi([qpow(1), qpow(4)], qpow(5), INF, ctx).inverse()
counts = [partition_count(n, modulus=5, residues=(1, 4)) for n in range(12)]
coeffs = [int(prod.coefficient(n).re) for n in range(12)]
print("product coefficients:", coeffs)
print("partition counts:    ", counts)
print("gap-2 counts agree:  ", [partition_count(n, min_gap=2) for n in range(12)] == counts)
