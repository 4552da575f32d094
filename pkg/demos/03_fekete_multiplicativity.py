"""
Fekete-type configurations and a product set
============================================

A coordinate-exchange search for configurations maximising |det V| on a
compact set, followed by the product comparison for [-2,2] x [-2,2].
The printed estimates are finite-N values; they approach the limit slowly.
"""
from specht_vdm.fekete import Disk, Interval, fekete_search, multiplicativity_check, transfinite_estimate

K = Interval(-2.0, 2.0)
est = transfinite_estimate(K, (1,), [4, 8, 12, 16], budget=2, seed=0)
for N, D, logdet, value in est.rows():
    print(f"N={N:3d}  D={D}  log|det|={logdet:10.4f}  estimate={value:.5f}")

# the unit disk: roots of unity are optimal, estimate N^(1/(N-1))
res = fekete_search(Disk(0, 1.0), (8,), budget=2, seed=0)
print("disk, N=8:", res.estimate, 8 ** (1 / 7))

rep = multiplicativity_check(K, K, (1, 1), 6, budget=2, seed=0)
print("lhs", rep.lhs, "rhs", rep.rhs, "relative gap", rep.relative_gap)
print("exponents", rep.exponent1, rep.exponent2, "exact Kronecker identity", rep.exact_identity)
