"""
Tableaux, the Fayers pairing and the coefficient matrix
========================================================

Standard tableaux of an m x n rectangle index both sides of the expansion
of det(A * B).  This script lists them, prints F and Phi, and checks the
expansion on a random integer pair.
"""
from specht_vdm.amalgam import det_via_theorem3, random_pair, star
from specht_vdm.exact_core import det_exact
from specht_vdm.fayers import fayers_matrix, hook_product, phi_matrix
from specht_vdm.tableaux import enumerate_syt, format_tableau, sign

m, n = 3, 2

# the basis, in canonical order (sorted by column word)
for i, t in enumerate(enumerate_syt(m, n), start=1):
    print(i, format_tableau(t), "sign", sign(t))

# F holds the pairings <alpha_i, beta_j>; Phi is the inverse transpose of
# its sign-conjugated version, and is again an integer matrix
print(fayers_matrix(m, n).entries)
# its only off-diagonal entry is Phi[1,5] = +1
print(phi_matrix(m, n).entries)

p = random_pair(m, n, 11)
exp = det_via_theorem3(p)
print("terms:", len(exp), "total:", exp.total, "det:", det_exact(star(p)))

# the hook product normalises the symmetrised permutation sum
print("H(3,2) =", hook_product(3, 2), " H(3,3) =", hook_product(3, 3))

# larger shapes: Phi(3,3) is 42 x 42 and has an entry equal to 2
big = phi_matrix(3, 3)
print(len(big.entries), max(abs(x) for row in big.entries for x in row))
