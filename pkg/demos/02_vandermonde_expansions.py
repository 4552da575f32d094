"""
Vandermonde determinants as sums of products
============================================

A two-variable Vandermonde matrix in kron column order factors as an
amalgam of two one-variable matrices, so its determinant expands as a
signed sum of products of ordinary Vandermonde determinants.
"""
from fractions import Fraction

from specht_vdm.exact_core import det_exact
from specht_vdm.vandermonde import (
    VdmSpec,
    build_vdm,
    build_vdm_hom,
    conic_expansion_collinear,
    format_factor_terms,
    format_factored,
    hom_kernel,
    symbolic_points,
    vdm_theorem1,
    vdm_theorem2,
)

# symbolic (2,2): the two-term identity
spec = VdmSpec((2, 2), split=1)
pts = symbolic_points(4, ("x", "y"))
print(format_factored(vdm_theorem1(spec, pts), spec))

# (3,2): six terms; setting y2 = y1 and x6 = x3 kills all but the first
spec = VdmSpec((3, 2), split=1)
pts = symbolic_points(6, ("x", "y"))
print(format_factored(vdm_theorem1(spec, pts), spec))
pts[1] = (pts[1][0], pts[0][1])
pts[5] = (pts[2][0], pts[5][1])
alive = [t for t in vdm_theorem1(spec, pts).terms if t.value]
print("surviving terms:", len(alive))

# the symmetrised formula on rational points
pts = [(Fraction(i, 3), Fraction(i * i - 2, 5)) for i in range(1, 7)]
print(vdm_theorem2(spec, pts) == det_exact(build_vdm(spec, pts)))

# homogeneous degree-2 matrix: six points on the unit circle lie on a conic
circle = [(1, 0), (0, 1), (-1, 0), (0, -1), (Fraction(3, 5), Fraction(4, 5)), (Fraction(-5, 13), Fraction(12, 13))]
M = build_vdm_hom(2, 2, circle)
print("det:", det_exact(M), "kernel:", [[str(c) for c in v] for v in hom_kernel(M)])

# with p6 at the origin the collinear extraction gives six factorising terms
five = [(2, 1), (3, 5), (-1, 4), (6, -2), (-3, -7)]
exp = conic_expansion_collinear(five + [(0, 0)])
print(format_factor_terms(exp))
print(exp.total == det_exact(build_vdm_hom(2, 2, five + [(0, 0)])))
