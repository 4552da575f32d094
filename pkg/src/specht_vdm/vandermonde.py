"""Multivariable and homogeneous Vandermonde matrices and their expansions.

The canonical column order is ``kron``: exponent vectors in mixed radix with
the first variable varying fastest, e.g. ``(1, x, x^2, y, xy, x^2 y)`` for
degrees ``(3, 2)``.  In this order ``V_(N1..Nr) = V_(N1..Nk) * V_(Nk+1..Nr)``
holds entrywise.  ``deglex`` (total degree, then descending lexicographic
exponents) is available for comparison.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod

from .amalgam import (
    AmalgamPair,
    Term,
    TermExpansion,
    det_via_theorem3,
    perm_sum_theorem4,
    star,
    symbolic_pair,
    trivial_pair_tableaux,
)
from .errors import ShapeError, UnsupportedOrderError
from .exact_core import (
    Matrix,
    MultiPoly,
    det_exact,
    kernel_exact,
    permutation_sign,
    poly_coeff,
    poly_substitute,
    to_scalar,
)
from .fayers import hook_product, phi_matrix
from .tableaux import conjugate

ORDERS = ("kron", "deglex")


@dataclass(frozen=True)
class VdmSpec:
    degrees: tuple
    split: int | None = None
    order: str = "kron"

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if not degrees or any(d < 1 for d in degrees):
            raise ShapeError(f"degrees {degrees} must be positive")
        if self.split is not None and not 1 <= self.split < len(degrees):
            raise ShapeError(f"split {self.split} outside 1..{len(degrees) - 1}")
        if self.order not in ORDERS:
            raise UnsupportedOrderError(self.order)

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def size(self) -> int:
        return prod(self.degrees)

    @property
    def m(self) -> int:
        return prod(self.degrees[:self.split])

    @property
    def n(self) -> int:
        return prod(self.degrees[self.split:])


@dataclass(frozen=True)
class MonomialList:
    exponents: tuple
    order: str

    def __len__(self):
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)


def _kron_exponents(degrees):
    return [tuple(reversed(e)) for e in itertools.product(*(range(d) for d in reversed(degrees)))]


def _deglex_key(e):
    return sum(e), tuple(-x for x in e)


def monomials(spec: VdmSpec) -> MonomialList:
    exps = _kron_exponents(spec.degrees)
    if spec.order == "deglex":
        exps.sort(key=_deglex_key)
    return MonomialList(tuple(exps), spec.order)


def order_permutation(degrees) -> tuple:
    """Positions in kron order of the deglex monomials, and the sign of that reordering."""
    kron = _kron_exponents(degrees)
    where = {e: i for i, e in enumerate(kron)}
    perm = tuple(where[e] for e in sorted(kron, key=_deglex_key))
    return perm, permutation_sign(perm)


def _monomial_row(exponents, point):
    row = []
    for exp in exponents:
        v = Fraction(1)
        for x, e in zip(point, exp):
            if e:
                v = v * x ** e if isinstance(x, MultiPoly) else v * to_scalar(x) ** e
        row.append(v)
    return row


def _check_points(pts, r):
    pts = [tuple(p) for p in pts]
    for p in pts:
        if len(p) != r:
            raise ShapeError(f"point {p} has {len(p)} coordinates, expected {r}")
    return pts


def build_vdm(spec: VdmSpec, pts, rectangular: bool = False) -> Matrix:
    """Rows are the monomials of ``spec`` evaluated at each point."""
    pts = _check_points(pts, spec.r)
    if not rectangular and len(pts) != spec.size:
        raise ShapeError(f"{len(pts)} points for a {spec.size}x{spec.size} Vandermonde matrix")
    exps = monomials(spec).exponents
    return Matrix.from_rows([_monomial_row(exps, p) for p in pts]) if pts else Matrix(0, len(exps), [])


def symbolic_points(count: int, names=("x", "y", "z", "w")):
    """Points ``(x1, y1, ...)`` with polynomial coordinates over one shared universe."""
    universe = [f"{v}{i}" for v in names for i in range(1, count + 1)]
    return [tuple(MultiPoly.var(f"{v}{i}", universe) for v in names) for i in range(1, count + 1)]


def vdm_amalgam(spec: VdmSpec, pts) -> AmalgamPair:
    """Split ``V`` into ``A * B`` with A on the first ``split`` coordinates."""
    if spec.order != "kron":
        raise UnsupportedOrderError("the amalgam factorisation needs kron column order")
    if spec.split is None:
        raise ShapeError("a split index is required")
    k = spec.split
    pts = _check_points(pts, spec.r)
    if len(pts) != spec.size:
        raise ShapeError(f"{len(pts)} points for a {spec.size}x{spec.size} Vandermonde matrix")
    A = build_vdm(VdmSpec(spec.degrees[:k]), [p[:k] for p in pts], rectangular=True)
    B = build_vdm(VdmSpec(spec.degrees[k:]), [p[k:] for p in pts], rectangular=True)
    return AmalgamPair(spec.m, spec.n, A, B)


def vdm_theorem1(spec: VdmSpec, pts, cap: int | None = None) -> TermExpansion:
    """Sum over tableau pairs of products of smaller Vandermonde determinants.

    Both tableaux of each returned term have shape ``n^m``: the first
    contributes its columns to the leading coordinates, the second its rows
    to the trailing ones.
    """
    exp = det_via_theorem3(vdm_amalgam(spec, pts), cap=cap)
    terms = tuple(Term(t.coef, t.alpha, conjugate(t.beta), t.value, t.a_columns, t.b_columns)
                  for t in exp.terms)
    return TermExpansion(terms)


def vdm_theorem2(spec: VdmSpec, pts, cap: int | None = None, workers: int = 1):
    """Symmetrised formula: permutation sum over ``S_{mn}`` divided by the hook product."""
    p = vdm_amalgam(spec, pts)
    alpha, beta = trivial_pair_tableaux(p.m, p.n)
    total = perm_sum_theorem4(p, alpha, beta, cap, workers)
    h = hook_product(p.m, p.n)
    return total * Fraction(1, h)


def format_factored(expansion: TermExpansion, spec: VdmSpec, names=("x", "y", "z", "w")) -> str:
    """Render a first-formula expansion as text, e.g. ``(x2-x1)(x4-x3)(y3-y1)(y4-y2) - ...``.

    One-variable blocks become products of linear factors; larger blocks
    are written ``V(N1,..)[i,j,..]``.
    """
    k = spec.split
    lead, trail = spec.degrees[:k], spec.degrees[k:]

    def block(group_degrees, offset, cols):
        out = []
        for c in cols:
            if len(group_degrees) == 1:
                v = names[offset]
                out.extend(f"({v}{c[j]}-{v}{c[i]})" for i in range(len(c)) for j in range(i + 1, len(c)))
            else:
                labels = ",".join(names[offset:offset + len(group_degrees)])
                out.append(f"V{group_degrees}[{labels}; {','.join(map(str, c))}]")
        return "".join(out)

    parts = []
    for t in expansion.terms:
        body = block(lead, 0, t.a_columns) + block(trail, k, t.b_columns)
        coef = abs(t.coef)
        body = body if coef == 1 else f"{coef}*{body}"
        parts.append(("-" if t.coef < 0 else "+", body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        text += f" {s} {body}"
    return text


def _is_unit(f):
    if isinstance(f, MultiPoly):
        return f.is_constant() and abs(f.constant_value()) == 1
    return abs(f) == 1


def _unit_sign(f) -> int:
    v = f.constant_value() if isinstance(f, MultiPoly) else f
    return 1 if v > 0 else -1


def format_factor_terms(expansion: TermExpansion) -> str:
    """Render an expansion whose terms carry ``factors`` as a signed sum of bracketed products.

    Constant factors of absolute value one are folded into the sign.
    """
    parts = []
    for t in expansion.terms:
        if not t.value:
            continue
        coef = t.coef
        body = []
        for f in t.factors:
            if _is_unit(f):
                coef *= _unit_sign(f)
            else:
                body.append(f"({f})")
        text = "".join(body) or "1"
        if abs(coef) != 1:
            text = f"{abs(coef)}*{text}"
        parts.append(("-" if coef < 0 else "+", text))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, text in parts[1:]:
        out += f" {sgn} {text}"
    return out


# --------------------------------------------------------------------------
# Homogeneous matrices
# --------------------------------------------------------------------------


def hom_monomials(N: int, r: int) -> MonomialList:
    """Monomials of total degree <= N; by degree, then descending lexicographic."""
    exps = [e for e in itertools.product(range(N + 1), repeat=r) if sum(e) <= N]
    exps.sort(key=_deglex_key)
    return MonomialList(tuple(exps), "hom")


def build_vdm_hom(N: int, r: int, pts) -> Matrix:
    pts = _check_points(pts, r)
    ell = comb(N + r, r)
    if len(pts) != ell:
        raise ShapeError(f"{len(pts)} points, homogeneous matrix needs {ell}")
    exps = hom_monomials(N, r).exponents
    return Matrix.from_rows([_monomial_row(exps, p) for p in pts])


def hom_kernel(M: Matrix):
    """Exact basis of the right kernel: coefficient vectors of interpolating polynomials."""
    return kernel_exact(M)


def _parse_var(v):
    if isinstance(v, str):
        side, row, col = v.split("_")
        return side, int(row), int(col)
    side, row, col = v
    return side, int(row), int(col)


def laplace_sign(pairs) -> int:
    """Sign relating a coefficient of ``prod M[r, c]`` in ``det M`` to the complementary minor."""
    pairs = sorted(pairs)
    total = sum(r + c for r, c in pairs)
    return (-1) ** total * permutation_sign([c for _, c in pairs])


@dataclass(frozen=True)
class MinorSelection:
    """Rows and columns (1-based) of ``A * B`` removed by a coefficient extraction."""

    rows: tuple
    cols: tuple
    sign: int


def minor_selection(m: int, n: int, extract) -> MinorSelection:
    """Validate an extraction list and locate the complementary minor.

    Each touched row must lose exactly one ``a`` and one ``b`` variable; the
    product ``a_{r,j} b_{r,k}`` sits in column ``j + (k-1) m``.
    """
    per_row = {}
    for v in extract:
        side, row, col = _parse_var(v)
        if side not in ("a", "b") or not 1 <= row <= m * n:
            raise ShapeError(f"bad variable {v!r}")
        if col > (m if side == "a" else n) or col < 1:
            raise ShapeError(f"bad column in {v!r}")
        slot = per_row.setdefault(row, {})
        if side in slot:
            raise ShapeError(f"row {row} has two extracted {side}-variables")
        slot[side] = col
    pairs = []
    for row, slot in per_row.items():
        if set(slot) != {"a", "b"}:
            raise ShapeError(f"row {row} needs one a- and one b-variable for a square minor")
        pairs.append((row, slot["a"] + (slot["b"] - 1) * m))
    cols = [c for _, c in pairs]
    if len(set(cols)) != len(cols):
        raise ShapeError("two extracted products share a column; the minor is not square")
    pairs.sort()
    return MinorSelection(tuple(r for r, _ in pairs), tuple(c for _, c in pairs), laplace_sign(pairs))


def hom_via_amalgam_minor(m: int, n: int, extract, substitution, cap: int | None = None) -> TermExpansion:
    """Expand a minor of a specialised amalgam through the first identity.

    ``extract`` lists the variables (``"a_9_3"`` or ``("a", 9, 3)``) whose
    coefficient is taken in ``det(A * B)``; ``substitution`` maps every
    other variable that survives to a scalar or polynomial.  Each
    determinant factor of every term is handled separately: coefficient
    first, then substitution.  Coefficients are multiplied by the Laplace
    sign so the total equals the determinant of the specialised minor.
    """
    sel = minor_selection(m, n, extract)
    wanted = {}
    for v in extract:
        side, row, col = _parse_var(v)
        wanted.setdefault((side, row), f"{side}_{row}_{col}")
    pair = symbolic_pair(m, n)
    ph = phi_matrix(m, n, cap)
    cache = {}

    def factor(side, M, cols):
        key = (side, cols)
        if key not in cache:
            poly = det_exact(M.select_rows([e - 1 for e in cols]))
            names = [wanted[(side, e)] for e in cols if (side, e) in wanted]
            if names:
                poly = poly_coeff(poly, [(name, 1) for name in names])
            cache[key] = poly_substitute(poly, substitution) if poly else Fraction(0)
        return cache[key]

    terms = []
    for i, j, coef in ph.nonzero():
        alpha, beta = ph.basis[i], ph.conjugates[j]
        factors = []
        value = Fraction(1)
        for side, M, tab in (("a", pair.A, alpha), ("b", pair.B, beta)):
            for c in tab.columns():
                f = factor(side, M, c)
                if not f:
                    value = Fraction(0)
                    break
                factors.append(f)
                value = f * value if isinstance(f, MultiPoly) else value * f
            if not value:
                break
        if not value:
            continue
        terms.append(Term(coef * sel.sign, alpha, beta, value, alpha.columns(), beta.columns(),
                          tuple(factors)))
    return TermExpansion(tuple(terms))


def specialised_minor(m: int, n: int, extract, substitution) -> Matrix:
    """The minor of the specialised amalgam that ``hom_via_amalgam_minor`` expands."""
    sel = minor_selection(m, n, extract)
    minor = star(symbolic_pair(m, n)).delete([r - 1 for r in sel.rows], [c - 1 for c in sel.cols])
    return minor.map(lambda x: poly_substitute(x, substitution))


CONIC_SEPARATED_EXTRACT = ("a_9_3", "a_8_3", "a_7_2", "b_7_3", "b_8_3", "b_9_2")
CONIC_COLLINEAR_EXTRACT = ("a_9_2", "a_8_1", "a_7_1", "b_9_3", "b_8_3", "b_7_2")


def _conic_substitution(points, separated):
    sub = {}
    for i, (x, y) in enumerate(points, start=1):
        if separated:
            a_row, b_row = (1, x, x * x), (1, y, y * y)
        else:
            a_row = b_row = (1, x, y)
        for j in range(3):
            sub[f"a_{i}_{j + 1}"] = a_row[j]
            sub[f"b_{i}_{j + 1}"] = b_row[j]
    return sub


def conic_expansion_separated(points) -> TermExpansion:
    """``det V^hom_{2,2}`` of six plane points as products of one-variable Vandermonde factors.

    Coefficients of ``a_{9,3} a_{8,3} a_{7,2} b_{7,3} b_{8,3} b_{9,2}`` are
    taken, then ``a_{i,*} = (1, x_i, x_i^2)`` and ``b_{i,*} = (1, y_i, y_i^2)``.
    The surviving columns read ``(1, x, x^2, y, xy, y^2)``; one swap brings
    them to the homogeneous order.
    """
    points = _check_points(points, 2)
    if len(points) != 6:
        raise ShapeError("six points are required")
    exp = hom_via_amalgam_minor(3, 3, CONIC_SEPARATED_EXTRACT, _conic_substitution(points, True))
    return TermExpansion(tuple(Term(-t.coef, t.alpha, t.beta, t.value, t.a_columns, t.b_columns,
                                    t.factors) for t in exp.terms))


def conic_expansion_collinear(points) -> TermExpansion:
    """``det V^hom_{2,2}`` with factors that are degree-one homogeneous determinants.

    Coefficients of ``a_{9,2} a_{8,1} a_{7,1} b_{9,3} b_{8,3} b_{7,2}`` are
    taken, then ``a_{i,*} = b_{i,*} = (1, x_i, y_i)``; the surviving columns
    are already in homogeneous order.
    """
    points = _check_points(points, 2)
    if len(points) != 6:
        raise ShapeError("six points are required")
    return hom_via_amalgam_minor(3, 3, CONIC_COLLINEAR_EXTRACT, _conic_substitution(points, False))
