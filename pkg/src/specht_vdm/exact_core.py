"""Exact scalars, sparse multivariate polynomials and exact determinants.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Polynomials are :class:`MultiPoly` over a fixed, ordered
universe of variable names.  :class:`Matrix` is a small dense row-major
container whose entries are either scalars or polynomials.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from numbers import Rational

from .errors import DimensionError, SingularMatrixError, UnknownVariableError

__all__ = [
    "Fraction",
    "to_scalar",
    "MultiPoly",
    "polyvars",
    "Matrix",
    "det_exact",
    "det_minor_ordered",
    "poly_diff",
    "poly_coeff",
    "poly_eval",
    "poly_substitute",
    "matrix_inverse_exact",
    "kernel_exact",
    "permutation_sign",
]


def to_scalar(value) -> Fraction:
    """Coerce an int, Fraction or decimal-rational string ("-3", "5/7") to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    if isinstance(value, float):
        # exact binary value of the float
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def permutation_sign(word) -> int:
    """Sign of a permutation given as a sequence of distinct comparable items.

    The sign is taken relative to the sorted order of the items, computed by
    cycle decomposition.
    """
    order = sorted(range(len(word)), key=word.__getitem__)
    seen = [False] * len(order)
    sign = 1
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# --------------------------------------------------------------------------
# Polynomials
# --------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable of ``variables``)
    to nonzero :class:`Fraction` coefficients.  Arithmetic between
    polynomials over different universes merges the universes; evaluation
    and coefficient extraction reject names outside the universe.
    """

    __slots__ = ("variables", "terms", "_index")

    def __init__(self, variables, terms=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        self.variables = variables
        self._index = {v: i for i, v in enumerate(variables)}
        clean = {}
        if terms:
            nvars = len(variables)
            for exp, coef in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise DimensionError(f"bad exponent vector {exp} for {nvars} variables")
                coef = to_scalar(coef)
                if coef:
                    clean[exp] = clean.get(exp, 0) + coef
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean

    @classmethod
    def _raw(cls, variables, index, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._index = index
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, value, variables=()):
        variables = tuple(variables)
        value = to_scalar(value)
        terms = {(0,) * len(variables): value} if value else {}
        return cls(variables, terms)

    @classmethod
    def var(cls, name, variables=None):
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise UnknownVariableError(name)
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: 1})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def support(self) -> tuple:
        """Variables that occur with a positive exponent in some term."""
        used = [False] * len(self.variables)
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def with_variables(self, variables) -> "MultiPoly":
        """Re-express over a larger universe containing the current one."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        try:
            positions = [index[v] for v in self.variables]
        except KeyError as err:
            raise UnknownVariableError(err.args[0]) from None
        n = len(variables)
        terms = {}
        for exp, coef in self.terms.items():
            new = [0] * n
            for p, e in zip(positions, exp):
                new[p] = e
            terms[tuple(new)] = coef
        return MultiPoly._raw(variables, index, terms)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.variables == self.variables:
                return self, other
            merged = self.variables + tuple(v for v in other.variables if v not in self._index)
            return self.with_variables(merged), other.with_variables(merged)
        try:
            value = to_scalar(other)
        except TypeError:
            return None, None
        return self, MultiPoly.constant(value, self.variables)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for exp, coef in b.terms.items():
            c = terms.get(exp, 0) + coef
            if c:
                terms[exp] = c
            else:
                terms.pop(exp, None)
        return MultiPoly._raw(a.variables, a._index, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, self._index, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exp = tuple(x + y for x, y in zip(e1, e2))
                c = terms.get(exp, 0) + c1 * c2
                if c:
                    terms[exp] = c
                else:
                    del terms[exp]
        return MultiPoly._raw(a.variables, a._index, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset((tuple((v, e) for v, e in zip(self.variables, exp) if e), c)
                              for exp, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- display -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            coef = self.terms[exp]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e)
            mag = abs(coef)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if coef < 0 else "+", body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


def polyvars(*names):
    """Generators of a shared universe, e.g. ``x, y = polyvars("x", "y")``."""
    return tuple(MultiPoly.var(n, names) for n in names)


def _check_known(p: MultiPoly, names):
    for v in names:
        if v not in p._index:
            raise UnknownVariableError(v)


def poly_diff(p: MultiPoly, v: str) -> MultiPoly:
    _check_known(p, [v])
    i = p._index[v]
    terms = {}
    for exp, coef in p.terms.items():
        if exp[i]:
            new = list(exp)
            new[i] -= 1
            terms[tuple(new)] = coef * exp[i]
    return MultiPoly._raw(p.variables, p._index, terms)


def poly_coeff(p: MultiPoly, assignments) -> MultiPoly:
    """Coefficient of ``prod v**d`` viewing ``p`` as a polynomial in the listed variables.

    ``assignments`` is an iterable of ``(variable, degree)`` pairs (or a
    mapping).  The result no longer depends on the listed variables.
    """
    items = list(assignments.items()) if hasattr(assignments, "items") else list(assignments)
    names = [v for v, _ in items]
    if len(set(names)) != len(names):
        raise ValueError("variables must be distinct")
    _check_known(p, names)
    want = [(p._index[v], d) for v, d in items]
    terms = {}
    for exp, coef in p.terms.items():
        if all(exp[i] == d for i, d in want):
            new = list(exp)
            for i, _ in want:
                new[i] = 0
            terms[tuple(new)] = coef
    return MultiPoly._raw(p.variables, p._index, terms)


def poly_eval(p, point) -> Fraction:
    """Evaluate at rational values; every variable occurring in ``p`` must be assigned."""
    if not isinstance(p, MultiPoly):
        return to_scalar(p)
    _check_known(p, point)
    missing = [v for v in p.support() if v not in point]
    if missing:
        raise UnknownVariableError(f"no value assigned to {missing[0]!r}")
    values = [to_scalar(point[v]) if v in point else Fraction(0) for v in p.variables]
    total = Fraction(0)
    for exp, coef in p.terms.items():
        term = coef
        for val, e in zip(values, exp):
            if e:
                term *= val ** e
        total += term
    return total


def poly_substitute(p, mapping, strict=True):
    """Substitute scalars or polynomials for variables.

    Returns a Fraction when every occurring variable is replaced by a scalar,
    otherwise a MultiPoly.  With ``strict`` every occurring variable must be
    assigned.
    """
    if not isinstance(p, MultiPoly):
        return to_scalar(p)
    _check_known(p, mapping)
    support = p.support()
    if strict:
        missing = [v for v in support if v not in mapping]
        if missing:
            raise UnknownVariableError(f"no value assigned to {missing[0]!r}")
    if all(not isinstance(mapping[v], MultiPoly) for v in support if v in mapping) and \
            all(v in mapping for v in support):
        return poly_eval(p, {v: mapping[v] for v in support})
    keep = tuple(v for v in p.variables if v not in mapping)
    powers = {}
    total = MultiPoly.constant(0, keep)
    for exp, coef in p.terms.items():
        term = MultiPoly.constant(coef, keep)
        for v, e in zip(p.variables, exp):
            if not e:
                continue
            if v in mapping:
                key = (v, e)
                if key not in powers:
                    val = mapping[v]
                    powers[key] = val ** e if isinstance(val, MultiPoly) else to_scalar(val) ** e
                term = term * powers[key]
            else:
                term = term * MultiPoly.var(v, keep) ** e
        total = total + term
    return total


# --------------------------------------------------------------------------
# Matrices
# --------------------------------------------------------------------------


def _normalize(x):
    return x if isinstance(x, MultiPoly) else to_scalar(x)


class Matrix:
    """Dense row-major matrix of Fractions or MultiPolys (immutable)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(_normalize(x) for x in entries)
        if len(entries) != rows * cols:
            raise DimensionError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def select_rows(self, indices):
        out = []
        for i in indices:
            if not 0 <= i < self.rows:
                raise IndexError(f"row {i} out of range for {self.rows} rows")
            out.extend(self.row(i))
        return Matrix(len(indices), self.cols, out)

    def submatrix(self, rows, cols):
        return Matrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def delete(self, rows=(), cols=()):
        rows, cols = set(rows), set(cols)
        keep_r = [i for i in range(self.rows) if i not in rows]
        keep_c = [j for j in range(self.cols) if j not in cols]
        return self.submatrix(keep_r, keep_c)

    def transpose(self):
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def map(self, f):
        return Matrix(self.rows, self.cols, [f(x) for x in self.entries])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = Fraction(0)
                for k in range(self.cols):
                    a = r[k]
                    if a:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return Matrix(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_symbolic(self) -> bool:
        return any(isinstance(x, MultiPoly) for x in self.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _bareiss(a):
    """Fraction-free determinant of a square list-of-lists of Python ints (mutated)."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_rational(m: Matrix) -> Fraction:
    n = m.rows
    rows = []
    scale = 1
    for i in range(n):
        r = m.row(i)
        den = reduce(lcm, (x.denominator for x in r), 1)
        scale *= den
        rows.append([int(x * den) for x in r])
    return Fraction(_bareiss(rows), scale)


def _det_expand(m: Matrix):
    """Division-free Laplace expansion memoized over column subsets."""
    n = m.rows
    layer = {0: MultiPoly.constant(1)}
    for k in range(n):
        nxt = {}
        row = m.row(k)
        for mask, val in layer.items():
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    continue
                entry = row[c]
                if not entry:
                    continue
                # columns already used that lie to the right of c are inversions
                inv = bin(mask >> (c + 1)).count("1")
                prod = val * entry
                if inv % 2:
                    prod = -prod
                key = mask | bit
                nxt[key] = nxt[key] + prod if key in nxt else prod
        layer = nxt
    result = layer.get((1 << n) - 1)
    if result is None:
        return MultiPoly.constant(0)
    return result


def det_exact(m: Matrix):
    """Exact determinant.

    Rational matrices: rows are scaled to integers and reduced with
    single-step Bareiss elimination.  Polynomial matrices: division-free
    expansion memoized over column subsets.
    """
    if m.rows != m.cols:
        raise DimensionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return Fraction(1)
    if m.is_symbolic():
        return _det_expand(m)
    return _det_rational(m)


def det_minor_ordered(m: Matrix, rows):
    """Determinant of the square matrix whose i-th row is row ``rows[i]`` of ``m`` (0-based).

    Row order matters (a swap negates); repeated rows give zero.
    """
    rows = list(rows)
    if len(rows) != m.cols:
        raise DimensionError(f"need {m.cols} row indices, got {len(rows)}")
    for i in rows:
        if not 0 <= i < m.rows:
            raise IndexError(f"row {i} out of range for {m.rows} rows")
    if len(set(rows)) != len(rows):
        return MultiPoly.constant(0) if m.is_symbolic() else Fraction(0)
    return det_exact(m.select_rows(rows))


def _rref(rows):
    """In-place reduced row echelon form over Fractions; returns pivot columns."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        pivot_row = [x * inv for x in rows[r]]
        rows[r] = pivot_row
        # sparse update: only the pivot row's nonzero columns change
        support = [k for k, y in enumerate(pivot_row) if y]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                row = rows[i] = list(rows[i])
                for k in support:
                    row[k] = row[k] - f * pivot_row[k]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def matrix_inverse_exact(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    if m.is_symbolic():
        raise TypeError("inverse is only supported for scalar matrices")
    n = m.rows
    aug = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return Matrix(n, n, [x for r in aug for x in r[n:]])


def kernel_exact(m: Matrix):
    """Basis of the right kernel ``{c : m c = 0}`` as a list of Fraction tuples."""
    if m.is_symbolic():
        raise TypeError("kernel is only supported for scalar matrices")
    rows = m.to_rows()
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(m.cols)) for i in range(m.cols)]
    pivots = _rref(rows)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -rows[r][f]
        basis.append(tuple(vec))
    return basis
