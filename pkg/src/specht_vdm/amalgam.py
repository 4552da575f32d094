"""Amalgamated products ``A * B`` and the two determinant expansions for them."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial

import numpy as np

from .errors import (
    ConsistencyError,
    DegenerateInputError,
    DimensionError,
    ResourceCapError,
    ShapeError,
)
from .exact_core import Matrix, MultiPoly, det_exact, det_minor_ordered
from .fayers import phi_matrix
from .tableaux import Tableau, conjugate, trivial_tableau

DEFAULT_PERM_CAP = 10


@dataclass(frozen=True)
class AmalgamPair:
    """``A`` has m*n rows and m columns, ``B`` has m*n rows and n columns."""

    m: int
    n: int
    A: Matrix
    B: Matrix

    def __post_init__(self):
        mn = self.m * self.n
        if self.A.shape != (mn, self.m) or self.B.shape != (mn, self.n):
            raise DimensionError(
                f"expected A {mn}x{self.m} and B {mn}x{self.n}, got {self.A.shape} and {self.B.shape}")

    @property
    def symbolic(self) -> bool:
        return self.A.is_symbolic() or self.B.is_symbolic()


@dataclass(frozen=True)
class Term:
    coef: int
    alpha: Tableau
    beta: Tableau
    value: object
    a_columns: tuple = ()
    b_columns: tuple = ()
    factors: tuple = ()


@dataclass(frozen=True)
class TermExpansion:
    terms: tuple

    @cached_property
    def total(self):
        acc = Fraction(0)
        for t in self.terms:
            acc = acc + t.coef * t.value
        return acc

    def __len__(self):
        return len(self.terms)


def star(p: AmalgamPair) -> Matrix:
    """Row i is the Kronecker product of row i of A with row i of B, A-index fastest."""
    m, n = p.m, p.n
    out = []
    for i in range(m * n):
        a = p.A.row(i)
        b = p.B.row(i)
        out.extend(a[j] * b[k] for k in range(n) for j in range(m))
    return Matrix(m * n, m * n, out)


def kron_embed(C: Matrix, D: Matrix) -> AmalgamPair:
    """Pair whose amalgam is the Kronecker product ``C ⊗ D``."""
    if C.rows != C.cols or D.rows != D.cols:
        raise DimensionError("C and D must be square")
    m, n = C.rows, D.rows
    A = Matrix.from_rows([C.row(i % m) for i in range(m * n)])
    B = Matrix.from_rows([D.row(i // m) for i in range(m * n)])
    return AmalgamPair(m, n, A, B)


def random_pair(m: int, n: int, rng, low: int = -9, high: int = 9) -> AmalgamPair:
    """Integer pair with entries uniform in ``[low, high]``; ``rng`` is a seed or numpy Generator."""
    rng = np.random.default_rng(rng)
    mn = m * n
    a = rng.integers(low, high + 1, size=(mn, m))
    b = rng.integers(low, high + 1, size=(mn, n))
    return AmalgamPair(m, n, Matrix.from_rows(a.tolist()), Matrix.from_rows(b.tolist()))


def generic_pair(m: int, n: int, rng, low: int = -9, high: int = 9, max_draws: int = 1000) -> AmalgamPair:
    """A random integer pair on which every ``A_alpha`` and every ``B_beta`` is nonzero.

    Draws from ``random_pair`` until no tableau minor product vanishes, so
    each coefficient of the expansion multiplies a nonzero term.
    """
    rng = np.random.default_rng(rng)
    ph = phi_matrix(m, n)
    for _ in range(max_draws):
        p = random_pair(m, n, rng, low, high)
        if all(tableau_minor_product(p.A, a) for a in ph.basis) and \
                all(tableau_minor_product(p.B, b) for b in ph.conjugates):
            return p
    raise DegenerateInputError(f"no generic ({m},{n}) pair after {max_draws} draws")


def symbolic_pair(m: int, n: int) -> AmalgamPair:
    """Pair of fully indeterminate matrices with entries ``a_i_j`` and ``b_i_j`` (1-based)."""
    mn = m * n
    names = [f"a_{i}_{j}" for i in range(1, mn + 1) for j in range(1, m + 1)]
    names += [f"b_{i}_{j}" for i in range(1, mn + 1) for j in range(1, n + 1)]
    gens = dict(zip(names, (MultiPoly.var(v, names) for v in names)))
    A = Matrix(mn, m, [gens[f"a_{i}_{j}"] for i in range(1, mn + 1) for j in range(1, m + 1)])
    B = Matrix(mn, n, [gens[f"b_{i}_{j}"] for i in range(1, mn + 1) for j in range(1, n + 1)])
    return AmalgamPair(m, n, A, B)


def _columns_of(t):
    if isinstance(t, Tableau):
        return t.columns()
    return tuple(tuple(c) for c in t)


def tableau_minor_product(M: Matrix, t):
    """Product over the columns of ``t`` of the ordered row minors of ``M``.

    ``t`` is a Tableau or a sequence of columns of 1-based labels; a label
    ``e`` selects row ``e-1`` of ``M``.
    """
    cols = _columns_of(t)
    value = Fraction(1)
    for c in cols:
        if len(c) != M.cols:
            raise ShapeError(f"column {c} has length {len(c)}, matrix has {M.cols} columns")
    for c in cols:
        d = det_minor_ordered(M, [e - 1 for e in c])
        if not d:
            return d
        value = d * value if isinstance(d, MultiPoly) else value * d
    return value


def det_via_theorem3(p: AmalgamPair, phi=None, cap: int | None = None) -> TermExpansion:
    """Expand ``det(A * B)`` as ``sum Phi[i][j] A_{alpha_i} B_{beta_j}``.

    ``phi`` overrides the coefficient matrix (a sequence of integer rows);
    used for negative controls.
    """
    ph = phi_matrix(p.m, p.n, cap)
    entries = ph.entries if phi is None else tuple(tuple(r) for r in phi)
    a_cache, b_cache = {}, {}
    terms = []
    for i, row in enumerate(entries):
        for j, coef in enumerate(row):
            if not coef:
                continue
            alpha, beta = ph.basis[i], ph.conjugates[j]
            if i not in a_cache:
                a_cache[i] = tableau_minor_product(p.A, alpha)
            if j not in b_cache:
                b_cache[j] = tableau_minor_product(p.B, beta)
            terms.append(Term(coef, alpha, beta, a_cache[i] * b_cache[j],
                              alpha.columns(), beta.columns()))
    return TermExpansion(tuple(terms))


def _lex_perms_with_sign(items, parity=0):
    """Permutations of ``items`` in lexicographic order with their signs.

    The sign of the k-th permutation is the parity of the digit sum of k
    written in the factorial base, maintained incrementally.
    """
    size = len(items)
    digits = [0] * size
    for perm in itertools.permutations(items):
        yield perm, (-1 if parity else 1)
        i = size - 2
        while i >= 0 and digits[i] + 1 == size - i:
            parity ^= digits[i] & 1
            digits[i] = 0
            i -= 1
        if i >= 0:
            digits[i] += 1
            parity ^= 1


def _block_sum(A, B, a_cols, b_cols, first, rest, parity):
    zero = MultiPoly.constant(0) if (A.is_symbolic() or B.is_symbolic()) else Fraction(0)
    cache_a, cache_b = {}, {}
    total = zero
    prefix = () if first is None else (first,)
    for tail, sgn in _lex_perms_with_sign(rest, parity):
        perm = prefix + tail
        value = None
        for cols, M, cache in ((a_cols, A, cache_a), (b_cols, B, cache_b)):
            for c in cols:
                key = tuple(perm[e] for e in c)
                d = cache.get(key)
                if d is None:
                    d = cache[key] = det_minor_ordered(M, key)
                if not d:
                    value = 0
                    break
                value = d if value is None else value * d
            if value == 0 and not isinstance(value, MultiPoly):
                break
        if value is None or (not isinstance(value, MultiPoly) and value == 0):
            continue
        total = total + value if sgn > 0 else total - value
    return total


def _block_star(args):
    return _block_sum(*args)


def perm_sum_theorem4(p: AmalgamPair, alpha: Tableau, beta: Tableau,
                      cap: int | None = None, workers: int = 1):
    """``sum_sigma sign(sigma) A_{sigma alpha} B_{sigma beta}`` over all of ``S_{mn}``.

    Columns of the permuted tableaux keep their positional order.  With
    ``workers > 1`` the sum is split into blocks by the image of 1 and
    evaluated in separate processes.
    """
    mn = p.m * p.n
    cap = DEFAULT_PERM_CAP if cap is None else cap
    if mn > cap:
        raise ResourceCapError(f"{mn}! permutations exceed the permutation cap ({cap})", factorial(mn))
    if alpha.shape != (p.n,) * p.m or beta.shape != (p.m,) * p.n:
        raise ShapeError("alpha must have shape n^m and beta shape m^n")
    a_cols = [tuple(e - 1 for e in c) for c in alpha.columns()]
    b_cols = [tuple(e - 1 for e in c) for c in beta.columns()]
    if workers <= 1 or mn < 2:
        return _block_sum(p.A, p.B, a_cols, b_cols, None, tuple(range(mn)), 0)
    jobs = []
    for f in range(mn):
        rest = tuple(x for x in range(mn) if x != f)
        jobs.append((p.A, p.B, a_cols, b_cols, f, rest, f & 1))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_block_star, jobs))
    total = parts[0]
    for part in parts[1:]:
        total = total + part
    return total


def kappa(m: int, n: int, alpha: Tableau, beta: Tableau, seed,
          cap: int | None = None, max_retries: int = 20) -> int:
    """The integer ``kappa`` with ``perm_sum = kappa * det(A * B)``, measured on random pairs.

    Two independent nonsingular draws must give the same integer ratio.
    """
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(2):
        for _attempt in range(max_retries):
            p = random_pair(m, n, rng)
            det = det_exact(star(p))
            if det != 0:
                break
        else:
            raise DegenerateInputError(f"no nonsingular pair after {max_retries} draws")
        ratio = perm_sum_theorem4(p, alpha, beta, cap) / det
        if ratio.denominator != 1:
            raise ConsistencyError(f"permutation sum / det = {ratio} is not an integer")
        ratios.append(int(ratio))
    if ratios[0] != ratios[1]:
        raise ConsistencyError(f"kappa differs between draws: {ratios}")
    return ratios[0]


def trivial_pair_tableaux(m: int, n: int):
    """``(1_{n^m}, 1_{n^m}')``, the pair whose kappa is the hook product."""
    one = trivial_tableau(m, n)
    return one, conjugate(one)
