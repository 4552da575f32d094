"""Young shapes and tableaux, with standard-tableau enumeration for rectangles.

Tableau entries are the labels ``1..N``.  Row and column accessors take
0-based positions and return entries in positional order (top to bottom,
left to right), so permuted, non-standard fillings keep their orientation.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import factorial, prod

from .errors import ResourceCapError, ShapeError
from .exact_core import permutation_sign

DEFAULT_SYT_CAP = 10_000


def default_cap() -> int:
    """Tableau-count cap, overridable through ``AMALGAM_SYT_CAP``."""
    env = os.environ.get("AMALGAM_SYT_CAP")
    return int(env) if env else DEFAULT_SYT_CAP


def validate_shape(parts) -> tuple:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ShapeError(f"{parts} is not a partition")
    return parts


def conjugate_shape(parts) -> tuple:
    parts = validate_shape(parts)
    return tuple(sum(1 for p in parts if p > j) for j in range(parts[0]))


def hook_length_product(parts) -> int:
    """Product of all hook lengths of a Young diagram (generic shapes)."""
    parts = validate_shape(parts)
    cols = conjugate_shape(parts)
    return prod(parts[i] - j + cols[j] - i - 1 for i in range(len(parts)) for j in range(parts[i]))


def syt_count(parts) -> int:
    parts = validate_shape(parts)
    return factorial(sum(parts)) // hook_length_product(parts)


@dataclass(frozen=True)
class Tableau:
    """A filling of a Young diagram by ``1..N``, each label used once."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        validate_shape([len(r) for r in rows])
        entries = sorted(x for r in rows for x in r)
        if entries != list(range(1, len(entries) + 1)):
            raise ShapeError(f"entries of {rows} are not 1..{len(entries)}")

    @property
    def shape(self) -> tuple:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def is_rectangular(self) -> bool:
        return len(set(self.shape)) == 1

    def is_standard(self) -> bool:
        for r in self.rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                return False
        for j in range(self.ncols):
            c = self.column(j)
            if any(a >= b for a, b in zip(c, c[1:])):
                return False
        return True

    def column(self, j: int) -> tuple:
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} out of range")
        return tuple(r[j] for r in self.rows if len(r) > j)

    def row(self, i: int) -> tuple:
        if not 0 <= i < self.nrows:
            raise IndexError(f"row {i} out of range")
        return self.rows[i]

    def columns(self) -> tuple:
        return tuple(self.column(j) for j in range(self.ncols))

    def column_word(self) -> tuple:
        return tuple(x for c in self.columns() for x in c)

    def __str__(self):
        return format_tableau(self)


def format_tableau(t: Tableau) -> str:
    """Text form: rows separated by ';', entries by ','."""
    return ";".join(",".join(str(x) for x in r) for r in t.rows)


def parse_tableau(text: str) -> Tableau:
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";")]
    except ValueError:
        raise ShapeError(f"cannot parse tableau {text!r}") from None
    return Tableau(rows)


def trivial_tableau(m: int, n: int) -> Tableau:
    """``1_{n^m}``: m rows, n columns, filled down the columns first."""
    if m < 1 or n < 1:
        raise ShapeError("m and n must be positive")
    return Tableau([[i + j * m + 1 for j in range(n)] for i in range(m)])


def conjugate(t: Tableau) -> Tableau:
    return Tableau(t.columns())


def sign(t: Tableau) -> int:
    """Sign of the permutation carrying ``1_lambda`` to ``t``.

    ``1_lambda`` reads ``1..N`` down its columns, so this is the sign of the
    column reading word of ``t``.
    """
    return permutation_sign(t.column_word())


def apply_perm(sigma, t: Tableau) -> Tableau:
    """Relabel every entry ``e`` by ``sigma(e)``; ``sigma`` is one-line notation (``sigma[e-1]``)."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)) or len(sigma) != t.size:
        raise ValueError("sigma must be a permutation of 1..N")
    return Tableau([[sigma[x - 1] for x in r] for r in t.rows])


def compose(sigma, tau) -> tuple:
    """``sigma ∘ tau`` in one-line notation."""
    return tuple(sigma[tau[i] - 1] for i in range(len(tau)))


def row_sum_lex_key(t: Tableau) -> tuple:
    return tuple(sum(r) for r in t.rows)


def _truncated_shape(t: Tableau, k: int) -> tuple:
    return tuple(sum(1 for x in r if x <= k) for r in t.rows)


def shape_dominates(lam, mu) -> bool:
    """Dominance of partitions (trailing zeros allowed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def dominates(a: Tableau, b: Tableau) -> bool:
    """``a`` dominates ``b`` if every truncation ``{entries <= k}`` of ``a`` dominates that of ``b``."""
    if a.shape != b.shape:
        raise ShapeError(f"shapes {a.shape} and {b.shape} differ")
    return all(shape_dominates(_truncated_shape(a, k), _truncated_shape(b, k))
               for k in range(1, a.size + 1))


@dataclass(frozen=True)
class TableauBasis:
    """Standard tableaux of one rectangular shape in canonical order."""

    shape: tuple
    tableaux: tuple
    _index: dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.tableaux)

    def __iter__(self):
        return iter(self.tableaux)

    def __getitem__(self, i):
        return self.tableaux[i]

    def index(self, t: Tableau) -> int:
        return self._index[t]


def _enumerate_rect(m: int, n: int):
    """Backtrack over cells in column-major order, trying labels in increasing order."""
    total = m * n
    grid = [[0] * n for _ in range(m)]
    used = [False] * (total + 1)
    cells = [(i, j) for j in range(n) for i in range(m)]
    out = []

    def place(pos):
        if pos == total:
            out.append(Tableau(grid))
            return
        i, j = cells[pos]
        low = max(grid[i - 1][j] if i else 0, grid[i][j - 1] if j else 0)
        # (i+1)(j+1) cells are <= this one; (m-i)(n-j) cells are >= it
        low = max(low + 1, (i + 1) * (j + 1))
        high = total - (m - i) * (n - j) + 1
        for v in range(low, high + 1):
            if used[v]:
                continue
            used[v] = True
            grid[i][j] = v
            place(pos + 1)
            used[v] = False
        grid[i][j] = 0

    place(0)
    return out


def enumerate_syt(m: int, n: int, cap: int | None = None) -> TableauBasis:
    """All standard tableaux with m rows and n columns, ascending by column reading word."""
    if m < 1 or n < 1:
        raise ShapeError("m and n must be positive")
    cap = default_cap() if cap is None else cap
    count = syt_count((n,) * m)
    if count > cap:
        raise ResourceCapError(f"shape {n}^{m} has {count} standard tableaux (cap {cap})", count)
    tabs = tuple(_enumerate_rect(m, n))
    return TableauBasis((n,) * m, tabs, {t: i for i, t in enumerate(tabs)})
