"""Degree bookkeeping and a floating-point search for Fekete-type point configurations.

Everything here except :func:`degree_D` and the exact Kronecker check works in
floating point.  Determinants are handled as ``log|det|`` through LU with
partial pivoting (``numpy.linalg.slogdet``), so large configurations do not
overflow.

Descriptors of compact sets
---------------------------
``Interval(a, b)``  real segment, dimension 1
``Disk(center, radius)``  closed complex disk, dimension 1
``Product(factors)``  cartesian product, dimension is the sum
``Cloud(points)``  finite set of points in C^d
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

import numpy as np

from .errors import DimensionError, DomainError
from .exact_core import Matrix, det_exact
from .vandermonde import VdmSpec, build_vdm

GLOBAL_GRID = 513
DISK_RINGS = 9
DISK_ANGLES = 128
LOCAL_HALF_WIDTH = 8
REFINEMENT_LEVELS = 3
MAX_SWEEPS = 40
_GAIN = 1.0 + 1e-12


def degree_D(degrees) -> Fraction:
    """Total degree of ``det V_(N1..Nr)``: ``(N1...Nr / 2)(N1 + ... + Nr - r)``."""
    degrees = tuple(int(d) for d in degrees)
    if not degrees or any(d < 1 for d in degrees):
        raise ValueError(f"degrees {degrees} must be positive")
    return Fraction(prod(degrees), 2) * (sum(degrees) - len(degrees))


# --------------------------------------------------------------------------
# Descriptors
# --------------------------------------------------------------------------


def _finite(*xs):
    return all(math.isfinite(abs(complex(x))) for x in xs)


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not _finite(self.a, self.b) or self.a > self.b:
            raise DomainError(f"[{self.a}, {self.b}] is not a bounded interval")

    dimension = 1
    is_real = True

    def leaves(self):
        return (self,)

    def to_json(self):
        return {"kind": "interval", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if not _finite(self.center, self.radius) or self.radius < 0:
            raise DomainError(f"disk with center {self.center} and radius {self.radius} is not bounded")

    dimension = 1
    is_real = False

    def leaves(self):
        return (self,)

    def to_json(self):
        c = complex(self.center)
        return {"kind": "disk", "center": [c.real, c.imag], "radius": self.radius}


@dataclass(frozen=True)
class Cloud:
    """A finite set; each point is a tuple of (possibly complex) coordinates."""

    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(complex(x) for x in p) for p in self.points)
        if not pts:
            raise DomainError("empty point cloud")
        if len({len(p) for p in pts}) != 1:
            raise DomainError("cloud points have different dimensions")
        if not all(_finite(*p) for p in pts):
            raise DomainError("cloud contains non-finite coordinates")
        object.__setattr__(self, "points", pts)

    @property
    def dimension(self):
        return len(self.points[0])

    @property
    def is_real(self):
        return all(x.imag == 0 for p in self.points for x in p)

    def leaves(self):
        return (self,)

    def to_json(self):
        def enc(x):
            return x.real if x.imag == 0 else [x.real, x.imag]
        return {"kind": "cloud", "points": [[enc(x) for x in p] for p in self.points]}


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise DomainError("empty product")
        object.__setattr__(self, "factors", factors)

    @property
    def dimension(self):
        return sum(f.dimension for f in self.factors)

    @property
    def is_real(self):
        return all(f.is_real for f in self.factors)

    def leaves(self):
        return tuple(leaf for f in self.factors for leaf in f.leaves())

    def to_json(self):
        return {"kind": "product", "factors": [f.to_json() for f in self.factors]}


def _complex(v):
    if isinstance(v, (list, tuple)):
        re, im = v
        return complex(float(re), float(im))
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    return complex(v)


def descriptor_from_json(obj):
    """Build a descriptor from its JSON form (see the module docstring)."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DomainError(f"not a set descriptor: {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "interval":
            return Interval(float(Fraction(str(obj["a"]))), float(Fraction(str(obj["b"]))))
        if kind == "disk":
            return Disk(_complex(obj.get("center", 0)), float(obj["radius"]))
        if kind == "product":
            return Product(tuple(descriptor_from_json(f) for f in obj["factors"]))
        if kind == "cloud":
            pts = [[_complex(x) for x in (p["z"] if isinstance(p, dict) else p)] for p in obj["points"]]
            return Cloud(tuple(map(tuple, pts)))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed {kind} descriptor: {exc}") from None
    raise DomainError(f"unknown descriptor kind {kind!r}")


# --------------------------------------------------------------------------
# Candidate grids and sampling, per leaf
# --------------------------------------------------------------------------


def _cloud_array(leaf):
    pts = np.array(leaf.points)
    return pts.real if leaf.is_real else pts


def _global_grid(leaf):
    """Coarse candidates covering the whole leaf, shape (C, leaf.dimension)."""
    if isinstance(leaf, Interval):
        return np.linspace(leaf.a, leaf.b, GLOBAL_GRID)[:, None]
    if isinstance(leaf, Disk):
        radii = np.linspace(0.0, leaf.radius, DISK_RINGS)[1:]
        angles = np.exp(2j * np.pi * np.arange(DISK_ANGLES) / DISK_ANGLES)
        ring = (radii[:, None] * angles[None, :]).ravel()
        return (complex(leaf.center) + np.concatenate([[0.0], ring]))[:, None]
    return _cloud_array(leaf)


def _base_step(leaf):
    if isinstance(leaf, Interval):
        return (leaf.b - leaf.a) / (GLOBAL_GRID - 1)
    if isinstance(leaf, Disk):
        return leaf.radius * 2 * np.pi / DISK_ANGLES
    return 0.0


def _local_grid(leaf, current, step):
    """Candidates within ``LOCAL_HALF_WIDTH`` steps of ``current``, kept inside the leaf."""
    offsets = step * np.arange(-LOCAL_HALF_WIDTH, LOCAL_HALF_WIDTH + 1)
    if isinstance(leaf, Interval):
        return np.clip(current[0].real + offsets, leaf.a, leaf.b)[:, None]
    if isinstance(leaf, Disk):
        c = complex(leaf.center)
        w = (current[0] + offsets[:, None] + 1j * offsets[None, :]).ravel() - c
        mod = np.abs(w)
        outside = mod > leaf.radius
        w[outside] *= leaf.radius / mod[outside]
        return (c + w)[:, None]
    return None


def _structured_start(leaf, count):
    """A classical near-optimal one-leaf configuration of ``count`` points."""
    if isinstance(leaf, Interval):
        if count == 1:
            return np.array([[(leaf.a + leaf.b) / 2]])
        nodes = -np.cos(np.pi * np.arange(count) / (count - 1))
        return ((leaf.a + leaf.b) / 2 + (leaf.b - leaf.a) / 2 * nodes)[:, None]
    if isinstance(leaf, Disk):
        roots = np.exp(2j * np.pi * np.arange(count) / count)
        return (complex(leaf.center) + leaf.radius * roots)[:, None]
    pts = _cloud_array(leaf)
    return pts[np.arange(count) % len(pts)]


def _sample(leaf, count, rng):
    if isinstance(leaf, Interval):
        # Chebyshev-like clustering towards the ends plus uniform jitter
        u = rng.uniform(0.0, 1.0, count)
        nodes = -np.cos(np.pi * u)
        jitter = rng.uniform(-0.5, 0.5, count) * (leaf.b - leaf.a) / max(count, 2)
        x = np.clip((leaf.a + leaf.b) / 2 + (leaf.b - leaf.a) / 2 * nodes + jitter, leaf.a, leaf.b)
        return x[:, None]
    if isinstance(leaf, Disk):
        radius = leaf.radius * np.sqrt(rng.uniform(0.25, 1.0, count))
        angle = rng.uniform(0.0, 2 * np.pi, count)
        return (complex(leaf.center) + radius * np.exp(1j * angle))[:, None]
    pts = _cloud_array(leaf)
    return pts[rng.choice(len(pts), size=count, replace=len(pts) < count)]


# --------------------------------------------------------------------------
# Float Vandermonde machinery
# --------------------------------------------------------------------------


def _monomial_rows(P, degrees):
    """Monomial vectors (kron order, first coordinate fastest) for the rows of ``P``."""
    out = np.ones((P.shape[0], 1), dtype=P.dtype)
    for c, d in enumerate(degrees):
        pw = P[:, c:c + 1] ** np.arange(d)
        out = (pw[:, :, None] * out[:, None, :]).reshape(P.shape[0], -1)
    return out


def _log_abs_det(V):
    sign, logdet = np.linalg.slogdet(V)
    return -math.inf if sign == 0 else float(logdet)


@dataclass(frozen=True)
class FeketeResult:
    points: np.ndarray
    log_abs_det: float
    degrees: tuple
    start: int = 0

    @property
    def D(self) -> Fraction:
        return degree_D(self.degrees)

    @property
    def estimate(self) -> float:
        """``|det V|^(1/D)``; ``nan`` when ``D = 0``."""
        D = self.D
        if D == 0:
            return math.nan
        return math.exp(self.log_abs_det / float(D)) if self.log_abs_det > -math.inf else 0.0


class _Search:
    def __init__(self, K, degrees):
        self.K = K
        self.degrees = tuple(degrees)
        self.leaves = K.leaves()
        self.slices = []
        pos = 0
        for leaf in self.leaves:
            self.slices.append(slice(pos, pos + leaf.dimension))
            pos += leaf.dimension
        self.dtype = float if K.is_real else complex
        self.size = prod(self.degrees)

    def sample(self, rng):
        return np.concatenate([_sample(leaf, self.size, rng) for leaf in self.leaves],
                              axis=1).astype(self.dtype)

    def structured(self):
        """Tensor product of per-leaf structured configurations, first leaf fastest."""
        blocks, counts = [], []
        pos = 0
        for leaf in self.leaves:
            count = prod(self.degrees[pos:pos + leaf.dimension])
            blocks.append(_structured_start(leaf, count))
            counts.append(count)
            pos += leaf.dimension
        rows = []
        for idx in np.ndindex(*reversed(counts)):
            idx = tuple(reversed(idx))
            rows.append(np.concatenate([blocks[l][i] for l, i in enumerate(idx)]))
        return np.array(rows, dtype=self.dtype)

    def repair(self, P, rng, tries=200):
        """Replace duplicated (then arbitrary) points until the matrix is nonsingular."""
        P = P.copy()
        seen = set()
        for k in range(len(P)):
            key = tuple(np.round(P[k], 12))
            if key in seen:
                P[k] = self.sample(rng)[0]
            seen.add(tuple(np.round(P[k], 12)))
        for _ in range(tries):
            if _log_abs_det(_monomial_rows(P, self.degrees)) > -math.inf:
                return P
            P[rng.integers(len(P))] = self.sample(rng)[0]
        return P

    def ascend(self, P):
        """Coordinate exchange: coarse global grid, then three halving local grids."""
        V = _monomial_rows(P, self.degrees)
        if _log_abs_det(V) == -math.inf:
            return P, -math.inf
        for level in range(REFINEMENT_LEVELS + 1):
            for _sweep in range(MAX_SWEEPS):
                improved = False
                for k in range(len(P)):
                    for leaf, sl in zip(self.leaves, self.slices):
                        if level == 0:
                            cand = _global_grid(leaf)
                        else:
                            cand = _local_grid(leaf, P[k, sl], _base_step(leaf) / 2 ** level)
                            if cand is None:
                                continue
                        trial = np.repeat(P[k:k + 1], len(cand), axis=0)
                        trial[:, sl] = cand
                        rows = _monomial_rows(trial, self.degrees)
                        e = np.zeros(len(P))
                        e[k] = 1.0
                        u = np.linalg.solve(V, e)
                        ratio = np.abs(rows @ u)
                        best = int(np.argmax(ratio))
                        if ratio[best] > _GAIN:
                            P[k] = trial[best]
                            V[k] = rows[best]
                            improved = True
                if not improved:
                    break
        return P, _log_abs_det(V)


def _run_start(args):
    K, degrees, seed, index, initial = args
    s = _Search(K, degrees)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    if index == 0:
        P = s.structured() if initial is None else np.array(initial, dtype=s.dtype).reshape(s.size, -1)
    else:
        P = s.sample(rng)
    P = s.repair(P, rng)
    P, logdet = s.ascend(P)
    return index, P, logdet


def fekete_search(K, degrees, budget: int = 1, seed: int = 0, initial=None,
                  workers: int = 1) -> FeketeResult:
    """Lower bound for ``sup |det V_degrees|`` over configurations in ``K``.

    ``budget`` is the number of starts.  Start 0 is a structured
    configuration (Chebyshev-Lobatto nodes, roots of unity, or their tensor
    product) unless ``initial`` is given; the others are seeded samples of
    ``K``, each with a seed derived from ``(seed, start index)``.  Adding
    starts never lowers the result.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != K.dimension:
        raise DimensionError(f"{len(degrees)} degrees for a set of dimension {K.dimension}")
    if any(d < 1 for d in degrees):
        raise ValueError(f"degrees {degrees} must be positive")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    jobs = [(K, degrees, seed, i, initial) for i in range(budget)]
    if workers > 1 and budget > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_start, jobs))
    else:
        results = [_run_start(j) for j in jobs]
    # max with ties going to the lowest start index, independent of completion order
    index, P, logdet = max(results, key=lambda r: (r[2], -r[0]))
    return FeketeResult(P, logdet, degrees, index)


# --------------------------------------------------------------------------
# Transfinite diameter estimates
# --------------------------------------------------------------------------


def _weights(w):
    w = tuple(Fraction(str(x)) for x in w)
    if not w or any(x <= 0 for x in w):
        raise ValueError(f"weights {w} must be positive")
    return w


@dataclass(frozen=True)
class TransfiniteEstimate:
    weights: tuple
    N_values: tuple
    estimates: tuple
    log_abs_dets: tuple
    best: FeketeResult

    @property
    def value(self) -> float:
        return self.estimates[-1]

    def rows(self):
        """``(N, D, log|det|, estimate)`` per admissible N."""
        for N, est, logdet in zip(self.N_values, self.estimates, self.log_abs_dets):
            D = degree_D(tuple(int(x * N) for x in self.weights))
            yield N, D, logdet, est


def transfinite_estimate(K, w, N_list, budget: int = 1, seed: int = 0,
                         workers: int = 1) -> TransfiniteEstimate:
    """Per-N estimates of ``sup |det V_(w1 N, ..., wr N)|^(1/D)``.

    N values with a non-integral ``w_i N`` or with ``D = 0`` are skipped.
    """
    w = _weights(w)
    admissible = [N for N in N_list
                  if all((x * N).denominator == 1 for x in w)
                  and degree_D(tuple(int(x * N) for x in w)) > 0]
    if not admissible:
        raise ValueError(f"no admissible N in {list(N_list)} for weights {w}")
    estimates, logs, best = [], [], None
    for N in admissible:
        res = fekete_search(K, tuple(int(x * N) for x in w), budget, seed, workers=workers)
        estimates.append(res.estimate)
        logs.append(res.log_abs_det)
        best = res
    return TransfiniteEstimate(w, tuple(admissible), tuple(estimates), tuple(logs), best)


# --------------------------------------------------------------------------
# Multiplicativity
# --------------------------------------------------------------------------


def _dyadic(x, bits=16):
    return Fraction(round(float(x) * 2 ** bits), 2 ** bits)


def product_configuration(P1, P2):
    """Points ``z_k = (z'_i, z''_j)`` with ``k = i + j m`` (0-based), ``m = len(P1)``."""
    P1, P2 = np.asarray(P1), np.asarray(P2)
    m, n = len(P1), len(P2)
    return np.array([np.concatenate([P1[k % m], P2[k // m]]) for k in range(m * n)])


def kronecker_identity(P1, d1, P2, d2) -> dict:
    """Exact check of ``det V = det(V')^n det(V'')^m`` at dyadic roundings of real points."""
    Q1 = [[_dyadic(x) for x in p] for p in np.real(P1)]
    Q2 = [[_dyadic(x) for x in p] for p in np.real(P2)]
    m, n = len(Q1), len(Q2)
    V1 = build_vdm(VdmSpec(d1), Q1)
    V2 = build_vdm(VdmSpec(d2), Q2)
    Q = [Q1[k % m] + Q2[k // m] for k in range(m * n)]
    V = build_vdm(VdmSpec(tuple(d1) + tuple(d2)), Q)
    lhs = det_exact(V)
    rhs = det_exact(V1) ** n * det_exact(V2) ** m
    return {"holds": lhs == rhs, "det": lhs, "det1": det_exact(V1), "det2": det_exact(V2)}


@dataclass(frozen=True)
class MultiplicativityReport:
    N: int
    weights: tuple
    lhs: float
    rhs: float
    t1: float
    t2: float
    exponent1: Fraction
    exponent2: Fraction
    product_log_abs_det: float
    factored_log_abs_det: float
    exact_identity: bool | None

    @property
    def relative_gap(self) -> float:
        return abs(self.lhs - self.rhs) / self.rhs


def multiplicativity_check(K1, K2, w, N: int, budget: int = 1, seed: int = 0,
                           workers: int = 1) -> MultiplicativityReport:
    """Compare ``t_w(K1 x K2)`` with ``t_w'(K1)^(|w'|/|w|) t_w''(K2)^(|w''|/|w|)`` at one N.

    Also pairs the two factor configurations into the product grid used in
    the lower-bound argument and checks the Kronecker determinant identity
    exactly (real sets only; ``exact_identity`` is ``None`` otherwise).
    """
    w = _weights(w)
    r1 = K1.dimension
    if len(w) != r1 + K2.dimension:
        raise DimensionError(f"{len(w)} weights for a product of dimension {r1 + K2.dimension}")
    w1, w2 = w[:r1], w[r1:]
    degs = tuple(x * N for x in w)
    if any(d.denominator != 1 for d in degs):
        raise ValueError(f"w*N = {degs} is not integral")
    degs = tuple(int(d) for d in degs)
    d1, d2 = degs[:r1], degs[r1:]
    if degree_D(d1) == 0 or degree_D(d2) == 0:
        raise ValueError(f"N={N} gives a zero degree for one factor")
    whole = fekete_search(Product((K1, K2)), degs, budget, seed, workers=workers)
    f1 = fekete_search(K1, d1, budget, seed, workers=workers)
    f2 = fekete_search(K2, d2, budget, seed, workers=workers)
    e1, e2 = sum(w1) / sum(w), sum(w2) / sum(w)
    rhs = f1.estimate ** float(e1) * f2.estimate ** float(e2)
    m, n = prod(d1), prod(d2)
    P = product_configuration(f1.points, f2.points)
    prod_log = _log_abs_det(_monomial_rows(P.astype(whole.points.dtype), degs))
    factored = n * f1.log_abs_det + m * f2.log_abs_det
    exact = None
    if K1.is_real and K2.is_real:
        exact = kronecker_identity(f1.points, d1, f2.points, d2)["holds"]
    return MultiplicativityReport(N, w, whole.estimate, rhs, f1.estimate, f2.estimate, e1, e2,
                                  prod_log, factored, exact)
