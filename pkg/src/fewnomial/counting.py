"""Delannoy and corona numbers, matching oracles, and bounds on Xi, R and xi.

Counts are exact Python integers.  Curve values are floats; huge integers are
brought to log scale through their bit length and leading 64 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .cyclic import corona_edge, is_matching

PROVENANCES = ("parity-formula", "product-DP", "seed", "monotone")


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class BoundRecord:
    d: int
    k: int
    value: int
    provenance: str

    def __post_init__(self):
        if self.value < 1:
            raise BoundError("bounds are at least 1")
        if self.provenance not in PROVENANCES:
            raise BoundError(f"unknown provenance {self.provenance!r}")


@dataclass(frozen=True)
class CurveSample:
    alpha: Fraction | float
    value: float


# ---------------------------------------------------------------------------
# big-integer helpers


def int_log2(n: int) -> float:
    if n <= 0:
        raise ValueError("log of a nonpositive integer")
    b = n.bit_length()
    if b <= 64:
        return math.log2(n)
    return math.log2(n >> (b - 64)) + (b - 64)


def int_log10(n: int) -> float:
    return int_log2(n) * math.log10(2)


def scientific(n: int, digits: int = 4) -> tuple[float, int]:
    """``(mantissa, exponent)`` with ``n ~ mantissa * 10**exponent``, mantissa in [1, 10)."""
    s = str(n)
    e = len(s) - 1
    mant = float(f"{s[0]}.{s[1:digits + 2] or '0'}")
    return round(mant, digits - 1), e


@dataclass(frozen=True)
class ScaledFloat:
    """``mantissa * 2**exponent`` with mantissa in [1, 2)."""

    mantissa: float
    exponent: int

    @classmethod
    def from_log2(cls, lg: float) -> "ScaledFloat":
        e = math.floor(lg)
        return cls(2.0 ** (lg - e), e)

    def log2(self) -> float:
        return math.log2(self.mantissa) + self.exponent

    def __float__(self):
        return math.ldexp(self.mantissa, self.exponent)

    def __ge__(self, other):
        return self.log2() >= _log2_of(other)

    def __le__(self, other):
        return self.log2() <= _log2_of(other)


def _log2_of(x) -> float:
    if isinstance(x, ScaledFloat):
        return x.log2()
    if isinstance(x, int):
        return int_log2(x)
    return math.log2(x)


# ---------------------------------------------------------------------------
# Delannoy / corona numbers


def delannoy_table(hmax: int, kmax: int) -> list[list[int]]:
    """D_{h,k} for 0 <= h <= hmax, 0 <= k <= kmax by the three-term recurrence."""
    t = [[1] * (kmax + 1) for _ in range(hmax + 1)]
    for h in range(1, hmax + 1):
        for k in range(1, kmax + 1):
            t[h][k] = t[h][k - 1] + t[h - 1][k] + t[h - 1][k - 1]
    return t


def delannoy_sum(h: int, k: int) -> int:
    return sum(2**l * math.comb(h, l) * math.comb(k, l) for l in range(min(h, k) + 1))


@lru_cache(maxsize=None)
def delannoy(h: int, k: int) -> int:
    if h < 0 or k < 0:
        raise BoundError("Delannoy indices must be nonnegative")
    rec = delannoy_table(h, k)[h][k]
    closed = delannoy_sum(h, k)
    if rec != closed:
        raise AssertionError(f"Delannoy recurrence and closed sum disagree at ({h}, {k})")
    return rec


def corona_count(h: int, k: int) -> int:
    """F_{h,k} = D_{h,k} + D_{h-1,k-1} (second term absent on the border)."""
    if h < 0 or k < 0:
        raise BoundError("corona indices must be nonnegative")
    extra = delannoy(h - 1, k - 1) if h and k else 0
    return delannoy(h, k) + extra


# ---------------------------------------------------------------------------
# matching oracles


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices 1..nvertices; loops are allowed but never match."""

    nvertices: int
    edges: tuple[tuple[int, int], ...]


def corona_graph(m: int) -> Graph:
    """A cycle through the odd vertices 1, 3, ..., 2m-1 with a spike at each.

    For m = 2 the cycle is a double edge and for m = 1 a loop, which is what
    the comb-plus-reference-edge construction gives.
    """
    return Graph(2 * m, tuple(corona_edge(i, m) for i in range(1, 2 * m + 1)))


def comb_graph(m: int) -> Graph:
    """The corona graph without its reference edge (2m-1, 1)."""
    return Graph(2 * m, tuple(corona_edge(i, m) for i in range(1, 2 * m)))


def count_matchings(g: Graph, size: int) -> int:
    if size == 0:
        return 1
    return sum(1 for es in combinations(g.edges, size) if is_matching(es))


# ---------------------------------------------------------------------------
# lower bounds on Xi


def _exact(frac: Fraction) -> int:
    if frac.denominator != 1:
        raise AssertionError(f"bound {frac} is not an integer")
    return frac.numerator


def xi_parity_lower_bound(d: int, k: int) -> BoundRecord:
    """Bound on Xi_{d,k} from the S complexes, chosen by the parities of d and k.

    With d = 2i-1 the complex S_{2(i+j),2i-1} is only regular for i >= 2; at
    i = 1 it is the whole boundary of a polygon and one facet must go.
    """
    if d < 1 or k < 1:
        raise BoundError("need d, k >= 1")
    if d % 2:
        i = (d + 1) // 2
        if k % 2 == 0:
            j = k // 2
            value = corona_count(i, j) - (1 if i == 1 else 0)
        else:
            j = (k + 1) // 2
            value = _exact(Fraction(j, i + j) * corona_count(i, j))
    else:
        i = d // 2
        if k % 2 == 0:
            j = k // 2
            value = _exact(Fraction(i + 1, i + j + 1) * corona_count(i + 1, j))
        else:
            j = (k + 1) // 2
            # Xi_{1,1} * Xi_{2i-1, 2(j-1)}
            inner = corona_count(i, j - 1) - (1 if i == 1 and j > 1 else 0)
            value = 2 * inner
    return BoundRecord(d, k, value, "parity-formula")


CLASSICAL_SEEDS = "classical"
PARITY_SEEDS = "parity"
DEFAULT_GRID_CAP = 512


def _blocks(dmax: int, kmax: int, seeds: str) -> list[tuple[int, int, int]]:
    """Building blocks (d, k, value) whose products bound Xi."""
    blocks = {(1, kk): kk + 1 for kk in range(1, kmax + 1)}
    blocks.update({(dd, 1): dd + 1 for dd in range(1, dmax + 1)})
    if dmax >= 2 and kmax >= 2:
        blocks[(2, 2)] = 7
    if seeds == PARITY_SEEDS:
        for dd in range(1, dmax + 1):
            for kk in range(1, kmax + 1):
                v = xi_parity_lower_bound(dd, kk).value
                if v > blocks.get((dd, kk), 0):
                    blocks[(dd, kk)] = v
    elif seeds != CLASSICAL_SEEDS:
        raise BoundError(f"unknown seed set {seeds!r}")
    return sorted((dd, kk, v) for (dd, kk), v in blocks.items())


@lru_cache(maxsize=8)
def _product_table(dmax: int, kmax: int, seeds: str):
    """Unbounded 2-D knapsack over log values: best product of blocks fitting in (d, k)."""
    blocks = _blocks(dmax, kmax, seeds)
    best = np.zeros((dmax + 1, kmax + 1))
    for bd, bk, v in blocks:
        lv = math.log(v)
        for dd in range(bd, dmax + 1):
            cand = best[dd - bd, : kmax + 1 - bk] + lv
            np.maximum(best[dd, bk:], cand, out=best[dd, bk:])
    return best, blocks


def _reconstruct(best, blocks, d: int, k: int) -> list[tuple[int, int, int]]:
    used = []
    while best[d, k] > 1e-12:
        target = best[d, k]
        tol = 1e-9 * max(1.0, target)
        if d and abs(best[d - 1, k] - target) <= tol:
            d -= 1
            continue
        if k and abs(best[d, k - 1] - target) <= tol:
            k -= 1
            continue
        for bd, bk, v in blocks:
            if bd <= d and bk <= k and abs(best[d - bd, k - bk] + math.log(v) - target) <= tol:
                used.append((bd, bk, v))
                d, k = d - bd, k - bk
                break
        else:
            raise AssertionError("could not reconstruct the product bound")
    return used


def xi_product_decomposition(d: int, k: int, seeds: str = CLASSICAL_SEEDS) -> list[tuple[int, int, int]]:
    best, blocks = _product_table(d, k, seeds)
    return _reconstruct(best, blocks, d, k)


def xi_product_lower_bound(
    d: int, k: int, seeds: str = CLASSICAL_SEEDS, grid_cap: int = DEFAULT_GRID_CAP
) -> BoundRecord:
    """Best bound from products of seed values plus monotonicity in d and k."""
    if d < 1 or k < 1:
        raise BoundError("need d, k >= 1")
    if max(d, k) > grid_cap:
        rec = xi_parity_lower_bound(d, k)
        return rec
    used = xi_product_decomposition(d, k, seeds)
    value = math.prod(v for _, _, v in used)
    if len(used) == 1:
        prov = "seed" if used[0][:2] == (d, k) else "monotone"
    else:
        prov = "product-DP"
    return BoundRecord(d, k, value, prov)


def xi_best_lower_bound(d: int, k: int, seeds: str = CLASSICAL_SEEDS) -> BoundRecord:
    a = xi_parity_lower_bound(d, k)
    b = xi_product_lower_bound(d, k, seeds)
    return a if a.value >= b.value else b


def khovanskii_upper_bound(d: int, k: int) -> ScaledFloat:
    """((e^2+3)/4) 2^{k(k-1)/2} d^k."""
    if d < 1 or k < 1:
        raise BoundError("need d, k >= 1")
    exact = 2 ** (k * (k - 1) // 2) * d**k
    return ScaledFloat.from_log2(math.log2((math.e**2 + 3) / 4) + int_log2(exact))


# ---------------------------------------------------------------------------
# asymptotic curves on the segment alpha + beta = 1


def _check_alpha(alpha) -> float:
    a = float(alpha)
    if not 0 < a < 1:
        raise BoundError("alpha must lie in (0, 1)")
    return a


def xi_asymptotic_bound(alpha) -> CurveSample:
    a = _check_alpha(alpha)
    b = 1.0 - a if not isinstance(alpha, Fraction) else float(1 - alpha)
    r = math.hypot(a, b)
    value = ((r + b) / a) ** (a / 2) * ((r + a) / b) ** (b / 2)
    return CurveSample(alpha, value)


def classical_curve_points(qmax: int = 64) -> list[CurveSample]:
    """Points from Xi_{2,2} >= 7 and Xi_{d,1} = Xi_{1,d} = d+1."""
    pts = {Fraction(1, 2): 7 ** 0.25}
    for q in range(1, qmax + 1):
        v = (q + 1) ** (1 / (q + 1))
        for a in (Fraction(q, q + 1), Fraction(1, q + 1)):
            pts[a] = max(pts.get(a, 0.0), v)
    return [CurveSample(a, v) for a, v in sorted(pts.items())]


def parity_curve_points(nmax: int) -> list[CurveSample]:
    """Points (d/(d+k), P_{d,k}^{1/(d+k)}) from the parity bounds for d, k <= nmax."""
    pts: dict[Fraction, float] = {}
    for d in range(1, nmax + 1):
        for k in range(1, nmax + 1):
            a = Fraction(d, d + k)
            v = 2 ** (int_log2(xi_parity_lower_bound(d, k).value) / (d + k))
            pts[a] = max(pts.get(a, 0.0), v)
    return [CurveSample(a, v) for a, v in sorted(pts.items())]


def _upper_hull(pts: list[tuple[float, float]]) -> list[tuple[float, float]]:
    hull: list[tuple[float, float]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly above the chord
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _merge(samples) -> list[tuple[Fraction | float, float]]:
    best: dict = {}
    for s in samples:
        if s.value <= 0:
            raise BoundError("curve values must be positive")
        best[s.alpha] = max(best.get(s.alpha, -math.inf), math.log(s.value))
    return sorted(best.items(), key=lambda kv: float(kv[0]))


def log_concave_envelope(samples) -> list[CurveSample]:
    """Upper concave envelope of (alpha, log value), evaluated at every input alpha."""
    merged = _merge(samples)
    if len(merged) < 2:
        raise BoundError("an envelope needs at least two samples")
    hull = _upper_hull([(float(a), lv) for a, lv in merged])
    return [CurveSample(a, math.exp(_interp(hull, float(a)))) for a, _ in merged]


def envelope_at(samples, alpha) -> float:
    """Value of the log-concave envelope of ``samples`` at ``alpha``.

    Outside the sampled range the envelope is undefined; ``nan`` is returned.
    """
    merged = _merge(samples)
    hull = _upper_hull([(float(a), lv) for a, lv in merged])
    return math.exp(_interp(hull, float(alpha)))


def _interp(hull: list[tuple[float, float]], x: float) -> float:
    if x < hull[0][0] - 1e-15 or x > hull[-1][0] + 1e-15:
        return math.nan
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 - 1e-15 <= x <= x2 + 1e-15:
            if x2 == x1:
                return max(y1, y2)
            return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
    return hull[0][1]


# ---------------------------------------------------------------------------
# R_{d,k}: largest regular (d-1)-complex on d+k vertices with regular complement


def _r_small(d: int, k: int) -> int | None:
    d, k = min(d, k), max(d, k)
    if d == 1:
        return 1
    if d == 2:
        return k + 1
    if d == 3:
        if k == 3 or k >= 5:
            return 2 * k + 1
        if k == 4:
            return 8
    return None


def _cyclic_r_upper(a: int, b: int) -> int:
    return math.comb(2 * b + a, a) + math.comb(2 * b + a - 1, a - 1)


def r_bounds(d: int, k: int) -> tuple[BoundRecord | None, int | None]:
    """(lower, upper) for R_{d,k}; ``None`` where no formula applies."""
    if d < 1 or k < 1:
        raise BoundError("need d, k >= 1")
    small = _r_small(d, k)
    if small is not None:
        return BoundRecord(d, k, small, "seed"), small
    lower = upper = None
    if d % 2 == 0 and k % 2 == 0:
        # both halves >= 2 here, so S and its complement are proper subcomplexes
        lower = BoundRecord(d, k, corona_count(d // 2, k // 2), "parity-formula")
        dd, kk = d // 2, k // 2
        # cyclic facet count bounds R_{2a,2b}; R is symmetric, so use the better ordering
        upper = min(_cyclic_r_upper(dd, kk), _cyclic_r_upper(kk, dd))
    return lower, upper


def r_upper_curve(alpha) -> CurveSample:
    """Limit of R^{1/(total)} along the ray with d/(d+k) = alpha, both even."""
    a = _check_alpha(alpha)
    b = 1.0 - a if not isinstance(alpha, Fraction) else float(1 - alpha)
    value = ((a + 2 * b) / (2 * b)) ** b * ((a + 2 * b) / a) ** (a / 2)
    return CurveSample(alpha, value)


def corona_rate(n: int) -> float:
    """(F_{n,n})^{1/(4n)}, which increases towards (1+sqrt 2)^{1/2}."""
    return 2 ** (int_log2(corona_count(n, n)) / (4 * n))
