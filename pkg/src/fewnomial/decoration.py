"""Positive decorations and their Gale-dual certificates.

A d x (d+1) matrix is positively spanning when its columns positively span
R^d.  Two independent tests are run on every call, the alternating signed
minors and the sign pattern of the kernel generator, and they must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .complexes import SimplicialComplex, adjacency_edges, complement, is_proper_coloring
from .linalg import (
    LinearProgram,
    RationalMatrix,
    ShapeError,
    determinant,
    kernel_basis,
    lp_feasible,
    rank,
    signed_minors,
)
from .points import GeometryError, PointConfig, hyperplane_through


class DecorationError(ValueError):
    pass


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SpanningVerdict:
    positive: bool
    reason: str
    # positive generator of the kernel when the matrix is positively spanning
    kernel: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.positive


def minor_test(m: RationalMatrix) -> bool:
    signs = {_sign(v) for v in signed_minors(m.entries)}
    return 0 not in signs and len(signs) == 1


def kernel_test(m: RationalMatrix) -> tuple[bool, tuple[Fraction, ...] | None]:
    ker = kernel_basis(m.entries)
    if len(ker) != 1:
        return False, None
    v = ker[0]
    signs = {_sign(x) for x in v}
    if 0 in signs or len(signs) != 1:
        return False, None
    if signs == {-1}:
        v = tuple(-x for x in v)
    return True, v


def origin_interior_test(m: RationalMatrix) -> bool:
    """Origin strictly inside conv(columns): some lambda >= 1 with M lambda = 0 (by LP)."""
    d, n = m.shape
    pairs = []
    for j in range(n):
        pairs.append(([int(i == j) for i in range(n)], 1))
    for r in m.entries:
        pairs.append((list(r), 0))
        pairs.append(([-x for x in r], 0))
    return lp_feasible(LinearProgram.from_pairs(n, pairs)).feasible


def is_positively_spanning(m) -> SpanningVerdict:
    if not isinstance(m, RationalMatrix):
        m = RationalMatrix.from_rows(m)
    d, cols = m.shape
    if d == 0 or cols != d + 1:
        raise ShapeError(f"positive spanning is defined for d x (d+1) matrices, got {m.shape}")
    if rank(m.entries) < d:
        return SpanningVerdict(False, "rank deficient")
    by_minors = minor_test(m)
    by_kernel, gen = kernel_test(m)
    if by_minors != by_kernel:
        raise AssertionError(f"minor and kernel tests disagree on {m.entries}")
    if by_minors:
        return SpanningVerdict(True, "signed minors share a sign", gen)
    return SpanningVerdict(False, "signed minors change sign")


def positive_kernel_vector(m: RationalMatrix) -> tuple[Fraction, ...]:
    v = is_positively_spanning(m)
    if not v:
        raise DecorationError(f"matrix is not positively spanning ({v.reason})")
    return v.kernel


def _check_shape(c: RationalMatrix, gamma: SimplicialComplex):
    if c.shape != (gamma.dim, gamma.n):
        raise ShapeError(f"decoration of a ({gamma.n},{gamma.dim})-complex must be {gamma.dim}x{gamma.n}, got {c.shape}")


def facet_submatrix(c: RationalMatrix, facet: Sequence[int]) -> RationalMatrix:
    return c.submatrix([v - 1 for v in facet])


@dataclass(frozen=True)
class DecorationReport:
    ok: bool
    failing: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def __bool__(self):
        return self.ok


def positively_decorates(c: RationalMatrix, gamma: SimplicialComplex) -> DecorationReport:
    _check_shape(c, gamma)
    failing = tuple(f for f in gamma.facets if not is_positively_spanning(facet_submatrix(c, f)))
    return DecorationReport(not failing, failing)


def decorated_facets(c: RationalMatrix, gamma: SimplicialComplex) -> list[tuple[int, ...]]:
    _check_shape(c, gamma)
    return [f for f in gamma.facets if is_positively_spanning(facet_submatrix(c, f))]


def decoration_from_coloring(
    coloring: Mapping[int, int], n: int, d: int, gamma: SimplicialComplex | None = None
) -> RationalMatrix:
    """Columns e_{colour(i)}, with e_{d+1} = (-1, ..., -1)."""
    if gamma is not None and not is_proper_coloring(gamma, coloring):
        raise DecorationError("colouring is not proper for this complex")
    cols = []
    for v in range(1, n + 1):
        c = coloring.get(v)
        if c is None or not 1 <= c <= d + 1:
            raise DecorationError(f"vertex {v} has no colour in 1..{d + 1}")
        cols.append([-1] * d if c == d + 1 else [int(i == c - 1) for i in range(d)])
    return RationalMatrix.from_columns(cols)


# ---------------------------------------------------------------------------
# Gale duality


def affine_matrix(points: PointConfig) -> RationalMatrix:
    """The (dim+1) x n matrix with a row of ones above the point coordinates."""
    return RationalMatrix.from_columns([[1, *p] for p in points.points])


def gale_transform(points: PointConfig) -> RationalMatrix:
    """Rows form a kernel basis of the affine matrix; shape (n-dim-1) x n."""
    if not points.spans():
        raise GeometryError("points do not affinely span their space")
    rows = kernel_basis(affine_matrix(points).entries)
    if not rows:
        raise GeometryError("a simplex has an empty Gale transform")
    return RationalMatrix(tuple(rows))


@dataclass(frozen=True)
class FacetSupport:
    supported: bool
    # values of the supporting functional (>= 0, zero exactly off tau) when supported
    values: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.supported


def facet_support_check(points: PointConfig, tau: Sequence[int]) -> FacetSupport:
    """Whether conv(points) has a facet containing exactly the points outside ``tau``."""
    sigma = [i for i in points.labels() if i not in set(tau)]
    if len(sigma) != points.dim:
        raise ShapeError(f"tau must leave exactly {points.dim} points, leaves {len(sigma)}")
    h = hyperplane_through([points[i] for i in sigma])
    if h is None:
        return FacetSupport(False)
    vals = [h(p) for p in points.points]
    outside = [vals[i - 1] for i in tau]
    if all(v > 0 for v in outside):
        return FacetSupport(True, tuple(vals))
    if all(v < 0 for v in outside):
        return FacetSupport(True, tuple(-v for v in vals))
    return FacetSupport(False)


def complete_realization(gamma: SimplicialComplex, realization: Mapping[int, Sequence] | PointConfig) -> PointConfig:
    """Points for every label; labels not used by the complement go to the barycenter."""
    if isinstance(realization, PointConfig):
        if realization.n != gamma.n:
            raise GeometryError(f"need {gamma.n} points, got {realization.n}")
        return realization
    placed = {int(k): v for k, v in realization.items() if v is not None}
    known = PointConfig.from_points([placed[k] for k in sorted(placed)])
    center = known.barycenter()
    return PointConfig.from_points([placed.get(i, center) for i in range(1, gamma.n + 1)], known.dim)


def decorate_via_complement(gamma: SimplicialComplex, realization) -> RationalMatrix:
    """A positive decoration of ``gamma`` read off a realization of its complement.

    ``realization`` places label i at a point of R^{n-d-1}; every facet of the
    complement must be a facet of the convex hull.  The result is the Gale
    transform of the points, so (1, ..., 1) lies in its kernel.
    """
    points = complete_realization(gamma, realization)
    e = gamma.n - gamma.dim - 1
    if points.dim != e:
        raise GeometryError(f"complement must be realized in dimension {e}, got {points.dim}")
    for tau in gamma.facets:
        if not facet_support_check(points, tau):
            bad = tuple(i for i in points.labels() if i not in tau)
            raise DecorationError(f"complement facet {bad} is not a facet of the realization")
    c = gale_transform(points)
    if c.rows != gamma.dim:
        raise GeometryError("realization is not full-dimensional")
    return c


def realize_complement(c: RationalMatrix, gamma: SimplicialComplex) -> PointConfig:
    """Points in R^{n-d-1} whose hull has every complement facet as a facet.

    One nonnegative kernel vector per facet, supported on it; their sum
    rescales the columns so the all-ones vector is in the kernel, and the
    Gale transform of the rescaled vectors gives the points.
    """
    rep = positively_decorates(c, gamma)
    if not rep:
        raise DecorationError(f"matrix does not decorate facets {rep.failing}")
    lam = [Fraction(0)] * gamma.n
    for tau in gamma.facets:
        gen = positive_kernel_vector(facet_submatrix(c, tau))
        for v, g in zip(tau, gen):
            lam[v - 1] += g
    if any(x == 0 for x in lam):
        unused = [i + 1 for i, x in enumerate(lam) if x == 0]
        raise DecorationError(f"vertices {unused} lie in no facet; no strictly positive kernel vector from facets")
    scaled = c.scale_columns(lam)
    ker = kernel_basis(scaled.entries)
    rows = [tuple(Fraction(1) for _ in range(gamma.n))]
    for v in ker:
        if rank(rows + [v]) > len(rows):
            rows.append(v)
    pts = PointConfig.from_points(zip(*rows[1:]), len(rows) - 1)
    for tau in gamma.facets:
        if not facet_support_check(pts, tau):
            raise AssertionError(f"Gale dual misses the complement facet of {tau}")
    return pts


# ---------------------------------------------------------------------------
# orientations


def orientation_determinant(c: RationalMatrix, ordered: Sequence[int]) -> Fraction:
    cols = [list(c.column(v - 1)) + [1] for v in ordered]
    return determinant([list(r) for r in zip(*cols)])


def orientation_inconsistency(c: RationalMatrix, gamma: SimplicialComplex) -> bool:
    """True when C orients every adjacent pair of facets inconsistently.

    With the common ridge listed first and the distinct vertex last, the two
    determinants of C_tau over a row of ones must share their sign.
    """
    rep = positively_decorates(c, gamma)
    if not rep:
        raise DecorationError(f"matrix does not decorate facets {rep.failing}")
    for a, b in adjacency_edges(gamma):
        ridge = sorted(set(a) & set(b))
        (x,) = set(a) - set(b)
        (y,) = set(b) - set(a)
        da = orientation_determinant(c, ridge + [x])
        db = orientation_determinant(c, ridge + [y])
        if _sign(da) != _sign(db) or da == 0:
            return False
    return True


def complement_pair(gamma: SimplicialComplex) -> tuple[SimplicialComplex, SimplicialComplex]:
    return gamma, complement(gamma)
