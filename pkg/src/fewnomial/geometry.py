"""Liftings, regular triangulations, Schlegel projections and Viro systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, lcm
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import linprog

from .complexes import SimplicialComplex
from .decoration import decorated_facets
from .linalg import (
    LinearProgram,
    RationalMatrix,
    SingularMatrixError,
    as_fraction,
    determinant,
    format_fraction,
    lp_feasible,
    solve,
)
from .points import GeometryError, PointConfig, hull_facets

Lifting = tuple[Fraction, ...]


class DegeneracyError(GeometryError):
    pass


def as_lifting(nu: Sequence, n: int | None = None) -> Lifting:
    out = tuple(as_fraction(x) for x in nu)
    if n is not None and len(out) != n:
        raise GeometryError(f"lifting has {len(out)} heights for {n} points")
    return out


def moment_points(n: int, dim: int, a: Sequence | None = None) -> PointConfig:
    """Points (a_i, a_i^2, ..., a_i^dim) on the moment curve; a_i = i by default."""
    params = [Fraction(i) for i in range(1, n + 1)] if a is None else [as_fraction(x) for x in a]
    if len(params) != n:
        raise GeometryError(f"need {n} curve parameters, got {len(params)}")
    if any(x >= y for x, y in zip(params, params[1:])):
        raise GeometryError("moment curve parameters must be strictly increasing")
    return PointConfig.from_points([[x**p for p in range(1, dim + 1)] for x in params], dim)


# ---------------------------------------------------------------------------
# affine pieces of a lifting


@dataclass(frozen=True)
class AffineCertificate:
    """nu(w) = <alpha, w> + beta on the vertices of ``facet``."""

    facet: tuple[int, ...]
    alpha: tuple[Fraction, ...]
    beta: Fraction

    def __call__(self, w: Sequence[Fraction]) -> Fraction:
        return self.beta + sum((a * x for a, x in zip(self.alpha, w)), Fraction(0))


def affine_certificate(points: PointConfig, facet: Sequence[int], nu: Sequence) -> AffineCertificate:
    nu = as_lifting(nu, points.n)
    if len(facet) != points.dim + 1:
        raise GeometryError(f"a facet needs {points.dim + 1} vertices")
    rows = [[*points[i], 1] for i in facet]
    if determinant(rows) == 0:
        raise DegeneracyError(f"points {tuple(facet)} are affinely dependent")
    sol = solve(rows, [nu[i - 1] for i in facet])
    return AffineCertificate(tuple(facet), tuple(sol[:-1]), sol[-1])


def lower_facet_gaps(points: PointConfig, facet: Sequence[int], nu: Sequence) -> list[Fraction]:
    """nu(w) minus the affine interpolant on ``facet``, for every label w."""
    cert = affine_certificate(points, facet, nu)
    nu = as_lifting(nu)
    return [nu[j - 1] - cert(points[j]) for j in points.labels()]


def lower_hull_triangulation(points: PointConfig, nu: Sequence) -> SimplicialComplex:
    """Facets of the lower hull of the lifted points, by brute force over simplices."""
    if not points.spans():
        raise GeometryError("points do not affinely span their space")
    nu = as_lifting(nu, points.n)
    facets = []
    for sub in combinations(points.labels(), points.dim + 1):
        try:
            gaps = lower_facet_gaps(points, sub, nu)
        except DegeneracyError:
            continue
        if any(g < 0 for g in gaps):
            continue
        flat = [j for j, g in zip(points.labels(), gaps) if g == 0]
        if len(flat) > len(sub):
            raise DegeneracyError(f"lower face through {tuple(flat)} is not a simplex")
        facets.append(sub)
    return SimplicialComplex.from_facets(points.n, facets, points.dim)


def check_regularity_certificate(points: PointConfig, gamma: SimplicialComplex, nu: Sequence) -> bool:
    """Every facet of gamma is a lower facet: the lifting lies strictly above its affine piece elsewhere."""
    nu = as_lifting(nu, points.n)
    if gamma.dim != points.dim or gamma.n != points.n:
        return False
    for f in gamma.facets:
        try:
            gaps = lower_facet_gaps(points, f, nu)
        except DegeneracyError:
            return False
        if any(g <= 0 for j, g in zip(points.labels(), gaps) if j not in f):
            return False
    return True


def barycentric_coordinates(points: PointConfig, facet: Sequence[int], w: Sequence) -> tuple[Fraction, ...]:
    """Affine coordinates of w with respect to the vertices of ``facet`` (may be negative)."""
    cols = [[*points[i], 1] for i in facet]
    return solve([list(r) for r in zip(*cols)], [*w, 1])


@dataclass(frozen=True)
class LiftingResult:
    feasible: bool
    heights: Lifting | None = None
    certificate: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.feasible


def lifting_program(points: PointConfig, gamma: SimplicialComplex, bound=None) -> LinearProgram:
    """nu(w) minus the interpolant on each facet is at least 1 off that facet; optionally 0 <= nu <= bound."""
    pairs = []
    for f in gamma.facets:
        for j in points.labels():
            if j in f:
                continue
            b = barycentric_coordinates(points, f, points[j])
            a = [Fraction(0)] * points.n
            a[j - 1] += 1
            for i, bi in zip(f, b):
                a[i - 1] -= bi
            pairs.append((a, 1))
    if bound is not None:
        for j in range(points.n):
            unit = [int(i == j) for i in range(points.n)]
            pairs.append((unit, 0))
            pairs.append(([-x for x in unit], -as_fraction(bound)))
    return LinearProgram.from_pairs(points.n, pairs)


def shift_heights(nu: Sequence[Fraction]) -> Lifting:
    low = min(nu)
    return tuple(x - low for x in nu)


def integral_heights(nu: Sequence[Fraction]) -> Lifting:
    """Scale to integers and shift so the smallest height is 0; lower facets are unchanged."""
    n = lcm(*(x.denominator for x in nu))
    return shift_heights([x * n for x in nu])


def find_lifting(points: PointConfig, gamma: SimplicialComplex, bound=None, integral: bool = False) -> LiftingResult:
    """Heights making every facet of gamma a lower facet, or a Farkas certificate that none exist.

    Every gap between a lifted point and a facet's affine piece is at least 1.
    With ``bound`` the heights are also confined to [0, bound], which keeps
    the ratio between the smallest gap and the height range under control.
    """
    if gamma.dim != points.dim or gamma.n != points.n:
        raise GeometryError("complex and point configuration do not match")
    lp = lifting_program(points, gamma, bound)
    if not lp.constraints:
        return LiftingResult(True, tuple(Fraction(0) for _ in points.labels()))
    res = lp_feasible(lp)
    if not res:
        return LiftingResult(False, certificate=res.certificate)
    heights = integral_heights(res.point) if integral else shift_heights(res.point)
    if not check_regularity_certificate(points, gamma, heights):
        raise AssertionError("LP heights fail the regularity check")
    return LiftingResult(True, heights)


def margin_estimate(points: PointConfig, gamma: SimplicialComplex) -> float:
    """Largest gap achievable with heights in [0, 1], from a floating-point LP (a hint only)."""
    lp = lifting_program(points, gamma)
    if not lp.constraints:
        return 1.0
    a = np.array([[float(x) for x in row] for row, _ in lp.constraints])
    n = points.n
    a_ub = np.hstack([-a, np.ones((len(a), 1))])
    res = linprog(np.r_[np.zeros(n), -1.0], A_ub=a_ub, b_ub=np.zeros(len(a)), bounds=[(0, 1)] * (n + 1))
    return float(-res.fun) if res.status == 0 else 0.0


def balanced_lifting(points: PointConfig, gamma: SimplicialComplex, tries: int = 8) -> LiftingResult:
    """An exact lifting with a height range close to the smallest possible.

    The floating-point margin only proposes the bound; feasibility and the
    regularity check are exact.  Falls back to the unbounded program.
    """
    delta = margin_estimate(points, gamma)
    if delta > 0:
        bound = Fraction(max(1, ceil(1.25 / delta)))
        for _ in range(tries):
            res = find_lifting(points, gamma, bound)
            if res:
                return res
            bound *= 2
    return find_lifting(points, gamma)


def rounded_support(
    points: PointConfig, gamma: SimplicialComplex, max_doublings: int = 40
) -> tuple[PointConfig, int, LiftingResult] | None:
    """Integer points near N * points that still lift ``gamma``, for the smallest N = 2^j found.

    Clearing denominators can blow exponents up to ~1e10; nearby small integer
    points usually carry the same triangulation, and the exact lifting program
    decides whether they do.  None if no N up to 2^max_doublings works.
    """
    n = 1
    for _ in range(max_doublings + 1):
        cand = PointConfig(points.dim, tuple(tuple(Fraction(round(n * x)) for x in p) for p in points.points))
        try:
            res = balanced_lifting(cand, gamma)
        except (SingularMatrixError, GeometryError):
            res = None
        if res:
            return cand, n, res
        n *= 2
    return None


# ---------------------------------------------------------------------------
# Schlegel diagrams


@dataclass(frozen=True)
class SchlegelDiagram:
    points: PointConfig
    triangulation: SimplicialComplex
    facet: tuple[int, ...]
    viewpoint: tuple[Fraction, ...]


def schlegel_project(polytope: PointConfig, facet: Sequence[int], max_halvings: int = 64) -> SchlegelDiagram:
    """Project the boundary of a simplicial polytope into one of its facets.

    The viewpoint sits just beyond ``facet``; every vertex is sent to where its
    line to the viewpoint meets the facet's hyperplane, in coordinates relative
    to the facet's vertices (first vertex at 0, the others at e_1, e_2, ...).
    """
    facet = tuple(sorted(facet))
    hull = hull_facets(polytope)
    if facet not in hull:
        raise GeometryError(f"{facet} is not a facet of the polytope")
    h = hull[facet]
    center = polytope.barycenter(facet)
    eps = Fraction(1)
    for _ in range(max_halvings):
        o = tuple(c - eps * a for c, a in zip(center, h.normal))
        if all(g(o) > 0 for f, g in hull.items() if f != facet):
            break
        eps /= 2
    else:
        raise GeometryError("no viewpoint found beyond the facet")

    base = polytope[facet[0]]
    basis = [tuple(x - y for x, y in zip(polytope[i], base)) for i in facet[1:]]
    gram = [[sum(a * b for a, b in zip(u, v)) for v in basis] for u in basis]
    ho = h(o)
    images = []
    for v in polytope.points:
        direction = [x - y for x, y in zip(v, o)]
        s = -ho / sum((a * b for a, b in zip(h.normal, direction)), Fraction(0))
        p = [y + s * dv for y, dv in zip(o, direction)]
        rel = [x - y for x, y in zip(p, base)]
        images.append(solve(gram, [sum(a * b for a, b in zip(u, rel)) for u in basis]))
    pc = PointConfig.from_points(images, polytope.dim - 1)
    tri = SimplicialComplex.from_facets(polytope.n, (f for f in hull if f != facet), polytope.dim - 1)
    return SchlegelDiagram(pc, tri, facet, o)


# ---------------------------------------------------------------------------
# volumes


def normalized_volume(simplex: Sequence[Sequence]) -> int:
    pts = [tuple(as_fraction(x) for x in p) for p in simplex]
    if any(x.denominator != 1 for p in pts for x in p):
        raise GeometryError("normalized volume needs integral points")
    if len(pts) != len(pts[0]) + 1:
        raise GeometryError("a d-simplex needs d+1 points")
    rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    return abs(int(determinant(rows))) if rows else 1


def facet_volumes(points: PointConfig, gamma: SimplicialComplex) -> dict[tuple[int, ...], int]:
    return {f: normalized_volume([points[i] for i in f]) for f in gamma.facets}


def is_unimodular(points: PointConfig, gamma: SimplicialComplex) -> bool:
    return all(v == 1 for v in facet_volumes(points, gamma).values())


# ---------------------------------------------------------------------------
# Viro systems


@dataclass(frozen=True)
class ViroSystem:
    """f_i = sum_j C_ij t^{nu_j} X^{w_j}, i = 1..d."""

    support: PointConfig
    coeffs: RationalMatrix
    nu: Lifting
    t: Fraction
    facets: SimplicialComplex | None = None

    def __post_init__(self):
        if not self.support.is_integral():
            raise GeometryError("system support must be integral")
        if self.coeffs.shape != (self.support.dim, self.support.n):
            raise GeometryError(f"coefficients must be {self.support.dim}x{self.support.n}, got {self.coeffs.shape}")
        if len(self.nu) != self.support.n:
            raise GeometryError("one height per monomial is required")
        if self.t <= 0:
            raise GeometryError("t must be positive")
        if self.facets is not None and (self.facets.n, self.facets.dim) != (self.support.n, self.support.dim):
            raise GeometryError("facet complex does not match the support")

    @property
    def d(self) -> int:
        return self.support.dim

    @property
    def n(self) -> int:
        return self.support.n

    def with_t(self, t) -> "ViroSystem":
        return ViroSystem(self.support, self.coeffs, self.nu, as_fraction(t), self.facets)

    def terms(self, i: int) -> list[tuple[Fraction, Fraction, tuple[int, ...]]]:
        """Nonzero terms of f_{i+1} as (coefficient, power of t, exponent)."""
        return [
            (c, nu, w)
            for c, nu, w in zip(self.coeffs.row(i), self.nu, self.support.integral_points())
            if c != 0
        ]

    def to_text(self) -> list[str]:
        out = []
        for i in range(self.d):
            parts = []
            for c, nu, w in self.terms(i):
                mono = "*".join(f"X{v + 1}^{e}" if e != 1 else f"X{v + 1}" for v, e in enumerate(w) if e != 0)
                tpow = "" if nu == 0 else ("t" if nu == 1 else f"t^{format_fraction(nu)}")
                mag = format_fraction(abs(c))
                factors = [x for x in (("" if mag == "1" and (tpow or mono) else mag), tpow, mono) if x]
                parts.append(("- " if c < 0 else "+ ") + "*".join(factors))
            text = " ".join(parts) if parts else "0"
            out.append(f"f{i + 1} = " + (text[2:] if text.startswith("+ ") else text))
        return out

    def to_json(self) -> dict:
        data = {
            "d": self.d,
            "support": [list(p) for p in self.support.integral_points()],
            "coeffs": [[format_fraction(x) for x in r] for r in self.coeffs.entries],
            "nu": [format_fraction(x) for x in self.nu],
            "t": format_fraction(self.t),
        }
        if self.facets is not None:
            data["facets"] = [list(f) for f in self.facets.facets]
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "ViroSystem":
        support = PointConfig.from_points(data["support"], data.get("d"))
        coeffs = RationalMatrix.from_rows(data["coeffs"])
        facets = None
        if data.get("facets"):
            facets = SimplicialComplex.from_facets(support.n, data["facets"], support.dim)
        return build_viro_system(support, coeffs, data["nu"], data.get("t", 1), facets)


def build_viro_system(support: PointConfig, coeffs, nu: Sequence, t=1, facets: SimplicialComplex | None = None) -> ViroSystem:
    t = as_fraction(t)
    if t <= 0:
        raise GeometryError("t must be positive")
    if not isinstance(coeffs, RationalMatrix):
        coeffs = RationalMatrix.from_rows(coeffs)
    return ViroSystem(support, coeffs, as_lifting(nu, support.n), t, facets)


def decorated_facet_count(gamma: SimplicialComplex, coeffs: RationalMatrix) -> int:
    return len(decorated_facets(coeffs, gamma))


def scale_to_integral(points: PointConfig) -> tuple[PointConfig, int]:
    """Integral exponents by clearing denominators; x -> x^N preserves positive solution counts."""
    return points.scaled_to_integers()
