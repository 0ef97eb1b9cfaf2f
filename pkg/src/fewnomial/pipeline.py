"""From an S-complex to a Viro system with one positive solution per facet.

The stages are: place the cyclic polytope on the moment curve, take a
Schlegel diagram at a boundary facet outside S, move to small integral
exponents that still carry the induced triangulation, lift it, and decorate S
through a realization of its complement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import SimplicialComplex
from .cyclic import s_complex, swap_permutation
from .decoration import decorate_via_complement, decoration_from_coloring, positively_decorates
from .geometry import (
    Lifting,
    ViroSystem,
    balanced_lifting,
    build_viro_system,
    check_regularity_certificate,
    decorated_facet_count,
    moment_points,
    rounded_support,
    schlegel_project,
)
from .linalg import RationalMatrix
from .points import PointConfig, hull_facets


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: Exception | str):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage


@dataclass(frozen=True)
class PipelineResult:
    m: int
    k: int
    system: ViroSystem
    gamma: SimplicialComplex
    triangulation: SimplicialComplex
    schlegel_facet: tuple[int, ...]
    exponent_scale: int

    @property
    def decorated(self) -> int:
        return decorated_facet_count(self.gamma, self.system.coeffs)


def complement_realization(m: int, k: int, a=None) -> PointConfig:
    """Label i goes to moment point swap(i) in dimension 2m-2k."""
    n = 2 * m
    mu = moment_points(n, n - 2 * k, a)
    swap = swap_permutation(n)
    return PointConfig(mu.dim, tuple(mu[swap[i]] for i in range(1, n + 1)))


def s_pipeline(m: int, k: int, t=1, a=None) -> PipelineResult:
    if not 2 <= k < m:
        raise PipelineError("input", f"need 2 <= k < m, got m={m}, k={k}")
    gamma = s_complex(m, k)
    n = 2 * m

    try:
        polytope = moment_points(n, 2 * k, a)
        outside = sorted(f for f in hull_facets(polytope) if f not in gamma)
    except Exception as exc:
        raise PipelineError("cyclic polytope", exc) from exc
    if not outside:
        raise PipelineError("schlegel", "every boundary facet belongs to S")

    try:
        diagram = schlegel_project(polytope, outside[0])
    except Exception as exc:
        raise PipelineError("schlegel", exc) from exc
    if not gamma.is_subcomplex_of(diagram.triangulation):
        raise PipelineError("schlegel", "S is not part of the induced triangulation")

    compact = rounded_support(diagram.points, diagram.triangulation)
    if compact is not None:
        support, scale, lifting = compact
    else:
        lifting = balanced_lifting(diagram.points, diagram.triangulation)
        if not lifting:
            raise PipelineError("lifting", "the Schlegel triangulation admits no lifting")
        support, scale = diagram.points.scaled_to_integers()
    heights: Lifting = lifting.heights
    if not check_regularity_certificate(support, gamma, heights):
        raise PipelineError("scaling", "regularity lost on the integral support")

    try:
        coeffs: RationalMatrix = decorate_via_complement(gamma, complement_realization(m, k, a))
    except Exception as exc:
        raise PipelineError("decoration", exc) from exc
    rep = positively_decorates(coeffs, gamma)
    if not rep:
        raise PipelineError("decoration", f"facets {rep.failing} are not positively decorated")

    system = build_viro_system(support, coeffs, heights, t, gamma)
    return PipelineResult(m, k, system, gamma, diagram.triangulation, diagram.facet, scale)


# the balanced planar complex with seven points and six triangles
SIMCOMP6_POINTS = ((1, -1), (-4, -6), (-4, 4), (6, 0), (3, 6), (10, 5), (6, -6))
SIMCOMP6_HEIGHTS = (0, 0, 0, 3, 5, 10, 2)
SIMCOMP6_FACETS = ((1, 2, 3), (1, 2, 7), (1, 3, 4), (1, 4, 7), (3, 4, 5), (4, 5, 6))
SIMCOMP6_COLORING = {1: 1, 2: 2, 3: 3, 4: 2, 5: 1, 6: 3, 7: 3}


def simcomp6_system(t=1) -> ViroSystem:
    points = PointConfig.from_points(SIMCOMP6_POINTS)
    gamma = SimplicialComplex.from_facets(7, SIMCOMP6_FACETS, 2)
    coeffs = decoration_from_coloring(SIMCOMP6_COLORING, 7, 2, gamma)
    return build_viro_system(points, coeffs, SIMCOMP6_HEIGHTS, t, gamma)
