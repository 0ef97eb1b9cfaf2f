"""Labelled rational point configurations and exact affine helpers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .linalg import as_fraction, format_fraction, kernel_basis, rank

Point = tuple[Fraction, ...]


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class PointConfig:
    """Points w_1..w_n in Q^dim; label i refers to ``points[i-1]``."""

    dim: int
    points: tuple[Point, ...]

    def __post_init__(self):
        if any(len(p) != self.dim for p in self.points):
            raise GeometryError(f"every point needs {self.dim} coordinates")

    @classmethod
    def from_points(cls, points: Iterable[Sequence], dim: int | None = None) -> "PointConfig":
        pts = tuple(tuple(as_fraction(x) for x in p) for p in points)
        if dim is None:
            if not pts:
                raise GeometryError("cannot infer the dimension of an empty configuration")
            dim = len(pts[0])
        return cls(dim, pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def __getitem__(self, label: int) -> Point:
        return self.points[label - 1]

    def labels(self) -> range:
        return range(1, self.n + 1)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for p in self.points for x in p)

    def integral_points(self) -> list[tuple[int, ...]]:
        if not self.is_integral():
            raise GeometryError("configuration is not integral")
        return [tuple(int(x) for x in p) for p in self.points]

    def scaled_to_integers(self) -> tuple["PointConfig", int]:
        """Multiply by the lcm of all denominators; returns the new config and the factor."""
        n = lcm(*(x.denominator for p in self.points for x in p)) if self.points else 1
        return PointConfig(self.dim, tuple(tuple(x * n for x in p) for p in self.points)), n

    def affine_rank(self, labels: Iterable[int] | None = None) -> int:
        labs = list(self.labels() if labels is None else labels)
        return rank([[1, *self[i]] for i in labs]) - 1

    def spans(self) -> bool:
        return self.affine_rank() == self.dim

    def barycenter(self, labels: Iterable[int] | None = None) -> Point:
        labs = list(self.labels() if labels is None else labels)
        return tuple(sum((self[i][c] for i in labs), Fraction(0)) / len(labs) for c in range(self.dim))

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": [[format_fraction(x) for x in p] for p in self.points]}

    @classmethod
    def from_json(cls, data) -> "PointConfig":
        if isinstance(data, list):
            return cls.from_points(data)
        return cls.from_points(data["points"], data.get("dim"))


@dataclass(frozen=True)
class Hyperplane:
    """Affine functional ``h(x) = offset + <normal, x>``."""

    normal: Point
    offset: Fraction

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return self.offset + sum((a * b for a, b in zip(self.normal, x)), Fraction(0))

    def __neg__(self) -> "Hyperplane":
        return Hyperplane(tuple(-a for a in self.normal), -self.offset)


def hyperplane_through(pts: Sequence[Sequence[Fraction]]) -> Hyperplane | None:
    """The affine hyperplane through ``dim`` points, or None if they are affinely dependent."""
    ker = kernel_basis([[1, *p] for p in pts])
    if len(ker) != 1:
        return None
    v = ker[0]
    return Hyperplane(tuple(v[1:]), v[0])


def hull_facets(pc: PointConfig) -> dict[tuple[int, ...], Hyperplane]:
    """Facets of conv(pc) by brute force, for simplicial polytopes in general position.

    Each value is the facet hyperplane oriented so that h >= 0 on the polytope.
    A facet-defining hyperplane through more than ``dim`` points is reported as
    an error, since the polytope is then not simplicial.
    """
    if not pc.spans():
        raise GeometryError("points do not affinely span their space")
    out = {}
    for sub in combinations(pc.labels(), pc.dim):
        h = hyperplane_through([pc[i] for i in sub])
        if h is None:
            continue
        vals = [h(pc[j]) for j in pc.labels() if j not in sub]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            h = -h
            vals = [-v for v in vals]
        else:
            continue
        if any(v == 0 for v in vals):
            raise GeometryError(f"non-simplicial or degenerate facet through {sub}")
        out[sub] = h
    return out
