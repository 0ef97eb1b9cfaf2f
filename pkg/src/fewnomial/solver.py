"""Positive solutions of Viro systems near the seeds given by decorated facets.

Everything numerical happens in logarithmic coordinates, so positivity is
built in and a small t only shifts the exponents linearly.  Exponent vectors
are divided by their largest absolute entry first; the resulting coordinates
v = scale * log(x) do not change when the support is replaced by N times
itself, which is how rational exponents were made integral.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .complexes import SimplicialComplex
from .decoration import facet_submatrix, is_positively_spanning
from .geometry import (
    ViroSystem,
    DegeneracyError,
    facet_volumes,
    lower_hull_triangulation,
)
from .linalg import as_fraction, determinant

RESIDUAL_TOL = 1e-10
STEP_TOL = 1e-12
MAX_ITER = 100
COND_MAX = 1e12
DEDUP_TOL = 1e-6
T_SCHEDULE = tuple(Fraction(1, 10**e) for e in range(1, 13))


class SolverError(ValueError):
    pass


def log_fraction(x: Fraction) -> float:
    x = as_fraction(x)
    if x <= 0:
        raise SolverError("logarithm of a non-positive number")
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class NumericSystem:
    """Float data of a Viro system at a fixed t, with exponents rescaled to max |w| = 1."""

    exponents: np.ndarray  # (n, d), divided by ``scale``
    coeffs: np.ndarray  # (d, n)
    heights: np.ndarray  # (n,)
    log_t: float
    scale: float

    @classmethod
    def from_system(cls, system: ViroSystem, t=None) -> "NumericSystem":
        t = system.t if t is None else as_fraction(t)
        w = np.array([[float(x) for x in p] for p in system.support.points])
        scale = float(np.max(np.abs(w))) or 1.0
        return cls(
            w / scale,
            np.array(system.coeffs.to_floats()),
            np.array([float(x) for x in system.nu]),
            log_fraction(t),
            scale,
        )

    @property
    def d(self) -> int:
        return self.coeffs.shape[0]

    def log_monomials(self, v: np.ndarray) -> np.ndarray:
        return self.exponents @ v + self.heights * self.log_t

    def row_normalization(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per-row shift (largest active log-monomial) and scale (largest |term| after the shift)."""
        e = self.log_monomials(v)
        active = self.coeffs != 0
        shifts = np.where(active, e[None, :], -np.inf).max(axis=1)
        terms = np.abs(self.coeffs) * np.exp(np.minimum(e[None, :] - shifts[:, None], 0.0))
        return shifts, terms.max(axis=1)

    def evaluate(self, v: np.ndarray, shifts=None, scales=None) -> tuple[np.ndarray, np.ndarray]:
        """Row-scaled residual F and its Jacobian in v.

        With fixed ``shifts`` and ``scales`` the rows are constant multiples
        of the original polynomials, so J is exactly the derivative of F.
        """
        if shifts is None:
            shifts, scales = self.row_normalization(v)
        e = self.log_monomials(v)
        terms = self.coeffs * np.exp(e[None, :] - shifts[:, None]) / scales[:, None]
        return terms.sum(axis=1), terms @ self.exponents


# ---------------------------------------------------------------------------
# seeds


@dataclass(frozen=True)
class SeedPoint:
    facet: tuple[int, ...]
    v: np.ndarray
    kernel: tuple[Fraction, ...]

    @property
    def point(self) -> np.ndarray:
        return np.exp(self.v)


def binomial_seed(system: ViroSystem, facet: Sequence[int], t=None, numeric: NumericSystem | None = None) -> SeedPoint:
    """The solution of the system restricted to ``facet``, in scaled log coordinates.

    The terms of the facet must be proportional to the positive kernel vector
    lambda of C_tau, which is a square linear system in log coordinates.
    """
    facet = tuple(facet)
    verdict = is_positively_spanning(facet_submatrix(system.coeffs, facet))
    if not verdict:
        raise SolverError(f"facet {facet} is not positively decorated ({verdict.reason})")
    last = facet[-1]
    diffs = [[a - b for a, b in zip(system.support[j], system.support[last])] for j in facet[:-1]]
    if determinant(diffs) == 0:
        raise SolverError(f"facet {facet} spans a degenerate simplex")
    ns = numeric or NumericSystem.from_system(system, t)
    lam = verdict.kernel
    rows = np.array([ns.exponents[j - 1] - ns.exponents[last - 1] for j in facet[:-1]])
    rhs = np.array(
        [
            log_fraction(lam[i] / lam[-1]) - (ns.heights[j - 1] - ns.heights[last - 1]) * ns.log_t
            for i, j in enumerate(facet[:-1])
        ]
    )
    return SeedPoint(facet, np.linalg.solve(rows, rhs), lam)


# ---------------------------------------------------------------------------
# Newton


@dataclass(frozen=True)
class VerifiedSolution:
    facet: tuple[int, ...]
    ok: bool
    v: np.ndarray
    residual: float
    condition: float
    iterations: int
    message: str = ""

    def log_coordinates(self, scale: float) -> np.ndarray:
        return self.v / scale


def newton_refine(
    ns: NumericSystem,
    seed: np.ndarray,
    facet: tuple[int, ...] = (),
    tol: float = RESIDUAL_TOL,
    step_tol: float = STEP_TOL,
    max_iter: int = MAX_ITER,
    cond_max: float = COND_MAX,
) -> VerifiedSolution:
    v = np.array(seed, dtype=float)
    cond = float("nan")
    res = float("inf")

    def fail(it, msg):
        return VerifiedSolution(facet, False, v, res, cond, it, msg)

    for it in range(1, max_iter + 1):
        if not np.all(np.isfinite(v)):
            return fail(it, "non-finite iterate")
        f, jac = ns.evaluate(v)
        res = float(np.max(np.abs(f)))
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(jac))):
            return fail(it, "non-finite residual")
        cond = float(np.linalg.cond(jac))
        if not cond < cond_max:
            return fail(it, f"singular Jacobian (condition {cond:.3g})")
        step = np.linalg.solve(jac, -f)
        v = v + step
        # relative to |v| so that tiny t (large |v|) does not defeat the test
        if np.linalg.norm(step) < step_tol * max(1.0, float(np.linalg.norm(v))):
            f, jac = ns.evaluate(v)
            res = float(np.max(np.abs(f)))
            cond = float(np.linalg.cond(jac))
            if res < tol and cond < cond_max:
                return VerifiedSolution(facet, True, v, res, cond, it)
            return fail(it, f"stalled with residual {res:.3g}")
    return fail(max_iter, "no convergence")


# ---------------------------------------------------------------------------
# counting


@dataclass(frozen=True)
class SolveReport:
    t: Fraction
    scale: float
    decorated: tuple[tuple[int, ...], ...]
    results: tuple[VerifiedSolution, ...]
    distinct: tuple[VerifiedSolution, ...]
    dedup_tol: float

    @property
    def count(self) -> int:
        return len(self.distinct)

    @property
    def complete(self) -> bool:
        return self.count == len(self.decorated)

    def min_distance(self) -> float:
        vs = [s.v for s in self.distinct]
        dists = [float(np.linalg.norm(a - b)) for i, a in enumerate(vs) for b in vs[i + 1 :]]
        return min(dists) if dists else float("inf")

    def max_residual(self) -> float:
        return max((s.residual for s in self.distinct), default=0.0)

    def max_condition(self) -> float:
        return max((s.condition for s in self.distinct), default=0.0)

    def to_json(self) -> dict:
        return {
            "t": _fmt_t(self.t),
            "count": self.count,
            "decorated": len(self.decorated),
            "dedup_tol": self.dedup_tol,
            "exponent_scale": self.scale,
            "min_distance": self.min_distance(),
            "facets": [
                {
                    "facet": list(s.facet),
                    "status": "verified" if s.ok else "failed",
                    "residual": s.residual,
                    "condition": s.condition,
                    "iterations": s.iterations,
                    "log_point": [float(x) for x in s.v / self.scale],
                    **({"message": s.message} if s.message else {}),
                }
                for s in self.results
            ],
            "certificate": "heuristic: relative residual and Jacobian condition, double precision",
        }


def _fmt_t(t: Fraction) -> str:
    return str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"


def _solve_facet(args) -> VerifiedSolution:
    system, ns, facet = args
    try:
        seed = binomial_seed(system, facet, numeric=ns)
    except (SolverError, np.linalg.LinAlgError) as exc:
        return VerifiedSolution(facet, False, np.full(ns.d, np.nan), float("inf"), float("nan"), 0, str(exc))
    return newton_refine(ns, seed.v, facet)


def deduplicate(solutions: Sequence[VerifiedSolution], tol: float = DEDUP_TOL) -> list[VerifiedSolution]:
    kept: list[VerifiedSolution] = []
    for s in solutions:
        if s.ok and all(np.linalg.norm(s.v - k.v) > tol for k in kept):
            kept.append(s)
    return kept


def count_positive_solutions(
    system: ViroSystem,
    facets: SimplicialComplex | Sequence[Sequence[int]] | None = None,
    t=None,
    dedup_tol: float = DEDUP_TOL,
    jobs: int = 1,
) -> SolveReport:
    """Seed and refine one solution per decorated facet; count the distinct ones."""
    t = system.t if t is None else as_fraction(t)
    if facets is None:
        facets = system.facets
    if facets is None:
        raise SolverError("no facets given and the system carries none")
    facet_list = [tuple(f) for f in facets]
    decorated = tuple(
        sorted(f for f in facet_list if is_positively_spanning(facet_submatrix(system.coeffs, f)))
    )
    ns = NumericSystem.from_system(system, t)
    work = [(system, ns, f) for f in decorated]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_facet, work))
    else:
        results = [_solve_facet(w) for w in work]
    return SolveReport(t, ns.scale, decorated, tuple(results), tuple(deduplicate(results, dedup_tol)), dedup_tol)


def t_search(
    system: ViroSystem,
    facets=None,
    schedule: Sequence[Fraction] = T_SCHEDULE,
    dedup_tol: float = DEDUP_TOL,
    jobs: int = 1,
) -> SolveReport:
    """The first t in the schedule with one verified solution per decorated facet, else the best seen."""
    best = None
    for t in schedule:
        rep = count_positive_solutions(system, facets, t, dedup_tol, jobs)
        if rep.complete:
            return rep
        if best is None or rep.count > best.count:
            best = rep
    return best


# ---------------------------------------------------------------------------
# independent checks


def jacobian_error(ns: NumericSystem, v: np.ndarray, h: float = 1e-8, dps: int = 40) -> float:
    """Relative Frobenius error between the analytic Jacobian and central differences.

    The differences are taken in ``dps``-digit arithmetic on the same float
    data, so cancellation among large terms does not swamp a small Jacobian.
    """
    shifts, scales = ns.row_normalization(v)
    _, jac = ns.evaluate(v, shifts, scales)
    with mpmath.workdps(dps):
        w = [[mpmath.mpf(float(x)) for x in row] for row in ns.exponents]
        base = [mpmath.mpf(float(x)) * mpmath.mpf(ns.log_t) for x in ns.heights]
        rows = [
            [(mpmath.mpf(float(c)), mpmath.mpf(float(sh)), mpmath.mpf(float(sc))) for c in crow]
            for crow, sh, sc in zip(ns.coeffs, shifts, scales)
        ]

        def value(x):
            e = [sum((a * b for a, b in zip(wr, x)), mpmath.mpf(0)) + b0 for wr, b0 in zip(w, base)]
            return [mpmath.fsum(c * mpmath.exp(ej - sh) / sc for (c, sh, sc), ej in zip(r, e) if c != 0) for r in rows]

        x0 = [mpmath.mpf(float(x)) for x in v]
        step = mpmath.mpf(h)
        fd = np.empty_like(jac)
        for j in range(len(x0)):
            plus, minus = list(x0), list(x0)
            plus[j] += step
            minus[j] -= step
            fd[:, j] = [float((a - b) / (2 * step)) for a, b in zip(value(plus), value(minus))]
    return float(np.linalg.norm(jac - fd) / max(np.linalg.norm(jac), 1e-300))


def high_precision_residual(system: ViroSystem, log_point: Sequence[float], t=None, dps: int = 50) -> float:
    """Relative residual of the exact rational system at exp(log_point), in mpmath."""
    t = system.t if t is None else as_fraction(t)
    with mpmath.workdps(dps):
        log_t = mpmath.log(mpmath.mpf(t.numerator)) - mpmath.log(mpmath.mpf(t.denominator))
        u = [mpmath.mpf(float(x)) for x in log_point]
        logs = []
        for w, nu in zip(system.support.points, system.nu):
            logs.append(sum((mpmath.mpf(int(a)) * b for a, b in zip(w, u)), mpmath.mpf(0)) + mpmath.mpf(nu.numerator) / nu.denominator * log_t)
        worst = mpmath.mpf(0)
        for row in system.coeffs.entries:
            active = [(c, e) for c, e in zip(row, logs) if c != 0]
            top = max(e for _, e in active)
            terms = [mpmath.mpf(c.numerator) / c.denominator * mpmath.exp(e - top) for c, e in active]
            worst = max(worst, abs(mpmath.fsum(terms)) / max(abs(x) for x in terms))
        return float(worst)


def univariate_positive_roots(system: ViroSystem, t=None, grid: int = 20001, margin: float = 5.0) -> list[float]:
    """Positive roots of a one-variable system, as log coordinates, by sign changes and bisection."""
    ns = NumericSystem.from_system(system, t)
    if ns.d != 1:
        raise SolverError("root isolation is only for one variable")
    w = ns.exponents[:, 0]
    breaks = []
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] != w[j]:
                breaks.append(-(ns.heights[i] - ns.heights[j]) * ns.log_t / (w[i] - w[j]))
    lo, hi = (min(breaks) - margin, max(breaks) + margin) if breaks else (-margin, margin)

    def sign_value(x: float) -> float:
        f, _ = ns.evaluate(np.array([x]))
        return float(f[0])

    xs = np.linspace(lo, hi, grid)
    vals = [sign_value(x) for x in xs]
    roots = []
    for a, b, fa, fb in zip(xs, xs[1:], vals, vals[1:]):
        if fa == 0:
            roots.append(float(a))
        elif fa * fb < 0:
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = sign_value(mid)
                if fm == 0 or b - a < 1e-15 * max(1.0, abs(mid)):
                    break
                if (fm < 0) == (fa < 0):
                    a, fa = mid, fm
                else:
                    b = mid
            roots.append(float(0.5 * (a + b)))
    return [r / ns.scale for r in roots]


@dataclass(frozen=True)
class MaximalPositivity:
    maximal: bool
    volume: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.maximal


def maximal_positivity(system: ViroSystem, count: int) -> MaximalPositivity:
    """Flag (not a certificate over C): the facets are the whole regular unimodular triangulation and count = Vol."""
    if system.facets is None:
        return MaximalPositivity(False, reason="no facets attached")
    try:
        full = lower_hull_triangulation(system.support, system.nu)
    except DegeneracyError as exc:
        return MaximalPositivity(False, reason=str(exc))
    vols = facet_volumes(system.support, full)
    volume = sum(vols.values())
    if full != system.facets:
        return MaximalPositivity(False, volume, "facets are not the full regular triangulation")
    if any(v != 1 for v in vols.values()):
        return MaximalPositivity(False, volume, "triangulation is not unimodular")
    if count != volume:
        return MaximalPositivity(False, volume, f"verified {count} of {volume}")
    return MaximalPositivity(True, volume, "unimodular and every facet verified")
