import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fewnomial.complexes import SimplicialComplex
from fewnomial.geometry import affine_certificate, build_viro_system
from fewnomial.linalg import RationalMatrix
from fewnomial.pipeline import simcomp6_system
from fewnomial.points import PointConfig
from fewnomial.solver import (
    NumericSystem,
    SolverError,
    binomial_seed,
    count_positive_solutions,
    deduplicate,
    high_precision_residual,
    jacobian_error,
    log_fraction,
    maximal_positivity,
    newton_refine,
    t_search,
    univariate_positive_roots,
)


def path_system(t="1/100", scale=1):
    # 1 - x + t x^2 - t^3 x^3: convex heights, alternating signs
    support = PointConfig.from_points([(scale * i,) for i in range(4)])
    path = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4)])
    return build_viro_system(support, [[1, -1, 1, -1]], (0, 0, 1, 3), t, path)


def test_log_fraction():
    assert log_fraction(Fraction(1, 100)) == pytest.approx(-math.log(100))
    with pytest.raises(SolverError):
        log_fraction(0)


def test_seed_for_a_binomial_is_exact():
    # x = 2 from x - 2 = 0
    sys_ = build_viro_system(PointConfig.from_points([(0,), (1,)]), [[-2, 1]], (0, 0))
    seed = binomial_seed(sys_, (1, 2))
    assert seed.v[0] == pytest.approx(math.log(2))


def test_seed_for_a_planar_triangle():
    pts = PointConfig.from_points([(0, 0), (1, 0), (0, 1)])
    coeffs = [[1, -1, 0], [1, 0, -1]]  # x = 1, y = 1 scaled by t
    sys_ = build_viro_system(pts, coeffs, (0, 1, 2), t="1/10")
    seed = binomial_seed(sys_, (1, 2, 3))
    ns = NumericSystem.from_system(sys_)
    f, _ = ns.evaluate(seed.v)
    assert np.max(np.abs(f)) < 1e-14
    assert seed.v == pytest.approx([math.log(10), 2 * math.log(10)])


@pytest.mark.parametrize("facet", [(1, 2, 3), (1, 3, 4), (4, 5, 6)])
def test_seed_moves_with_the_affine_piece(facet):
    sys_ = simcomp6_system()
    cert = affine_certificate(sys_.support, facet, sys_.nu)
    base = binomial_seed(sys_, facet, t=1)
    scale = NumericSystem.from_system(sys_).scale
    for t in (Fraction(1, 10), Fraction(1, 1000)):
        moved = binomial_seed(sys_, facet, t=t)
        expect = base.v / scale - np.array([float(a) for a in cert.alpha]) * math.log(t)
        assert moved.v / scale == pytest.approx(expect, rel=1e-12, abs=1e-12)


def test_seed_rejects_undecorated_facet():
    sys_ = simcomp6_system()
    with pytest.raises(SolverError):
        binomial_seed(sys_, (4, 6, 7))


def test_far_seed_is_reported_as_failure():
    ns = NumericSystem.from_system(simcomp6_system(), "1/100")
    sol = newton_refine(ns, np.array([40.0, -40.0]), max_iter=3)
    assert not sol.ok and sol.message


def test_path_system_against_root_isolation():
    sys_ = path_system()
    rep = count_positive_solutions(sys_)
    assert rep.count == 3
    roots = sorted(univariate_positive_roots(sys_))
    found = sorted(float(s.v[0]) / rep.scale for s in rep.distinct)
    assert found == pytest.approx(roots, abs=1e-9)
    # and the roots are genuine roots of the rational polynomial
    for r in roots:
        x = math.exp(r)
        t = 0.01
        terms = [1, -x, t * x**2, -(t**3) * x**3]
        assert abs(sum(terms)) < 1e-9 * max(abs(v) for v in terms)


def test_simcomp6_solutions():
    rep = count_positive_solutions(simcomp6_system(), t="1/100")
    assert rep.complete and rep.count == 6
    assert rep.max_residual() < 1e-10
    assert rep.max_condition() < 1e12
    assert rep.min_distance() / rep.scale > 1e-6
    for s in rep.distinct:
        assert high_precision_residual(simcomp6_system(), s.v / rep.scale, "1/100") < 1e-10
    data = rep.to_json()
    assert data["count"] == 6 and data["certificate"].startswith("heuristic")


def test_t_search_stops_at_first_complete_t():
    rep = t_search(simcomp6_system())
    assert rep.complete
    assert rep.t >= Fraction(1, 100)


def test_exponent_scaling_invariance():
    a = count_positive_solutions(path_system(scale=1))
    b = count_positive_solutions(path_system(scale=7))
    assert a.count == b.count == 3
    la = sorted(float(s.v[0]) / a.scale for s in a.distinct)
    lb = sorted(float(s.v[0]) / b.scale for s in b.distinct)
    assert lb == pytest.approx([x / 7 for x in la], rel=1e-9)


def test_dedup_is_monotone():
    rep = count_positive_solutions(simcomp6_system(), t="1/100")
    counts = [len(deduplicate(rep.results, tol)) for tol in (1e-9, 1e-6, 1e-1, 1.0, 5.0, 100.0)]
    assert counts == sorted(counts, reverse=True)
    assert counts[0] == 6 and counts[-1] == 1


def test_jacobian_matches_finite_differences():
    ns = NumericSystem.from_system(simcomp6_system(), "1/100")
    rng = np.random.default_rng(7)
    for _ in range(10):
        assert jacobian_error(ns, rng.normal(size=2)) < 1e-6


def test_jacobian_check_catches_a_wrong_derivative(monkeypatch):
    ns = NumericSystem.from_system(simcomp6_system(), "1/100")
    v = np.array([0.3, -0.2])
    good = NumericSystem.evaluate

    def skewed(self, x, shifts=None, scales=None):
        f, jac = good(self, x, shifts, scales)
        return f, jac * 1.01

    monkeypatch.setattr(NumericSystem, "evaluate", skewed)
    assert jacobian_error(ns, v) > 5e-3


@given(st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=30, deadline=None)
def test_high_precision_residual_of_exact_point(p, q):
    # x = 2^p, y = 3^q solves x - 2^p = 0, y - 3^q = 0
    pts = PointConfig.from_points([(0, 0), (1, 0), (0, 1)])
    coeffs = RationalMatrix.from_rows([[-Fraction(2) ** p, 1, 0], [-Fraction(3) ** q, 0, 1]])
    sys_ = build_viro_system(pts, coeffs, (0, 0, 0))
    assert high_precision_residual(sys_, [p * math.log(2), q * math.log(3)]) < 1e-15


def test_maximal_positivity_is_only_a_flag():
    flag = maximal_positivity(path_system(), 3)
    assert flag and flag.volume == 3
    assert not maximal_positivity(path_system(), 2)
    assert not maximal_positivity(simcomp6_system(), 6)


def test_parallel_jobs_agree():
    a = count_positive_solutions(simcomp6_system(), t="1/100")
    b = count_positive_solutions(simcomp6_system(), t="1/100", jobs=2)
    assert a.count == b.count
    for x, y in zip(a.distinct, b.distinct):
        assert x.v == pytest.approx(y.v)
