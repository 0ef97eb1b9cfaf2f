import random
from itertools import combinations
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fewnomial.complexes import SimplicialComplex, complement, find_coloring, is_bipartite
from fewnomial.cyclic import relabel_swap, s_complex
from fewnomial.decoration import (
    DecorationError,
    affine_matrix,
    decorate_via_complement,
    decorated_facets,
    decoration_from_coloring,
    facet_submatrix,
    facet_support_check,
    gale_transform,
    is_positively_spanning,
    kernel_test,
    minor_test,
    orientation_inconsistency,
    origin_interior_test,
    positively_decorates,
    realize_complement,
)
from fewnomial.linalg import RationalMatrix, ShapeError, kernel_basis, rank
from fewnomial.pipeline import complement_realization
from fewnomial.points import GeometryError, PointConfig

from reference_values import NOT_BALANCED_FACETS, NOT_BALANCED_VECTORS, SIMCOMP6_BALANCED_FACETS

HEXAGON = PointConfig.from_points([(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)])
S_CASES = [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3)]
entry = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def M(rows):
    return RationalMatrix.from_rows(rows)


def test_spanning_examples():
    assert is_positively_spanning([[1, 0, -1], [0, 1, -1]])
    assert is_positively_spanning([[1, -1]])
    v = is_positively_spanning([[1, 0, 1], [0, 1, 1]])
    assert not v
    assert kernel_basis([[1, 0, 1], [0, 1, 1]]) == [(-1, -1, 1)]
    deficient = is_positively_spanning([[1, 2, 3], [2, 4, 6]])
    assert not deficient and deficient.reason == "rank deficient"
    with pytest.raises(ShapeError):
        is_positively_spanning([[1, 2], [3, 4]])


def test_three_routes_on_seeded_random_matrices():
    rng = random.Random(20240611)
    positives = 0
    for _ in range(1000):
        m = M([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)] for _ in range(3)])
        verdict = is_positively_spanning(m)  # raises if the minor and kernel routes disagree
        if rank(m.entries) == 3:
            assert minor_test(m) == kernel_test(m)[0] == bool(verdict)
        assert origin_interior_test(m) == bool(verdict)
        positives += bool(verdict)
    assert 0 < positives < 1000


@given(st.lists(st.lists(entry, min_size=4, max_size=4), min_size=3, max_size=3), st.permutations(range(4)))
@settings(max_examples=80, deadline=None)
def test_invariance_under_row_ops_and_column_permutations(rows, perm):
    m = M(rows)
    base = bool(is_positively_spanning(m))
    g = M([[2, 1, 0], [0, 1, -1], [1, 0, 3]])  # nonsingular
    assert bool(is_positively_spanning(g @ m)) == base
    assert bool(is_positively_spanning(m.submatrix(list(perm)))) == base


def test_positively_decorates_path():
    path = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4)])
    assert positively_decorates(M([[1, -1, 1, -1]]), path)
    rep = positively_decorates(M([[1, 1, 1, 1]]), path)
    assert not rep and rep.failing == path.facets
    with pytest.raises(ShapeError):
        positively_decorates(M([[1, -1, 1]]), path)
    assert orientation_inconsistency(M([[1, -1, 1, -1]]), path)


def test_decoration_from_coloring_examples():
    tri = SimplicialComplex.from_facets(3, [(1, 2, 3)])
    c = decoration_from_coloring({1: 1, 2: 2, 3: 3}, 3, 2, tri)
    assert c == M([[1, 0, -1], [0, 1, -1]])
    assert is_positively_spanning(c)
    path = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4)])
    assert decoration_from_coloring({1: 1, 2: 2, 3: 1, 4: 2}, 4, 1, path) == M([[1, -1, 1, -1]])
    with pytest.raises(DecorationError):
        decoration_from_coloring({1: 1, 2: 1, 3: 1, 4: 2}, 4, 1, path)


def test_balanced_planar_complex():
    gamma = SimplicialComplex.from_facets(7, SIMCOMP6_BALANCED_FACETS)
    c = decoration_from_coloring(find_coloring(gamma), 7, 2, gamma)
    assert positively_decorates(c, gamma)
    assert orientation_inconsistency(c, gamma)


def test_bipartite_but_not_balanced():
    gamma = SimplicialComplex.from_facets(7, NOT_BALANCED_FACETS)
    c = RationalMatrix.from_columns([NOT_BALANCED_VECTORS[i] for i in range(1, 8)])
    assert positively_decorates(c, gamma)
    assert is_bipartite(gamma)
    assert find_coloring(gamma) is None
    assert orientation_inconsistency(c, gamma)


def test_gale_transform_square_and_hexagon():
    square = PointConfig.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
    (row,) = gale_transform(square).entries
    assert rank([row, (1, -1, 1, -1)]) == 1
    c = gale_transform(HEXAGON)
    assert c.shape == (3, 6)
    assert all(x == 0 for x in (c @ affine_matrix(HEXAGON).transpose()).entries for x in x)
    with pytest.raises(GeometryError):
        gale_transform(PointConfig.from_points([(0, 0), (1, 1), (2, 2)]))


def test_facet_support_on_hexagon():
    def tau(edge):
        return [i for i in range(1, 7) if i not in edge]

    assert facet_support_check(HEXAGON, tau((1, 2)))
    assert facet_support_check(HEXAGON, tau((6, 1)))
    assert not facet_support_check(HEXAGON, tau((1, 4)))
    assert not facet_support_check(HEXAGON, tau((2, 5)))
    c = gale_transform(HEXAGON)
    for t in combinations(range(1, 7), 4):
        assert bool(facet_support_check(HEXAGON, t)) == bool(is_positively_spanning(facet_submatrix(c, t)))


def test_facet_support_with_d_plus_two_points():
    pts = PointConfig.from_points([(0, 0), (4, 0), (0, 4), (1, 1)])
    c = gale_transform(pts)
    verdicts = {}
    for t in combinations(range(1, 5), 2):
        verdicts[t] = bool(facet_support_check(pts, t))
        assert verdicts[t] == bool(is_positively_spanning(facet_submatrix(c, t)))
    # point 4 is interior, so only pairs containing it can leave an edge behind
    assert {t for t, ok in verdicts.items() if ok} == {(1, 4), (2, 4), (3, 4)}


@pytest.mark.parametrize("m,k", S_CASES)
def test_decorate_s_complexes_via_complement(m, k):
    gamma = s_complex(m, k)
    points = complement_realization(m, k)
    c = decorate_via_complement(gamma, points)
    assert positively_decorates(c, gamma)
    assert orientation_inconsistency(c, gamma)
    assert all(x == 0 for x in c @ tuple(Fraction(1) for _ in range(2 * m)))
    # the facet test on the points is an independent oracle for every (d+1)-subset
    for t in combinations(range(1, 2 * m + 1), gamma.dim + 1):
        assert bool(facet_support_check(points, t)) == bool(is_positively_spanning(facet_submatrix(c, t)))


@pytest.mark.parametrize("m,k", S_CASES)
def test_converse_direction(m, k):
    gamma = s_complex(m, k)
    c = decorate_via_complement(gamma, complement_realization(m, k))
    pts = realize_complement(c, gamma)
    assert pts.dim == 2 * m - gamma.dim - 1
    for tau in gamma.facets:
        assert facet_support_check(pts, tau)
    # and the round trip decorates again
    assert positively_decorates(decorate_via_complement(gamma, pts), gamma)


def test_hexagonal_s63_decoration():
    gamma = s_complex(3, 2)
    assert complement(gamma) == relabel_swap(s_complex(3, 1))
    c = decorate_via_complement(gamma, complement_realization(3, 2))
    assert c.shape == (3, 6) and len(decorated_facets(c, gamma)) == 6


def test_path_via_complement():
    path = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4)])
    # complement {34, 14, 12} drawn on the boundary of a quadrilateral
    points = {1: (0, 0), 2: (1, 0), 3: (1, 1), 4: (0, 1)}
    c = decorate_via_complement(path, points)
    assert positively_decorates(c, path)


def test_missing_labels_go_to_the_barycenter():
    # every facet contains 2, so label 2 lies in no complement facet
    gamma = SimplicialComplex.from_facets(5, [(1, 2), (2, 3)])
    tetra = {1: (0, 0, 0), 3: (1, 0, 0), 4: (0, 1, 0), 5: (0, 0, 1)}
    c = decorate_via_complement(gamma, tetra)
    assert positively_decorates(c, gamma)


def test_bad_realization_names_the_facet():
    gamma = s_complex(3, 2)
    bad = PointConfig.from_points([(0, 0), (1, 0), (1, 1), (0, 1), (Fraction(1, 2), Fraction(1, 2)), (2, 2)])
    with pytest.raises(DecorationError, match="complement facet"):
        decorate_via_complement(gamma, bad)


def test_orientation_requires_decoration():
    path = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4)])
    with pytest.raises(DecorationError):
        orientation_inconsistency(M([[1, 1, 1, 1]]), path)
    single = SimplicialComplex.from_facets(3, [(1, 2, 3)])
    assert orientation_inconsistency(M([[1, 0, -1], [0, 1, -1]]), single)
