from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fewnomial.linalg import (
    LinearProgram,
    RationalMatrix,
    ShapeError,
    SingularMatrixError,
    check_farkas,
    determinant,
    format_fraction,
    inverse,
    kernel_basis,
    lp_feasible,
    rank,
    signed_minors,
    solve,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_determinant_examples():
    assert determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert determinant([[1, a, a * a] for a in (1, 2, 3)]) == 2
    assert determinant([[1, 1, 2], [3, 3, 4], [5, 5, 6]]) == 0
    assert determinant([[Fraction(1, 2), 1], [1, 4]]) == 1


def test_determinant_rejects_non_square():
    with pytest.raises(ShapeError):
        determinant([[1, 2, 3], [4, 5, 6]])


def brute_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * brute_det([r[:j] + r[j + 1 :] for r in m[1:]]) for j in range(len(m)))


@given(square(4))
@settings(max_examples=60, deadline=None)
def test_determinant_matches_cofactor_expansion(m):
    assert determinant(m) == brute_det(m)


@given(square(4))
@settings(max_examples=60, deadline=None)
def test_inverse_determinant_product(m):
    if determinant(m) == 0:
        with pytest.raises(SingularMatrixError):
            inverse(m)
        return
    assert determinant(m) * determinant(inverse(m).entries) == 1


@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=4))
@settings(max_examples=80, deadline=None)
def test_kernel_vectors_are_annihilated(rows):
    ker = kernel_basis(rows)
    assert len(ker) == 5 - rank(rows)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert rank(ker) == len(ker) if ker else True


def test_kernel_examples():
    assert kernel_basis([[1, -1]]) == [(1, 1)]
    assert kernel_basis([[1, 0, -1], [0, 1, -1]]) == [(1, 1, 1)]
    square_pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
    (v,) = kernel_basis([[1] * 4, [p[0] for p in square_pts], [p[1] for p in square_pts]])
    assert v == (1, -1, 1, -1) or v == (-1, 1, -1, 1)


def test_solve_and_singular_error():
    assert solve([[2, 1], [1, 3]], [3, 5]) == (Fraction(4, 5), Fraction(7, 5))
    with pytest.raises(SingularMatrixError) as info:
        solve([[1, 2], [2, 4]], [1, 2])
    assert info.value.rank == 1


def test_signed_minors_shape_and_values():
    assert signed_minors([[1, 0, -1], [0, 1, -1]]) == [-1, -1, -1]
    with pytest.raises(ShapeError):
        signed_minors([[1, 2], [3, 4]])


def test_matrix_json_round_trip():
    m = RationalMatrix.from_rows([[Fraction(1, 2), -3], [0, Fraction(-7, 4)]])
    data = m.to_json()
    assert data == {"rows": 2, "cols": 2, "entries": [["1/2", "-3"], ["0", "-7/4"]]}
    assert RationalMatrix.from_json(data) == m
    assert format_fraction(Fraction(-6, 4)) == "-3/2"


def test_lp_feasible_interval():
    lp = LinearProgram.from_pairs(1, [([1], 1), ([-1], -2)])
    res = lp_feasible(lp)
    assert res and lp.satisfied_by(res.point)
    assert 1 <= res.point[0] <= 2


def test_lp_infeasible_has_certificate():
    lp = LinearProgram.from_pairs(1, [([1], 1), ([-1], 0)])
    res = lp_feasible(lp)
    assert not res
    assert check_farkas(lp, res.certificate)


@given(
    st.lists(
        st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(-4, 4)),
        min_size=1,
        max_size=7,
    )
)
@settings(max_examples=120, deadline=None)
def test_lp_answers_are_exact_certificates(pairs):
    lp = LinearProgram.from_pairs(3, pairs)
    res = lp_feasible(lp)
    if res:
        assert lp.satisfied_by(res.point)
    else:
        assert check_farkas(lp, res.certificate)
