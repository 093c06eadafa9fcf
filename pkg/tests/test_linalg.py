from fractions import Fraction
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsemi.linalg import (
    determinant,
    hnf,
    in_span,
    integer_kernel,
    lattice_intersection,
    nullspace,
    primitive,
    rank,
    solve_integer,
    span,
)

small = st.integers(-6, 6)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def brute_det(m):
    # Laplace expansion along the first row
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * brute_det([r[:j] + r[j + 1 :] for r in m[1:]]) for j in range(len(m)))


def test_span_is_canonical():
    a = span([(2, 4, 0), (0, 0, 3)])
    b = span([(1, 2, 3), (1, 2, -3)])
    assert a == b
    assert a.basis == ((1, 2, 0), (0, 0, 1))


def test_span_rows_are_primitive():
    w = span([(3, 6, 9)])
    assert w.basis == ((1, 2, 3),)
    assert primitive((0, -4, 6)) == (0, -2, 3)


def test_in_span():
    w = span([(1, 0), (1, 2)])
    assert in_span((5, -7), w)
    assert (0, 0) in span([(1, 1)])
    assert (1, 2) not in span([(1, 1)])


def test_empty_span_needs_ambient():
    with pytest.raises(ValueError):
        span([])
    assert span([], 3).dim == 0


def test_integer_kernel_example():
    # x + y + z = 0 over Z has rank-2 kernel
    ker = integer_kernel([(1, 1, 1)], 3)
    assert len(ker) == 2
    assert all(sum(v) == 0 for v in ker)


def test_lattice_intersection_index():
    # the line through (2,4) meets Z^2 in multiples of (1,2)
    assert lattice_intersection(span([(2, 4)])) == [(1, 2)]


def test_solve_integer_parity():
    assert solve_integer([(2, 4)], (3,)) is None
    x = solve_integer([(2, 4)], (6,))
    assert 2 * x[0] + 4 * x[1] == 6


@given(matrices())
def test_hnf_is_unimodular_transform(m):
    h, u = hnf(m)
    n = len(m)
    prod = [[sum(u[i][k] * m[k][j] for k in range(n)) for j in range(len(m[0]))] for i in range(n)]
    assert prod == h
    assert abs(determinant(u)) == 1


@given(matrices())
def test_nullspace_and_rank(m):
    cols = len(m[0])
    ns = nullspace(m, cols)
    assert len(ns) == cols - rank(m)
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in m)


@given(matrices())
def test_integer_kernel_is_saturated(m):
    cols = len(m[0])
    ker = integer_kernel(m, cols)
    assert len(ker) == cols - rank(m)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in m)
    # saturated: every integral kernel vector is an integer combination of the basis
    for v in nullspace(m, cols):
        coeffs = solve_integer([list(col) for col in zip(*ker)], list(v))
        assert coeffs is not None


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_expansion(m):
    assert determinant(m) == brute_det(m)


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_integer_round_trip(m, x):
    x = x[: len(m[0])]
    b = [sum(a * c for a, c in zip(r, x)) for r in m]
    y = solve_integer(m, b)
    assert y is not None
    assert [sum(a * c for a, c in zip(r, y)) for r in m] == b


def test_big_integers_do_not_overflow():
    big = 10**40
    w = span([(big, 2 * big)])
    assert w.basis == ((1, 2),)
    assert w.coordinates((3 * big, 6 * big)) == (Fraction(3 * big),)
