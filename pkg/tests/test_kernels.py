"""The numba and numpy kernels must agree."""

from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsemi import kernels
from torsemi._accel import HAS_NUMBA, backend, using_backend
from torsemi.corpus import exhaustive_semirings

pytestmark = pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")

vectors = st.lists(st.integers(0, 4), min_size=2, max_size=3)
SEMIRINGS = exhaustive_semirings(3)


def both(fn, *args, **kw):
    with using_backend("numba"):
        a = fn(*args, **kw)
    with using_backend("numpy"):
        b = fn(*args, **kw)
    return a, b


def test_backend_switch_restores():
    before = backend()
    with using_backend("numpy"):
        assert backend() == "numpy"
    assert backend() == before


@given(vectors)
def test_box_points(upper):
    a, b = both(kernels.box_points, upper)
    assert np.array_equal(a, b)
    assert len(a) == np.prod([u + 1 for u in upper])


@given(st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=1, max_size=3))
def test_cone_mask_and_zero_patterns(normals):
    pts = kernels.box_points([3, 3, 3])
    ineqs = np.array(normals, dtype=np.int64)
    eqs = np.zeros((0, 3), dtype=np.int64)
    a, b = both(kernels.cone_mask, pts, eqs, ineqs)
    assert np.array_equal(a, b)
    assert np.array_equal(a, (pts @ ineqs.T >= 0).all(axis=1))
    a, b = both(kernels.zero_patterns, pts, ineqs)
    assert np.array_equal(a, b)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any), min_size=1, max_size=3),
       st.tuples(st.integers(0, 8), st.integers(0, 8)))
def test_reach_table(gens, target):
    a, b = both(kernels.reach_table, np.array(gens, dtype=np.int64), target)
    assert np.array_equal(a != kernels.UNREACHED, b != kernels.UNREACHED)


def test_irreducible_indices():
    # the wedge 0 <= y <= 2x, points sorted by degree
    pts = [p for p in product(range(6), repeat=2) if 0 <= p[1] <= 2 * p[0] and any(p)]
    pts = np.array(sorted(pts, key=sum), dtype=np.int64)
    ineqs = np.array([[0, 1], [2, -1]], dtype=np.int64)
    a, b = both(kernels.irreducible_indices, pts, ineqs)
    assert np.array_equal(a, b)
    assert {tuple(pts[i]) for i in a} == {(1, 0), (1, 1), (1, 2)}


@pytest.mark.parametrize("k", range(0, len(SEMIRINGS), 41))
def test_semiring_kernels(k):
    s = SEMIRINGS[k]
    add, mul = s.add_array, s.mul_array
    a, b = both(kernels.table_violations, add, mul)
    assert len(a) == len(b) == 0
    a, b = both(kernels.prime_multiples, add, [2, 3, 5, 7])
    assert np.array_equal(a, b)
    a, b = both(kernels.difference_relation, add)
    assert np.array_equal(a, b)


def test_table_violations_detects_noncommutativity():
    add = np.array([[0, 1], [0, 1]])
    mul = np.zeros((2, 2), dtype=np.int64)
    a, b = both(kernels.table_violations, add, mul)
    assert {tuple(r) for r in a.tolist()} == {tuple(r) for r in b.tolist()}
    assert kernels.AXIOMS.index("add_commutative") in set(a[:, 0].tolist())


@pytest.mark.parametrize("m", [1, 2, 3])
def test_enumeration(m):
    a, b = both(kernels.commutative_semigroups, m)
    assert np.array_equal(a, b)
    pa, pb = both(kernels.distributive_pairs, a, a)
    assert np.array_equal(pa, pb)


@pytest.mark.parametrize("k", range(0, len(SEMIRINGS), 53))
def test_deductions_only_report_true_facts(k):
    s = SEMIRINGS[k]
    rng = np.random.default_rng(k)
    add, mul = s.add_array.copy(), s.mul_array.copy()
    for t in (add, mul):
        for i, j in product(range(s.order), repeat=2):
            if i <= j and rng.random() < 0.4:
                t[i, j] = t[j, i] = -1
    for ev in both(kernels.deductions, add, mul):
        for code, x, y, v in ev.tolist():
            if code == 0:
                assert x == y
            else:
                table = s.add_array if code == 1 else s.mul_array
                assert table[x, y] == v
