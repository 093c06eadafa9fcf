from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsemi.monoid import (
    AffineMonoid,
    canonical_decomposition,
    is_closed,
    is_saturated,
    kmin,
    normalize,
    random_monoid,
    saturate,
    sum_escalation,
)

WEDGE = AffineMonoid.from_generators([(1, 0), (1, 2)])
gens2 = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any), min_size=1, max_size=4)


def dp_member(gens, alpha):
    """Reachability by adding generators one at a time inside the box below ``alpha``."""
    reach = {tuple(0 for _ in alpha)}
    frontier = list(reach)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(a + b for a, b in zip(x, g))
                if all(a <= b for a, b in zip(y, alpha)) and y not in reach:
                    reach.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(alpha) in reach


def test_membership_examples():
    assert not AffineMonoid.from_generators([(2, 0), (0, 2)]).member((1, 1))
    m = AffineMonoid.from_generators([(2, 0), (0, 2), (1, 1)])
    assert m.member((3, 1))
    assert m.member((0, 0))


@given(gens2, st.tuples(st.integers(0, 9), st.integers(0, 9)))
def test_membership_matches_dp(gens, alpha):
    assert AffineMonoid.from_generators(gens, 2).member(alpha) == dp_member(gens, alpha)


def test_hilbert_basis_examples():
    assert set(normalize(AffineMonoid.from_generators([(2, 0), (0, 2), (1, 1)])).hilbert_basis) == {(1, 0), (0, 1)}
    assert normalize(AffineMonoid.from_generators([(1, 1)])).hilbert_basis == ((1, 1),)
    assert normalize(AffineMonoid.from_generators([(2, 2)])).hilbert_basis == ((1, 1),)


def test_saturated_membership():
    s = saturate(AffineMonoid.from_generators([(1, 1)]))
    assert s.member((3, 3)) and not s.member((2, 3)) and s.member((0, 0))


def test_saturation_predicates():
    assert not is_saturated(AffineMonoid.from_generators([(2, 0), (0, 2), (1, 1)]))
    assert is_saturated(AffineMonoid.from_generators([(1, 0), (0, 1)]))
    assert not is_saturated(AffineMonoid.from_generators([(2, 2)]))
    assert is_closed(AffineMonoid.from_generators([(1, 0), (0, 1)]))


def test_closure_differs_from_normalization():
    # the span of the wedge is the whole plane, so the closure is all of N_0^2
    assert saturate(WEDGE).member((0, 5))
    assert not normalize(WEDGE).member((0, 5))


@given(gens2)
def test_hilbert_basis_generates_and_is_minimal(gens):
    s = normalize(AffineMonoid.from_generators(gens, 2))
    basis = s.hilbert_basis
    for x in product(range(9), repeat=2):
        in_cone = s.member(x)
        assert dp_member(basis, x) == in_cone
    for h in basis:
        others = [g for g in basis if g != h]
        assert not dp_member(others, h) or not others


def test_decomposition_examples():
    assert [p.dim for p in canonical_decomposition(normalize(AffineMonoid.from_generators([(1, 0), (0, 1)]))).pieces] == [0, 1, 1, 2]
    assert len(canonical_decomposition(normalize(AffineMonoid.from_generators([(1, 1)]))).pieces) == 2
    d = canonical_decomposition(normalize(WEDGE))
    assert len(d.pieces) == 4
    assert d.classify((3, 2)).dim == 2
    assert d.classify((2, 4)).face.support.basis == ((1, 2),)
    assert d.classify((0, 0)) is d.apex


def test_dtilde_examples():
    d = canonical_decomposition(normalize(WEDGE))
    assert set(d.top.dtilde_basis) == {(1, 0), (0, 1)}
    assert d.classify((2, 4)).dtilde_basis == ((1, 2),)
    assert d.apex.dtilde_basis == ()


def kmin_oracle(alpha, gamma):
    # interior of the wedge: 0 < y < 2x
    k = 1
    while True:
        x, y = k * alpha[0] + gamma[0], k * alpha[1] + gamma[1]
        if 0 < y < 2 * x:
            return k
        k += 1


def test_kmin_examples():
    d = canonical_decomposition(normalize(WEDGE))
    assert kmin(d.top, (2, 1), (0, 7)) == 3 == kmin_oracle((2, 1), (0, 7))
    assert kmin(d.top, (1, 1), (3, 3)) == 1
    q = canonical_decomposition(normalize(AffineMonoid.from_generators([(1, 0), (0, 1)])))
    assert kmin(q.classify((1, 0)), (1, 0), (3, 0)) == 1


@given(st.tuples(st.integers(1, 6), st.integers(0, 11)).filter(lambda a: 0 < a[1] < 2 * a[0]),
       st.tuples(st.integers(0, 8), st.integers(0, 8)))
def test_kmin_matches_inequality_oracle(alpha, gamma):
    d = canonical_decomposition(normalize(WEDGE))
    assert kmin(d.top, alpha, gamma) == kmin_oracle(alpha, gamma)


def test_kmin_rejects_bad_input():
    d = canonical_decomposition(normalize(WEDGE))
    with pytest.raises(ValueError):
        kmin(d.top, (1, 0), (0, 1))


def test_escalation_examples():
    d = canonical_decomposition(normalize(WEDGE))
    ray = d.classify((1, 0))
    assert sum_escalation(d, ray, (3, 0), (1, 2)).dim == 2
    q = canonical_decomposition(normalize(AffineMonoid.from_generators([(1, 0), (0, 1)])))
    assert sum_escalation(q, q.classify((0, 1)), (0, 2), (1, 0)) is q.top


@given(st.integers(0, 2**32))
def test_escalation_in_rank_three(seed):
    rng = np.random.default_rng(seed)
    d = canonical_decomposition(normalize(AffineMonoid.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])))
    axis = int(rng.integers(3))
    alpha = tuple(int(i == axis) * int(rng.integers(1, 5)) for i in range(3))
    beta = tuple(int(rng.integers(0, 4)) if i != axis else 0 for i in range(3))
    if not any(beta):
        return
    assert sum_escalation(d, d.classify(alpha), alpha, beta).dim >= 2


def test_random_monoid_is_seeded():
    a = random_monoid(np.random.default_rng(5))
    b = random_monoid(np.random.default_rng(5))
    assert a == b
