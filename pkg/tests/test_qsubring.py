from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsemi.qsubring import (
    PrimeSet,
    QSubringDescriptor,
    canonical_form,
    check_certificate,
    closure_oracle,
    is_additively_almost_divisible,
    is_finitely_generated,
    member,
    np_member,
)

fractions = st.builds(F, st.integers(-30, 30).filter(bool), st.integers(1, 30))


def test_canonical_examples():
    assert canonical_form([F(1, 2)]) == QSubringDescriptor(1, PrimeSet.explicit([2]))
    d = canonical_form([F(5, 2)])
    assert (d.n, d.primes.values) == (5, (2,))
    d = canonical_form([F(1, 2), F(1, 3)])
    assert (d.n, d.primes.values) == (1, (2, 3))


def test_integers_are_rejected():
    with pytest.raises(ValueError, match="subring of Z"):
        canonical_form([F(4), F(6)])


def test_member_examples():
    d = QSubringDescriptor(5, PrimeSet.explicit([2]))
    assert member(d, F(5, 8)) and not member(d, F(1, 2)) and member(d, F(10))
    assert member(QSubringDescriptor(1, PrimeSet.all_primes()), F(7, 33))
    assert not member(QSubringDescriptor(1, PrimeSet.explicit([2])), F(1, 6))


def test_finiteness_examples():
    assert is_finitely_generated(QSubringDescriptor(1, PrimeSet.explicit([2, 3])))
    assert not is_finitely_generated(QSubringDescriptor(1, PrimeSet.all_primes()))
    assert is_finitely_generated(QSubringDescriptor(5, PrimeSet.explicit([2])))
    assert is_additively_almost_divisible(QSubringDescriptor(1, PrimeSet.all_primes()))
    assert not is_additively_almost_divisible(QSubringDescriptor(1, PrimeSet.explicit([2])))
    assert is_additively_almost_divisible(QSubringDescriptor(1, PrimeSet.coprime_to(6)))


def test_np_member_examples():
    assert np_member(PrimeSet.explicit([2, 5]), F(3, 10))
    assert not np_member(PrimeSet.explicit([2]), F(1, 3))
    assert np_member(PrimeSet.explicit([3]), F(7))


def test_n_must_avoid_p():
    with pytest.raises(ValueError):
        QSubringDescriptor(6, PrimeSet.explicit([2]))


def test_closure_examples():
    c = closure_oracle([F(1, 2)], 16)
    assert all(x in c for x in (F(1), F(1, 2), F(1, 4), F(3, 4)))
    c = closure_oracle([F(5, 2)], 32)
    assert all(x in c for x in (F(5), F(5, 2), F(25, 4), F(5, 4)))
    assert F(1) not in c
    c = closure_oracle([F(2)], 8)
    assert set(c) == {F(k) for k in range(-8, 9, 2)}


def naive_closure(gens, bound, rounds=3):
    """Sums, differences and products of elements, pruned to height at most ``bound``."""
    ok = lambda x: max(abs(x.numerator), x.denominator) <= bound
    seen = {g for g in gens if ok(g)}
    for _ in range(rounds):
        cur = list(seen)
        for a in cur:
            for b in cur:
                for c in (a + b, a - b, a * b):
                    if ok(c):
                        seen.add(c)
    return seen


@given(st.lists(fractions, min_size=1, max_size=2).filter(lambda g: any(x.denominator > 1 for x in g)))
def test_canonical_form_is_certified(gens):
    d = canonical_form(gens)
    assert check_certificate(tuple(gens), d) == []
    for g in gens:
        assert member(d, g)


@given(st.lists(fractions, min_size=1, max_size=2).filter(lambda g: any(x.denominator > 1 for x in g)))
def test_closure_oracle_agrees_with_descriptor(gens):
    bound = 256
    d = canonical_form(gens)
    c = closure_oracle(gens, bound)
    for q in range(1, 65):
        for k in range(-64, 65):
            x = F(k, q)
            assert (x in c) == member(d, x), x


def test_naive_closure_is_contained():
    gens = [F(5, 2), F(3, 4)]
    d = canonical_form(gens)
    assert all(member(d, x) for x in naive_closure(gens, 40))


def test_descriptor_json_round_trip():
    for p in (PrimeSet.explicit([2, 7]), PrimeSet.all_primes(), PrimeSet.coprime_to(10)):
        d = QSubringDescriptor(3, p) if 3 not in p else QSubringDescriptor(1, p)
        assert QSubringDescriptor.from_json(d.to_json()) == d
