from itertools import product

from torsemi.corpus import enumerate_corpus, exhaustive_semirings, random_quotients


def brute_count(m):
    """Pairs of binary tables on m elements satisfying the commutative semiring axioms."""
    el = range(m)
    tables = [dict(zip(product(el, repeat=2), vals)) for vals in product(el, repeat=m * m)]
    comm_assoc = [
        t for t in tables
        if all(t[a, b] == t[b, a] for a, b in product(el, repeat=2))
        and all(t[t[a, b], c] == t[a, t[b, c]] for a, b, c in product(el, repeat=3))
    ]
    return sum(
        all(mu[a, ad[b, c]] == ad[mu[a, b], mu[a, c]] for a, b, c in product(el, repeat=3))
        for ad in comm_assoc
        for mu in comm_assoc
    )


def test_exhaustive_count_matches_brute_force():
    assert len(exhaustive_semirings(2)) == brute_count(1) + brute_count(2)
    assert len(exhaustive_semirings(3)) == brute_count(1) + brute_count(2) + brute_count(3) == 482


def test_order_two_contains_boolean():
    tables = {(s.add, s.mul) for s in exhaustive_semirings(2)}
    assert (((0, 1), (1, 1)), ((0, 0), (0, 1))) in tables


def test_order_one():
    (s,) = exhaustive_semirings(1)
    assert s.order == 1


def test_random_quotients_are_reproducible():
    a = random_quotients(42, 10)
    b = random_quotients(42, 10)
    assert len(a) == 10
    assert [q.semiring for q in a] == [q.semiring for q in b]
    assert [q.presentation for q in a] == [q.presentation for q in b]


def test_enumerate_corpus_concatenates():
    c = enumerate_corpus(2, 1, 5)
    assert len(c) == 17 + 5
    assert all(s.unity is not None for s in c[17:])
