"""Test corpora of finite commutative semirings.

Two sources are combined:

* every pair of commutative associative tables on ``{0..m-1}`` where the
  second distributes over the first, for ``m <= max_order`` (no isomorphism
  reduction, so relabelled copies all appear);
* quotients of ``N[C]`` by random relations over small random monoids,
  kept when the quotient comes out finite under the size cap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .congruence import CongruencePresentation, quotient
from .monoid import AffineMonoid
from .polynomial import NATURALS, SparsePoly
from .semiring import FiniteSemiring, validate

EXHAUSTIVE_MAX_ORDER = 4
RANDOM_SIZE_CAP = 24
MAX_ADDITIVE_PERIOD = 6


def exhaustive_semirings(max_order: int) -> list[FiniteSemiring]:
    """All commutative semiring tables on at most ``max_order`` elements."""
    if not 1 <= max_order <= EXHAUSTIVE_MAX_ORDER:
        raise ValueError(f"exhaustive mode needs 1 <= max_order <= {EXHAUSTIVE_MAX_ORDER}")
    out = []
    for m in range(1, max_order + 1):
        tables = kernels.commutative_semigroups(m)
        for i, j in kernels.distributive_pairs(tables, tables).tolist():
            out.append(validate(tables[i], tables[j]))
    return out


@dataclass(frozen=True)
class CorpusQuotient:
    presentation: CongruencePresentation
    semiring: FiniteSemiring


def _constant(c: int, rank: int) -> SparsePoly:
    return SparsePoly.monomial((0,) * rank, c, NATURALS)


def random_presentation(rng: np.random.Generator, size_cap: int = RANDOM_SIZE_CAP) -> CongruencePresentation:
    """A presentation whose monomials and additive multiples are eventually periodic.

    Every generator gets a relation ``x^(u*g) = x^(v*g)`` and the unity gets
    ``k*1 = l*1`` with period ``k - l <= MAX_ADDITIVE_PERIOD``; sometimes a
    generator is also tied to a multiple of the unity.
    """
    rank = int(rng.integers(1, 3))
    ngens = int(rng.integers(1, 3))
    gens = set()
    while len(gens) < ngens:
        g = tuple(int(a) for a in rng.integers(0, 3, size=rank))
        if any(g):
            gens.add(g)
    monoid = AffineMonoid.from_generators(sorted(gens), rank)
    rels = []
    for g in monoid.generators:
        u = int(rng.integers(1, 4))
        v = int(rng.integers(0, u))
        rels.append(
            (
                SparsePoly.monomial(tuple(u * a for a in g), 1, NATURALS),
                SparsePoly.monomial(tuple(v * a for a in g), 1, NATURALS),
            )
        )
    low = int(rng.integers(1, 3))
    rels.append((_constant(low + int(rng.integers(1, MAX_ADDITIVE_PERIOD + 1)), rank), _constant(low, rank)))
    if rng.random() < 0.3:
        g = monoid.generators[int(rng.integers(0, len(monoid.generators)))]
        rels.append((SparsePoly.monomial(g, 1, NATURALS), _constant(int(rng.integers(1, 4)), rank)))
    return CongruencePresentation(monoid, tuple(rels), size_cap)


def random_quotients(seed: int, count: int, size_cap: int = RANDOM_SIZE_CAP, max_tries: int | None = None) -> list[CorpusQuotient]:
    """``count`` finite quotients from presentations drawn with ``seed``.

    Presentations whose quotient is Undecided are skipped; the draw sequence
    depends only on ``seed``.
    """
    rng = np.random.default_rng(seed)
    max_tries = max_tries or 50 * count + 100
    out: list[CorpusQuotient] = []
    for _ in range(max_tries):
        if len(out) == count:
            break
        p = random_presentation(rng, size_cap)
        q = quotient(p)
        if isinstance(q, FiniteSemiring):
            out.append(CorpusQuotient(p, q))
    if len(out) < count:
        raise RuntimeError(f"only {len(out)} of {count} random presentations gave finite quotients")
    return out


def enumerate_corpus(max_order: int, seed: int, count: int) -> list[FiniteSemiring]:
    """Exhaustive tables up to ``max_order`` followed by ``count`` random quotients."""
    out = exhaustive_semirings(max_order) if max_order > 0 else []
    return out + [q.semiring for q in random_quotients(seed, count)] if count > 0 else out
