"""Property suites checked against brute-force oracles.

Each suite returns a :class:`SuiteResult` whose ``counts`` record how many
instances passed each property and whose ``counterexamples`` carry enough
data (inputs and seed) to reproduce a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from . import kernels
from .corpus import exhaustive_semirings, random_quotients
from .linalg import vadd, vscale
from .monoid import SaturatedMonoid, canonical_decomposition, kmin, normalize, random_monoid
from .qsubring import QSubringDescriptor, canonical_form, check_certificate, closure_oracle
from .semiring import (
    FiniteSemiring,
    GrothendieckError,
    boolean,
    check_diagram,
    check_theorem_5,
    grothendieck,
    sad_by_sampling,
    zmod,
)

SUITES = ("decomposition", "diagram", "grothendieck", "qsubring", "theorem5")
DECOMPOSITION_MONOIDS = 50
KMIN_TRIPLES_PER_MONOID = 5
KMIN_LIMIT = 10**4
HILBERT_HEIGHT = 10
QSUB_SETS = 20
QSUB_HEIGHT = 2**10


@dataclass
class SuiteResult:
    name: str
    params: dict
    counts: dict[str, int] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def bump(self, key: str, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n

    def fail(self, check: str, **data) -> None:
        self.counterexamples.append({"check": check, **data})

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "params": self.params,
            "counts": dict(sorted(self.counts.items())),
            "counterexamples": self.counterexamples,
        }


# ---------------------------------------------------------------------------
# monoids


def random_saturated_monoids(seed: int, count: int = DECOMPOSITION_MONOIDS) -> list[SaturatedMonoid]:
    """Normalizations of random monoids in N_0^3 with at most 4 generators of entries at most 4."""
    rng = np.random.default_rng(seed)
    return [normalize(random_monoid(rng, 3, 4, 4)) for _ in range(count)]


def partition_violations(s: SaturatedMonoid, height: int) -> tuple[int, list[dict]]:
    """Check that every nonzero lattice point up to ``height`` lies in exactly one piece.

    Piece membership is decided independently of the zero-set classifier:
    a point is in the relatively open face ``F`` iff it lies in the closed
    face cone of ``F`` and in no closed proper subface.
    """
    d = canonical_decomposition(s)
    pts = s.lattice_points(height)
    pts = pts[pts.any(axis=1)]
    faces = d.faces.faces
    closed = [f.closed_face.contains_many(pts) for f in faces]
    ray_sets = [set(f.rays) for f in faces]
    counts = np.zeros(len(pts), dtype=np.int64)
    owner = np.full(len(pts), -1, dtype=np.int64)
    for i in range(len(faces)):
        m = closed[i].copy()
        for j in range(len(faces)):
            if ray_sets[j] < ray_sets[i]:
                m &= ~closed[j]
        counts += m
        owner[m] = i
    bad = []
    for k in np.nonzero(counts != 1)[0][:5]:
        bad.append({"point": pts[k].tolist(), "pieces": int(counts[k])})
    fast = d.classify_many(pts)
    for k in np.nonzero((fast != owner) & (counts == 1))[0][:5]:
        bad.append({"point": pts[k].tolist(), "classified": int(fast[k]), "expected": int(owner[k])})
    return len(pts), bad


def kmin_triples(s: SaturatedMonoid, rng: np.random.Generator, count: int, height: int = 6) -> list[tuple]:
    """Random ``(piece, alpha, gamma)`` with ``alpha`` in a nonzero piece and ``gamma`` in its closure."""
    d = canonical_decomposition(s)
    pts = s.lattice_points(height)
    ids = d.classify_many(pts)
    out = []
    candidates = [p for p in d.pieces if p.dim > 0]
    for _ in range(count):
        p = candidates[int(rng.integers(0, len(candidates)))]
        inside = pts[(ids == p.id) & pts.any(axis=1)]
        if len(inside):
            alpha = tuple(int(a) for a in inside[int(rng.integers(0, len(inside)))])
        else:
            alpha = p.face.sample_point
        basis = p.dtilde_basis
        coeffs = rng.integers(0, 4, size=len(basis))
        gamma = (0,) * s.ambient
        for c, h in zip(coeffs.tolist(), basis):
            gamma = vadd(gamma, vscale(c, h))
        out.append((p, alpha, gamma))
    return out


def generated_mask(basis: list[tuple[int, ...]], height: int, ambient: int) -> np.ndarray:
    """Box points up to ``height`` that are N-combinations of ``basis`` (lexicographic box order)."""
    shape = (height + 1,) * ambient
    reach = np.zeros(shape, dtype=bool)
    reach[(0,) * ambient] = True
    for h in basis:
        if any(a > height for a in h):
            continue
        src = tuple(slice(0, height + 1 - a) for a in h)
        dst = tuple(slice(a, height + 1) for a in h)
        while True:
            grown = reach.copy()
            grown[dst] |= reach[src]
            if (grown == reach).all():
                break
            reach = grown
    return reach.reshape(-1)


def hilbert_problems(s: SaturatedMonoid, height: int = HILBERT_HEIGHT) -> list[dict]:
    basis = list(s.hilbert_basis)
    n = s.ambient
    box = kernels.box_points([height] * n)
    lattice = s.cone.contains_many(box)
    gen = generated_mask(basis, height, n)
    out = []
    for k in np.nonzero(lattice != gen)[0][:5]:
        out.append({"point": box[k].tolist(), "in_monoid": bool(lattice[k]), "generated": bool(gen[k])})
    for h in basis:
        below = kernels.box_points(list(h))
        below = below[below.any(axis=1) & (below != np.array(h)).any(axis=1)]
        rest = np.array(h) - below
        split = s.cone.contains_many(below) & s.cone.contains_many(rest)
        if split.any():
            out.append({"basis_element": list(h), "splits_as": below[np.argmax(split)].tolist()})
    return out


def decomposition_suite(seed: int, height: int = 15) -> SuiteResult:
    r = SuiteResult("decomposition", {"seed": seed, "height": height, "monoids": DECOMPOSITION_MONOIDS})
    rng = np.random.default_rng([seed, 1])
    for s in random_saturated_monoids(seed):
        gens = [list(g) for g in s.base.generators]
        npts, bad = partition_violations(s, height)
        r.bump("monoids")
        r.bump("points", npts)
        for b in bad:
            r.fail("partition", generators=gens, seed=seed, **b)
        for p, alpha, gamma in kmin_triples(s, rng, KMIN_TRIPLES_PER_MONOID):
            r.bump("kmin_triples")
            try:
                k = kmin(p, alpha, gamma, cap=KMIN_LIMIT)
            except RuntimeError:
                r.fail("kmin_limit", generators=gens, piece=p.id, alpha=list(alpha), gamma=list(gamma))
                continue
            lands = p.contains(vadd(vscale(k, alpha), gamma))
            minimal = k == 1 or not p.contains(vadd(vscale(k - 1, alpha), gamma))
            if not (lands and minimal):
                r.fail("kmin", generators=gens, piece=p.id, alpha=list(alpha), gamma=list(gamma), k=k)
        for b in hilbert_problems(s):
            r.fail("hilbert_basis", generators=gens, **b)
        r.bump("hilbert_bases")
    return r


# ---------------------------------------------------------------------------
# semiring corpus


@lru_cache(maxsize=8)
def corpus(max_order: int, seed: int, count: int) -> tuple[tuple[str, FiniteSemiring], ...]:
    """Labelled corpus: ``("table", s)`` for exhaustive tables, ``("quotient", s)`` for random quotients."""
    out = [("table", s) for s in exhaustive_semirings(max_order)] if max_order > 0 else []
    if count > 0:
        out += [("quotient", q.semiring) for q in random_quotients(seed, count)]
    return tuple(out)


def _tables(s: FiniteSemiring) -> dict:
    return {"add": [list(r) for r in s.add], "mul": [list(r) for r in s.mul], "unity": s.unity}


def diagram_suite(max_order: int = 3, seed: int = 42, count: int = 200) -> SuiteResult:
    r = SuiteResult("diagram", {"max_order": max_order, "seed": seed, "count": count})
    for source, s in corpus(max_order, seed, count):
        rep = check_diagram(s)
        r.bump(f"{source}_semirings")
        r.bump("elements", s.order)
        for v in rep.violations:
            r.fail("diagram", source=source, seed=seed, semiring=_tables(s), **v)
        flags = np.array([p.strongly_almost_divisible for p in s.profiles])
        sampled = sad_by_sampling(s)
        for a in np.nonzero(flags != sampled)[0].tolist():
            r.fail("sad_sampling", source=source, seed=seed, semiring=_tables(s), element=a, residue=bool(flags[a]))
        r.bump("sad_sampling_agreements", int((flags == sampled).sum()))
    return r


def grothendieck_suite(max_order: int = 3, seed: int = 42, count: int = 200) -> SuiteResult:
    r = SuiteResult("grothendieck", {"max_order": max_order, "seed": seed, "count": count})
    for source, s in corpus(max_order, seed, count):
        try:
            g = grothendieck(s)
        except GrothendieckError as exc:
            r.fail("ring_construction", source=source, seed=seed, semiring=_tables(s), error=str(exc))
            continue
        r.bump("rings")
        if g.carrier.unity is None and s.unity is not None:
            r.fail("unity", source=source, semiring=_tables(s))
    for name, s, expected in (("boolean", boolean(), 1), ("Z3", zmod(3), 3)):
        order = grothendieck(s).order
        if order != expected:
            r.fail("named_example", semiring=name, order=order, expected=expected)
        else:
            r.bump("named_examples")
    return r


def theorem5_suite(max_order: int = 3, seed: int = 42, count: int = 200) -> SuiteResult:
    r = SuiteResult("theorem5", {"max_order": max_order, "seed": seed, "count": count})
    for source, s in corpus(max_order, seed, count):
        if s.unity is None:
            r.bump("skipped_without_unity")
            continue
        rep = check_theorem_5(s)
        # tables not built from a presentation are an extra check beyond quotients
        r.bump(f"{source}_checked")
        for name, passed in rep.checks.items():
            if passed:
                r.bump(name)
        for c in rep.counterexamples:
            r.fail("theorem5", source=source, seed=seed, semiring=_tables(s), **c)
    return r


# ---------------------------------------------------------------------------
# subrings of Q


def random_generator_sets(seed: int, count: int = QSUB_SETS, max_den: int = 30) -> list[list[Fraction]]:
    rng = np.random.default_rng([seed, 7])
    out = []
    while len(out) < count:
        k = int(rng.integers(1, 4))
        gens = [Fraction(int(rng.integers(-30, 31)), int(rng.integers(1, max_den + 1))) for _ in range(k)]
        if any(g.denominator > 1 for g in gens):
            out.append(gens)
    return out


def two_sided_mismatches(d: QSubringDescriptor, gens: list[Fraction], bound: int) -> list[dict]:
    """Fractions of height at most ``bound`` where the descriptor and the closure oracle disagree."""
    oracle = closure_oracle(gens, bound)
    ks = np.arange(-bound, bound + 1, dtype=np.int64)
    out = []
    for q in range(1, bound + 1):
        coprime = np.gcd(ks, q) == 1
        ks_q = ks[coprime]
        if d.primes.smooth(q):
            by_d = ks_q % d.n == 0
        else:
            by_d = np.zeros(len(ks_q), dtype=bool)
        g = oracle.levels.get(q)
        by_o = ks_q % g == 0 if g is not None else np.zeros(len(ks_q), dtype=bool)
        for k in ks_q[by_d != by_o][:3].tolist():
            out.append({"fraction": f"{k}/{q}", "descriptor": bool(k % d.n == 0 and d.primes.smooth(q)), "oracle": g is not None and k % g == 0})
        if len(out) >= 5:
            break
    return out


def qsubring_suite(seed: int = 42, height: int = QSUB_HEIGHT) -> SuiteResult:
    r = SuiteResult("qsubring", {"seed": seed, "height": height, "sets": QSUB_SETS})
    fixed = [([Fraction(5, 2)], 5, (2,)), ([Fraction(1, 2), Fraction(1, 3)], 1, (2, 3)), ([Fraction(1, 2)], 1, (2,))]
    for gens, n, primes in fixed:
        d = canonical_form(gens)
        if (d.n, d.primes.values) != (n, primes):
            r.fail("named_example", generators=[str(g) for g in gens], got=d.to_json())
        else:
            r.bump("named_examples")
    for gens in [g for g, _, _ in fixed] + random_generator_sets(seed):
        d = canonical_form(gens)
        label = [f"{g.numerator}/{g.denominator}" for g in gens]
        problems = check_certificate(tuple(gens), d)
        if problems:
            r.fail("certificate", generators=label, problems=problems)
        if any(d.n % p == 0 for p in d.primes.values) or gcd(d.n, *d.primes.values) != 1:
            r.fail("coprimality", generators=label, descriptor=d.to_json())
        for m in two_sided_mismatches(d, gens, height):
            r.fail("closure_oracle", generators=label, seed=seed, **m)
        r.bump("generator_sets")
    return r


def run_suite(name: str, seed: int = 42, height: int | None = None, max_order: int = 3, count: int = 200) -> list[SuiteResult]:
    """Run one suite, or every suite for ``name == "all"``."""
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        if n == "decomposition":
            out.append(decomposition_suite(seed, height or 15))
        elif n == "diagram":
            out.append(diagram_suite(max_order, seed, count))
        elif n == "grothendieck":
            out.append(grothendieck_suite(max_order, seed, count))
        elif n == "qsubring":
            out.append(qsubring_suite(seed, QSUB_HEIGHT if name == "all" or height is None else height))
        elif n == "theorem5":
            out.append(theorem5_suite(max_order, seed, count))
        else:
            raise ValueError(f"unknown suite {n!r}; expected one of {', '.join(SUITES + ('all',))}")
    return out
