"""Finite commutative semirings given by operation tables.

Covers axiom validation, the additive element properties (idempotent,
torsion, regular, divisible, strongly almost-divisible, almost-divisible),
the ring of formal differences ``G(S)``, the subsemiring ``Q_S`` of elements
bounded by a multiple of one, and homomorphisms out of ``N_P``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Sequence

import numpy as np
from sympy import primerange

from . import kernels
from .linalg import IntVector


class SemiringAxiomError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        head = "; ".join(violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"semiring axioms violated: {head}{more}")


@dataclass(frozen=True)
class FiniteSemiring:
    """Elements are ``0..order-1``; ``add``/``mul`` are row-major tables."""

    order: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    unity: int | None = None
    generators: tuple[tuple[IntVector, int], ...] | None = field(default=None, compare=False)

    @cached_property
    def add_array(self) -> np.ndarray:
        return np.array(self.add, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int64).reshape(self.order, self.order)

    def plus(self, x: int, y: int) -> int:
        return self.add[x][y]

    def times(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def multiple(self, n: int, a: int) -> int:
        """``n * a`` for ``n >= 1`` via the cyclic structure of ``a``."""
        orbit = self.orbits[a]
        if n < 1:
            raise ValueError("multiples are defined for n >= 1")
        return orbit.at(n)

    @cached_property
    def orbits(self) -> tuple[Orbit, ...]:
        return tuple(_orbit(self.add, a) for a in range(self.order))

    @cached_property
    def profiles(self) -> tuple[ElementProfile, ...]:
        return tuple(_profile(self, a) for a in range(self.order))

    def restrict(self, elements: Sequence[int]) -> FiniteSemiring:
        """The subsemiring on ``elements`` (must be closed), relabelled in sorted order."""
        els = sorted(elements)
        pos = {e: i for i, e in enumerate(els)}
        try:
            add = tuple(tuple(pos[self.add[x][y]] for y in els) for x in els)
            mul = tuple(tuple(pos[self.mul[x][y]] for y in els) for x in els)
        except KeyError:
            raise ValueError("element set is not closed under the operations") from None
        unity = pos.get(self.unity) if self.unity is not None else None
        return validate(add, mul, unity)


@dataclass(frozen=True)
class Orbit:
    """The sequence ``n -> n*a`` for ``n >= 1``: ``seq[n-1] = n*a`` up to the first repeat."""

    seq: tuple[int, ...]
    index: int
    period: int

    def at(self, n: int) -> int:
        if n < self.index:
            return self.seq[n - 1]
        return self.seq[self.index - 1 + (n - self.index) % self.period]


def _orbit(add: Sequence[Sequence[int]], a: int) -> Orbit:
    seq = [a]
    first = {a: 1}
    while True:
        nxt = add[seq[-1]][a]
        if nxt in first:
            i = first[nxt]
            return Orbit(tuple(seq), i, len(seq) + 1 - i)
        first[nxt] = len(seq) + 1
        seq.append(nxt)


def _find_unity(mul: np.ndarray) -> int | None:
    m = mul.shape[0]
    ident = np.arange(m)
    for e in range(m):
        if (mul[e] == ident).all():
            return e
    return None


AXIOM_NAMES = {
    "add_commutative": "addition not commutative at ({},{})",
    "add_associative": "addition not associative at ({},{},{})",
    "mul_commutative": "multiplication not commutative at ({},{})",
    "mul_associative": "multiplication not associative at ({},{},{})",
    "distributive": "multiplication does not distribute at ({},{},{})",
}


def validate(
    add: Sequence[Sequence[int]],
    mul: Sequence[Sequence[int]],
    unity: int | None = None,
    generators=None,
    *,
    detect_unity: bool = True,
) -> FiniteSemiring:
    """Check every axiom instance and return the semiring.

    Raises :class:`SemiringAxiomError` listing the violated instances. When
    ``unity`` is None and ``detect_unity`` is set, a multiplicative identity
    is looked up.
    """
    a = np.asarray(add, dtype=np.int64)
    u = np.asarray(mul, dtype=np.int64)
    m = a.shape[0] if a.ndim == 2 else 0
    if m == 0 or a.shape != (m, m) or u.shape != (m, m):
        raise SemiringAxiomError(["tables must be nonempty and square of equal size"])
    if a.min() < 0 or a.max() >= m or u.min() < 0 or u.max() >= m:
        raise SemiringAxiomError(["table entries must be element labels 0..m-1"])
    rows = kernels.table_violations(a, u, limit=1000)
    problems = []
    for code, x, y, z in rows.tolist():
        name = kernels.AXIOMS[code]
        args = (x, y) if name.endswith("commutative") else (x, y, z)
        problems.append(AXIOM_NAMES[name].format(*args))
    if unity is not None:
        if not 0 <= unity < m:
            problems.append(f"unity {unity} is not an element")
        elif not (u[unity] == np.arange(m)).all():
            problems.append(f"element {unity} is not a multiplicative identity")
    if problems:
        raise SemiringAxiomError(problems)
    if unity is None and detect_unity:
        unity = _find_unity(u)
    return FiniteSemiring(
        m,
        tuple(tuple(r) for r in a.tolist()),
        tuple(tuple(r) for r in u.tolist()),
        unity,
        tuple(generators) if generators is not None else None,
    )


# ---------------------------------------------------------------------------
# small named examples


def boolean() -> FiniteSemiring:
    return validate([[0, 1], [1, 1]], [[0, 0], [0, 1]])


def zmod(n: int) -> FiniteSemiring:
    r = range(n)
    return validate([[(x + y) % n for y in r] for x in r], [[(x * y) % n for y in r] for x in r])


def truncated(k: int) -> FiniteSemiring:
    """``{0..k}`` with addition and multiplication capped at ``k``."""
    r = range(k + 1)
    return validate([[min(x + y, k) for y in r] for x in r], [[min(x * y, k) for y in r] for x in r])


def trivial() -> FiniteSemiring:
    return validate([[0]], [[0]])


# ---------------------------------------------------------------------------
# element profiles


@dataclass(frozen=True)
class ElementProfile:
    element: int
    index: int
    period: int
    idempotent: bool
    torsion: bool
    regular: bool
    divisible: bool
    strongly_almost_divisible: bool
    almost_divisible: bool
    regular_witness: int | None = None
    # (c, m, period of c) with m*c = a and gcd(m mod period, period) = 1
    sad_witness: tuple[int, int, int] | None = None
    # least k >= 1 such that k*a is strongly almost-divisible
    ad_witness: int | None = None
    # least n with a not in n*S, if any
    divisibility_failure: int | None = None

    def flags(self) -> dict[str, bool]:
        return {
            "idempotent": self.idempotent,
            "torsion": self.torsion,
            "regular": self.regular,
            "divisible": self.divisible,
            "strongly_almost_divisible": self.strongly_almost_divisible,
            "almost_divisible": self.almost_divisible,
        }


def _lcm(values) -> int:
    return reduce(lambda x, y: x * y // gcd(x, y), values, 1)


DIVISIBILITY_SCAN_LIMIT = 50_000_000


def _divisible(s: FiniteSemiring, a: int) -> int | None:
    """Least ``n`` with ``a`` not in ``n*S``, or None if ``a`` is divisible."""
    orbits = s.orbits
    top = max(o.index for o in orbits) + _lcm(o.period for o in orbits)
    if top > DIVISIBILITY_SCAN_LIMIT:
        raise OverflowError("divisibility scan range too large")
    ns = np.arange(top, dtype=np.int64)  # position n, entry 0 unused
    cover = np.zeros(top, dtype=bool)
    cover[0] = True
    for o in orbits:
        head = min(o.index, top)
        for n in range(1, head):
            if o.seq[n - 1] == a:
                cover[n] = True
        good = np.array([o.seq[o.index - 1 + r] == a for r in range(o.period)])
        if good.any() and o.index < top:
            tail = ns[o.index :]
            cover[o.index :] |= good[(tail - o.index) % o.period]
    bad = np.nonzero(~cover)[0]
    return int(bad[0]) if bad.size else None


def _sad_witness(s: FiniteSemiring, a: int) -> tuple[int, int, int] | None:
    for c, o in enumerate(s.orbits):
        for m in range(o.index, o.index + o.period):
            if o.seq[m - 1] == a and gcd(m % o.period, o.period) == 1:
                return (c, m, o.period)
    return None


def _profile(s: FiniteSemiring, a: int) -> ElementProfile:
    o = s.orbits[a]
    add = s.add
    reg = next((b for b in range(s.order) if add[add[a][b]][a] == a), None)
    fail = _divisible(s, a)
    sad = _sad_witness(s, a)
    ad = None
    for k in range(1, o.index + o.period):
        if _sad_witness(s, o.at(k)) is not None:
            ad = k
            break
    return ElementProfile(
        element=a,
        index=o.index,
        period=o.period,
        idempotent=add[a][a] == a,
        torsion=True,
        regular=reg is not None,
        divisible=fail is None,
        strongly_almost_divisible=sad is not None,
        almost_divisible=ad is not None,
        regular_witness=reg,
        sad_witness=sad,
        ad_witness=ad,
        divisibility_failure=fail,
    )


def profile(s: FiniteSemiring, a: int) -> ElementProfile:
    if not 0 <= a < s.order:
        raise ValueError(f"{a} is not an element")
    return s.profiles[a]


def sad_by_sampling(s: FiniteSemiring, prime_bound: int = 10**4, threshold: int = 100) -> np.ndarray:
    """Per element: True iff ``a ∈ p*S`` for at least ``threshold`` primes ``p <= prime_bound``.

    Independent of the residue criterion used by :func:`profile`; multiples
    are computed by repeated doubling on the addition table.
    """
    primes = np.array(list(primerange(2, prime_bound + 1)), dtype=np.int64)
    hits = kernels.prime_multiples(s.add_array, primes)
    return hits.sum(axis=0) >= threshold


# ---------------------------------------------------------------------------
# implication diagram

IMPLICATIONS = (
    ("idempotent", "regular_and_torsion"),
    ("regular_and_torsion", "torsion"),
    ("idempotent", "divisible"),
    ("regular_and_torsion", "strongly_almost_divisible"),
    ("torsion", "almost_divisible"),
    ("divisible", "strongly_almost_divisible"),
    ("strongly_almost_divisible", "almost_divisible"),
)


@dataclass(frozen=True)
class DiagramReport:
    checked: int
    violations: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_diagram(s: FiniteSemiring) -> DiagramReport:
    """Check each implication of the property diagram for every element."""
    bad = []
    for p in s.profiles:
        f = p.flags()
        f["regular_and_torsion"] = f["regular"] and f["torsion"]
        for lhs, rhs in IMPLICATIONS:
            if f[lhs] and not f[rhs]:
                bad.append({"element": p.element, "implication": f"{lhs} => {rhs}"})
    return DiagramReport(s.order * len(IMPLICATIONS), tuple(bad))


# ---------------------------------------------------------------------------
# ring of differences


@dataclass(frozen=True)
class GrothendieckRing:
    """``G(S)``: classes of pairs ``(x, y)`` standing for ``x - y``."""

    source: FiniteSemiring
    carrier: FiniteSemiring
    zero: int
    neg: tuple[int, ...]
    sigma: tuple[int, ...]
    pair_class: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return self.carrier.order

    def additive_order(self, g: int) -> int:
        """Least ``n >= 1`` with ``n*g = 0``."""
        acc, n = g, 1
        while acc != self.zero:
            acc = self.carrier.add[acc][g]
            n += 1
            if n > self.order:
                raise AssertionError("element of infinite additive order in a finite ring")
        return n

    def is_torsion(self) -> bool:
        return all(self.additive_order(g) >= 1 for g in range(self.order))


class GrothendieckError(AssertionError):
    pass


def _transitive_closure(rel: np.ndarray) -> np.ndarray:
    r = rel.copy()
    for k in range(r.shape[0]):
        r |= r[:, k : k + 1] & r[k : k + 1, :]
    return r


def grothendieck(s: FiniteSemiring) -> GrothendieckRing:
    m = s.order
    add, mul = s.add_array, s.mul_array
    rel = kernels.difference_relation(add)
    if not (rel == _transitive_closure(rel)).all():
        raise GrothendieckError("witness relation is not transitive")
    if not (rel == rel.T).all() or not rel.diagonal().all():
        raise GrothendieckError("witness relation is not an equivalence")
    # class id by first member in pair order
    first = rel.argmax(axis=1)
    reps = np.unique(first)
    cls_of_rep = {int(r): i for i, r in enumerate(reps)}
    cls = np.array([cls_of_rep[int(f)] for f in first], dtype=np.int64)
    k = len(reps)
    x = np.arange(m * m) // m
    y = np.arange(m * m) % m
    px, py = x[:, None], y[:, None]
    qx, qy = x[None, :], y[None, :]
    sum_cls = cls[add[px, qx] * m + add[py, qy]]
    prod_cls = cls[add[mul[px, qx], mul[py, qy]] * m + add[mul[px, qy], mul[qx, py]]]
    cp, cq = cls[:, None], cls[None, :]
    add_t = np.full((k, k), -1, dtype=np.int64)
    mul_t = np.full((k, k), -1, dtype=np.int64)
    add_t[cp, cq] = sum_cls
    mul_t[cp, cq] = prod_cls
    # every representative pair must agree with the stored value
    if not (add_t[cp, cq] == sum_cls).all() or not (mul_t[cp, cq] == prod_cls).all():
        raise GrothendieckError("operations are not well defined on classes")
    carrier = validate(add_t, mul_t)
    zero = int(cls[0])
    if not all(cls[i * m + i] == zero for i in range(m)):
        raise GrothendieckError("diagonal pairs do not form a single zero class")
    if not (add_t[:, zero] == np.arange(k)).all():
        raise GrothendieckError("zero class is not additively neutral")
    neg = np.full(k, -1, dtype=np.int64)
    for p in range(m * m):
        neg[cls[p]] = cls[y[p] * m + x[p]]
    if not all(add_t[g, neg[g]] == zero for g in range(k)):
        raise GrothendieckError("swapped pair is not an additive inverse")
    sigma = np.array([cls[add[e, e] * m + e] for e in range(m)], dtype=np.int64)
    for e in range(m):
        for f in range(m):
            if sigma[add[e, f]] != add_t[sigma[e], sigma[f]]:
                raise GrothendieckError(f"sigma not additive at ({e},{f})")
            if sigma[mul[e, f]] != mul_t[sigma[e], sigma[f]]:
                raise GrothendieckError(f"sigma not multiplicative at ({e},{f})")
            if cls[e * m + f] != add_t[sigma[e], neg[sigma[f]]]:
                raise GrothendieckError(f"pair ({e},{f}) is not sigma({e}) - sigma({f})")
    return GrothendieckRing(
        s,
        carrier,
        zero,
        tuple(int(v) for v in neg),
        tuple(int(v) for v in sigma),
        tuple(tuple(int(cls[e * m + f]) for f in range(m)) for e in range(m)),
    )


# ---------------------------------------------------------------------------
# Q_S and N_P


def _require_unity(s: FiniteSemiring) -> int:
    if s.unity is None:
        raise ValueError("semiring has no unity")
    return s.unity


def q_subsemiring(s: FiniteSemiring) -> tuple[int, ...]:
    """Elements ``x`` with ``x + a = k*1`` for some element ``a`` and ``k >= 1``."""
    one = _require_unity(s)
    multiples = set(s.orbits[one].seq)
    q = tuple(x for x in range(s.order) if any(s.add[x][a] in multiples for a in range(s.order)))
    qs = set(q)
    if one not in qs:
        raise AssertionError("unity missing from Q_S")
    for x in q:
        for y in q:
            if s.add[x][y] not in qs or s.mul[x][y] not in qs:
                raise AssertionError(f"Q_S not closed at ({x},{y})")
    for x in range(s.order):
        for y in range(s.order):
            if s.add[x][y] in qs and (x not in qs or y not in qs):
                raise AssertionError(f"Q_S not closed under summands at ({x},{y})")
    return q


def np_hom_exists(s: FiniteSemiring) -> bool:
    """Whether some infinite prime set ``P`` admits a unital homomorphism ``N_P -> S``."""
    return s.profiles[_require_unity(s)].strongly_almost_divisible


def np_hom_witnesses(s: FiniteSemiring, prime_bound: int = 1000) -> dict[int, int]:
    """Primes ``p <= prime_bound`` with an element ``a_p`` such that ``(p*1) * a_p = 1``."""
    one = _require_unity(s)
    out = {}
    for p in primerange(2, prime_bound + 1):
        p1 = s.multiple(int(p), one)
        inv = [a for a in range(s.order) if s.mul[p1][a] == one]
        if inv:
            if len(inv) > 1:
                raise AssertionError(f"inverse of {p}*1 is not unique")
            out[int(p)] = inv[0]
    return out


# ---------------------------------------------------------------------------
# finite-scale checks for semirings with unity


@dataclass(frozen=True)
class TheoremReport:
    checks: dict[str, bool]
    counterexamples: tuple[dict, ...]
    from_presentation: bool

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def check_theorem_5(s: FiniteSemiring) -> TheoremReport:
    """Finite-scale consequences for a semiring with unity.

    * every element is almost-divisible (finite implies torsion);
    * ``S(+)`` strongly almost-divisible iff every element is regular, and
      the unity alone decides strong almost-divisibility;
    * ``Q_S`` is a summand-closed subsemiring, ``S`` and ``Q_S`` agree on
      almost-divisibility, and ``G(Q_S)`` is a torsion ring;
    * the ``N_P`` homomorphism test agrees with explicit inverses of ``p*1``.
    """
    one = _require_unity(s)
    prof = s.profiles
    bad: list[dict] = []
    checks: dict[str, bool] = {}

    checks["almost_divisible_iff_torsion"] = all(p.almost_divisible and p.torsion for p in prof)
    if not checks["almost_divisible_iff_torsion"]:
        bad.append({"check": "almost_divisible_iff_torsion", "elements": [p.element for p in prof if not p.almost_divisible]})

    sad_all = all(p.strongly_almost_divisible for p in prof)
    reg_all = all(p.regular for p in prof)
    sad_one = prof[one].strongly_almost_divisible
    checks["sad_iff_regular"] = sad_all == reg_all == sad_one
    if not checks["sad_iff_regular"]:
        bad.append({"check": "sad_iff_regular", "sad_all": sad_all, "regular_all": reg_all, "sad_unity": sad_one})

    try:
        q = q_subsemiring(s)
        qs = s.restrict(q)
        checks["q_subsemiring"] = True
    except AssertionError as exc:
        checks["q_subsemiring"] = False
        bad.append({"check": "q_subsemiring", "error": str(exc)})
        qs = None
    if qs is not None:
        s_ad = all(p.almost_divisible for p in prof)
        q_ad = all(p.almost_divisible for p in qs.profiles)
        checks["q_almost_divisible_agrees"] = s_ad == q_ad
        if s_ad != q_ad:
            bad.append({"check": "q_almost_divisible_agrees", "s": s_ad, "q": q_ad})
        g = grothendieck(qs)
        orders = [g.additive_order(x) for x in range(g.order)]
        torsion_chain = all(p.torsion for p in prof) == (s_ad and all(o >= 1 for o in orders))
        checks["torsion_chain"] = torsion_chain
        if not torsion_chain:
            bad.append({"check": "torsion_chain"})

    wit = np_hom_witnesses(s)
    # for a finite semiring the unity is invertible by p*1 for all large p in some
    # residue class, so a window of large primes decides the question
    late = any(p > 500 for p in wit)
    checks["np_hom_witnesses_agree"] = late == np_hom_exists(s)
    if not checks["np_hom_witnesses_agree"]:
        bad.append({"check": "np_hom_witnesses_agree", "witness_primes": sorted(wit)[:20]})
    return TheoremReport(checks, tuple(bad), s.generators is not None)
