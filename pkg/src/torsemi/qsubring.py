"""Subrings of the rationals and the semirings ``N_P``.

A subring ``R`` of ``Q`` not contained in ``Z`` is determined by a positive
integer ``n`` and a set of primes ``P`` with ``gcd(n, p) = 1``:
``R = {n*k/q : k in Z, q a product of primes from P}``. It is finitely
generated exactly when ``P`` is finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Iterator

from sympy import divisors, factorint, isprime

from .linalg import _ext_gcd

EXPLICIT, ALL, COPRIME = "explicit", "all", "coprime"


def _prime_factors(q: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(abs(q)))) if abs(q) > 1 else ()


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes: an explicit finite list, all primes, or all primes not dividing ``modulus``."""

    kind: str
    values: tuple[int, ...] = ()
    modulus: int = 1

    def __post_init__(self) -> None:
        if self.kind == EXPLICIT:
            if list(self.values) != sorted(set(self.values)) or not all(isprime(p) for p in self.values):
                raise ValueError("explicit prime lists must be sorted, distinct primes")
        elif self.kind == COPRIME:
            if self.modulus < 1:
                raise ValueError("modulus must be positive")
        elif self.kind != ALL:
            raise ValueError(f"unknown prime set kind {self.kind!r}")

    @classmethod
    def explicit(cls, primes: Iterable[int]) -> PrimeSet:
        return cls(EXPLICIT, tuple(sorted(set(int(p) for p in primes))))

    @classmethod
    def all_primes(cls) -> PrimeSet:
        return cls(ALL)

    @classmethod
    def coprime_to(cls, m: int) -> PrimeSet:
        return cls(COPRIME, (), int(m))

    @property
    def is_finite(self) -> bool:
        return self.kind == EXPLICIT

    def __contains__(self, p: int) -> bool:
        if not isprime(p):
            return False
        if self.kind == EXPLICIT:
            return p in self.values
        if self.kind == COPRIME:
            return self.modulus % p != 0
        return True

    def smooth(self, q: int) -> bool:
        """True iff ``q`` is a product of primes from the set (1 is the empty product)."""
        return all(p in self for p in _prime_factors(q))

    def to_json(self) -> dict:
        if self.kind == EXPLICIT:
            return {"kind": EXPLICIT, "values": list(self.values)}
        if self.kind == COPRIME:
            return {"kind": COPRIME, "modulus": self.modulus}
        return {"kind": ALL}

    @classmethod
    def from_json(cls, obj: dict) -> PrimeSet:
        kind = obj["kind"]
        if kind == EXPLICIT:
            return cls.explicit(obj.get("values", []))
        if kind == COPRIME:
            return cls.coprime_to(obj["modulus"])
        return cls(kind)


@dataclass(frozen=True)
class BezoutStep:
    """``n/p = alpha * (n * a/p) + beta * n`` where ``a/p = (b/p) * g`` for generator ``g = a/b``."""

    prime: int
    generator: int
    alpha: int
    beta: int


@dataclass(frozen=True)
class Certificate:
    """Ring expressions over the generators reaching ``n`` and every ``n/p``.

    ``n = sum(coeffs[i] * den_i * g_i)``, each ``den_i * g_i`` being a sum of
    copies of ``g_i``, and one :class:`BezoutStep` per prime.
    """

    coeffs: tuple[int, ...]
    steps: tuple[BezoutStep, ...]


@dataclass(frozen=True)
class QSubringDescriptor:
    n: int
    primes: PrimeSet
    certificate: Certificate | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        bad = [p for p in _prime_factors(self.n) if p in self.primes]
        if bad:
            raise ValueError(f"n = {self.n} shares the primes {bad} with P")

    def to_json(self) -> dict:
        return {"n": self.n, "primes": self.primes.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> QSubringDescriptor:
        return cls(int(obj["n"]), PrimeSet.from_json(obj["primes"]))


def fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    return Fraction(int(num), int(den) if sep else 1)


def height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)


def check_certificate(gens: tuple[Fraction, ...], d: QSubringDescriptor) -> list[str]:
    """Problems with ``d.certificate`` as a proof that ``n`` and each ``n/p`` lie in the ring."""
    cert = d.certificate
    if cert is None:
        return ["no certificate"]
    problems = []
    n = d.n
    total = sum(c * g.denominator * g for c, g in zip(cert.coeffs, gens))
    if len(cert.coeffs) != len(gens) or total != n:
        problems.append(f"integer combination gives {total}, not {n}")
    if not d.primes.is_finite or tuple(s.prime for s in cert.steps) != d.primes.values:
        problems.append("one step per prime of P is required")
    for s in cert.steps:
        g = gens[s.generator]
        if g.denominator % s.prime:
            problems.append(f"{s.prime} does not divide the denominator of {g}")
            continue
        a_over_p = (g.denominator // s.prime) * g
        if s.alpha * n * a_over_p + s.beta * n != Fraction(n, s.prime):
            problems.append(f"Bezout step for {s.prime} does not reach n/{s.prime}")
    return problems


def canonical_form(gens: Iterable[Fraction]) -> QSubringDescriptor:
    """The pair ``(n, P)`` of the subring of ``Q`` generated by ``gens``, with a certificate.

    ``P`` collects the primes of the denominators and ``n`` is the gcd of the
    numerators. Every element of the ring has a numerator divisible by ``n``
    and a ``P``-smooth denominator; the attached certificate shows that ``n``
    and each ``n/p`` are reachable, so the two sets coincide.

    Raises:
        ValueError: if every generator is an integer.
    """
    gens = tuple(Fraction(g) for g in gens)
    if not gens or all(g.denominator == 1 for g in gens):
        raise ValueError("subring of Z, descriptor form does not apply")
    primes = sorted(set().union(*(_prime_factors(g.denominator) for g in gens)))
    nums = [g.numerator for g in gens]
    n = reduce(gcd, (abs(a) for a in nums))
    # integer coefficients with sum(c_i * a_i) = n, one generator at a time
    coeffs = [0] * len(gens)
    acc = 0
    for i, a in enumerate(nums):
        if a == 0:
            continue
        g, x, y = _ext_gcd(acc, a)
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y
        acc = g
    if acc < 0:
        coeffs = [-c for c in coeffs]
    steps = []
    for p in primes:
        j = next(i for i, g in enumerate(gens) if g.denominator % p == 0)
        a = gens[j].numerator
        # a is coprime to p, so alpha*a + beta*p = 1
        g, alpha, beta = _ext_gcd(a, p)
        assert abs(g) == 1
        steps.append(BezoutStep(p, j, alpha * g, beta * g))
    d = QSubringDescriptor(n, PrimeSet.explicit(primes), Certificate(tuple(coeffs), tuple(steps)))
    problems = check_certificate(gens, d)
    if problems:
        raise AssertionError("; ".join(problems))
    return d


def member(d: QSubringDescriptor, x: Fraction) -> bool:
    x = Fraction(x)
    return d.primes.smooth(x.denominator) and x.numerator % d.n == 0


def is_finitely_generated(d: QSubringDescriptor) -> bool:
    return d.primes.is_finite


def is_additively_almost_divisible(d: QSubringDescriptor) -> bool:
    return not is_finitely_generated(d)


def np_member(p: PrimeSet, x: Fraction) -> bool:
    """Membership in ``N_P``: positive fractions with a ``P``-smooth denominator."""
    x = Fraction(x)
    return x > 0 and p.smooth(x.denominator)


# ---------------------------------------------------------------------------
# bounded closure oracle


@dataclass(frozen=True)
class BoundedClosure:
    """Ring elements of height at most ``bound`` found by saturation.

    For each denominator ``q <= bound`` the elements of the ring lying in
    ``(1/q) Z`` form a subgroup ``(g_q / q) Z``; ``levels`` maps ``q`` to
    ``g_q`` for every level reached.
    """

    bound: int
    levels: dict[int, int]

    def __contains__(self, x: Fraction) -> bool:
        x = Fraction(x)
        if height(x) > self.bound:
            return False
        g = self.levels.get(x.denominator)
        return g is not None and x.numerator % g == 0

    def __iter__(self) -> Iterator[Fraction]:
        seen = set()
        for q in sorted(self.levels):
            g = self.levels[q]
            for k in range(-(self.bound // g), self.bound // g + 1):
                x = Fraction(k * g, q)
                if height(x) <= self.bound and x not in seen:
                    seen.add(x)
                    yield x

    def __len__(self) -> int:
        return sum(1 for _ in self)


def closure_oracle(gens: Iterable[Fraction], height_bound: int) -> BoundedClosure:
    """Saturate the generators under sums, differences and products, per denominator.

    Only denominators up to ``height_bound`` are tracked. Each level keeps the
    gcd of the numerators found there. Sums of two levels live at the lcm of
    their denominators, products at the product; either way the multiples
    that reduce to a tracked denominator are carried down to it.
    """
    gens = [Fraction(g) for g in gens]
    if any(height(g) > height_bound for g in gens):
        raise ValueError("height bound below a generator height")
    levels: dict[int, int] = {}

    def put(q: int, g: int) -> bool:
        """Record the subgroup ``(g/q) Z`` and its intersection with every tracked ``(1/q') Z``."""
        changed = False
        for qq in _divisors(q):
            if qq > height_bound:
                break
            t = q // qq
            # the least multiple of g divisible by t, seen over qq
            num = abs(g) // gcd(abs(g), t)
            old = levels.get(qq, 0)
            new = gcd(old, num)
            if new != old:
                levels[qq] = new
                changed = True
        return changed

    for x in gens:
        if x:
            put(x.denominator, x.numerator)
    changed = True
    while changed:
        changed = False
        items = sorted(levels.items())
        for i, (q1, g1) in enumerate(items):
            for q2, g2 in items[i:]:
                lc = q1 * q2 // gcd(q1, q2)
                if lc <= height_bound:
                    changed |= put(lc, g1 * (lc // q1))
                    changed |= put(lc, g2 * (lc // q2))
                changed |= put(q1 * q2, g1 * g2)
    return BoundedClosure(height_bound, dict(sorted(levels.items())))


@lru_cache(maxsize=4096)
def _divisors(q: int) -> tuple[int, ...]:
    return tuple(int(t) for t in divisors(q))
