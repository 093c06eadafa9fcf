"""Finite quotients of monoid semirings ``N[C]`` by a congruence.

Elements of the quotient are enumerated in the style of coset enumeration.
Work happens over the polynomial semiring in one variable ``y_j`` per monoid
generator; if the generators are linearly dependent, the binomial relations
of ``C`` are added first. Classes carry partial addition and multiplication
tables. The procedure repeats three steps until nothing changes:

1. define missing products by a generator and sums with a monomial, in
   creation order;
2. derive forced entries and coincidences from associativity and
   distributivity (:func:`torsemi.kernels.deductions`);
3. merge coincident classes.

The result is accepted only once the tables are complete and pass full axiom
validation, with every relation holding. Caps on the number of classes turn
runaway enumerations into :class:`~torsemi.outcome.Undecided`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
import sympy

from . import kernels
from .linalg import IntVector, rank
from .monoid import AffineMonoid
from .outcome import Undecided
from .polynomial import NATURALS, SparsePoly, support_in
from .semiring import FiniteSemiring, validate

Word = tuple[tuple[int, tuple[int, ...]], ...]  # (coefficient, generator exponents) terms


@dataclass(frozen=True)
class CongruencePresentation:
    monoid: AffineMonoid
    relations: tuple[tuple[SparsePoly, SparsePoly], ...]
    size_cap: int = 64

    def __post_init__(self) -> None:
        if self.size_cap < 1:
            raise ValueError("size_cap must be positive")
        for lhs, rhs in self.relations:
            for f in (lhs, rhs):
                if f.domain != NATURALS or f.is_zero():
                    raise ValueError("relation sides must be nonzero naturals polynomials")
                if f.ambient != self.monoid.ambient or not support_in(self.monoid, f):
                    raise ValueError(f"relation term {f} is not supported in the monoid")


@lru_cache(maxsize=256)
def toric_relations(gens: tuple[IntVector, ...]) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Pairs ``(u, v)`` with ``sum u_j g_j = sum v_j g_j`` generating all such coincidences."""
    r = len(gens)
    if r == 0 or rank(gens) == r:
        return ()
    n = len(gens[0])
    t = sympy.symbols(f"t0:{n}")
    y = sympy.symbols(f"y0:{r}")
    ideal = [y[j] - sympy.Mul(*[t[i] ** gens[j][i] for i in range(n)]) for j in range(r)]
    basis = sympy.groebner(ideal, *t, *y, order="lex")
    out = []
    for g in basis.exprs:
        if g.free_symbols & set(t):
            continue
        terms = sympy.Poly(g, *y).terms()
        if len(terms) != 2 or sorted(c for _, c in terms) != [-1, 1]:
            raise AssertionError(f"unexpected elimination result {g}")
        (u, _), (v, _) = terms
        out.append((tuple(int(a) for a in u), tuple(int(a) for a in v)))
    return tuple(sorted(out))


class _Tables:
    """Partial tables on classes ``0..n-1``; class 0 is the unity."""

    def __init__(self, ngens: int):
        self.cap = 64
        self.n = 0
        self.add = np.full((self.cap, self.cap), -1, dtype=np.int64)
        self.mul = np.full((self.cap, self.cap), -1, dtype=np.int64)
        self.monomial = np.zeros(self.cap, dtype=bool)
        self.created = 0
        self.pending: list[tuple[int, int]] = []
        self.one = self.new(monomial=True)
        self.gens = [self.new(monomial=True) for _ in range(ngens)]

    def new(self, monomial: bool = False) -> int:
        if self.n == self.cap:
            grow = self.cap * 2
            for name in ("add", "mul"):
                t = np.full((grow, grow), -1, dtype=np.int64)
                t[: self.cap, : self.cap] = getattr(self, name)
                setattr(self, name, t)
            mono = np.zeros(grow, dtype=bool)
            mono[: self.cap] = self.monomial
            self.monomial = mono
            self.cap = grow
        c = self.n
        self.n += 1
        self.created += 1
        self.monomial[c] = monomial
        if self.n > 1:
            self.mul[0, c] = self.mul[c, 0] = c
        else:
            self.mul[0, 0] = 0
        return c

    def set(self, name: str, a: int, b: int, v: int) -> None:
        table = getattr(self, name)
        old = table[a, b]
        if old < 0:
            table[a, b] = table[b, a] = v
        elif old != v:
            self.pending.append((int(old), int(v)))

    def lookup(self, name: str, a: int, b: int, define: bool, monomial: bool = False) -> int:
        v = int(getattr(self, name)[a, b])
        if v < 0 and define:
            v = self.new(monomial)
            # new() may reallocate the tables, so fetch them again
            table = getattr(self, name)
            table[a, b] = table[b, a] = v
        return v

    def compact(self) -> None:
        """Merge all pending coincidences, repeating until the tables are consistent."""
        while self.pending:
            n = self.n
            parent = list(range(n))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in self.pending:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            self.pending = []
            reps = np.array([find(x) for x in range(n)], dtype=np.int64)
            live = np.unique(reps)
            label = np.full(n, -1, dtype=np.int64)
            label[live] = np.arange(len(live))
            lab = label[reps]
            m = len(live)
            mono = np.zeros(self.cap, dtype=bool)
            np.logical_or.at(mono, lab, self.monomial[:n])
            new_tables = []
            for t in (self.add, self.mul):
                i, j = np.nonzero(t[:n, :n] >= 0)
                v = lab[t[i, j]]
                ki, kj = lab[i], lab[j]
                out = np.full((self.cap, self.cap), -1, dtype=np.int64)
                key = ki * m + kj
                order = np.argsort(key, kind="stable")
                key, v = key[order], v[order]
                start = np.ones(len(key), dtype=bool)
                start[1:] = key[1:] != key[:-1]
                firsts = np.maximum.accumulate(np.where(start, np.arange(len(key)), 0))
                clash = v != v[firsts]
                self.pending.extend(zip(v[firsts][clash].tolist(), v[clash].tolist()))
                out[key[start] // m, key[start] % m] = v[start]
                new_tables.append(out)
            self.add, self.mul = new_tables
            self.monomial = mono
            self.gens = [int(lab[g]) for g in self.gens]
            self.one = int(lab[self.one])
            self.n = m

    def apply_events(self, events: np.ndarray) -> None:
        for kind, a, b, v in events.tolist():
            if kind == kernels.MERGE:
                self.pending.append((a, b))
            elif kind == kernels.DEFINE_ADD:
                self.set("add", a, b, v)
            else:
                self.set("mul", a, b, v)


def _word(f: SparsePoly, monoid: AffineMonoid) -> Word:
    out = []
    for e, c in f.terms:
        fac = monoid.factorization(e)
        if fac is None:
            raise ValueError(f"exponent {e} is not in the monoid")
        out.append((c, fac))
    return tuple(out)


def _evaluate(t: _Tables, word: Word, define: bool) -> int:
    total = -1
    for c, fac in word:
        mono = t.one
        for j, k in enumerate(fac):
            for _ in range(k):
                mono = t.lookup("mul", mono, t.gens[j], define, monomial=True)
                if mono < 0:
                    return -1
        acc = mono
        for _ in range(c - 1):
            acc = t.lookup("add", acc, mono, define)
            if acc < 0:
                return -1
        if total < 0:
            total = acc
        else:
            total = t.lookup("add", total, acc, define)
            if total < 0:
                return -1
    return total


def _deduce(t: _Tables) -> None:
    while True:
        t.compact()
        ev = kernels.deductions(t.add[: t.n, : t.n], t.mul[: t.n, : t.n])
        if ev.shape[0] == 0:
            return
        t.apply_events(ev)


def quotient(
    p: CongruencePresentation, live_cap: int | None = None, created_cap: int | None = None
) -> FiniteSemiring | Undecided:
    """The finite semiring ``N[C] / ~`` or Undecided if the caps are hit."""
    monoid = p.monoid
    gens = monoid.generators
    r = len(gens)
    live_cap = live_cap or max(4 * p.size_cap, 32)
    created_cap = created_cap or 20 * live_cap
    t = _Tables(r)
    words = [(_word(lhs, monoid), _word(rhs, monoid)) for lhs, rhs in p.relations]
    for u, v in toric_relations(gens):
        words.append((((1, u),), ((1, v),)))
    for lw, rw in words:
        a = _evaluate(t, lw, True)
        b = _evaluate(t, rw, True)
        t.pending.append((a, b))
        t.compact()
    while True:
        _deduce(t)
        if t.n > live_cap or t.created > created_cap:
            return Undecided(f"enumeration exceeded {live_cap} live classes or {created_cap} definitions")
        # first class in creation order with a missing generator edge
        n = t.n
        mono_idx = np.nonzero(t.monomial[:n])[0]
        need = (t.add[:n, mono_idx] < 0).any(axis=1)
        if t.gens:
            need |= t.monomial[:n] & (t.mul[:n, t.gens] < 0).any(axis=1)
        todo = np.nonzero(need)[0]
        if todo.size == 0:
            holes = np.argwhere(np.concatenate([t.add[: t.n, : t.n], t.mul[: t.n, : t.n]]) < 0)
            if holes.size == 0:
                break
            i, j = holes[0]
            t.lookup("add" if i < t.n else "mul", int(i % t.n), int(j), True)
            continue
        # a batch proportional to the table size keeps the number of sweeps logarithmic
        for a in todo[: max(1, n // 8)].tolist():
            if t.monomial[a]:
                for g in t.gens:
                    t.lookup("mul", a, g, True, monomial=True)
            for m in mono_idx:
                t.lookup("add", a, int(m), True)
    if t.n > p.size_cap:
        return Undecided(f"quotient has {t.n} elements, above the cap {p.size_cap}")
    n = t.n
    s = validate(t.add[:n, :n], t.mul[:n, :n], unity=t.one, generators=None)
    gen_map = [((0,) * monoid.ambient, t.one)] + [(g, t.gens[j]) for j, g in enumerate(gens)]
    for lw, rw in words:
        if _evaluate(t, lw, False) != _evaluate(t, rw, False):
            raise AssertionError("relation does not hold in the computed quotient")
    return FiniteSemiring(s.order, s.add, s.mul, s.unity, tuple(gen_map))


def monomial_class(s: FiniteSemiring, exponents: Sequence[int], monoid: AffineMonoid) -> int:
    """Element of ``s`` represented by ``x^exponents``, using the generator map."""
    if s.generators is None:
        raise ValueError("semiring has no generator map")
    fac = monoid.factorization(exponents)
    if fac is None:
        raise ValueError("exponent not in the monoid")
    lookup = dict(s.generators)
    acc = lookup[(0,) * monoid.ambient]
    for j, k in enumerate(fac):
        for _ in range(k):
            acc = s.mul[acc][lookup[monoid.generators[j]]]
    return acc
