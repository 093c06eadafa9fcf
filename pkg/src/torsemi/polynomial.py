"""Sparse polynomials over a monoid of exponents, ideals and certificates.

A :class:`SparsePoly` stores ``{exponent: coefficient}`` with nonzero
integer coefficients. The ``naturals`` domain models N[C] (positive
coefficients only) and ``integers`` models Z[C].
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .linalg import IntVector, solve_integer, vadd, vscale, vsub
from .monoid import AffineMonoid, DecompPiece, kmin
from .outcome import Undecided

NATURALS = "naturals"
INTEGERS = "integers"


@dataclass(frozen=True)
class SparsePoly:
    ambient: int
    terms: tuple[tuple[IntVector, int], ...]
    domain: str = INTEGERS

    @classmethod
    def from_dict(cls, terms: Mapping[Sequence[int], int], ambient: int, domain: str = INTEGERS) -> SparsePoly:
        if domain not in (NATURALS, INTEGERS):
            raise ValueError(f"unknown coefficient domain {domain!r}")
        clean: dict[IntVector, int] = {}
        for e, c in terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != ambient:
                raise ValueError("exponent rank mismatch")
            if any(a < 0 for a in e):
                raise ValueError("exponents must be in N_0^n")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        clean = {e: c for e, c in clean.items() if c}
        if domain == NATURALS and any(c < 0 for c in clean.values()):
            raise ValueError("negative coefficient in a naturals polynomial")
        return cls(ambient, tuple(sorted(clean.items())), domain)

    @classmethod
    def zero(cls, ambient: int, domain: str = INTEGERS) -> SparsePoly:
        return cls(ambient, (), domain)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: int = 1, domain: str = INTEGERS) -> SparsePoly:
        return cls.from_dict({tuple(exponent): coeff}, len(exponent), domain)

    @property
    def as_dict(self) -> dict[IntVector, int]:
        return dict(self.terms)

    @property
    def support(self) -> tuple[IntVector, ...]:
        return tuple(e for e, _ in self.terms)

    def coeff(self, exponent: Sequence[int]) -> int:
        return self.as_dict.get(tuple(exponent), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: SparsePoly) -> str:
        if self.ambient != other.ambient:
            raise ValueError("ambient rank mismatch")
        return NATURALS if self.domain == other.domain == NATURALS else INTEGERS

    def __add__(self, other: SparsePoly) -> SparsePoly:
        dom = self._check(other)
        acc = self.as_dict
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return SparsePoly.from_dict(acc, self.ambient, dom)

    def __neg__(self) -> SparsePoly:
        if self.domain == NATURALS and self.terms:
            raise ValueError("negative coefficient in a naturals polynomial")
        return SparsePoly(self.ambient, tuple((e, -c) for e, c in self.terms), self.domain)

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        dom = self._check(other)
        acc = self.as_dict
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) - c
        return SparsePoly.from_dict(acc, self.ambient, dom)

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        dom = self._check(other)
        acc: dict[IntVector, int] = {}
        for e, c in self.terms:
            for f, d in other.terms:
                k = vadd(e, f)
                acc[k] = acc.get(k, 0) + c * d
        return SparsePoly.from_dict(acc, self.ambient, dom)

    def scale(self, k: int) -> SparsePoly:
        if self.domain == NATURALS and k < 1:
            raise ValueError("naturals polynomials can only be scaled by k >= 1")
        return SparsePoly.from_dict({e: k * c for e, c in self.terms}, self.ambient, self.domain)

    def shift(self, exponent: Sequence[int]) -> SparsePoly:
        """Multiply by the monomial ``x^exponent``."""
        return SparsePoly(self.ambient, tuple((vadd(e, exponent), c) for e, c in self.terms), self.domain)

    def to_integers(self) -> SparsePoly:
        return SparsePoly(self.ambient, self.terms, INTEGERS)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^({','.join(map(str, e))})" for e, c in self.terms)

    def to_json(self) -> list:
        return [[c, list(e)] for e, c in self.terms]

    def __str__(self) -> str:
        return self.to_text()


def add(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    return f + g


def mul(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    return f * g


def scale(k: int, f: SparsePoly) -> SparsePoly:
    return f.scale(k)


_TERM = re.compile(r"^([+-]?\d+)\s*\*\s*x\^\(([^)]*)\)$|^([+-]?)\s*x\^\(([^)]*)\)$|^([+-]?\d+)$")


def parse_poly(text: str, ambient: int | None = None, domain: str = INTEGERS) -> SparsePoly:
    """Parse ``2*x^(1,1) + 1*x^(2,0)``; a bare integer is a constant term."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    # split on + / - that separate terms, keeping the sign with its term
    pieces = [p for p in re.split(r"\s*\+\s*|\s+(?=-)", s) if p]
    terms: dict[IntVector, int] = {}
    consts = []
    for p in pieces:
        mt = _TERM.match(p.replace(" ", ""))
        if not mt:
            raise ValueError(f"cannot parse term {p!r}")
        if mt.group(1) is not None:
            c, e = int(mt.group(1)), mt.group(2)
        elif mt.group(4) is not None:
            c, e = (-1 if mt.group(3) == "-" else 1), mt.group(4)
        else:
            consts.append(int(mt.group(5)))
            continue
        exp = tuple(int(a) for a in e.split(",")) if e.strip() else ()
        if ambient is None:
            ambient = len(exp)
        terms[exp] = terms.get(exp, 0) + c
    if ambient is None:
        if any(consts):
            raise ValueError("ambient rank needed for a constant polynomial")
        ambient = 0
    for c in consts:
        z = (0,) * ambient
        terms[z] = terms.get(z, 0) + c
    return SparsePoly.from_dict(terms, ambient, domain)


def poly_from_json(data: Sequence, ambient: int | None = None, domain: str = INTEGERS) -> SparsePoly:
    terms: dict[IntVector, int] = {}
    for c, e in data:
        e = tuple(int(a) for a in e)
        if ambient is None:
            ambient = len(e)
        terms[e] = terms.get(e, 0) + int(c)
    if ambient is None:
        raise ValueError("ambient rank needed for an empty polynomial")
    return SparsePoly.from_dict(terms, ambient, domain)


def support_in(m: AffineMonoid, f: SparsePoly) -> bool:
    return all(m.member(e) for e in f.support)


# ---------------------------------------------------------------------------
# monomial shifts


@dataclass(frozen=True)
class Shift:
    """Result of :func:`shift_into`.

    ``k`` is the least positive integer with ``x^(k*alpha) * f`` supported in
    the target monoid. ``decompositions`` lists, per term, the split
    ``exponent = beta + gamma`` used to derive the a priori bound
    ``certified_bound >= k``.
    """

    k: int
    shifted: SparsePoly
    certified_bound: int
    decompositions: tuple[tuple[IntVector, IntVector], ...]


def split_exponent(e: IntVector, c: AffineMonoid, piece: DecompPiece) -> list[tuple[IntVector, IntVector]]:
    """All splits ``e = beta + gamma`` with ``beta ∈ c`` and ``gamma`` in the closure of the piece span."""
    out = []
    pred = c._reach(e) if any(e) else np.array([kernels.ORIGIN])
    box = kernels.box_points(e)
    for idx in np.nonzero(pred != kernels.UNREACHED)[0]:
        beta = tuple(int(a) for a in box[idx])
        gamma = vsub(e, beta)
        if piece.dtilde.member(gamma):
            out.append((beta, gamma))
    return out


def shift_into(f: SparsePoly, alpha: Sequence[int], piece: DecompPiece, c: AffineMonoid) -> Shift:
    """Least ``k`` with ``x^(k*alpha) f`` supported in ``c``, with a certified upper bound."""
    alpha = tuple(int(a) for a in alpha)
    if not any(alpha) or not piece.contains(alpha) or not c.member(alpha):
        raise ValueError("alpha must be a nonzero element of the piece and of the target monoid")
    splits = []
    bound = 1
    for e in f.support:
        best = None
        for beta, gamma in split_exponent(e, c, piece):
            k = kmin(piece, alpha, gamma)
            if best is None or k < best[0]:
                best = (k, beta, gamma)
        if best is None:
            raise ValueError(f"exponent {e} not in C + D̃")
        bound = max(bound, best[0])
        splits.append((best[1], best[2]))
    k = 1
    for e in f.support:
        # membership of k*alpha + e is monotone in k because alpha lies in c
        while not c.member(vadd(vscale(k, alpha), e)):
            k += 1
    assert k <= bound, "shift exceeded the decomposition bound"
    return Shift(k, f.shift(vscale(k, alpha)), bound, tuple(splits))


# ---------------------------------------------------------------------------
# ideals and certificates


@dataclass(frozen=True)
class Ideal:
    monoid: AffineMonoid
    generators: tuple[SparsePoly, ...]

    def __post_init__(self) -> None:
        for h in self.generators:
            if h.ambient != self.monoid.ambient:
                raise ValueError("generator rank mismatch")
            if not support_in(self.monoid, h):
                raise ValueError(f"generator {h} is not supported in the monoid")


@dataclass(frozen=True)
class MembershipCertificate:
    """Claim ``target = sum(f_i * generators[i])``."""

    target: SparsePoly
    cofactors: tuple[tuple[SparsePoly, int], ...] = field(default=())

    def expand(self, ideal: Ideal) -> SparsePoly:
        acc = SparsePoly.zero(self.target.ambient)
        for f, i in self.cofactors:
            acc = acc + f.to_integers() * ideal.generators[i].to_integers()
        return acc

    def problems(self, ideal: Ideal) -> list[str]:
        issues = []
        for f, i in self.cofactors:
            if not 0 <= i < len(ideal.generators):
                issues.append(f"generator index {i} out of range")
            elif f.ambient != self.target.ambient:
                issues.append(f"cofactor for generator {i} has the wrong rank")
            elif not support_in(ideal.monoid, f):
                issues.append(f"cofactor for generator {i} leaves the monoid")
        if issues:
            return issues
        if self.expand(ideal) != self.target.to_integers():
            issues.append("expansion does not equal the target")
        return issues

    def validate(self, ideal: Ideal) -> bool:
        return not self.problems(ideal)


def bounded_ideal_membership(
    f: SparsePoly, ideal: Ideal, support_cap: Iterable[Sequence[int]]
) -> MembershipCertificate | Undecided:
    """Search cofactors supported in ``support_cap`` with ``f = sum f_i h_i`` over Z."""
    f = f.to_integers()
    if f.is_zero():
        return MembershipCertificate(f, ())
    cap = sorted({tuple(int(a) for a in s) for s in support_cap})
    for s in cap:
        if not ideal.monoid.member(s):
            raise ValueError(f"cap exponent {s} is not in the monoid")
    unknowns = [(i, s) for i in range(len(ideal.generators)) for s in cap]
    if not unknowns:
        return Undecided("empty cofactor support")
    rows_idx: dict[IntVector, int] = {e: k for k, e in enumerate(f.support)}
    cols: list[dict[int, int]] = []
    for i, s in unknowns:
        col = {}
        for e, c in ideal.generators[i].terms:
            key = vadd(e, s)
            if key not in rows_idx:
                rows_idx[key] = len(rows_idx)
            col[rows_idx[key]] = c
        cols.append(col)
    a = [[col.get(r, 0) for col in cols] for r in range(len(rows_idx))]
    b = [0] * len(rows_idx)
    for e, c in f.terms:
        b[rows_idx[e]] = c
    x = solve_integer(a, b)
    if x is None:
        return Undecided("no integer solution with the given cofactor support")
    cof: dict[int, dict[IntVector, int]] = {}
    for (i, s), v in zip(unknowns, x):
        if v:
            cof.setdefault(i, {})[s] = v
    cert = MembershipCertificate(
        f, tuple((SparsePoly.from_dict(t, f.ambient), i) for i, t in sorted(cof.items()))
    )
    assert cert.validate(ideal), "solver produced an invalid certificate"
    return cert


@dataclass(frozen=True)
class NTWitness:
    """Evidence that ``q * (x^alpha)^ell`` lies in the ideal."""

    alpha: IntVector
    q: int
    ell: int
    certificate: MembershipCertificate


def nt_witness_problems(w: NTWitness, ideal: Ideal) -> list[str]:
    issues = []
    if w.q < 1 or w.ell < 1:
        issues.append("q and ell must be positive")
    expected = SparsePoly.monomial(vscale(w.ell, w.alpha), w.q)
    if w.certificate.target.to_integers() != expected:
        issues.append("certificate target is not q * x^(ell * alpha)")
    return issues + w.certificate.problems(ideal)


def check_nt_witness(w: NTWitness, ideal: Ideal) -> bool:
    return not nt_witness_problems(w, ideal)
