"""Affine monoids in N_0^n, their saturations and canonical decompositions.

Two saturations of a finitely generated monoid ``C`` are supported:

* the *closure* ``span(C) ∩ N_0^n`` (:func:`saturate`), and
* the *normalization* ``cone(C) ∩ N_0^n`` (:func:`normalize`), the smallest
  monoid containing ``C`` in which ``k*a ∈ C`` forces ``a ∈ C``.

Both are represented by :class:`SaturatedMonoid`, which carries its cone and
Hilbert basis. A canonical decomposition splits a saturated monoid into one
piece per relatively open face of its cone.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .linalg import IntVector, Subspace, vadd, vscale
from .polyhedral import Cone, Face, FaceDecomposition, cone_from_generators, face_decomposition, orthant_section

KMIN_CAP = 10**6


def _vec(v: Iterable[int]) -> IntVector:
    return tuple(int(a) for a in v)


@dataclass(frozen=True)
class AffineMonoid:
    """Monoid generated by nonzero vectors of N_0^n (zeros and repeats dropped, sorted)."""

    ambient: int
    generators: tuple[IntVector, ...]

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient: int | None = None) -> AffineMonoid:
        gens = [_vec(g) for g in gens]
        if ambient is None:
            if not gens:
                raise ValueError("ambient rank needed for an empty generator list")
            ambient = len(gens[0])
        for g in gens:
            if len(g) != ambient:
                raise ValueError("generators must share the ambient rank")
            if any(a < 0 for a in g):
                raise ValueError("generators must be in the nonnegative orthant")
        return cls(ambient, tuple(sorted({g for g in gens if any(g)})))

    @cached_property
    def cone(self) -> Cone:
        return cone_from_generators(self.generators, self.ambient)

    @property
    def span(self) -> Subspace:
        return self.cone.span

    def _reach(self, alpha: IntVector) -> np.ndarray:
        gens = np.array(self.generators, dtype=np.int64).reshape(-1, self.ambient)
        return kernels.reach_table(gens, np.array(alpha, dtype=np.int64))

    def factorization(self, alpha: Sequence[int]) -> tuple[int, ...] | None:
        """Generator multiplicities summing to ``alpha``, or None if ``alpha`` is not in the monoid."""
        alpha = _vec(alpha)
        if len(alpha) != self.ambient:
            raise ValueError("ambient rank mismatch")
        if any(a < 0 for a in alpha) or not self.cone.contains(alpha):
            return None
        if not any(alpha):
            return (0,) * len(self.generators)
        pred = self._reach(alpha)
        strides = np.cumprod([1] + [a + 1 for a in reversed(alpha[1:])])[::-1]
        idx = int(sum(a * s for a, s in zip(alpha, strides)))
        if pred[idx] == kernels.UNREACHED:
            return None
        counts = [0] * len(self.generators)
        while pred[idx] != kernels.ORIGIN:
            j = int(pred[idx])
            counts[j] += 1
            idx -= int(sum(g * s for g, s in zip(self.generators[j], strides)))
        return tuple(counts)

    def member(self, alpha: Sequence[int]) -> bool:
        return self.factorization(alpha) is not None

    def __contains__(self, alpha: Sequence[int]) -> bool:
        return self.member(alpha)


def member_generated(m: AffineMonoid, alpha: Sequence[int]) -> bool:
    return m.member(alpha)


@dataclass(frozen=True)
class SaturatedMonoid:
    """``cone ∩ Z^n`` for a cone in the nonnegative orthant spanned by ``base``.

    ``kind`` records how it arose: ``"closure"`` for ``span ∩ N_0^n`` and
    ``"normalization"`` for ``cone(base) ∩ N_0^n``.
    """

    base: AffineMonoid
    cone: Cone
    kind: str = "normalization"

    @property
    def ambient(self) -> int:
        return self.base.ambient

    @property
    def span(self) -> Subspace:
        return self.cone.span

    @property
    def dim(self) -> int:
        return self.cone.dim

    @cached_property
    def hilbert_basis(self) -> tuple[IntVector, ...]:
        """Irreducible elements, sorted by total degree then lexicographically."""
        n = self.ambient
        if self.dim == 0:
            return ()
        upper = [sum(col) for col in zip(*self.cone.extreme_rays)]
        pts = kernels.box_points(upper)
        pts = pts[self.cone.contains_many(pts)]
        order = np.lexsort(tuple(pts[:, i] for i in range(n - 1, -1, -1)) + (pts.sum(axis=1),))
        pts = pts[order]
        ineqs = np.array(self.cone.facet_normals, dtype=np.int64).reshape(-1, n)
        keep = kernels.irreducible_indices(pts, ineqs)
        return tuple(_vec(pts[k]) for k in keep)

    def member(self, alpha: Sequence[int]) -> bool:
        alpha = _vec(alpha)
        if len(alpha) != self.ambient:
            raise ValueError("ambient rank mismatch")
        return all(a >= 0 for a in alpha) and self.cone.contains(alpha)

    def __contains__(self, alpha: Sequence[int]) -> bool:
        return self.member(alpha)

    def generated(self) -> AffineMonoid:
        """The same monoid presented by its Hilbert basis."""
        return AffineMonoid.from_generators(self.hilbert_basis, self.ambient)

    def lattice_points(self, height: int) -> np.ndarray:
        """All members with every coordinate at most ``height``, in lexicographic order."""
        pts = kernels.box_points([height] * self.ambient)
        return pts[self.cone.contains_many(pts)]


def saturate(m: AffineMonoid) -> SaturatedMonoid:
    """The closure ``span(m) ∩ N_0^n``."""
    return SaturatedMonoid(m, orthant_section(m.span), "closure")


def normalize(m: AffineMonoid) -> SaturatedMonoid:
    """The normalization ``cone(m) ∩ N_0^n``."""
    return SaturatedMonoid(m, m.cone, "normalization")


def member_saturated(s: SaturatedMonoid, alpha: Sequence[int]) -> bool:
    return s.member(alpha)


def is_saturated(m: AffineMonoid) -> bool:
    """True iff ``k*a ∈ m`` implies ``a ∈ m`` for every ``a`` in N_0^n."""
    return all(m.member(h) for h in normalize(m).hilbert_basis)


def is_closed(m: AffineMonoid) -> bool:
    """True iff ``m`` equals ``span(m) ∩ N_0^n``."""
    return all(m.member(h) for h in saturate(m).hilbert_basis)


@dataclass
class DecompPiece:
    """The piece ``(A ∩ C) ∪ {0}`` for a relatively open face ``A`` of ``cone(C)``."""

    face: Face
    monoid: SaturatedMonoid = field(repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)
    _dtilde: SaturatedMonoid | None = field(default=None, repr=False, compare=False)

    @property
    def id(self) -> int:
        return self.face.id

    @property
    def dim(self) -> int:
        return self.face.dim

    def contains(self, alpha: Sequence[int]) -> bool:
        alpha = _vec(alpha)
        if not any(alpha):
            return True
        return self.monoid.member(alpha) and self.face.ri_contains(alpha)

    def __contains__(self, alpha: Sequence[int]) -> bool:
        return self.contains(alpha)

    @property
    def dtilde(self) -> SaturatedMonoid:
        """``span(piece) ∩ N_0^n``, computed once on first use."""
        with self._lock:
            if self._dtilde is None:
                self._dtilde = saturate(AffineMonoid.from_generators(self.face.rays, self.monoid.ambient))
            return self._dtilde

    @property
    def dtilde_basis(self) -> tuple[IntVector, ...]:
        return self.dtilde.hilbert_basis


def dtilde(p: DecompPiece) -> SaturatedMonoid:
    return p.dtilde


@dataclass(frozen=True)
class CanonicalDecomposition:
    monoid: SaturatedMonoid
    faces: FaceDecomposition = field(repr=False)
    pieces: tuple[DecompPiece, ...]

    def classify(self, alpha: Sequence[int]) -> DecompPiece:
        alpha = _vec(alpha)
        if not self.monoid.member(alpha):
            raise ValueError("not in monoid")
        return self.pieces[self.faces.classify(alpha).id]

    def classify_many(self, points: np.ndarray) -> np.ndarray:
        """Piece id per row; -1 for rows outside the monoid."""
        points = np.asarray(points)
        ids = self.faces.classify_many(points)
        ids[(points < 0).any(axis=1)] = -1
        return ids

    @property
    def apex(self) -> DecompPiece:
        return self.pieces[0]

    @property
    def top(self) -> DecompPiece:
        return self.pieces[-1]


def canonical_decomposition(s: SaturatedMonoid) -> CanonicalDecomposition:
    fd = face_decomposition(s.cone)
    return CanonicalDecomposition(s, fd, tuple(DecompPiece(f, s) for f in fd.faces))


def classify(d: CanonicalDecomposition, alpha: Sequence[int]) -> DecompPiece:
    return d.classify(alpha)


def kmin(p: DecompPiece, alpha: Sequence[int], gamma: Sequence[int], cap: int = KMIN_CAP) -> int:
    """Least ``k >= 1`` with ``k*alpha + gamma`` in the piece ``p``."""
    alpha, gamma = _vec(alpha), _vec(gamma)
    if not any(alpha) or not p.contains(alpha):
        raise ValueError("alpha must be a nonzero element of the piece")
    if not p.dtilde.member(gamma):
        raise ValueError("gamma must lie in the closure of the piece's span")
    for k in range(1, cap + 1):
        if p.contains(vadd(vscale(k, alpha), gamma)):
            assert k == 1 or not p.contains(vadd(vscale(k - 1, alpha), gamma))
            return k
    raise RuntimeError("termination bound exceeded")


def sum_escalation(d: CanonicalDecomposition, p: DecompPiece, alpha: Sequence[int], beta: Sequence[int]) -> DecompPiece:
    """The piece of ``alpha + beta``, which must have larger dimension than ``p``."""
    alpha, beta = _vec(alpha), _vec(beta)
    if not any(alpha) or not p.contains(alpha):
        raise ValueError("alpha must be a nonzero element of the piece")
    if not d.monoid.member(beta):
        raise ValueError("beta must lie in the monoid")
    if p.dtilde.member(beta):
        raise ValueError("beta must lie outside the closure of the piece's span")
    e = d.classify(vadd(alpha, beta))
    if e.dim <= p.dim:
        raise AssertionError("dimension escalation violated")
    return e


def random_monoid(rng: np.random.Generator, rank: int = 3, max_gens: int = 4, max_entry: int = 4) -> AffineMonoid:
    """A random monoid with 1..max_gens nonzero generators of entries at most ``max_entry``."""
    while True:
        k = int(rng.integers(1, max_gens + 1))
        gens = rng.integers(0, max_entry + 1, size=(k, rank))
        gens = [g for g in gens.tolist() if any(g)]
        if gens:
            return AffineMonoid.from_generators(gens, rank)
