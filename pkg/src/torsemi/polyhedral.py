"""Pointed rational polyhedral cones inside the nonnegative orthant.

A :class:`Cone` is stored by both descriptions: primitive extreme rays and
primitive inner facet normals. Normals are taken inside the linear span of
the cone, which makes them unique up to order. Faces are identified by the
set of facet normals vanishing on them, and the relatively open faces
partition the cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .linalg import IntVector, Subspace, dot, primitive, rank, rref, span


def _integral(v: Sequence[Fraction]) -> IntVector:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(x * den) for x in v])


def _simplicial_rays(a: list[IntVector]) -> list[IntVector]:
    """Columns of ``a^-1`` made primitive: ray ``i`` is positive on row ``i`` only."""
    d = len(a)
    aug = [list(row) + [int(i == j) for j in range(d)] for i, row in enumerate(a)]
    red, piv = rref(aug, 2 * d)
    assert piv[:d] == list(range(d)), "rows are not independent"
    inv = [row[d:] for row in red]
    return [_integral([inv[r][i] for r in range(d)]) for i in range(d)]


def extreme_rays_of(rows: Sequence[Sequence[int]], d: int) -> list[IntVector]:
    """Extreme rays of ``{z in Q^d : rows . z >= 0}`` by double description.

    ``rows`` must have rank ``d`` so the cone is pointed. Rows are inserted in
    the given order; the output is sorted lexicographically.
    """
    rows = [tuple(r) for r in rows]
    if d == 0:
        return []
    basis_idx: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis_idx] + [r], d) > len(basis_idx):
            basis_idx.append(i)
        if len(basis_idx) == d:
            break
    if len(basis_idx) < d:
        raise ValueError("constraint rows do not determine a pointed cone")
    start = [rows[i] for i in basis_idx]
    rays = _simplicial_rays(start)
    done = list(start)
    # zero sets as bitmasks over the rows processed so far
    zeros = [sum(1 << j for j, r in enumerate(done) if dot(r, z) == 0) for z in rays]
    for i, a in enumerate(rows):
        if i in basis_idx:
            continue
        bit = 1 << len(done)
        vals = [dot(a, z) for z in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if not neg:
            zeros = [zs | (bit if v == 0 else 0) for zs, v in zip(zeros, vals)]
            done.append(a)
            continue
        new_rays: list[IntVector] = []
        new_zeros: list[int] = []
        for k, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[k])
                new_zeros.append(zeros[k] | (bit if v == 0 else 0))
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if bin(common).count("1") < d - 2:
                    continue
                if any(
                    (zeros[r] & common) == common for r in range(len(rays)) if r != p and r != q
                ):
                    continue
                z = primitive([vals[p] * x - vals[q] * y for x, y in zip(rays[q], rays[p])])
                new_rays.append(z)
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
        done.append(a)
    return sorted(set(rays))


@dataclass(frozen=True)
class Cone:
    """Cone of nonnegative rational combinations of ``generators``."""

    ambient: int
    generators: tuple[IntVector, ...]
    extreme_rays: tuple[IntVector, ...]
    facet_normals: tuple[IntVector, ...]
    span: Subspace

    @property
    def dim(self) -> int:
        return self.span.dim

    @cached_property
    def equations(self) -> tuple[IntVector, ...]:
        return tuple(self.span.equations())

    def contains(self, x: Sequence[int]) -> bool:
        if len(x) != self.ambient:
            raise ValueError("ambient rank mismatch")
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(a, x) >= 0 for a in self.facet_normals)

    def __contains__(self, x: Sequence[int]) -> bool:
        return self.contains(x)

    def contains_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`contains` over the rows of ``points``."""
        n = self.ambient
        eqs = np.array(self.equations, dtype=object).reshape(-1, n)
        ineqs = np.array(self.facet_normals, dtype=object).reshape(-1, n)
        return kernels.cone_mask(np.asarray(points), eqs, ineqs)

    def zero_set(self, x: Sequence[int]) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.facet_normals) if dot(a, x) == 0)


def _facets_and_rays(gens: list[IntVector], w: Subspace) -> tuple[list[IntVector], list[IntVector]]:
    d = w.dim
    if d == 0:
        return [], []
    basis = w.basis
    # a normal a = z . basis must satisfy a . g >= 0 for every generator g
    rows = [tuple(dot(b, g) for b in basis) for g in gens]
    zs = extreme_rays_of(rows, d)
    normals = sorted(
        {primitive([sum(z[k] * basis[k][i] for k in range(d)) for i in range(w.ambient)]) for z in zs}
    )
    rays = set()
    for g in gens:
        vanish = [a for a in normals if dot(a, g) == 0]
        if rank(vanish, w.ambient) == d - 1:
            rays.add(primitive(g))
    return normals, sorted(rays)


def cone_from_generators(gens: Iterable[Sequence[int]], ambient: int | None = None) -> Cone:
    """Cone generated by nonnegative integer vectors; zeros and repeats are dropped."""
    gens = [tuple(int(a) for a in g) for g in gens]
    if ambient is None:
        if not gens:
            raise ValueError("ambient rank needed for an empty generator list")
        ambient = len(gens[0])
    for g in gens:
        if len(g) != ambient:
            raise ValueError("generators must share the ambient rank")
        if any(a < 0 for a in g):
            raise ValueError("generators must be in the nonnegative orthant")
    clean = sorted({g for g in gens if any(g)})
    w = span(clean, ambient)
    normals, rays = _facets_and_rays(clean, w)
    return Cone(ambient, tuple(clean), tuple(rays), tuple(normals), w)


def orthant_section(w: Subspace) -> Cone:
    """The cone ``w`` intersected with the nonnegative orthant."""
    d = w.dim
    if d == 0:
        return cone_from_generators([], w.ambient)
    basis = w.basis
    rows = [tuple(b[i] for b in basis) for i in range(w.ambient)]
    zs = extreme_rays_of(rows, d)
    rays = [primitive([sum(z[k] * basis[k][i] for k in range(d)) for i in range(w.ambient)]) for z in zs]
    return cone_from_generators(rays, w.ambient)


@dataclass(frozen=True)
class Face:
    """A relatively open face of a cone, keyed by its vanishing facet normals."""

    id: int
    dim: int
    support: Subspace
    rays: tuple[IntVector, ...]
    vanishing: frozenset[int]
    parent: Cone = field(repr=False, compare=False)

    @cached_property
    def closed_face(self) -> Cone:
        return cone_from_generators(self.rays, self.parent.ambient)

    @property
    def sample_point(self) -> IntVector:
        if not self.rays:
            return (0,) * self.parent.ambient
        return tuple(sum(col) for col in zip(*self.rays))

    @property
    def is_apex(self) -> bool:
        return self.dim == 0

    def ri_contains(self, x: Sequence[int]) -> bool:
        """True iff ``x`` lies in the relative interior of this face."""
        return self.parent.contains(x) and self.parent.zero_set(x) == self.vanishing


def ri_contains(face: Face, x: Sequence[int]) -> bool:
    return face.ri_contains(x)


@dataclass(frozen=True)
class FaceDecomposition:
    cone: Cone
    faces: tuple[Face, ...]

    @cached_property
    def _by_zero_set(self) -> dict[frozenset[int], Face]:
        return {f.vanishing: f for f in self.faces}

    @property
    def apex(self) -> Face:
        return self.faces[0]

    @property
    def top(self) -> Face:
        return self.faces[-1]

    def classify(self, x: Sequence[int]) -> Face:
        if not self.cone.contains(x):
            raise ValueError("point outside cone")
        return self._by_zero_set[self.cone.zero_set(x)]

    def classify_many(self, points: np.ndarray) -> np.ndarray:
        """Face id for every row of ``points``; -1 for points outside the cone."""
        points = np.asarray(points)
        out = np.full(points.shape[0], -1, dtype=np.int64)
        if points.shape[0] == 0:
            return out
        inside = self.cone.contains_many(points)
        normals = np.array(self.cone.facet_normals, dtype=np.int64).reshape(-1, self.cone.ambient)
        codes = kernels.zero_patterns(points, normals)
        lookup = {sum(1 << i for i in f.vanishing): f.id for f in self.faces}
        for k in np.nonzero(inside)[0]:
            out[k] = lookup[int(codes[k])]
        return out


def face_decomposition(cone: Cone) -> FaceDecomposition:
    """All faces of ``cone``, sorted by dimension then canonical support basis."""
    rays = cone.extreme_rays
    nnormals = len(cone.facet_normals)
    vanish_on = [cone.zero_set(r) for r in rays]
    all_normals = frozenset(range(nnormals))

    def close(ray_idx: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
        v = all_normals
        for r in ray_idx:
            v = v & vanish_on[r]
        closed = frozenset(r for r in range(len(rays)) if v <= vanish_on[r])
        return closed, v

    seen: dict[frozenset[int], frozenset[int]] = {}
    todo = [close(frozenset())]
    while todo:
        rs, v = todo.pop()
        if rs in seen:
            continue
        seen[rs] = v
        for r in range(len(rays)):
            if r not in rs:
                nxt = close(rs | {r})
                if nxt[0] not in seen:
                    todo.append(nxt)
    raw = []
    for rs, v in seen.items():
        face_rays = tuple(rays[r] for r in sorted(rs))
        sup = span(face_rays, cone.ambient)
        raw.append((sup.dim, sup.basis, face_rays, v, sup))
    raw.sort(key=lambda t: (t[0], t[1]))
    faces = tuple(
        Face(i, dim, sup, face_rays, v, cone) for i, (dim, _, face_rays, v, sup) in enumerate(raw)
    )
    return FaceDecomposition(cone, faces)


def classify_point(decomp: FaceDecomposition, x: Sequence[int]) -> Face:
    return decomp.classify(x)
