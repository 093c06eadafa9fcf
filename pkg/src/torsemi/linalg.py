"""Exact integer and rational linear algebra.

Vectors are plain tuples of Python ints (arbitrary precision); matrices are
sequences of such rows. Nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
IntMatrix = list[list[int]]


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(k: int, v: Sequence[int]) -> IntVector:
    return tuple(k * a for a in v)


def is_zero(v: Sequence[int]) -> bool:
    return not any(v)


def content(v: Iterable[int]) -> int:
    g = 0
    for a in v:
        g = gcd(g, a)
    return g


def primitive(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its entries."""
    g = content(v)
    if g == 0:
        raise ValueError("no primitive form: zero vector")
    return tuple(a // g for a in v)


def _integral_row(row: Sequence[Fraction]) -> IntVector:
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    return primitive(ints) if any(ints) else tuple(ints)


def rref(rows: Sequence[Sequence[int | Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns nonzero rows and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Primitive integer basis of the rational null space {x : rows . x = 0}."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(_integral_row(x))
    return basis


@dataclass(frozen=True)
class Subspace:
    """A rational subspace of Q^n in canonical form.

    The basis is the reduced row echelon form with every row scaled to a
    primitive integer vector, so two equal subspaces compare equal.
    """

    ambient: int
    basis: tuple[IntVector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, a in enumerate(b) if a) for b in self.basis)

    def equations(self) -> list[IntVector]:
        """Integer rows spanning the orthogonal complement."""
        return nullspace(self.basis, self.ambient)

    def coordinates(self, v: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of ``v`` with respect to ``basis`` (v must lie in the span)."""
        return tuple(Fraction(v[p], b[p]) for b, p in zip(self.basis, self.pivots))

    def __contains__(self, v: Sequence[int]) -> bool:
        return in_span(v, self)


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def span(vectors: Iterable[Sequence[int]], ambient: int | None = None) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    if ambient is None:
        if not vectors:
            raise ValueError("ambient rank needed for an empty vector list")
        ambient = len(vectors[0])
    if any(len(v) != ambient for v in vectors):
        raise ValueError("vectors must share the ambient rank")
    if not vectors:
        return zero_subspace(ambient)
    red, _ = rref(vectors, ambient)
    return Subspace(ambient, tuple(_integral_row(r) for r in red))


def in_span(v: Sequence[int], w: Subspace) -> bool:
    if len(v) != w.ambient:
        raise ValueError("ambient rank mismatch")
    res = [Fraction(a) for a in v]
    for b, p in zip(w.basis, w.pivots):
        if res[p]:
            f = res[p] / b[p]
            res = [x - f * y for x, y in zip(res, b)]
    return not any(res)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ m``, ``U`` unimodular, ``H`` in echelon
    form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and zero rows last.
    """
    h = [list(map(int, r)) for r in m]
    if not h:
        raise ValueError("hnf needs a nonempty matrix")
    rows, cols = len(h), len(h[0])
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _ext_gcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant 1
            h[r], h[i] = (
                [x * s + y * t for s, t in zip(h[r], h[i])],
                [-q * s + p * t for s, t in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [x * s + y * t for s, t in zip(u[r], u[i])],
                [-q * s + p * t for s, t in zip(u[r], u[i])],
            )
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-s for s in h[r]]
            u[r] = [-s for s in u[r]]
        piv = h[r][c]
        for i in range(r):
            f = h[i][c] // piv
            if f:
                h[i] = [s - f * t for s, t in zip(h[i], h[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        r += 1
    return h, u


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Lattice basis of {x in Z^ncols : m . x = 0}, in Hermite normal form."""
    if not m:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    mt = [[row[j] for row in m] for j in range(ncols)]
    h, u = hnf(mt)
    ker = [tuple(u[i]) for i in range(ncols) if not any(h[i])]
    if not ker:
        return []
    hk, _ = hnf(ker)
    return [tuple(r) for r in hk if any(r)]


def lattice_intersection(w: Subspace) -> list[IntVector]:
    """Lattice basis of W intersected with Z^n."""
    if w.dim == 0:
        return []
    return integer_kernel(w.equations(), w.ambient)


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> IntVector | None:
    """One integer solution of ``a . x = b``, or None if there is none."""
    rows = len(a)
    if rows == 0:
        return None
    ncols = len(a[0])
    if ncols == 0:
        return () if not any(b) else None
    at = [[a[i][j] for i in range(rows)] for j in range(ncols)]
    h, u = hnf(at)
    residual = list(b)
    z = [0] * ncols
    for i, row in enumerate(h):
        p = next((c for c, x in enumerate(row) if x), None)
        if p is None:
            break
        q, rem = divmod(residual[p], row[p])
        if rem:
            return None
        z[i] = q
        residual = [s - q * t for s, t in zip(residual, row)]
    if any(residual):
        return None
    return tuple(sum(z[i] * u[i][j] for i in range(ncols)) for j in range(ncols))


def determinant(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    red = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if red[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            red[c], red[p] = red[p], red[c]
            det = -det
        det *= red[c][c]
        for i in range(c + 1, n):
            f = red[i][c] / red[c][c]
            if f:
                red[i] = [x - f * y for x, y in zip(red[i], red[c])]
    return int(det)
