"""Hot numeric kernels with a numba path and a pure-numpy path.

Every public function here dispatches on :func:`torsemi._accel.numba_enabled`.
Both paths return identical results; ``tests/test_kernels.py`` checks that and
``benchmarks/bench_kernels.py`` times them against each other.

Lattice kernels work on int64 arrays. Callers go through :func:`as_int64`,
which refuses values whose dot products could overflow; in that case the
numpy path runs on ``object`` arrays instead, so results stay exact.
"""

from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

_SAFE = 1 << 62


def fits_int64(*arrays: np.ndarray, terms: int = 1) -> bool:
    """True when products of entries from any two arrays, summed ``terms`` times, fit in int64."""
    peak = 1
    for a in arrays:
        if a.size:
            peak *= max(1, int(np.max(np.abs(a.astype(object)))))
    return peak * max(terms, 1) < _SAFE


def as_int64(*rows) -> tuple[np.ndarray, ...]:
    return tuple(np.asarray(r, dtype=object).astype(np.int64) if len(r) else np.zeros((0,), np.int64) for r in rows)


# ---------------------------------------------------------------------------
# lattice boxes and cones


@njit(cache=True)
def _box_points_nb(upper):
    n = upper.shape[0]
    total = 1
    for i in range(n):
        total *= upper[i] + 1
    out = np.zeros((total, n), dtype=np.int64)
    cur = np.zeros(n, dtype=np.int64)
    for k in range(total):
        for i in range(n):
            out[k, i] = cur[i]
        i = n - 1
        while i >= 0:
            cur[i] += 1
            if cur[i] <= upper[i]:
                break
            cur[i] = 0
            i -= 1
    return out


def _box_points_np(upper):
    shape = tuple(int(u) + 1 for u in upper)
    return np.indices(shape, dtype=np.int64).reshape(len(shape), -1).T.copy()


def box_points(upper) -> np.ndarray:
    """All lattice points of the box ``[0, upper]`` in lexicographic order."""
    upper = np.asarray(upper, dtype=np.int64)
    if _accel.numba_enabled():
        return _box_points_nb(upper)
    return _box_points_np(upper)


@njit(cache=True)
def _cone_mask_nb(points, eqs, ineqs):
    npts = points.shape[0]
    n = points.shape[1]
    out = np.ones(npts, dtype=np.bool_)
    for k in range(npts):
        for r in range(eqs.shape[0]):
            s = 0
            for i in range(n):
                s += eqs[r, i] * points[k, i]
            if s != 0:
                out[k] = False
                break
        if not out[k]:
            continue
        for r in range(ineqs.shape[0]):
            s = 0
            for i in range(n):
                s += ineqs[r, i] * points[k, i]
            if s < 0:
                out[k] = False
                break
    return out


def _cone_mask_np(points, eqs, ineqs):
    ok = np.ones(points.shape[0], dtype=bool)
    if eqs.shape[0]:
        ok &= ~(points @ eqs.T).astype(bool).any(axis=1)
    if ineqs.shape[0]:
        ok &= ((points @ ineqs.T) >= 0).all(axis=1)
    return ok


def cone_mask(points: np.ndarray, eqs: np.ndarray, ineqs: np.ndarray) -> np.ndarray:
    """Mask of points with ``eqs . x == 0`` and ``ineqs . x >= 0``."""
    n = points.shape[1]
    eqs = np.asarray(eqs).reshape(-1, n)
    ineqs = np.asarray(ineqs).reshape(-1, n)
    if fits_int64(points, np.concatenate([eqs, ineqs]).reshape(-1, n), terms=n):
        p, e, q = (np.asarray(a, dtype=np.int64) for a in (points, eqs, ineqs))
        if _accel.numba_enabled():
            return _cone_mask_nb(p, e, q)
        return _cone_mask_np(p, e, q)
    return _cone_mask_np(points.astype(object), eqs.astype(object), ineqs.astype(object))


@njit(cache=True)
def _zero_patterns_nb(points, normals):
    npts = points.shape[0]
    n = points.shape[1]
    out = np.zeros(npts, dtype=np.int64)
    for k in range(npts):
        code = 0
        for r in range(normals.shape[0]):
            s = 0
            for i in range(n):
                s += normals[r, i] * points[k, i]
            if s < 0:
                code = -1
                break
            if s == 0:
                code |= np.int64(1) << r
        out[k] = code
    return out


def _zero_patterns_np(points, normals):
    vals = points @ normals.T
    bits = np.array([1 << r for r in range(normals.shape[0])], dtype=np.int64)
    codes = ((vals == 0).astype(np.int64) * bits).sum(axis=1).astype(np.int64)
    codes[(vals < 0).any(axis=1)] = -1
    return codes


def zero_patterns(points: np.ndarray, normals: np.ndarray) -> np.ndarray:
    """Bitmask of vanishing normals per point, or -1 where some normal is negative."""
    n = points.shape[1]
    normals = np.asarray(normals).reshape(-1, n)
    if normals.shape[0] > 62:
        raise ValueError("zero_patterns supports at most 62 normals")
    if not fits_int64(points, normals, terms=n):
        raise OverflowError("coordinates too large for the pattern kernel")
    p = np.asarray(points, dtype=np.int64)
    q = np.asarray(normals, dtype=np.int64)
    if _accel.numba_enabled():
        return _zero_patterns_nb(p, q)
    return _zero_patterns_np(p, q)


# ---------------------------------------------------------------------------
# monoid membership by dynamic programming over a box

UNREACHED = -2
ORIGIN = -1


@njit(cache=True)
def _reach_nb(gens, target):
    n = target.shape[0]
    total = 1
    for i in range(n):
        total *= target[i] + 1
    strides = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * (target[i + 1] + 1)
    offs = np.zeros(gens.shape[0], dtype=np.int64)
    for j in range(gens.shape[0]):
        for i in range(n):
            offs[j] += gens[j, i] * strides[i]
    pred = np.full(total, -2, dtype=np.int64)
    pred[0] = -1
    cur = np.zeros(n, dtype=np.int64)
    for k in range(total):
        if k > 0:
            for j in range(gens.shape[0]):
                ok = True
                for i in range(n):
                    if cur[i] < gens[j, i]:
                        ok = False
                        break
                if ok and pred[k - offs[j]] != -2:
                    pred[k] = j
                    break
        i = n - 1
        while i >= 0:
            cur[i] += 1
            if cur[i] <= target[i]:
                break
            cur[i] = 0
            i -= 1
    return pred


def _reach_np(gens, target):
    shape = tuple(int(t) + 1 for t in target)
    pred = np.full(shape, UNREACHED, dtype=np.int64)
    pred[(0,) * len(shape)] = ORIGIN
    frontier = np.zeros(shape, dtype=bool)
    frontier[(0,) * len(shape)] = True
    while frontier.any():
        new = np.zeros(shape, dtype=bool)
        for j, g in enumerate(gens):
            if any(int(gi) > int(ti) for gi, ti in zip(g, target)):
                continue
            src = tuple(slice(0, s - int(gi)) for s, gi in zip(shape, g))
            dst = tuple(slice(int(gi), s) for s, gi in zip(shape, g))
            hit = frontier[src] & (pred[dst] == UNREACHED)
            view = pred[dst]
            # lowest generator index wins, matching the sequential scan
            view[hit] = j
            new[dst] |= hit
        frontier = new
    return pred.reshape(-1)


def reach_table(gens: np.ndarray, target) -> np.ndarray:
    """Predecessor table over the box ``[0, target]`` (flattened, C order).

    Entry ``j >= 0`` means the point is reachable and ``point - gens[j]`` is
    reachable; ``ORIGIN`` marks the zero vector, ``UNREACHED`` the rest.
    """
    target = np.asarray(target, dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, target.shape[0])
    if _accel.numba_enabled():
        return _reach_nb(gens, target)
    return _reach_np(gens, target)


@njit(cache=True)
def _irreducible_nb(points, ineqs):
    npts = points.shape[0]
    n = points.shape[1]
    keep = np.zeros(npts, dtype=np.int64)
    nkeep = 0
    d = np.zeros(n, dtype=np.int64)
    for k in range(npts):
        nz = False
        for i in range(n):
            if points[k, i] != 0:
                nz = True
                break
        if not nz:
            continue
        reducible = False
        for t in range(nkeep):
            h = keep[t]
            ok = True
            for i in range(n):
                d[i] = points[k, i] - points[h, i]
                if d[i] < 0:
                    ok = False
                    break
            if not ok:
                continue
            for r in range(ineqs.shape[0]):
                s = 0
                for i in range(n):
                    s += ineqs[r, i] * d[i]
                if s < 0:
                    ok = False
                    break
            if ok:
                reducible = True
                break
        if not reducible:
            keep[nkeep] = k
            nkeep += 1
    return keep[:nkeep]


def _irreducible_np(points, ineqs):
    keep: list[int] = []
    for k in range(points.shape[0]):
        x = points[k]
        if not x.any():
            continue
        if keep:
            d = x[None, :] - points[keep]
            ok = (d >= 0).all(axis=1)
            if ineqs.shape[0]:
                ok &= ((d @ ineqs.T) >= 0).all(axis=1)
            if ok.any():
                continue
        keep.append(k)
    return np.array(keep, dtype=np.int64)


def irreducible_indices(points: np.ndarray, ineqs: np.ndarray) -> np.ndarray:
    """Indices of irreducible points of a saturated cone monoid.

    ``points`` must be all lattice points of the monoid inside some box,
    sorted by total degree; a point is dropped when subtracting an earlier
    kept point leaves a point of the cone. Equations are not needed: the
    difference of two points of the span stays in the span.
    """
    n = points.shape[1]
    ineqs = np.asarray(ineqs).reshape(-1, n)
    if fits_int64(points, ineqs, terms=n):
        p = np.asarray(points, dtype=np.int64)
        q = np.asarray(ineqs, dtype=np.int64)
        if _accel.numba_enabled():
            return _irreducible_nb(p, q)
        return _irreducible_np(p, q)
    return _irreducible_np(points.astype(object), ineqs.astype(object))


# ---------------------------------------------------------------------------
# finite semiring tables

AXIOMS = ("add_commutative", "add_associative", "mul_commutative", "mul_associative", "distributive")


@njit(cache=True)
def _table_violations_nb(add, mul, limit):
    m = add.shape[0]
    out = np.zeros((limit, 4), dtype=np.int64)
    k = 0
    for x in range(m):
        for y in range(m):
            if add[x, y] != add[y, x] and k < limit:
                out[k, 0] = 0
                out[k, 1] = x
                out[k, 2] = y
                k += 1
            if mul[x, y] != mul[y, x] and k < limit:
                out[k, 0] = 2
                out[k, 1] = x
                out[k, 2] = y
                k += 1
            for z in range(m):
                if k >= limit:
                    return out[:k]
                if add[add[x, y], z] != add[x, add[y, z]]:
                    out[k, 0] = 1
                    out[k, 1] = x
                    out[k, 2] = y
                    out[k, 3] = z
                    k += 1
                if k < limit and mul[mul[x, y], z] != mul[x, mul[y, z]]:
                    out[k, 0] = 3
                    out[k, 1] = x
                    out[k, 2] = y
                    out[k, 3] = z
                    k += 1
                if k < limit and mul[x, add[y, z]] != add[mul[x, y], mul[x, z]]:
                    out[k, 0] = 4
                    out[k, 1] = x
                    out[k, 2] = y
                    out[k, 3] = z
                    k += 1
    return out[:k]


def _table_violations_np(add, mul, limit):
    m = add.shape[0]
    x, y, z = np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij")
    rows = []
    for code, bad in (
        (0, (add != add.T)[:, :, None] & (z == 0)),
        (1, add[add[x, y], z] != add[x, add[y, z]]),
        (2, (mul != mul.T)[:, :, None] & (z == 0)),
        (3, mul[mul[x, y], z] != mul[x, mul[y, z]]),
        (4, mul[x, add[y, z]] != add[mul[x, y], mul[x, z]]),
    ):
        for a, b, c in np.argwhere(bad):
            rows.append((code, a, b, 0 if code in (0, 2) else c))
    rows.sort(key=lambda r: (r[1], r[2], r[3], r[0]))
    out = np.array(rows[:limit], dtype=np.int64).reshape(-1, 4)
    return out


def table_violations(add: np.ndarray, mul: np.ndarray, limit: int = 1000) -> np.ndarray:
    """Rows ``(axiom_code, x, y, z)`` of violated semiring axioms (codes index ``AXIOMS``)."""
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    if _accel.numba_enabled():
        return _table_violations_nb(add, mul, limit)
    return _table_violations_np(add, mul, limit)


@njit(cache=True)
def _prime_multiples_nb(add, primes):
    m = add.shape[0]
    out = np.zeros((primes.shape[0], m), dtype=np.bool_)
    for pi in range(primes.shape[0]):
        for c in range(m):
            e = primes[pi]
            acc = -1
            base = c
            while e > 0:
                if e & 1:
                    acc = base if acc < 0 else add[acc, base]
                base = add[base, base]
                e >>= 1
            out[pi, acc] = True
    return out


def _prime_multiples_np(add, primes):
    m = add.shape[0]
    e = primes.copy()
    acc = np.full((primes.shape[0], m), -1, dtype=np.int64)
    base = np.tile(np.arange(m, dtype=np.int64), (primes.shape[0], 1))
    while (e > 0).any():
        bit = (e & 1).astype(bool)[:, None] & np.ones((1, m), dtype=bool)
        fresh = bit & (acc < 0)
        both = bit & (acc >= 0)
        acc = np.where(fresh, base, acc)
        acc = np.where(both, add[np.maximum(acc, 0), base], acc)
        base = add[base, base]
        e = e >> 1
    out = np.zeros((primes.shape[0], m), dtype=bool)
    rows = np.repeat(np.arange(primes.shape[0]), m)
    out[rows, acc.reshape(-1)] = True
    return out


def prime_multiples(add: np.ndarray, primes) -> np.ndarray:
    """``out[i, a]`` is True iff ``a = p_i * c`` for some element ``c``.

    Multiples are computed by double-and-add on the addition table, without
    using any index/period information.
    """
    add = np.asarray(add, dtype=np.int64)
    primes = np.asarray(primes, dtype=np.int64)
    if _accel.numba_enabled():
        return _prime_multiples_nb(add, primes)
    return _prime_multiples_np(add, primes)


@njit(cache=True)
def _difference_relation_nb(add):
    m = add.shape[0]
    rel = np.zeros((m * m, m * m), dtype=np.bool_)
    for x in range(m):
        for y in range(m):
            for x2 in range(m):
                for y2 in range(m):
                    l0 = add[x, y2]
                    r0 = add[x2, y]
                    for t in range(m):
                        if add[l0, t] == add[r0, t]:
                            rel[x * m + y, x2 * m + y2] = True
                            break
    return rel


def _difference_relation_np(add):
    m = add.shape[0]
    # plus_t[u, t] = u + t; left[x, y2] = x + y2
    left = add
    lt = add[left]  # (x, y2, t)
    # rel[(x,y),(x2,y2)] = any_t lt[x, y2, t] == lt[x2, y, t]
    a = lt[:, None, None, :, :]  # x, -, -, y2, t
    a = np.broadcast_to(lt[:, None, None, :, :], (m, m, m, m, m))
    b = np.transpose(lt, (1, 0, 2))  # (y, x2, t) -> lt[x2, y, t]
    b = np.broadcast_to(b[None, :, :, None, :], (m, m, m, m, m))
    rel = (a == b).any(axis=-1)  # indices x, y, x2, y2
    return rel.reshape(m * m, m * m)


def difference_relation(add: np.ndarray) -> np.ndarray:
    """Relation on pairs: ``(x,y) ~ (x2,y2)`` iff ``x+y2+t == x2+y+t`` for some t."""
    add = np.asarray(add, dtype=np.int64)
    if _accel.numba_enabled():
        return _difference_relation_nb(add)
    return _difference_relation_np(add)


# ---------------------------------------------------------------------------
# exhaustive table enumeration


@njit(cache=True)
def _comm_semigroups_nb(m):
    npos = m * (m + 1) // 2
    total = 1
    for _ in range(npos):
        total *= m
    found = np.zeros((total, m, m), dtype=np.int64)
    nfound = 0
    t = np.zeros((m, m), dtype=np.int64)
    for code in range(total):
        c = code
        for i in range(m):
            for j in range(i, m):
                v = c % m
                c //= m
                t[i, j] = v
                t[j, i] = v
        ok = True
        for x in range(m):
            for y in range(m):
                for z in range(m):
                    if t[t[x, y], z] != t[x, t[y, z]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            found[nfound] = t
            nfound += 1
    return found[:nfound].copy()


def _comm_semigroups_np(m):
    iu = np.triu_indices(m)
    npos = len(iu[0])
    total = m**npos
    out = []
    chunk = 1 << 15
    x, y, z = np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij")
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        t = np.zeros((len(codes), m, m), dtype=np.int64)
        c = codes.copy()
        for k in range(npos):
            v = c % m
            c //= m
            t[:, iu[0][k], iu[1][k]] = v
            t[:, iu[1][k], iu[0][k]] = v
        k = np.arange(len(codes))[:, None, None, None]
        lhs = t[k, t[k, x, y], z]
        rhs = t[k, x, t[k, y, z]]
        ok = (lhs == rhs).reshape(len(codes), -1).all(axis=1)
        out.append(t[ok])
    return np.concatenate(out) if out else np.zeros((0, m, m), dtype=np.int64)


def commutative_semigroups(m: int) -> np.ndarray:
    """All commutative associative operation tables on ``{0..m-1}``, in code order."""
    if _accel.numba_enabled():
        return _comm_semigroups_nb(m)
    return _comm_semigroups_np(m)


@njit(cache=True)
def _distributive_pairs_nb(adds, muls):
    na = adds.shape[0]
    nm = muls.shape[0]
    m = adds.shape[1]
    out = np.zeros((na * nm, 2), dtype=np.int64)
    k = 0
    for i in range(na):
        a = adds[i]
        for j in range(nm):
            u = muls[j]
            ok = True
            for x in range(m):
                for y in range(m):
                    for z in range(y, m):
                        if u[x, a[y, z]] != a[u[x, y], u[x, z]]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                out[k, 0] = i
                out[k, 1] = j
                k += 1
    return out[:k].copy()


def _distributive_pairs_np(adds, muls):
    m = adds.shape[1]
    x, y, z = np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij")
    j = np.arange(muls.shape[0])[:, None, None, None]
    res = []
    for i in range(adds.shape[0]):
        a = adds[i]
        lhs = muls[j, x, a[y, z]]
        rhs = a[muls[j, x, y], muls[j, x, z]]
        ok = (lhs == rhs).reshape(muls.shape[0], -1).all(axis=1)
        for jj in np.nonzero(ok)[0]:
            res.append((i, jj))
    return np.array(res, dtype=np.int64).reshape(-1, 2)


def distributive_pairs(adds: np.ndarray, muls: np.ndarray) -> np.ndarray:
    """Index pairs ``(i, j)`` such that ``muls[j]`` distributes over ``adds[i]``."""
    adds = np.asarray(adds, dtype=np.int64)
    muls = np.asarray(muls, dtype=np.int64)
    if _accel.numba_enabled():
        return _distributive_pairs_nb(adds, muls)
    return _distributive_pairs_np(adds, muls)


# ---------------------------------------------------------------------------
# congruence enumeration: one deduction sweep over partial tables

MERGE, DEFINE_ADD, DEFINE_MUL = 0, 1, 2


@njit(cache=True)
def _deductions_nb(add, mul, limit):
    n = add.shape[0]
    out = np.zeros((limit, 4), dtype=np.int64)
    k = 0
    for a in range(n):
        for b in range(n):
            ab = add[a, b]
            mab = mul[a, b]
            for c in range(n):
                if k + 2 >= limit:
                    return out[:k]
                bc = add[b, c]
                if ab >= 0 and bc >= 0:
                    lv = add[ab, c]
                    rv = add[a, bc]
                    if lv >= 0 and rv >= 0:
                        if lv != rv:
                            out[k, 0] = 0
                            out[k, 1] = lv
                            out[k, 2] = rv
                            k += 1
                    elif lv >= 0:
                        out[k, 0] = 1
                        out[k, 1] = a
                        out[k, 2] = bc
                        out[k, 3] = lv
                        add[a, bc] = lv
                        add[bc, a] = lv
                        k += 1
                    elif rv >= 0:
                        out[k, 0] = 1
                        out[k, 1] = ab
                        out[k, 2] = c
                        out[k, 3] = rv
                        add[ab, c] = rv
                        add[c, ab] = rv
                        k += 1
                mbc = mul[b, c]
                if mab >= 0 and mbc >= 0:
                    lv = mul[mab, c]
                    rv = mul[a, mbc]
                    if lv >= 0 and rv >= 0:
                        if lv != rv:
                            out[k, 0] = 0
                            out[k, 1] = lv
                            out[k, 2] = rv
                            k += 1
                    elif lv >= 0:
                        out[k, 0] = 2
                        out[k, 1] = a
                        out[k, 2] = mbc
                        out[k, 3] = lv
                        mul[a, mbc] = lv
                        mul[mbc, a] = lv
                        k += 1
                    elif rv >= 0:
                        out[k, 0] = 2
                        out[k, 1] = mab
                        out[k, 2] = c
                        out[k, 3] = rv
                        mul[mab, c] = rv
                        mul[c, mab] = rv
                        k += 1
                mac = mul[a, c]
                if bc >= 0 and mab >= 0 and mac >= 0:
                    lv = mul[a, bc]
                    rv = add[mab, mac]
                    if lv >= 0 and rv >= 0:
                        if lv != rv:
                            out[k, 0] = 0
                            out[k, 1] = lv
                            out[k, 2] = rv
                            k += 1
                    elif lv >= 0:
                        out[k, 0] = 1
                        out[k, 1] = mab
                        out[k, 2] = mac
                        out[k, 3] = lv
                        add[mab, mac] = lv
                        add[mac, mab] = lv
                        k += 1
                    elif rv >= 0:
                        out[k, 0] = 2
                        out[k, 1] = a
                        out[k, 2] = bc
                        out[k, 3] = rv
                        mul[a, bc] = rv
                        mul[bc, a] = rv
                        k += 1
    return out[:k]


def _deductions_np(add, mul, limit):
    n = add.shape[0]
    events: list[tuple[int, int, int, int]] = []
    b_idx, c_idx = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")

    def settle(lv, rv, mask, kind_l, l_keys, kind_r, r_keys):
        # lv / rv: candidate values; l_keys / r_keys: table cells to define
        both = mask & (lv >= 0) & (rv >= 0) & (lv != rv)
        for i, j in np.argwhere(both):
            events.append((MERGE, int(lv[i, j]), int(rv[i, j]), 0))
        only_l = mask & (lv >= 0) & (rv < 0)
        for i, j in np.argwhere(only_l):
            events.append((kind_r, int(r_keys[0][i, j]), int(r_keys[1][i, j]), int(lv[i, j])))
        only_r = mask & (rv >= 0) & (lv < 0)
        for i, j in np.argwhere(only_r):
            events.append((kind_l, int(l_keys[0][i, j]), int(l_keys[1][i, j]), int(rv[i, j])))

    def look(table, i, j):
        ok = (i >= 0) & (j >= 0)
        return np.where(ok, table[np.maximum(i, 0), np.maximum(j, 0)], -1)

    for a in range(n):
        ab = np.broadcast_to(add[a][:, None], (n, n))
        bc = add
        mask = (ab >= 0) & (bc >= 0)
        lv = look(add, ab, c_idx)
        rv = look(add, np.full_like(bc, a), bc)
        settle(lv, rv, mask, DEFINE_ADD, (ab, c_idx), DEFINE_ADD, (np.full_like(bc, a), bc))
        mab = np.broadcast_to(mul[a][:, None], (n, n))
        mbc = mul
        mask = (mab >= 0) & (mbc >= 0)
        lv = look(mul, mab, c_idx)
        rv = look(mul, np.full_like(mbc, a), mbc)
        settle(lv, rv, mask, DEFINE_MUL, (mab, c_idx), DEFINE_MUL, (np.full_like(mbc, a), mbc))
        mac = np.broadcast_to(mul[a][None, :], (n, n))
        mask = (bc >= 0) & (mab >= 0) & (mac >= 0)
        lv = look(mul, np.full_like(bc, a), bc)
        rv = look(add, mab, mac)
        settle(lv, rv, mask, DEFINE_MUL, (np.full_like(bc, a), bc), DEFINE_ADD, (mab, mac))
        if len(events) >= limit:
            break
    return np.array(events[:limit], dtype=np.int64).reshape(-1, 4)


def deductions(add: np.ndarray, mul: np.ndarray, limit: int = 20000) -> np.ndarray:
    """Consequences of associativity and distributivity on partial tables.

    ``add`` / ``mul`` are symmetric with -1 for undefined cells. Returns rows
    ``(MERGE, u, v, 0)`` for classes forced equal and ``(DEFINE_*, i, j, v)``
    for cells whose value is forced. The numba path updates its copies of the
    tables as it goes, so it can report more in one sweep; either way the
    caller repeats sweeps until none are reported.
    """
    add = np.array(add, dtype=np.int64, copy=True)
    mul = np.array(mul, dtype=np.int64, copy=True)
    if _accel.numba_enabled():
        return _deductions_nb(add, mul, limit)
    return _deductions_np(add, mul, limit)
