"""Hot integer kernels over Cayley tables and packed 2x2 matrices.

Two interchangeable implementations live here: numba ``@njit`` kernels and
pure-numpy fallbacks.  Selection happens once at import time via the
``GROUPROOTS_KERNELS`` environment variable:

* unset      -- numba when importable, numpy otherwise
* ``numba``  -- force numba (ImportError if unavailable)
* ``numpy``  -- force the pure-numpy path

``benchmarks/bench_kernels.py`` times both paths on the same workloads.

Conventions: element ids are dense 0..n-1 with id 0 the identity; a Cayley
table is an (n, n) integer array with ``table[i, j] = i*j``; packed matrices
are (n, 4) arrays of field element indices in row-major entry order.
"""

import os

import numpy as np

__all__ = [
    "ACTIVE_BACKEND",
    "table_pow_all",
    "table_closure",
    "table_conj_labels",
    "table_centralizer_sizes",
    "table_orders",
    "mat2_mul_resolve",
    "mat2_mul_resolve_canon",
    "implementations",
]


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def _np_table_pow_all(table, r):
    """id -> id**r for every id at once, by binary powering."""
    n = table.shape[0]
    acc = np.zeros(n, dtype=np.int64)
    base = np.arange(n, dtype=np.int64)
    e = int(r)
    while e:
        if e & 1:
            acc = table[acc, base].astype(np.int64)
        e >>= 1
        if e:
            base = table[base, base].astype(np.int64)
    return acc


def _np_table_closure(table, seed):
    """Sorted ids of the subgroup generated by ``seed`` (identity included)."""
    n = table.shape[0]
    member = np.zeros(n, dtype=np.bool_)
    member[0] = True
    member[np.asarray(seed, dtype=np.int64)] = True
    cur = np.flatnonzero(member)
    while True:
        prods = np.unique(table[np.ix_(cur, cur)])
        fresh = prods[~member[prods]]
        if fresh.size == 0:
            return cur.astype(np.int64)
        member[fresh] = True
        cur = np.flatnonzero(member)


def _np_table_conj_labels(table, inv):
    """Least-id conjugacy class representative for every element."""
    n = table.shape[0]
    everyone = np.arange(n, dtype=np.int64)
    label = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        if label[x] >= 0:
            continue
        cls = table[table[inv, x], everyone]  # g^-1 * x * g over all g
        label[cls] = x
    return label


def _np_table_centralizer_sizes(table):
    """|C(a)| for every a; one boolean n*n comparison."""
    return (table == table.T).sum(axis=1).astype(np.int64)


def _np_table_orders(table):
    """Multiplicative order of every element."""
    n = table.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    orders[0] = 1
    cur = np.arange(n, dtype=np.int64)
    alive = np.flatnonzero(cur != 0)
    k = 1
    while alive.size:
        k += 1
        cur[alive] = table[cur[alive], alive]
        done = alive[cur[alive] == 0]
        orders[done] = k
        alive = alive[cur[alive] != 0]
    return orders


def _np_mat2_mul_resolve(mats, a_ids, b_ids, add_t, mul_t, q, sorted_keys, sorted_pos):
    """Bulk 2x2 matrix product with id resolution via sorted packed keys."""
    A = mats[a_ids]
    B = mats[b_ids]
    p0 = add_t[mul_t[A[:, 0], B[:, 0]], mul_t[A[:, 1], B[:, 2]]]
    p1 = add_t[mul_t[A[:, 0], B[:, 1]], mul_t[A[:, 1], B[:, 3]]]
    p2 = add_t[mul_t[A[:, 2], B[:, 0]], mul_t[A[:, 3], B[:, 2]]]
    p3 = add_t[mul_t[A[:, 2], B[:, 1]], mul_t[A[:, 3], B[:, 3]]]
    keys = ((p0 * q + p1) * q + p2) * q + p3
    return sorted_pos[np.searchsorted(sorted_keys, keys)]


def _np_mat2_mul_resolve_canon(mats, a_ids, b_ids, add_t, mul_t, neg_t, q,
                               sorted_keys, sorted_pos):
    """Like mat2_mul_resolve but products are sign-canonicalized first.

    Canonical representative of {M, -M}: scanning entries in order, the
    first nonzero entry must have index <= the index of its negation.
    """
    A = mats[a_ids]
    B = mats[b_ids]
    p0 = add_t[mul_t[A[:, 0], B[:, 0]], mul_t[A[:, 1], B[:, 2]]]
    p1 = add_t[mul_t[A[:, 0], B[:, 1]], mul_t[A[:, 1], B[:, 3]]]
    p2 = add_t[mul_t[A[:, 2], B[:, 0]], mul_t[A[:, 3], B[:, 2]]]
    p3 = add_t[mul_t[A[:, 2], B[:, 1]], mul_t[A[:, 3], B[:, 3]]]
    first = np.where(p0 != 0, p0, np.where(p1 != 0, p1, np.where(p2 != 0, p2, p3)))
    flip = neg_t[first] < first
    p0 = np.where(flip, neg_t[p0], p0)
    p1 = np.where(flip, neg_t[p1], p1)
    p2 = np.where(flip, neg_t[p2], p2)
    p3 = np.where(flip, neg_t[p3], p3)
    keys = ((p0 * q + p1) * q + p2) * q + p3
    return sorted_pos[np.searchsorted(sorted_keys, keys)]


_NUMPY_IMPL = {
    "table_pow_all": _np_table_pow_all,
    "table_closure": _np_table_closure,
    "table_conj_labels": _np_table_conj_labels,
    "table_centralizer_sizes": _np_table_centralizer_sizes,
    "table_orders": _np_table_orders,
    "mat2_mul_resolve": _np_mat2_mul_resolve,
    "mat2_mul_resolve_canon": _np_mat2_mul_resolve_canon,
}


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

def _build_numba_impl():
    from numba import njit

    @njit(cache=True)
    def table_pow_all(table, r):
        n = table.shape[0]
        out = np.empty(n, dtype=np.int64)
        for i in range(n):
            acc = 0
            base = i
            e = r
            while e:
                if e & 1:
                    acc = table[acc, base]
                e >>= 1
                if e:
                    base = table[base, base]
            out[i] = acc
        return out

    @njit(cache=True)
    def table_closure(table, seed):
        n = table.shape[0]
        member = np.zeros(n, dtype=np.bool_)
        order = np.empty(n, dtype=np.int64)
        member[0] = True
        order[0] = 0
        size = 1
        for s in seed:
            if not member[s]:
                member[s] = True
                order[size] = s
                size += 1
        i = 0
        while i < size:
            a = order[i]
            j = 0
            while j < size:
                b = order[j]
                c = table[a, b]
                if not member[c]:
                    member[c] = True
                    order[size] = c
                    size += 1
                c = table[b, a]
                if not member[c]:
                    member[c] = True
                    order[size] = c
                    size += 1
                j += 1
            i += 1
        out = order[:size].copy()
        out.sort()
        return out

    @njit(cache=True)
    def table_conj_labels(table, inv):
        n = table.shape[0]
        label = np.full(n, -1, dtype=np.int64)
        for x in range(n):
            if label[x] >= 0:
                continue
            for g in range(n):
                label[table[table[inv[g], x], g]] = x
        return label

    @njit(cache=True)
    def table_centralizer_sizes(table):
        n = table.shape[0]
        out = np.zeros(n, dtype=np.int64)
        for a in range(n):
            c = 0
            for b in range(n):
                if table[a, b] == table[b, a]:
                    c += 1
            out[a] = c
        return out

    @njit(cache=True)
    def table_orders(table):
        n = table.shape[0]
        out = np.empty(n, dtype=np.int64)
        for i in range(n):
            k = 1
            cur = i
            while cur != 0:
                cur = table[cur, i]
                k += 1
            out[i] = k
        return out

    @njit(cache=True)
    def mat2_mul_resolve(mats, a_ids, b_ids, add_t, mul_t, q, sorted_keys, sorted_pos):
        m = a_ids.shape[0]
        out = np.empty(m, dtype=np.int64)
        for i in range(m):
            a = a_ids[i]
            b = b_ids[i]
            a0, a1, a2, a3 = mats[a, 0], mats[a, 1], mats[a, 2], mats[a, 3]
            b0, b1, b2, b3 = mats[b, 0], mats[b, 1], mats[b, 2], mats[b, 3]
            p0 = add_t[mul_t[a0, b0], mul_t[a1, b2]]
            p1 = add_t[mul_t[a0, b1], mul_t[a1, b3]]
            p2 = add_t[mul_t[a2, b0], mul_t[a3, b2]]
            p3 = add_t[mul_t[a2, b1], mul_t[a3, b3]]
            key = ((p0 * q + p1) * q + p2) * q + p3
            lo, hi = 0, sorted_keys.shape[0]
            while lo < hi:
                mid = (lo + hi) // 2
                if sorted_keys[mid] < key:
                    lo = mid + 1
                else:
                    hi = mid
            out[i] = sorted_pos[lo]
        return out

    @njit(cache=True)
    def mat2_mul_resolve_canon(mats, a_ids, b_ids, add_t, mul_t, neg_t, q,
                               sorted_keys, sorted_pos):
        m = a_ids.shape[0]
        out = np.empty(m, dtype=np.int64)
        for i in range(m):
            a = a_ids[i]
            b = b_ids[i]
            a0, a1, a2, a3 = mats[a, 0], mats[a, 1], mats[a, 2], mats[a, 3]
            b0, b1, b2, b3 = mats[b, 0], mats[b, 1], mats[b, 2], mats[b, 3]
            p0 = add_t[mul_t[a0, b0], mul_t[a1, b2]]
            p1 = add_t[mul_t[a0, b1], mul_t[a1, b3]]
            p2 = add_t[mul_t[a2, b0], mul_t[a3, b2]]
            p3 = add_t[mul_t[a2, b1], mul_t[a3, b3]]
            first = p0
            if first == 0:
                first = p1
            if first == 0:
                first = p2
            if first == 0:
                first = p3
            if neg_t[first] < first:
                p0, p1, p2, p3 = neg_t[p0], neg_t[p1], neg_t[p2], neg_t[p3]
            key = ((p0 * q + p1) * q + p2) * q + p3
            lo, hi = 0, sorted_keys.shape[0]
            while lo < hi:
                mid = (lo + hi) // 2
                if sorted_keys[mid] < key:
                    lo = mid + 1
                else:
                    hi = mid
            out[i] = sorted_pos[lo]
        return out

    return {
        "table_pow_all": table_pow_all,
        "table_closure": table_closure,
        "table_conj_labels": table_conj_labels,
        "table_centralizer_sizes": table_centralizer_sizes,
        "table_orders": table_orders,
        "mat2_mul_resolve": mat2_mul_resolve,
        "mat2_mul_resolve_canon": mat2_mul_resolve_canon,
    }


def _select_backend():
    flag = os.environ.get("GROUPROOTS_KERNELS", "").strip().lower()
    if flag not in ("", "numba", "numpy"):
        raise ValueError(
            f"GROUPROOTS_KERNELS must be 'numba' or 'numpy', got {flag!r}"
        )
    if flag == "numpy":
        return "numpy", _NUMPY_IMPL
    try:
        impl = _build_numba_impl()
        return "numba", impl
    except ImportError:
        if flag == "numba":
            raise
        return "numpy", _NUMPY_IMPL


ACTIVE_BACKEND, _IMPL = _select_backend()

table_pow_all = _IMPL["table_pow_all"]
table_closure = _IMPL["table_closure"]
table_conj_labels = _IMPL["table_conj_labels"]
table_centralizer_sizes = _IMPL["table_centralizer_sizes"]
table_orders = _IMPL["table_orders"]
mat2_mul_resolve = _IMPL["mat2_mul_resolve"]
mat2_mul_resolve_canon = _IMPL["mat2_mul_resolve_canon"]


def implementations():
    """Both kernel sets, for side-by-side benchmarking.

    Returns {"numpy": {...}} plus {"numba": {...}} when numba imports.
    """
    out = {"numpy": dict(_NUMPY_IMPL)}
    try:
        out["numba"] = _build_numba_impl()
    except ImportError:
        pass
    return out
