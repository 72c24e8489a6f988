"""SL(2,q), PSL(2,q), and GL(2,q) over small finite fields.

Matrices are packed as rows of four field-element indices; multiplication
gathers through the field's operation tables and resolves product rows back
to dense ids via sorted packed keys (see kernels).  PSL(2,q) elements are
canonical representatives of {M, -M}: scanning entries in order, the first
nonzero entry must have index <= the index of its negation.

The module also measures the data behind the closed-form value of the
r-th root probability of PSL(2,q): the distinguished unipotent, split, and
Singer-type class representatives with their centralizer orders, and an
exhaustive (q, r) scan comparing the closed form against enumeration.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import CapExceeded, SearchFailed
from .fields import Field, field_new, primitive_element
from .groups import Group, _KeyResolver, _materialize_if_small
from .roots import Probability, prob_r
from .util import is_prime

MAX_Q = 61  # |PSL(2,61)| = 113460; full sweeps stay interactive


class Mat2:
    """A 2x2 matrix over a Field, stored as four element indices."""

    __slots__ = ("field", "e")

    def __init__(self, field, entries):
        self.field = field
        self.e = tuple(int(x) for x in entries)
        if len(self.e) != 4 or not all(0 <= x < field.q for x in self.e):
            raise ValueError(f"bad matrix entries {entries} for GF({field.q})")

    @classmethod
    def from_elements(cls, a11, a12, a21, a22):
        fld = a11.field
        return cls(fld, (a11.index, a12.index, a21.index, a22.index))

    def identity_like(self):
        return Mat2(self.field, (1, 0, 0, 1))

    def key(self):
        return self.e

    def det_index(self):
        f = self.field
        a, b, c, d = self.e
        return int(f.add_t[f.mul_t[a, d], f.neg_t[f.mul_t[b, c]]])

    def __mul__(self, other):
        f = self.field
        if other.field is not f:
            raise ValueError("matrices over different fields")
        a0, a1, a2, a3 = self.e
        b0, b1, b2, b3 = other.e
        mul, add = f.mul_t, f.add_t
        return Mat2(
            f,
            (
                add[mul[a0, b0], mul[a1, b2]],
                add[mul[a0, b1], mul[a1, b3]],
                add[mul[a2, b0], mul[a3, b2]],
                add[mul[a2, b1], mul[a3, b3]],
            ),
        )

    def inverse(self):
        f = self.field
        det = self.det_index()
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        i = f.inv_t[det]
        a, b, c, d = self.e
        mul, neg = f.mul_t, f.neg_t
        return Mat2(f, (mul[i, d], mul[i, neg[b]], mul[i, neg[c]], mul[i, a]))

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.field is other.field and self.e == other.e

    def __hash__(self):
        return hash((id(self.field), self.e))

    def __str__(self):
        f = self.field
        s = [str(f.element(x)) for x in self.e]
        return f"[[{s[0]},{s[1]}],[{s[2]},{s[3]}]]"

    __repr__ = __str__

    @staticmethod
    def build_ops(elems):
        fld = elems[0].field
        mats = np.array([e.e for e in elems], dtype=np.int64)
        ops = _Mat2Ops(fld, mats)
        return ops, ops.label


def _canonicalize_rows(field: Field, rows):
    """Sign-canonical representative of {M, -M} for each row."""
    neg = field.neg_t
    p0, p1, p2, p3 = rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3]
    first = np.where(p0 != 0, p0, np.where(p1 != 0, p1, np.where(p2 != 0, p2, p3)))
    flip = neg[first] < first
    return np.where(flip[:, None], neg[rows], rows)


class _Mat2Ops:
    kind = "matrix"

    def __init__(self, field, mats, canon=False):
        self.field = field
        self.mats = np.ascontiguousarray(mats, dtype=np.int64)
        self.canon = canon
        self.q = int(field.q)
        self._resolver = _KeyResolver(self._pack(self.mats))

    def _pack(self, rows):
        q = self.q
        return ((rows[:, 0] * q + rows[:, 1]) * q + rows[:, 2]) * q + rows[:, 3]

    def resolve_rows(self, rows):
        if self.canon:
            rows = _canonicalize_rows(self.field, rows)
        return self._resolver.resolve(self._pack(rows))

    def mul_ids(self, a, b):
        f = self.field
        if self.canon:
            return kernels.mat2_mul_resolve_canon(
                self.mats, a, b, f.add_t, f.mul_t, f.neg_t, np.int64(self.q),
                self._resolver.sorted_keys, self._resolver.sorted_pos,
            )
        return kernels.mat2_mul_resolve(
            self.mats, a, b, f.add_t, f.mul_t, np.int64(self.q),
            self._resolver.sorted_keys, self._resolver.sorted_pos,
        )

    def inv_ids(self, ids):
        f = self.field
        rows = self.mats[ids]
        a, b, c, d = rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3]
        det = f.add_t[f.mul_t[a, d], f.neg_t[f.mul_t[b, c]]]
        i = f.inv_t[det]
        out = np.stack(
            [f.mul_t[i, d], f.mul_t[i, f.neg_t[b]], f.mul_t[i, f.neg_t[c]], f.mul_t[i, a]],
            axis=1,
        )
        return self.resolve_rows(out)

    def label(self, i):
        f = self.field
        s = [str(f.element(int(x))) for x in self.mats[i]]
        return f"[[{s[0]},{s[1]}],[{s[2]},{s[3]}]]"


def _identity_first(mats, ident_row):
    """Reorder rows so the identity sits at id 0, preserving order otherwise."""
    hit = np.flatnonzero((mats == np.asarray(ident_row)).all(axis=1))
    assert hit.size == 1
    k = int(hit[0])
    order = np.concatenate([[k], np.arange(k), np.arange(k + 1, mats.shape[0])])
    return mats[order]


def _det_filtered_mats(field: Field, det_value):
    """All matrices with the given determinant index, in lexicographic entry order."""
    q = field.q
    mul, add, neg = field.mul_t, field.add_t, field.neg_t
    rng = np.arange(q, dtype=np.int64)
    bb, cc, dd = [x.ravel() for x in np.meshgrid(rng, rng, rng, indexing="ij")]
    blocks = []
    for a in range(q):
        det = add[mul[a, dd], neg[mul[bb, cc]]]
        keep = det == det_value if det_value is not None else det != 0
        m = int(keep.sum())
        block = np.empty((m, 4), dtype=np.int64)
        block[:, 0] = a
        block[:, 1] = bb[keep]
        block[:, 2] = cc[keep]
        block[:, 3] = dd[keep]
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def _standard_gens(field: Field):
    """Transvection rows plus the split torus generator; they generate SL(2,q)."""
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)]
    if field.q > 2:
        nu = primitive_element(field).index
        gens.append((nu, 0, 0, field.inv_t[nu]))
    return [np.array(g, dtype=np.int64) for g in gens]


def _finish_matrix_group(field, mats, canon, name, backend):
    n = mats.shape[0]
    ops = _Mat2Ops(field, mats, canon=canon)
    gen_rows = _standard_gens(field)
    if canon:
        gen_rows = [
            _canonicalize_rows(field, row[None, :])[0] for row in gen_rows
        ]
    gen_ids = sorted({int(ops.resolve_rows(row[None, :])[0]) for row in gen_rows} - {0})
    g = Group(
        _materialize_if_small(ops, n),
        n,
        backend,
        name,
        gen_ids,
        ops.label,
        meta={"field": field, "q": field.q},
    )
    g.meta["matrix_ops"] = ops
    assert g.closure_ids(g.gens).size == n, "generators fail to generate"
    return g


def sl2(fld: Field, cap=None) -> Group:
    """All determinant-1 matrices over GF(q); order q(q^2 - 1)."""
    q = fld.q
    if q > MAX_Q:
        raise CapExceeded(f"q = {q} exceeds the PSL/SL cap {MAX_Q}")
    expected = q * (q * q - 1)
    if cap is not None and expected > cap:
        raise CapExceeded(f"|SL(2,{q})| = {expected} exceeds cap {cap}")
    mats = _identity_first(_det_filtered_mats(fld, 1), (1, 0, 0, 1))
    g = _finish_matrix_group(fld, mats, False, f"SL(2,{q})", "matrix")
    assert g.order == expected
    return g


def psl2(fld: Field, cap=None) -> Group:
    """SL(2,q) modulo its center {+-I}, on canonical sign representatives."""
    q = fld.q
    if q > MAX_Q:
        raise CapExceeded(f"q = {q} exceeds the PSL/SL cap {MAX_Q}")
    expected = q * (q * q - 1) // (2 if q % 2 else 1)
    if cap is not None and expected > cap:
        raise CapExceeded(f"|PSL(2,{q})| = {expected} exceeds cap {cap}")
    all_sl = _det_filtered_mats(fld, 1)
    if q % 2 == 0:  # trivial center in characteristic 2
        mats = _identity_first(all_sl, (1, 0, 0, 1))
        g = _finish_matrix_group(fld, mats, False, f"PSL(2,{q})", "matrix")
    else:
        canon = _canonicalize_rows(fld, all_sl)
        q64 = np.int64(q)
        keys = ((canon[:, 0] * q64 + canon[:, 1]) * q64 + canon[:, 2]) * q64 + canon[:, 3]
        _, first_pos = np.unique(keys, return_index=True)
        mats = _identity_first(canon[np.sort(first_pos)], (1, 0, 0, 1))
        g = _finish_matrix_group(fld, mats, True, f"PSL(2,{q})", "matrix")
    assert g.order == expected
    return g


def gl2(fld: Field, cap=None) -> Group:
    """All invertible matrices over GF(q); order (q^2 - 1)(q^2 - q)."""
    q = fld.q
    expected = (q * q - 1) * (q * q - q)
    if cap is not None and expected > cap:
        raise CapExceeded(f"|GL(2,{q})| = {expected} exceeds cap {cap}")
    if q > MAX_Q:
        raise CapExceeded(f"q = {q} exceeds the matrix-group cap {MAX_Q}")
    mats = _identity_first(_det_filtered_mats(fld, None), (1, 0, 0, 1))
    n = mats.shape[0]
    ops = _Mat2Ops(fld, mats, canon=False)
    gen_rows = _standard_gens(fld)
    if q > 2:
        nu = primitive_element(fld).index
        gen_rows.append(np.array((nu, 0, 0, 1), dtype=np.int64))
    gen_ids = sorted({int(ops.resolve_rows(r[None, :])[0]) for r in gen_rows} - {0})
    g = Group(
        _materialize_if_small(ops, n),
        n,
        "matrix",
        f"GL(2,{q})",
        gen_ids,
        ops.label,
        meta={"field": fld, "q": q, "matrix_ops": ops},
    )
    assert g.order == expected
    assert g.closure_ids(g.gens).size == n, "generators fail to generate"
    return g


def projection_to_psl(sl_group: Group, psl_group: Group) -> np.ndarray:
    """id map SL -> PSL through sign canonicalization (a homomorphism)."""
    sl_ops = sl_group.meta["matrix_ops"]
    psl_ops = psl_group.meta["matrix_ops"]
    return psl_ops.resolve_rows(_canonicalize_rows(sl_group.meta["field"], sl_ops.mats))


# ---------------------------------------------------------------------------
# distinguished class representatives and their centralizers
# ---------------------------------------------------------------------------

@dataclass
class PslClassData:
    """Measured conjugacy data of PSL(2,q) for the distinguished elements.

    ``expected`` entries are the centralizer orders the closed-form argument
    uses (only claimed when q = 1 mod 4); ``measured`` always comes from
    enumeration.  Mismatches are data, not errors.
    """

    q: int
    group: Group
    names: list
    rep_ids: list
    measured: list
    expected: list  # entry None where no claim is made
    distinct_classes: bool
    class_equation_ok: bool

    def rows(self):
        return list(zip(self.names, self.rep_ids, self.measured, self.expected))


def distinguished_classes(fld: Field) -> PslClassData:
    """Build the distinguished PSL(2,q) elements and measure their classes.

    The elements: the identity, the unipotents [[1,0],[1,1]] and
    [[1,0],[nu,1]], powers of the split element diag(nu, 1/nu), and powers
    of a Singer-type element of order q+1 found by id-order search in
    SL(2,q).
    """
    q, p = fld.q, fld.p
    if q % 2 == 0:
        raise ValueError("distinguished class data needs odd q")
    slg = sl2(fld)
    pslg = psl2(fld)
    ops = pslg.meta["matrix_ops"]
    nu = primitive_element(fld).index

    def project(entries):
        row = np.array(entries, dtype=np.int64)[None, :]
        return int(ops.resolve_rows(row)[0])

    sl_orders = slg.orders()
    singer = np.flatnonzero(sl_orders == q + 1)
    if singer.size == 0:
        raise SearchFailed(f"no element of order {q + 1} in SL(2,{q})")
    b_sl = int(singer[0])
    b_row = slg.meta["matrix_ops"].mats[b_sl]

    half = (q - 1) // 4
    names = ["1", "c", "d"]
    rep_ids = [0, project((1, 0, 1, 1)), project((1, 0, nu, 1))]
    a_id = project((nu, 0, 0, int(fld.inv_t[nu])))
    cur = 0
    for ell in range(1, half + 1):
        cur = pslg.mul(cur, a_id)
        names.append(f"a^{ell}")
        rep_ids.append(cur)
    b_id = project(tuple(int(x) for x in b_row))
    cur = 0
    for m in range(1, half + 1):
        cur = pslg.mul(cur, b_id)
        names.append(f"b^{m}")
        rep_ids.append(cur)

    ids = np.arange(pslg.order, dtype=np.int64)
    measured = []
    for rep in rep_ids:
        measured.append(
            int(np.count_nonzero(pslg.mul_vec(ids, rep) == pslg.mul_vec(rep, ids)))
        )

    if q % 4 == 1:
        expected = [pslg.order, p, p]
        expected += [(q - 1) if ell == half else (q - 1) // 2 for ell in range(1, half + 1)]
        expected += [(q + 1) // 2] * half
    else:
        expected = [None] * len(names)

    labels = pslg.conj_labels()
    rep_labels = [int(labels[r]) for r in rep_ids]
    distinct = len(set(rep_labels)) == len(rep_labels)
    class_sum = sum(pslg.order // m for m in measured)
    return PslClassData(
        q, pslg, names, rep_ids, measured, expected, distinct, class_sum == pslg.order
    )


# ---------------------------------------------------------------------------
# closed form and scan
# ---------------------------------------------------------------------------

def psl2_prob_formula(q: int, r: int):
    """Closed-form value (q+1)/(2(q-1)) and whether its hypotheses hold.

    The hypotheses: q odd, q = 1 mod 4, and r = (q-1)/2 prime.  Together
    they force r = 2 and q = 5; the scan explores neighbors empirically.
    """
    if q < 4:
        raise ValueError("closed form needs q >= 4")
    value = Fraction(q + 1, 2 * (q - 1))
    hypothesis_ok = bool(q % 2 == 1 and q % 4 == 1 and r == (q - 1) // 2 and is_prime(r))
    return value, hypothesis_ok


@dataclass(frozen=True)
class ScanRow:
    q: int
    r: int
    order: int | None
    formula: Probability
    hypothesis_ok: bool
    enumerated: Probability | None
    agree: bool | None
    note: str = ""


def psl2_scan(q_list, r_list, cap=None):
    """Formula vs. enumerated probability on the (q, r) grid, exact rationals.

    Rows are ordered by (q, r).  A cell whose group exceeds the cap is
    reported with a note instead of data.
    """
    rows = []
    for q in sorted(set(int(q) for q in q_list)):
        formula_cache = {}
        try:
            grp = psl2(field_new(q), cap=cap)
        except CapExceeded as exc:
            for r in sorted(set(int(r) for r in r_list)):
                value, hyp = psl2_prob_formula(q, r)
                rows.append(ScanRow(q, r, None, value, hyp, None, None, str(exc)))
            continue
        for r in sorted(set(int(r) for r in r_list)):
            value, hyp = psl2_prob_formula(q, r)
            enum = formula_cache.get(r)
            if enum is None:
                enum = prob_r(grp, r)
                formula_cache[r] = enum
            rows.append(ScanRow(q, r, grp.order, value, hyp, enum, enum == value))
    return rows


__all__ = [
    "MAX_Q",
    "Mat2",
    "sl2",
    "psl2",
    "gl2",
    "projection_to_psl",
    "PslClassData",
    "distinguished_classes",
    "psl2_prob_formula",
    "ScanRow",
    "psl2_scan",
]
