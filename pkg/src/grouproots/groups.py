"""Finite groups as dense element ids over pluggable multiplication backends.

Every construction (permutation closure, matrix enumeration, abelian tuples,
direct products, Cayley tables, quotients) reduces to the same contract:
ids 0..n-1 with id 0 the identity, a vectorized ``mul_ids`` on id arrays and
a vectorized ``inv_ids``.  Groups of order <= TABLE_CAP additionally
materialize a dense Cayley table so the hot structural loops can run through
the kernels module; larger groups stay keyed and are served by the generic
numpy paths.
"""

import os
from collections import deque

import numpy as np

from . import kernels
from .errors import CapExceeded, NotNormal
from .util import divisors, is_prime, p_part

DEFAULT_CAP = 200_000
TABLE_CAP = 1024

_CHECK_SEED = 0x5EED


def default_cap() -> int:
    """Element cap for constructions; RADICALITY_CAP overrides the default."""
    raw = os.environ.get("RADICALITY_CAP", "").strip()
    return int(raw) if raw else DEFAULT_CAP


# ---------------------------------------------------------------------------
# permutations (generator objects for `generate`)
# ---------------------------------------------------------------------------

class Perm:
    """A permutation of {0..degree-1}, stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree=None):
        """Build from 1-based disjoint-or-not cycles, e.g. [(1,2,3),(4,5)].

        Cycles are applied left to right; the degree defaults to the largest
        point mentioned.
        """
        points = [p for cyc in cycles for p in cyc]
        if degree is None:
            degree = max(points) if points else 1
        if points and min(points) < 1:
            raise ValueError("cycle points are 1-based")
        images = list(range(degree))
        for cyc in reversed(cycles):
            src = list(images)
            for k, pt in enumerate(cyc):
                images[pt - 1] = src[cyc[(k + 1) % len(cyc)] - 1]
        return cls(images)

    @property
    def degree(self):
        return len(self.images)

    def identity_like(self):
        return Perm.identity(self.degree)

    def key(self):
        return self.images

    def __mul__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Perm(self.images[other.images[i]] for i in range(self.degree))

    def inverse(self):
        out = [0] * self.degree
        for i, img in enumerate(self.images):
            out[img] = i
        return Perm(out)

    def cycles(self):
        """Nontrivial cycles on 1-based points, each rotated to start at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i + 1)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def __str__(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    __repr__ = __str__

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    @staticmethod
    def build_ops(elems):
        images = np.array([e.images for e in elems], dtype=np.int64)
        ops = _PermOps(images)
        labels = [str(e) for e in elems]
        return ops, labels.__getitem__


# ---------------------------------------------------------------------------
# multiplication backends
# ---------------------------------------------------------------------------

class _KeyResolver:
    """Maps packed int64 element keys back to dense ids via binary search."""

    def __init__(self, keys):
        order = np.argsort(keys, kind="stable")
        self.sorted_keys = np.ascontiguousarray(keys[order])
        self.sorted_pos = np.ascontiguousarray(order.astype(np.int64))

    def resolve(self, keys):
        return self.sorted_pos[np.searchsorted(self.sorted_keys, keys)]


class _TableOps:
    kind = "table"

    def __init__(self, table):
        self.table = np.ascontiguousarray(table, dtype=np.int64)
        self.inverse = np.argmax(self.table == 0, axis=1).astype(np.int64)

    def mul_ids(self, a, b):
        return self.table[a, b]

    def inv_ids(self, a):
        return self.inverse[a]


class _PermOps:
    kind = "perm"

    def __init__(self, images):
        self.images = np.ascontiguousarray(images, dtype=np.int64)
        self.degree = images.shape[1]
        if self.degree > 15:
            # packed keys need 4 bits per point; fall back to a dict
            self._resolver = None
            self._index = {tuple(row): i for i, row in enumerate(images.tolist())}
        else:
            self._shifts = (4 * np.arange(self.degree, dtype=np.int64))[None, :]
            self._resolver = _KeyResolver(self._pack(self.images))

    def _pack(self, rows):
        return (rows << self._shifts).sum(axis=1)

    def _resolve_rows(self, rows):
        if self._resolver is not None:
            return self._resolver.resolve(self._pack(rows))
        return np.fromiter(
            (self._index[tuple(r)] for r in rows.tolist()), dtype=np.int64, count=len(rows)
        )

    def mul_ids(self, a, b):
        composed = np.take_along_axis(self.images[a], self.images[b], axis=1)
        return self._resolve_rows(composed)

    def inv_ids(self, a):
        return self._resolve_rows(np.argsort(self.images[a], axis=1))


class _AbelianOps:
    """Tuples over Z_{d_1} x ... x Z_{d_k}; the id is the mixed-radix value."""

    kind = "abelian"

    def __init__(self, moduli):
        self.moduli = np.array(moduli, dtype=np.int64)
        w = np.ones(len(moduli), dtype=np.int64)
        for k in range(len(moduli) - 2, -1, -1):
            w[k] = w[k + 1] * self.moduli[k + 1]
        self.weights = w

    def digits(self, ids):
        return (np.asarray(ids, dtype=np.int64)[..., None] // self.weights) % self.moduli

    def mul_ids(self, a, b):
        return ((self.digits(a) + self.digits(b)) % self.moduli) @ self.weights

    def inv_ids(self, a):
        return ((-self.digits(a)) % self.moduli) @ self.weights


class _ProductOps:
    kind = "product"

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.nb = right.order

    def mul_ids(self, a, b):
        la, lb = a // self.nb, a % self.nb
        ra, rb = b // self.nb, b % self.nb
        return self.left.mul_vec(la, ra) * self.nb + self.right.mul_vec(lb, rb)

    def inv_ids(self, a):
        return self.left.inv_vec(a // self.nb) * self.nb + self.right.inv_vec(a % self.nb)


# ---------------------------------------------------------------------------
# subgroups and conjugacy data
# ---------------------------------------------------------------------------

class Subgroup:
    """A subgroup of a parent group, as a sorted array of member ids."""

    __slots__ = ("parent", "member_ids", "gens", "_mask")

    def __init__(self, parent, member_ids, gens=None):
        ids = np.unique(np.asarray(member_ids, dtype=np.int64))
        if ids.size == 0 or ids[0] != 0:
            raise ValueError("a subgroup must contain the identity")
        if parent.order % ids.size != 0:
            raise ValueError(
                f"order {ids.size} does not divide parent order {parent.order}"
            )
        self.parent = parent
        self.member_ids = ids
        self.gens = list(gens) if gens is not None else None
        self._mask = None

    @property
    def order(self):
        return int(self.member_ids.size)

    @property
    def mask(self):
        if self._mask is None:
            m = np.zeros(self.parent.order, dtype=bool)
            m[self.member_ids] = True
            self._mask = m
        return self._mask

    def contains(self, ids):
        return self.mask[np.asarray(ids, dtype=np.int64)]

    def generating_ids(self):
        return self.gens if self.gens is not None else list(map(int, self.member_ids))

    def is_whole(self):
        return self.order == self.parent.order

    def describe(self, limit=8):
        names = [self.parent.label(i) for i in self.member_ids[:limit]]
        suffix = ", ..." if self.order > limit else ""
        return f"<order {self.order}: {', '.join(names)}{suffix}>"

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.order == other.order
            and bool((self.member_ids == other.member_ids).all())
        )

    def __hash__(self):
        return hash((id(self.parent), self.member_ids.tobytes()))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.name})"


class ConjugacyPartition:
    """Conjugacy classes with least-id representatives and measured centralizers."""

    def __init__(self, group, classes, centralizer_orders):
        self.group = group
        self.classes = classes
        self.reps = np.array([int(c[0]) for c in classes], dtype=np.int64)
        self.sizes = np.array([c.size for c in classes], dtype=np.int64)
        self.centralizer_orders = np.asarray(centralizer_orders, dtype=np.int64)
        n = group.order
        if int(self.sizes.sum()) != n:
            raise AssertionError("class sizes do not sum to the group order")
        if not (self.sizes * self.centralizer_orders == n).all():
            raise AssertionError("orbit-stabilizer identity violated")

    def __len__(self):
        return len(self.classes)

    def class_of(self, a):
        rep = int(self.group.conj_labels()[a])
        return self.classes[int(np.searchsorted(self.reps, rep))]


# ---------------------------------------------------------------------------
# the Group
# ---------------------------------------------------------------------------

class Group:
    """An enumerated finite group; immutable once constructed.

    Use the module constructors (:func:`generate`, :func:`abelian_group`,
    :func:`direct_product`, :func:`cayley_group`, or the matrix-group
    builders) rather than instantiating directly.
    """

    def __init__(self, ops, order, backend, name, gens, label_fn, meta=None):
        self._ops = ops
        self.order = int(order)
        self.backend = backend
        self.name = name
        self.gens = [int(g) for g in gens]
        self._label_fn = label_fn
        self.meta = dict(meta or {})
        self._pow_cache = {}
        self._quotient_cache = {}
        self._orders = None
        self._conj_labels = None
        self._conj = None
        self._lattice = None
        self._is_abelian = None
        self._sanity_check()

    # -- raw operation layer -------------------------------------------------

    @property
    def table(self):
        return self._ops.table if isinstance(self._ops, _TableOps) else None

    def mul_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        shape = np.broadcast_shapes(a.shape, b.shape)
        flat_a = np.broadcast_to(a, shape).ravel()
        flat_b = np.broadcast_to(b, shape).ravel()
        return self._ops.mul_ids(flat_a, flat_b).reshape(shape)

    def inv_vec(self, a):
        a = np.asarray(a, dtype=np.int64)
        return self._ops.inv_ids(a.ravel()).reshape(a.shape)

    def mul(self, i, j):
        if isinstance(self._ops, _TableOps):
            return int(self._ops.table[i, j])
        return int(self.mul_vec(np.int64(i), np.int64(j)))

    def inv(self, i):
        return int(self.inv_vec(np.asarray([i]))[0])

    def conjugate_vec(self, x, g):
        """g^-1 * x * g, elementwise over broadcast ids."""
        return self.mul_vec(self.mul_vec(self.inv_vec(np.asarray(g, dtype=np.int64)), x), g)

    def pow_vec(self, ids, e):
        ids = np.asarray(ids, dtype=np.int64)
        e = int(e)
        if e < 0:
            ids = self.inv_vec(ids)
            e = -e
        acc = np.zeros(ids.shape, dtype=np.int64)
        base = ids
        while e:
            if e & 1:
                acc = self.mul_vec(acc, base)
            e >>= 1
            if e:
                base = self.mul_vec(base, base)
        return acc

    def pow_all(self, e):
        """id**e for every id; cached per exponent."""
        e = int(e)
        if e not in self._pow_cache:
            if isinstance(self._ops, _TableOps) and e >= 0:
                out = kernels.table_pow_all(self._ops.table, e)
            else:
                out = self.pow_vec(np.arange(self.order, dtype=np.int64), e)
            out.setflags(write=False)
            self._pow_cache[e] = out
        return self._pow_cache[e]

    def orders(self):
        """Element orders for all ids at once."""
        if self._orders is None:
            if isinstance(self._ops, _TableOps):
                out = kernels.table_orders(self._ops.table)
            else:
                out = np.zeros(self.order, dtype=np.int64)
                remaining = np.arange(self.order, dtype=np.int64)
                for d in divisors(self.order):
                    if remaining.size == 0:
                        break
                    hit = remaining[self.pow_all(d)[remaining] == 0]
                    out[hit] = d
                    remaining = remaining[self.pow_all(d)[remaining] != 0]
            out.setflags(write=False)
            self._orders = out
        return self._orders

    def element_order(self, a):
        return int(self.orders()[a])

    def exponent(self):
        return int(np.lcm.reduce(self.orders()))

    def label(self, i):
        return self._label_fn(int(i))

    def is_abelian(self):
        if self._is_abelian is None:
            gens = np.array(self.gens or [0], dtype=np.int64)
            ga = np.repeat(gens, gens.size)
            gb = np.tile(gens, gens.size)
            self._is_abelian = bool((self.mul_vec(ga, gb) == self.mul_vec(gb, ga)).all())
        return self._is_abelian

    # -- closures and subgroups ----------------------------------------------

    def closure_ids(self, seed_ids):
        """Sorted ids of the subgroup generated by seed_ids."""
        seed = np.unique(np.asarray(list(seed_ids), dtype=np.int64))
        seed = seed[seed != 0]
        if seed.size == 0:
            return np.zeros(1, dtype=np.int64)
        if isinstance(self._ops, _TableOps):
            return kernels.table_closure(self._ops.table, seed)
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        frontier = np.zeros(1, dtype=np.int64)
        while frontier.size:
            prods = np.unique(self.mul_vec(frontier[:, None], seed[None, :]))
            frontier = prods[~member[prods]]
            member[frontier] = True
        return np.flatnonzero(member).astype(np.int64)

    def subgroup(self, seed_ids):
        seed = [int(s) for s in seed_ids]
        return Subgroup(self, self.closure_ids(seed), gens=sorted(set(seed) - {0}) or [0])

    def whole_subgroup(self):
        return Subgroup(self, np.arange(self.order), gens=self.gens)

    def trivial_subgroup(self):
        return Subgroup(self, [0], gens=[0])

    def centralizer(self, a):
        ids = np.arange(self.order, dtype=np.int64)
        mask = self.mul_vec(ids, a) == self.mul_vec(a, ids)
        return Subgroup(self, np.flatnonzero(mask))

    def centralizer_sizes(self):
        """|C(a)| for every element a."""
        if isinstance(self._ops, _TableOps):
            return kernels.table_centralizer_sizes(self._ops.table)
        sizes = self.order // np.bincount(self.conj_labels(), minlength=self.order)[
            self.conj_labels()
        ]
        return sizes.astype(np.int64)

    def center(self):
        ids = np.arange(self.order, dtype=np.int64)
        mask = np.ones(self.order, dtype=bool)
        for g in self.gens:
            mask &= self.mul_vec(ids, g) == self.mul_vec(g, ids)
        return Subgroup(self, np.flatnonzero(mask))

    def normalizer(self, sub: Subgroup):
        ids = np.arange(self.order, dtype=np.int64)
        inv_ids = self.inv_vec(ids)
        ok = np.ones(self.order, dtype=bool)
        mask = sub.mask
        for s in sub.member_ids:
            conj = self.mul_vec(self.mul_vec(ids, s), inv_ids)  # x s x^-1
            ok &= mask[conj]
        return Subgroup(self, np.flatnonzero(ok))

    def is_normal(self, sub: Subgroup) -> bool:
        if sub.order in (1, self.order):
            return True
        mask = sub.mask
        for g in self.gens:
            if not mask[self.conjugate_vec(sub.member_ids, g)].all():
                return False
        return True

    # -- conjugacy ------------------------------------------------------------

    def conj_labels(self):
        """Least-id class representative per element."""
        if self._conj_labels is None:
            if isinstance(self._ops, _TableOps):
                labels = kernels.table_conj_labels(self._ops.table, self._ops.inverse)
            else:
                labels = np.full(self.order, -1, dtype=np.int64)
                gens = np.array(self.gens, dtype=np.int64)
                for x in range(self.order):
                    if labels[x] >= 0:
                        continue
                    orbit_mask = np.zeros(self.order, dtype=bool)
                    orbit_mask[x] = True
                    frontier = np.array([x], dtype=np.int64)
                    while frontier.size:
                        conj = np.unique(self.conjugate_vec(frontier[:, None], gens[None, :]))
                        frontier = conj[~orbit_mask[conj]]
                        orbit_mask[frontier] = True
                    labels[orbit_mask] = x
            labels.setflags(write=False)
            self._conj_labels = labels
        return self._conj_labels

    def conjugacy_classes(self) -> ConjugacyPartition:
        if self._conj is None:
            labels = self.conj_labels()
            order_keys = np.argsort(labels, kind="stable")
            sorted_labels = labels[order_keys]
            cut = np.flatnonzero(np.diff(sorted_labels)) + 1
            classes = [np.sort(c) for c in np.split(order_keys, cut)]
            cents = [self._centralizer_count(int(c[0])) for c in classes]
            self._conj = ConjugacyPartition(self, classes, cents)
        return self._conj

    def _centralizer_count(self, a):
        ids = np.arange(self.order, dtype=np.int64)
        return int(np.count_nonzero(self.mul_vec(ids, a) == self.mul_vec(a, ids)))

    # -- quotients ------------------------------------------------------------

    def coset_reps(self, sub: Subgroup):
        """Least member id of x*N for every x (N need not be normal)."""
        if isinstance(self._ops, _TableOps):
            return self._ops.table[:, sub.member_ids].min(axis=1).astype(np.int64)
        ids = np.arange(self.order, dtype=np.int64)
        rep = np.full(self.order, np.iinfo(np.int64).max, dtype=np.int64)
        for s in sub.member_ids:
            np.minimum(rep, self.mul_vec(ids, s), out=rep)
        return rep

    def quotient(self, sub: Subgroup):
        """Cayley-table group on cosets; raises NotNormal otherwise."""
        key = sub.member_ids.tobytes()
        if key in self._quotient_cache:
            return self._quotient_cache[key]
        if not self.is_normal(sub):
            raise NotNormal(f"{sub!r} is not normal in {self.name}")
        rep_of = self.coset_reps(sub)
        reps = np.unique(rep_of)
        k = reps.size
        if k > TABLE_CAP * 4:
            raise CapExceeded(f"quotient of order {k} exceeds the table cap")
        dense = np.zeros(self.order, dtype=np.int64)
        dense[reps] = np.arange(k, dtype=np.int64)
        ra = np.repeat(reps, k)
        rb = np.tile(reps, k)
        qtable = dense[rep_of[self.mul_vec(ra, rb)]].reshape(k, k)
        labels = [f"[{self.label(int(r))}]" for r in reps]
        gens = sorted(set(int(dense[rep_of[g]]) for g in self.gens) - {0}) or [0]
        quo = Group(
            _TableOps(qtable),
            k,
            "quotient",
            f"{self.name}/N{sub.order}",
            gens,
            labels.__getitem__,
            meta={"parent": self.name, "kernel_order": sub.order},
        )
        self._quotient_cache[key] = quo
        return quo

    # -- structure algorithms ---------------------------------------------------

    def _normal_closure_in(self, ambient_gens, seed_gens):
        """Members+gens of the normal closure of <seed_gens> under ambient_gens."""
        gens_n = sorted(set(int(s) for s in seed_gens) - {0})
        if not gens_n:
            return np.zeros(1, dtype=np.int64), [0]
        members = self.closure_ids(gens_n)
        changed = True
        while changed:
            changed = False
            mask = np.zeros(self.order, dtype=bool)
            mask[members] = True
            arr = np.array(gens_n, dtype=np.int64)
            for h in ambient_gens:
                conj = self.conjugate_vec(arr, h)
                fresh = np.unique(conj[~mask[conj]])
                if fresh.size:
                    gens_n.extend(int(f) for f in fresh)
                    members = self.closure_ids(gens_n)
                    changed = True
                    break
        return members, gens_n

    def derived_subgroup_of(self, gens_ids):
        """[H, H] for the subgroup generated by gens_ids, as (members, gens)."""
        gens = [int(g) for g in gens_ids]
        arr = np.array(gens, dtype=np.int64)
        ga = np.repeat(arr, arr.size)
        gb = np.tile(arr, arr.size)
        comms = self.mul_vec(
            self.mul_vec(self.inv_vec(ga), self.inv_vec(gb)), self.mul_vec(ga, gb)
        )
        return self._normal_closure_in(gens, np.unique(comms))

    def derived_series(self):
        """Subgroup orders along the derived series, until stable."""
        members = np.arange(self.order, dtype=np.int64)
        gens = self.gens or [0]
        series = [self.order]
        while series[-1] > 1:
            members, gens = self.derived_subgroup_of(gens)
            if members.size == series[-1]:
                break
            series.append(int(members.size))
        return series

    def is_solvable(self) -> bool:
        return self.derived_series()[-1] == 1

    def sylow_subgroup(self, p: int) -> Subgroup:
        """A Sylow p-subgroup by greedy normalizer extension."""
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        target = p_part(self.order, p)
        if target == 1:
            return self.trivial_subgroup()
        orders = self.orders()
        p_mask = orders > 1
        rem = orders.copy()
        for _ in range(64):
            rem = np.where(rem % p == 0, rem // p, rem)
        p_mask &= rem == 1  # p-elements: order is a pure power of p
        best = orders[p_mask].max()
        x = int(np.flatnonzero(p_mask & (orders == best))[0])
        sub = self.subgroup([x])
        while sub.order < target:
            norm = self.normalizer(sub)
            grown = False
            for y in norm.member_ids:
                y = int(y)
                if sub.mask[y] or not p_mask[y]:
                    continue
                cand = self.subgroup(sub.generating_ids() + [y])
                if cand.order > sub.order and p_part(cand.order, p) == cand.order:
                    sub = cand
                    grown = True
                    break
            if not grown:  # cannot happen: normalizers of non-Sylow p-subgroups grow
                raise AssertionError("Sylow extension search stalled")
        return sub

    # -- subgroup lattice -------------------------------------------------------

    def subgroup_lattice(self):
        """All subgroups, by closing cyclic subgroups under pairwise join.

        Exhaustive and exact; intended for orders in the low hundreds.
        """
        if self._lattice is not None:
            return self._lattice
        n = self.order
        found = {}  # mask bytes -> Subgroup

        def add(sub):
            key = sub.mask.tobytes()
            if key not in found:
                found[key] = sub
                return True
            return False

        add(self.trivial_subgroup())
        for x in range(1, n):
            add(self.subgroup([x]))
        worklist = list(found.values())
        while worklist:
            fresh = []
            current = list(found.values())
            for a in worklist:
                for b in current:
                    if (a.mask | b.mask).tobytes() in found:
                        continue
                    join = self.subgroup(a.generating_ids() + b.generating_ids())
                    if add(join):
                        fresh.append(join)
            worklist = fresh
        lattice = sorted(found.values(), key=lambda s: (s.order, s.member_ids.tobytes()))
        self._lattice = lattice
        return lattice

    def normal_subgroups(self):
        return [s for s in self.subgroup_lattice() if self.is_normal(s)]

    def sampled_subgroups(self, samples=100, seed=0):
        """Subgroups generated by random element pairs (deduplicated)."""
        rng = np.random.default_rng(seed)
        out, seen = [], set()
        for _ in range(samples):
            pair = rng.integers(0, self.order, size=2)
            sub = self.subgroup(pair.tolist())
            key = sub.member_ids.tobytes()
            if key not in seen:
                seen.add(key)
                out.append(sub)
        return out

    # -- checks -----------------------------------------------------------------

    def _sanity_check(self):
        n = self.order
        ids = np.arange(n, dtype=np.int64)
        if not (self.mul_vec(0, ids) == ids).all() or not (self.mul_vec(ids, 0) == ids).all():
            raise AssertionError(f"id 0 is not a two-sided identity in {self.name}")
        inv = self.inv_vec(ids)
        if not (self.mul_vec(ids, inv) == 0).all() or not (self.mul_vec(inv, ids) == 0).all():
            raise AssertionError(f"inverses are broken in {self.name}")
        self.check_associativity(exhaustive_limit=0, samples=min(256, n * n))

    def check_associativity(self, exhaustive_limit=512, samples=100_000, seed=_CHECK_SEED):
        """(ab)c == a(bc), exhaustively up to exhaustive_limit, sampled above."""
        n = self.order
        if n <= exhaustive_limit:
            ids = np.arange(n, dtype=np.int64)
            for a in ids:
                left = self.mul_vec(self.mul_vec(a, ids)[:, None], ids[None, :])
                right = self.mul_vec(a, self.mul_vec(ids[:, None], ids[None, :]))
                if not (left == right).all():
                    return False
            return True
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        return bool(
            (self.mul_vec(self.mul_vec(a, b), c) == self.mul_vec(a, self.mul_vec(b, c))).all()
        )

    def __repr__(self):
        return f"Group({self.name}, order={self.order}, backend={self.backend})"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _materialize_if_small(ops, n):
    """Dense Cayley table for small orders, so kernels can take over."""
    if isinstance(ops, _TableOps) or n > TABLE_CAP:
        return ops
    ids = np.arange(n, dtype=np.int64)
    table = ops.mul_ids(np.repeat(ids, n), np.tile(ids, n)).reshape(n, n)
    return _TableOps(table)


def generate(gens, cap=None, name=None) -> Group:
    """Breadth-first closure of generator objects (e.g. :class:`Perm`).

    Ids follow discovery order: identity first, then the generators in the
    given order, then products level by level.  Raises CapExceeded when the
    closure grows past ``cap``.
    """
    cap = default_cap() if cap is None else int(cap)
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = list(gens)
    if not gens:
        return trivial_group()
    ident = gens[0].identity_like()
    elems = [ident]
    index = {ident.key(): 0}
    for g in gens:
        if g.key() not in index:
            index[g.key()] = len(elems)
            elems.append(g)
    if len(elems) > cap:
        raise CapExceeded(f"closure exceeded cap {cap}")
    queue = deque(range(len(elems)))
    while queue:
        x = elems[queue.popleft()]
        for g in gens:
            y = x * g
            k = y.key()
            if k not in index:
                index[k] = len(elems)
                elems.append(y)
                queue.append(len(elems) - 1)
                if len(elems) > cap:
                    raise CapExceeded(f"closure exceeded cap {cap}")
    ops, label_fn = type(ident).build_ops(elems)
    n = len(elems)
    gen_ids = sorted({index[g.key()] for g in gens} - {0}) or [0]
    return Group(
        _materialize_if_small(ops, n),
        n,
        getattr(ops, "kind", "generated"),
        name or f"<{', '.join(str(g) for g in gens)}>",
        gen_ids,
        label_fn,
    )


def abelian_group(factors, cap=None, name=None) -> Group:
    """Direct sum of cyclic groups of the given orders (each >= 2)."""
    cap = default_cap() if cap is None else int(cap)
    factors = [int(d) for d in factors]
    if any(d < 2 for d in factors):
        raise ValueError("cyclic factors must be at least 2")
    if not factors:
        return trivial_group()
    n = 1
    for d in factors:
        n *= d
        if n > cap:
            raise CapExceeded(f"abelian group of order {n} exceeds cap {cap}")
    ops = _AbelianOps(factors)
    weights = ops.weights
    gens = [int(w) for w in weights]

    def label(i):
        return "(" + ",".join(str(int(d)) for d in ops.digits(np.int64(i))) + ")"

    return Group(
        _materialize_if_small(ops, n),
        n,
        "abelian",
        name or " x ".join(f"C{d}" for d in factors),
        gens,
        label,
        meta={"cyclic_factors": factors},
    )


def direct_product(a: Group, b: Group, cap=None) -> Group:
    """Componentwise product; the id of (x, y) is x*|b| + y."""
    cap = default_cap() if cap is None else int(cap)
    n = a.order * b.order
    if n > cap:
        raise CapExceeded(f"product of order {n} exceeds cap {cap}")
    ops = _ProductOps(a, b)
    nb = b.order
    gens = sorted(({g * nb for g in a.gens} | set(b.gens)) - {0}) or [0]

    def label(i):
        return f"({a.label(i // nb)},{b.label(i % nb)})"

    meta = {}
    if "cyclic_factors" in a.meta and "cyclic_factors" in b.meta:
        meta["cyclic_factors"] = a.meta["cyclic_factors"] + b.meta["cyclic_factors"]
    meta["factors"] = (a, b)
    return Group(
        _materialize_if_small(ops, n),
        n,
        "product",
        f"{a.name} x {b.name}",
        gens,
        label,
        meta=meta,
    )


def cayley_group(table, name, labels=None, gens=None, meta=None) -> Group:
    """Group from an explicit Cayley table (row i, col j -> i*j)."""
    table = np.asarray(table, dtype=np.int64)
    n = table.shape[0]
    if table.shape != (n, n) or (table < 0).any() or (table >= n).any():
        raise ValueError("malformed Cayley table")
    if labels is None:
        labels = [f"g{i}" for i in range(n)]
    gens = list(gens) if gens is not None else list(range(1, n)) or [0]
    return Group(_TableOps(table), n, "cayley-table", name, gens, labels.__getitem__, meta=meta)


def trivial_group() -> Group:
    return cayley_group([[0]], "C1", labels=["e"], gens=[0], meta={"cyclic_factors": []})


def quotient(g: Group, n: Subgroup) -> Group:
    return g.quotient(n)


def commuting_subgroups(g: Group, a: Subgroup, b: Subgroup) -> bool:
    """True iff every element of a commutes with every element of b."""
    for s in a.member_ids:
        if not (g.mul_vec(s, b.member_ids) == g.mul_vec(b.member_ids, s)).all():
            return False
    return True


__all__ = [
    "DEFAULT_CAP",
    "TABLE_CAP",
    "default_cap",
    "Perm",
    "Subgroup",
    "ConjugacyPartition",
    "Group",
    "generate",
    "abelian_group",
    "direct_product",
    "cayley_group",
    "trivial_group",
    "quotient",
    "commuting_subgroups",
]
