"""Power images, r-th root counts, and the share of elements with r-th roots.

For a finite group G and r >= 2 the central quantity is |G^r| / |G|, the
probability that a uniformly random element has an r-th root, kept as an
exact ``fractions.Fraction`` throughout.  The verification engine sweeps a
group's subgroups, normal subgroups, and commuting subgroup pairs, checking
every structural identity and inequality the quantity satisfies and
reporting holds/witness per instance.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .groups import Group, Subgroup, commuting_subgroups
from .util import is_prime

Probability = Fraction

# Every check family the engine knows; reports carry all of them, with zero
# instances where a family does not apply.
CHECK_TAGS = (
    "order-bounds",            # 1/|G| <= prob <= 1
    "fiber-conservation",      # root counts over all targets sum to |G|
    "coprime-certainty",       # prob == 1 exactly when gcd(r, |G|) == 1
    "centralizer-divisibility",  # gcd(r, |C(a)|) divides the root count of a
    "root-order-step",         # prime r: an r-th root has order |a| or r|a|
    "abelian-torsion",         # abelian: prob == 1 / #{x : x^r = e}
    "abelian-factor-formula",  # known cyclic factors: prob == 1/prod gcd(r, d_i)
    "product-rule",            # prob(A x B) == prob(A) * prob(B)
    "central-product",         # commuting A, B with AB = G: intersection formula
    "quotient-bound",          # prob(G) <= prob(G/N)
    "subgroup-bound",          # prob(H)/|G| <= prob(G)
    "sylow-bound",             # solvable, prime r: 1/|Sylow_r| <= prob
)


def _check_r(r):
    r = int(r)
    if r < 2:
        raise ValueError(f"power exponent must be >= 2, got {r}")
    return r


@dataclass(frozen=True)
class PowerImage:
    """The multiset structure of the r-th power map of one group."""

    group: Group
    r: int
    fiber_count: np.ndarray  # fiber_count[a] = #{x : x^r = a}
    image_ids: np.ndarray    # sorted ids with a nonzero fiber

    @property
    def image_size(self):
        return int(self.image_ids.size)


def power_image(g: Group, r: int) -> PowerImage:
    """Exhaustive r-th power map: raise every element, tally the fibers."""
    r = _check_r(r)
    powers = g.pow_all(r)
    fibers = np.bincount(powers, minlength=g.order)
    img = PowerImage(g, r, fibers, np.flatnonzero(fibers).astype(np.int64))
    assert int(fibers.sum()) == g.order
    return img


def prob_r(g: Group, r: int) -> Probability:
    """|G^r| / |G| as a reduced rational."""
    return Fraction(power_image(g, r).image_size, g.order)


def root_count(g: Group, a: int, r: int) -> int:
    """Number of solutions of x^r = a."""
    return int(power_image(g, r).fiber_count[a])


def abelian_prob_formula(invariant_factors, r: int) -> Probability:
    """Closed form 1 / prod gcd(r, d_i) for a product of cyclic groups.

    Valid for any cyclic decomposition, invariant-factor form or not, since
    the r-torsion of a direct product is the product of the factors'."""
    r = _check_r(r)
    factors = [int(d) for d in invariant_factors]
    if any(d < 2 for d in factors):
        raise ValueError("cyclic factors must be at least 2")
    return Fraction(1, prod(gcd(r, d) for d in factors))


def coprime_criterion(g: Group, r: int) -> bool:
    """gcd(r, |G|) == 1; equivalent to prob == 1 (checked by the engine)."""
    return gcd(_check_r(r), g.order) == 1


# ---------------------------------------------------------------------------
# verification engine
# ---------------------------------------------------------------------------

@dataclass
class Check:
    """Outcome of one verified instance.

    ``holds`` is None for hypothesis-degenerate instances that are recorded
    but carry no pass/fail meaning; ``asserted`` marks checks whose failure
    fails a verification run.
    """

    tag: str
    instance: str
    holds: bool | None
    asserted: bool = True
    witness_ids: tuple = ()
    detail: str = ""

    @property
    def failed(self):
        return self.asserted and self.holds is False


@dataclass
class VerificationReport:
    group_name: str
    r: int
    checks: list = field(default_factory=list)

    def add(self, tag, instance, holds, asserted=True, witness_ids=(), detail=""):
        assert tag in CHECK_TAGS, tag
        self.checks.append(
            Check(tag, instance, holds, asserted, tuple(int(w) for w in witness_ids), detail)
        )

    def tag_counts(self):
        counts = {tag: 0 for tag in CHECK_TAGS}
        for c in self.checks:
            counts[c.tag] += 1
        return counts

    def failures(self):
        return [c for c in self.checks if c.failed]

    def degenerate(self):
        return [c for c in self.checks if c.holds is None]

    @property
    def ok(self):
        return not self.failures()

    def extend(self, other):
        assert other.group_name == self.group_name and other.r == self.r
        self.checks.extend(other.checks)
        return self


@dataclass(frozen=True)
class VerifyBudget:
    """Structural sweep limits: exhaustive lattice below, sampling above."""

    exhaustive_order: int = 200
    samples: int = 100
    seed: int = 0


def _structural_subgroups(g: Group, budget: VerifyBudget):
    if g.order <= budget.exhaustive_order:
        return g.subgroup_lattice(), True
    subs = g.sampled_subgroups(budget.samples, budget.seed)
    have = {s.member_ids.tobytes() for s in subs}
    for extra in (g.trivial_subgroup(), g.whole_subgroup(), g.center()):
        if extra.member_ids.tobytes() not in have:
            subs.append(extra)
            have.add(extra.member_ids.tobytes())
    return sorted(subs, key=lambda s: (s.order, s.member_ids.tobytes())), False


def _power_set(g: Group, ids, r):
    return np.unique(g.pow_vec(ids, r))


def _is_product_closed(g: Group, ids):
    prods = g.mul_vec(np.repeat(ids, ids.size), np.tile(ids, ids.size))
    return bool(np.isin(prods, ids).all())


def _sub_prob(g: Group, sub: Subgroup, r) -> Fraction:
    return Fraction(int(_power_set(g, sub.member_ids, r).size), sub.order)


def verify_suite(g: Group, r: int, budget: VerifyBudget | None = None) -> VerificationReport:
    """Evaluate every applicable identity/inequality on one (group, r) cell.

    Never raises on a mathematical failure; everything lands in the report.
    """
    r = _check_r(r)
    budget = budget or VerifyBudget()
    rep = VerificationReport(g.name, r)
    n = g.order
    img = power_image(g, r)
    p = Fraction(img.image_size, n)

    rep.add("order-bounds", f"1/{n} <= {p} <= 1", Fraction(1, n) <= p <= 1)
    rep.add(
        "fiber-conservation",
        f"sum of root counts == {n}",
        int(img.fiber_count.sum()) == n,
    )
    rep.add(
        "coprime-certainty",
        f"prob == 1 iff gcd({r}, {n}) == 1",
        (p == 1) == (gcd(r, n) == 1),
    )

    cent = g.centralizer_sizes()
    divisor = np.gcd(cent, r)
    bad = np.flatnonzero(img.fiber_count % divisor != 0)
    rep.add(
        "centralizer-divisibility",
        f"gcd({r}, |C(a)|) | root_count(a) for all {n} elements",
        bad.size == 0,
        witness_ids=bad[:8],
    )

    if g.is_abelian():
        torsion = int(img.fiber_count[0])  # #{x : x^r = e}
        rep.add(
            "abelian-torsion",
            f"prob == 1/{torsion}",
            p == Fraction(1, torsion),
        )
        factors = g.meta.get("cyclic_factors")
        if factors is not None and factors:
            rep.add(
                "abelian-factor-formula",
                f"prob == 1/prod gcd({r}, d) over {factors}",
                p == abelian_prob_formula(factors, r),
            )

    if "factors" in g.meta:
        left, right = g.meta["factors"]
        rep.add(
            "product-rule",
            f"prob({g.name}) == prob({left.name}) * prob({right.name})",
            p == prob_r(left, r) * prob_r(right, r),
        )

    subs, exhaustive = _structural_subgroups(g, budget)

    for sub in subs:
        hp = _sub_prob(g, sub, r)
        rep.add(
            "subgroup-bound",
            f"prob(H{sub.order})/{n} <= prob",
            Fraction(hp, n) <= p,
            detail=sub.describe(),
        )

    normals = [s for s in subs if g.is_normal(s)]
    for nsub in normals:
        if nsub.is_whole():
            continue
        quo = g.quotient(nsub)
        rep.add(
            "quotient-bound",
            f"prob(G) <= prob(G/N{nsub.order})",
            p <= prob_r(quo, r),
            detail=nsub.describe(),
        )

    # commuting pairs A, B with AB = G; the intersection formula is only
    # asserted on A ^ B = 1 instances (internal direct products), where it
    # always holds; overlapping or non-closed power sets are recorded only.
    for i, a in enumerate(subs):
        for b in subs[i:]:
            if a.order * b.order % n != 0:
                continue
            inter = int(np.intersect1d(a.member_ids, b.member_ids).size)
            if a.order * b.order != n * inter:  # AB != G
                continue
            if not commuting_subgroups(g, a, b):
                continue
            ar = _power_set(g, a.member_ids, r)
            br = _power_set(g, b.member_ids, r)
            pr_inter = int(np.intersect1d(ar, br).size)
            formula = Fraction(_sub_prob(g, a, r) * _sub_prob(g, b, r), pr_inter)
            closed = _is_product_closed(g, ar) and _is_product_closed(g, br)
            if inter == 1:
                rep.add(
                    "central-product",
                    f"A{a.order} x B{b.order} = G: prob == prob(A)prob(B)/|A^r n B^r|",
                    p == formula,
                )
            else:
                rep.add(
                    "central-product",
                    f"A{a.order}.B{b.order} = G overlap {inter}: formula recorded",
                    None if not closed else (p == formula),
                    asserted=False,
                    detail="hypothesis-degenerate" if not closed else "overlap-only",
                )

    if is_prime(r) and g.is_solvable():
        syl = g.sylow_subgroup(r)
        rep.add(
            "sylow-bound",
            f"1/|P_{r}| = 1/{syl.order} <= prob",
            Fraction(1, syl.order) <= p,
        )

    rep.checks.sort(key=lambda c: (c.tag, c.instance))
    return rep


def root_order_check(g: Group, r: int) -> VerificationReport:
    """For prime r and every pair (x, a = x^r): |x| is |a| or r*|a|."""
    r = _check_r(r)
    if not is_prime(r):
        raise ValueError(f"root-order check needs a prime exponent, got {r}")
    rep = VerificationReport(g.name, r)
    orders = g.orders()
    target = orders[g.pow_all(r)]
    ok = (orders == target) | (orders == r * target)
    bad = np.flatnonzero(~ok)
    rep.add(
        "root-order-step",
        f"|x| in {{|x^{r}|, {r}|x^{r}|}} for all {g.order} elements",
        bad.size == 0,
        witness_ids=bad[:8],
    )
    return rep


__all__ = [
    "Probability",
    "PowerImage",
    "power_image",
    "prob_r",
    "root_count",
    "abelian_prob_formula",
    "coprime_criterion",
    "Check",
    "CHECK_TAGS",
    "VerificationReport",
    "VerifyBudget",
    "verify_suite",
    "root_order_check",
]
