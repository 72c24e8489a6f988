"""Exact-rational iteration approximating any target in (0,1) by products
of achievable r-th root probabilities.

For a prime r, the building blocks are 1/r^m (elementary abelian groups)
and the near-one values (r^k - 1)/r^k, attributed to a hypothesized family
H_k of groups with an elementary abelian rank-k r-Sylow subgroup and
probability 1 - 1/r^k.  For r = 2 the first two ranks are concrete:
H_1 = C2 and H_2 = PSL(2,5), so short traces can be realized and checked
against actual enumeration.

All arithmetic is exact; numerators and denominators grow multiplicatively,
so traces are capped by max_steps (default 64).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidTarget, NonPrime
from .util import is_prime


@dataclass(frozen=True)
class DensityStep:
    """One factor of the trace: band exponent n, band ends, running product."""

    n: int
    lower: Fraction       # (r^n - 1) / r^n
    factor: Fraction      # (r^(n+1) - 1) / r^(n+1)
    before: Fraction      # product of earlier factors
    predicted: Fraction   # (1/r^m) * product including this factor
    y: Fraction           # renormalized target this step classified
    exact_hit: bool       # y equals the factor: the trace terminates exactly


@dataclass(frozen=True)
class DensityTrace:
    x: Fraction
    r: int
    eps: Fraction
    max_steps: int
    m: int
    steps: tuple
    predicted: Fraction
    converged: bool
    exact: bool

    @property
    def descriptor(self):
        """Symbolic factor list: C_r^m times one H_{n+1} per step."""
        parts = []
        if self.m:
            parts.append(f"C{self.r}^{self.m}" if self.m > 1 else f"C{self.r}")
        parts.extend(f"H_{s.n + 1}" for s in self.steps)
        return " x ".join(parts) if parts else "C1"

    @property
    def error(self):
        return abs(self.predicted - self.x)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidTarget(f"expected an exact rational, got {x!r}")


def _power_exponent(value, base):
    """k with value == base**k, or None."""
    k = 0
    while value % base == 0 and value > 1:
        value //= base
        k += 1
    return k if value == 1 else None


def _band(y: Fraction, r: int):
    """Band exponent for y in [1/r, 1): the n with lower(n) <= y < lower(n+1).

    A y sitting exactly on a band edge (r^k - 1)/r^k with k >= 2 instead
    takes the band below, making that factor equal y and the trace land on
    the target exactly; the k = 1 edge has no band below it (n stays >= 0,
    and for r = 2 the edge 1/2 opens band 1, keeping the factor below 1).
    """
    num, den = y.numerator, y.denominator
    if num == den - 1:
        k = _power_exponent(den, r)
        if k is not None and k >= 2:
            return k - 1, True
    n = 0
    while r ** (n + 1) * (den - num) <= den:
        n += 1
    return n, False


def density_trace(x, r: int, eps=Fraction(1, 10_000), max_steps: int = 64) -> DensityTrace:
    """Run the band iteration toward x until |predicted - x| < eps.

    m is the least exponent with r^m * x >= 1/r, so y = r^m * x lands in
    [1/r, 1); each step peels off the factor (r^(n+1)-1)/r^(n+1) of the band
    holding the renormalized target.  The loop invariant lower <= y_i <=
    factor holds at every step, strictly on the right except at an exact
    terminal hit.
    """
    x = _as_fraction(x)
    r = int(r)
    eps = _as_fraction(eps)
    if not 0 < x < 1:
        raise InvalidTarget(f"target must lie strictly between 0 and 1, got {x}")
    if not is_prime(r):
        raise NonPrime(f"the exponent prime r must be prime, got {r}")
    if eps <= 0:
        raise ValueError("eps must be positive")

    m = 0
    while r ** (m + 1) * x < 1:
        m += 1
    y = x * r**m
    scale = Fraction(1, r**m)

    steps = []
    b = Fraction(1)
    predicted = scale
    while abs(predicted - x) >= eps and len(steps) < max_steps:
        yi = y / b
        n, exact = _band(yi, r)
        lower = Fraction(r**n - 1, r**n)
        factor = Fraction(r ** (n + 1) - 1, r ** (n + 1))
        assert lower <= yi and (yi < factor or (exact and yi == factor))
        if steps:
            assert n >= steps[-1].n, "band exponents must not decrease"
        before = b
        b = b * factor
        predicted = scale * b
        steps.append(DensityStep(n, lower, factor, before, predicted, yi, exact))
        assert b >= y
        if exact:
            break

    return DensityTrace(
        x=x,
        r=r,
        eps=eps,
        max_steps=max_steps,
        m=m,
        steps=tuple(steps),
        predicted=predicted,
        converged=abs(predicted - x) < eps,
        exact=predicted == x,
    )


def small_prob_group(r: int, eps):
    """Least rank k with 1/r^k < eps; the group C_r^k attains it.

    Returns (descriptor, probability, k).
    """
    r = int(r)
    if not is_prime(r):
        raise NonPrime(f"{r} is not prime")
    eps = _as_fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must be in (0, 1]")
    k = 1
    while Fraction(1, r**k) >= eps:
        k += 1
    desc = f"C{r}^{k}" if k > 1 else f"C{r}"
    return desc, Fraction(1, r**k), k


def near_one_prob(r: int, eps):
    """Least rank k with 1/r^k < eps; the hypothesized H_k sits above 1 - eps.

    Returns (descriptor, probability, k).  No group is constructed: only
    r = 2 has concrete small-rank realizations.
    """
    r = int(r)
    if not is_prime(r):
        raise NonPrime(f"{r} is not prime")
    eps = _as_fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must be in (0, 1]")
    k = 1
    while Fraction(1, r**k) >= eps:
        k += 1
    return f"H_{k}", Fraction(r**k - 1, r**k), k


# ---------------------------------------------------------------------------
# realization of r = 2 traces with concrete groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealizedPrefix:
    steps_used: int
    group_name: str
    order: int
    predicted: Fraction
    enumerated: Fraction

    @property
    def match(self):
        return self.predicted == self.enumerated


def realize_trace(trace: DensityTrace, cap=None):
    """Realize prefixes of an r = 2 trace with C2 (H_1) and PSL(2,5) (H_2).

    Each realizable prefix (all step ranks <= 2, product order within cap)
    is built as an explicit direct product; its enumerated probability is
    compared exactly against the trace's predicted partial product.
    Returns the list of prefix records; stops at the first step whose rank
    has no concrete realization or whose product would exceed the cap.
    """
    from .errors import CapExceeded
    from .fields import field_new
    from .groups import abelian_group, default_cap, direct_product
    from .psl2 import psl2
    from .roots import prob_r

    if trace.r != 2:
        raise ValueError("concrete realizations are only wired up for r = 2")
    cap = default_cap() if cap is None else int(cap)

    out = []
    current = abelian_group([2] * trace.m) if trace.m else None
    if current is not None:
        enum = prob_r(current, 2)
        out.append(RealizedPrefix(0, current.name, current.order, Fraction(1, 2**trace.m), enum))
    for i, step in enumerate(trace.steps, start=1):
        if step.n == 0:
            factor = abelian_group([2])
        elif step.n == 1:
            factor = psl2(field_new(5))
        else:
            break  # no concrete group wired up for rank n+1 >= 3
        try:
            current = factor if current is None else direct_product(current, factor, cap=cap)
        except CapExceeded:
            break
        out.append(
            RealizedPrefix(i, current.name, current.order, step.predicted, prob_r(current, 2))
        )
    return out


__all__ = [
    "DensityStep",
    "DensityTrace",
    "density_trace",
    "small_prob_group",
    "near_one_prob",
    "RealizedPrefix",
    "realize_trace",
]
