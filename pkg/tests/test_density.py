from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grouproots.density import (
    density_trace,
    near_one_prob,
    realize_trace,
    small_prob_group,
)
from grouproots.errors import InvalidTarget, NonPrime
from grouproots.groups import abelian_group
from grouproots.roots import prob_r


def oracle_band(y: Fraction, r: int):
    """Independent band search by direct Fraction comparison."""
    # exact edge (r^k - 1)/r^k with k >= 2 takes the band below and stops
    for k in range(2, 130):
        if y == Fraction(r**k - 1, r**k):
            return k - 1, True
    n = 0
    while not (Fraction(r**n - 1, r**n) <= y < Fraction(r**(n + 1) - 1, r**(n + 1))):
        n += 1
    return n, False


def oracle_trace(x: Fraction, r: int, eps: Fraction, max_steps=64):
    """Re-run the iteration from scratch as a plain loop over Fractions."""
    m = 0
    while r ** (m + 1) * x < 1:
        m += 1
    y = x * r**m
    b = Fraction(1)
    ns, predicted = [], Fraction(1, r**m)
    while abs(predicted - x) >= eps and len(ns) < max_steps:
        n, exact = oracle_band(y / b, r)
        ns.append(n)
        b *= Fraction(r ** (n + 1) - 1, r ** (n + 1))
        predicted = b / r**m
        if exact:
            break
    return m, ns, predicted


def test_half_trace_matches_hand_iteration():
    t = density_trace(Fraction(1, 2), 2, eps=Fraction(1, 100))
    assert t.m == 0
    assert [s.n for s in t.steps[:3]] == [1, 1, 3]
    assert [s.predicted for s in t.steps[:3]] == [
        Fraction(3, 4), Fraction(9, 16), Fraction(135, 256)]
    assert t.converged and not t.exact
    assert t.error < Fraction(1, 100)
    assert t.descriptor.startswith("H_2 x H_2 x H_4")


def test_band_edge_k1_continues():
    # x = 1/2 = (2^1 - 1)/2^1 sits on the first band edge; the iteration
    # proceeds through band 1 with lower bound equal to x
    t = density_trace(Fraction(1, 2), 2, eps=Fraction(1, 100))
    assert t.steps[0].lower == Fraction(1, 2) == t.steps[0].y
    assert t.steps[0].factor == Fraction(3, 4)


def test_band_edge_k2_terminates_exactly():
    t = density_trace(Fraction(3, 4), 2)
    assert t.m == 0
    assert len(t.steps) == 1 and t.steps[0].exact_hit
    assert t.steps[0].factor == Fraction(3, 4)
    assert t.exact and t.predicted == Fraction(3, 4)
    assert t.descriptor == "H_2"


def test_band_edge_higher_rank_terminates():
    t = density_trace(Fraction(7, 8), 2)
    assert t.exact and len(t.steps) == 1 and t.steps[0].n == 2
    assert t.descriptor == "H_3"


def test_scaled_trace_x_eighth():
    t = density_trace(Fraction(1, 8), 2, eps=Fraction(1, 100))
    assert t.m == 2
    assert [s.n for s in t.steps] == [1, 1, 3]
    assert t.descriptor == "C2^2 x H_2 x H_2 x H_4"


@pytest.mark.parametrize("r", [2, 3, 5])
def test_trace_matches_oracle_on_grid(r):
    eps = Fraction(1, 10_000)
    for den in (3, 7, 10, 64, 97, 100, 381, 1000):
        for num in (1, den // 2, den - 1):
            if not 0 < num < den:
                continue
            x = Fraction(num, den)
            t = density_trace(x, r, eps=eps)
            m, ns, predicted = oracle_trace(x, r, eps)
            assert (t.m, [s.n for s in t.steps], t.predicted) == (m, ns, predicted), x


def test_loop_invariant_and_monotonicity():
    eps = Fraction(1, 10**6)
    for x in (Fraction(1, 3), Fraction(2, 7), Fraction(9, 16), Fraction(137, 971)):
        for r in (2, 3, 5):
            t = density_trace(x, r, eps=eps, max_steps=200)
            last_n = 0
            for s in t.steps:
                assert s.lower <= s.y
                assert s.y < s.factor or (s.exact_hit and s.y == s.factor)
                assert s.n >= last_n
                last_n = s.n
            # predicted values strictly decrease and stay >= x
            preds = [s.predicted for s in t.steps]
            assert all(a > b for a, b in zip(preds, preds[1:]))
            assert all(p >= t.x for p in preds)
            assert t.converged


def test_low_band_needed_for_odd_r():
    # for r >= 3 the renormalized target can fall below (r-1)/r; band 0
    # supplies the factor (r-1)/r there
    t = density_trace(Fraction(1, 2), 3, eps=Fraction(1, 10_000))
    assert t.steps[0].n == 0
    assert t.steps[0].factor == Fraction(2, 3)
    assert t.converged


def test_target_validation():
    with pytest.raises(InvalidTarget):
        density_trace(Fraction(2), 2)
    with pytest.raises(InvalidTarget):
        density_trace(Fraction(0), 2)
    with pytest.raises(NonPrime):
        density_trace(Fraction(1, 2), 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 1000), st.integers(1, 999), st.sampled_from([2, 3, 5]))
def test_convergence_property(den, num, r):
    if num >= den:
        return
    t = density_trace(Fraction(num, den), r, eps=Fraction(1, 10_000), max_steps=64)
    assert t.converged
    assert t.error < Fraction(1, 10_000)


def test_small_prob_group_examples():
    assert small_prob_group(2, Fraction(1, 10)) == ("C2^4", Fraction(1, 16), 4)
    assert small_prob_group(3, Fraction(1, 2)) == ("C3", Fraction(1, 3), 1)
    assert small_prob_group(2, Fraction(1)) == ("C2", Fraction(1, 2), 1)
    # realizability: the named group enumerates to the claimed value
    desc, value, k = small_prob_group(2, Fraction(1, 10))
    assert prob_r(abelian_group([2] * k), 2) == value


def test_near_one_examples(psl25):
    assert near_one_prob(2, Fraction(1, 10)) == ("H_4", Fraction(15, 16), 4)
    desc, value, k = near_one_prob(2, Fraction(1, 3))
    assert (desc, value, k) == ("H_2", Fraction(3, 4), 2)
    assert prob_r(psl25, 2) == value  # rank 2 is concrete
    # strict inequality: at eps = 1/5 the rank-1 value 4/5 equals 1 - eps,
    # violating the open interval, so rank 2 is the least admissible
    assert near_one_prob(5, Fraction(1, 5)) == ("H_2", Fraction(24, 25), 2)
    assert near_one_prob(5, Fraction(21, 100)) == ("H_1", Fraction(4, 5), 1)


def test_near_one_bounds():
    for r in (2, 3, 5):
        for eps in (Fraction(1, 7), Fraction(1, 100)):
            _, value, _ = near_one_prob(r, eps)
            assert 1 - eps < value < 1


def test_realize_trace_prefixes(psl25):
    t = density_trace(Fraction(1, 2), 2, eps=Fraction(1, 100))
    realized = realize_trace(t)
    # ranks are 2, 2, 4: the first two steps realize, the rank-4 step stops it
    assert [p.steps_used for p in realized] == [1, 2]
    assert realized[0].enumerated == Fraction(3, 4)
    assert realized[1].enumerated == Fraction(9, 16)
    assert all(p.match for p in realized)
    assert realized[1].order == 3600


def test_realize_trace_with_scaling():
    t = density_trace(Fraction(3, 8), 2)  # m = 1, y = 3/4: C2 x H_2 exactly
    assert t.m == 1 and t.exact
    realized = realize_trace(t)
    assert realized[0].group_name == "C2"
    assert realized[-1].enumerated == Fraction(3, 8)
    assert all(p.match for p in realized)


def test_realize_trace_rank1_uses_c2():
    # r=2 traces never need band 0, but a hand-built trace exercises the path
    t = density_trace(Fraction(127, 256), 2, eps=Fraction(1, 1000))
    realized = realize_trace(t)
    assert all(p.match for p in realized)


def test_realize_requires_r2():
    t = density_trace(Fraction(1, 2), 3)
    with pytest.raises(ValueError):
        realize_trace(t)
