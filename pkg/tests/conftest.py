import numpy as np
import pytest

from grouproots.groups import Perm, generate


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Touch every kernel once so JIT compilation stays out of timed sections."""
    g = generate([Perm.from_cycles([(1, 2, 3)]), Perm.from_cycles([(1, 2)], degree=3)])
    g.pow_all(2)
    g.orders()
    g.conjugacy_classes()
    g.centralizer_sizes()
    g.subgroup([1])
    from grouproots.fields import field_new
    from grouproots.psl2 import psl2, sl2

    sl2(field_new(3)).pow_all(2)
    p = psl2(field_new(5))
    p.pow_all(2)
    return None


@pytest.fixture(scope="session")
def psl25():
    from grouproots.fields import field_new
    from grouproots.psl2 import psl2

    return psl2(field_new(5))


def naive_group_table(elements, mul):
    """Independent Cayley-table builder from raw element objects.

    Pure-python oracle used to cross-check the production enumeration; the
    element list must start with the identity.
    """
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    return table


def naive_power_fibers(table, r):
    """Oracle: fiber sizes of x -> x^r by plain repeated multiplication."""
    n = table.shape[0]
    fibers = [0] * n
    for x in range(n):
        acc = 0
        for _ in range(r):
            acc = int(table[acc, x])
        fibers[acc] += 1
    return fibers
