from fractions import Fraction

import numpy as np
import pytest

from grouproots.errors import CapExceeded
from grouproots.fields import field_new
from grouproots.psl2 import (
    Mat2,
    gl2,
    projection_to_psl,
    psl2,
    psl2_prob_formula,
    psl2_scan,
    sl2,
    distinguished_classes,
)
from grouproots.roots import power_image, prob_r


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_sl2_order(q):
    assert sl2(field_new(q)).order == q * (q * q - 1)


@pytest.mark.parametrize("q", [4, 5, 7, 9, 13])
def test_psl2_order(q):
    # q(q^2-1)/gcd(2, q-1): enumeration arbitrates the displayed order
    expect = q * (q * q - 1) // (2 if q % 2 else 1)
    assert psl2(field_new(q)).order == expect


def test_gl2_order():
    for q in (2, 3, 4, 5):
        assert gl2(field_new(q)).order == (q * q - 1) * (q * q - q)


def test_sl2_q2_is_s3():
    g = sl2(field_new(2))
    assert g.order == 6
    assert sorted(g.orders().tolist()) == [1, 2, 2, 2, 3, 3]
    assert not g.is_abelian()


def test_psl2_caps():
    with pytest.raises(CapExceeded):
        sl2(field_new(61), cap=200_000)  # order 226920
    with pytest.raises(CapExceeded):
        psl2(field_new(13), cap=1000)
    with pytest.raises(CapExceeded):
        psl2(field_new(67))


def test_mat2_arithmetic_oracle():
    f = field_new(7)
    a = Mat2(f, (1, 2, 3, 4))
    b = Mat2(f, (0, 1, 6, 2))
    prod = a * b
    # plain integer matrix product mod 7
    m = [[1, 2], [3, 4]]
    n = [[0, 1], [6, 2]]
    expect = [(m[i][0] * n[0][j] + m[i][1] * n[1][j]) % 7 for i in range(2) for j in range(2)]
    assert list(prod.e) == expect
    inv = Mat2(f, (1, 1, 0, 1)).inverse()
    assert list(inv.e) == [1, 6, 0, 1]


def test_split_element_order_in_psl2_13():
    # diag(nu, 1/nu) has order q-1 = 12 in SL, halved to 6 in PSL
    f = field_new(13)
    s = sl2(f)
    p = psl2(f)
    from grouproots.fields import primitive_element

    nu = primitive_element(f).index
    row = np.array([nu, 0, 0, int(f.inv_t[nu])], dtype=np.int64)
    sl_id = int(s.meta["matrix_ops"].resolve_rows(row[None, :])[0])
    psl_id = int(p.meta["matrix_ops"].resolve_rows(row[None, :])[0])
    assert s.element_order(sl_id) == 12
    assert p.element_order(psl_id) == 6


def test_unipotent_centralizer_psl2_5(psl25):
    ops = psl25.meta["matrix_ops"]
    c = int(ops.resolve_rows(np.array([[1, 0, 1, 1]], dtype=np.int64))[0])
    assert psl25.centralizer(c).order == 5


def test_split_normalizer_psl2_5(psl25):
    # the cyclic <a> has normalizer of order q-1 = 4
    f = field_new(5)
    from grouproots.fields import primitive_element

    nu = primitive_element(f).index
    ops = psl25.meta["matrix_ops"]
    a = int(ops.resolve_rows(np.array([[nu, 0, 0, int(f.inv_t[nu])]], dtype=np.int64))[0])
    sub = psl25.subgroup([a])
    assert psl25.normalizer(sub).order == 4
    assert psl25.order // psl25.normalizer(sub).order == 15  # conjugates of <a>


def test_psl2_5_class_sizes(psl25):
    assert sorted(psl25.conjugacy_classes().sizes.tolist()) == [1, 12, 12, 15, 20]


def test_distinguished_classes_q5(psl25):
    data = distinguished_classes(field_new(5))
    assert data.names == ["1", "c", "d", "a^1", "b^1"]
    assert data.measured == [60, 5, 5, 4, 3]
    assert data.measured == data.expected
    assert data.distinct_classes and data.class_equation_ok


def test_distinguished_classes_q13():
    data = distinguished_classes(field_new(13))
    assert data.names == ["1", "c", "d", "a^1", "a^2", "a^3", "b^1", "b^2", "b^3"]
    assert data.measured == [1092, 13, 13, 6, 6, 12, 7, 7, 7]
    assert data.measured == data.expected
    assert data.distinct_classes and data.class_equation_ok
    # the Singer image has order (q+1)/2 = 7
    b1 = data.rep_ids[data.names.index("b^1")]
    assert data.group.element_order(b1) == 7


def test_distinguished_classes_q9_reports_mismatch():
    # for q = p^f with f > 1 the unipotent centralizer measures q, not p;
    # the claim list is reported alongside, mismatches and all
    data = distinguished_classes(field_new(9))
    i = data.names.index("c")
    assert data.measured[i] == 9
    assert data.expected[i] == 3
    assert data.distinct_classes and data.class_equation_ok


def test_distinguished_classes_reject_even_q():
    with pytest.raises(ValueError):
        distinguished_classes(field_new(4))


def test_distinguished_classes_q7_no_claims():
    # q = 3 mod 4: elements come back without class-range claims, and the
    # representative list genuinely misses a class (the involutions)
    data = distinguished_classes(field_new(7))
    assert data.names == ["1", "c", "d", "a^1", "b^1"]
    assert data.measured == [168, 7, 7, 3, 4]
    assert data.expected == [None] * 5
    assert data.distinct_classes
    assert not data.class_equation_ok


def test_generate_from_matrix_backend():
    from grouproots.groups import generate

    f3 = field_new(3)
    g = generate([Mat2(f3, (1, 1, 0, 1)), Mat2(f3, (1, 0, 1, 1))])
    assert g.order == 24  # the transvections generate all of SL(2,3)
    assert sorted(g.orders().tolist()) == sorted(sl2(f3).orders().tolist())


def test_projection_is_homomorphism_exhaustive():
    for q in (5, 9, 13):
        f = field_new(q)
        s, p = sl2(f), psl2(f)
        proj = projection_to_psl(s, p)
        ids = np.arange(s.order, dtype=np.int64)
        for a in ids:  # full n^2 sweep, one row at a time
            lhs = proj[s.mul_vec(a, ids)]
            rhs = p.mul_vec(proj[a], proj[ids])
            assert (lhs == rhs).all()


def test_projection_is_homomorphism_sampled_q25():
    f = field_new(25)
    s, p = sl2(f), psl2(f)
    proj = projection_to_psl(s, p)
    rng = np.random.default_rng(11)
    a = rng.integers(0, s.order, 100_000)
    b = rng.integers(0, s.order, 100_000)
    assert (proj[s.mul_vec(a, b)] == p.mul_vec(proj[a], proj[b])).all()


def test_nonroot_count_identity_q5(psl25):
    img = power_image(psl25, 2)
    q = 5
    assert psl25.order - img.image_size == (q - 3) // 2 * psl25.order // (q - 1) == 15


def test_prob_formula_examples():
    assert psl2_prob_formula(5, 2) == (Fraction(3, 4), True)
    assert psl2_prob_formula(13, 6) == (Fraction(7, 12), False)
    assert psl2_prob_formula(9, 4) == (Fraction(5, 8), False)
    with pytest.raises(ValueError):
        psl2_prob_formula(3, 2)


def test_scan_rows(psl25):
    rows = psl2_scan([5], [2, 3])
    byr = {row.r: row for row in rows}
    assert byr[2].formula == Fraction(3, 4) and byr[2].enumerated == Fraction(3, 4)
    assert byr[2].agree and byr[2].hypothesis_ok
    # r=3: enumerated by brute force; cubes of PSL(2,5) miss the 3-elements
    assert byr[3].enumerated == Fraction(2, 3)
    assert not byr[3].agree and not byr[3].hypothesis_ok


def test_scan_q7_r3_observed_agreement():
    (row,) = psl2_scan([7], [3])
    assert row.formula == Fraction(2, 3)
    assert row.enumerated == Fraction(2, 3)  # brute force decides; it agrees
    assert row.agree and not row.hypothesis_ok


def test_scan_cap_note():
    rows = psl2_scan([13], [2], cap=500)
    assert rows[0].enumerated is None and rows[0].agree is None
    assert "cap" in rows[0].note


def test_scan_row_order_deterministic():
    rows = psl2_scan([9, 5], [3, 2])
    assert [(r.q, r.r) for r in rows] == [(5, 2), (5, 3), (9, 2), (9, 3)]
