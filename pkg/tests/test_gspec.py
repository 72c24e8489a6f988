import pytest
from hypothesis import given, settings, strategies as st

from grouproots.errors import CapExceeded, ParseError, SemanticError
from grouproots.gspec import (
    Alternating,
    Cyclic,
    Dihedral,
    ElementaryPower,
    GL2,
    PermGen,
    Product,
    PSL2,
    Quaternion8,
    SL2,
    Symmetric,
    parse_spec,
    pretty,
    realize,
)


def test_parse_examples():
    assert parse_spec("C2^3 x S4") == Product(
        (ElementaryPower(Cyclic(2), 3), Symmetric(4)))
    assert parse_spec("PSL(2,5)") == PSL2(5)
    assert parse_spec("Perm[(1 2 3)(4 5), (1 2)]") == PermGen(
        (((1, 2, 3), (4, 5)), ((1, 2),)))


def test_parse_whitespace_insensitive():
    assert parse_spec(" C2 ^ 3  x  S4 ") == parse_spec("C2^3xS4")
    assert parse_spec("PSL(2, 5 )") == PSL2(5)


def test_parse_families():
    assert parse_spec("Q8") == Quaternion8()
    assert parse_spec("SL(2,3)") == SL2(3)
    assert parse_spec("GL(2,4)") == GL2(4)
    assert parse_spec("A5") == Alternating(5)
    assert parse_spec("D6") == Dihedral(6)


def test_power_binds_tighter_than_product():
    spec = parse_spec("C2^2 x C3^3")
    assert spec == Product((ElementaryPower(Cyclic(2), 2), ElementaryPower(Cyclic(3), 3)))


def test_power_of_one_collapses():
    assert parse_spec("C4^1") == Cyclic(4)


def test_parse_error_offsets():
    for text, offset in [("C2 x", 4), ("", 0), ("C2 & C3", 3), ("Perm[(1 2]", 9)]:
        with pytest.raises(ParseError) as exc:
            parse_spec(text)
        assert 0 <= exc.value.offset <= len(text), text
        assert exc.value.offset == offset, (text, exc.value.offset)
        assert exc.value.expected  # the expected-token set travels with it


def test_semantic_errors():
    for text in ("PSL(2,6)", "SL(2,12)", "GL(2,0)", "C0", "S1", "D2", "A1",
                 "Perm[(0 1)]", "Perm[(1 1)]", "C2^0"):
        with pytest.raises(SemanticError):
            parse_spec(text)


@pytest.mark.parametrize("text,order", [
    ("C2^2", 4),
    ("PSL(2,5)", 60),
    ("D4", 8),
    ("Q8", 8),
    ("S4", 24),
    ("A4", 12),
    ("A3", 3),
    ("A2", 1),
    ("S2", 2),
    ("SL(2,3)", 24),
    ("GL(2,3)", 48),
    ("C1", 1),
    ("C1 x C1", 1),
    ("S3^2", 36),
    ("C2 x C3", 6),
    ("Perm[(1 2 3), (1 2)]", 6),
    ("Perm[(1 2)(3 4), (1 3)(2 4)]", 4),
])
def test_realize_orders(text, order):
    assert realize(text).order == order


def test_realize_dihedral_convention():
    # "Dn" is the dihedral group of order 2n
    for n in (3, 4, 7, 9):
        g = realize(f"D{n}")
        assert g.order == 2 * n
        assert max(g.orders()) == n if n > 2 else True


def test_realize_product_order_multiplies():
    for a, b in (("C4", "S3"), ("Q8", "C3"), ("D4", "C2^2")):
        ga, gb, gab = realize(a), realize(b), realize(f"{a} x {b}")
        assert gab.order == ga.order * gb.order


def test_realize_cap():
    with pytest.raises(CapExceeded):
        realize("C100 x C100", cap=5000)
    with pytest.raises(CapExceeded):
        realize("SL(2,61)", cap=200_000)


def test_realize_symmetric_matches_factorial():
    import math

    for n in (2, 3, 4, 5, 6):
        assert realize(f"S{n}").order == math.factorial(n)
        if n >= 3:
            assert realize(f"A{n}").order == math.factorial(n) // 2


# -- round trip -----------------------------------------------------------------

_family = st.one_of(
    st.integers(1, 12).map(Cyclic),
    st.integers(2, 6).map(Symmetric),
    st.integers(2, 6).map(Alternating),
    st.integers(3, 12).map(Dihedral),
    st.just(Quaternion8()),
    st.sampled_from([2, 3, 4, 5, 7, 8, 9]).map(PSL2),
    st.sampled_from([2, 3, 4, 5]).map(SL2),
    st.sampled_from([2, 3, 4]).map(GL2),
    st.lists(
        st.lists(
            st.lists(st.integers(1, 9), min_size=2, max_size=4, unique=True).map(tuple),
            min_size=1, max_size=2,
        ).map(tuple),
        min_size=1, max_size=2,
    ).map(lambda ps: PermGen(tuple(ps))),
)

_term = st.one_of(_family, st.tuples(_family, st.integers(2, 4)).map(
    lambda t: ElementaryPower(*t)))

_spec = st.one_of(_term, st.lists(_term, min_size=2, max_size=3).map(
    lambda ps: Product(tuple(ps))))


@settings(max_examples=200, deadline=None)
@given(_spec)
def test_round_trip(spec):
    assert parse_spec(pretty(spec)) == spec


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="CSADQPGLerm[]()^x0123456789, ", max_size=24))
def test_parse_never_panics_fuzz(text):
    try:
        spec = parse_spec(text)
    except ParseError as exc:
        assert 0 <= exc.offset <= len(text)
    except SemanticError:
        pass
    else:
        assert parse_spec(pretty(spec)) == spec


def test_parse_never_panics_on_junk():
    for text in ("x", "^2", "C", "S", "PSL", "Perm", "Perm[", "Perm[]",
                 "C2^^2", "C2 xx C3", ")(", "C2)", "((("):
        with pytest.raises((ParseError, SemanticError)) as exc:
            parse_spec(text)
        if isinstance(exc.value, ParseError):
            assert 0 <= exc.value.offset <= len(text)
