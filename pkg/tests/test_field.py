"""Field arithmetic: exactness, ultrametric laws, square roots and classes."""

import math
from fractions import Fraction

import pytest

from nonarch.errors import (
    DivisionByZero,
    DyadicField,
    InvalidParam,
    NotIntegral,
    PrecisionExhausted,
)
from nonarch.field import (
    FieldElement,
    FieldParams,
    hensel_sqrt,
    lift_residue,
    nonsquare_unit,
    ord_abs,
    parse_field_spec,
    reduce_element,
    square_class,
    square_class_label,
)
from nonarch.residue import legendre
from nonarch.sampling import RandomStream, uniform_integer


def unit_stream(field, seed, tag="units"):
    rng = RandomStream(seed)
    i = 0
    while True:
        x = uniform_integer(field, rng.child(tag, i))
        i += 1
        if not x.is_zero() and x.ord == 0:
            yield x


# -- construction and the basic examples -------------------------------------


def test_one_plus_two_carries(q3):
    s = q3.one() + q3.from_int(2)
    assert s.ord == 1 and s.digits[0] == 1
    assert s.agrees(q3.from_int(3))


def test_valuations_add_under_mul(q3):
    a = q3.uniformizer_pow(-2)
    b = q3.uniformizer_pow(3)
    assert (a * b) == q3.uniformizer_pow(1)


def test_inverse_of_two_digit_expansion(q3):
    inv = q3.from_int(2).inverse()
    assert inv.ord == 0
    assert inv.digits[:4] == (2, 1, 1, 1)
    assert (q3.from_int(2) * inv).agrees(q3.one())


def test_ord_abs_examples(q3, q5):
    assert ord_abs(q3.zero()) == (math.inf, Fraction(0))
    assert ord_abs(q3.uniformizer_pow(-2)) == (-2, Fraction(9))
    assert ord_abs(q5.from_int(5)) == (1, Fraction(1, 5))


def test_reduce_and_lift_roundtrip(q5):
    assert reduce_element(q5.uniformizer_pow(1)).value == 0
    x = q5.one() + q5.uniformizer_pow(1) * q5.from_int(3)
    assert reduce_element(x).value == 1
    lifted = lift_residue(q5, 2)
    assert lifted == q5.from_int(2)
    assert reduce_element(lifted).value == 2
    with pytest.raises(NotIntegral):
        reduce_element(q5.uniformizer_pow(-1))


def test_division_by_zero(q3):
    with pytest.raises(DivisionByZero):
        q3.zero().inverse()


def test_precision_exhausted_carries_certificate(q3):
    x = q3.from_int(7)
    with pytest.raises(PrecisionExhausted) as info:
        x - x
    assert info.value.guaranteed_ord == q3.precision


def test_field_spec_roundtrip():
    f = parse_field_spec("laurent:p=5,prec=9")
    assert (f.family, f.p, f.precision) == ("laurent", 5, 9)
    assert parse_field_spec(f.spec_string()) == f
    with pytest.raises(InvalidParam):
        parse_field_spec("padic:p=4,prec=3")
    with pytest.raises(InvalidParam):
        parse_field_spec("nonsense")


def test_element_json_roundtrip(q3, l3):
    for f in (q3, l3):
        for x in (f.zero(), f.from_int(7), f.uniformizer_pow(-2), f.element(-1, [2, 1, 0, 1])):
            assert FieldElement.from_json(f, x.to_json()) == x


# -- ultrametric properties ---------------------------------------------------


@pytest.mark.parametrize("family", ["padic", "laurent"])
def test_ultrametric_laws(family):
    field = FieldParams(family, 3, 12)
    rng = RandomStream(101)
    for i in range(1000):
        a = uniform_integer(field, rng.child("a", i)).shift(int(rng.child("ka", i).integers(7)) - 3)
        b = uniform_integer(field, rng.child("b", i)).shift(int(rng.child("kb", i).integers(7)) - 3)
        if a.is_zero() or b.is_zero():
            continue
        assert (a * b).ord == a.ord + b.ord
        try:
            s = a + b
        except PrecisionExhausted:
            continue
        assert s.ord >= min(a.ord, b.ord)
        if a.ord != b.ord:
            assert s.ord == min(a.ord, b.ord)


@pytest.mark.parametrize("family", ["padic", "laurent"])
def test_inverse_roundtrip_thousand_units(family):
    field = FieldParams(family, 3, 12)
    gen = unit_stream(field, 55)
    one = field.one()
    for _ in range(1000):
        u = next(gen)
        prod = u * u.inverse()
        assert prod == one  # full window (1, 0, ..., 0)


# -- square roots and square classes -----------------------------------------


def test_hensel_examples(q3):
    assert hensel_sqrt(q3.one()) == q3.one()
    r = hensel_sqrt(q3.from_int(4))
    assert (r * r).agrees(q3.from_int(4))
    assert r.leading_digit() <= 1  # canonical branch
    seven = q3.from_int(7)
    b = hensel_sqrt(seven)
    assert b is not None and (b * b).agrees(seven)
    assert hensel_sqrt(q3.zero()).is_zero()


def test_hensel_requires_odd_p():
    dyadic = FieldParams("padic", 2, 8)
    with pytest.raises(DyadicField):
        hensel_sqrt(dyadic.one())


@pytest.mark.parametrize("family", ["padic", "laurent"])
def test_hensel_roundtrip_and_residue_criterion(family):
    field = FieldParams(family, 3, 12)
    gen = unit_stream(field, 77)
    for _ in range(1000):
        beta = next(gen)
        r = hensel_sqrt(beta * beta)
        assert r is not None
        assert r.agrees(beta) or r.agrees(-beta)
        # squareness of a unit depends only on its residue
        expect = legendre(beta.leading_digit(), 3) == 1
        assert (hensel_sqrt(beta) is not None) == expect
    # odd valuation is never a square
    assert hensel_sqrt(next(gen).shift(1)) is None


def test_nonsquare_unit_choices():
    assert nonsquare_unit(FieldParams("padic", 3, 8)) == FieldParams("padic", 3, 8).from_int(2)
    assert nonsquare_unit(FieldParams("padic", 5, 8)).leading_digit() == 2
    assert nonsquare_unit(FieldParams("padic", 7, 8)).leading_digit() == 3
    assert legendre(nonsquare_unit(FieldParams("padic", 11, 8)).leading_digit(), 11) == -1


def test_square_class_examples(q3):
    rep, wit = square_class(q3.zero())
    assert rep.is_zero() and wit == q3.one()

    a = q3.from_int(4).shift(-2)  # 4 * pi^-2, square unit part
    rep, wit = square_class(a)
    assert rep == q3.uniformizer_pow(-2)
    assert (wit * wit * rep).agrees(a)

    b = q3.from_int(2).shift(1)  # 2 * pi = eps * pi
    rep, wit = square_class(b)
    assert square_class_label(rep) == (1, True)
    assert (wit * wit * rep).agrees(b)


@pytest.mark.parametrize("family", ["padic", "laurent"])
def test_square_class_properties(family):
    field = FieldParams(family, 5, 12)
    rng = RandomStream(91)
    for i in range(300):
        x = uniform_integer(field, rng.child("x", i)).shift(int(rng.child("k", i).integers(7)) - 3)
        if x.is_zero():
            continue
        rep, wit = square_class(x)
        assert (wit * wit * rep).agrees(x)
        rep2, wit2 = square_class(rep)
        assert rep2 == rep and wit2 == field.one()


# -- vanishing values ----------------------------------------------------------


def test_vanishing_algebra(q3):
    from nonarch.matrices import add_lenient

    x = q3.from_int(7)
    v = add_lenient(x, -x)
    assert v.is_vanishing() and v.ord == q3.precision
    assert (v * q3.uniformizer_pow(-2)).ord == q3.precision - 2
    assert v.agrees(q3.zero())
    assert v.agrees(q3.uniformizer_pow(q3.precision))
    assert not v.agrees(q3.one())
    y = v + q3.from_int(5)
    assert y.digits == q3.from_int(5).digits[: y.rel]
