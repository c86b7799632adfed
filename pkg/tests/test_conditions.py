import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import P
from wzproof.conditions import (
    ConditionError,
    ConvergenceCondition as CC,
    conjunction_str,
    eliminate_n,
    simplify,
)


def test_canonical_content_division():
    assert str(CC.parse("Re(2b-2) < 0")) == "Re(b) < 1"
    assert CC.parse("Re(2b-2) < 0") == CC.parse("Re(b) < 1")


def test_greater_form_is_kept_readable():
    c = CC.parse("Re(2+a-2b-2c) > 0")
    assert str(c) == "Re(2+a-2b-2c) > 0"
    assert c.holds_at({"a": 0, "b": 0, "c": 0})
    assert not c.holds_at({"a": 0, "b": 1, "c": 1})


def test_implication_and_simplify():
    assert CC.parse("Re(b) < 0").implies(CC.parse("Re(b) < 1"))
    assert not CC.parse("Re(b) < 1").implies(CC.parse("Re(b) < 0"))
    assert simplify([CC.parse("Re(b) < 1"), CC.parse("Re(b) < 0")]) == [CC.parse("Re(b) < 0")]


def test_contradiction_raises():
    with pytest.raises(ConditionError):
        simplify([CC.parse("Re(b) < 0"), CC.parse("Re(b) > 1")])


def test_eliminate_n():
    # worst case over n >= 0 is n = 0 when the n coefficient helps
    assert eliminate_n(CC.parse("Re(b-2n) < 1")) == CC.parse("Re(b) < 1")
    assert eliminate_n(CC.parse("Re(b+2n) < 1")) is None


def test_shift():
    assert CC.parse("Re(b) < 0").shifted("b", -1) == CC.parse("Re(b) < 1")


def test_conjunction_order_is_deterministic():
    cs = [CC.parse("Re(c) < 2"), CC.parse("Re(a) < 1")]
    assert conjunction_str(simplify(cs)) == conjunction_str(simplify(reversed(cs)))


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-6, 6), st.booleans())
def test_round_trip_and_affine(ca, cb, c0, strict):
    if ca == 0 and cb == 0:
        return
    form = P(f"{ca}*a + {cb}*b + {c0}")
    c = CC.less(form, 0, strict=strict)
    assert c.form.degree() <= 1
    text = str(c)
    assert text.startswith("Re(")
    assert CC.parse(text) == c
    pt = {"a": mpq(1, 3), "b": mpq(-2, 5)}
    assert c.holds_at(pt) == (form.evaluate(pt) < 0 if strict else form.evaluate(pt) <= 0)
