from fractions import Fraction

from hypothesis import given, strategies as st

from gkzbfun.linform import ParamLinForm, frac_str

q = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
forms = st.tuples(q, st.tuples(q, q)).map(lambda p: ParamLinForm(p[0], p[1]))


def test_str():
    b1, b2 = ParamLinForm.symbolic_vector(2)
    assert str(b1 + b2) == "b1 + b2"
    assert str((b2 * 3 - b1 - ParamLinForm.constant(4, 2)) / 3) == "(-b1 + 3*b2 - 4)/3"
    assert str(b1 / 3) == "b1/3"
    assert str(ParamLinForm.constant(Fraction(-7, 9), 2)) == "-7/9"
    assert str(ParamLinForm.zero(2)) == "0"
    assert frac_str(Fraction(3, 1)) == "3"


@given(forms, forms, st.lists(q, min_size=2, max_size=2))
def test_arithmetic_commutes_with_evaluation(f, g, beta0):
    assert (f + g).evaluate(beta0) == f.evaluate(beta0) + g.evaluate(beta0)
    assert (f - g).evaluate(beta0) == f.evaluate(beta0) - g.evaluate(beta0)
    assert (f * 3).evaluate(beta0) == 3 * f.evaluate(beta0)
    assert f.substitute(beta0).const == f.evaluate(beta0)


@given(forms)
def test_json_roundtrip(f):
    assert ParamLinForm.from_json(f.to_json()) == f
    assert hash(ParamLinForm.from_json(f.to_json())) == hash(f)
