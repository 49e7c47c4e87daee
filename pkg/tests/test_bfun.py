import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gkzbfun import exact
from gkzbfun.bfun import (
    RootBound,
    convert_convention,
    corollary_check,
    fourier_bound,
    gkz_bound,
    interior_in_del_t,
    point_bound,
    validate_matrix,
)
from gkzbfun.errors import ValidationError
from gkzbfun.linform import ParamLinForm

from helpers import A1, A2, FIXTURES, I2, LINE, TWISTED, random_unimodular


def strs(rb):
    return {str(r) for r in rb.roots}


def test_fourier_examples():
    assert strs(fourier_bound(A1, None, 1)) == {"b1 + b2", "-b1 + b2"}
    assert strs(fourier_bound(A2, None, 1)) == {
        "b1 + b2",
        "(-b1 + 3*b2)/3",
        "(-b1 + 3*b2 - 4)/3",
        "(-b1 + 3*b2 - 8)/3",
    }
    assert strs(fourier_bound(I2, "symbolic", 0)) == {"b1"}


def test_fourier_certificate_degree():
    for A, t in FIXTURES:
        rb = fourier_bound(A, None, t)
        assert len(rb.roots) <= len(rb.metadata["strata"])
        assert set(rb.certificate) >= set(rb.roots)


def test_gkz_examples():
    rb = gkz_bound(A2, None, 1)
    assert rb.case == "a_t_in_cone" and rb.integer_roots == (0, 1, 2, 3) and rb.roots == ()
    rb = gkz_bound(A2, None, 2)
    assert rb.case == "general" and rb.integer_roots == (0,)
    assert strs(rb) == {"b1/3", "(b1 + 1)/3", "(b1 + 2)/3"}
    rb = gkz_bound(I2, None, 0)
    assert rb.case == "rank_drop" and strs(rb) == {"b1"}
    assert rb.metadata["v"] == (1, 0)


def test_gkz_case_shapes():
    for A, t in FIXTURES:
        rb = gkz_bound(A, None, t)
        if rb.case == "a_t_in_cone":
            assert rb.roots == ()
        if rb.case == "rank_drop":
            assert len(rb.roots) == 1 and rb.integer_roots == ()
            v = rb.metadata["v"]
            assert exact.dot(v, exact.column(A, t)) == 1


def test_point_bound():
    rb = point_bound(TWISTED)
    assert rb.integer_roots == (0, 1) and rb.k_reported == 2
    rb = point_bound(LINE)
    assert rb.integer_roots == (0,) and rb.metadata["normal_bound"] == 2
    with pytest.raises(ValidationError):
        point_bound([[1, 2]])


def test_validation_errors():
    with pytest.raises(ValidationError, match="ZA = Z\\^d"):
        fourier_bound([[2, 0], [0, 2]], None, 0)
    with pytest.raises(ValidationError, match="rank"):
        fourier_bound([[1, 1], [1, 1]], None, 0)
    with pytest.raises(ValidationError, match="pointed"):
        fourier_bound([[1, -1, 0], [0, 0, 1]], None, 2)
    with pytest.raises(ValidationError):
        fourier_bound(A1, [1], 1)
    with pytest.raises(ValidationError):
        gkz_bound(A1, None, 3)


def test_convert_convention():
    rb = fourier_bound(A1, None, 1)
    conv = convert_convention(rb, "x_t_del_t")
    assert strs(conv) == {"-b1 - b2 - 1", "b1 - b2 - 1"}
    back = convert_convention(conv, "theta_tilde_t")
    assert back.root_set == rb.root_set
    zero = RootBound("theta_tilde_t", (ParamLinForm.zero(2),))
    assert strs(convert_convention(zero, "x_t_del_t")) == {"-1"}
    with pytest.raises(ValueError):
        convert_convention(gkz_bound(A2, None, 2), "theta_tilde_t")


def test_corollary():
    for A, t in [(A1, 1), (I2, 0)]:
        rep = corollary_check(A, t)
        assert rep.ok and rep.normal
        assert rep.theta_roots == (0,) and rep.in_unit_interval and rep.only_zero
    rep = corollary_check(A2, 1)
    assert rep.theta_roots == (Fraction(-8, 3), Fraction(-4, 3), 0)
    assert rep.line_values == (0, Fraction(4, 3), Fraction(8, 3))
    assert rep.nonnegative and not rep.theta_nonnegative and not rep.normal


@pytest.mark.parametrize("A", [A1, I2, TWISTED, LINE])
def test_corollary_line_values_all_t(A):
    # on normal fixtures every ε with ε·a_t in qdeg(S_A/∂_t S_A) lies in [0, 1)
    for t in range(len(A[0])):
        rep = corollary_check(A, t)
        assert rep.normal and rep.ok
        assert all(0 <= x < 1 for x in rep.line_values)


def test_interior_ideal():
    # the interior of cone(A1) starts at (0,1) = a1, which generates the interior ideal
    assert interior_in_del_t(A1, 1)
    assert not interior_in_del_t(A1, 0)


def test_json_shape():
    js = gkz_bound(A2, None, 2).to_json()
    assert set(js) == {"variable", "case", "roots", "integer_roots", "flags", "certificate", "k_reported", "K_reported"}
    assert js["roots"][0] == {"const": "0", "coeffs": ["1/3", "0"]}


# -- invariance ------------------------------------------------------------


def compose(form: ParamLinForm, U):
    """r(U beta) as a form in beta."""
    d = len(form.coeffs)
    coeffs = tuple(sum(form.coeffs[i] * U[i][j] for i in range(d)) for j in range(d))
    return ParamLinForm(form.const, coeffs)


@pytest.mark.parametrize("A,t", FIXTURES)
def test_unimodular_invariance_symbolic(A, t):
    rng = random.Random(f"{A}{t}")
    base_f = fourier_bound(A, None, t).root_set
    base_g = gkz_bound(A, None, t)
    for _ in range(3):
        U = random_unimodular(rng, len(A))
        UA = exact.matmul(U, A)
        f = fourier_bound(UA, None, t)
        assert {compose(r, U) for r in f.roots} == base_f
        g = gkz_bound(UA, None, t)
        assert {compose(r, U) for r in g.roots} == base_g.root_set
        assert g.integer_roots == base_g.integer_roots


@given(st.integers(0, len(FIXTURES) - 1), st.lists(st.integers(-20, 20), min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_specialization_commutes(i, nums):
    A, t = FIXTURES[i]
    beta0 = [Fraction(nums[0], 1 + abs(nums[2])), Fraction(nums[1], 1 + abs(nums[3]))]
    for fn in (fourier_bound, gkz_bound):
        sym = fn(A, None, t)
        rat = fn(A, beta0, t)
        if "conditional_root_realized" not in rat.flags:
            assert sym.evaluate(beta0) == rat.evaluate(beta0)
        else:
            assert sym.evaluate(beta0) <= rat.evaluate(beta0)


@pytest.mark.parametrize("A,t", FIXTURES)
def test_column_permutation(A, t):
    n = len(A[0])
    rng = random.Random(n * 7 + t)
    for _ in range(3):
        perm = list(range(n))
        rng.shuffle(perm)
        PA = exact.from_columns([exact.column(A, j) for j in perm])
        tp = perm.index(t)
        assert fourier_bound(PA, None, tp).root_set == fourier_bound(A, None, t).root_set
        g1, g2 = gkz_bound(PA, None, tp), gkz_bound(A, None, t)
        assert g1.root_set == g2.root_set and g1.integer_roots == g2.integer_roots


def test_conditional_strata_flagged():
    # parallel a_t and stratum span: x·a_t ∈ β - σ - N·a_j needs a condition on beta
    A = ((1, 1, 0), (0, 1, 1))
    for t in range(3):
        rb = fourier_bound(A, None, t)
        assert "degenerate_whole_line" not in rb.flags
    assert validate_matrix(A) == A


def test_conditional_root_omitted_then_realized():
    # the point stratum at (2,4) meets the line only when 2*b2 - b1 = 6
    A = ((2, 1, -1, -2), (1, 2, 2, 1))
    sym = fourier_bound(A, None, 0)
    assert "conditional_roots_omitted" in sym.flags
    assert len(sym.roots) == 4
    on = fourier_bound(A, [0, 3], 0)
    assert "conditional_root_realized" in on.flags
    assert Fraction(-1) in on.evaluate([0, 3])
    assert sym.evaluate([0, 3]) < on.evaluate([0, 3])
    off = fourier_bound(A, [1, 3], 0)
    assert "conditional_root_realized" not in off.flags
    assert sym.evaluate([1, 3]) == off.evaluate([1, 3])


def test_whole_line_stratum():
    from gkzbfun.bfun import _intersect_strata
    from gkzbfun.strata import Stratum

    flags, cert = [], []
    roots = _intersect_strata(A1, (0, 1), [Stratum((0, 0), (0, 2))], ParamLinForm.symbolic_vector(2), True, flags, cert)
    assert roots == [] and flags == ["degenerate_whole_line"]
