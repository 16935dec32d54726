import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimershuffle.series import (
    ONE,
    Q,
    Q0,
    Q1,
    ZQ_VARS,
    Factor,
    Monomial,
    SeriesError,
    TruncatedSeries,
    Truncation,
    formula_Z,
    formula_Zinf,
    formula_Zx,
    macmahon,
    product_expand,
    pyramid_leg_factor,
    series_div_unit,
    shuffle_product,
    substitute_zq,
)


def S(terms, d):
    return TruncatedSeries(terms, d)


def test_monomial_algebra():
    assert Q0 * Q1 == Q == Monomial(1, 1)
    assert (Q0 / Q1).key == (1, -1)
    assert (Q ** 3).degree == 6
    assert not (ONE / Q1).is_polynomial()
    assert Monomial(2, 1).format() == "q0^2*q1"
    assert ONE.format() == "1"


def test_truncation_validation():
    with pytest.raises(SeriesError):
        Truncation()
    with pytest.raises(SeriesError):
        Truncation(total=-1)
    t = Truncation.per_variable(1, 2)
    assert t.admits(1, 2) and not t.admits(2, 0)
    assert t.max_total == 3


def test_terms_beyond_truncation_are_dropped():
    s = S({(0, 0): 1, (3, 0): 5}, 2)
    assert s.terms() == [((0, 0), 1)]


def test_negative_exponent_rejected():
    with pytest.raises(SeriesError):
        S({(-1, 0): 1}, 3)


def test_mismatched_truncation_rejected():
    with pytest.raises(SeriesError):
        S({}, 2) + S({}, 3)


def test_formula_Z_small():
    # 1 + q0 + 2q0q1 + q0q1^2 + 4q0^2q1
    want = S({(0, 0): 1, (1, 0): 1, (1, 1): 2, (1, 2): 1, (2, 1): 4}, 3)
    assert formula_Z(1, 3) == want


def test_formula_Z_length_two():
    assert formula_Z(2, 2) == S({(0, 0): 1, (1, 0): 2, (1, 1): 2, (2, 0): 1}, 2)


def test_macmahon_coefficients():
    m = macmahon(Monomial(0, 1), Truncation.per_variable(0, 5), vars=ZQ_VARS)
    assert [m.coeff(0, k) for k in range(6)] == [1, 1, 3, 6, 13, 24]


def test_macmahon_inverse():
    t = Truncation.per_variable(0, 8)
    m = macmahon(Monomial(0, 1), t, vars=ZQ_VARS)
    mi = macmahon(Monomial(0, 1), t, inverse=True, vars=ZQ_VARS)
    assert m * mi == TruncatedSeries.one(t, ZQ_VARS)


def test_leg_factor_expansion():
    # prod (1 + q0^k q1^(k-1))^k = 1 + q0 + 2 q0^2 q1 + ...
    assert pyramid_leg_factor(3) == S({(0, 0): 1, (1, 0): 1, (2, 1): 2}, 3)


def test_leg_factor_times_zinf_is_length_one_series():
    assert pyramid_leg_factor(8) * formula_Zinf(8) == formula_Z(1, 8)


def test_geometric_inverse():
    one_minus = S({(0, 0): 1, (1, 1): -1}, 4)
    inv = series_div_unit(TruncatedSeries.one(4), one_minus)
    assert inv == S({(0, 0): 1, (1, 1): 1, (2, 2): 1}, 4)


def test_product_expand_rejects_bad_factors():
    with pytest.raises(SeriesError):
        product_expand([Factor(ONE, 1)], 3)
    with pytest.raises(SeriesError):
        product_expand([Factor(Q, 1), Factor(Q0, 1)], 3)


def test_substitution_needs_enough_bounds():
    with pytest.raises(SeriesError):
        substitute_zq(formula_Zx(2, 2), 4)


def test_substitution_maps_z_to_q1():
    s = TruncatedSeries({(1, 0): 1, (0, 1): 1}, Truncation.per_variable(4, 2), ZQ_VARS)
    assert substitute_zq(s, 4) == S({(0, 1): 1, (1, 1): 1}, 4)


def test_shuffle_product_peels_leading_factor():
    # k = 1, n = 1: just (1 + q0)
    assert shuffle_product(1, 1, 3) == S({(0, 0): 1, (1, 0): 1}, 3)


def test_first_difference_reports_lexicographically_least_term():
    a = S({(0, 0): 1, (1, 0): 2, (0, 2): 1}, 3)
    b = S({(0, 0): 1, (1, 0): 3, (0, 2): 5}, 3)
    assert a.first_difference(b) == ((0, 2), 1, 5)
    assert a.first_difference(a) is None


coeffs = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5), max_size=6
)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    A, B, C = S(a, 4), S(b, 4), S(c, 4)
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A - A == TruncatedSeries.zero(4)


@settings(max_examples=60, deadline=None)
@given(coeffs, st.sampled_from([1, -1]), coeffs)
def test_division_inverts_multiplication(a, unit, b):
    b = dict(b)
    b[(0, 0)] = unit
    A, B = S(a, 4), S(b, 4)
    assert series_div_unit(A * B, B) == A


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5))
def test_formula_Z_has_nonnegative_coefficients(n, d):
    z = formula_Z(n, d)
    assert z.is_nonnegative()
    assert z.coeff(0, 0) == 1
    assert z.coeff(1, 0) == n
