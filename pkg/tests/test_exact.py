"""Substrate tests: integer polynomials, rational functions, derivatives at
q = 1, and the exact linear solver.

Everything is compared with == on Fractions/IntPolys; there is no tolerance
anywhere in this file.
"""
import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from qrationals.exact import (
    IntPoly,
    PoleAtOneError,
    RatFunc,
    SingularMatrixError,
    ZeroDenominatorError,
    derivative_at_one,
    derivative_at_one_quotient,
    matrix_rank_exact,
    poly_from_json_list,
    poly_to_json_list,
    rat_from_str,
    rat_reduce,
    rat_to_str,
    solve_linear_exact,
)

polys = st.builds(IntPoly, st.lists(st.integers(-9, 9), max_size=6))
nonzero_polys = polys.filter(lambda p: not p.is_zero)
rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)


# -- rationals -------------------------------------------------------------

def test_rat_reduce_canonicalizes():
    assert rat_reduce(2, 4) == Fr(1, 2)
    assert rat_reduce(3, -6) == Fr(-1, 2)
    assert rat_reduce(0, 7) == 0
    with pytest.raises(ZeroDenominatorError):
        rat_reduce(1, 0)


def test_rat_str_forms():
    assert rat_to_str(Fr(9, 25)) == "9/25"
    assert rat_to_str(Fr(-1, 4)) == "-1/4"
    assert rat_to_str(Fr(3)) == "3"
    assert rat_from_str("9/25") == Fr(9, 25)
    assert rat_from_str(" -3 ") == -3
    with pytest.raises(ValueError):
        rat_from_str("0.5")


@given(rationals)
def test_rat_str_round_trip(x):
    assert rat_from_str(rat_to_str(x)) == x


# -- IntPoly ---------------------------------------------------------------

def test_poly_normalization():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([0, 0]).is_zero
    assert IntPoly().degree() == -1
    assert IntPoly().leading() == 0
    assert IntPoly([0, 0, 3]).trailing_order() == 2
    assert IntPoly([4, 6]).content() == 2


def test_poly_constructors():
    assert IntPoly.const(5).coeffs == (5,)
    assert IntPoly.const(0).is_zero
    assert IntPoly.monomial(3).coeffs == (0, 0, 0, 1)
    assert IntPoly.monomial(0, -2).coeffs == (-2,)
    with pytest.raises(ValueError):
        IntPoly.monomial(-1)


@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == IntPoly()
    assert a * IntPoly.const(1) == a


@given(polys, polys, st.fractions(max_denominator=6, min_value=-3, max_value=3))
def test_poly_evaluation_is_a_homomorphism(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a * b)(x) == a(x) * b(x)


@given(polys, st.integers(0, 4))
def test_poly_pow_matches_repeated_multiplication(p, n):
    expected = IntPoly.const(1)
    for _ in range(n):
        expected = expected * p
    assert p ** n == expected


@given(polys, st.integers(0, 4))
def test_poly_shift_unshift_round_trip(p, k):
    assert p.shift(k).unshift(k) == p


def test_poly_unshift_requires_divisibility():
    with pytest.raises(ValueError):
        IntPoly([1, 1]).unshift(1)


@given(polys, polys)
def test_poly_derivative_product_rule(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(polys, st.integers(0, 5))
def test_shifted_coeff_is_taylor_coefficient_at_one(p, j):
    """shifted_coeff(j) must equal the h^j coefficient of p(1 + h)."""
    one_plus_h = IntPoly([1, 1])
    composed = IntPoly()
    for i, c in enumerate(p.coeffs):
        composed = composed + c * one_plus_h ** i
    expected = composed.coeffs[j] if j < len(composed.coeffs) else 0
    assert p.shifted_coeff(j) == expected


def test_poly_str():
    assert str(IntPoly([1, 1, 2, 1])) == "1 + q + 2*q^2 + q^3"
    assert str(IntPoly([0, -1])) == "-q"
    assert str(IntPoly([-1])) == "-1"
    assert str(IntPoly()) == "0"


@given(polys)
def test_poly_json_round_trip(p):
    assert poly_from_json_list(poly_to_json_list(p)) == p


def test_poly_json_is_decimal_strings_lowest_first():
    assert poly_to_json_list(IntPoly([0, 1, -2])) == ["0", "1", "-2"]


# -- RatFunc ---------------------------------------------------------------

def test_ratfunc_cancels_common_factors():
    # (q^2 + q)/(q^3 + q^2) = 1/q after gcd and q-power clearing
    rf = RatFunc(IntPoly([0, 1, 1]), IntPoly([0, 0, 1, 1]))
    assert rf.num == IntPoly([1])
    assert rf.den == IntPoly([0, 1])


def test_ratfunc_normalizes_sign_and_content():
    rf = RatFunc(IntPoly([0, 1]), IntPoly([-1, -1]))
    assert rf.num == IntPoly([0, -1])
    assert rf.den == IntPoly([1, 1])
    rf = RatFunc(IntPoly([2, 2]), IntPoly([4]))
    assert (rf.num, rf.den) == (IntPoly([1, 1]), IntPoly([2]))


def test_ratfunc_zero_numerator_collapses():
    rf = RatFunc(IntPoly(), IntPoly([0, 0, 5]))
    assert rf.num.is_zero and rf.den == IntPoly([1])


def test_ratfunc_rejects_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        RatFunc(IntPoly([1]), IntPoly())


@given(nonzero_polys, nonzero_polys, st.integers(1, 5), st.integers(0, 3),
       st.booleans())
def test_from_clean_agrees_with_full_constructor(n, d, scale, k, flip):
    """Scaling a canonical pair by ±c·q^k must normalize back to itself."""
    rf = RatFunc(n, d)
    c = -scale if flip else scale
    fast = RatFunc._from_clean(rf.num.shift(k) * c, rf.den.shift(k) * c)
    assert fast == rf


@given(nonzero_polys, nonzero_polys, nonzero_polys, nonzero_polys)
def test_ratfunc_field_operations(a, b, c, d):
    x, y = RatFunc(a, b), RatFunc(c, d)
    if x.den(1) == 0 or y.den(1) == 0:
        return
    s, p = x + y, x * y
    if s.den(1) != 0:
        assert s.value_at_one() == x.value_at_one() + y.value_at_one()
    if p.den(1) != 0:
        assert p.value_at_one() == x.value_at_one() * y.value_at_one()


def test_pole_detection():
    rf = RatFunc(IntPoly([1]), IntPoly([-1, 1]))  # 1/(q-1)
    with pytest.raises(PoleAtOneError):
        rf.value_at_one()
    with pytest.raises(PoleAtOneError):
        derivative_at_one(rf, 1)


# -- derivatives at q = 1 --------------------------------------------------

def test_derivative_fixtures():
    half = RatFunc(IntPoly([0, 1]), IntPoly([1, 1]))  # q/(q+1)
    assert derivative_at_one(half, 0) == Fr(1, 2)
    assert derivative_at_one(half, 1) == Fr(1, 4)
    two_thirds = RatFunc(IntPoly([0, 0, 1]), IntPoly([1, 1, 1]))
    assert derivative_at_one(two_thirds, 1) == Fr(1, 3)
    assert derivative_at_one(two_thirds, 2) == Fr(-2, 9)


def test_derivative_rejects_negative_order():
    rf = RatFunc(IntPoly([1]), IntPoly([1]))
    with pytest.raises(ValueError):
        derivative_at_one(rf, -1)


@settings(max_examples=60)
@given(nonzero_polys, nonzero_polys, st.integers(0, 3))
def test_series_and_quotient_rule_derivatives_agree(n, d, k):
    rf = RatFunc(n, d)
    if rf.den(1) == 0:
        return
    assert derivative_at_one(rf, k) == derivative_at_one_quotient(rf, k)


def test_derivative_matches_finite_difference_coarsely():
    """Sanity anchor: symmetric difference quotient with h = 10^-6 sits
    within 10^-3 of the exact derivative (evaluated in exact arithmetic)."""
    rf = RatFunc(IntPoly([0, 0, 1, 1]), IntPoly([1, 1, 2, 1]))  # [2/5]_q
    h = Fr(1, 10 ** 6)

    def at(x):
        return Fr(rf.num(x), rf.den(x))

    approx = (at(1 + h) - at(1 - h)) / (2 * h)
    assert abs(approx - derivative_at_one(rf, 1)) < Fr(1, 1000)


# -- exact linear algebra --------------------------------------------------

@settings(max_examples=50)
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.fractions(min_value=-5, max_value=5,
                                       max_denominator=6),
                          min_size=n, max_size=n),
                 min_size=n, max_size=n),
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                 min_size=n, max_size=n))))
def test_solver_inverts_matrix_action(Ax):
    A, x = Ax
    y = [sum(row[j] * x[j] for j in range(len(x))) for row in A]
    try:
        got = solve_linear_exact(A, y)
    except SingularMatrixError as exc:
        assert matrix_rank_exact(A) == exc.rank < len(A)
    else:
        assert got == list(x)


def test_solver_handles_zero_leading_pivots():
    # forces both a row swap and a column swap
    A = [[0, 0, 1], [0, 2, 0], [3, 0, 0]]
    assert solve_linear_exact(A, [1, 2, 3]) == [1, 1, 1]


def test_solver_reports_rank_on_singular_input():
    with pytest.raises(SingularMatrixError) as exc:
        solve_linear_exact([[1, 2], [2, 4]], [1, 2])
    assert exc.value.rank == 1 and exc.value.size == 2


def test_solver_validates_shapes():
    with pytest.raises(ValueError):
        solve_linear_exact([[1, 2]], [1])
    with pytest.raises(ValueError):
        solve_linear_exact([[1]], [1, 2])


def test_matrix_rank():
    assert matrix_rank_exact([]) == 0
    assert matrix_rank_exact([[0, 0]]) == 0
    assert matrix_rank_exact([[1, 2], [2, 4]]) == 1
    assert matrix_rank_exact([[1, 0], [0, 1], [1, 1]]) == 2
    assert matrix_rank_exact([[Fr(1, 2), 1], [0, Fr(1, 3)]]) == 2
