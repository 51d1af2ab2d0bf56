from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from nambulie.exactalg import determinant
from nambulie.extcalc import (
    Chart,
    KVectorField,
    OneForm,
    d_function,
    d_oneform,
    factor_span,
    field_rank,
    interior,
    interior_vector_twoform,
    involutivity_witness,
    is_decomposable,
    is_involutive,
    lie_bracket,
    lie_derivative,
    lie_derivative_form,
    plucker_witness,
    rank_at_point,
    sharp,
    sort_sign,
    wedge,
)
from strategies import CHART, constant_vectors, multivectors, oneforms, polynomials, vector_fields

C4 = Chart.standard(4)


def brute_eval(P: KVectorField, alphas):
    # P(a1..ak) = sum_I P^I det[a_r(e_{I_s})]
    total = P.chart.const(0)
    for I, c in P.coeffs.items():
        total = total + c * determinant([[a.coeffs[i] for i in I] for a in alphas])
    return total


def brute_bracket(X, Y):
    names = X.chart.names
    xs, ys = X.components(), Y.components()
    return X.chart.vector([
        sum((xs[i] * ys[j].diff(names[i]) - ys[i] * xs[j].diff(names[i]) for i in range(len(names))),
            X.chart.const(0))
        for j in range(len(names))])


def test_sort_sign():
    assert sort_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert sort_sign((1, 0)) == (-1, (0, 1))
    assert sort_sign((1, 1))[0] == 0


def test_bad_index_tuple():
    with pytest.raises(ValueError):
        KVectorField(CHART, 2, {(1, 0): 1})
    with pytest.raises(ValueError):
        KVectorField(CHART, 2, {(0, 3): 1})


def test_zero_coefficients_dropped():
    P = KVectorField(CHART, 2, {(0, 1): 0})
    assert P.is_zero()


@given(polynomials())
def test_d_squared_vanishes(f):
    assert d_oneform(d_function(f, CHART)).is_zero()


@given(multivectors(degree=1), multivectors(degree=2))
def test_wedge_graded_commutative(A, B):
    sign = (-1) ** (A.degree * B.degree)
    assert wedge(A, B) == sign * wedge(B, A)


@given(vector_fields())
def test_vector_wedge_self_vanishes(X):
    assert wedge(X, X).is_zero()


@given(multivectors(degree=1), multivectors(degree=1), multivectors(degree=1))
def test_wedge_associative(A, B, D):
    assert wedge(wedge(A, B), D) == wedge(A, wedge(B, D))


@given(oneforms(), multivectors(degree=1), multivectors(degree=2))
def test_interior_antiderivation(alpha, A, B):
    lhs = interior(alpha, wedge(A, B))
    rhs = wedge(interior(alpha, A), B) + (-1) ** A.degree * wedge(A, interior(alpha, B))
    assert lhs == rhs


@given(multivectors(degree=2), oneforms(), oneforms())
def test_full_evaluation_matches_determinant(P, a, b):
    assert P(a, b) == brute_eval(P, [a, b])


@given(multivectors(degree=3), oneforms(), oneforms(), oneforms())
def test_sharp_matches_evaluation(P, a, b, c):
    assert c.pair(sharp(P, a, b)) == brute_eval(P, [a, b, c])


@given(multivectors(degree=2), oneforms(), oneforms())
def test_evaluation_skew(P, a, b):
    assert P(a, b) == -P(b, a)


@given(vector_fields(), vector_fields())
def test_lie_bracket_brute_force(X, Y):
    assert lie_bracket(X, Y) == brute_bracket(X, Y)
    assert lie_bracket(X, Y) == -lie_bracket(Y, X)


@given(vector_fields(max_terms=1), multivectors(degree=1), multivectors(degree=2))
def test_lie_derivative_is_derivation(X, A, B):
    lhs = lie_derivative(X, wedge(A, B))
    rhs = wedge(lie_derivative(X, A), B) + wedge(A, lie_derivative(X, B))
    assert lhs == rhs


@given(vector_fields(max_terms=1), oneforms(), vector_fields())
def test_lie_derivative_pairing_rule(X, alpha, Y):
    # X<alpha, Y> = <L_X alpha, Y> + <alpha, [X, Y]>
    lhs = X.apply(alpha.pair(Y))
    rhs = lie_derivative_form(X, alpha).pair(Y) + alpha.pair(lie_bracket(X, Y))
    assert lhs == rhs


@given(vector_fields(max_terms=1), oneforms())
def test_cartan_formula(X, alpha):
    cartan = interior_vector_twoform(X, d_oneform(alpha)) + d_function(alpha.pair(X), CHART)
    assert lie_derivative_form(X, alpha) == cartan


@given(st.lists(constant_vectors(4), min_size=2, max_size=3))
def test_wedge_of_vectors_is_decomposable(vs):
    P = C4.vector(vs[0])
    for v in vs[1:]:
        P = wedge(P, C4.vector(v))
    if P:
        assert is_decomposable(P)
        assert plucker_witness(P) is None
        assert field_rank(factor_span(P)) == P.degree


@given(st.lists(constant_vectors(4), min_size=2, max_size=2), st.integers(1, 3).map(Fraction))
def test_decomposable_under_recombination(vs, t):
    # replacing v2 by v2 + t v1 leaves the wedge unchanged
    a, b = (C4.vector(v) for v in vs)
    assert wedge(a, b) == wedge(a, b + a * t)


def test_symplectic_bivector_not_decomposable():
    P = C4.basis_multivector((0, 1)) + C4.basis_multivector((2, 3))
    assert not is_decomposable(P)
    J, w = plucker_witness(P)
    assert not w.is_zero()
    assert rank_at_point(P, (0, 0, 0, 0)) == 4


def test_nonconstant_decomposable():
    x1 = C4.coord(0)
    P = wedge(C4.vector([1, x1, 0, 0]), C4.vector([0, 0, x1, 1]))
    assert is_decomposable(P)
    assert rank_at_point(P, (0, 0, 0, 0)) == 2


def test_involutivity_examples():
    x1, x2, x3 = CHART.coords()
    d1, d2, d3 = (CHART.basis_vector(i) for i in range(3))
    assert is_involutive([d1, d2])
    # contact distribution: d1 and d2 + x1 d3 bracket to d3
    Y = d2 + d3 * x1
    assert not is_involutive([d1, Y])
    i, j, br = involutivity_witness([d1, Y])
    assert br == d3
    # rescaled rotation fields of the sphere span an involutive distribution
    R = [CHART.vector([0, -x3, x2]), CHART.vector([x3, 0, -x1])]
    assert is_involutive(R + [CHART.vector([-x2, x1, 0])])


def test_oneform_chart_check():
    with pytest.raises(ValueError):
        OneForm(CHART, (CHART.const(1),))


def test_evaluation_arity():
    P = CHART.basis_multivector((0, 1))
    with pytest.raises(ValueError):
        P(CHART.dx(0))


def test_coordinate_basis_evaluation():
    P = CHART.basis_multivector((0, 1, 2))
    for I in combinations(range(3), 3):
        assert P(*(CHART.dx(i) for i in I)) == 1
    assert P(CHART.dx(1), CHART.dx(0), CHART.dx(2)) == -1
