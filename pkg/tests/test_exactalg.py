from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from nambulie.exactalg import (
    ChartMismatch,
    DomainError,
    GaussRat,
    ParseError,
    RatFunc,
    determinant,
    format_rat,
    in_span,
    kernel,
    matvec,
    normalize,
    parse_rat,
    parse_ratfunc,
    rank,
    row_basis,
    rref,
    solve_linear,
    span_intersection,
    to_rat,
)
from strategies import NAMES, fractions, nonzero_polynomials, polynomials, ratfuncs

SYMS = sympy.symbols(NAMES)


def to_sympy(f: RatFunc):
    return sympy.sympify(str(f).replace("^", "**"), locals=dict(zip(NAMES, SYMS)))


def same(f: RatFunc, expr) -> bool:
    return sympy.cancel(to_sympy(f) - expr) == 0


x1, x2, x3 = (RatFunc.var(NAMES, n) for n in NAMES)


# --- scalars -----------------------------------------------------------------

def test_rat_parse_and_format_roundtrip():
    assert parse_rat("3/2") == Fraction(3, 2)
    assert parse_rat("-4") == Fraction(-4)
    assert format_rat(Fraction(6, 4)) == "3/2"
    assert format_rat(Fraction(5)) == "5"


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        to_rat(0.5)
    with pytest.raises(TypeError):
        to_rat(True)
    with pytest.raises(ValueError):
        parse_rat("0.5")


@given(fractions, fractions, fractions, fractions)
def test_gaussrat_field(a, b, c, d):
    z, w = GaussRat(a, b), GaussRat(c, d)
    assert z * w == w * z
    assert (z + w) - w == z
    assert z * z.conjugate() == GaussRat(z.norm2())
    if w != 0:
        assert (z / w) * w == z


def test_gaussrat_unit():
    i = GaussRat(0, 1)
    assert i * i == -1
    assert 1 / i == -i


# --- rational functions ------------------------------------------------------------

def test_canonical_form_cancels():
    f = (x1 ** 2 - 1) / (x1 - 1)
    assert f == x1 + 1
    assert f.is_polynomial()


def test_denominator_is_monic():
    f = x1 / (2 * x2 + 4)
    assert f.den.LC == 1


def test_derivative_of_cubic():
    f = parse_ratfunc("x1*(x1^2 - 1)/2", NAMES)
    assert f.diff("x1") == parse_ratfunc("3/2*x1^2 - 1/2", NAMES)


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 * a
    if b:
        assert (a / b) * b == a


@given(ratfuncs(), ratfuncs())
def test_arithmetic_matches_sympy(a, b):
    A, B = to_sympy(a), to_sympy(b)
    assert same(a * b + a, A * B + A)
    if b:
        assert same(a / b, A / B)


@given(ratfuncs(), ratfuncs(), st.sampled_from(NAMES))
def test_leibniz_rule(a, b, v):
    assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


@given(ratfuncs(), st.sampled_from(NAMES))
def test_derivative_matches_sympy(a, v):
    assert same(a.diff(v), sympy.diff(to_sympy(a), SYMS[NAMES.index(v)]))


@given(ratfuncs())
def test_normalize_idempotent(a):
    n = normalize(a)
    assert normalize(n) == n == a
    assert (n.num, n.den) == (normalize(n).num, normalize(n).den)


@given(polynomials(), st.tuples(*(st.integers(-3, 3) for _ in NAMES)))
def test_evaluate_matches_sympy(p, point):
    expected = to_sympy(p).subs(dict(zip(SYMS, point)))
    assert p.evaluate(point) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))


def test_evaluate_at_pole():
    with pytest.raises(DomainError):
        (1 / x1).evaluate((0, 1, 1))


def test_mixed_rings_refused():
    y = RatFunc.var(("y",), "y")
    with pytest.raises(ChartMismatch):
        x1 + y
    assert x1 != y


def test_unknown_variable_diff():
    with pytest.raises(KeyError):
        x1.diff("q")


def test_subs_composes():
    f = x1 ** 2 + x2
    g = f.subs({"x1": x2 + 1})
    assert g == (x2 + 1) ** 2 + x2


def test_lift_preserves_value():
    f = RatFunc.var(("a",), "a") ** 2
    g = f.lift(("b", "a"))
    assert g.evaluate({"a": 3, "b": 7}) == 9


# --- parser ----------------------------------------------------------------

def test_parse_precedence():
    assert parse_ratfunc("-x1^2 + 3/2*x2", NAMES) == -x1 ** 2 + Fraction(3, 2) * x2
    assert parse_ratfunc("(x1 + 1)/(x1 + 1)", NAMES) == 1 + 0 * x1


def test_parse_float_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_ratfunc("x1 + 0.5", NAMES, line=4, column=10)
    assert exc.value.line == 4
    assert exc.value.column == 15
    assert "0.5" in str(exc.value)


@pytest.mark.parametrize("text", ["x1 +", "x9", "(x1", "x1 ^ x2", "2 ** 3"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_ratfunc(text, NAMES)


@given(ratfuncs())
def test_format_parse_roundtrip(a):
    assert parse_ratfunc(str(a), NAMES) == a


# --- linear algebra ---------------------------------------------------------

matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=1, max_size=4))


@given(matrices)
def test_rank_nullity(A):
    n = len(A[0])
    K = kernel(A, n)
    assert rank(A) + len(K) == n
    for v in K:
        assert all(x == 0 for x in matvec(A, v))


@given(matrices, st.data())
def test_solve_linear_invariants(A, data):
    n = len(A[0])
    x0 = data.draw(st.lists(fractions, min_size=n, max_size=n))
    b = matvec(A, x0)
    sol = solve_linear(A, b, n)
    assert sol is not None
    assert matvec(A, sol.particular) == b
    for v in sol.kernel:
        assert all(x == 0 for x in matvec(A, v))


def test_infeasible_system():
    assert solve_linear([[1, 1], [2, 2]], [Fraction(1), Fraction(3)]) is None


@given(matrices)
def test_rref_is_reduced(A):
    R, piv = rref(A)
    for r, p in zip(R, piv):
        assert r[p] == 1
        assert all(R[k][p] == 0 for k in range(len(R)) if R[k] is not r)
    assert rank(R) == rank(A)


def test_rank_over_ratfuncs():
    assert rank([[x1, x1 ** 2], [1 + 0 * x1, x1]]) == 1
    assert rank([[x1, x2], [x2, x1]]) == 2


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_matches_sympy(A):
    assert determinant([[Fraction(x) for x in r] for r in A]) == sympy.Matrix(A).det()


def test_span_intersection():
    U = [[Fraction(1), 0, 0], [0, Fraction(1), 0]]
    W = [[0, Fraction(1), 0], [0, 0, Fraction(1)]]
    I = span_intersection(U, W, 3)
    assert I == [[0, 1, 0]]
    assert in_span([0, 2, 0], I)
    assert row_basis(U + W) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@given(nonzero_polynomials())
def test_nonzero_division_roundtrip(p):
    assert (1 / p) * p == 1 + 0 * p
