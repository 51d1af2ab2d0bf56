import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from nambulie.catalog import (
    su2_basis,
    su2_structure,
    u2_central_structure,
    u2_coboundary_lambda,
    u2_coboundary_structure,
    u2_full_basis,
)
from nambulie.extcalc import Chart, KVectorField, mv_add, wedge
from nambulie.liealg import (
    LieAlgebra,
    LinearNambuStructure,
    NotAnIdeal,
    NotProportional,
    UndefinedCore,
    ad_wedge,
    ann_ideal_check,
    check_fi_filippov,
    check_ideal,
    check_jacobi,
    coboundary,
    cocycle_check,
    core_of_linear,
    dichotomy_holds,
    dual_filippov,
    gamma_of,
    is_ideal,
    is_nambu_lie_algebra,
    search_nambu_lie,
    u2,
    u2_matrices,
    vector_product_algebra,
    wedge_vectors,
)
from nambulie.nambu import linear_from_constant, verify_nambu

U2 = u2()
E = [U2.unit(i) for i in range(4)]


def so3():
    return LieAlgebra(3, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (2, 0): [0, 1, 0]})


def affine2():
    return LieAlgebra(2, {(0, 1): [0, 1]})


def heisenberg3():
    return LieAlgebra(3, {(0, 1): [0, 0, 1]})


ALGEBRAS = [U2, so3(), affine2(), heisenberg3(), LieAlgebra.abelian(3)]


def seeded_lambda(L, degree, rng):
    return {I: Fraction(rng.randint(-3, 3)) for I in combinations(range(L.dim), degree)}


# --- algebras ----------------------------------------------------------------

def test_u2_brackets():
    assert U2.basis_bracket(1, 2) == E[3]
    assert U2.basis_bracket(3, 1) == E[2]
    assert U2.basis_bracket(2, 3) == E[1]
    assert all(U2.basis_bracket(0, j) == [0] * 4 for j in range(4))


def test_u2_matrices_commutators():
    # the algebra was read off matrix commutators; recompute one directly
    M = u2_matrices()
    def mul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(2)), 0 * A[0][0]) for j in range(2)] for i in range(2)]
    C = [[a - b for a, b in zip(r, s)] for r, s in zip(mul(M[1], M[2]), mul(M[2], M[1]))]
    assert C == M[3]


@pytest.mark.parametrize("L", ALGEBRAS)
def test_jacobi(L):
    assert all(not any(r) for _, r in check_jacobi(L))


def test_perturbed_jacobi_rejected():
    bad = {(1, 2): [0, 0, 0, 2], (3, 1): [0, 0, 1, 0], (2, 3): [0, 1, 0, 0], (0, 1): [0, 0, 1, 0]}
    with pytest.raises(ValueError):
        LieAlgebra(4, bad)
    L = LieAlgebra(4, bad, check=False)
    assert any(any(r) for _, r in check_jacobi(L))


# --- ad on multivectors ------------------------------------------------------

def test_ad_center_kills_top_form():
    assert ad_wedge(U2, E[0], wedge_vectors(E)) == {}


def test_ad_example():
    Lam = wedge_vectors([E[3], E[1], E[0]])
    assert ad_wedge(U2, E[1], Lam) == wedge_vectors([[-x for x in E[2]], E[1], E[0]])


@pytest.mark.parametrize("L", ALGEBRAS)
def test_ad_is_representation(L):
    rng = random.Random(1)
    Lam = seeded_lambda(L, 2, rng)
    for i, j in combinations(range(L.dim), 2):
        X, Y = L.unit(i), L.unit(j)
        lhs = mv_add(ad_wedge(L, X, ad_wedge(L, Y, Lam)), ad_wedge(L, Y, ad_wedge(L, X, Lam)), -1)
        assert lhs == ad_wedge(L, L.bracket(X, Y), Lam)


# --- dual brackets --------------------------------------------------------

def test_dual_of_central_structure():
    F = dual_filippov(u2_central_structure())
    assert F.bracket(*E) == E[0]


def test_dual_of_zero_structure():
    L = LieAlgebra.abelian(3)
    zero = LinearNambuStructure(L, KVectorField(L.chart(), 2, {}))
    assert zero.is_zero()
    assert dual_filippov(zero).bracket(L.unit(0), L.unit(1)) == [0, 0, 0]
    assert all(not any(r) for _, r in check_fi_filippov(dual_filippov(zero)))


def test_cross_product_dual_bracket():
    C = Chart.standard(3)
    Pi = LinearNambuStructure(LieAlgebra.abelian(3), linear_from_constant(C.basis_multivector((0, 1, 2))).tensor)
    F = dual_filippov(Pi)
    e = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert F.bracket(e[0], e[1]) == e[2]
    assert F.bracket(e[1], e[2]) == e[0]
    assert F.bracket(e[2], e[0]) == e[1]


@pytest.mark.parametrize("Pi", [u2_central_structure(), u2_coboundary_structure(), su2_structure()])
def test_dual_roundtrip_and_fi(Pi):
    F = dual_filippov(Pi)
    assert F.to_linear(Pi.carrier) == Pi
    assert all(not any(r) for _, r in check_fi_filippov(F))


def test_vector_product_algebra_fi():
    F = vector_product_algebra(3)
    assert all(not any(r) for _, r in check_fi_filippov(F))


def test_perturbed_filippov_fails():
    F = vector_product_algebra(3)
    k = min(F.constants)
    F.constants[k] = [c * 2 + 1 for c in F.constants[k]]
    assert any(any(r) for _, r in check_fi_filippov(F))


# --- cocycles ---------------------------------------------------------------

def test_coboundary_matches_displayed_tensor():
    # (x2 d2 + x4 d4) ^ d3 ^ d1
    C = U2.chart()
    x = C.coords()
    V = C.vector([0, x[1], 0, x[3]])
    expected = wedge(wedge(V, C.basis_vector(2)), C.basis_vector(0))
    assert u2_coboundary_structure().tensor == expected


@pytest.mark.parametrize("Pi", [u2_central_structure(), u2_coboundary_structure(), su2_structure()])
def test_u2_cocycles(Pi):
    rep = cocycle_check(U2, Pi)
    assert rep.is_cocycle and rep.pairing_holds and rep.equivalent


@pytest.mark.parametrize("L", ALGEBRAS)
@pytest.mark.parametrize("degree", [2, 3])
def test_coboundaries_are_cocycles(L, degree):
    if degree > L.dim:
        pytest.skip("degree exceeds dimension")
    rng = random.Random(f"{L.dim}:{degree}")
    for _ in range(3):
        Pi = coboundary(L, seeded_lambda(L, degree, rng))
        if Pi.is_zero():
            continue
        rep = cocycle_check(L, Pi)
        assert rep.is_cocycle and rep.equivalent


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_abelian_cocycles(cs):
    L = LieAlgebra.abelian(3)
    Pi = LinearNambuStructure.from_components(L, [{(0, 1): Fraction(c)} for c in cs])
    assert cocycle_check(L, Pi).is_cocycle


def test_cocycle_pairing_equivalence_on_failures():
    bad = LinearNambuStructure.parse(U2, {(0, 1, 2, 3): "x1 + x2"})
    rep = cocycle_check(U2, bad)
    assert not rep.is_cocycle
    assert not rep.pairing_holds
    assert rep.failing_pairs()


# --- cores ------------------------------------------------------------------------

def test_core_of_central_structure():
    core = core_of_linear(u2_central_structure(), U2)
    assert core.case == "a" and core.dim_H == 4
    assert core.gamma == [0, 0, 0, 0]


def test_core_of_su2_structure():
    core = core_of_linear(su2_structure(), U2)
    assert core.case == "a"
    assert core.H == su2_basis()


def test_core_of_heisenberg_type_tensor():
    # y d_x1 ^ d_z1 ^ d_y on a 5-dim space (x1, x2, y, z1, z2)
    L = LieAlgebra.abelian(5, coord_names=("x1", "x2", "y", "z1", "z2"))
    Pi = LinearNambuStructure.parse(L, {(0, 3, 2): "y"})
    core = core_of_linear(Pi)
    assert core.case == "a"
    assert sorted(core.H) == sorted([L.unit(0), L.unit(2), L.unit(3)])


def test_core_of_zero_structure():
    L = LieAlgebra.abelian(3)
    with pytest.raises(UndefinedCore):
        core_of_linear(LinearNambuStructure.from_components(L, [{}, {}, {}]))


@pytest.mark.parametrize("Pi", [u2_central_structure(), u2_coboundary_structure(), su2_structure()])
def test_dichotomy(Pi):
    assert dichotomy_holds(Pi)


def test_gamma_examples():
    assert gamma_of(U2, wedge_vectors(E)) == [0, 0, 0, 0]
    A = affine2()
    assert gamma_of(A, wedge_vectors([A.unit(0), A.unit(1)])) == [1, 0]


def test_gamma_not_proportional():
    with pytest.raises(NotProportional):
        gamma_of(U2, wedge_vectors([E[1]]))


# --- ideals and search -------------------------------------------------------------

def test_ideals():
    assert is_ideal(U2, su2_basis())
    assert is_ideal(U2, [E[0]])
    with pytest.raises(NotAnIdeal):
        check_ideal(U2, [E[1]])


def test_search_u2_type_a():
    res = search_nambu_lie(U2, u2_full_basis(), "a")
    assert res.dimension == 1
    assert res.candidates[0] == u2_central_structure()
    assert len(res.filtered) == 1


def test_search_u2_type_b_is_zero():
    res = search_nambu_lie(U2, u2_full_basis(), "b")
    assert res.dimension == 0


def test_search_su2_type_a():
    res = search_nambu_lie(U2, su2_basis(), "a")
    assert res.dimension == 1
    assert res.candidates[0] == su2_structure()


def test_search_u2_type_c_contains_coboundary():
    res = search_nambu_lie(U2, u2_full_basis(), "c")
    target = u2_coboundary_structure()
    m = U2.dim
    keys = [(j, I) for j in range(m) for I in combinations(range(m), 3)]
    rows = [[P.components[j].get(I, 0) for j, I in keys] for P in res.candidates]
    from nambulie.exactalg import in_span
    assert in_span([target.components[j].get(I, 0) for j, I in keys], rows)


@pytest.mark.parametrize("case", ["a", "b", "c"])
def test_filtered_candidates_are_nambu_lie(case):
    res = search_nambu_lie(U2, u2_full_basis(), case)
    for Pi in res.filtered:
        assert is_nambu_lie_algebra(U2, Pi).passed


def test_search_rejects_non_ideal():
    with pytest.raises(NotAnIdeal):
        search_nambu_lie(U2, [E[1]], "a")


def test_nambu_lie_verdicts():
    assert is_nambu_lie_algebra(U2, u2_central_structure()).passed
    assert is_nambu_lie_algebra(U2, u2_coboundary_structure()).passed
    bad = LinearNambuStructure.parse(U2, {(0, 1, 2, 3): "x1 + x2"})
    v = is_nambu_lie_algebra(U2, bad)
    assert not v.passed and v.failing_pairs


def test_linear_structure_rejects_nonlinear():
    with pytest.raises(ValueError):
        LinearNambuStructure.parse(U2, {(0, 1, 2): "x1^2"})
    with pytest.raises(ValueError):
        LinearNambuStructure.parse(U2, {(0, 1, 2): "x1 + 1"})


# --- annihilator ideals ------------------------------------------------------------

def test_ann_ideal_zero_structure():
    zero = LinearNambuStructure.from_components(U2, [{(0, 1): Fraction(0)}] * 4)
    ok, _ = ann_ideal_check(U2, zero, su2_basis())
    assert ok


def test_ann_ideal_su2():
    ok, _ = ann_ideal_check(U2, u2_central_structure(), su2_basis())
    assert ok


def test_ann_ideal_escaping_bracket():
    # Ann(span{X1}) = span{e2, e3, e4}; the bracket of all four dual basis vectors is e1
    ok, witness = ann_ideal_check(U2, u2_central_structure(), [E[0]])
    assert not ok
    beta, J, out = witness
    assert out[0] != 0


def test_ann_ideal_requires_subalgebra():
    with pytest.raises(ValueError):
        ann_ideal_check(U2, u2_central_structure(), [E[1], E[2]])


def test_linear_structures_are_nambu():
    for Pi in (u2_central_structure(), u2_coboundary_structure(), su2_structure()):
        assert verify_nambu(Pi.tensor, suite_size=2).passed


def test_coboundary_lambda():
    assert u2_coboundary_lambda() == wedge_vectors([E[3], E[1], E[0]])


def test_ann_ideal_of_x2_span_holds():
    # Ann(span{X2}) = span{e1, e3, e4}; every bracket is a multiple of e1, which kills X2
    ok, _ = ann_ideal_check(U2, u2_central_structure(), [E[1]])
    assert ok
