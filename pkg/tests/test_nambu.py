import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from nambulie.exactalg import determinant
from nambulie.extcalc import Chart, OneForm, d_function, lie_derivative, sort_sign
from nambulie.nambu import (
    ArityError,
    NambuStructure,
    NotClosedError,
    bracket_functions,
    certify,
    check_derivation_property,
    check_fi_forms,
    check_form_properties,
    check_fundamental_identity,
    check_leibniz,
    coordinate_fi_tuples,
    expected_suite_size,
    fi_witness,
    fix_last_argument,
    form_bracket,
    form_bracket_first,
    form_bracket_second,
    hamiltonian_field,
    jacobian_structure,
    linear_from_constant,
    random_oneform,
    random_polynomial,
    residual_function_factor,
    residual_hamiltonian,
    verify_nambu,
    vector_product,
)
from strategies import constant_vectors, polynomials

C3 = Chart.standard(3)
C4 = Chart.standard(4)
C5 = Chart.standard(5)
NAMES4 = C4.names


def p4(max_terms=2):
    return polynomials(max_terms, NAMES4)


def sphere_structure():
    # linear order-3 structure on R^4 from the volume 4-vector
    return linear_from_constant(C4.basis_multivector((0, 1, 2, 3)))


def bent_structure():
    x2 = C4.coord(1)
    return C4.basis_multivector((0, 1, 2)) + C4.basis_multivector((0, 1, 3)) * x2


def scaled_jacobian(seed=3):
    f = random_polynomial(C4, random.Random(seed), 2)
    return C4.basis_multivector((0, 1, 2)) * (f + 1)


CERTIFIED = [jacobian_structure(C4, 3).tensor, sphere_structure().tensor, scaled_jacobian()]


# --- brackets of functions ---------------------------------------------------

@given(st.lists(p4(), min_size=3, max_size=3))
def test_jacobian_bracket_is_determinant(fs):
    J = jacobian_structure(C4, 3)
    det = determinant([[f.diff(n) for n in NAMES4[:3]] for f in fs])
    assert bracket_functions(J, *fs) == det


@pytest.mark.parametrize("P", CERTIFIED)
def test_leibniz_rule(P):
    rng = random.Random(11)
    for _ in range(5):
        fs = [random_polynomial(C4, rng) for _ in range(2)]
        g, h = random_polynomial(C4, rng), random_polynomial(C4, rng)
        assert check_leibniz(P, fs, g, h).is_zero()


@pytest.mark.parametrize("P", CERTIFIED)
def test_hamiltonian_fields_preserve_tensor(P):
    rng = random.Random(5)
    for _ in range(4):
        fs = [random_polynomial(C4, rng) for _ in range(2)]
        assert lie_derivative(hamiltonian_field(P, *fs), P).is_zero()


def test_hamiltonian_field_examples():
    J = jacobian_structure(C3, 3)
    x1, x2, _ = C3.coords()
    assert hamiltonian_field(J, x1, x2) == C3.basis_vector(2)
    assert hamiltonian_field(J, x1, 7 + 0 * x1).is_zero()
    with pytest.raises(ArityError):
        hamiltonian_field(J, x1)


def test_sphere_structure_components():
    P = linear_from_constant(C4.basis_multivector((0, 1, 2)))
    x1, x2, x3, _ = C4.coords()
    expected = (C4.basis_multivector((0, 1)) * x3 - C4.basis_multivector((0, 2)) * x2
                + C4.basis_multivector((1, 2)) * x1)
    assert P.tensor == expected


def test_sphere_leaves_are_invariant():
    P = sphere_structure()
    r2 = sum((x * x for x in C4.coords()), C4.const(0)) / 2
    coords = C4.coords()
    for i, j in combinations(range(4), 2):
        assert hamiltonian_field(P, coords[i], coords[j]).apply(r2).is_zero()


# --- verification ----------------------------------------------------------

@pytest.mark.parametrize("P", CERTIFIED)
def test_certified_structures_pass(P):
    rep = verify_nambu(P, suite_size=4)
    assert rep.passed and rep.fi_ok
    assert certify(P)


def test_nondecomposable_fails():
    P = C5.basis_multivector((0, 1, 2)) + C5.basis_multivector((0, 3, 4))
    rep = verify_nambu(P, suite_size=2)
    assert not rep.decomposable
    assert rep.failures()[0] == "decomposability"
    assert rep.plucker_witness is not None


def test_noninvolutive_fails_with_fi_witness():
    P = bent_structure()
    rep = verify_nambu(P, suite_size=2)
    assert rep.decomposable and not rep.involutive
    assert not rep.fi_ok
    label, r = fi_witness(P)
    assert not r.is_zero()
    # the witness is the lexicographically first failing coordinate tuple
    for lab, fs, gs in coordinate_fi_tuples(C4, 3):
        if lab == label:
            break
        assert check_fundamental_identity(P, fs, gs).is_zero()


def test_scaled_sum_is_decomposable():
    P = C4.basis_multivector((0, 1, 2)) + C4.basis_multivector((0, 1, 3))
    assert verify_nambu(P, suite_size=2).passed


def test_suite_size_accounting():
    rep = verify_nambu(jacobian_structure(C4, 3), suite_size=3)
    assert len(rep.fi_residuals) == expected_suite_size(4, 3, 3)


def test_fi_arity():
    with pytest.raises(ArityError):
        check_fundamental_identity(jacobian_structure(C3, 3), [C3.coord(0)], C3.coords())


def test_order_two_label():
    P = NambuStructure(C3.basis_multivector((0, 1)))
    assert "Poisson" in P.label
    with pytest.raises(ValueError):
        NambuStructure(C3.basis_vector(0))


# --- form bracket ------------------------------------------------------------

@pytest.mark.parametrize("P", CERTIFIED)
def test_form_bracket_expressions_agree(P):
    rng = random.Random(2)
    for _ in range(3):
        alphas = [random_oneform(C4, rng) for _ in range(3)]
        assert form_bracket_first(P, *alphas) == form_bracket_second(P, *alphas)


def test_form_bracket_constant_inputs_vanish():
    P = C4.basis_multivector((0, 1, 2))
    alphas = [OneForm(C4, tuple(C4.const(c) for c in v)) for v in ([1, 2, 0, 1], [0, 1, 3, 0], [2, 0, 0, 5])]
    assert form_bracket(P, *alphas).is_zero()


@pytest.mark.parametrize("P", CERTIFIED)
def test_form_properties(P):
    rep = check_form_properties(P, cases=3)
    assert rep.passed
    assert rep.counts() == {"skew": 3, "exact": 3, "function_factor": 3, "hamiltonian": 3}


def test_function_factor_example():
    J = jacobian_structure(C4, 3)
    assert residual_function_factor(J, C4.coord(0), [C4.dx(1), C4.dx(0), C4.dx(2)]).is_zero()


def test_hamiltonian_example():
    J = jacobian_structure(C4, 3)
    x1, x2, x3, _ = C4.coords()
    alpha = OneForm(C4, (x3, C4.const(0), C4.const(0), C4.const(0)))
    assert residual_hamiltonian(J, [x1, x2], alpha).is_zero()


def test_full_skew_symmetry():
    P = sphere_structure()
    rng = random.Random(8)
    alphas = [random_oneform(C4, rng) for _ in range(3)]
    base = form_bracket(P, *alphas)
    for p in permutations(range(3)):
        assert form_bracket(P, *(alphas[i] for i in p)) == base * sort_sign(p)[0]


@pytest.mark.parametrize("P", CERTIFIED[:2])
def test_derivation_property(P):
    rng = random.Random(4)
    fs = [random_polynomial(C4, rng) for _ in range(2)]
    alphas = [random_oneform(C4, rng) for _ in range(3)]
    assert check_derivation_property(P, fs, alphas).is_zero()


@pytest.mark.parametrize("P", CERTIFIED[:2])
def test_fi_for_closed_forms(P):
    rng = random.Random(6)
    betas = [d_function(random_polynomial(C4, rng), C4) for _ in range(2)]
    alphas = [random_oneform(C4, rng) for _ in range(3)]
    assert check_fi_forms(P, betas, alphas).is_zero()


def test_fi_forms_rejects_open_forms():
    x2 = C4.coord(1)
    open_form = OneForm(C4, (x2, C4.const(0), C4.const(0), C4.const(0)))
    with pytest.raises(NotClosedError) as exc:
        check_fi_forms(jacobian_structure(C4, 3), [C4.dx(0), open_form], [C4.dx(i) for i in range(3)])
    assert exc.value.index == 1


# --- constructions -------------------------------------------------------

@pytest.mark.parametrize("P", CERTIFIED)
def test_fixing_an_argument_gives_poisson(P):
    h = C4.coord(3) + C4.coord(0) ** 2
    Q = fix_last_argument(P, h)
    coords = C4.coords()
    for f1 in coords:
        assert bracket_functions(Q, f1, coords[2]) == bracket_functions(P, f1, coords[2], h)
    for lab, fs, gs in coordinate_fi_tuples(C4, 2):
        assert check_fundamental_identity(Q, fs, gs).is_zero()


@settings(max_examples=50)
@given(st.integers(2, 3).flatmap(lambda n: st.lists(constant_vectors(n + 1, -5, 5), min_size=n + 1,
                                                     max_size=n + 1)))
def test_vector_product(vs):
    *inputs, w = vs
    v = vector_product(*inputs)
    for u in inputs:
        assert sum(a * b for a, b in zip(u, v)) == 0
    assert sum(a * b for a, b in zip(v, w)) == determinant(inputs + [w])


def test_cross_product():
    assert vector_product([1, 0, 0], [0, 1, 0]) == [0, 0, 1]
    with pytest.raises(ValueError):
        vector_product([1, 0], [0, 1])
