"""Nambu brackets of functions and 1-forms.

A Nambu tensor of order n is an n-vector field ``P`` whose bracket
``{f1, ..., fn} = P(df1, ..., dfn)`` satisfies the fundamental identity.
Certification uses the local criterion: ``P`` is decomposable and the span of
its factors is involutive. Fundamental-identity residuals on seeded polynomial
suites are computed alongside as an independent cross-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .exactalg import RatFunc, determinant
from .extcalc import (
    Chart,
    KVectorField,
    OneForm,
    d_function,
    d_oneform,
    factor_span,
    interior_vector_twoform,
    involutivity_witness,
    is_decomposable,
    lie_derivative_form,
    mv_interior,
    plucker_witness,
    sharp,
    sort_sign,
)

DEFAULT_SEED = 0x4E414D42
DEFAULT_SUITE_SIZE = 20


class ArityError(ValueError):
    pass


class NotClosedError(ValueError):
    """A 1-form required to be closed has nonzero exterior derivative."""

    def __init__(self, index: int, form: OneForm):
        self.index = index
        self.form = form
        super().__init__(f"beta[{index}] = {form} is not closed")


class FormBracketMismatch(AssertionError):
    """The two expressions of the form-bracket disagree."""


@dataclass(frozen=True)
class NambuStructure:
    tensor: KVectorField

    def __post_init__(self):
        if self.tensor.degree < 2:
            raise ValueError("a Nambu structure has order at least 2")

    @property
    def order(self) -> int:
        return self.tensor.degree

    @property
    def chart(self) -> Chart:
        return self.tensor.chart

    @property
    def label(self) -> str:
        return "Poisson (degenerate order)" if self.order == 2 else f"Nambu of order {self.order}"


def _tensor(P) -> KVectorField:
    return P.tensor if isinstance(P, NambuStructure) else P


# ---------------------------------------------------------------------------
# brackets of functions
# ---------------------------------------------------------------------------

def bracket_functions(P, *fs) -> RatFunc:
    T = _tensor(P)
    if len(fs) != T.degree:
        raise ArityError(f"order-{T.degree} bracket takes {T.degree} functions, got {len(fs)}")
    return T(*(d_function(f, T.chart) for f in fs))


def hamiltonian_field(P, *fs) -> KVectorField:
    T = _tensor(P)
    if len(fs) != T.degree - 1:
        raise ArityError(f"Hamiltonian field of an order-{T.degree} tensor takes {T.degree - 1} functions")
    return sharp(T, *(d_function(f, T.chart) for f in fs))


def check_fundamental_identity(P, fs: Sequence, gs: Sequence) -> RatFunc:
    """``{f.., {g..}} - sum_k {g1.., {f.., gk}, .., gn}``."""
    T = _tensor(P)
    n = T.degree
    if len(fs) != n - 1 or len(gs) != n:
        raise ArityError(f"fundamental identity of order {n} needs {n - 1} + {n} functions")
    chart = T.chart
    fs = [chart.as_ratfunc(f) for f in fs]
    gs = [chart.as_ratfunc(g) for g in gs]
    grads = {}

    def d(f):
        key = id(f)
        if key not in grads:
            grads[key] = (f, d_function(f, chart))
        return grads[key][1]

    def br(args):
        return T(*(d(a) for a in args))

    lhs = br(fs + [br(gs)])
    rhs = chart.const(0)
    for k in range(n):
        inner = br(fs + [gs[k]])
        rhs = rhs + br(gs[:k] + [inner] + gs[k + 1:])
    return lhs - rhs


def check_leibniz(P, fs: Sequence, g, h) -> RatFunc:
    """Residual of the Leibniz rule in the last slot."""
    T = _tensor(P)
    chart = T.chart
    fs = [chart.as_ratfunc(f) for f in fs]
    g, h = chart.as_ratfunc(g), chart.as_ratfunc(h)
    return (bracket_functions(T, *fs, g * h)
            - bracket_functions(T, *fs, g) * h - g * bracket_functions(T, *fs, h))


def random_polynomial(chart: Chart, rng: random.Random, degree: int = 2, bound: int = 3) -> RatFunc:
    """Integer-coefficient polynomial with every monomial of degree <= ``degree``."""
    m = chart.dim
    terms = {}
    for total in range(degree + 1):
        for combo in _exponents(m, total):
            c = rng.randint(-bound, bound)
            if c:
                terms[combo] = c
    return RatFunc.from_terms(chart.names, terms)


def _exponents(m: int, total: int):
    if m == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _exponents(m - 1, total - k):
            yield (k,) + rest


def random_oneform(chart: Chart, rng: random.Random, degree: int = 1, bound: int = 3) -> OneForm:
    return OneForm(chart, tuple(random_polynomial(chart, rng, degree, bound) for _ in range(chart.dim)))


def coordinate_fi_tuples(chart: Chart, n: int):
    """Coordinate-function argument tuples, skew-reduced to increasing indices."""
    coords = chart.coords()
    for I in combinations(range(chart.dim), n - 1):
        for J in combinations(range(chart.dim), n):
            yield (I, J), [coords[i] for i in I], [coords[j] for j in J]


def random_fi_tuples(chart: Chart, n: int, count: int, seed: int, degree: int = 2):
    rng = random.Random(seed)
    for t in range(count):
        fs = [random_polynomial(chart, rng, degree) for _ in range(n - 1)]
        gs = [random_polynomial(chart, rng, degree) for _ in range(n)]
        yield ("random", t), fs, gs


def fi_witness(P):
    """First coordinate tuple (lexicographic) with a nonzero FI residual."""
    T = _tensor(P)
    for label, fs, gs in coordinate_fi_tuples(T.chart, T.degree):
        r = check_fundamental_identity(T, fs, gs)
        if r:
            return label, r
    return None


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    order: int
    decomposable: bool
    involutive: bool
    fi_residuals: list = field(default_factory=list)
    plucker_witness: object = None
    involutivity_witness: object = None

    @property
    def fi_ok(self) -> bool:
        return all(not r for _, r in self.fi_residuals)

    @property
    def verdict(self) -> str:
        return "pass" if self.decomposable and self.involutive and self.fi_ok else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def fi_witness(self):
        return next(((lab, r) for lab, r in self.fi_residuals if r), None)

    @property
    def label(self) -> str:
        return "Poisson (degenerate order)" if self.order == 2 else f"Nambu of order {self.order}"

    def failures(self) -> list[str]:
        out = []
        if not self.decomposable:
            out.append("decomposability")
        if not self.involutive:
            out.append("involutivity")
        if not self.fi_ok:
            out.append("fundamental identity")
        return out


def verify_nambu(P, *, seed: int = DEFAULT_SEED, suite_size: int = DEFAULT_SUITE_SIZE,
                 coordinate_tuples: bool = True) -> VerificationReport:
    T = _tensor(P)
    n = T.degree
    if n < 2:
        raise ValueError("verify_nambu needs order >= 2")
    pw = plucker_witness(T)
    decomposable = pw is None
    iw = involutivity_witness(factor_span(T)) if decomposable else None
    involutive = decomposable and iw is None
    residuals = []
    suites = []
    if coordinate_tuples:
        suites.append(coordinate_fi_tuples(T.chart, n))
    suites.append(random_fi_tuples(T.chart, n, suite_size, seed))
    for suite in suites:
        for label, fs, gs in suite:
            residuals.append((label, check_fundamental_identity(T, fs, gs)))
    return VerificationReport(n, decomposable, involutive, residuals, pw, iw)


def certify(P) -> bool:
    """Decomposable with involutive factor span (no FI suite)."""
    T = _tensor(P)
    return is_decomposable(T) and involutivity_witness(factor_span(T)) is None


# ---------------------------------------------------------------------------
# form-bracket
# ---------------------------------------------------------------------------

def _omit(seq, k):
    return list(seq[:k]) + list(seq[k + 1:])


def form_bracket_first(P, *alphas: OneForm) -> OneForm:
    """``d(P(a)) + sum_k (-1)^(n+k) i(sharp(a without k)) d a_k``."""
    T = _tensor(P)
    n = T.degree
    if len(alphas) != n:
        raise ArityError(f"form-bracket of order {n} takes {n} 1-forms, got {len(alphas)}")
    chart = T.chart
    out = d_function(T(*alphas), chart)
    for k in range(n):
        da = d_oneform(alphas[k])
        if da.is_zero():
            continue
        X = sharp(T, *_omit(alphas, k))
        term = interior_vector_twoform(X, da)
        out = out + term if (n + k + 1) % 2 == 0 else out - term
    return out


def form_bracket_second(P, *alphas: OneForm) -> OneForm:
    """``sum_k (-1)^(n+k) L_{sharp(a without k)} a_k - (n-1) d(P(a))``."""
    T = _tensor(P)
    n = T.degree
    if len(alphas) != n:
        raise ArityError(f"form-bracket of order {n} takes {n} 1-forms, got {len(alphas)}")
    chart = T.chart
    out = d_function(T(*alphas), chart) * (-(n - 1))
    for k in range(n):
        X = sharp(T, *_omit(alphas, k))
        term = lie_derivative_form(X, alphas[k])
        out = out + term if (n + k + 1) % 2 == 0 else out - term
    return out


def form_bracket(P, *alphas: OneForm) -> OneForm:
    """Nambu bracket of 1-forms; both defining expressions are evaluated and compared."""
    a = form_bracket_first(P, *alphas)
    b = form_bracket_second(P, *alphas)
    if a != b:
        raise FormBracketMismatch(f"form-bracket expressions differ: {a} vs {b}")
    return a


def _perm_sign(p) -> int:
    return sort_sign(p)[0]


@dataclass
class FormPropertiesReport:
    skew: list = field(default_factory=list)
    exact: list = field(default_factory=list)
    function_factor: list = field(default_factory=list)
    hamiltonian: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.is_zero() for group in (self.skew, self.exact, self.function_factor, self.hamiltonian)
                   for r in group)

    def counts(self) -> dict:
        return {"skew": len(self.skew), "exact": len(self.exact),
                "function_factor": len(self.function_factor), "hamiltonian": len(self.hamiltonian)}


def residual_exact_bracket(P, fs) -> OneForm:
    """``{df1..dfn} - d{f1..fn}``."""
    T = _tensor(P)
    return form_bracket(T, *(d_function(f, T.chart) for f in fs)) - d_function(bracket_functions(T, *fs), T.chart)


def residual_function_factor(P, f, alphas) -> OneForm:
    """``{f a1, a2..} - f{a1, a2..} - P(df, a2, ..) a1``."""
    T = _tensor(P)
    chart = T.chart
    f = chart.as_ratfunc(f)
    lhs = form_bracket(T, alphas[0] * f, *alphas[1:])
    rhs = form_bracket(T, *alphas) * f + alphas[0] * T(d_function(f, chart), *alphas[1:])
    return lhs - rhs


def residual_hamiltonian(P, fs, alpha) -> OneForm:
    """``{df1..df_{n-1}, a} - L_{X_f} a``."""
    T = _tensor(P)
    dfs = [d_function(f, T.chart) for f in fs]
    return form_bracket(T, *dfs, alpha) - lie_derivative_form(hamiltonian_field(T, *fs), alpha)


def check_form_properties(P, *, seed: int = DEFAULT_SEED, cases: int = 10) -> FormPropertiesReport:
    """Skew-symmetry and the exact-form, function-factor and Hamiltonian identities."""
    T = _tensor(P)
    n = T.degree
    chart = T.chart
    rng = random.Random(seed)
    rep = FormPropertiesReport()
    for _ in range(cases):
        alphas = [random_oneform(chart, rng) for _ in range(n)]
        base = form_bracket(T, *alphas)
        perm = list(permutations(range(n)))
        p = perm[rng.randrange(len(perm))]
        permuted = form_bracket(T, *(alphas[i] for i in p))
        rep.skew.append(permuted - base * _perm_sign(p))
        fs = [random_polynomial(chart, rng, 2) for _ in range(n)]
        rep.exact.append(residual_exact_bracket(T, fs))
        f = random_polynomial(chart, rng, 2)
        rep.function_factor.append(residual_function_factor(T, f, alphas))
        rep.hamiltonian.append(residual_hamiltonian(T, fs[: n - 1], alphas[0]))
    return rep


def check_derivation_property(P, fs: Sequence, alphas: Sequence[OneForm]) -> OneForm:
    """``L_X {a..} - sum_k {a1.., L_X a_k, .., an}`` with ``X = X_{f1..f_{n-1}}``."""
    T = _tensor(P)
    n = T.degree
    if len(fs) != n - 1 or len(alphas) != n:
        raise ArityError(f"derivation check of order {n} needs {n - 1} functions and {n} 1-forms")
    X = hamiltonian_field(T, *fs)
    out = lie_derivative_form(X, form_bracket(T, *alphas))
    for k in range(n):
        args = list(alphas)
        args[k] = lie_derivative_form(X, alphas[k])
        out = out - form_bracket(T, *args)
    return out


def check_fi_forms(P, betas: Sequence[OneForm], alphas: Sequence[OneForm]) -> OneForm:
    """Fundamental-identity residual for 1-forms; every ``beta`` must be closed."""
    T = _tensor(P)
    n = T.degree
    if len(betas) != n - 1 or len(alphas) != n:
        raise ArityError(f"needs {n - 1} closed forms and {n} forms")
    for i, b in enumerate(betas):
        if not d_oneform(b).is_zero():
            raise NotClosedError(i, b)
    betas = list(betas)
    lhs = form_bracket(T, *betas, form_bracket(T, *alphas))
    rhs = None
    for k in range(n):
        args = list(alphas)
        args[k] = form_bracket(T, *betas, alphas[k])
        term = form_bracket(T, *args)
        rhs = term if rhs is None else rhs + term
    return lhs - rhs


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def fix_last_argument(P, h) -> KVectorField:
    """Tensor of the order-(n-1) bracket ``{f1..f_{n-1}} -> {f1..f_{n-1}, h}``."""
    T = _tensor(P)
    dh = d_function(h, T.chart)
    A = mv_interior(dh.coeffs, T.coeffs)
    # last-slot contraction = (-1)^(n-1) times first-slot contraction
    if (T.degree - 1) % 2:
        A = {k: -v for k, v in A.items()}
    return KVectorField(T.chart, T.degree - 1, A)


def linear_from_constant(k: KVectorField) -> NambuStructure:
    """Linear order-(n-1) structure ``P^{I} = sum_j k^{I j} x^j`` from a constant n-vector."""
    if not k.is_constant():
        raise ValueError("linear_from_constant needs constant coefficients")
    n = k.degree
    if n < 3:
        raise ValueError("the constant tensor must have degree >= 3 to give order >= 2")
    chart = k.chart
    coords = chart.coords()
    out: dict = {}
    for I in combinations(range(chart.dim), n - 1):
        c = chart.const(0)
        for j in range(chart.dim):
            s, K = sort_sign(I + (j,))
            if s and K in k.coeffs:
                c = c + k.coeffs[K] * coords[j] * s
        if c:
            out[I] = c
    return NambuStructure(KVectorField(chart, n - 1, out))


def vector_product(*vectors: Sequence) -> list[Fraction]:
    """Hodge dual of ``v1 ^ ... ^ vn`` in R^(n+1): component i is det[v1..vn e_i]."""
    n = len(vectors)
    if n == 0:
        raise ValueError("vector product of no vectors")
    vs = [[Fraction(x) for x in v] for v in vectors]
    if any(len(v) != n + 1 for v in vs):
        raise ValueError(f"vector product of {n} vectors needs length {n + 1}")
    out = []
    for i in range(n + 1):
        e = [Fraction(int(j == i)) for j in range(n + 1)]
        out.append(determinant(vs + [e]))
    return out


def volume_multivector(chart: Chart) -> KVectorField:
    return chart.basis_multivector(tuple(range(chart.dim)))


def jacobian_structure(chart: Chart, n: int) -> NambuStructure:
    """``d/dx1 ^ ... ^ d/dxn`` on ``chart``."""
    return NambuStructure(chart.basis_multivector(tuple(range(n))))


def expected_suite_size(m: int, n: int, random_count: int) -> int:
    return comb(m, n - 1) * comb(m, n) + random_count
