"""Builtin example catalog.

Each entry bundles a structure with the checks that apply to it and a
documented expectation (``"pass"`` or ``"fail"``). Entries are addressed by
stable identifiers and run independently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exactalg import RatFunc
from .extcalc import Chart, KVectorField, format_multivector, wedge_all
from .liealg import (
    LieAlgebra,
    LinearNambuStructure,
    check_fi_filippov,
    cocycle_check,
    coboundary,
    core_of_linear,
    dichotomy_holds,
    dual_filippov,
    search_nambu_lie,
    u2,
    u2_matrices,
    wedge_vectors,
)
from .matgrp import (
    ChartGroup,
    CoboundaryTensor,
    cayley_pairs,
    cayley_samples,
    check_multiplicative_at,
    filippov_from_coframe,
    group_core_case,
    invariance_check,
    linear_approximation,
    product_group,
    sampled_core_case,
    symbolic_multiplicativity,
    vanishing_membership,
)
from .nambu import (
    DEFAULT_SEED,
    DEFAULT_SUITE_SIZE,
    check_form_properties,
    jacobian_structure,
    linear_from_constant,
    random_polynomial,
    verify_nambu,
)


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def g3_group() -> ChartGroup:
    """Matrices ``[[x, 0, y], [0, x, z], [0, 0, 1]]`` with ``x != 0``."""
    ch = Chart(("x", "y", "z"), ("x",))
    return ChartGroup("G3", ch, ["x_1*x_2", "x_1*y_2 + y_1", "x_1*z_2 + z_1"], [1, 0, 0],
                      [ch.parse(s) for s in ("1/x", "-y/x", "-z/x")])


def g3_coframe():
    ch = g3_group().chart
    inv = ch.parse("1/x")
    return [ch.form([inv, 0, 0]), ch.form([0, inv, 0]), ch.form([0, 0, inv])]


def g3_tensor(f: str = "x*(x^2 - 1)/2") -> KVectorField:
    ch = g3_group().chart
    return ch.basis_multivector((0, 1, 2), ch.parse(f))


def heisenberg_names(p: int) -> tuple[str, ...]:
    return tuple([f"x{i}" for i in range(1, p + 1)] + ["y"] + [f"z{i}" for i in range(1, p + 1)])


def heisenberg_group(p: int) -> ChartGroup:
    """Block matrices ``[[I_p, X, Z], [0, 1, y], [0, 0, 1]]``; coordinates ``(x.., y, z..)``."""
    ch = Chart(heisenberg_names(p))
    r = range(1, p + 1)
    law = [f"x{i}_1 + x{i}_2" for i in r] + ["y_1 + y_2"] + [f"z{i}_1 + z{i}_2 + x{i}_1*y_2" for i in r]
    inv = [f"-x{i}" for i in r] + ["-y"] + [f"-z{i} + x{i}*y" for i in r]
    return ChartGroup(f"H(1,{p})", ch, law, [0] * (2 * p + 1), [ch.parse(s) for s in inv])


def heisenberg_coframe(p: int):
    ch = Chart(heisenberg_names(p))
    m = ch.dim
    iy = ch.index("y")
    forms = []
    for k in range(m):
        c = [0] * m
        c[k] = 1
        name = ch.names[k]
        if name.startswith("z"):
            c[iy] = -ch.coord("x" + name[1:])
        forms.append(ch.form(c))
    return forms


def heisenberg_tensor(p: int) -> KVectorField:
    """``y d/dx1 ^ d/dz1 ^ d/dy``."""
    ch = Chart(heisenberg_names(p))
    return ch.basis_multivector((ch.index("x1"), ch.index("y"), ch.index("z1")), -ch.coord("y"))


def heisenberg_x_rplus_group() -> ChartGroup:
    """``H(1,1) x R_+`` in the chart ``(x, y, z, s)`` with ``t = exp(s)``."""
    ch = Chart(("x", "y", "z", "s"))
    law = ["x_1 + x_2", "y_1 + y_2", "z_1 + z_2 + x_1*y_2", "s_1 + s_2"]
    return ChartGroup("H(1,1) x R+", ch, law, [0] * 4, [ch.parse(s) for s in ("-x", "-y", "-z + x*y", "-s")])


def heisenberg_x_rplus_coframe():
    ch = heisenberg_x_rplus_group().chart
    # dt/t = ds in the logarithmic chart
    return [ch.dx(0), ch.dx(1), ch.form([0, -ch.coord("x"), 1, 0]), ch.dx(3)]


def heisenberg_x_rplus_tensor() -> KVectorField:
    """``t ln t d/dy ^ d/dz ^ d/dt`` = ``s d/dy ^ d/dz ^ d/ds``."""
    ch = heisenberg_x_rplus_group().chart
    return ch.basis_multivector((1, 2, 3), ch.coord("s"))


def real_line(name: str = "w") -> ChartGroup:
    ch = Chart((name,))
    return ChartGroup("R", ch, [f"{name}_1 + {name}_2"], [0], [ch.parse(f"-{name}")])


def additive_group(chart: Chart) -> ChartGroup:
    law = [f"{n}_1 + {n}_2" for n in chart.names]
    return ChartGroup(f"R^{chart.dim}", chart, law, [0] * chart.dim, [-c for c in chart.coords()])


def product_tensor(G1: ChartGroup, P: KVectorField, G2: ChartGroup, f: RatFunc) -> tuple[ChartGroup, KVectorField]:
    """``f P`` on ``G1 x G2`` with ``f`` a function on ``G2``."""
    G = product_group(G1, G2)
    names = G.chart.names
    fl = f.lift(names)
    return G, KVectorField(G.chart, P.degree, {I: c.lift(names) * fl for I, c in P.coeffs.items()})


def seeded_functions(chart: Chart, count: int, seed: int, tag: str) -> list[RatFunc]:
    rng = random.Random(f"{seed}:{tag}")
    return [random_polynomial(chart, rng, 2) for _ in range(count)]


# ---------------------------------------------------------------------------
# u(2) structures
# ---------------------------------------------------------------------------

def u2_central_structure() -> LinearNambuStructure:
    """``x1 d1 ^ d2 ^ d3 ^ d4`` (core ideal: all of u(2))."""
    return LinearNambuStructure.parse(u2(), {(0, 1, 2, 3): "x1"})


def u2_coboundary_lambda() -> dict:
    return wedge_vectors([[0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 0, 0]])


def u2_coboundary_structure() -> LinearNambuStructure:
    """``ad_X (X4 ^ X2 ^ X1)``."""
    return coboundary(u2(), u2_coboundary_lambda())


def su2_structure() -> LinearNambuStructure:
    """``x1 d2 ^ d3 ^ d4`` (core ideal: su(2))."""
    return LinearNambuStructure.parse(u2(), {(1, 2, 3): "x1"})


def su2_basis() -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(4)] for i in (1, 2, 3)]


def u2_full_basis() -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]


# ---------------------------------------------------------------------------
# records and entries
# ---------------------------------------------------------------------------

@dataclass
class CheckRecord:
    check: str
    input: str
    verdict: str
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        d = {"check": self.check, "input": self.input, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


WITNESS_LIMIT = 240


def record(check: str, input: str, ok: bool, witness=None) -> CheckRecord:
    if ok or witness is None:
        return CheckRecord(check, input, "pass" if ok else "fail")
    w = str(witness)
    if len(w) > WITNESS_LIMIT:
        w = w[:WITNESS_LIMIT] + "..."
    return CheckRecord(check, input, "fail", w)


@dataclass
class EntryResult:
    id: str
    expected: str
    records: list = field(default_factory=list)
    note: str = ""

    @property
    def verdict(self) -> str:
        return "pass" if all(r.passed for r in self.records) else "fail"

    @property
    def met(self) -> bool:
        return self.verdict == self.expected


@dataclass
class CatalogEntry:
    id: str
    description: str
    expected: str
    runner: Callable[[int, int], list]
    note: str = ""

    def run(self, seed: int = DEFAULT_SEED, suite_size: int = DEFAULT_SUITE_SIZE) -> EntryResult:
        return EntryResult(self.id, self.expected, self.runner(seed, suite_size), self.note)


def _fmt_residual(res: dict, chart_names) -> str:
    parts = []
    for I, c in sorted(res.items()):
        parts.append(f"({c})*" + "^".join(f"d/d{chart_names[i]}" for i in I))
    return " + ".join(parts)


def _involutivity_text(w) -> str | None:
    if w is None:
        return None
    i, j, br = w
    return f"[V{i + 1}, V{j + 1}] = {format_multivector(br)} leaves the factor span"


def fi_label(label, P) -> str:
    """Readable name of a fundamental-identity argument tuple."""
    if label[0] == "random":
        return f"random tuple #{label[1]}"
    names = P.chart.names if isinstance(P, KVectorField) else P.tensor.chart.names
    f, g = ([names[i] for i in part] for part in label)
    return f"f=({', '.join(f)}) g=({', '.join(g)})"


def nambu_records(P, name: str, seed: int, suite_size: int) -> list[CheckRecord]:
    rep = verify_nambu(P, seed=seed, suite_size=suite_size)
    out = [
        record("decomposable", name, rep.decomposable,
               rep.plucker_witness and "i(dx^J)P ^ P != 0 for J = " + str(tuple(j + 1 for j in rep.plucker_witness[0]))),
        record("involutive", name, rep.involutive, _involutivity_text(rep.involutivity_witness)),
    ]
    w = rep.fi_witness
    out.append(record("fundamental-identity", name, rep.fi_ok, w and f"{fi_label(w[0], P)} residual={w[1]}"))
    return out


def form_records(P, name: str, seed: int) -> list[CheckRecord]:
    rep = check_form_properties(P, seed=seed)
    return [record("form-bracket-properties", name, rep.passed)]


def linear_records(L: LieAlgebra, Pi: LinearNambuStructure, name: str) -> list[CheckRecord]:
    coc = cocycle_check(L, Pi)
    out = [
        record("cocycle", name, coc.is_cocycle, coc.failing_pairs() or None),
        record("cocycle-pairing-equivalence", name, coc.equivalent),
        record("core-dichotomy", name, dichotomy_holds(Pi)),
    ]
    fi = [k for k, v in check_fi_filippov(dual_filippov(Pi)) if any(v)]
    out.append(record("dual-bracket-fi", name, not fi, fi[:1] or None))
    return out


def chart_group_records(G: ChartGroup, P: KVectorField, name: str, seed: int, suite_size: int, *,
                        coframe=None, expected_linear: KVectorField | None = None,
                        linear_names=None) -> list[CheckRecord]:
    out = [record("group-axioms", G.name, not G.check_axioms(), G.check_axioms() or None)]
    out += nambu_records(P, name, seed, suite_size)
    res = symbolic_multiplicativity(G, P)
    out.append(record("multiplicative", name, not res, _fmt_residual(res, G.chart.names) if res else None))
    out.append(record("vanishes-at-unit", name, vanishing_membership(G, P, G.unit)))
    if coframe is not None:
        table = invariance_check(G, coframe, P)
        out.append(record("invariant-brackets", name, table.passed, table.witness))
    lin = linear_approximation(G, P, linear_names)
    if expected_linear is not None:
        out.append(record("linear-approximation", name, lin.tensor == expected_linear,
                          format_multivector(lin.tensor)))
    if not lin.is_zero():
        out += linear_records(lin.carrier, lin, name + " (linear)")
        lin_core = core_of_linear(lin)
        grp = group_core_case(G, P)
        out.append(record("core-consistency", name, grp == (lin_core.case, lin_core.dim_H),
                          f"group={grp} linear={(lin_core.case, lin_core.dim_H)}"))
        if coframe is not None:
            F = filippov_from_coframe(G, coframe, P)
            out.append(record("dual-bracket-consistency", name, F.constants == dual_filippov(lin).constants))
    return out


# ---------------------------------------------------------------------------
# runners
# ---------------------------------------------------------------------------

def _run_jacobian(m: int, n: int):
    def run(seed, suite_size):
        P = jacobian_structure(Chart.standard(m), n)
        name = f"d1^...^d{n} on R^{m}"
        return nambu_records(P, name, seed, suite_size) + form_records(P, name, seed)
    return run


def _run_linear(k_indices, m: int):
    def run(seed, suite_size):
        ch = Chart.standard(m)
        k = ch.basis_multivector(tuple(k_indices))
        P = linear_from_constant(k).tensor
        name = format_multivector(P)
        L = LieAlgebra.abelian(m, coord_names=ch.names)
        out = nambu_records(P, name, seed, suite_size) + form_records(P, name, seed)
        res = symbolic_multiplicativity(additive_group(ch), P)
        out.append(record("multiplicative", name, not res))
        out += linear_records(L, LinearNambuStructure(L, P), name)
        return out
    return run


def _run_u2_linear(builder, expected_case: str, expected_dim: int):
    def run(seed, suite_size):
        L = u2()
        Pi = builder()
        name = format_multivector(Pi.tensor)
        out = nambu_records(Pi.tensor, name, seed, suite_size) + form_records(Pi.tensor, name, seed)
        out += linear_records(L, Pi, name)
        core = core_of_linear(Pi, L)
        out.append(record("core", name, (core.case, core.dim_H) == (expected_case, expected_dim),
                          f"case={core.case} dim H={core.dim_H}"))
        return out
    return run


def _run_g3(seed, suite_size):
    G = g3_group()
    expected = Chart(("x1", "x2", "x3")).basis_multivector((0, 1, 2), Chart(("x1", "x2", "x3")).coord("x1"))
    out = chart_group_records(G, g3_tensor(), "G3 tensor", seed, suite_size, coframe=g3_coframe(),
                              expected_linear=expected, linear_names=("x1", "x2", "x3"))
    out.append(record("vanishing-subgroup", "x = -1", vanishing_membership(G, g3_tensor(), (-1, "y", "z"))))
    prod = G.multiply((-1, 2, 3), (-1, Fraction(1, 2), -5))
    out.append(record("vanishing-subgroup-closure", "x = -1 products",
                      vanishing_membership(G, g3_tensor(), prod)
                      and vanishing_membership(G, g3_tensor(), G.invert((-1, 2, 3)))))
    out.append(record("non-vanishing", "(2, 0, 0)", not vanishing_membership(G, g3_tensor(), (2, 0, 0))))
    table = invariance_check(G, g3_coframe(), g3_tensor("x^2"))
    out.append(record("control-not-invariant", "f = x^2", not table.passed))
    # x^3 gives constant bracket coefficients but does not vanish at the unit
    out.append(record("control-not-multiplicative", "f = x^3",
                      bool(symbolic_multiplicativity(G, g3_tensor("x^3")))))
    return out


def _run_heisenberg(p: int):
    def run(seed, suite_size):
        G = heisenberg_group(p)
        P = heisenberg_tensor(p)
        return chart_group_records(G, P, f"H(1,{p}) tensor", seed, suite_size,
                                   coframe=heisenberg_coframe(p), expected_linear=P)
    return run


def _run_heisenberg_rplus(seed, suite_size):
    ch = Chart.standard(4)
    expected = ch.basis_multivector((1, 2, 3), ch.coord("x4"))
    return chart_group_records(heisenberg_x_rplus_group(), heisenberg_x_rplus_tensor(), "H(1,1) x R+ tensor",
                               seed, suite_size, coframe=heisenberg_x_rplus_coframe(),
                               expected_linear=expected, linear_names=ch.names)


def _run_product(seed, suite_size, count: int = 3):
    G1, R = g3_group(), real_line()
    out = []
    for f in seeded_functions(R.chart, count, seed, "product"):
        G, fP = product_tensor(G1, g3_tensor(), R, f)
        name = f"f*P with f = {f}"
        out += nambu_records(fP, name, seed, suite_size)
        res = symbolic_multiplicativity(G, fP)
        out.append(record("multiplicative", name, not res, _fmt_residual(res, G.chart.names) if res else None))
    return out


def _run_u2_group(seed, suite_size, pairs: int = 25):
    X = u2_matrices()
    P = CoboundaryTensor([X[3], X[1], X[0]])
    out = []
    bad = []
    for k, (a, b) in enumerate(cayley_pairs(pairs, seed=seed)):
        if not check_multiplicative_at(P, a, b).is_zero():
            bad.append(k)
    out.append(record("multiplicative", f"{pairs} Cayley pairs", not bad, bad or None))
    samples = cayley_samples(2 * pairs, seed=seed)
    nd = [k for k, g in enumerate(samples) if not P(g).is_decomposable()]
    out.append(record("pointwise-decomposable", f"{len(samples)} samples", not nd, nd or None))
    W = CoboundaryTensor([X[3], X[1]])
    ranks = {W(g).rank() for g in samples if not W(g).is_zero()}
    out.append(record("poisson-factor-rank", "W(g)", ranks == {2}, sorted(ranks)))
    lin = core_of_linear(u2_coboundary_structure())
    grp = sampled_core_case(P, samples, X, 3)
    out.append(record("core-consistency", "u2-coboundary", grp == (lin.case, lin.dim_H),
                      f"group={grp} linear={(lin.case, lin.dim_H)}"))
    return out


def _run_u2_type_a(seed, suite_size):
    # the algebra admits the central type-a structure; the paper's character
    # argument rules out integration to U(2), recorded here as documentation
    res = search_nambu_lie(u2(), u2_full_basis(), "a")
    ok = res.dimension == 1 and res.filtered[0].tensor == u2_central_structure().tensor
    return [record("type-a-algebra-solutions", "u(2), H = u(2)", ok, f"dimension={res.dimension}")]


def _run_negative(P: KVectorField, name: str):
    def run(seed, suite_size):
        return nambu_records(P, name, seed, suite_size)
    return run


def _negative_nondecomposable() -> KVectorField:
    ch = Chart.standard(5)
    return ch.basis_multivector((0, 1, 2)) + ch.basis_multivector((0, 3, 4))


def _negative_noninvolutive() -> KVectorField:
    ch = Chart.standard(4)
    X3 = ch.vector([0, 0, 1, ch.coord("x2")])
    return wedge_all([ch.basis_vector(0), ch.basis_vector(1), X3])


CATALOG: dict[str, CatalogEntry] = {e.id: e for e in [
    CatalogEntry("jacobian-3-on-5", "d1^d2^d3 on R^5", "pass", _run_jacobian(5, 3)),
    CatalogEntry("jacobian-2-on-3", "d1^d2 on R^3 (Poisson order)", "pass", _run_jacobian(3, 2)),
    CatalogEntry("linear-o3", "order-2 structure from the volume 3-vector on R^3", "pass", _run_linear((0, 1, 2), 3)),
    CatalogEntry("linear-r4-order3", "order-3 structure from the volume 4-vector on R^4", "pass",
                 _run_linear((0, 1, 2, 3), 4)),
    CatalogEntry("linear-r4-order2", "order-2 structure from e1^e2^e3 on R^4", "pass", _run_linear((0, 1, 2), 4)),
    CatalogEntry("u2-linear-central", "x1 d1^d2^d3^d4 on u(2)", "pass", _run_u2_linear(u2_central_structure, "a", 4)),
    CatalogEntry("u2-linear-coboundary", "coboundary of X4^X2^X1 on u(2)", "pass",
                 _run_u2_linear(u2_coboundary_structure, "c", 4)),
    CatalogEntry("su2-linear", "x1 d2^d3^d4 on u(2)", "pass", _run_u2_linear(su2_structure, "a", 3)),
    CatalogEntry("u2-type-a", "type-a search on u(2) (no integration to U(2) is claimed)", "pass", _run_u2_type_a),
    CatalogEntry("g3-solvable", "f(x) dx^dy^dz on G3, f = x(x^2-1)/2", "pass", _run_g3),
    CatalogEntry("heisenberg-1-1", "y dx1^dz1^dy on H(1,1)", "pass", _run_heisenberg(1)),
    CatalogEntry("heisenberg-1-3", "y dx1^dz1^dy on H(1,3)", "fail", _run_heisenberg(3),
                 note="left/right translations by x2, x3 leave a residual x_k y' d/dx1^d/dy^d/dz_k"),
    CatalogEntry("heisenberg-1-1-x-rplus", "t ln t dy^dz^dt on H(1,1) x R+", "pass", _run_heisenberg_rplus),
    CatalogEntry("g3-x-r-product", "f(w) P on G3 x R for seeded f", "fail", _run_product,
                 note="f(w1 + w2) != f(w1) = f(w2) unless f is constant"),
    CatalogEntry("u2-coboundary", "L_g*(X4^X2^X1) - R_g*(X4^X2^X1) on U(2)", "pass", _run_u2_group),
    CatalogEntry("negative-nondecomposable", "d1^d2^d3 + d1^d4^d5 on R^5", "fail",
                 _run_negative(_negative_nondecomposable(), "d1^d2^d3 + d1^d4^d5")),
    CatalogEntry("negative-noninvolutive", "d1^d2^(d3 + x2 d4) on R^4", "fail",
                 _run_negative(_negative_noninvolutive(), "d1^d2^(d3 + x2 d4)")),
]}


def run_entry(name: str, seed: int = DEFAULT_SEED, suite_size: int = DEFAULT_SUITE_SIZE) -> EntryResult:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None
    return entry.run(seed, suite_size)
