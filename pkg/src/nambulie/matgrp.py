"""Multiplicative tensors on Lie groups.

Two group models are supported:

* :class:`ChartGroup` -- a global rational chart with the group law given as
  rational functions of doubled coordinates. Left/right translations push
  tensors forward through the Jacobians of the partial maps, so the
  multiplicativity identity ``P(gh) = L_g* P(h) + R_h* P(g)`` is checked as an
  exact identity in the doubled variables.
* matrix groups with Gaussian-rational entries. Tangent vectors at ``g`` are
  matrices, ``dL_g`` is left multiplication and ``dR_g`` right multiplication;
  multivectors are alternating tensors on the real coordinates of the matrix
  entries. Unitary samples come from exact Cayley transforms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .exactalg import GaussRat, RatFunc, identity, parse_ratfunc, rank, row_basis, solve_linear, span_intersection
from .exactalg.linalg import kernel, rref
from .extcalc import (
    Chart,
    KVectorField,
    OneForm,
    mv_add,
    mv_factor_span,
    mv_from_vector,
    mv_is_decomposable,
    mv_push,
    mv_wedge,
)
from .liealg import FilippovBracket, LieAlgebra, LinearNambuStructure, classify_core
from .nambu import DEFAULT_SEED, form_bracket

LEFT_SUFFIX = "_1"
RIGHT_SUFFIX = "_2"


class MembershipError(ValueError):
    pass


class InvarianceError(ValueError):
    pass


# ---------------------------------------------------------------------------
# chart groups
# ---------------------------------------------------------------------------

@dataclass
class ChartGroup:
    """Group with a global chart; ``law`` is written in doubled coordinates.

    The doubled coordinates of ``(g1, g2)`` are the chart names with suffixes
    ``_1`` and ``_2``.
    """

    name: str
    chart: Chart
    law: tuple
    unit: tuple
    inverse: tuple

    def __post_init__(self):
        self.unit = tuple(Fraction(u) for u in self.unit)
        dn = self.doubled_names()
        self.law = tuple(_as_doubled(f, dn) for f in self.law)
        self.inverse = tuple(self.chart.as_ratfunc(f) for f in self.inverse)
        if len(self.law) != self.chart.dim or len(self.unit) != self.chart.dim or len(self.inverse) != self.chart.dim:
            raise ValueError("law, unit and inverse must have one entry per coordinate")

    @property
    def dim(self) -> int:
        return self.chart.dim

    def left_names(self) -> tuple[str, ...]:
        return tuple(n + LEFT_SUFFIX for n in self.chart.names)

    def right_names(self) -> tuple[str, ...]:
        return tuple(n + RIGHT_SUFFIX for n in self.chart.names)

    def doubled_names(self) -> tuple[str, ...]:
        return self.left_names() + self.right_names()

    def doubled_chart(self) -> Chart:
        return Chart(self.doubled_names())

    def to_left(self, f: RatFunc) -> RatFunc:
        dn = self.doubled_names()
        return f.subs({n: RatFunc.var(dn, n + LEFT_SUFFIX) for n in self.chart.names}, dn)

    def to_right(self, f: RatFunc) -> RatFunc:
        dn = self.doubled_names()
        return f.subs({n: RatFunc.var(dn, n + RIGHT_SUFFIX) for n in self.chart.names}, dn)

    def at_product(self, f: RatFunc) -> RatFunc:
        """``f(g1 g2)`` in doubled coordinates."""
        return f.subs(dict(zip(self.chart.names, self.law)), self.doubled_names())

    def multiply(self, g1: Sequence, g2: Sequence) -> tuple:
        vals = dict(zip(self.left_names(), g1)) | dict(zip(self.right_names(), g2))
        return tuple(_subs_all(f, vals, self.chart.names) for f in self.law)

    def invert(self, g: Sequence) -> tuple:
        vals = dict(zip(self.chart.names, g))
        return tuple(_subs_all(f, vals, self.chart.names) for f in self.inverse)

    def left_jacobian(self) -> list[list[RatFunc]]:
        """``d law_i / d g2_j``: the differential of left translation by ``g1``."""
        return [[f.diff(n) for n in self.right_names()] for f in self.law]

    def right_jacobian(self) -> list[list[RatFunc]]:
        """``d law_i / d g1_j``: the differential of right translation by ``g2``."""
        return [[f.diff(n) for n in self.left_names()] for f in self.law]

    def check_axioms(self) -> list[str]:
        """Failed group identities (empty when the law, unit and inverse are consistent)."""
        names = self.chart.names
        coords = self.chart.coords()
        failures = []
        unit = {n: u for n, u in zip(names, self.unit)}
        for side, fix, var in (("left unit", LEFT_SUFFIX, RIGHT_SUFFIX), ("right unit", RIGHT_SUFFIX, LEFT_SUFFIX)):
            vals = {n + fix: unit[n] for n in names} | {n + var: RatFunc.var(names, n) for n in names}
            for i, f in enumerate(self.law):
                if f.subs(vals, names) != coords[i]:
                    failures.append(f"{side}: component {names[i]}")
        vals = {n + LEFT_SUFFIX: RatFunc.var(names, n) for n in names}
        vals |= {n + RIGHT_SUFFIX: inv for n, inv in zip(names, self.inverse)}
        for i, f in enumerate(self.law):
            if f.subs(vals, names) != self.unit[i]:
                failures.append(f"inverse: component {names[i]}")
        return failures

    def lie_algebra(self, coord_names: Sequence[str] | None = None) -> LieAlgebra:
        """Bracket of left-invariant fields from the second-order part of the law at ``(e, e)``."""
        m = self.dim
        at_ee = {n: u for n, u in zip(self.left_names(), self.unit)} | {
            n: u for n, u in zip(self.right_names(), self.unit)}
        ln, rn = self.left_names(), self.right_names()
        brackets = {}
        for i, j in combinations(range(m), 2):
            v = []
            for f in self.law:
                a = f.diff(ln[i]).diff(rn[j])
                b = f.diff(ln[j]).diff(rn[i])
                v.append((a - b).evaluate(at_ee))
            if any(v):
                brackets[(i, j)] = v
        return LieAlgebra(m, brackets, names=tuple(f"E{k}" for k in range(1, m + 1)),
                          coord_names=coord_names or self.chart.names)


def _as_doubled(f, dn) -> RatFunc:
    if isinstance(f, RatFunc):
        return f.lift(dn)
    if isinstance(f, str):
        return parse_ratfunc(f, dn)
    return RatFunc.const(dn, f)


def _subs_all(f: RatFunc, vals: Mapping, names) -> object:
    """Substitute values; returns a Fraction when everything is rational."""
    if all(not isinstance(v, (RatFunc, str)) for v in vals.values()) and set(vals) >= set(f.names):
        return f.evaluate(vals)
    target = names
    vv = {k: (v if not isinstance(v, str) else RatFunc.var(target, v)) for k, v in vals.items()}
    return f.subs(vv, target)


def product_group(G1: ChartGroup, G2: ChartGroup, name: str | None = None) -> ChartGroup:
    chart = Chart(G1.chart.names + G2.chart.names, G1.chart.nonvanishing + G2.chart.nonvanishing)
    G = ChartGroup.__new__(ChartGroup)
    G.name = name or f"{G1.name} x {G2.name}"
    G.chart = chart
    G.unit = tuple(G1.unit) + tuple(G2.unit)
    dn = tuple(n + LEFT_SUFFIX for n in chart.names) + tuple(n + RIGHT_SUFFIX for n in chart.names)
    G.law = tuple(f.lift(dn) for f in G1.law + G2.law)
    G.inverse = tuple(f.lift(chart.names) for f in G1.inverse + G2.inverse)
    return G


def _tensor_coeffs_subst(P: KVectorField, fn) -> dict:
    out = {}
    for I, c in P.coeffs.items():
        v = fn(c)
        if v:
            out[I] = v
    return out


def symbolic_multiplicativity(G: ChartGroup, P: KVectorField) -> dict:
    """Coefficients of ``P(g1 g2) - L_{g1*} P(g2) - R_{g2*} P(g1)`` in doubled variables."""
    if P.chart.names != G.chart.names:
        P = KVectorField(G.chart, P.degree, {I: c.lift(G.chart.names) for I, c in P.coeffs.items()})
    at_prod = _tensor_coeffs_subst(P, G.at_product)
    p2 = _tensor_coeffs_subst(P, G.to_right)
    p1 = _tensor_coeffs_subst(P, G.to_left)
    JL = G.left_jacobian()
    JR = G.right_jacobian()
    m = G.dim
    left = mv_push(p2, [[JL[i][j] for i in range(m)] for j in range(m)], m)
    right = mv_push(p1, [[JR[i][j] for i in range(m)] for j in range(m)], m)
    return mv_add(mv_add(at_prod, left, -1), right, -1)


def tensor_at_unit(G: ChartGroup, P: KVectorField) -> dict:
    return {I: c for I, c in P.at(G.unit).items() if c}


def check_left_invariant_coframe(G: ChartGroup, coframe: Sequence[OneForm], side: str = "left") -> list[int]:
    """Indices of coframe members failing the pullback identity."""
    m = G.dim
    J = G.left_jacobian() if side == "left" else G.right_jacobian()
    same = G.to_right if side == "left" else G.to_left
    bad = []
    for k, theta in enumerate(coframe):
        at_prod = [G.at_product(c) for c in theta.coeffs]
        for j in range(m):
            pulled = sum((at_prod[i] * J[i][j] for i in range(m)), RatFunc.const(G.doubled_names(), 0))
            if pulled != same(theta.coeffs[j]):
                bad.append(k)
                break
    return bad


@dataclass
class InvarianceTable:
    coefficients: dict
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.witness is None


def express_in_coframe(beta: OneForm, coframe: Sequence[OneForm]) -> list[RatFunc]:
    m = len(coframe)
    A = [[coframe[k].coeffs[i] for k in range(m)] for i in range(m)]
    sol = solve_linear(A, list(beta.coeffs), m)
    if sol is None or sol.kernel:
        raise ValueError("coframe is not a basis of 1-forms")
    return sol.particular


def invariance_check(G: ChartGroup, coframe: Sequence[OneForm], P: KVectorField, side: str = "left") -> InvarianceTable:
    """Form-brackets of invariant coframe tuples re-expanded in the coframe.

    Passes iff every coefficient is constant. Multiplicative tensors vanish at
    the unit; that is not enforced here so that controls can be tabulated.
    """
    bad = check_left_invariant_coframe(G, coframe, side)
    if bad:
        raise InvarianceError(f"coframe members {bad} are not {side}-invariant")
    n = P.degree
    table = {}
    witness = None
    for I in combinations(range(len(coframe)), n):
        beta = form_bracket(P, *(coframe[i] for i in I))
        coeffs = express_in_coframe(beta, coframe)
        table[I] = coeffs
        if witness is None:
            for k, c in enumerate(coeffs):
                if not c.is_constant():
                    witness = (I, k, c)
                    break
    return InvarianceTable(table, witness)


def linear_approximation(G: ChartGroup, P: KVectorField, names: Sequence[str] | None = None,
                         algebra: LieAlgebra | None = None) -> LinearNambuStructure:
    """Degree-1 Taylor part of ``P`` at the unit, on the tangent space at ``e``."""
    if tensor_at_unit(G, P):
        raise ValueError("P does not vanish at the unit")
    names = tuple(names) if names else G.chart.names
    L = algebra or G.lie_algebra(names)
    chart = Chart(names)
    coords = chart.coords()
    unit = G.unit
    out = {}
    for I, c in P.coeffs.items():
        lin = chart.const(0)
        for j, n in enumerate(G.chart.names):
            d = c.diff(n).evaluate(unit)
            if d:
                lin = lin + coords[j] * d
        if lin:
            out[I] = lin
    return LinearNambuStructure(L, KVectorField(chart, P.degree, out))


def right_trivialized(G: ChartGroup, P: KVectorField) -> dict:
    """``R_{g^-1 *} P_g`` as a multivector over the tangent space at ``e``."""
    names = G.chart.names
    vals = {n + LEFT_SUFFIX: RatFunc.var(names, n) for n in names}
    vals |= {n + RIGHT_SUFFIX: inv for n, inv in zip(names, G.inverse)}
    JR = [[c.subs(vals, names) for c in row] for row in G.right_jacobian()]
    m = G.dim
    return mv_push(dict(P.coeffs), [[JR[i][j] for i in range(m)] for j in range(m)], m)


def _constant_span_rows(vectors: Sequence[Sequence[RatFunc]]) -> list[list[Fraction]]:
    """Rows spanning ``span{v(g)}`` over Q for rational vector functions ``v``."""
    return [row for v in vectors for row in _monomial_rows(v)]


def group_core_subspaces(G: ChartGroup, P: KVectorField) -> tuple[list, list]:
    """``(V_cap, V_cup)`` from the right-trivialized tensor, symbolically in ``g``."""
    Pt = right_trivialized(G, P)
    m, n = G.dim, P.degree
    zero = G.chart.const(0)
    v_cup = row_basis(_constant_span_rows(mv_factor_span(Pt, m, n, zero)))
    # u ^ Pt(g) = 0 for all g: collect u-coefficient vectors per output index
    per_K: dict = {}
    for i in range(m):
        w = mv_wedge({(i,): G.chart.const(1)}, Pt)
        for K, c in w.items():
            per_K.setdefault(K, [zero] * m)[i] = c
    rows = []
    for vec in per_K.values():
        rows.extend(_monomial_rows(vec))
    v_cap = row_basis(kernel(rows, m)) if rows else row_basis(identity(m))
    return v_cap, v_cup


def _monomial_rows(vec: Sequence[RatFunc]) -> list[list[Fraction]]:
    """Monomial coefficient vectors of ``D * vec`` for a common denominator ``D``.

    Their span is both ``span{vec(g)}`` and the annihilator of
    ``{u : sum_i u_i vec_i(g) = 0 for all g}``.
    """
    D = None
    for c in vec:
        if c:
            D = c.den if D is None else D * c.den.exquo(D.gcd(c.den))
    if D is None:
        return []
    monos: dict = {}
    for i, c in enumerate(vec):
        if not c:
            continue
        N = c.num * D.exquo(c.den)
        for mono, a in N.terms():
            monos.setdefault(mono, [Fraction(0)] * len(vec))[i] = Fraction(int(a.numerator), int(a.denominator))
    return list(monos.values())


def vanishing_membership(G: ChartGroup, P: KVectorField, g: Sequence) -> bool:
    """Whether ``P_g = 0``; entries of ``g`` may be rationals or coordinate names/RatFuncs."""
    vals = {}
    for n, v in zip(G.chart.names, g):
        if isinstance(v, str):
            v = G.chart.parse(v)
        vals[n] = v
    for c in P.coeffs.values():
        v = c.subs(vals)
        if v:
            return False
    return True


# ---------------------------------------------------------------------------
# matrix groups
# ---------------------------------------------------------------------------

Matrix = tuple[tuple[GaussRat, ...], ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(GaussRat.coerce(x) for x in r) for r in rows)


def mat_mul(A, B) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    return tuple(tuple(sum((A[i][t] * B[t][j] for t in range(k)), GaussRat()) for j in range(m)) for i in range(n))


def mat_add(A, B, scale=1) -> Matrix:
    return tuple(tuple(a + b * scale for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_adjoint(A) -> Matrix:
    return tuple(tuple(A[j][i].conjugate() for j in range(len(A))) for i in range(len(A[0])))


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(GaussRat(int(i == j)) for j in range(n)) for i in range(n))


def mat_inverse(A) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + list(mat_identity(n)[i]) for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(red[i][n:]) for i in range(n))


def is_unitary(U) -> bool:
    return mat_mul(mat_adjoint(U), U) == mat_identity(len(U))


@dataclass(frozen=True)
class MatrixGroupElement:
    entries: Matrix
    group: str = "U"

    def __post_init__(self):
        object.__setattr__(self, "entries", as_matrix(self.entries))
        if self.group == "U" and not is_unitary(self.entries):
            raise MembershipError("matrix is not unitary")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __mul__(self, other: "MatrixGroupElement") -> "MatrixGroupElement":
        return MatrixGroupElement(mat_mul(self.entries, other.entries), self.group)

    def inverse(self) -> "MatrixGroupElement":
        if self.group == "U":
            return MatrixGroupElement(mat_adjoint(self.entries), self.group)
        return MatrixGroupElement(mat_inverse(self.entries), self.group)

    def is_central_scalar(self) -> bool:
        e = self.entries
        return all(e[i][j] == (e[0][0] if i == j else 0) for i in range(self.size) for j in range(self.size))


def flatten(M) -> list[Fraction]:
    """Real coordinates ``(Re m11, Im m11, Re m12, ...)``."""
    out = []
    for row in M:
        for x in row:
            out.extend([x.re, x.im])
    return out


def unflatten(v: Sequence[Fraction], n: int) -> Matrix:
    return tuple(tuple(GaussRat(v[2 * (i * n + j)], v[2 * (i * n + j) + 1]) for j in range(n)) for i in range(n))


def _basis_matrices(n: int) -> list[Matrix]:
    out = []
    for k in range(2 * n * n):
        v = [Fraction(int(t == k)) for t in range(2 * n * n)]
        out.append(unflatten(v, n))
    return out


@dataclass
class TangentMultivector:
    """Alternating multivector at ``base`` on the real coordinates of n x n complex matrices."""

    base: Matrix
    coeffs: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.base)

    @property
    def dim(self) -> int:
        return 2 * self.size * self.size

    @classmethod
    def wedge_of(cls, base, matrices: Sequence) -> "TangentMultivector":
        out = {(): Fraction(1)}
        for M in matrices:
            out = mv_wedge(out, mv_from_vector(flatten(as_matrix(M))))
        return cls(as_matrix(base), out)

    def degree(self) -> int | None:
        return len(next(iter(self.coeffs))) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        return TangentMultivector(self.base, mv_add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return TangentMultivector(self.base, mv_add(self.coeffs, other.coeffs, -1))

    def is_decomposable(self) -> bool:
        d = self.degree()
        return d is None or mv_is_decomposable(self.coeffs, self.dim, d)

    def rank(self) -> int:
        d = self.degree()
        if d is None:
            return 0
        vecs = mv_factor_span(self.coeffs, self.dim, d, Fraction(0))
        return rank(vecs) if vecs else 0

    def factor_matrices(self) -> list[Matrix]:
        d = self.degree()
        if d is None:
            return []
        vecs = row_basis(mv_factor_span(self.coeffs, self.dim, d, Fraction(0)))
        return [unflatten(v, self.size) for v in vecs]


def _push(V: TangentMultivector, op: Callable[[Matrix], Matrix], new_base: Matrix) -> TangentMultivector:
    cols = [flatten(op(E)) for E in _basis_matrices(V.size)]
    return TangentMultivector(new_base, mv_push(V.coeffs, cols, V.dim))


def push_left(g, V: TangentMultivector) -> TangentMultivector:
    """``L_{g*}``: every factor ``M`` becomes ``g M``."""
    G = g.entries if isinstance(g, MatrixGroupElement) else as_matrix(g)
    if len(G) != V.size:
        raise ValueError("size mismatch")
    return _push(V, lambda M: mat_mul(G, M), mat_mul(G, V.base))


def push_right(g, V: TangentMultivector) -> TangentMultivector:
    """``R_{g*}``: every factor ``M`` becomes ``M g``."""
    G = g.entries if isinstance(g, MatrixGroupElement) else as_matrix(g)
    if len(G) != V.size:
        raise ValueError("size mismatch")
    return _push(V, lambda M: mat_mul(M, G), mat_mul(V.base, G))


class CoboundaryTensor:
    """``P(g) = L_{g*} Lam - R_{g*} Lam`` for a wedge ``Lam`` of Lie-algebra matrices."""

    def __init__(self, factors: Sequence, group: str = "U"):
        self.factors = [as_matrix(M) for M in factors]
        self.group = group
        n = len(self.factors[0])
        self.lam = TangentMultivector.wedge_of(mat_identity(n), self.factors)

    @property
    def order(self) -> int:
        return len(self.factors)

    def __call__(self, g: MatrixGroupElement) -> TangentMultivector:
        return coboundary_tensor_at(self.lam, g)


class LeftInvariantTensor:
    """``P(g) = L_{g*} Lam`` (not multiplicative unless ``Lam = 0``)."""

    def __init__(self, factors: Sequence):
        self.factors = [as_matrix(M) for M in factors]
        self.lam = TangentMultivector.wedge_of(mat_identity(len(self.factors[0])), self.factors)

    def __call__(self, g: MatrixGroupElement) -> TangentMultivector:
        return push_left(g, self.lam)


def coboundary_tensor_at(lam: TangentMultivector, g: MatrixGroupElement) -> TangentMultivector:
    if not isinstance(g, MatrixGroupElement):
        g = MatrixGroupElement(g)
    return push_left(g, lam) - push_right(g, lam)


def check_multiplicative_at(P: Callable, g1: MatrixGroupElement, g2: MatrixGroupElement) -> TangentMultivector:
    """``P(g1 g2) - L_{g1*} P(g2) - R_{g2*} P(g1)``."""
    for g in (g1, g2):
        if not isinstance(g, MatrixGroupElement):
            raise MembershipError("arguments must be group elements")
    g12 = g1 * g2
    return P(g12) - push_left(g1, P(g2)) - push_right(g2, P(g1))


def cayley_unitary(A) -> MatrixGroupElement:
    """``U = (I - A)(I + A)^-1`` for skew-Hermitian ``A``."""
    A = as_matrix(A)
    if mat_adjoint(A) != tuple(tuple(-x for x in r) for r in A):
        raise ValueError("A is not skew-Hermitian")
    n = len(A)
    Id = mat_identity(n)
    U = mat_mul(mat_add(Id, A, -1), mat_inverse(mat_add(Id, A)))
    assert is_unitary(U)
    return MatrixGroupElement(U, "U")


def random_rational(rng: random.Random, bound: int = 10) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_skew_hermitian(rng: random.Random, n: int = 2, bound: int = 10) -> Matrix:
    rows = [[GaussRat() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussRat(0, random_rational(rng, bound))
        for j in range(i + 1, n):
            z = GaussRat(random_rational(rng, bound), random_rational(rng, bound))
            rows[i][j] = z
            rows[j][i] = -z.conjugate()
    return as_matrix(rows)


def cayley_samples(count: int, n: int = 2, seed: int = DEFAULT_SEED, bound: int = 10) -> list[MatrixGroupElement]:
    rng = random.Random(seed)
    return [cayley_unitary(random_skew_hermitian(rng, n, bound)) for _ in range(count)]


def cayley_pairs(count: int = 25, n: int = 2, seed: int = DEFAULT_SEED) -> list[tuple[MatrixGroupElement, MatrixGroupElement]]:
    s = cayley_samples(2 * count, n, seed)
    return list(zip(s[0::2], s[1::2]))


def matrix_vanishing_membership(P: Callable, g: MatrixGroupElement) -> bool:
    return P(g).is_zero()


def sampled_core_subspaces(P: Callable, samples: Sequence[MatrixGroupElement], basis: Sequence) -> tuple[list, list]:
    """``(V_cap, V_cup)`` of ``R_{g^-1*} P_g`` over sampled ``g``, in coordinates of ``basis``.

    ``basis`` is a list of Lie-algebra matrices; factor spans are expressed in it.
    """
    B = [flatten(as_matrix(M)) for M in basis]
    A = [[B[c][r] for c in range(len(B))] for r in range(len(B[0]))]
    caps = None
    cup: list = []
    for g in samples:
        Pt = push_right(g.inverse(), P(g))
        if Pt.is_zero():
            continue
        span = []
        for M in Pt.factor_matrices():
            sol = solve_linear(A, flatten(M), len(B))
            if sol is None:
                raise ValueError("factor outside the Lie algebra span")
            span.append(sol.particular)
        span = row_basis(span)
        cup = row_basis(cup + span)
        caps = span if caps is None else span_intersection(caps, span, len(B))
    return caps or [], cup


def filippov_from_coframe(G: ChartGroup, coframe: Sequence[OneForm], P: KVectorField) -> FilippovBracket:
    """Bracket on ``T_e^* G`` from form-brackets of invariant coframe tuples at the unit.

    ``coframe`` must restrict to the coordinate coframe at ``e``.
    """
    m, n = G.dim, P.degree
    for k, theta in enumerate(coframe):
        if [c.evaluate(G.unit) for c in theta.coeffs] != [Fraction(int(i == k)) for i in range(m)]:
            raise ValueError(f"coframe member {k} is not dx{k + 1} at the unit")
    consts = {}
    for I in combinations(range(m), n):
        beta = form_bracket(P, *(coframe[i] for i in I))
        v = [c.evaluate(G.unit) for c in beta.coeffs]
        if any(v):
            consts[I] = v
    return FilippovBracket(m, n, consts)


def group_core_case(G: ChartGroup, P: KVectorField) -> tuple[str, int]:
    """``(case tag, dim H)`` from the group-level core subspaces."""
    v_cap, v_cup = group_core_subspaces(G, P)
    case, H, _ = classify_core(v_cap, v_cup, P.degree)
    return case, len(H)


def sampled_core_case(P: Callable, samples: Sequence[MatrixGroupElement], basis: Sequence, order: int) -> tuple[str, int]:
    v_cap, v_cup = sampled_core_subspaces(P, samples, basis)
    case, H, _ = classify_core(v_cap, v_cup, order)
    return case, len(H)
