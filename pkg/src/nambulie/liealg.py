"""Lie algebras, linear Nambu structures, cocycles, cores and the structure search.

Algebra elements are coefficient lists over the basis ``e_1..e_m`` and
constant multivectors are ``{increasing index tuple: Fraction}`` dicts. A linear
Nambu structure ``Pi`` is stored as a field on the algebra's coordinate chart;
its value at a basis vector ``e_j`` is the coefficient of ``x^j``, written
``Pi_j`` below, so that ``Pi = sum_j x^j Pi_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exactalg import GaussRat, kernel, rank, row_basis, solve_linear
from .extcalc import (
    Chart,
    KVectorField,
    mv_add,
    mv_factor_span,
    mv_from_vector,
    mv_interior,
    mv_scale,
    mv_wedge,
    sort_sign,
)
from .nambu import certify, verify_nambu

Vector = list[Fraction]
Multivector = dict


class NotAnIdeal(ValueError):
    def __init__(self, i: int, h: Sequence, bracket: Sequence):
        self.witness = (i, list(h), list(bracket))
        super().__init__(f"[e{i + 1}, {_fmt_vec(h)}] = {_fmt_vec(bracket)} leaves the subspace")


class NotProportional(ValueError):
    """``ad_X Lambda0`` is not a multiple of ``Lambda0`` for some basis ``X``."""


class UndefinedCore(ValueError):
    pass


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _vec(v) -> Vector:
    return [Fraction(x) for x in v]


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

class LieAlgebra:
    """Finite-dimensional Lie algebra over Q given by structure constants."""

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Sequence] | None = None,
                 names: Sequence[str] | None = None, coord_names: Sequence[str] | None = None,
                 check: bool = True):
        self.dim = dim
        self.names = tuple(names) if names else tuple(f"e{i}" for i in range(1, dim + 1))
        self.coord_names = tuple(coord_names) if coord_names else tuple(f"x{i}" for i in range(1, dim + 1))
        zero = [Fraction(0)] * dim
        table = [[list(zero) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in (brackets or {}).items():
            v = _vec(v)
            if len(v) != dim:
                raise ValueError(f"bracket [{i},{j}] has {len(v)} components, expected {dim}")
            if i == j and any(v):
                raise ValueError(f"[e{i + 1}, e{i + 1}] must vanish")
            table[i][j] = v
            table[j][i] = [-x for x in v]
        self._table = table
        if check:
            bad = [r for r in check_jacobi(self) if any(r[1])]
            if bad:
                raise ValueError(f"Jacobi identity fails at {bad[0][0]}: {_fmt_vec(bad[0][1])}")

    @classmethod
    def abelian(cls, dim: int, **kw) -> "LieAlgebra":
        return cls(dim, {}, **kw)

    @classmethod
    def from_matrices(cls, matrices: Sequence[Sequence[Sequence]], **kw) -> "LieAlgebra":
        """Structure constants of the matrix commutators, expressed in the given basis."""
        flat = [_flatten_real(M) for M in matrices]
        dim = len(flat)
        A = [[flat[c][r] for c in range(dim)] for r in range(len(flat[0]))]
        brackets = {}
        for i, j in combinations(range(dim), 2):
            C = _matsub(_matmul(matrices[i], matrices[j]), _matmul(matrices[j], matrices[i]))
            sol = solve_linear(A, _flatten_real(C), dim)
            if sol is None:
                raise ValueError(f"commutator of basis matrices {i + 1},{j + 1} leaves their span")
            brackets[(i, j)] = sol.particular
        return cls(dim, brackets, **kw)

    def bracket(self, X: Sequence, Y: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(X):
            if not a:
                continue
            for j, b in enumerate(Y):
                if not b:
                    continue
                row = self._table[i][j]
                ab = a * b
                for k, c in enumerate(row):
                    if c:
                        out[k] += ab * c
        return out

    def basis_bracket(self, i: int, j: int) -> Vector:
        return list(self._table[i][j])

    def structure_constants(self) -> dict[tuple[int, int], Vector]:
        return {(i, j): list(self._table[i][j]) for i, j in combinations(range(self.dim), 2)
                if any(self._table[i][j])}

    def unit(self, i: int) -> Vector:
        return [Fraction(int(k == i)) for k in range(self.dim)]

    def ad_matrix(self, X: Sequence) -> list[Vector]:
        cols = [self.bracket(X, self.unit(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def chart(self) -> Chart:
        return Chart(self.coord_names)

    def is_abelian(self) -> bool:
        return not self.structure_constants()

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={self.structure_constants()})"


def _flatten_real(M) -> Vector:
    out = []
    for row in M:
        for x in row:
            g = GaussRat.coerce(x)
            out.extend([g.re, g.im])
    return out


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum((GaussRat.coerce(A[i][t]) * B[t][j] for t in range(k)), GaussRat()) for j in range(m)]
            for i in range(n)]


def _matsub(A, B):
    return [[GaussRat.coerce(a) - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def check_jacobi(L: LieAlgebra) -> list[tuple[tuple[int, int, int], Vector]]:
    """Cyclic sums ``[ei,[ej,ek]] + [ej,[ek,ei]] + [ek,[ei,ej]]`` for ``i<j<k``."""
    out = []
    for i, j, k in combinations(range(L.dim), 3):
        ei, ej, ek = L.unit(i), L.unit(j), L.unit(k)
        s = [a + b + c for a, b, c in zip(L.bracket(ei, L.bracket(ej, ek)),
                                          L.bracket(ej, L.bracket(ek, ei)),
                                          L.bracket(ek, L.bracket(ei, ej)))]
        out.append(((i, j, k), s))
    return out


def u2_matrices() -> list[list[list[GaussRat]]]:
    """The basis X1..X4 of u(2) with X1 spanning the centre."""
    h = Fraction(1, 2)
    i2 = GaussRat(0, h)
    z = GaussRat()
    X1 = [[i2, z], [z, i2]]
    X2 = [[z, -i2], [-i2, z]]
    X3 = [[z, GaussRat(-h)], [GaussRat(h), z]]
    X4 = [[-i2, z], [z, i2]]
    return [X1, X2, X3, X4]


def u2() -> LieAlgebra:
    """u(2) with [X2,X3]=X4, [X3,X4]=X2, [X4,X2]=X3."""
    return LieAlgebra(4, {(1, 2): [0, 0, 0, 1], (2, 3): [0, 1, 0, 0], (3, 1): [0, 0, 1, 0]},
                      names=("X1", "X2", "X3", "X4"))


def is_ideal(L: LieAlgebra, H: Sequence[Sequence]) -> bool:
    try:
        check_ideal(L, H)
    except NotAnIdeal:
        return False
    return True


def check_ideal(L: LieAlgebra, H: Sequence[Sequence]) -> None:
    base = row_basis([_vec(h) for h in H])
    r = len(base)
    for h in base:
        for i in range(L.dim):
            b = L.bracket(L.unit(i), h)
            if any(b) and rank(base + [b]) != r:
                raise NotAnIdeal(i, h, b)


def is_subalgebra(L: LieAlgebra, K: Sequence[Sequence]) -> bool:
    base = row_basis([_vec(k) for k in K])
    r = len(base)
    for a, b in combinations(base, 2):
        c = L.bracket(a, b)
        if any(c) and rank(base + [c]) != r:
            return False
    return True


# ---------------------------------------------------------------------------
# constant multivectors over an algebra
# ---------------------------------------------------------------------------

def wedge_vectors(vectors: Sequence[Sequence]) -> Multivector:
    out: Multivector = {(): Fraction(1)}
    for v in vectors:
        out = mv_wedge(out, mv_from_vector(_vec(v)))
    return out


def ad_wedge(L: LieAlgebra, X: Sequence, Lam: Mapping) -> Multivector:
    """``ad_X`` extended to multivectors as a derivation."""
    X = _vec(X)
    images = [mv_from_vector(L.bracket(X, L.unit(i))) for i in range(L.dim)]
    out: Multivector = {}
    for I, c in Lam.items():
        for s, i in enumerate(I):
            if not images[i]:
                continue
            term = {(): c}
            for t, k in enumerate(I):
                term = mv_wedge(term, images[k] if t == s else {(k,): Fraction(1)})
                if not term:
                    break
            out = mv_add(out, term)
    return out


def mv_eval(Lam: Mapping, covectors: Sequence[Sequence]) -> Fraction:
    """``Lam(a1, ..., an)``."""
    A = dict(Lam)
    for a in covectors:
        A = mv_interior(_vec(a), A)
    return A.get((), Fraction(0))


def coad(L: LieAlgebra, X: Sequence, beta: Sequence) -> Vector:
    """Coadjoint action ``coad_X beta = -beta o ad_X``."""
    return [-sum((b * c for b, c in zip(beta, L.bracket(X, L.unit(j)))), Fraction(0)) for j in range(L.dim)]


def format_constant_multivector(Lam: Mapping, names: Sequence[str]) -> str:
    if not Lam:
        return "0"
    return " + ".join(f"({c})*" + "^".join(names[i] for i in I) for I, c in sorted(Lam.items()))


# ---------------------------------------------------------------------------
# linear Nambu structures
# ---------------------------------------------------------------------------

class LinearNambuStructure:
    """``Pi = sum_j x^j Pi_j`` with constant multivectors ``Pi_j`` on the carrier."""

    def __init__(self, carrier: LieAlgebra, tensor: KVectorField):
        if tensor.chart.names != carrier.coord_names:
            raise ValueError(f"tensor chart {tensor.chart.names} differs from carrier coordinates {carrier.coord_names}")
        comps = [dict() for _ in range(carrier.dim)]
        for I, c in tensor.coeffs.items():
            if not c.is_polynomial() or c.degree() != 1 or any(sum(m) != 1 for m in c.num.monoms()):
                raise ValueError(f"coefficient {c} of {I} is not homogeneous linear")
            for m, a in c.num.terms():
                j = m.index(1)
                comps[j][I] = Fraction(int(a.numerator), int(a.denominator))
        self.carrier = carrier
        self.tensor = tensor
        self.components = comps

    @classmethod
    def from_components(cls, carrier: LieAlgebra, components: Sequence[Mapping]) -> "LinearNambuStructure":
        chart = carrier.chart()
        coords = chart.coords()
        coeffs: dict = {}
        for j, Pj in enumerate(components):
            for I, c in Pj.items():
                t = coords[j] * c
                coeffs[I] = coeffs[I] + t if I in coeffs else t
        degs = {len(I) for P in components for I in P}
        if len(degs) > 1:
            raise ValueError("components have different degrees")
        degree = degs.pop() if degs else 0
        return cls(carrier, KVectorField(chart, degree, coeffs))

    @classmethod
    def parse(cls, carrier: LieAlgebra, terms: Mapping[Sequence[int], str]) -> "LinearNambuStructure":
        """From ``{0-based indices: coefficient text}``."""
        chart = carrier.chart()
        coeffs = {}
        degree = None
        for I, text in terms.items():
            s, K = sort_sign(tuple(I))
            if not s:
                continue
            c = chart.parse(text) * s
            coeffs[K] = coeffs[K] + c if K in coeffs else c
            degree = len(K)
        return cls(carrier, KVectorField(chart, degree or 0, coeffs))

    @property
    def order(self) -> int:
        return self.tensor.degree

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def at(self, X: Sequence) -> Multivector:
        out: Multivector = {}
        for a, P in zip(_vec(X), self.components):
            if a:
                out = mv_add(out, P, a)
        return out

    def is_zero(self) -> bool:
        return self.tensor.is_zero()

    def __eq__(self, other):
        return isinstance(other, LinearNambuStructure) and self.tensor == other.tensor

    def __repr__(self):
        return f"LinearNambuStructure({self.tensor!r})"


@dataclass
class FilippovBracket:
    """n-ary bracket on the dual space: ``[e^I] = constants[I]`` for increasing ``I``."""

    dim: int
    order: int
    constants: dict = field(default_factory=dict)

    def bracket(self, *covectors: Sequence) -> Vector:
        if len(covectors) != self.order:
            raise ValueError(f"bracket takes {self.order} arguments")
        args = [_vec(a) for a in covectors]
        out = [Fraction(0)] * self.dim
        for I, v in self.constants.items():
            # coefficient of e^I in a1 ^ ... ^ an is the minor det[a_k(I_l)]
            coef = _minor(args, I)
            if coef:
                for k, x in enumerate(v):
                    out[k] += coef * x
        return out

    def to_linear(self, carrier: LieAlgebra) -> LinearNambuStructure:
        comps = [dict() for _ in range(self.dim)]
        for I, v in self.constants.items():
            for j, x in enumerate(v):
                if x:
                    comps[j][I] = x
        return LinearNambuStructure.from_components(carrier, comps)


def _minor(args: Sequence[Vector], I: Sequence[int]) -> Fraction:
    from .exactalg import determinant

    return determinant([[a[i] for i in I] for a in args])


def dual_filippov(Pi: LinearNambuStructure) -> FilippovBracket:
    """Read ``[e^{i1}, ..., e^{in}] = sum_j c^I_j e^j`` off ``Pi^I = sum_j c^I_j x^j``."""
    consts = {}
    for j, P in enumerate(Pi.components):
        for I, c in P.items():
            consts.setdefault(I, [Fraction(0)] * Pi.dim)[j] = c
    return FilippovBracket(Pi.dim, Pi.order, consts)


def vector_product_algebra(n: int) -> FilippovBracket:
    """The n-ary vector product on R^(n+1) as a bracket table."""
    from .nambu import vector_product

    dim = n + 1
    basis = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    return FilippovBracket(dim, n, {I: vector_product(*(basis[i] for i in I))
                                    for I in combinations(range(dim), n)})


def check_fi_filippov(F: FilippovBracket) -> list[tuple[tuple, Vector]]:
    """Fundamental-identity residuals over increasing basis tuples."""
    basis = [[Fraction(int(i == j)) for j in range(F.dim)] for i in range(F.dim)]
    n = F.order
    out = []
    for I in combinations(range(F.dim), n - 1):
        us = [basis[i] for i in I]
        for J in combinations(range(F.dim), n):
            ws = [basis[j] for j in J]
            lhs = F.bracket(*us, F.bracket(*ws))
            rhs = [Fraction(0)] * F.dim
            for k in range(n):
                args = list(ws)
                args[k] = F.bracket(*us, ws[k])
                rhs = [a + b for a, b in zip(rhs, F.bracket(*args))]
            out.append(((I, J), [a - b for a, b in zip(lhs, rhs)]))
    return out


# ---------------------------------------------------------------------------
# cocycles
# ---------------------------------------------------------------------------

@dataclass
class CocycleReport:
    residuals: dict
    pairing_residuals: dict

    @property
    def is_cocycle(self) -> bool:
        return not any(self.residuals.values())

    @property
    def pairing_holds(self) -> bool:
        return not any(self.pairing_residuals.values())

    @property
    def equivalent(self) -> bool:
        return self.is_cocycle == self.pairing_holds

    def failing_pairs(self) -> list[tuple[int, int]]:
        return [k for k, v in self.residuals.items() if v]


def cocycle_residual(L: LieAlgebra, Pi: LinearNambuStructure, X: Sequence, Y: Sequence) -> Multivector:
    """``ad_X Pi_Y - ad_Y Pi_X - Pi_[X,Y]``."""
    r = mv_add(ad_wedge(L, X, Pi.at(Y)), ad_wedge(L, Y, Pi.at(X)), -1)
    return mv_add(r, Pi.at(L.bracket(X, Y)), -1)


def pairing_residual(L: LieAlgebra, Pi: LinearNambuStructure, X, Y, alphas) -> Fraction:
    """Dual-bracket pairing identity for one ``(X, Y, alphas)``."""
    F = dual_filippov(Pi)
    n = Pi.order
    lhs = _pair(F.bracket(*alphas), L.bracket(X, Y))
    rhs = Fraction(0)
    for k in range(n):
        a = list(alphas)
        a[k] = coad(L, Y, alphas[k])
        rhs += _pair(F.bracket(*a), X)
        a[k] = coad(L, X, alphas[k])
        rhs -= _pair(F.bracket(*a), Y)
    return lhs - rhs


def _pair(beta, X) -> Fraction:
    return sum((a * b for a, b in zip(beta, X)), Fraction(0))


def cocycle_check(L: LieAlgebra, Pi: LinearNambuStructure) -> CocycleReport:
    if Pi.dim != L.dim:
        raise ValueError("structure and algebra dimensions differ")
    residuals = {}
    pairing = {}
    n = Pi.order
    basis = [L.unit(i) for i in range(L.dim)]
    for i, j in combinations(range(L.dim), 2):
        residuals[(i, j)] = cocycle_residual(L, Pi, basis[i], basis[j])
        if n == 0:
            continue
        bad = []
        for A in combinations(range(L.dim), n):
            r = pairing_residual(L, Pi, basis[i], basis[j], [basis[a] for a in A])
            if r:
                bad.append((A, r))
        pairing[(i, j)] = bad
    return CocycleReport(residuals, pairing)


def coboundary(L: LieAlgebra, Lam: Mapping) -> LinearNambuStructure:
    """``Pi_X = ad_X Lam``."""
    comps = [ad_wedge(L, L.unit(j), Lam) for j in range(L.dim)]
    if not any(comps):
        deg = len(next(iter(Lam))) if Lam else 0
        return LinearNambuStructure(L, KVectorField(L.chart(), deg, {}))
    return LinearNambuStructure.from_components(L, comps)


# ---------------------------------------------------------------------------
# cores
# ---------------------------------------------------------------------------

@dataclass
class CoreDescriptor:
    v_cap: list
    v_cup: list
    case: str
    H: list
    Lambda0: Multivector
    gamma: Vector | None = None
    alternative: str | None = None

    @property
    def dim_H(self) -> int:
        return len(self.H)


def core_subspaces(Pi: LinearNambuStructure) -> tuple[list, list]:
    """``(V_cap, V_cup)`` as reduced echelon bases.

    ``u`` lies in every factor span ``V(g)`` with ``Pi(g) != 0`` iff
    ``u ^ Pi(g) = 0`` identically, i.e. ``u ^ Pi_j = 0`` for every ``j``.
    The sum of the factor spans is spanned by the contractions of the ``Pi_j``.
    """
    m, n = Pi.dim, Pi.order
    cup_vectors = []
    for P in Pi.components:
        cup_vectors.extend(mv_factor_span(P, m, n, Fraction(0)))
    v_cup = row_basis(cup_vectors)
    # linear map u -> (u ^ Pi_j)_j, one row per output coefficient
    rows: dict = {}
    for j, P in enumerate(Pi.components):
        for i in range(m):
            w = mv_wedge({(i,): Fraction(1)}, P)
            for K, c in w.items():
                rows.setdefault((j, K), [Fraction(0)] * m)[i] += c
    A = list(rows.values())
    v_cap = row_basis(kernel(A, m)) if A else row_basis([[Fraction(int(i == k)) for k in range(m)] for i in range(m)])
    return v_cap, v_cup


def classify_core(v_cap: list, v_cup: list, n: int) -> tuple[str, list, str | None]:
    """Case tag, core ideal and the alternative tag (if both descriptions apply).

    When ``dim V_cup = n+1`` the core ideal is ``V_cup`` (case c); otherwise
    ``V_cap`` with ``dim V_cap`` in ``{n, n-1}`` (cases a, b).
    """
    alternative = None
    if len(v_cup) == n + 1:
        case, H = "c", v_cup
        if len(v_cap) >= n - 1:
            alternative = "b" if len(v_cap) == n - 1 else "a"
    elif len(v_cap) == n:
        case, H = "a", v_cap
    elif len(v_cap) == n - 1:
        case, H = "b", v_cap
    else:
        raise UndefinedCore(f"dichotomy fails: dim V_cap = {len(v_cap)}, dim V_cup = {len(v_cup)}, n = {n}")
    return case, H, alternative


def core_of_linear(Pi: LinearNambuStructure, L: LieAlgebra | None = None) -> CoreDescriptor:
    """Core ideal and core of a nonzero linear Nambu structure."""
    if Pi.is_zero():
        raise UndefinedCore("the zero structure has no core")
    v_cap, v_cup = core_subspaces(Pi)
    case, H, alternative = classify_core(v_cap, v_cup, Pi.order)
    Lam = wedge_vectors(H)
    gamma = None
    if L is not None:
        try:
            gamma = gamma_of(L, Lam)
        except NotProportional:
            gamma = None
    return CoreDescriptor(v_cap, v_cup, case, H, Lam, gamma, alternative)


def dichotomy_holds(Pi: LinearNambuStructure) -> bool:
    v_cap, v_cup = core_subspaces(Pi)
    return len(v_cap) >= Pi.order - 1 or len(v_cup) == Pi.order + 1


def gamma_of(L: LieAlgebra, Lam0: Mapping) -> Vector:
    """Covector with ``ad_X Lam0 = gamma(X) Lam0``; also checks ``gamma([X,Y]) = 0``."""
    if not Lam0:
        raise ValueError("Lambda0 must be nonzero")
    K0, c0 = min(Lam0.items())
    gamma = []
    for i in range(L.dim):
        a = ad_wedge(L, L.unit(i), Lam0)
        g = a.get(K0, Fraction(0)) / c0
        if mv_add(a, Lam0, -g):
            raise NotProportional(f"ad_{L.names[i]} Lambda0 is not proportional to Lambda0")
        gamma.append(g)
    for i, j in combinations(range(L.dim), 2):
        if _pair(gamma, L.basis_bracket(i, j)):
            raise AssertionError(f"gamma([e{i + 1}, e{j + 1}]) != 0")
    return gamma


# ---------------------------------------------------------------------------
# search for Nambu-Lie structures with a prescribed core ideal
# ---------------------------------------------------------------------------

@dataclass
class SearchResult:
    case: str
    order: int
    H: list
    Lambda0: Multivector
    gamma: Vector
    unknown_basis: list
    candidates: list
    filtered: list
    rejected: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.candidates)


def _unknown_count(m: int, case: str) -> int:
    return m if case == "a" else m * m


def _ansatz_components(L: LieAlgebra, case: str, Lam0: Mapping, u: Sequence) -> list[Multivector]:
    """``Pi_j`` for each basis vector, for the unknown vector ``u``."""
    m = L.dim
    comps = []
    for j in range(m):
        if case == "a":
            comps.append(mv_scale(Lam0, u[j]) if u[j] else {})
        elif case == "b":
            Xj = [u[k * m + j] for k in range(m)]
            comps.append(mv_wedge(mv_from_vector(Xj), Lam0))
        else:
            aj = [u[k * m + j] for k in range(m)]
            comps.append(mv_interior(aj, Lam0))
    return comps


def _case_condition(L: LieAlgebra, case: str, Lam0, gamma, H, u) -> list[Fraction]:
    """Left side of the case condition for every basis pair, flattened."""
    m = L.dim
    out = []
    if case == "a":
        for i, j in combinations(range(m), 2):
            out.append(_pair(u, L.basis_bracket(i, j)) - u[j] * gamma[i] + u[i] * gamma[j])
        return out
    if case == "b":
        def Xmap(v):
            return [sum((u[k * m + t] * v[t] for t in range(m)), Fraction(0)) for k in range(m)]

        hb = row_basis(H)
        piv = [next(c for c, x in enumerate(r) if x) for r in hb]
        free = [c for c in range(m) if c not in piv]
        for i, j in combinations(range(m), 2):
            ei, ej = L.unit(i), L.unit(j)
            v = Xmap(L.basis_bracket(i, j))
            v = [a - b for a, b in zip(v, L.bracket(ei, Xmap(ej)))]
            v = [a + b for a, b in zip(v, L.bracket(ej, Xmap(ei)))]
            Xi, Xj = Xmap(ei), Xmap(ej)
            v = [a - gamma[i] * b + gamma[j] * c for a, b, c in zip(v, Xj, Xi)]
            # residual of v modulo H, read on the non-pivot columns
            for c in free:
                out.append(v[c] - sum((v[p] * r[c] for p, r in zip(piv, hb)), Fraction(0)))
        return out

    def alpha(v):
        return [sum((u[k * m + t] * v[t] for t in range(m)), Fraction(0)) for k in range(m)]

    def coad_alpha(X, Y):
        # (coad_X alpha)(Y) = coad_X(alpha(Y)) - alpha([X, Y])
        return [a - b for a, b in zip(coad(L, X, alpha(Y)), alpha(L.bracket(X, Y)))]

    for i, j in combinations(range(m), 2):
        ei, ej = L.unit(i), L.unit(j)
        beta = alpha(L.basis_bracket(i, j))
        beta = [a + b - c for a, b, c in zip(beta, coad_alpha(ei, ej), coad_alpha(ej, ei))]
        ai, aj = alpha(ei), alpha(ej)
        beta = [a + gamma[i] * b - gamma[j] * c for a, b, c in zip(beta, aj, ai)]
        w = mv_interior(beta, Lam0)
        keys = list(combinations(range(m), len(next(iter(Lam0))) - 1))
        out.extend(w.get(K, Fraction(0)) for K in keys)
    return out


def _linear_system(f, nunk: int) -> list[list[Fraction]]:
    cols = []
    for t in range(nunk):
        e = [Fraction(int(k == t)) for k in range(nunk)]
        cols.append(f(e))
    nrows = len(cols[0]) if cols else 0
    return [[cols[t][r] for t in range(nunk)] for r in range(nrows)]


def search_nambu_lie(L: LieAlgebra, H: Sequence[Sequence], case: str, *, seed: int | None = None) -> SearchResult:
    """Linear Nambu cocycles of the given ansatz type with core ideal ``H``.

    ``candidates`` is a basis of the space of structures ``Pi`` obtained from
    the solution space of the case condition; ``filtered`` keeps the basis
    candidates that are Nambu and satisfy the cocycle condition.
    """
    if case not in ("a", "b", "c"):
        raise ValueError("case must be 'a', 'b' or 'c'")
    H = [_vec(h) for h in H]
    check_ideal(L, H)
    Lam0 = wedge_vectors(H)
    if not Lam0:
        raise ValueError("the ideal basis is linearly dependent")
    gamma = gamma_of(L, Lam0)
    k = len(H)
    order = {"a": k, "b": k + 1, "c": k - 1}[case]
    m = L.dim
    nunk = _unknown_count(m, case)
    A = _linear_system(lambda u: _case_condition(L, case, Lam0, gamma, H, u), nunk)
    sols = kernel(A, nunk) if A else [[Fraction(int(i == t)) for i in range(nunk)] for t in range(nunk)]
    keys = [(j, I) for j in range(m) for I in combinations(range(m), order)] if 0 <= order <= m else []
    vectors = []
    for s in sols:
        comps = _ansatz_components(L, case, Lam0, s)
        vectors.append([comps[j].get(I, Fraction(0)) for j, I in keys])
    image = row_basis(vectors)
    candidates = []
    for vec in image:
        comps = [dict() for _ in range(m)]
        for (j, I), c in zip(keys, vec):
            if c:
                comps[j][I] = c
        candidates.append(LinearNambuStructure.from_components(L, comps))
    filtered, rejected = [], []
    for Pi in candidates:
        ok = Pi.order >= 2 and certify(Pi.tensor) and cocycle_check(L, Pi).is_cocycle
        (filtered if ok else rejected).append(Pi)
    return SearchResult(case, order, H, Lam0, gamma, sols, candidates, filtered, rejected)


# ---------------------------------------------------------------------------
# Nambu-Lie algebras
# ---------------------------------------------------------------------------

@dataclass
class NambuLieVerdict:
    nambu: bool
    cocycle: bool
    core_is_ideal: bool
    core: CoreDescriptor | None
    failing_pairs: list
    ideal_witness: object = None

    @property
    def passed(self) -> bool:
        return self.nambu and self.cocycle and self.core_is_ideal


def is_nambu_lie_algebra(L: LieAlgebra, Pi: LinearNambuStructure, *, seed: int | None = None) -> NambuLieVerdict:
    kw = {} if seed is None else {"seed": seed}
    nambu = Pi.order >= 2 and verify_nambu(Pi.tensor, **kw).passed
    coc = cocycle_check(L, Pi)
    core = None
    ideal_ok = False
    witness = None
    if not Pi.is_zero() and nambu:
        core = core_of_linear(Pi, L)
        try:
            check_ideal(L, core.H)
            ideal_ok = True
        except NotAnIdeal as exc:
            witness = exc.witness
    return NambuLieVerdict(nambu, coc.is_cocycle, ideal_ok, core, coc.failing_pairs(), witness)


def annihilator(K: Sequence[Sequence], dim: int) -> list[Vector]:
    """Basis of the covectors vanishing on ``K``."""
    K = [_vec(k) for k in K]
    return kernel(K, dim) if K else [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]


def ann_ideal_check(L: LieAlgebra, Pi: LinearNambuStructure, K: Sequence[Sequence]):
    """Whether ``Ann(K)`` is an ideal of the dual bracket; returns ``(ok, witness)``."""
    if not is_subalgebra(L, K):
        raise ValueError("K must be a subalgebra")
    F = dual_filippov(Pi)
    n = Pi.order
    ann = annihilator(K, L.dim)
    basis = [[Fraction(int(i == j)) for j in range(L.dim)] for i in range(L.dim)]
    K = [_vec(k) for k in K]
    for beta in ann:
        for J in combinations(range(L.dim), n - 1):
            out = F.bracket(beta, *(basis[j] for j in J))
            if any(_pair(out, k) for k in K):
                return False, (beta, J, out)
    return True, None
