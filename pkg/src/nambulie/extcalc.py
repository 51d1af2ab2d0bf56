"""Multivector fields and low-degree forms on a coordinate chart.

Coefficients are :class:`RatFunc` values over the chart's coordinates.
Multivectors are stored sparsely as ``{increasing index tuple: coefficient}``
with 0-based indices. Contraction ``i(alpha)`` always fills the *first* slot,
so ``P(a1, ..., an) = i(an) ... i(a1) P`` and ``sharp(P, a1..a_{n-1})`` is the
vector ``v`` with ``<b, v> = P(a1, ..., a_{n-1}, b)``.

The combinatorial helpers (``mv_*``) work for any coefficient field, which
lets the Lie-algebra and matrix-group code reuse them with Fraction entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .exactalg import DomainError, RatFunc, parse_ratfunc, rank, row_basis

Index = tuple[int, ...]


# ---------------------------------------------------------------------------
# coefficient-generic multivector combinatorics
# ---------------------------------------------------------------------------

def sort_sign(indices: Sequence[int]) -> tuple[int, Index]:
    """Sign of the permutation sorting ``indices``; 0 if an index repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def mv_add(A: Mapping, B: Mapping, scale=1) -> dict:
    out = dict(A)
    for k, v in B.items():
        out[k] = out[k] + scale * v if k in out else scale * v
    return _clean(out)


def mv_scale(A: Mapping, c) -> dict:
    return _clean({k: c * v for k, v in A.items()})


def mv_wedge(A: Mapping, B: Mapping) -> dict:
    out: dict = {}
    for I, a in A.items():
        for J, b in B.items():
            s, K = sort_sign(I + J)
            if s:
                t = a * b if s > 0 else -(a * b)
                out[K] = out[K] + t if K in out else t
    return _clean(out)


def mv_from_vector(v: Sequence) -> dict:
    return _clean({(i,): c for i, c in enumerate(v)})


def mv_to_vector(A: Mapping, dim: int, zero) -> list:
    v = [zero] * dim
    for (i,), c in A.items():
        v[i] = c
    return v


def mv_interior(alpha: Sequence, A: Mapping) -> dict:
    """Contract a covector (full coefficient list) into the first slot."""
    out: dict = {}
    for I, a in A.items():
        for s, i in enumerate(I):
            c = alpha[i]
            if not c:
                continue
            t = c * a
            if s % 2:
                t = -t
            K = I[:s] + I[s + 1:]
            out[K] = out[K] + t if K in out else t
    return _clean(out)


def mv_interior_basis(j: int, A: Mapping) -> dict:
    """``i(dx^j)`` into the first slot."""
    out: dict = {}
    for I, a in A.items():
        if j in I:
            s = I.index(j)
            K = I[:s] + I[s + 1:]
            out[K] = -a if s % 2 else a
    return out


def mv_contract_indices(A: Mapping, J: Sequence[int]) -> dict:
    """``i(dx^{J[-1]}) ... i(dx^{J[0]}) A``."""
    out = dict(A)
    for j in J:
        out = mv_interior_basis(j, out)
    return out


def mv_degree(A: Mapping) -> int | None:
    degs = {len(k) for k in A}
    if len(degs) > 1:
        raise ValueError("inhomogeneous multivector")
    return degs.pop() if degs else None


def mv_factor_span(A: Mapping, dim: int, degree: int, zero) -> list[list]:
    """Vectors ``i(phi) A`` for all basis (degree-1)-forms ``phi`` (nonzero only)."""
    if degree == 0 or not A:
        return []
    out = []
    for J in combinations(range(dim), degree - 1):
        v = mv_contract_indices(A, J)
        if v:
            out.append(mv_to_vector(v, dim, zero))
    return out


def mv_is_decomposable(A: Mapping, dim: int, degree: int) -> bool:
    """Plucker test: ``i(phi)A ^ A = 0`` for every basis (degree-1)-form."""
    if degree <= 1 or not A:
        return True
    for J in combinations(range(dim), degree - 1):
        v = mv_contract_indices(A, J)
        if v and mv_wedge(v, A):
            return False
    return True


def mv_plucker_witness(A: Mapping, dim: int, degree: int):
    """First ``J`` (in lexicographic order) with ``i(dx^J)A ^ A != 0``, or None."""
    if degree <= 1 or not A:
        return None
    for J in combinations(range(dim), degree - 1):
        v = mv_contract_indices(A, J)
        if v:
            w = mv_wedge(v, A)
            if w:
                return J, w
    return None


def mv_push(A: Mapping, columns: Sequence[Sequence], dim_out: int) -> dict:
    """Image of a multivector under the linear map sending ``e_j`` to ``columns[j]``."""
    out: dict = {}
    images = [mv_from_vector(col) for col in columns]
    for I, a in A.items():
        term = {(): a}
        for i in I:
            term = mv_wedge(term, images[i])
            if not term:
                break
        out = mv_add(out, term)
    return out


# ---------------------------------------------------------------------------
# charts and fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    """Coordinate names of a local model, plus expressions assumed nonzero."""

    names: tuple[str, ...]
    nonvanishing: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "nonvanishing", tuple(self.nonvanishing))
        if not self.names:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate coordinate names {self.names}")

    @classmethod
    def standard(cls, m: int, prefix: str = "x") -> "Chart":
        return cls(tuple(f"{prefix}{i}" for i in range(1, m + 1)))

    @property
    def dim(self) -> int:
        return len(self.names)

    def coords(self) -> tuple[RatFunc, ...]:
        return tuple(RatFunc.var(self.names, n) for n in self.names)

    def coord(self, name_or_index) -> RatFunc:
        name = self.names[name_or_index] if isinstance(name_or_index, int) else name_or_index
        return RatFunc.var(self.names, name)

    def const(self, value) -> RatFunc:
        return RatFunc.const(self.names, value)

    def parse(self, text: str) -> RatFunc:
        return parse_ratfunc(text, self.names)

    def as_ratfunc(self, value) -> RatFunc:
        if isinstance(value, RatFunc):
            if value.names != self.names:
                return value.lift(self.names)
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def check_point(self, point: Sequence) -> None:
        for expr in self.nonvanishing:
            if self.parse(expr).evaluate(point) == 0:
                raise DomainError(f"point {tuple(point)} lies on the excluded locus {expr} = 0")

    # field constructors
    def vector(self, coeffs: Sequence) -> "KVectorField":
        return KVectorField(self, 1, {(i,): self.as_ratfunc(c) for i, c in enumerate(coeffs)})

    def basis_vector(self, i: int) -> "KVectorField":
        return KVectorField(self, 1, {(i,): self.const(1)})

    def basis_multivector(self, indices: Sequence[int], coeff=1) -> "KVectorField":
        s, K = sort_sign(indices)
        c = self.as_ratfunc(coeff)
        return KVectorField(self, len(indices), {K: c if s > 0 else -c} if s else {})

    def function(self, f) -> "KVectorField":
        return KVectorField(self, 0, {(): self.as_ratfunc(f)})

    def form(self, coeffs: Sequence) -> "OneForm":
        return OneForm(self, tuple(self.as_ratfunc(c) for c in coeffs))

    def dx(self, i: int) -> "OneForm":
        return OneForm(self, tuple(self.const(1 if k == i else 0) for k in range(self.dim)))


class KVectorField:
    """A field of k-vectors with rational-function coefficients."""

    __slots__ = ("chart", "degree", "coeffs")

    def __init__(self, chart: Chart, degree: int, coeffs: Mapping[Index, RatFunc] | None = None):
        if not 0 <= degree <= chart.dim:
            raise ValueError(f"degree {degree} outside 0..{chart.dim}")
        clean = {}
        for I, c in (coeffs or {}).items():
            I = tuple(I)
            if len(I) != degree or any(a >= b for a, b in zip(I, I[1:])) or any(not 0 <= i < chart.dim for i in I):
                raise ValueError(f"bad index tuple {I} for a degree-{degree} field on {chart.names}")
            c = chart.as_ratfunc(c)
            if c:
                clean[I] = c
        self.chart = chart
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def _raw(cls, chart, degree, coeffs):
        obj = cls.__new__(cls)
        obj.chart = chart
        obj.degree = degree
        obj.coeffs = coeffs
        return obj

    def _check(self, other: "KVectorField"):
        if other.chart.names != self.chart.names:
            raise ValueError(f"chart mismatch: {self.chart.names} vs {other.chart.names}")

    @property
    def dim(self) -> int:
        return self.chart.dim

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, KVectorField):
            return NotImplemented
        if other.chart.names != self.chart.names:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.chart.names, self.degree, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __add__(self, other: "KVectorField") -> "KVectorField":
        self._check(other)
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError("cannot add multivectors of different degree")
        deg = self.degree if self.coeffs else other.degree
        return KVectorField._raw(self.chart, deg, mv_add(self.coeffs, other.coeffs))

    def __neg__(self):
        return KVectorField._raw(self.chart, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f) -> "KVectorField":
        f = self.chart.as_ratfunc(f)
        return KVectorField._raw(self.chart, self.degree, mv_scale(self.coeffs, f))

    __rmul__ = __mul__

    def wedge(self, other: "KVectorField") -> "KVectorField":
        return wedge(self, other)

    def __xor__(self, other):
        return wedge(self, other)

    def components(self) -> list[RatFunc]:
        """Coefficient list of a vector field (degree 1)."""
        if self.degree != 1:
            raise ValueError("components() is only defined for vector fields")
        return mv_to_vector(self.coeffs, self.dim, self.chart.const(0))

    def apply(self, f: RatFunc) -> RatFunc:
        """Vector field acting on a function as a derivation."""
        f = self.chart.as_ratfunc(f)
        out = self.chart.const(0)
        for (i,), c in self.coeffs.items():
            out = out + c * f.diff(self.chart.names[i])
        return out

    def __call__(self, *alphas: "OneForm") -> RatFunc:
        """Full evaluation ``P(a1, ..., an)``."""
        if len(alphas) != self.degree:
            raise ValueError(f"expected {self.degree} covectors, got {len(alphas)}")
        A = dict(self.coeffs)
        for a in alphas:
            A = mv_interior(a.coeffs, A)
        return A.get((), self.chart.const(0))

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs.values())

    def at(self, point: Sequence) -> dict[Index, Fraction]:
        """Coefficients evaluated at a rational point."""
        self.chart.check_point(point)
        return _clean({I: c.evaluate(point) for I, c in self.coeffs.items()})

    def subs(self, values: Mapping[str, Any]) -> "KVectorField":
        return KVectorField._raw(self.chart, self.degree,
                                 _clean({I: c.subs(values) for I, c in self.coeffs.items()}))

    def __repr__(self):
        return f"KVectorField({format_multivector(self)})"


@dataclass(frozen=True)
class OneForm:
    chart: Chart
    coeffs: tuple[RatFunc, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.chart.dim:
            raise ValueError(f"1-form needs {self.chart.dim} coefficients, got {len(self.coeffs)}")

    def _check(self, other):
        if other.chart.names != self.chart.names:
            raise ValueError(f"chart mismatch: {self.chart.names} vs {other.chart.names}")

    def __add__(self, other: "OneForm") -> "OneForm":
        self._check(other)
        return OneForm(self.chart, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return OneForm(self.chart, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        f = self.chart.as_ratfunc(f)
        return OneForm(self.chart, tuple(f * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def pair(self, X: KVectorField) -> RatFunc:
        """``<alpha, X>`` for a vector field ``X``."""
        out = self.chart.const(0)
        for (i,), c in X.coeffs.items():
            out = out + self.coeffs[i] * c
        return out

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def __str__(self):
        return format_oneform(self)


@dataclass(frozen=True)
class TwoForm:
    chart: Chart
    coeffs: Mapping[tuple[int, int], RatFunc] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(dict(self.coeffs)))

    def component(self, i: int, j: int) -> RatFunc:
        if i == j:
            return self.chart.const(0)
        if i < j:
            return self.coeffs.get((i, j), self.chart.const(0))
        return -self.coeffs.get((j, i), self.chart.const(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, TwoForm) and other.chart.names == self.chart.names and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.chart.names, tuple(sorted(self.coeffs.items()))))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def wedge(A: KVectorField, B: KVectorField) -> KVectorField:
    A._check(B)
    deg = A.degree + B.degree
    if deg > A.dim:
        return KVectorField._raw(A.chart, A.dim, {})
    return KVectorField._raw(A.chart, deg, mv_wedge(A.coeffs, B.coeffs))


def wedge_all(fields: Sequence[KVectorField], chart: Chart | None = None) -> KVectorField:
    if not fields:
        if chart is None:
            raise ValueError("empty wedge needs a chart")
        return chart.function(1)
    out = fields[0]
    for f in fields[1:]:
        out = wedge(out, f)
    return out


def interior(alpha: OneForm, P: KVectorField) -> KVectorField:
    if alpha.chart.names != P.chart.names:
        raise ValueError("chart mismatch")
    if P.degree < 1:
        raise ValueError("cannot contract into a function")
    return KVectorField._raw(P.chart, P.degree - 1, mv_interior(alpha.coeffs, P.coeffs))


def d_function(f: RatFunc, chart: Chart) -> OneForm:
    f = chart.as_ratfunc(f)
    return OneForm(chart, tuple(f.diff(n) for n in chart.names))


def d_oneform(alpha: OneForm) -> TwoForm:
    chart = alpha.chart
    names = chart.names
    out = {}
    for i, j in combinations(range(chart.dim), 2):
        c = alpha.coeffs[j].diff(names[i]) - alpha.coeffs[i].diff(names[j])
        if c:
            out[(i, j)] = c
    return TwoForm(chart, out)


def interior_vector_twoform(X: KVectorField, omega: TwoForm) -> OneForm:
    """``i(X) omega``, i.e. ``Y -> omega(X, Y)``."""
    chart = omega.chart
    comps = []
    for j in range(chart.dim):
        c = chart.const(0)
        for (i,), x in X.coeffs.items():
            c = c + x * omega.component(i, j)
        comps.append(c)
    return OneForm(chart, tuple(comps))


def interior_vector_oneform(X: KVectorField, alpha: OneForm) -> RatFunc:
    return alpha.pair(X)


def lie_bracket(X: KVectorField, Y: KVectorField) -> KVectorField:
    return lie_derivative(X, Y)


def lie_derivative(X: KVectorField, P: KVectorField) -> KVectorField:
    """``L_X P`` for a vector field ``X`` and a k-vector field ``P``."""
    if X.degree != 1:
        raise ValueError("Lie derivative along a non-vector field")
    X._check(P)
    chart = P.chart
    names = chart.names
    # derivatives dX^j / dx^i, cached
    dX = {}
    for (j,), c in X.coeffs.items():
        for i, n in enumerate(names):
            v = c.diff(n)
            if v:
                dX[(i, j)] = v
    out: dict = {}
    for I, f in P.coeffs.items():
        xf = X.apply(f)
        if xf:
            out[I] = out[I] + xf if I in out else xf
        # f * sum_s d_{i1} ^ ... [X, d_{is}] ^ ... ; [X, d_i] = -sum_j (d_i X^j) d_j
        for s, i in enumerate(I):
            for j in range(chart.dim):
                v = dX.get((i, j))
                if v is None:
                    continue
                sign, K = sort_sign(I[:s] + (j,) + I[s + 1:])
                if not sign:
                    continue
                t = f * v
                t = -t if sign > 0 else t
                out[K] = out[K] + t if K in out else t
    return KVectorField._raw(chart, P.degree, _clean(out))


def lie_derivative_form(X: KVectorField, alpha: OneForm) -> OneForm:
    """``L_X alpha``; componentwise ``X(a_j) + sum_i a_i d_j X^i``."""
    chart = alpha.chart
    names = chart.names
    comps = []
    for j, n in enumerate(names):
        c = X.apply(alpha.coeffs[j])
        for (i,), x in X.coeffs.items():
            a = alpha.coeffs[i]
            if a:
                c = c + a * x.diff(n)
        comps.append(c)
    return OneForm(chart, tuple(comps))


def sharp(P: KVectorField, *alphas: OneForm) -> KVectorField:
    """Vector ``v`` with ``<b, v> = P(alphas..., b)``."""
    if len(alphas) != P.degree - 1:
        raise ValueError(f"sharp of a degree-{P.degree} field takes {P.degree - 1} covectors, got {len(alphas)}")
    A = dict(P.coeffs)
    for a in alphas:
        if a.chart.names != P.chart.names:
            raise ValueError("chart mismatch")
        A = mv_interior(a.coeffs, A)
    return KVectorField._raw(P.chart, 1, _clean(A))


def is_decomposable(P: KVectorField) -> bool:
    return mv_is_decomposable(P.coeffs, P.dim, P.degree)


def plucker_witness(P: KVectorField):
    """``(J, i(dx^J)P ^ P)`` for the first failing Plucker contraction, else None."""
    w = mv_plucker_witness(P.coeffs, P.dim, P.degree)
    if w is None:
        return None
    J, val = w
    return J, KVectorField._raw(P.chart, P.degree + 1, val)


def factor_span(P: KVectorField) -> list[KVectorField]:
    """Nonzero contractions ``i(phi)P`` over basis (n-1)-forms (not reduced)."""
    zero = P.chart.const(0)
    return [P.chart.vector(v) for v in mv_factor_span(P.coeffs, P.dim, P.degree, zero)]


def field_rank(fields: Sequence[KVectorField]) -> int:
    """Rank over the rational-function field."""
    rows = [f.components() for f in fields if f]
    return rank(rows) if rows else 0


def in_field_span(X: KVectorField, fields: Sequence[KVectorField]) -> bool:
    if not X:
        return True
    base = row_basis([f.components() for f in fields if f])
    return rank(base + [X.components()]) == len(base)


def is_involutive(fields: Sequence[KVectorField]) -> bool:
    return involutivity_witness(fields) is None


def involutivity_witness(fields: Sequence[KVectorField]):
    """First pair ``(i, j, [X_i, X_j])`` whose bracket escapes the span, else None."""
    fields = [f for f in fields]
    base = row_basis([f.components() for f in fields if f])
    r = len(base)
    for i, j in combinations(range(len(fields)), 2):
        br = lie_bracket(fields[i], fields[j])
        if br and rank(base + [br.components()]) != r:
            return i, j, br
    return None


def rank_at_point(P: KVectorField, point: Sequence) -> int:
    """Dimension of the span of the factors of ``P`` at a point."""
    vals = P.at(point)
    vecs = mv_factor_span(vals, P.dim, P.degree, Fraction(0))
    return rank(vecs) if vecs else 0


# ---------------------------------------------------------------------------
# text
# ---------------------------------------------------------------------------

def format_multivector(P: KVectorField) -> str:
    if not P.coeffs:
        return "0"
    names = P.chart.names
    parts = []
    for I in sorted(P.coeffs):
        c = P.coeffs[I]
        basis = "^".join(f"d/d{names[i]}" for i in I) or "1"
        parts.append(f"({c})*{basis}")
    return " + ".join(parts)


def format_oneform(alpha: OneForm) -> str:
    names = alpha.chart.names
    parts = [f"({c})*d{n}" for c, n in zip(alpha.coeffs, names) if c]
    return " + ".join(parts) if parts else "0"


def multivector_records(P: KVectorField) -> list[dict]:
    """Serializable ``{indices, coeff}`` list with 1-based indices."""
    return [{"indices": [i + 1 for i in I], "coeff": str(P.coeffs[I])} for I in sorted(P.coeffs)]


def coordinate_wedge(chart: Chart, indices: Iterable[int]) -> KVectorField:
    """``d/dx^{i1} ^ ... ^ d/dx^{ik}`` from 0-based indices."""
    return chart.basis_multivector(tuple(indices))
