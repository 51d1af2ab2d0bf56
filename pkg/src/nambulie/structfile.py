"""Text format for structure definitions.

A structure file is a list of ``key: value`` lines; ``#`` starts a comment.
Repeated keys (``term``, ``bracket``, ``law``, ...) accumulate in order.
Numbers are integers or ``p/q``; decimal literals are rejected. Indices are
1-based. Example::

    kind: chart-group
    name: G3
    coords: x y z
    nonvanishing: x
    unit: 1 0 0
    law: x_1*x_2
    law: x_1*y_2 + y_1
    law: x_1*z_2 + z_1
    inverse: 1/x
    inverse: -y/x
    inverse: -z/x
    term: 1 2 3 = x*(x^2 - 1)/2
    coframe: 1/x, 0, 0
    coframe: 0, 1/x, 0
    coframe: 0, 0, 1/x

Kinds and their keys:

``nambu-tensor``
    ``coords``, ``nonvanishing``?, ``term: i j .. = coefficient``
``lie-algebra``
    ``dim``, ``names``?, ``coords``?, ``bracket: i j = c1 .. cm``,
    ``ideal NAME: i j ..`` (named subspaces spanned by basis vectors)
``linear-nambu``
    the ``lie-algebra`` keys plus ``term`` lines with linear coefficients
``chart-group``
    ``coords``, ``nonvanishing``?, ``unit``, ``law`` and ``inverse`` (one line
    per coordinate; the law uses suffixes ``_1``/``_2``), ``term``,
    ``coframe``? (comma-separated coefficients, one line per form),
    ``linear-coords``?
``matrix-group-tensor``
    ``group`` (``U``), ``size``, ``factor`` lines (rows separated by ``;``,
    entries ``re`` or ``re:im``), ``pairs``?

Every kind accepts ``name``, ``seed``, ``suite-size`` and ``expect``
(``pass``/``fail``).
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import GaussRat, ParseError, parse_ratfunc
from .extcalc import Chart, KVectorField, OneForm, sort_sign
from .liealg import LieAlgebra, LinearNambuStructure
from .matgrp import ChartGroup, CoboundaryTensor

KINDS = ("nambu-tensor", "lie-algebra", "linear-nambu", "chart-group", "matrix-group-tensor")
_REPEATED = {"term", "bracket", "law", "inverse", "coframe", "factor"}
_INT = re.compile(r"[+-]?\d+$")
_RAT = re.compile(r"[+-]?\d+(/\d+)?$")
_FLOAT = re.compile(r"[+-]?(\d+\.\d*|\.\d+|\d+[eE][+-]?\d+)")


@dataclass
class Field:
    value: str
    line: int
    column: int


@dataclass
class StructureFile:
    kind: str
    fields: dict
    repeated: dict
    ideals: dict
    name: str = ""
    seed: int | None = None
    suite_size: int | None = None
    expect: str = "pass"
    digest: str = ""
    source: str = ""

    def get(self, key: str, default=None) -> Field | None:
        return self.fields.get(key, default)

    def require(self, key: str) -> Field:
        f = self.fields.get(key)
        if f is None:
            raise ParseError(f"missing required key {key!r} for kind {self.kind}", "", 0, 1)
        return f


def _error(msg: str, f: Field, offset: int = 0) -> ParseError:
    return ParseError(msg, f.value, offset, f.line, f.column - 1)


def _number(tok: str, f: Field, offset: int) -> Fraction:
    if _FLOAT.match(tok):
        raise _error(f"floating-point literal {tok!r} is not allowed; write p/q", f, offset)
    if not _RAT.match(tok):
        raise _error(f"malformed rational {tok!r}", f, offset)
    num, _, den = tok.partition("/")
    if den and int(den) == 0:
        raise _error(f"zero denominator in {tok!r}", f, offset)
    return Fraction(int(num), int(den or 1))


def _tokens(f: Field, text: str | None = None, base: int = 0):
    text = f.value if text is None else text
    for m in re.finditer(r"\S+", text):
        yield m.group(), base + m.start()


def numbers(f: Field, text: str | None = None, base: int = 0) -> list[Fraction]:
    return [_number(t, f, off) for t, off in _tokens(f, text, base)]


def indices(f: Field, text: str | None = None, base: int = 0, dim: int | None = None) -> list[int]:
    out = []
    for t, off in _tokens(f, text, base):
        if not _INT.match(t):
            if _FLOAT.match(t):
                raise _error(f"floating-point literal {t!r} is not allowed", f, off)
            raise _error(f"expected a 1-based index, got {t!r}", f, off)
        i = int(t)
        if i < 1 or (dim is not None and i > dim):
            raise _error(f"index {i} out of range", f, off)
        out.append(i - 1)
    return out


def _split_eq(f: Field) -> tuple[str, str, int]:
    if "=" not in f.value:
        raise _error("expected 'indices = value'", f, 0)
    lhs, _, rhs = f.value.partition("=")
    return lhs, rhs, len(lhs) + 1


def parse_structure(text: str) -> StructureFile:
    fields: dict = {}
    repeated: dict = {k: [] for k in _REPEATED}
    ideals: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", raw, len(raw) - len(raw.lstrip()), lineno)
        key, _, value = line.partition(":")
        key_stripped = key.strip()
        lead = len(value) - len(value.lstrip())
        col = len(key) + 2 + lead
        f = Field(value.strip(), lineno, col)
        if key_stripped.startswith("ideal "):
            ideals[key_stripped[6:].strip()] = f
        elif key_stripped in _REPEATED:
            repeated[key_stripped].append(f)
        else:
            if key_stripped in fields:
                raise ParseError(f"duplicate key {key_stripped!r}", raw, 0, lineno)
            fields[key_stripped] = f
    kind_f = fields.get("kind")
    if kind_f is None:
        raise ParseError("missing 'kind'", "", 0, 1)
    if kind_f.value not in KINDS:
        raise _error(f"unknown kind {kind_f.value!r}; expected one of {', '.join(KINDS)}", kind_f)
    sf = StructureFile(kind_f.value, fields, repeated, ideals, source=text,
                       digest=hashlib.sha256(text.encode()).hexdigest())
    sf.name = fields["name"].value if "name" in fields else kind_f.value
    if "seed" in fields:
        f = fields["seed"]
        try:
            sf.seed = int(f.value, 0)
        except ValueError:
            raise _error(f"malformed seed {f.value!r}", f) from None
    if "suite-size" in fields:
        f = fields["suite-size"]
        if not _INT.match(f.value) or int(f.value) < 0:
            raise _error("suite-size must be a non-negative integer", f)
        sf.suite_size = int(f.value)
    if "expect" in fields:
        f = fields["expect"]
        if f.value not in ("pass", "fail"):
            raise _error("expect must be 'pass' or 'fail'", f)
        sf.expect = f.value
    return sf


def read_structure(path: str) -> StructureFile:
    with open(path, encoding="utf-8") as fh:
        return parse_structure(fh.read())


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _chart(sf: StructureFile, key: str = "coords") -> Chart:
    f = sf.require(key)
    names = f.value.split()
    nv = sf.get("nonvanishing")
    try:
        return Chart(tuple(names), tuple(nv.value.split()) if nv else ())
    except ValueError as exc:
        raise _error(str(exc), f) from None


def _terms(sf: StructureFile, chart: Chart) -> KVectorField:
    if not sf.repeated["term"]:
        raise ParseError("no 'term' lines", "", 0, 1)
    coeffs: dict = {}
    degree = None
    for f in sf.repeated["term"]:
        lhs, rhs, off = _split_eq(f)
        I = indices(f, lhs, 0, chart.dim)
        if degree is None:
            degree = len(I)
        elif len(I) != degree:
            raise _error(f"term has {len(I)} indices, expected {degree}", f)
        s, K = sort_sign(I)
        if not s:
            raise _error("repeated index in term", f)
        lead = len(rhs) - len(rhs.lstrip())
        c = parse_ratfunc(rhs.strip(), chart.names, line=f.line, column=f.column + off + lead)
        c = c * s
        coeffs[K] = coeffs[K] + c if K in coeffs else c
    return KVectorField(chart, degree, coeffs)


def build_nambu_tensor(sf: StructureFile) -> KVectorField:
    return _terms(sf, _chart(sf))


def build_lie_algebra(sf: StructureFile) -> LieAlgebra:
    f = sf.require("dim")
    if not _INT.match(f.value) or int(f.value) < 1:
        raise _error("dim must be a positive integer", f)
    m = int(f.value)
    brackets = {}
    for b in sf.repeated["bracket"]:
        lhs, rhs, off = _split_eq(b)
        ij = indices(b, lhs, 0, m)
        if len(ij) != 2:
            raise _error("bracket needs two indices", b)
        vec = numbers(b, rhs, off)
        if len(vec) != m:
            raise _error(f"bracket value needs {m} entries", b, off)
        i, j = ij
        if i == j:
            raise _error("bracket of a basis vector with itself", b)
        if i > j:
            i, j, vec = j, i, [-x for x in vec]
        brackets[(i, j)] = vec
    kw = {}
    if "names" in sf.fields:
        kw["names"] = tuple(sf.fields["names"].value.split())
    if "coords" in sf.fields:
        kw["coord_names"] = tuple(sf.fields["coords"].value.split())
    try:
        return LieAlgebra(m, brackets, **kw)
    except ValueError as exc:
        raise _error(str(exc), f) from None


def ideal_basis(sf: StructureFile, L: LieAlgebra, spec: str) -> list[list[Fraction]]:
    """``all``, a declared ideal name, or comma-separated 1-based indices."""
    if spec == "all":
        sel = list(range(L.dim))
    elif spec in sf.ideals:
        sel = indices(sf.ideals[spec], dim=L.dim)
    else:
        try:
            sel = [int(t) - 1 for t in spec.split(",")]
        except ValueError:
            raise ValueError(f"unknown ideal {spec!r}; declared: {', '.join(sf.ideals) or 'none'}") from None
        if any(i < 0 or i >= L.dim for i in sel):
            raise ValueError(f"ideal index out of range in {spec!r}")
    return [[Fraction(int(i == j)) for j in range(L.dim)] for i in sel]


def build_linear_nambu(sf: StructureFile) -> LinearNambuStructure:
    L = build_lie_algebra(sf)
    try:
        return LinearNambuStructure(L, _terms(sf, L.chart()))
    except ValueError as exc:
        raise ParseError(str(exc), "", 0, sf.repeated["term"][0].line) from None


def build_chart_group(sf: StructureFile) -> tuple[ChartGroup, KVectorField, list | None]:
    chart = _chart(sf)
    dn = tuple(n + "_1" for n in chart.names) + tuple(n + "_2" for n in chart.names)
    uf = sf.require("unit")
    unit = numbers(uf)
    if len(unit) != chart.dim:
        raise _error(f"unit needs {chart.dim} entries", uf)
    for key in ("law", "inverse"):
        if len(sf.repeated[key]) != chart.dim:
            raise ParseError(f"need {chart.dim} '{key}' lines", "", 0, 1)
    law = [parse_ratfunc(f.value, dn, line=f.line, column=f.column) for f in sf.repeated["law"]]
    inv = [parse_ratfunc(f.value, chart.names, line=f.line, column=f.column) for f in sf.repeated["inverse"]]
    G = ChartGroup(sf.name, chart, law, unit, inv)
    P = _terms(sf, chart)
    coframe = None
    if sf.repeated["coframe"]:
        coframe = []
        for f in sf.repeated["coframe"]:
            parts = f.value.split(",")
            if len(parts) != chart.dim:
                raise _error(f"coframe form needs {chart.dim} comma-separated coefficients", f)
            cs, off = [], 0
            for p in parts:
                lead = len(p) - len(p.lstrip())
                cs.append(parse_ratfunc(p.strip(), chart.names, line=f.line, column=f.column + off + lead))
                off += len(p) + 1
            coframe.append(OneForm(chart, tuple(cs)))
    return G, P, coframe


def _gauss(tok: str, f: Field, off: int) -> GaussRat:
    re_s, sep, im_s = tok.partition(":")
    re_v = _number(re_s, f, off)
    im_v = _number(im_s, f, off + len(re_s) + 1) if sep else Fraction(0)
    return GaussRat(re_v, im_v)


def build_matrix_tensor(sf: StructureFile) -> tuple[CoboundaryTensor, int]:
    gf = sf.require("group")
    if gf.value != "U":
        raise _error(f"unsupported group {gf.value!r}; only U is available", gf)
    szf = sf.require("size")
    if not _INT.match(szf.value) or int(szf.value) < 1:
        raise _error("size must be a positive integer", szf)
    n = int(szf.value)
    factors = []
    for f in sf.repeated["factor"]:
        rows, off = [], 0
        for chunk in f.value.split(";"):
            row = [_gauss(t, f, off + o) for t, o in _tokens(f, chunk)]
            if len(row) != n:
                raise _error(f"matrix row needs {n} entries", f, off)
            rows.append(row)
            off += len(chunk) + 1
        if len(rows) != n:
            raise _error(f"matrix needs {n} rows", f)
        A = tuple(tuple(r) for r in rows)
        if any(A[j][i].conjugate() != -A[i][j] for i in range(n) for j in range(n)):
            raise _error("factor is not skew-Hermitian (not in the Lie algebra)", f)
        factors.append(A)
    if not factors:
        raise ParseError("no 'factor' lines", "", 0, 1)
    pairs = 25
    if "pairs" in sf.fields:
        pf = sf.fields["pairs"]
        if not _INT.match(pf.value) or int(pf.value) < 1:
            raise _error("pairs must be a positive integer", pf)
        pairs = int(pf.value)
    return CoboundaryTensor(factors), pairs

