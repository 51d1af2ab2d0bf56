"""Rational functions over Q in named variables.

Polynomials are sympy sparse ``PolyElement`` objects over ``QQ`` with graded-lex
order. A :class:`RatFunc` keeps a numerator/denominator pair in canonical form:
coprime, denominator monic under grlex, zero stored as ``0/1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .rat import format_rat, to_rat


class ChartMismatch(ValueError):
    """Operands live on different coordinate rings."""


class DomainError(ValueError):
    """A rational function was evaluated on its pole set."""


@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...]) -> PolyRing:
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")
    if not names:
        raise ValueError("a coordinate ring needs at least one variable")
    return PolyRing(",".join(names), QQ, grlex)


def _qq(c):
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    if isinstance(c, int):
        return QQ(c)
    return QQ.convert(c)


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _canonical(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    ring = num.ring
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return ring.zero, ring.one
    if den.is_ground:
        c = den.LC
        return (num.quo_ground(c) if c != 1 else num), ring.one
    g = num.gcd(den)
    if not g.is_ground:
        num = num.exquo(g)
        den = den.exquo(g)
    c = den.LC
    if c != 1:
        num = num.quo_ground(c)
        den = den.quo_ground(c)
    return num, den


class RatFunc:
    """Canonical fraction of two polynomials over Q."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyElement, den: PolyElement | None = None, *, normalized: bool = False):
        if den is None:
            den = num.ring.one
        elif den.ring != num.ring:
            raise ChartMismatch("numerator and denominator rings differ")
        if not normalized:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, names: Sequence[str], value=0) -> "RatFunc":
        ring = poly_ring(tuple(names))
        return cls(ring.ground_new(_qq(to_rat(value))), ring.one, normalized=True)

    @classmethod
    def var(cls, names: Sequence[str], name: str) -> "RatFunc":
        names = tuple(names)
        if name not in names:
            raise KeyError(f"unknown variable {name!r}; chart has {names}")
        ring = poly_ring(names)
        return cls(ring.gens[names.index(name)], ring.one, normalized=True)

    @classmethod
    def from_terms(cls, names: Sequence[str], terms: Mapping[tuple[int, ...], object]) -> "RatFunc":
        ring = poly_ring(tuple(names))
        p = ring.from_dict({k: _qq(to_rat(v)) for k, v in terms.items() if v})
        return cls(p, ring.one, normalized=True)

    # -- basic properties ---------------------------------------------
    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(str(s) for s in self.ring.symbols)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den == 1

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _frac(self.num.LC) if self.num else Fraction(0)

    def degree(self) -> int:
        """Total degree of the numerator (``-1`` for zero)."""
        if not self.num:
            return -1
        return max(sum(m) for m in self.num.monoms())

    # -- coercion -----------------------------------------------------
    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise ChartMismatch(f"variables {self.names} vs {other.names}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            ring = self.ring
            return RatFunc(ring.ground_new(_qq(other)), ring.one, normalized=True)
        try:
            c = _qq(to_rat(other))
        except TypeError:
            return NotImplemented
        return RatFunc(self.ring.ground_new(c), self.ring.one, normalized=True)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            if self.den == 1:
                return RatFunc(self.num + o.num, self.den, normalized=True)
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == 1 and o.den == 1:
            return RatFunc(self.num * o.num, self.den, normalized=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num ** k, self.den ** k, normalized=True)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ChartMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.names, tuple(self.num.terms()), tuple(self.den.terms())))

    def __bool__(self):
        return bool(self.num)

    # -- calculus and substitution -------------------------------------
    def diff(self, name: str) -> "RatFunc":
        names = self.names
        if name not in names:
            raise KeyError(f"unknown variable {name!r}; chart has {names}")
        x = self.ring.gens[names.index(name)]
        if self.den == 1:
            return RatFunc(self.num.diff(x), self.den, normalized=True)
        num = self.num.diff(x) * self.den - self.num * self.den.diff(x)
        return RatFunc(num, self.den ** 2)

    def evaluate(self, point: Sequence | Mapping[str, object]) -> Fraction:
        """Value at a rational point (all variables)."""
        vals = self._point_values(point)
        if not self.ring.ngens:
            return self.constant_value()
        d = self.den(*vals) if not self.den.is_ground else self.den.LC
        if d == 0:
            raise DomainError(f"{self} has a pole at {tuple(_frac(v) for v in vals)}")
        n = self.num(*vals) if self.num else QQ(0)
        return _frac(n) / _frac(d)

    def _point_values(self, point):
        names = self.names
        if isinstance(point, Mapping):
            missing = [n for n in names if n not in point]
            if missing:
                raise KeyError(f"point lacks values for {missing}")
            seq = [point[n] for n in names]
        else:
            seq = list(point)
            if len(seq) != len(names):
                raise ValueError(f"point has {len(seq)} entries, chart has {len(names)}")
        return [_qq(to_rat(v)) for v in seq]

    def subs(self, values: Mapping[str, object], target: Sequence[str] | None = None) -> "RatFunc":
        """Substitute RatFunc/rational values for variables.

        Variables absent from ``values`` map to themselves and must exist in
        ``target`` (default: this ring's names).
        """
        target = tuple(target) if target is not None else self.names
        images = []
        for n in self.names:
            if n in values:
                v = values[n]
                if isinstance(v, RatFunc):
                    if v.names != target:
                        v = v.lift(target)
                    images.append(v)
                else:
                    images.append(RatFunc.const(target, v))
            else:
                images.append(RatFunc.var(target, n))
        return _compose(self.num, images, target) / _compose(self.den, images, target)

    def lift(self, names: Sequence[str]) -> "RatFunc":
        """Embed into a ring whose variable list contains this one's."""
        names = tuple(names)
        if names == self.names:
            return self
        missing = [n for n in self.names if n not in names]
        if missing:
            raise ChartMismatch(f"cannot lift: {missing} not in {names}")
        ring = poly_ring(names)
        pos = [names.index(n) for n in self.names]

        def move(p):
            out = {}
            for m, c in p.terms():
                e = [0] * len(names)
                for i, k in zip(pos, m):
                    e[i] = k
                out[tuple(e)] = c
            return ring.from_dict(out) if out else ring.zero

        return RatFunc(move(self.num), move(self.den), normalized=True)

    def variables(self) -> set[str]:
        """Names of the variables that actually occur."""
        used = set()
        names = self.names
        for p in (self.num, self.den):
            for m in p.monoms():
                used.update(names[i] for i, k in enumerate(m) if k)
        return used

    # -- text ---------------------------------------------------------
    def __str__(self):
        if self.den == 1:
            return format_poly(self.num)
        num = format_poly(self.num)
        if len(self.num.terms()) > 1:
            num = f"({num})"
        return f"{num}/({format_poly(self.den)})"

    def __repr__(self):
        return f"RatFunc({self})"


def _compose(p: PolyElement, images: list[RatFunc], target) -> RatFunc:
    acc = RatFunc.const(target, 0)
    if not p:
        return acc
    powers: dict[tuple[int, int], RatFunc] = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = images[i] ** k
        return powers[key]

    polys_only = all(v.den == 1 for v in images)
    if polys_only:
        ring = poly_ring(target)
        total = ring.zero
        for m, c in p.terms():
            t = ring.ground_new(c)
            for i, k in enumerate(m):
                if k:
                    t = t * power(i, k).num
            total += t
        return RatFunc(total, ring.one, normalized=True)
    for m, c in p.terms():
        t = RatFunc.const(target, _frac(c))
        for i, k in enumerate(m):
            if k:
                t = t * power(i, k)
        acc = acc + t
    return acc


def format_poly(p: PolyElement) -> str:
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    parts = []
    for m, c in p.terms():
        c = _frac(c)
        factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, m) if k]
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = format_rat(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rat(mag)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- convenience wrappers mirroring the operation names -----------------

def partial_derivative(f: RatFunc, var: str) -> RatFunc:
    return f.diff(var)


def normalize(f: RatFunc) -> RatFunc:
    return RatFunc(f.num, f.den)


def ratfuncs(names: Iterable[str]) -> tuple[RatFunc, ...]:
    """Coordinate functions of a chart, in order."""
    names = tuple(names)
    return tuple(RatFunc.var(names, n) for n in names)
