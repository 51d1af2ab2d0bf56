"""Hypothesis strategies for exact objects on small charts."""

from fractions import Fraction

from hypothesis import strategies as st

from nambulie.exactalg import RatFunc
from nambulie.extcalc import Chart, KVectorField, OneForm

NAMES = ("x1", "x2", "x3")
CHART = Chart(NAMES)

small_ints = st.integers(-4, 4)
fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
exponents = st.tuples(*(st.integers(0, 2) for _ in NAMES))


def polynomials(max_terms=3, names=NAMES):
    exps = st.tuples(*(st.integers(0, 2) for _ in names))
    return st.dictionaries(exps, fractions, max_size=max_terms).map(lambda d: RatFunc.from_terms(names, d))


def nonzero_polynomials(max_terms=3):
    return polynomials(max_terms).filter(lambda p: not p.is_zero())


def ratfuncs(max_terms=2):
    return st.builds(lambda n, d: n / d, polynomials(max_terms), nonzero_polynomials(max_terms))


def vector_fields(chart=CHART, max_terms=2):
    return st.lists(polynomials(max_terms, chart.names), min_size=chart.dim, max_size=chart.dim).map(chart.vector)


def oneforms(chart=CHART, max_terms=2):
    return st.lists(polynomials(max_terms, chart.names), min_size=chart.dim,
                    max_size=chart.dim).map(lambda cs: OneForm(chart, tuple(cs)))


def constant_vectors(dim, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi).map(Fraction), min_size=dim, max_size=dim)


def multivectors(chart=CHART, degree=2, max_terms=2):
    from itertools import combinations

    keys = list(combinations(range(chart.dim), degree))
    return st.dictionaries(st.sampled_from(keys), polynomials(max_terms, chart.names), max_size=len(keys)).map(
        lambda d: KVectorField(chart, degree, {k: v for k, v in d.items() if v}))
