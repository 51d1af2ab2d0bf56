"""
A solvable Nambu-Lie group
==========================

G3 is the group of matrices [[x, 0, y], [0, x, z], [0, 0, 1]] with x != 0.
The tensor f(x) d/dx ^ d/dy ^ d/dz is multiplicative for f = x(x^2 - 1)/2.
"""

# %%
from nambulie.catalog import g3_coframe, g3_group, g3_tensor
from nambulie.extcalc import format_multivector
from nambulie.matgrp import (filippov_from_coframe, group_core_case, invariance_check, linear_approximation,
                             symbolic_multiplicativity, vanishing_membership)

G = g3_group()
P = g3_tensor()
print("group law:", [str(f) for f in G.law])
print("axioms hold:", G.check_axioms() == [])
print("Lie algebra:", G.lie_algebra().structure_constants())

# %%
# The multiplicativity residual P(g1 g2) - L_{g1*} P(g2) - R_{g2*} P(g1) is
# computed symbolically in the coordinates of g1 and g2.
print("residual:", symbolic_multiplicativity(G, P) or 0)

# %%
# Brackets of the invariant 1-forms dx/x, dy/x, dz/x, rewritten in the same
# coframe, have constant coefficients.
table = invariance_check(G, g3_coframe(), P)
print("coefficients:", {k: [str(c) for c in v] for k, v in table.coefficients.items()})

# %%
# Monomials f = x^a: the coefficient is (a - 1) x^(a - 3), so only a = 1 and
# a = 3 are constant. Of these only the multiplicative combination vanishes
# at the unit.
for a in range(1, 6):
    t = invariance_check(G, g3_coframe(), g3_tensor(f"x^{a}"))
    m = not symbolic_multiplicativity(G, g3_tensor(f"x^{a}"))
    print(f"f = x^{a}: constant={t.passed} multiplicative={m}")

# %%
# Linearizing at the unit gives x1 d1 ^ d2 ^ d3 on R^3, and the same dual
# bracket comes out of the invariant coframe.
Pi = linear_approximation(G, P, names=("x1", "x2", "x3"))
print("linear part:", format_multivector(Pi.tensor))
print("dual bracket from coframe:", filippov_from_coframe(G, g3_coframe(), P).constants)
print("core (case, dim):", group_core_case(G, P))

# %%
# P vanishes exactly on the subgroup x = -1 (besides x = 1 at the unit).
print("vanishes on x = -1:", vanishing_membership(G, P, (-1, "y", "z")))
print("vanishes at (2, 0, 0):", vanishing_membership(G, P, (2, 0, 0)))
