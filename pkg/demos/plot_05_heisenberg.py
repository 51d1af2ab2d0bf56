"""
Heisenberg groups and a product with R+
=======================================

On H(1,1) the tensor y d/dx1 ^ d/dz1 ^ d/dy is multiplicative. On H(1,p)
with p >= 2 the left translations mix the z-coordinates and the same tensor
is no longer multiplicative; the exact residual shows where.
"""

# %%
from nambulie.catalog import (heisenberg_coframe, heisenberg_group, heisenberg_tensor, heisenberg_x_rplus_coframe,
                              heisenberg_x_rplus_group, heisenberg_x_rplus_tensor)
from nambulie.extcalc import format_multivector
from nambulie.matgrp import invariance_check, linear_approximation, symbolic_multiplicativity


def show_residual(G, P):
    res = symbolic_multiplicativity(G, P)
    if not res:
        return "0"
    names = G.chart.names
    return " + ".join(f"({c}) " + "^".join(f"d/d{names[i]}" for i in I) for I, c in sorted(res.items()))


for p in (1, 2, 3):
    G, P = heisenberg_group(p), heisenberg_tensor(p)
    table = invariance_check(G, heisenberg_coframe(p), P)
    print(f"H(1,{p}): residual = {show_residual(G, P)}")
    print(f"        invariant brackets constant: {table.passed}")

# %%
# The linear part at the unit is the tensor itself.
Pi = linear_approximation(heisenberg_group(1), heisenberg_tensor(1))
print("linear part on R^3:", format_multivector(Pi.tensor))

# %%
# H(1,1) x R+ in the chart s = ln t: the tensor t ln t d/dy ^ d/dz ^ d/dt
# becomes s d/dy ^ d/dz ^ d/ds.
G, P = heisenberg_x_rplus_group(), heisenberg_x_rplus_tensor()
print("H(1,1) x R+ residual:", show_residual(G, P))
print("invariant brackets constant:", invariance_check(G, heisenberg_x_rplus_coframe(), P).passed)
print("linear part:", format_multivector(linear_approximation(G, P, names=("x1", "x2", "x3", "x4")).tensor))
