"""
Nambu-Lie structures on u(2)
============================

A Nambu-Lie algebra is a Lie algebra with a linear Nambu structure that is a
1-cocycle and whose core subspace is an ideal. Given an ideal H, the search
reduces to a linear system whose solution space is computed exactly.
"""

# %%
# u(2) with X1 central and [X2, X3] = X4, [X3, X4] = X2, [X4, X2] = X3.
from nambulie.catalog import su2_basis, u2_coboundary_lambda, u2_full_basis
from nambulie.extcalc import format_multivector
from nambulie.liealg import (coboundary, cocycle_check, core_of_linear, dual_filippov, is_nambu_lie_algebra,
                             search_nambu_lie, u2)

L = u2()
print("structure constants:", {(i + 1, j + 1): [str(c) for c in v] for (i, j), v in L.structure_constants().items()})

# %%
# Type (a): the structure is phi(X) times the top multivector of H.
for label, H in (("H = u(2)", u2_full_basis()), ("H = su(2)", su2_basis())):
    res = search_nambu_lie(L, H, "a")
    print(label, "-> dimension", res.dimension)
    for Pi in res.candidates:
        print("   ", format_multivector(Pi.tensor))

# %%
# Type (b) with H = u(2) admits nothing.
print("type b, H = u(2):", search_nambu_lie(L, u2_full_basis(), "b").dimension)

# %%
# A coboundary is automatically a cocycle. Its core is 4-dimensional and is
# described both as a sum (case c) and by the intersection (case b).
Pi = coboundary(L, u2_coboundary_lambda())
print("coboundary of X4^X2^X1:", format_multivector(Pi.tensor))
print("cocycle:", cocycle_check(L, Pi).is_cocycle)
core = core_of_linear(Pi, L)
print("core case:", core.case, "(also", core.alternative + ")", "dim H =", core.dim_H)
print("Nambu-Lie algebra:", is_nambu_lie_algebra(L, Pi).passed)

# %%
# The dual bracket of the coboundary on u(2)* :
F = dual_filippov(Pi)
for I, v in sorted(F.constants.items()):
    print("  [" + ", ".join(f"e{i + 1}" for i in I) + "] =", [str(c) for c in v])
