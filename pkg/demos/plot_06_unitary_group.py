"""
A multiplicative tensor on U(2)
===============================

For Lambda = X4 ^ X2 ^ X1 in u(2), P(g) = L_{g*} Lambda - R_{g*} Lambda is
multiplicative. U(2) is handled through exact unitary matrices over Q(i)
obtained from the Cayley transform of seeded skew-Hermitian matrices.
"""

# %%
from nambulie.catalog import u2_coboundary_structure
from nambulie.liealg import core_of_linear, u2_matrices
from nambulie.matgrp import (CoboundaryTensor, LeftInvariantTensor, cayley_pairs, cayley_samples, cayley_unitary,
                             check_multiplicative_at, sampled_core_case)

X = u2_matrices()
print("X2 =", X[1])
print("Cayley transform of [[0, 1], [-1, 0]]:", cayley_unitary([[0, 1], [-1, 0]]).entries)

# %%
P = CoboundaryTensor([X[3], X[1], X[0]])
pairs = cayley_pairs(10)
print("zero residual at", sum(check_multiplicative_at(P, a, b).is_zero() for a, b in pairs), "of", len(pairs), "pairs")
print("decomposable at every sample:", all(P(g).is_decomposable() for g in cayley_samples(10)))

# %%
# A left-invariant tensor is not multiplicative:
Q = LeftInvariantTensor([X[3], X[1], X[0]])
a, b = pairs[0]
print("left-invariant residual zero:", check_multiplicative_at(Q, a, b).is_zero())

# %%
# The bivector factor W(g) has rank 2 away from its zeros, and the sampled
# core agrees with the core of the linear structure.
W = CoboundaryTensor([X[3], X[1]])
print("ranks of W:", sorted({W(g).rank() for g in cayley_samples(10)}))
lin = core_of_linear(u2_coboundary_structure())
print("sampled core:", sampled_core_case(P, cayley_samples(10), X, 3), "linear core:", (lin.case, lin.dim_H))
