"""
Nambu brackets of functions
===========================

A Nambu tensor of order n is an n-vector field whose bracket of functions
satisfies the fundamental identity. Locally this is equivalent to the tensor
being a wedge of vector fields whose span is closed under Lie brackets.
This script builds a few tensors, certifies them, and shows what the
failures look like.
"""

# %%
# The Jacobian bracket
# --------------------
# On R^4 the tensor d/dx1 ^ d/dx2 ^ d/dx3 gives the Jacobian determinant of
# three functions with respect to the first three coordinates.
from nambulie.extcalc import Chart, format_multivector
from nambulie.nambu import (bracket_functions, check_fundamental_identity, fi_witness,
                            hamiltonian_field, jacobian_structure, linear_from_constant, verify_nambu)

ch = Chart.standard(4)
x1, x2, x3, x4 = ch.coords()
J = jacobian_structure(ch, 3)
print("{x1*x2, x2 + x3^2, x4*x1} =", bracket_functions(J, x1 * x2, x2 + x3 ** 2, x4 * x1))

# %%
# Hamiltonian fields of two functions are vector fields; for the coordinate
# functions x1, x2 we get d/dx3.
print("X_{x1,x2} =", format_multivector(hamiltonian_field(J, x1, x2)))

# %%
# Linear structures from constant tensors
# ---------------------------------------
# Contracting the volume 4-vector with the position vector gives an order-3
# linear structure whose leaves are the spheres centered at the origin.
S = linear_from_constant(ch.basis_multivector((0, 1, 2, 3)))
print("sphere structure:", format_multivector(S.tensor))
r2 = (x1 ** 2 + x2 ** 2 + x3 ** 2 + x4 ** 2) / 2
print("X_{x1,x2}(r^2/2) =", hamiltonian_field(S, x1, x2).apply(r2))

# %%
# Certification
# -------------
# verify_nambu checks decomposability and involutivity, then runs seeded
# fundamental-identity residuals as an independent cross-check.
for name, P in [("Jacobian", J.tensor), ("sphere", S.tensor), ("(1 + x4^2) * Jacobian", J.tensor * (1 + x4 ** 2))]:
    rep = verify_nambu(P, suite_size=5)
    print(f"{name:24s} {rep.verdict}  ({len(rep.fi_residuals)} FI tuples)")

# %%
# Two negative controls. The first is a sum of two 3-vectors sharing one
# factor: it is not a wedge product at all. The second is a wedge product
# whose factors d/dx2 and d/dx3 + x2 d/dx4 bracket to d/dx4, outside the span.
c5 = Chart.standard(5)
bad1 = c5.basis_multivector((0, 1, 2)) + c5.basis_multivector((0, 3, 4))
bad2 = ch.basis_multivector((0, 1, 2)) + ch.basis_multivector((0, 1, 3)) * x2
r1, r2_ = verify_nambu(bad1, suite_size=2), verify_nambu(bad2, suite_size=2)
print("sum of 3-vectors:", r1.verdict, r1.failures())
print("bent wedge:      ", r2_.verdict, r2_.failures())

# %%
# The first coordinate tuple (in lexicographic order) that breaks the
# fundamental identity for the bent wedge:
label, residual = fi_witness(bad2)
print("witness tuple (0-based):", label, "residual:", residual)
print("recomputed:", check_fundamental_identity(bad2, [x1, x2], [x1, x3, x4]))
