"""
Brackets of 1-forms
===================

A Nambu tensor also brackets 1-forms. There are two natural formulas for the
bracket, one with exterior derivatives and one with Lie derivatives, and the
library evaluates both on every call and insists that they agree.
"""

# %%
import random

from nambulie.extcalc import Chart, d_function, format_oneform
from nambulie.nambu import (check_derivation_property, check_fi_forms, check_form_properties, form_bracket,
                            jacobian_structure, random_oneform, random_polynomial, residual_exact_bracket)

ch = Chart.standard(4)
x1, x2, x3, x4 = ch.coords()
P = jacobian_structure(ch, 3).tensor * (1 + x4)

# %%
# A bracket of three polynomial 1-forms:
rng = random.Random(1)
alphas = [random_oneform(ch, rng) for _ in range(3)]
for a in alphas:
    print("  alpha =", format_oneform(a))
print("bracket =", format_oneform(form_bracket(P, *alphas)))

# %%
# On exact forms the bracket is the differential of the function bracket.
fs = [x1 * x2, x3 ** 2, x2 + x4]
print("exact residual is zero:", residual_exact_bracket(P, fs).is_zero())

# %%
# The full battery: skew-symmetry, exact forms, pulling a function out of the
# first slot, and the Hamiltonian (Lie derivative) identity.
rep = check_form_properties(P, cases=5)
print("identities hold:", rep.passed, rep.counts())

# %%
# Hamiltonian fields act as derivations of the form bracket, and the
# fundamental identity holds when the fixed arguments are closed forms.
g = [random_polynomial(ch, rng) for _ in range(2)]
print("derivation residual zero:", check_derivation_property(P, g, alphas).is_zero())
print("closed-form FI residual zero:", check_fi_forms(P, [d_function(f, ch) for f in g], alphas).is_zero())
