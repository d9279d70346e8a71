"""
The classical picture on C^2
============================

With every form equal to the standard Kahler form and n = m = 2, the
(1,1)-forms split into the primitive ones and the line through omega.
Q is positive on the first piece and negative on the second.
"""

import numpy as np

from hrlab import classical_instance, kahler_form, monomial, primitive_subspace, q_form
from hrlab.hodge_riemann import full_gram_report, verify_hrr

inst = classical_instance(2, 1, 1)

# a single off-diagonal monomial is primitive, and Q gives it length one
phi = monomial(2, (1,), (2,))
print("Q(dz1 ^ dzbar2, same) =", q_form(inst, phi, phi).real)

# the Kahler form itself is not primitive and has negative Q-length
print("Q(omega, omega) =", q_form(inst, kahler_form(2), kahler_form(2)).real)

prim = primitive_subspace(inst)
print("primitive dimension:", prim.dimension, "of", inst.dimension)

# eigenvalues of Q on the primitive subspace, then on everything
print("on primitives:", np.round(verify_hrr(inst).eigenvalues, 12))
full = full_gram_report(inst)
print("full signature (pos, neg, zero):", full.signature)
