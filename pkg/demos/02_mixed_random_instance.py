"""
A mixed instance with degenerate polarizations
==============================================

Here the polarizations are only semipositive, of rank at least m < n.  The
mixed form Omega = omega^(n-m) ^ alpha_1 ^ ... still behaves like a Kahler
class in bidegree (p, q).
"""

from hrlab import hl_holds, random_instance, verify_hrr, verify_ld
from hrlab.hodge_riemann import local_estimate_constants
from hrlab.positivity import rank, relative_spectrum

inst = random_instance(n=5, m=3, p=1, q=1, seed=2024)

for j, alpha in enumerate(inst.alphas, 1):
    spec = relative_spectrum(alpha, inst.omega)
    print(f"alpha_{j}: rank {rank(alpha)}, relative eigenvalues {spec.eigenvalues.round(3)}")

# Hodge-Riemann: Q is positive definite on the primitive subspace
hrr = verify_hrr(inst)
print("HRR:", hrr.verdict.holds, "lambda_min / ||Gram|| =", f"{hrr.verdict.margin:.3e}")

# Hard Lefschetz: wedging with Omega is invertible
print("HL:", hl_holds(inst).holds)

# Lefschetz decomposition, with its Q-orthogonality residual
ld = verify_ld(inst)
print("LD:", ld.verdict.holds, f"dims {ld.dim_primitive} + {ld.dim_lower} = {ld.dim_total}",
      f"residual {ld.orthogonality_residual:.1e}")

est = local_estimate_constants(inst)
print(f"coercivity constants c1 = {est.c1:.3e}, c2 = {est.c2:.3e}")
