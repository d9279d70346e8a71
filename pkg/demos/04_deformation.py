"""
Deforming the polarizations to omega
====================================

Moving every alpha along the segment to omega never makes Q degenerate on
the moving primitive subspace, so its signature cannot jump.
"""

from hrlab import random_instance
from hrlab.hodge_riemann import homotopy_sweep

inst = random_instance(n=4, m=2, p=1, q=1, seed=11)
report = homotopy_sweep(inst, steps=12)
print(report.table())
print("signature constant and non-degenerate:", report.verdict.holds)
