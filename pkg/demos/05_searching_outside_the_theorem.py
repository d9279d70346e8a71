"""
Looking outside the hypotheses
==============================

Replace Omega by a perturbed (k,k)-form and positivity on primitives can
fail.  Products of Kahler forms never show up.  Every finding stores its
instance, so it can be checked again with ``hrlab check --no-validate``.
"""

from hrlab.harness import search

found = search("arbitrary-omega", budget=30, seed=0)
print(f"{len(found['findings'])} of {found['budget']} perturbed samples broke HL or HRR")
for entry in found["findings"][:5]:
    inst = entry["instance"]
    print(f"  trial {entry['trial']}: n={inst['n']} (p,q)=({inst['p']},{inst['q']}) {entry['kinds']}")

clean = search("arbitrary-omega", budget=30, seed=0, product_only=True)
print("findings among pure products:", len(clean["findings"]))

# can merely m-positive forms share an orthonormal basis inside all P(alpha_j)?
basis = search("basis-intersection", budget=10, seed=0)
print(f"basis-intersection: {len(basis['findings'])} of 10 tuples without a frame among the tried ones")
