"""
The jacobiator of E_n
=====================

The bracket on gl(n) x R^n is antisymmetric but not a Lie bracket.  Its
failure to satisfy Jacobi is measured by the jacobiator, which always comes
out as (0, T) with T the Cartan 3-form.
"""

import random

from omnilie import exactla as la
from omnilie import omni

E = omni.elementary

# a hand-picked triple in n = 2
e1 = omni.OmniElement(E(2, 0, 1), la.zeros(2))
e2 = omni.OmniElement(E(2, 1, 0), la.zeros(2))
e3 = omni.OmniElement(la.zero_matrix(2, 2), la.unit(2, 0))

print("[e1, e2]        =", omni.omni_bracket(e1, e2))
print("T(e1, e2, e3)   =", la.vec_to_json(omni.cartan_form(e1, e2, e3)))
print("J(e1, e2, e3)   =", omni.jacobiator(e1, e2, e3))

# random rational triples; equality is exact, there is no tolerance anywhere
rng = random.Random(0)
for n in (1, 2, 3, 4):
    hits = sum(omni.anomaly_holds(*(omni.random_element(rng, n) for _ in range(3))) for _ in range(200))
    print(f"n={n}: J = (0, T) on {hits}/200 random triples")

# the matrix part of J is the gl(n) jacobiator and so always vanishes
x, y, z = (omni.random_element(rng, 3) for _ in range(3))
print("matrix part of J is zero:", omni.jacobiator(x, y, z).a == la.zero_matrix(3, 3))
