"""
E_n as a C-algebra
==================

With A = R^n (all products zero), the anchor projecting onto gl(n) and the
pairing of E_n, the omni-Lie algebra satisfies axioms 0-5 of a C-algebra.
The gradient is D v = (0, v), and the 1/2 in its definition matters.
"""

from omnilie import calgebra
from omnilie import exactla as la

for n in (1, 2, 3):
    c = calgebra.build_omni_instance(n)
    print(f"n={n}: prerequisites ok={calgebra.validate_instance(c).ok}, axioms ok={calgebra.check_axioms(c).ok}")

c = calgebra.build_omni_instance(2)
print("D(e1) as a flat element of E_2:", la.vec_to_json(calgebra.gradient(c, la.unit(2, 0))))

# drop the 1/2: the gradient doubles and the axioms notice
rep = calgebra.check_axioms(c, gradient_fn=lambda inst, f: la.vscale(2, calgebra.gradient(inst, f)))
for name, ok in rep.checks.items():
    print(f"  {name:30s} {'ok' if ok else 'FAILS'}")
for f in rep.failures[:2]:
    print("  witness", f.to_json())
