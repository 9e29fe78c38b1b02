"""
Linearizing the Courant bracket at the origin
=============================================

Send (A, v) to the linear vector field with matrix A^T and the constant form
v . dx.  The Courant bracket of two such sections is again of this kind and
reproduces the omni-Lie bracket; their pairing is the linear function whose
coefficients are the omni pairing.  The transpose is forced: linear vector
fields bracket as [xi_M, xi_N] = xi_[N, M].
"""

import itertools

from omnilie import courant as cr
from omnilie import exactla as la
from omnilie import omni

E = omni.elementary
a = omni.OmniElement(E(2, 0, 1), la.zeros(2))
b = omni.OmniElement(E(2, 1, 0), la.vec([1, 3]))

rep = cr.linearize_roundtrip(a, b)
print("Courant bracket of embeddings:", rep.courant_bracket)
print("embedding of omni bracket:    ", rep.embedded_omni_bracket)
print("pairing as a linear function: ", cr.courant_pairing(cr.embed(a), cr.embed(b)))
print("omni pairing:                 ", la.vec_to_json(omni.omni_pairing(a, b)))

for n in (1, 2, 3):
    pairs = list(itertools.product(omni.basis(n), repeat=2))
    print(f"n={n}: {sum(cr.linearize_roundtrip(x, y).ok for x, y in pairs)}/{len(pairs)} basis pairs agree")

# without the transpose the first component comes out with the wrong sign
naive = lambda e: cr.CourantSection(cr.linear_field(e.a), cr.constant_form(e.v))  # noqa: E731
print("untransposed embedding works:", cr.courant_bracket(naive(a), naive(b)) == naive(omni.omni_bracket(a, b)))
