"""
Courant brackets and Dirac structures
=====================================

Sections of T + T* over R^n with polynomial coefficients.  Graphs of Poisson
bivectors, graphs of closed 2-forms and constant foliations B + B° are closed
under the Courant bracket; non-Poisson and non-closed inputs are not.
"""

from omnilie import courant as cr
from omnilie import exactla as la
from omnilie import liealg

x1, x2, x3 = (cr.Poly.var(3, i) for i in range(3))

so3 = cr.lie_poisson(liealg.catalog("so3").c)
bad = cr.skew_from_upper(3, {(0, 1): x3, (1, 2): x2})
print("Lie-Poisson so(3):", cr.dirac_check(cr.GraphOfBivector(so3)).passed, "| Jacobi residuals",
      cr.schouten_oracle(so3))
print("x3 d1^d2 + x2 d2^d3:", cr.dirac_check(cr.GraphOfBivector(bad)).passed, "| Jacobi residuals",
      cr.schouten_oracle(bad))

w_const = cr.skew_from_upper(3, {(0, 1): cr.Poly.const(3, 1)})
w_x3 = cr.skew_from_upper(3, {(0, 1): x3})
for label, w in (("dx1^dx2", w_const), ("x3 dx1^dx2", w_x3)):
    rep = cr.dirac_check(cr.GraphOf2Form(w))
    print(f"{label:12s} dirac={rep.passed} d(omega)=0: {rep.d_omega_zero}")

print("foliation span(e1, e2):", cr.dirac_check(cr.Foliation(la.span([la.unit(3, 0), la.unit(3, 1)], 3))).passed)

# the bracket itself, and the axioms on random polynomial sections
d1 = cr.coordinate_field(1, 0)
s = cr.courant_bracket(cr.CourantSection(d1, cr.zero_field(1)),
                       cr.CourantSection(cr.zero_field(1), (cr.Poly.var(1, 0),)))
print("[(d1, 0), (0, x1 dx1)] =", s)
print(cr.axioms_sample_check(2, degree_bound=2, trials=20, seed=0).to_json())
print("without the d-correction:",
      cr.axioms_sample_check(2, trials=20, seed=0, bracket=cr.bracket_without_correction).failure["axioms"])
