"""Normal-form reduction: killing intermediate coefficients by polynomial
conjugations, and the conjugacy invariants Res and Resit.

Run:  python demos/03_normal_forms.py
"""

from fractions import Fraction as F

from germres import FieldJet, Jet, conjugate, reduce_field, reduce_germ

print("A parabolic jet x + a x^{ell+1} + ... reduces, by conjugations")
print("x + alpha x^j with j = 2..ell, to x + a x^{ell+1} + res*a^2 x^{2ell+1}.")
print("The leading coefficient is NOT rescaled (no ell-th roots in Q);")
print("res = a'_{2ell+1}/a^2 is scale-invariant and matches the classical")
print("normal-form coefficient whenever the rescaling is possible.\n")

f = Jet.of(1, 0, 1, 1, 1)  # x + x^3 + x^4 + x^5, tangency order 2
trace, report = reduce_germ(f)
print(f"f        = {f}")
print(f"conjugator = {trace.conjugator}   (steps: {[(d, str(a)) for d, a in trace.steps]})")
print(f"reduced  = {trace.reduced}")
print(f"res      = {report.res},  resit = {report.resit},  expanding = {report.expanding}")

print("\nThe invariants do not move under orientation-preserving conjugacy:")
h = Jet.of(F(5, 3), F(1, 2), -1, 0, 2)
_, report_c = reduce_germ(conjugate(h, f))
print(f"resit(h f h^-1) = {report_c.resit}  (h with Dh(0) = 5/3)")

print("\nThe two benchmark germs have different iterative residues, which is")
print("the obstruction to any twice-differentiable conjugacy between them:")
_, rq = reduce_germ(Jet.of(1, -1, 0))
_, rm = reduce_germ(Jet.of(1, -1, 1))
print(f"resit(x - x^2)  = {rq.resit}")
print(f"resit(x/(1+x))  = {rm.resit}")

print("\nVector-field jets reduce the same way via pullbacks:")
X = FieldJet.of(F(0), F(1), F(1), F(1))  # x^3 + x^4 + x^5
trace, mu = reduce_field(X)
print(f"X        = {X}")
print(f"reduced  = {trace.reduced}")
print(f"mu       = {mu}   (the residue coefficient of the field normal form)")
