"""Flows inside truncated groups and the exact germ/field dictionary.

Run:  python demos/04_flows_and_fields.py
"""

from fractions import Fraction as F

from germres import (
    Jet,
    field_to_germ,
    flow_in_G,
    germ_to_field,
    power,
    ramified_push,
    reduce_germ,
)

f = Jet.of(1, -1, 0)  # x - x^2 at order 3
print(f"f = {f}")

print("\nIn the order-3 group, f embeds in a one-parameter flow f^t:")
for t in (F(1, 2), F(1), F(2), F(-1)):
    print(f"  f^{str(t):>4} = {flow_in_G(f, t)}")
print("Integer times agree with honest composition powers:")
print(f"  f^3 by flow     = {flow_in_G(f, 3)}")
print(f"  f^3 by compose  = {power(f, 3)}")

print("\nThe generator of the flow is a vector-field jet:")
X = germ_to_field(f)
print(f"  germ_to_field(x - x^2)      = {X}")
print(f"  germ_to_field(x/(1+x) jet)  = {germ_to_field(Jet.of(1, -1, 1))}")
print("and the time-1 map of the field recovers the germ exactly:")
print(f"  field_to_germ(germ_to_field(f), 1) = {field_to_germ(X, 1)}")

print("\nThe iterative residue scales like 1/t along the flow (signed:")
print("reversing time swaps expanding and contracting and flips the sign):")
g = Jet.of(1, 1, F(1, 4))
_, rep = reduce_germ(g)
print(f"  resit(g)      = {rep.resit}")
for t in (F(2), F(1, 2), F(-1)):
    _, rep_t = reduce_germ(flow_in_G(g, t))
    print(f"  resit(g^{str(t):>4}) = {rep_t.resit}")

print("\nThe ramified cover x -> x^ell converts order-ell data to order 1:")
r = Jet.of(1, 0, F(1, 2), 0, F(3, 8))
pushed = ramified_push(r, 2)
print(f"  r       = {r}")
print(f"  pushed  = {pushed}")
_, rep_r = reduce_germ(r)
_, rep_p = reduce_germ(pushed)
print(f"  resit: {rep_r.resit} -> {rep_p.resit}  (divided by ell = 2)")
