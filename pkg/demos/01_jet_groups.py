"""Walk through the exact jet algebra: composition groups, inverses,
integer vs rational carriers, serialization.

Run:  python demos/01_jet_groups.py
"""

from fractions import Fraction as F

from germres import Jet, compose, conjugate, invert, jet_from_json, jet_to_json

print("A jet stores the coefficients a_1..a_k of x -> sum a_n x^n.")
f = Jet.of(1, -1, 0, 0)          # x - x^2, known to order 4
g = Jet.of(1, -1, 1, -1)         # x/(1+x) truncated at order 4
print(f"f       = {f}")
print(f"g       = {g}")

print("\nComposition is substitution with truncation at the common order:")
print(f"f o f   = {compose(f, f)}")
print(f"f o g   = {compose(f, g)}")
print(f"g o f   = {compose(g, f)}   (not abelian)")

print("\nEvery jet with invertible linear part has a compositional inverse:")
print(f"g^-1    = {invert(g)}       (g is the truncation of x/(1+x), its")
print("                                inverse truncates x/(1-x))")
print(f"check   = {compose(g, invert(g))}")

print("\nConjugation by a homothety rescales the higher coefficients:")
h = Jet.of(2, 0, 0, 0)
print(f"h f h^-1 = {conjugate(h, f)}")

print("\nInteger-carrier jets form a group as long as a_1 = +-1; any")
print("operation that would need a genuine division refuses loudly:")
z = Jet.of(1, 5, -7, carrier="integer")
print(f"z       = {z}")
print(f"z^-1    = {invert(z)}    (still integer coefficients)")
try:
    Jet.of(2, 1, carrier="integer")
except Exception as exc:
    print(f"Jet.of(2, 1) over Z -> {type(exc).__name__}: {exc}")

print("\nJets serialize to JSON with canonical p/q coefficient strings:")
q = Jet.of(1, F(-1, 2), F(3, 4))
text = jet_to_json(q)
print(f"json    = {text}")
print(f"parsed  = {jet_from_json(text)}")
