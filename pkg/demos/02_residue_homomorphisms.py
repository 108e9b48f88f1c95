"""The homomorphism layer: coefficient maps, additive residues, the two
integer mod-2 maps, and Schwarzian values at the origin.

Run:  python demos/02_residue_homomorphisms.py
"""

import random
from fractions import Fraction as F

from germres import Jet, compose, mod2_homs, phi, resad, resad_bar, schwarzian_at_origin

rng = random.Random(1)


def random_tangent(ell, order):
    coeffs = [F(0)] * order
    coeffs[0] = F(1)
    coeffs[ell] = F(rng.randint(1, 5))
    for n in range(ell + 2, order + 1):
        coeffs[n - 1] = F(rng.randint(-4, 4), rng.randint(1, 3))
    return Jet(tuple(coeffs))


print("On jets tangent to the identity to order ell, the single")
print("coefficients a_{ell+1}..a_{2ell} and the combination")
print("resad = (ell+1)/2 a_{ell+1}^2 - a_{2ell+1} all add under composition.")
for ell in (1, 2, 3):
    f, g = random_tangent(ell, 2 * ell + 1), random_tangent(ell, 2 * ell + 1)
    fg = compose(f, g)
    print(f"\nell = {ell}:")
    print(f"  phi(fg)        = {phi(fg, ell, 1)} = {phi(f, ell, 1)} + {phi(g, ell, 1)}")
    print(f"  resad(fg)      = {resad(fg, ell)} = {resad(f, ell)} + {resad(g, ell)}")

print("\nThe additive residue of x - x^2 is 1; of x/(1+x) it is 0:")
print(f"  resad(x - x^2)            = {resad(Jet.of(1, -1, 0), 1)}")
print(f"  resad(x - x^2 + x^3 - x^4) = {resad(Jet.of(1, -1, 1, -1), 1)}")

print("\nOver the integers the division-free variant stays additive:")
f = Jet.of(1, 3, -2, carrier="integer")
g = Jet.of(1, -1, 4, carrier="integer")
print(f"  resad_bar(f o g) = {resad_bar(compose(f, g), 1)}"
      f" = {resad_bar(f, 1)} + {resad_bar(g, 1)}")

print("\nBeyond the coefficient maps there are exactly two homomorphisms")
print("into Z/2 on integer parabolic jets (read off a_3, a_4, a_5, a_7):")
f = Jet.of(1, 0, 1, 0, 0, 0, 0, carrier="integer")   # x + x^3
g = Jet.of(1, 0, 0, 0, 0, 0, 1, carrier="integer")   # x + x^7
print(f"  mod2(x + x^3)      = {mod2_homs(f)}")
print(f"  mod2(x + x^7)      = {mod2_homs(g)}")
print(f"  mod2(f o g)        = {mod2_homs(compose(f, g))}  (the XOR)")

print("\nFor parabolic jets the Schwarzian value at the origin is six times")
print("the additive residue (sign convention: S = 6(a_2^2 - a_3)):")
f = Jet.of(1, F(3, 2), F(-5, 7))
print(f"  S(x + 3/2 x^2 - 5/7 x^3)(0) = {schwarzian_at_origin(f)} = 6 * {resad(f, 1)}")
