"""Shared generators and independent oracles for the test suite.

The oracles go through sympy's symbolic series arithmetic, not through the
package, so they stay independent of the code paths they check.
"""

import random
from fractions import Fraction

import sympy as sp

from germres import Jet

X = sp.symbols("x")


def rng(seed=0):
    return random.Random(seed)


def rand_fraction(r, lo=-9, hi=9, max_den=4, nonzero=False):
    while True:
        v = Fraction(r.randint(lo, hi), r.randint(1, max_den))
        if v != 0 or not nonzero:
            return v


def rand_jet(r, order, max_den=4):
    coeffs = [rand_fraction(r, nonzero=True)] + [
        rand_fraction(r, max_den=max_den) for _ in range(order - 1)
    ]
    return Jet(tuple(coeffs))


def rand_parabolic(r, order, max_den=4):
    coeffs = [Fraction(1)] + [rand_fraction(r, max_den=max_den) for _ in range(order - 1)]
    return Jet(tuple(coeffs))


def rand_tangent(r, ell, order, max_den=4):
    """Exactly ell-tangent parabolic jet of the given order."""
    coeffs = [Fraction(0)] * order
    coeffs[0] = Fraction(1)
    coeffs[ell] = rand_fraction(r, max_den=max_den, nonzero=True)
    for n in range(ell + 2, order + 1):
        coeffs[n - 1] = rand_fraction(r, max_den=max_den)
    return Jet(tuple(coeffs))


def rand_positive_jet(r, order, max_den=4):
    """Invertible jet with positive linear coefficient (Dh(0) > 0)."""
    while True:
        a1 = rand_fraction(r, lo=1, hi=9, max_den=max_den)
        if a1 > 0:
            break
    coeffs = [a1] + [rand_fraction(r, max_den=max_den) for _ in range(order - 1)]
    return Jet(tuple(coeffs))


def rand_int_parabolic(r, order, lo=-6, hi=6):
    coeffs = [1] + [r.randint(lo, hi) for _ in range(order - 1)]
    return Jet(tuple(coeffs), carrier="integer")


# -- sympy oracles -----------------------------------------------------------


def to_sympy(jet):
    return sum(sp.Rational(c.numerator, c.denominator) * X**n for n, c in enumerate(jet.coeffs, 1))


def _to_fraction(value) -> Fraction:
    num, den = sp.fraction(sp.together(sp.simplify(value)))
    return Fraction(int(num), int(den))


def from_sympy(expr, order):
    poly = sp.expand(expr)
    return Jet(tuple(_to_fraction(poly.coeff(X, n)) for n in range(1, order + 1)))


def sympy_truncate(expr, order):
    return sp.expand(sp.series(expr, X, 0, order + 1).removeO())


def sympy_compose(f_jet, g_jet):
    order = min(f_jet.order, g_jet.order)
    expr = sympy_truncate(to_sympy(f_jet).subs(X, to_sympy(g_jet)), order)
    return from_sympy(expr, order)


def sympy_invert(f_jet):
    order = f_jet.order
    f = to_sympy(f_jet)
    b = sp.symbols(f"b1:{order + 1}")
    h = sum(b[i] * X ** (i + 1) for i in range(order))
    eq = sp.expand(sympy_truncate(f.subs(X, h), order)) - X
    sol = {}
    for n in range(1, order + 1):
        cn = sp.expand(eq.coeff(X, n).subs(sol))
        sol[b[n - 1]] = sp.solve(cn, b[n - 1])[0]
    return from_sympy(h.subs(sol), order)


def sympy_conjugate(h_jet, f_jet):
    hinv = sympy_invert(h_jet)
    return sympy_compose(h_jet, sympy_compose(f_jet, hinv))


def sympy_resit(coeffs):
    """Scale-invariant iterative residue straight from symbolic kill steps.

    ``coeffs`` are the exact coefficients a_1..a_{2l+1} with a_1 = 1.
    """
    order = len(coeffs)
    jet = Jet(tuple(coeffs))
    ell = next(n - 1 for n in range(2, order + 1) if jet[n] != 0)
    assert order == 2 * ell + 1
    f = to_sympy(jet)
    for j in range(2, ell + 1):
        alpha = sp.symbols("alpha")
        hs = X + alpha * X**j
        # series reversion of h by fixed-point iteration w <- x - alpha w^j
        ws = X
        for _ in range(order):
            ws = sympy_truncate(X - alpha * ws**j, order)
        g = sympy_truncate(hs.subs(X, sympy_truncate(f.subs(X, ws), order)), order)
        aval = sp.solve(sp.expand(g.coeff(X, ell + j)), alpha)[0]
        f = sp.expand(g.subs(alpha, aval))
    lead = f.coeff(X, ell + 1)
    mu = f.coeff(X, 2 * ell + 1) / lead**2
    return _to_fraction(sp.Rational(ell + 1, 2) - mu)
