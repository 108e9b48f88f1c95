"""Flows in truncated composition groups and the germ/field correspondence.

In the group of order-(2*ell+1) jets, an exactly ell-tangent element

    f = x + sum_{n=ell+1}^{2ell+1} a_n x^n

embeds in a one-parameter flow given in closed form by

    f^t = x + sum_{n=ell+1}^{2ell} t a_n x^n
            + [ (ell+1)/2 * (t a_{ell+1})^2 - t * resad(f, ell) ] x^{2ell+1}.

The coefficient squared in the bracket is a_{ell+1} (the leading
higher-order coefficient): only that reading makes the time-1 element
reproduce f and the map t -> f^t a homomorphism.

The generator of the flow is the field jet

    germ_to_field(f) = sum_{n=ell+1}^{2ell} a_n x^n - resad(f, ell) x^{2ell+1},

and ``field_to_germ`` inverts the correspondence as the formal time-t map
of dx/dt = X(x), computed by Picard iteration over coefficients that are
exact polynomials in t (one sweep per retained order; the truncated
problem is nilpotent, so the iteration stabilizes).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .jets import RATIONAL, CarrierMismatch, FieldJet, Jet, OrderError, compose, invert
from .residues import TangencyError, resad
from .normal_form import tangency_order


class CoercionError(TypeError):
    """A parameter that must be exact was given in an inexact form."""


def _as_fraction(t):
    if isinstance(t, bool):
        raise CoercionError("booleans are not times")
    if isinstance(t, (int, Fraction, str)):
        return Fraction(t)
    raise CoercionError(f"time must be exact (int, Fraction or 'p/q'), got {t!r}")


def flow_in_G(f: Jet, t) -> Jet:
    """Time-t element of the flow through f in the order-(2*ell+1) group.

    f must be rational-carrier and exactly ell-tangent with order >= 2*ell+1;
    anything longer is truncated to 2*ell+1 first.
    """
    if f.carrier != RATIONAL:
        raise CarrierMismatch("flow_in_G needs the rational carrier")
    t = _as_fraction(t)
    tc = tangency_order(f)
    if not tc.exact:
        raise TangencyError("flow generator must be exactly tangent at some order")
    ell = tc.ell
    K = 2 * ell + 1
    if f.order < K:
        raise OrderError(f"order {f.order} < {K}")
    f = f.truncate(K)
    coeffs = [Fraction(0)] * K
    coeffs[0] = Fraction(1)
    for n in range(ell + 1, 2 * ell + 1):
        coeffs[n - 1] = t * f[n]
    coeffs[K - 1] = Fraction(ell + 1, 2) * (t * f[ell + 1]) ** 2 - t * resad(f, ell)
    return Jet(tuple(coeffs))


@dataclass(frozen=True)
class FlowElement:
    """A point f^t on the flow through ``base``; ``jet()`` materializes it."""

    base: Jet
    time: Fraction

    def jet(self) -> Jet:
        return flow_in_G(self.base, self.time)


def power(f: Jet, n: int) -> Jet:
    """n-fold composition power (inverse iterates for n < 0)."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("power exponent must be an integer")
    if n == 0:
        return Jet.identity(f.order, f.carrier)
    base = f if n > 0 else invert(f)
    out = base
    for _ in range(abs(n) - 1):
        out = compose(out, base)
    return out


def germ_to_field(f: Jet) -> FieldJet:
    """Generator of the flow through f: the field jet whose formal time-1
    map is f truncated at order 2*ell+1."""
    if f.carrier != RATIONAL:
        raise CarrierMismatch("germ_to_field needs the rational carrier")
    tc = tangency_order(f)
    if not tc.exact:
        raise TangencyError("germ must be exactly tangent at some order")
    ell = tc.ell
    K = 2 * ell + 1
    if f.order < K:
        raise OrderError(f"order {f.order} < {K}")
    coeffs = [Fraction(0)] * (K - 1)
    for n in range(ell + 1, 2 * ell + 1):
        coeffs[n - 2] = f[n]
    coeffs[K - 2] = -resad(f.truncate(K), ell)
    return FieldJet(tuple(coeffs))


# -- Picard iteration with coefficients in Q[t] ------------------------------
# An s-polynomial is a tuple of Fractions indexed by the power of the time
# variable; the flow jet is a dense list of s-polynomials indexed by x-degree.

_SP_ZERO = (Fraction(0),)


def _sp_trim(p):
    i = len(p)
    while i > 1 and p[i - 1] == 0:
        i -= 1
    return tuple(p[:i])


def _sp_add(p, q):
    n = max(len(p), len(q))
    return _sp_trim([ (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n) ])


def _sp_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi == 0:
            continue
        for j, qj in enumerate(q):
            if qj != 0:
                out[i + j] += pi * qj
    return _sp_trim(out)


def _sp_integrate(p):
    # definite integral from 0 to s, as a polynomial in s
    return _sp_trim([Fraction(0)] + [v / (i + 1) for i, v in enumerate(p)])


def _sp_eval(p, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for v in reversed(p):
        acc = acc * t + v
    return acc


def _sp_is_zero(p):
    return all(v == 0 for v in p)


def field_to_germ(X: FieldJet, t) -> Jet:
    """Formal time-t map of dx/dt = X(x), truncated at the order of X.

    X must have no linear part (guaranteed by the FieldJet shape) and is
    typically (ell+1)-flat of order 2*ell+1, in which case
    ``field_to_germ(germ_to_field(f), 1) == f.truncate(2*ell+1)``.
    """
    if X.carrier != RATIONAL:
        raise CarrierMismatch("field_to_germ needs the rational carrier")
    t = _as_fraction(t)
    K = X.order
    if X.is_zero():
        return Jet.identity(K)

    def identity_jet():
        phi = [_SP_ZERO] * (K + 1)  # indexed by x-degree, entry 0 unused
        phi[1] = (Fraction(1),)
        return phi

    def jet_mul(r, phi):
        out = [_SP_ZERO] * (K + 1)
        for i in range(K + 1):
            if _sp_is_zero(r[i]):
                continue
            for j in range(1, K + 1 - i):
                if not _sp_is_zero(phi[j]):
                    out[i + j] = _sp_add(out[i + j], _sp_mul(r[i], phi[j]))
        return out

    def substitute(phi):
        # X(phi(s, x)) by Horner over x-degrees K..2
        r = [_SP_ZERO] * (K + 1)
        r[0] = (Fraction(X[K]),)
        for n in range(K - 1, 1, -1):
            r = jet_mul(r, phi)
            r[0] = _sp_add(r[0], (Fraction(X[n]),))
        r = jet_mul(r, phi)
        r = jet_mul(r, phi)
        return r

    # Picard: phi <- x + integral_0^s X(phi(u, x)) du, one sweep per order
    phi = identity_jet()
    for _ in range(K):
        rhs = substitute(phi)
        nxt = identity_jet()
        for d in range(2, K + 1):
            nxt[d] = _sp_integrate(rhs[d])
        phi = nxt

    coeffs = tuple(_sp_eval(phi[d], t) for d in range(1, K + 1))
    return Jet(coeffs)


def ramified_push(f: Jet, ell: int) -> Jet:
    """Transport of a reduced jet x + a x^{ell+1} + b x^{2ell+1} along the
    ramified cover x -> x^ell; returns the order-3 jet

        x + ell*a x^2 + [ ell*b + ell*(ell-1)/2 * a^2 ] x^3,

    which converts order-ell tangency data into order-1 data
    (additive residues scale by ell, iterative residues by 1/ell).
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    K = 2 * ell + 1
    if f.order < K:
        raise OrderError(f"order {f.order} < {K}")
    f = f.truncate(K)
    if not f.is_parabolic():
        raise TangencyError(f"not parabolic: a_1 = {f[1]}")
    for n in range(2, K):
        if n != ell + 1 and f[n] != 0:
            raise TangencyError(f"jet not in reduced shape: a_{n} = {f[n]} != 0")
    a, b = f[ell + 1], f[2 * ell + 1]
    half_binom = (ell * (ell - 1)) // 2
    return Jet((f[1], ell * a, ell * b + half_binom * a**2), f.carrier)
