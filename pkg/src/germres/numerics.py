"""Floating-point dynamics of parabolic germs on (0, x_max].

The operations here are the numeric counterparts of the exact jet algebra:

* ``szekeres_field`` -- the iterative limit (f^{n+1}(x) - f^n(x)) / Df^n(x)
  recovering the generating vector field of a contracting germ;
* ``tau`` / ``flow_map`` -- the time coordinate tau(x) = int_{x0}^x dy/X(y)
  and its inverse, giving f^t(x0) for a nonvanishing field;
* ``canonical_conjugacy`` -- h = tau_Y^{-1} o tau_X, the conjugacy between
  two one-dimensional flows, with derivative Dh = (Y o h) / X;
* ``estimate_resit`` -- the orbit-deviation estimator
  (a l^2 n^2 / log n) * (1/(a l n) - [f^n(x0)]^l) whose limit is the
  iterative residue of a contracting germ x - a x^{l+1} + ...;
* ``contour_residue`` -- the complex fixed-point residue
  (1/2 pi i) * contour integral of dz/(z - f(z));
* ``divergence_diagnostic`` -- the fit of (h(x) - x)/x^2 against log(1/x)
  that witnesses when two fields with different residues admit no
  twice-differentiable conjugacy.

tau is computed by splitting off the Laurent part of 1/X at the flat end:
the terms y^{-(l+1)}..y^{-1} are integrated in closed form and only a
bounded remainder goes to adaptive quadrature.  Fields that are exact
polynomials carry their coefficients as exact rationals, in which case the
remainder is assembled without any cancellation at all.

Evaluators are immutable and shared; no operation mutates state, so grid
sweeps may run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

TAU_ABS_TOL = 1e-10  # contract: |tau(flow_map(...)) - t| stays below this


class NumericsError(RuntimeError):
    """Base class for failures of the numeric engine."""


class DomainError(NumericsError):
    """Input point or germ outside the declared domain of validity."""


class ReachabilityError(NumericsError):
    """The requested flow time would push the point out of (0, x_max]."""


class ProductUnderflow(NumericsError):
    """The derivative product along the orbit left the floating range."""


class ContourError(NumericsError):
    """z - f(z) vanishes on or dangerously near the integration circle."""


# ---------------------------------------------------------------------------
# germ and field descriptions


@dataclass(frozen=True)
class GermSpec:
    """A closed-form real germ, evaluable with its derivative on (0, x_max].

    ``a`` is the positive magnitude of the leading higher-order
    coefficient: f(x) = x -+ a x^{ell+1} + ... with the sign fixed by
    ``orientation``.  ``increment`` must return f(x) - x without
    cancellation; ``orbit``, when present, is an exact closed form
    (x0, n) -> f^n(x0); ``jet_fn``, when present, returns the exact jet of
    the germ at a requested order.
    """

    name: str
    func: Callable[[float], float]
    deriv: Callable[[float], float]
    increment: Callable[[float], float]
    ell: int
    a: float
    orientation: str  # "contracting" | "expanding"
    x_max: float
    orbit: Optional[Callable[[float, int], float]] = None
    jet_fn: Optional[Callable[[int], object]] = None

    def is_contracting(self) -> bool:
        return self.orientation == "contracting"

    def check_point(self, x: float):
        if not 0.0 < x <= self.x_max:
            raise DomainError(f"{self.name}: point {x} outside (0, {self.x_max}]")


@dataclass(frozen=True)
class NumericField:
    """A vector field X(x) d/dx, nonvanishing on (0, x_max], flat of order
    ``ell`` at 0 with signed leading coefficient ``leading``.

    ``poly`` (exact rationals, ascending from degree ell+1) declares that
    ``func`` *is* that polynomial; ``tail`` gives approximate higher
    coefficients c_{ell+2}.. for black-box fields and is used only to tame
    the quadrature near 0.
    """

    name: str
    func: Callable[[float], float]
    ell: int
    leading: float
    x_max: float = 1.0
    poly: tuple = ()
    tail: tuple = ()

    def is_contracting(self) -> bool:
        return self.leading < 0

    def check_point(self, x: float):
        if not 0.0 < x <= self.x_max:
            raise DomainError(f"{self.name}: point {x} outside (0, {self.x_max}]")


def field_from_coeffs(name: str, coeffs: dict, x_max: float = 1.0) -> NumericField:
    """Polynomial field from exact {degree: coefficient} data."""
    exact = {int(d): Fraction(c) for d, c in coeffs.items() if c != 0}
    if not exact or min(exact) < 2:
        raise ValueError("need a nonzero polynomial with degrees >= 2")
    m, top = min(exact), max(exact)
    ell = m - 1
    poly = tuple(exact.get(d, Fraction(0)) for d in range(m, top + 1))
    fl = [float(c) for c in poly]

    def func(x, _fl=tuple(fl), _m=m):
        acc = 0.0
        for c in reversed(_fl):
            acc = acc * x + c
        return acc * x**_m

    return NumericField(name=name, func=func, ell=ell, leading=fl[0], x_max=x_max, poly=poly)


def field_from_jet(X, name: str = "", x_max: float = 1.0) -> NumericField:
    """Numeric field from an exact FieldJet (rational carrier)."""
    coeffs = {n: X[n] for n in range(2, X.order + 1) if X[n] != 0}
    if not coeffs:
        raise ValueError("zero field jet")
    return field_from_coeffs(name or f"jet-field[{X.order}]", coeffs, x_max=x_max)


# ---------------------------------------------------------------------------
# the time coordinate tau and flows


def _reciprocal_series(r: Sequence, upto: int):
    """Coefficients e_0..e_upto of 1/(1 + r_1 y + r_2 y^2 + ...)."""
    e = [r[0] * 0 + 1]  # one, in the arithmetic of the inputs
    for m in range(1, upto + 1):
        acc = 0
        for i in range(1, m + 1):
            ri = r[i] if i < len(r) else 0
            if ri != 0:
                acc += ri * e[m - i]
        e.append(-acc)
    return e


class _TauScheme:
    """Precomputed split 1/X = (Laurent part) + (bounded remainder)."""

    def __init__(self, field: NumericField):
        self.field = field
        # black-box evaluators (no exact polynomial) carry float noise that
        # the quadrature cannot resolve below ~1e-11
        self.epsabs = 1e-13 if field.poly else 1e-11
        self.epsrel = 1e-12 if field.poly else 1e-9
        ell, c = field.ell, field.leading
        if field.poly:
            s = [Fraction(ci) / field.poly[0] for ci in field.poly]  # S, s_0 = 1
            e = _reciprocal_series(s, ell)
            # U = 1 - E*S vanishes through degree ell exactly; T = U / y^{ell+1}
            u = [Fraction(0)] * (ell + len(s))
            for i, ei in enumerate(e):
                for j, sj in enumerate(s):
                    if i + j < len(u):
                        u[i + j] += ei * sj
            u[0] -= 1
            assert all(ui == 0 for ui in u[: ell + 1])
            t_coeffs = [float(-ui) for ui in u[ell + 1 :]]
            s_float = [float(si) for si in s]
            lead = float(field.poly[0])

            def remainder(y, _t=tuple(t_coeffs), _s=tuple(s_float), _c=lead):
                num = 0.0
                for tc in reversed(_t):
                    num = num * y + tc
                den = 0.0
                for sc in reversed(_s):
                    den = den * y + sc
                return num / (_c * den)

            self.remainder = remainder
            self.d = {ell + 1 - i: float(Fraction(ei) / field.poly[0]) for i, ei in enumerate(e)}
        else:
            r = [1.0] + [ci / c for ci in field.tail]
            e = _reciprocal_series(r, ell)
            d = {ell + 1 - i: e[i] / c for i in range(ell + 1)}
            self.d = d
            # Laurent part P(y) = sum_j d_j y^{-j}; the remainder 1/X - P is
            # bounded when the tail coefficients are complete through c_{2ell+1}
            # and merely integrable otherwise.
            powers = sorted(d, reverse=True)

            def remainder(y, _d=d, _p=tuple(powers), _f=field.func):
                u = 1.0 / y
                p = 0.0
                for j in _p:
                    p += _d[j] * u**j
                return 1.0 / _f(y) - p

            self.remainder = remainder

    def antiderivative(self, y: float) -> float:
        """Closed-form integral of the Laurent part."""
        acc = 0.0
        for j, dj in self.d.items():
            if j == 1:
                acc += dj * math.log(y)
            else:
                acc += dj * y ** (1 - j) / (1 - j)
        return acc


_TAU_CACHE: dict = {}


def _scheme(field: NumericField) -> _TauScheme:
    # memo only: scheme construction is pure and idempotent, so a race at
    # worst duplicates work; fields are immutable, keyed by identity
    key = id(field)
    sch = _TAU_CACHE.get(key)
    if sch is None or sch.field is not field:
        if len(_TAU_CACHE) > 256:
            _TAU_CACHE.clear()
        sch = _TauScheme(field)
        _TAU_CACHE[key] = sch
    return sch


def tau(field: NumericField, x0: float, x: float) -> float:
    """Time coordinate tau(x) = int_{x0}^x dy / X(y)."""
    field.check_point(x0)
    field.check_point(x)
    if x == x0:
        return 0.0
    sch = _scheme(field)
    main = sch.antiderivative(x) - sch.antiderivative(x0)
    corr, _err = quad(sch.remainder, x0, x, epsabs=sch.epsabs, epsrel=sch.epsrel, limit=200)
    return main + corr


def flow_map(field: NumericField, x0: float, t: float) -> float:
    """f^t(x0) for the flow of X: the solution of tau(result) = t.

    Raises :class:`ReachabilityError` when the time-t image would leave
    (0, x_max].
    """
    field.check_point(x0)
    if t == 0.0:
        return x0
    target = float(t)

    def g(z):
        return tau(field, x0, z) - target

    # tau is strictly monotone: decreasing for contracting fields (X < 0),
    # increasing for expanding ones.
    toward_zero = (field.is_contracting() and target > 0) or (
        not field.is_contracting() and target < 0
    )
    if toward_zero:
        hi = x0
        lo = x0 / 2
        for _ in range(900):
            if g(lo) * g(hi) <= 0:
                break
            lo /= 2
            if lo == 0.0:
                raise ReachabilityError("bracket for the time map collapsed to 0")
        else:
            raise ReachabilityError("could not bracket the time map toward 0")
        root = brentq(g, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)
    else:
        lo, hi = x0, field.x_max
        if g(hi) * g(lo) > 0:
            raise ReachabilityError(
                f"time {t} exceeds the reachable range within (0, {field.x_max}]"
            )
        root = brentq(g, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)

    residual = tau(field, x0, root) - target
    if abs(residual) > TAU_ABS_TOL:
        raise NumericsError(f"time-map residual {residual:.3e} exceeds {TAU_ABS_TOL}")
    return root


@dataclass(frozen=True)
class CanonicalConjugacy:
    """h = tau_Y^{-1} o tau_X with h(x0) = x0; conjugates the flow of X to
    the flow of Y.  Dh comes from the exact relation Dh = (Y o h)/X; the
    second derivative differences Dh with a relative step."""

    X: NumericField
    Y: NumericField
    x0: float

    def __call__(self, x: float) -> float:
        return flow_map(self.Y, self.x0, tau(self.X, self.x0, x))

    def deriv(self, x: float) -> float:
        return self.Y.func(self(x)) / self.X.func(x)

    def second_deriv(self, x: float, rel_step: float = 1e-4) -> float:
        dx = rel_step * x
        return (self.deriv(x + dx) - self.deriv(x - dx)) / (2 * dx)


def canonical_conjugacy(X: NumericField, Y: NumericField, x0: float) -> CanonicalConjugacy:
    if X.is_contracting() != Y.is_contracting():
        raise DomainError("fields must be both contracting or both expanding")
    X.check_point(x0)
    Y.check_point(x0)
    return CanonicalConjugacy(X=X, Y=Y, x0=x0)


# ---------------------------------------------------------------------------
# Szekeres iteration


@dataclass(frozen=True)
class SzekeresResult:
    value: float
    iterations: int
    converged: bool


def szekeres_field(germ: GermSpec, x: float, n_max: int = 100_000, tol: float = 1e-12) -> SzekeresResult:
    """Iterative limit (f^{n+1}(x) - f^n(x)) / Df^n(x) for contracting f.

    The derivative of the n-th iterate is accumulated as a running product
    of Df along the orbit.  Stops when successive values differ by less
    than ``tol``; otherwise returns the n_max value with converged=False.
    """
    if not germ.is_contracting():
        raise DomainError(f"{germ.name}: szekeres_field needs a contracting germ")
    germ.check_point(x)
    product = 1.0
    prev = None
    value = None
    for n in range(n_max):
        step = germ.increment(x)
        value = step / product
        if prev is not None and abs(value - prev) < tol:
            return SzekeresResult(value=value, iterations=n, converged=True)
        prev = value
        product *= germ.deriv(x)
        if not (1e-280 < abs(product) < 1e280):
            raise ProductUnderflow(
                f"derivative product left the floating range at n={n} (|P|={abs(product):.3e})"
            )
        x = x + step
    return SzekeresResult(value=value, iterations=n_max, converged=False)


# ---------------------------------------------------------------------------
# orbit asymptotics


@dataclass(frozen=True)
class ResitEstimate:
    """Finite-n values of the orbit-deviation estimator.

    ``extrapolated`` removes the leading 1/log(n) correction using the two
    largest samples; ``converged`` is the (coarse) heuristic that the last
    two samples differ by less than 0.05.
    """

    samples: tuple
    extrapolated: float
    converged: bool
    x0: float


def _orbit_values(germ: GermSpec, x0: float, ns: Sequence[int], use_longdouble: bool):
    if germ.orbit is not None:
        return {n: float(germ.orbit(x0, n)) for n in ns}
    wanted = set(ns)
    out = {}
    one = np.longdouble(1.0) if use_longdouble else 1.0
    x = one * x0
    comp = one * 0.0
    for k in range(1, max(ns) + 1):
        # compensated update x <- x + (f(x) - x)
        d = one * germ.increment(float(x)) - comp
        t = x + d
        comp = (t - x) - d
        x = t
        if k in wanted:
            out[k] = float(x)
    return out


def estimate_resit(
    germ: GermSpec,
    x0: float,
    schedule: Sequence[int],
    ell: Optional[int] = None,
    a: Optional[float] = None,
    use_longdouble: bool = False,
) -> ResitEstimate:
    """Orbit-deviation estimator of the iterative residue of a contracting
    germ f = x - a x^{ell+1} + ... :

        est(n) = (a ell^2 n^2 / log n) * ( 1/(a ell n) - [f^n(x0)]^ell ).

    The convergence is O(1/log n); the estimator is meant for qualitative
    bands, not tight tolerances.  ``use_longdouble`` switches the orbit
    accumulation to extended precision (useful above n ~ 10^6).
    """
    if not germ.is_contracting():
        raise DomainError(f"{germ.name}: estimator needs a contracting germ")
    germ.check_point(x0)
    ell = germ.ell if ell is None else ell
    a = germ.a if a is None else a
    if a <= 0:
        raise DomainError("leading magnitude a must be positive")
    ns = sorted(set(int(n) for n in schedule))
    if not ns or ns[0] <= 1:
        raise DomainError("schedule entries must be integers > 1 (log n degenerates)")
    orbit = _orbit_values(germ, x0, ns, use_longdouble)
    samples = []
    for n in ns:
        xn = orbit[n]
        est = (a * ell**2 * n**2 / math.log(n)) * (1.0 / (a * ell * n) - xn**ell)
        samples.append((n, est))
    if len(samples) >= 2:
        (n1, e1), (n2, e2) = samples[-2], samples[-1]
        h1, h2 = 1.0 / math.log(n1), 1.0 / math.log(n2)
        extrapolated = e2 - (e1 - e2) * h2 / (h1 - h2)
        converged = abs(e2 - e1) < 0.05
    else:
        extrapolated = samples[-1][1]
        converged = False
    return ResitEstimate(
        samples=tuple(samples), extrapolated=extrapolated, converged=converged, x0=x0
    )


@dataclass(frozen=True)
class OrbitBoundReport:
    """Checkpoints of a ell n [f^n]^ell along the orbit plus the fitted
    bracketing constants: D with f^n >= 1/(n + D)-type lower control and
    D' with f^n <= 1/(n + D' log n)-type upper control (both in the
    u_n = 1/(a ell [f^n]^ell) normalization)."""

    samples: tuple
    final_ratio: float
    D: float
    D_prime: float
    asymptotic_ok: bool
    tolerance: float


def orbit_bound_check(germ: GermSpec, x0: float, n_max: int) -> OrbitBoundReport:
    """Verify a ell n [f^n(x0)]^ell -> 1 and fit the bracketing constants."""
    if not germ.is_contracting():
        raise DomainError(f"{germ.name}: orbit bounds need a contracting germ")
    germ.check_point(x0)
    ell, a = germ.ell, germ.a
    checkpoints = []
    n = 1
    while n < n_max:
        checkpoints.append(n)
        n *= 10
    checkpoints.append(n_max)

    samples = []
    D = -math.inf
    D_prime = math.inf
    values = _orbit_values(germ, x0, checkpoints, use_longdouble=False)
    for n in checkpoints:
        xn = values[n]
        ratio = a * ell * n * xn**ell
        samples.append((n, ratio))
        u = 1.0 / (a * ell * xn**ell)
        D = max(D, u - n)
        if n >= 2:
            D_prime = min(D_prime, (u - n) / math.log(n))
    final = samples[-1][1]
    tol = 20.0 * math.log(n_max) / n_max + 1e-9
    return OrbitBoundReport(
        samples=tuple(samples),
        final_ratio=final,
        D=D,
        D_prime=D_prime,
        asymptotic_ok=abs(final - 1.0) <= tol,
        tolerance=tol,
    )


# ---------------------------------------------------------------------------
# complex contour residue


def contour_residue(f: Callable[[complex], complex], radius: float, points: int = 256) -> complex:
    """(1/2 pi i) * integral over |z| = radius of dz / (z - f(z)), by the
    trapezoidal rule on equispaced points (spectrally accurate here)."""
    if radius <= 0:
        raise DomainError("radius must be positive")
    if points < 8:
        raise DomainError("need at least 8 sample points")
    theta = 2.0 * np.pi * np.arange(points) / points
    z = radius * np.exp(1j * theta)
    w = np.array([zi - f(zi) for zi in z])
    small = np.abs(w) < 1e-12 * radius
    if small.any():
        raise ContourError("z - f(z) vanishes on or near the contour")
    return complex(np.mean(z / w))


# ---------------------------------------------------------------------------
# divergence diagnostic


@dataclass(frozen=True)
class SlopeReport:
    """Least-squares fit of (h(x) - x)/x^2 against log(1/x)."""

    slope: float
    intercept: float
    correlation: float
    points: tuple
    max_abs_ratio: float


def divergence_diagnostic(
    X: NumericField, Y: NumericField, grid: Sequence[float], x0: Optional[float] = None
) -> SlopeReport:
    """Fit the growth of (h(x) - x)/x^2 for the canonical conjugacy h
    between X and Y.  A slope of order one against log(1/x) witnesses
    differing residues (h is then not twice differentiable at 0); equal
    residues leave the ratio bounded."""
    xs = sorted(set(float(g) for g in grid), reverse=True)
    if len(xs) < 2:
        raise DomainError("need at least two grid points")
    base = max(xs) if x0 is None else x0
    h = canonical_conjugacy(X, Y, base)
    us, vs, pts = [], [], []
    for x in xs:
        hx = h(x)
        v = (hx - x) / x**2
        us.append(math.log(1.0 / x))
        vs.append(v)
        pts.append((x, v))
    slope, intercept = np.polyfit(us, vs, 1)
    vv = np.asarray(vs)
    if np.allclose(vv, vv[0], atol=1e-12):
        corr = 0.0
    else:
        corr = float(np.corrcoef(us, vs)[0, 1])
    return SlopeReport(
        slope=float(slope),
        intercept=float(intercept),
        correlation=corr,
        points=tuple(pts),
        max_abs_ratio=float(np.max(np.abs(vv))),
    )
