"""Orbit asymptotics and the complex contour residue.

Run:  python demos/06_orbit_estimator_and_contour.py
"""

from germres import (
    catalog_germ,
    contour_residue,
    estimate_resit,
    orbit_bound_check,
    reduce_germ,
)

print("For a contracting germ f = x - a x^{ell+1} + ..., orbits decay like")
print("[f^n(x0)]^ell ~ 1/(a ell n), and the log-scale deviation from that")
print("law recovers the iterative residue:")
print("  est(n) = (a ell^2 n^2/log n) (1/(a ell n) - [f^n(x0)]^ell)\n")

schedule = [10**3, 10**4, 10**5, 10**6]
for tag, target in (("moebius", 0.0), ("quadratic", 1.0), ("ramified_flow_2_1", 0.0)):
    germ = catalog_germ(tag)
    est = estimate_resit(germ, 0.5, schedule)
    row = "  ".join(f"{v:8.4f}" for _n, v in est.samples)
    print(f"{tag:18s} -> {row}   (limit {target}, extrapolated {est.extrapolated:+.4f})")

print("\nThe 1/(a ell n) law itself, with the fitted bracketing constants:")
for tag in ("moebius", "quadratic"):
    report = orbit_bound_check(catalog_germ(tag), 0.5, 10**5)
    print(f"{tag:18s} a*ell*n*[f^n]^ell -> {report.final_ratio:.6f}"
          f"   D = {report.D:.3f}, D' = {report.D_prime:.3f}")

print("\nThe complex contour residue (1/2 pi i) * integral dz/(z - f(z))")
print("computes the same invariant analytically for polynomial germs:")
value = contour_residue(lambda z: z + z * z + 0.7 * z**3, 0.3, 256)
print(f"  f(z) = z + z^2 + 0.7 z^3  ->  R = {value.real:+.12f}{value.imag:+.1e}j")

jet = catalog_germ("moebius").jet_fn(7)
floats = [float(jet[n]) for n in range(1, 8)]


def poly(z):
    acc = 0j
    for c in reversed(floats):
        acc = acc * z + c
    return acc * z


_, report = reduce_germ(jet)
value = contour_residue(poly, 0.2, 512)
print(f"  order-7 jet of x/(1+x)    ->  R = {value.real:+.12f}"
      f"   (reduction gives res = {report.res})")
