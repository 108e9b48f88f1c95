"""Catalog sanity: domain invariants, derivatives, exact jets, field tags."""

import math

import numpy as np
import pytest

from germres import Jet, catalog_field, catalog_germ
from germres.catalog import log_cubic, loglog, moebius, quadratic, ramified_flow


ALL_GERMS = [quadratic(), moebius(), ramified_flow(1, 1), ramified_flow(2, 1),
             ramified_flow(3, "1/2"), log_cubic(), loglog()]


@pytest.mark.parametrize("germ", ALL_GERMS, ids=lambda g: g.name)
def test_germ_domain_invariants(germ):
    # below ~1e-4 a flat increment can drop under one ulp of x, so the
    # strict inequality is asserted through the stable increment evaluator
    grid = np.geomspace(1e-6, germ.x_max * 0.999, 40)
    for x in grid:
        fx = germ.func(x)
        inc = germ.increment(x)
        if germ.is_contracting():
            assert inc < 0.0
            assert 0.0 < fx <= x
        else:
            assert inc > 0.0
            assert fx >= x
        assert germ.deriv(x) > 0.0
        assert abs(inc - (fx - x)) <= 1e-12 * max(x, abs(inc))


@pytest.mark.parametrize("germ", ALL_GERMS, ids=lambda g: g.name)
def test_germ_derivative_matches_differences(germ):
    for x in (0.05, 0.11, 0.19):
        dx = 1e-7
        fd = (germ.func(x + dx) - germ.func(x - dx)) / (2 * dx)
        assert abs(germ.deriv(x) - fd) < 1e-6


def test_exact_jets_match_evaluators():
    # the declared jets agree with the evaluator to the truncation order
    # (the floor term covers evaluator roundoff at ~one ulp of x)
    for germ in (quadratic(), moebius(), ramified_flow(2, 1)):
        jet = germ.jet_fn(7)
        x = 1e-3
        poly = sum(float(jet[n]) * x**n for n in range(1, 8))
        assert abs(poly - germ.func(x)) < 10 * x**8 + 1e-18


def test_ramified_jet_series():
    jet = ramified_flow(2, 1).jet_fn(5)
    # x (1+x^2)^(-1/2) = x - x^3/2 + 3x^5/8
    assert jet == Jet.of(1, 0, "-1/2", 0, "3/8")


def test_closed_form_orbits_iterate():
    for germ in (moebius(), ramified_flow(2, 1)):
        x = 0.3
        y = x
        for _ in range(7):
            y = germ.func(y)
        assert abs(y - germ.orbit(x, 7)) < 1e-14


def test_catalog_germ_lookup():
    assert catalog_germ("quadratic").name == "quadratic"
    assert catalog_germ("ramified_flow_2_1").ell == 2
    assert catalog_germ("ramified_flow_1_1/2").a == 0.5
    with pytest.raises(KeyError):
        catalog_germ("uncatalogued")


def test_catalog_field_tags():
    for tag in ("neg_x2", "neg_2x2", "neg_x2_x3", "neg_x3", "x2"):
        X = catalog_field(tag)
        assert X.func(0.1) != 0.0
    assert catalog_field("neg_x3").ell == 2
    with pytest.raises(KeyError):
        catalog_field("nope")


def test_pullback_fields_evaluate():
    # Y = h* (x^2) = h(x)^2 / Dh(x) for the two singular conjugators
    for tag, germ in (("pullback_log_cubic", log_cubic()), ("pullback_loglog", loglog())):
        Y = catalog_field(tag)
        for x in (0.02, 0.05, 0.1):
            expected = germ.func(x) ** 2 / germ.deriv(x)
            assert abs(Y.func(x) - expected) < 1e-15
        # both stay tangent to x^2 at the leading order
        assert abs(Y.func(1e-4) / 1e-8 - 1.0) < 0.05


def test_pullback_log_cubic_deviation_scale():
    # Y - x^2 behaves like -x^4 log x for the cubic-log conjugator
    Y = catalog_field("pullback_log_cubic")
    for x in (1e-2, 1e-3):
        dev = Y.func(x) - x * x
        model = -(x**4) * math.log(x)
        assert 0.5 < dev / model < 1.5


def test_loglog_domain_guard():
    germ = loglog()
    with pytest.raises(Exception):
        germ.check_point(0.5)  # beyond x_max


def test_ramified_rejects_expanding_times():
    with pytest.raises(ValueError):
        ramified_flow(2, -1)
