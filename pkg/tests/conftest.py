import os
import random

import pytest
import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from fractions import Fraction

from germnf.gaussq import GaussQ
from germnf.jets import JetMap

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

Z1, Z2 = sp.symbols("z1 z2")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussq = st.builds(GaussQ, rationals, rationals)
nonzero_gaussq = gaussq.filter(bool)


@st.composite
def jets(draw, D=None, tangent=False, z1_first=False, low=1):
    """Sparse random jets; ``low`` is the lowest degree carried by the non-identity part."""
    if D is None:
        D = draw(st.integers(2, 6))
    monos = [(a, d - a) for d in range(low, D + 1) for a in range(d + 1)]
    p1 = draw(st.dictionaries(st.sampled_from(monos), gaussq, max_size=6))
    p2 = draw(st.dictionaries(st.sampled_from(monos), gaussq, max_size=6))
    if z1_first:
        p1 = {e: c for e, c in p1.items() if e[0] >= 1}
    jet = JetMap(D, p1, p2)
    return jet.plus_identity() if tangent else jet


def sym(c: GaussQ):
    return sp.Rational(int(c.re.numerator), int(c.re.denominator)) + \
        sp.I * sp.Rational(int(c.im.numerator), int(c.im.denominator))


def poly_to_sympy(p):
    return sum((sym(c) * Z1**e[0] * Z2**e[1] for e, c in p.items()), sp.Integer(0))


def jet_to_sympy(jet: JetMap):
    return poly_to_sympy(jet.p1), poly_to_sympy(jet.p2)


def sympy_truncate(expr, D):
    """Coefficient table {(e1, e2): GaussQ} of ``expr`` through total degree ``D``."""
    poly = sp.Poly(sp.expand(expr), Z1, Z2)
    out = {}
    for (e1, e2), c in poly.terms():
        if e1 + e2 <= D and c != 0:
            re, im = sp.re(c), sp.im(c)
            out[(e1, e2)] = GaussQ(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
    return out


def sympy_jet(exprs, D):
    return JetMap(D, sympy_truncate(exprs[0], D), sympy_truncate(exprs[1], D))


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
