from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from germnf.errors import PreconditionError
from germnf.gaussq import GaussQ, ONE
from germnf.resonance import (ResonanceWitness, as_gaussq, in_E, rational_parts, scan_bound, sigma,
                              tau, witness_scan)

from conftest import gaussq

I = GaussQ(0, 1)


@given(gaussq, st.integers(1, 5))
def test_permanent_zero(lam, nu):
    assert not sigma(lam, nu, nu + 1, nu + 1)


@given(gaussq, st.integers(2, 10))
def test_tau_at_k0(lam, d):
    assert tau(lam, d, 0) == GaussQ(1 - d)


def test_sigma_example():
    assert sigma(I, 1, 2, 1) == I - 1


def test_witness_ranges():
    ResonanceWitness("sigma", 3, 3)
    ResonanceWitness("tau", 3, 0)
    with pytest.raises(PreconditionError):
        ResonanceWitness("sigma", 3, 0)
    with pytest.raises(PreconditionError):
        ResonanceWitness("tau", 1, 0)


@pytest.mark.parametrize("lam, nu, member, component, pq", [
    (Fraction(3, 2), 2, True, "(1/q)N", (3, 2)),
    (0, 1, True, "0", (0, 1)),
    (0, 4, True, "0", (0, 1)),
    (Fraction(2, 3), 1, False, None, (2, 3)),
    (Fraction(-5, 7), 3, True, "Q-", (-5, 7)),
    (Fraction(1, 5), 2, True, "1/d", (1, 5)),
    (Fraction(1, 2), 2, True, "(1/q)N", (1, 2)),
    (1, 2, True, "(1/q)N", (1, 1)),
    (4, 1, True, "(1/q)N", (4, 1)),
])
def test_closed_form(lam, nu, member, component, pq):
    m = in_E(GaussQ(lam), nu)
    assert m.member is member
    assert m.component == component
    assert (m.p, m.q) == pq


@given(gaussq.filter(lambda x: not x.is_real()), st.integers(1, 5))
def test_non_real_never_in_E(lam, nu):
    assert not in_E(lam, nu)
    assert rational_parts(lam) is None
    assert witness_scan(lam, nu, 8) == []


def test_scan_negative_half():
    w = witness_scan(GaussQ(Fraction(-1, 2)), 1, 10)
    taus = [x for x in w if x.kind == "tau"]
    assert ResonanceWitness("tau", 4, 2) in taus
    assert ResonanceWitness("tau", 7, 4) in taus
    assert ResonanceWitness("tau", 10, 6) in taus
    for x in taus:
        assert x.d - 1 - x.index == Fraction(x.index, 2)


def test_scan_lambda_one():
    w = witness_scan(ONE, 2, 5)
    sig = [x for x in w if x.kind == "sigma"]
    assert sig and all(x.d == 3 for x in sig)
    assert {x.index for x in sig} == {1, 2}


def test_scan_two_thirds_has_no_witness():
    assert witness_scan(GaussQ(Fraction(2, 3)), 1, 200) == []


@pytest.mark.parametrize("nu", [1, 2, 3])
def test_closed_form_agrees_with_scan_on_small_grid(nu):
    for q in range(1, 7):
        for p in range(-6, 7):
            if Fraction(p, q).denominator != q:
                continue
            lam = as_gaussq(p, q)
            assert bool(witness_scan(lam, nu, scan_bound(p, q, nu))) == in_E(lam, nu).member, (p, q)
