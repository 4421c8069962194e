import pytest
from hypothesis import assume, given

from germnf.errors import DegenerateInput, HypothesisViolation
from germnf.gaussq import GaussQ, ONE, ZERO
from germnf.germ import germ_decompose
from germnf.jets import JetMap

from conftest import jets

I = GaussQ(0, 1)


def test_reads_contact_and_pure_order():
    f = JetMap(5, {(1, 0): ONE, (3, 0): I}, {(0, 1): ONE, (2, 1): ONE})
    g = germ_decompose(f)
    assert (g.nu, g.mu) == (2, 1)
    assert g.fo == JetMap(3, {(1, 0): I}, {(0, 1): ONE})


def test_pure_order_two():
    f = JetMap(4, {(1, 0): ONE, (1, 2): ONE}, {(0, 1): ONE})
    g = germ_decompose(f)
    assert (g.nu, g.mu) == (1, 2)
    assert g.fo == JetMap(3, {(0, 2): ONE}, {})
    assert not g.fo.has_constant_term()


def test_identity_is_degenerate():
    with pytest.raises(DegenerateInput):
        germ_decompose(JetMap.identity(4))


def test_fixed_line_required():
    f = JetMap(3, {(1, 0): ONE, (0, 2): ONE}, {(0, 1): ONE})
    with pytest.raises(HypothesisViolation) as exc:
        germ_decompose(f)
    assert exc.value.hypothesis == "H1"


def test_singular_point_required():
    # f = (z1, z2 + z1^2): fo = (0, 1) does not vanish at the origin
    f = JetMap(3, {(1, 0): ONE}, {(0, 1): ONE, (2, 0): ONE})
    with pytest.raises(HypothesisViolation) as exc:
        germ_decompose(f)
    assert exc.value.hypothesis == "H2"
    assert germ_decompose(f, require_singular=False).fo.has_constant_term()


def test_not_tangent_is_rejected():
    with pytest.raises(HypothesisViolation):
        germ_decompose(JetMap.linear(3, 2, 0, 0, 1))


@given(jets(D=7, tangent=True, low=2))
def test_decomposition_invariants(f):
    diff = f.minus_identity()
    assume(diff.p1 or diff.p2)
    assume(all(e[0] >= 1 for p in diff.comps for e in p))
    try:
        g = germ_decompose(f)
    except HypothesisViolation as exc:
        assume(exc.hypothesis != "H2")
        raise
    assert g.reconstruct() == f
    # maximality of nu: z1 does not divide both components of fo
    assert any(e[0] == 0 for p in g.fo.comps for e in p)
    assert g.part(g.mu)
    assert all(not g.part(j) for j in range(g.mu))
    assert g.a(1, 1, g.mu) == g.fo.coeff(0, 1, g.mu - 1)
