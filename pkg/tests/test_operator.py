import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from germnf.errors import CaseTableError, PreconditionError
from germnf.gaussq import GaussQ, ONE, ZERO
from germnf.jets import HomPair, JetMap
from germnf.linear import LinearClass, LinearLabel, matrix_to_hompair
from germnf.operator import greedy_complement, op_apply_definition, op_matrix, solve_stage

from conftest import Z1, Z2, gaussq, poly_to_sympy, sympy_jet

I = GaussQ(0, 1)
L = LinearLabel


def template(label, lam=None):
    return matrix_to_hompair(LinearClass(label, lam).template())


H4_TEMPLATES = {
    "star1_lambda": template(L.STAR1_LAMBDA, GaussQ(2, 3)),
    "J_1": template(L.J_1),
    "star1_1": template(L.STAR1_1),
    "star2": template(L.STAR_2),
    "J_0": template(L.J_0),
}


@st.composite
def hompairs(draw, d, in_V=False):
    lo = 1 if in_V else 0
    return HomPair(d, draw(st.dictionaries(st.integers(lo, 2 * d + 1), gaussq, max_size=2 * d + 2)))


def symbolic_operator(P, nu, H):
    """Independent evaluation of Jac(P) H - Jac(H) P + nu (H1/z1) P with sympy."""
    p = [poly_to_sympy(x) for x in P.to_polys()]
    h = [poly_to_sympy(x) for x in H.to_polys()]
    h1c = sp.cancel(h[0] / Z1)
    out = []
    for pi, hi in zip(p, h):
        jp = sp.diff(pi, Z1) * h[0] + sp.diff(pi, Z2) * h[1]
        jh = sp.diff(hi, Z1) * p[0] + sp.diff(hi, Z2) * p[1]
        out.append(sp.expand(jp - jh + nu * h1c * pi))
    e = H.degree + P.degree - 1
    jet = sympy_jet(out, max(e, 1))
    return jet.homogeneous_part(e)


# -- the definition ------------------------------------------------------------

def test_definition_hand_examples():
    P = template(L.STAR1_LAMBDA, I)
    assert op_apply_definition(P, 1, HomPair.basis(2, 1)) == HomPair(2, {1: I - 1, 3: ONE})
    assert op_apply_definition(P, 1, HomPair.basis(2, 3)) == HomPair(2, {3: -ONE})
    assert op_apply_definition(P, 1, HomPair(2)) == HomPair(2)


def test_definition_requires_V():
    with pytest.raises(PreconditionError):
        op_apply_definition(template(L.J_0), 1, HomPair.basis(3, 0))


@settings(max_examples=30)
@given(st.integers(1, 3).flatmap(lambda mu: st.tuples(hompairs(mu), st.integers(1, 3),
                                                         st.integers(2, 5).flatmap(lambda d: hompairs(d, True)))))
def test_definition_matches_symbolic(args):
    P, nu, H = args
    assert op_apply_definition(P, nu, H) == symbolic_operator(P, nu, H)


@given(st.integers(1, 3).flatmap(lambda mu: st.tuples(hompairs(mu), st.integers(1, 3),
                                                         hompairs(4, True), hompairs(4, True))),
       gaussq, gaussq)
def test_definition_is_linear(args, a, b):
    P, nu, H, K = args
    lhs = op_apply_definition(P, nu, H.scale(a) + K.scale(b))
    rhs = op_apply_definition(P, nu, H).scale(a) + op_apply_definition(P, nu, K).scale(b)
    assert lhs == rhs


# -- the matrix ----------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(H4_TEMPLATES))
@pytest.mark.parametrize("nu", [1, 2, 3])
def test_matrix_columns_match_definition_on_templates(name, nu):
    P = H4_TEMPLATES[name]
    for d in range(2, 9):
        M = op_matrix(P, nu, d)
        for c in range(1, 2 * d + 2):
            assert M.column(c) == op_apply_definition(P, nu, HomPair.basis(d, c))


@given(st.integers(1, 3).flatmap(hompairs), st.integers(1, 3), st.integers(2, 6))
def test_matrix_columns_match_definition_for_random_P(P, nu, d):
    M = op_matrix(P, nu, d, validate=True)
    assert M.shape == (2 * (d + P.degree - 1) + 2, 2 * d + 1)
    for c in range(1, 2 * d + 2):
        assert M.column(c) == op_apply_definition(P, nu, HomPair.basis(d, c))


@given(st.integers(1, 3).flatmap(hompairs), st.integers(1, 3), st.integers(2, 6))
def test_v0_row_vanishes_under_H4(P, nu, d):
    mu = P.degree
    P = HomPair(mu, {h: c for h, c in P.coeffs.items() if h != 0})  # a^mu_{1,0} = 0
    M = op_matrix(P, nu, d)
    assert all(not x for x in M.rows[0])


def test_star1_columns():
    lam = GaussQ(2, 3)
    for nu in (1, 2, 3):
        for d in range(2, 9):
            M = op_matrix(H4_TEMPLATES["star1_lambda"], nu, d)
            for h in range(1, d + 1):
                col = {r: M.entry(r, h) for r in range(2 * d + 2) if M.entry(r, h)}
                sigma = lam * (nu + 1 - h) - (d - h)
                assert col == {r: v for r, v in ((h, sigma), (h + d, GaussQ(nu))) if v}
            for k in range(d + 1):
                c = k + d + 1
                col = {r: M.entry(r, c) for r in range(2 * d + 2) if M.entry(r, c)}
                tau = GaussQ(k + 1 - d) - lam * k
                assert col == ({c: tau} if tau else {})


def test_star2_and_J0_columns():
    for nu in (1, 2, 3):
        for d in range(2, 9):
            M = op_matrix(H4_TEMPLATES["star2"], nu, d)
            for h in range(1, d + 1):
                expected = {h: GaussQ(nu + 1 - h)} if nu + 1 != h else {}
                assert {r: M.entry(r, h) for r in range(2 * d + 2) if M.entry(r, h)} == expected
            for k in range(d + 1):
                c = k + d + 1
                expected = {c: GaussQ(-k)} if k else {}
                assert {r: M.entry(r, c) for r in range(2 * d + 2) if M.entry(r, c)} == expected
            M = op_matrix(H4_TEMPLATES["J_0"], nu, d)
            for h in range(1, d + 1):
                expected = {r: v for r, v in ((h + 1, GaussQ(-(d - h))), (h + d + 1, GaussQ(nu + 1))) if v}
                assert {r: M.entry(r, h) for r in range(2 * d + 2) if M.entry(r, h)} == expected


@pytest.mark.parametrize("name, shape", [
    ("star1_lambda", "lower"), ("J_1", "lower"), ("star1_1", "lower"),
    ("star2", "diagonal"), ("J_0", "strict"),
])
def test_structural_shape(name, shape):
    for nu in (1, 2, 3):
        for d in range(2, 9):
            for r, c in op_matrix(H4_TEMPLATES[name], nu, d).nonzero_entries():
                assert {"lower": r >= c, "diagonal": r == c, "strict": r > c}[shape], (nu, d, r, c)


def test_matrix_requires_d_at_least_two():
    with pytest.raises(PreconditionError):
        op_matrix(H4_TEMPLATES["J_0"], 1, 1)


# -- solving a stage -----------------------------------------------------------

def test_solve_hand_example():
    M = op_matrix(template(L.STAR1_LAMBDA, I), 1, 2)
    target = HomPair.basis(2, 1)
    H, residual = solve_stage(target, M, [0, 2])
    half = -(ONE + I) / 2
    assert H == HomPair(2, {1: half, 3: half})
    assert not residual
    assert op_apply_definition(template(L.STAR1_LAMBDA, I), 1, H) == target


@pytest.mark.parametrize("nu", [1, 2, 3])
def test_permanent_resonance_is_never_removed(nu):
    d = nu + 1
    P = template(L.STAR1_LAMBDA, I)
    M = op_matrix(P, nu, d)
    target = HomPair.basis(d, d)
    H, residual = solve_stage(target, M, [0, d])
    assert residual == target
    assert not H[d]


def test_image_targets_have_no_residual():
    P = template(L.STAR1_LAMBDA, I)
    M = op_matrix(P, 2, 4)
    X = HomPair(4, {1: GaussQ(2), 6: I, 9: ONE})
    H, residual = solve_stage(M.apply(X), M, [0])
    assert not residual
    assert M.apply(H) == M.apply(X)


def test_bad_complement_is_rejected():
    M = op_matrix(template(L.STAR1_LAMBDA, I), 1, 2)
    with pytest.raises(CaseTableError):
        solve_stage(HomPair.basis(2, 1), M, [0])          # misses the kernel direction
    with pytest.raises(CaseTableError):
        solve_stage(HomPair.basis(2, 1), M, [0, 1, 2])    # too many
    with pytest.raises(CaseTableError):
        solve_stage(HomPair.basis(2, 1), M, [0, 0])


def test_target_degree_checked():
    M = op_matrix(template(L.STAR1_LAMBDA, I), 1, 2)
    with pytest.raises(PreconditionError):
        solve_stage(HomPair.basis(3, 1), M, [0, 2])


@given(st.integers(1, 3).flatmap(hompairs), st.integers(1, 3), st.integers(2, 5), st.data())
def test_greedy_split_reconstructs(P, nu, d, data):
    M = op_matrix(P, nu, d)
    comp = greedy_complement(M)
    assert M.rank() + len(comp) == M.shape[0]
    target = data.draw(hompairs(d + P.degree - 1))
    H, residual = solve_stage(target, M, comp)
    assert H.in_V()
    assert residual.support() <= set(comp)
    assert M.apply(H) + residual == target
