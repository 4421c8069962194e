"""Random exact test objects: coefficients, jets, template germs and coordinate changes."""
from __future__ import annotations

import random

from gmpy2 import mpq

from .gaussq import GaussQ, ONE, ZERO
from .jets import HomPair, JetMap, jet_compose, jet_invert
from .linear import LinearChange, LinearClass, LinearLabel
from .pipeline import Case, CaseTemplate, template_slots

# a representative lambda (and nu) for each star_1 subcase
CASE_LAMBDAS = {
    Case.GENERIC: (GaussQ(0, 1), None),
    Case.ZERO: (GaussQ(0), None),
    Case.NEGRAT: (GaussQ(mpq(-1, 2)), None),
    Case.RECIP: (GaussQ(mpq(1, 2)), 2),
    Case.ONE: (GaussQ(1), None),
    Case.POSRAT: (GaussQ(mpq(3, 2)), 2),
}


def random_gaussq(rng: random.Random, size: int = 5, den: int = 4, real: bool = False) -> GaussQ:
    re = mpq(rng.randint(-size, size), rng.randint(1, den))
    im = ZERO.im if real else mpq(rng.randint(-size, size), rng.randint(1, den))
    return GaussQ(re, im)


def random_nonzero(rng: random.Random, **kw) -> GaussQ:
    while True:
        x = random_gaussq(rng, **kw)
        if x:
            return x


def random_hompair(rng: random.Random, d: int, density: float = 0.7, in_V: bool = False) -> HomPair:
    lo = 1 if in_V else 0
    return HomPair(d, {h: random_gaussq(rng) for h in range(lo, 2 * d + 2) if rng.random() < density})


def random_jet(rng: random.Random, D: int, *, tangent: bool = True, z1_first: bool = False,
               density: float = 0.5, low: int = 2) -> JetMap:
    """Random jet with terms of degree ``low..D``; optionally ``id +`` and first component z1-divisible."""
    p1, p2 = {}, {}
    for d in range(low, D + 1):
        for a in range(d + 1):
            if rng.random() < density and (a >= 1 or not z1_first):
                p1[(a, d - a)] = random_gaussq(rng)
            if rng.random() < density:
                p2[(a, d - a)] = random_gaussq(rng)
    jet = JetMap(D, p1, p2)
    return jet.plus_identity() if tangent else jet


def random_linear_change(rng: random.Random) -> LinearChange:
    return LinearChange(random_nonzero(rng, size=3, den=3), random_gaussq(rng, size=3, den=3),
                        random_nonzero(rng, size=3, den=3))


def random_template_germ(rng: random.Random, case: CaseTemplate, nu: int, D: int, *,
                         tangential: bool = False) -> JetMap:
    """A germ already in the normal form of ``case``, with random parameters through degree ``D``."""
    (a11, a10), (a21, a20) = case.linear_class().template()
    p1 = {(1, 0): a11, (0, 1): a10}
    p2 = {(1, 0): a21, (0, 1): a20}
    for name, idx, comp, e in template_slots(case, nu, D - nu):
        if name == "t" and tangential:
            continue
        (p1 if comp == 0 else p2)[e] = random_gaussq(rng)
    fo = JetMap(D - nu, p1, p2)
    return germ_from_fo(fo, nu, D)


def germ_from_fo(fo: JetMap, nu: int, D: int) -> JetMap:
    """``id + z1^nu * fo`` through degree ``D``."""
    p1 = {(e[0] + nu, e[1]): c for e, c in fo.p1.items()}
    p2 = {(e[0] + nu, e[1]): c for e, c in fo.p2.items()}
    return JetMap(D, p1, p2).plus_identity()


def random_germ_for_case(rng: random.Random, case: CaseTemplate, nu: int, D: int, *,
                         tangential: bool = False, extra_density: float = 0.5) -> JetMap:
    """Template linear part plus arbitrary higher-order terms, then scrambled by a random linear change."""
    (a11, a10), (a21, a20) = case.linear_class().template()
    p1 = {(1, 0): a11, (0, 1): a10}
    p2 = {(1, 0): a21, (0, 1): a20}
    for d in range(2, D - nu + 1):
        for a in range(d + 1):
            if rng.random() < extra_density and (a >= 1 or not tangential):
                p1[(a, d - a)] = random_gaussq(rng)
            if rng.random() < extra_density:
                p2[(a, d - a)] = random_gaussq(rng)
    if not tangential:
        p1[(0, 2)] = random_nonzero(rng)
    if not any(e[0] == 0 and c for e, c in p2.items()):
        # keep fo off z1 * (...), otherwise the true contact order is larger than nu
        p2[(0, 2)] = random_nonzero(rng)
    f = germ_from_fo(JetMap(D - nu, p1, p2), nu, D)
    return random_linear_change(rng).inverse().conjugate(f)


def random_tangent_change(rng: random.Random, D: int, density: float = 0.4) -> JetMap:
    """Tangent to the identity, preserving ``{z1 = 0}`` (first component divisible by z1)."""
    return random_jet(rng, D, tangent=True, z1_first=True, density=density)


def scramble(f: JetMap, A: LinearChange, chi: JetMap) -> JetMap:
    """``Phi^-1 o f o Phi`` with ``Phi = A o chi``."""
    D = f.degree
    g = A.conjugate(f)
    return jet_compose(jet_invert(chi, D), jet_compose(g, chi, D), D)


def case_template(case: Case, nu: int) -> CaseTemplate:
    """CaseTemplate for a case, using the representative lambda of CASE_LAMBDAS."""
    from .pipeline import dispatch_case

    if case in CASE_LAMBDAS:
        lam, _ = CASE_LAMBDAS[case]
        label = LinearLabel.STAR1_1 if case is Case.ONE else LinearLabel.STAR1_LAMBDA
        return dispatch_case(LinearClass(label, None if case is Case.ONE else lam), nu)
    label = {Case.J_1: LinearLabel.J_1, Case.STAR_2: LinearLabel.STAR_2, Case.J_0: LinearLabel.J_0}[case]
    return dispatch_case(LinearClass(label), nu)


def case_nu(case: Case, default: int) -> int:
    """The ν a case's representative λ needs (recip 1/2 and posrat 3/2 are drawn with ν = 2)."""
    if case in CASE_LAMBDAS and CASE_LAMBDAS[case][1] is not None:
        return CASE_LAMBDAS[case][1]
    return default
