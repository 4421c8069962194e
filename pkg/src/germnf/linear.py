"""Classification and normalization of the degree-one part ``P^1`` of ``fo``.

Coefficients follow ``P^1 = (a11 z1 + a10 z2, a21 z1 + a20 z2)``, i.e. the
matrix ``[[a11, a10], [a21, a20]]``. A linear change ``A = [[x11, 0], [x21, x22]]``
preserving ``{z1 = 0}`` sends ``P^1`` to ``x11^nu * A^-1 P^1 A``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import PreconditionError, RootNotInField, HypothesisViolation
from .gaussq import GaussQ, ONE, ZERO
from .germ import GermDecomposition, germ_decompose
from .jets import HomPair, JetMap, jet_compose


class LinearLabel(enum.Enum):
    T_LAMBDA = "T_lambda"
    N_1 = "N_1"
    N_0 = "N_0"
    STAR1_LAMBDA = "star1_lambda"
    J_1 = "J_1"
    STAR1_1 = "star1_1"
    STAR_2 = "star2"
    J_0 = "J_0"

    @property
    def display(self) -> str:
        return {
            "T_lambda": "T_λ", "N_1": "N_1", "N_0": "N_0", "star1_lambda": "★_1^λ",
            "J_1": "J_1", "star1_1": "★_1^1", "star2": "★_2", "J_0": "J_0",
        }[self.value]

    @property
    def satisfies_H4(self) -> bool:
        return self not in (LinearLabel.T_LAMBDA, LinearLabel.N_1, LinearLabel.N_0)


@dataclass(frozen=True)
class LinearClass:
    label: LinearLabel
    lam: GaussQ | None = None

    @property
    def satisfies_H4(self) -> bool:
        return self.label.satisfies_H4

    def template(self) -> tuple[tuple[GaussQ, GaussQ], tuple[GaussQ, GaussQ]]:
        """Matrix ``[[a11, a10], [a21, a20]]`` of the linear normal form."""
        lam = self.lam
        L = LinearLabel
        return {
            L.T_LAMBDA: ((ONE, ONE), (lam, ZERO)),
            L.N_1: ((ZERO, ONE), (ONE, ZERO)),
            L.N_0: ((ZERO, ONE), (ZERO, ZERO)),
            L.STAR1_LAMBDA: ((lam, ZERO), (ZERO, ONE)),
            L.J_1: ((ONE, ZERO), (ONE, ONE)),
            L.STAR1_1: ((ONE, ZERO), (ZERO, ONE)),
            L.STAR_2: ((ONE, ZERO), (ZERO, ZERO)),
            L.J_0: ((ZERO, ZERO), (ONE, ZERO)),
        }[self.label]


def matrix_to_hompair(m) -> HomPair:
    (a11, a10), (a21, a20) = m
    return HomPair(1, {0: a10, 1: a11, 2: a20, 3: a21})


def hompair_to_matrix(P1: HomPair):
    return ((P1[1], P1[0]), (P1[3], P1[2]))


def classify_linear(P1: HomPair, nu: int) -> LinearClass:
    """Place ``P^1`` in one of the eight linear classes (the decision tree of the case analysis)."""
    if P1.degree != 1:
        raise PreconditionError("classify_linear expects the degree-one part")
    if not P1:
        raise HypothesisViolation("H3", "P^1 vanishes: pure order is not 1")
    (a11, a10), (a21, a20) = hompair_to_matrix(P1)
    L = LinearLabel
    if a10:
        tr = a11 + a20
        det = a11 * a20 - a10 * a21
        if tr:
            return LinearClass(L.T_LAMBDA, -det / (tr * tr))
        return LinearClass(L.N_1 if det else L.N_0)
    if a20:
        if a11 != a20:
            return LinearClass(L.STAR1_LAMBDA, a11 / a20)
        return LinearClass(L.J_1 if a21 else L.STAR1_1)
    return LinearClass(L.STAR_2 if a11 else L.J_0)


@dataclass(frozen=True)
class LinearChange:
    """``A = [[a11, 0], [a21, a22]]``; the zero entry keeps ``{z1 = 0}`` invariant."""

    a11: GaussQ
    a21: GaussQ
    a22: GaussQ

    def __post_init__(self):
        for name in ("a11", "a21", "a22"):
            object.__setattr__(self, name, GaussQ.coerce(getattr(self, name)))
        if not self.a11 or not self.a22:
            raise PreconditionError("linear change must be invertible")

    @classmethod
    def identity(cls) -> "LinearChange":
        return cls(ONE, ZERO, ONE)

    def is_identity(self) -> bool:
        return self == LinearChange.identity()

    def as_jet(self, D: int) -> JetMap:
        return JetMap.linear(D, self.a11, ZERO, self.a21, self.a22)

    def inverse(self) -> "LinearChange":
        return LinearChange(self.a11.inverse(), -self.a21 / (self.a11 * self.a22), self.a22.inverse())

    def conjugate(self, f: JetMap) -> JetMap:
        """``A^-1 o f o A``, exact through ``f.degree``."""
        D = f.degree
        return jet_compose(self.inverse().as_jet(D), jet_compose(f, self.as_jet(D), D), D)


@dataclass(frozen=True)
class LinearNormalization:
    A: LinearChange
    germ: GermDecomposition
    cls: LinearClass
    scale: GaussQ = ONE           # residual factor left when a root is missing (permissive mode)
    root_equation: str | None = None

    def __iter__(self):
        return iter((self.A, self.germ, self.cls))


def _root(c: GaussQ, n: int, equation: str, permissive: bool) -> GaussQ | None:
    """First root (lexicographic on (re, im)) of ``x**n == c`` in Q(i), or None when permitted to skip."""
    roots = GaussQ.coerce(c).nth_roots(n)
    if roots:
        return roots[0]
    if permissive:
        return None
    raise RootNotInField(n, c, equation)


def linear_normalize(g: GermDecomposition, *, permissive: bool = False) -> LinearNormalization:
    """Conjugate by a linear change so that ``P^1`` equals its class template.

    Higher-order terms are recomputed by exact conjugation of the whole jet. When
    the scaling needs a root outside Q(i), RootNotInField is raised, or with
    ``permissive=True`` the scaling is skipped and ``P^1`` ends up equal to
    ``scale * template`` (or, for N_1, the template with ``-det`` in the
    lower-left entry).
    """
    if g.mu != 1:
        raise PreconditionError("linear normalization needs pure order 1")
    nu = g.nu
    P1 = g.part(1)
    cls = classify_linear(P1, nu)
    (a11, a10), (a21, a20) = hompair_to_matrix(P1)
    L = LinearLabel
    scale, eq = ONE, None
    expected = None
    lab = cls.label

    if lab in (L.T_LAMBDA, L.N_1, L.N_0):
        tr = a11 + a20
        det = a11 * a20 - a10 * a21
        if lab is L.T_LAMBDA:
            eq = f"alpha11^{nu} * ({tr}) = 1"
            x11 = _root(tr.inverse(), nu, eq, permissive)
            if x11 is None:
                scale = tr
                A = LinearChange(ONE, a20 / a10, tr / a10)
            else:
                eq = None
        elif lab is L.N_1:
            eq = f"-alpha11^{2 * nu} * ({det}) = 1"
            x11 = _root(-det.inverse(), 2 * nu, eq, permissive)
            if x11 is None:
                scale = -det
                A = LinearChange(ONE, a20 / a10, a10.inverse())
                expected = ((ZERO, ONE), (-det, ZERO))
            else:
                eq = None
        else:
            x11 = ONE
        if x11 is not None:
            A = LinearChange(x11, x11 * a20 / a10, (x11 ** (nu - 1) * a10).inverse())
    elif lab is L.J_0:
        A = LinearChange(ONE, ZERO, a21)
    else:
        lead = a11 if lab is L.STAR_2 else a20
        eq = f"alpha11^{nu} * ({lead}) = 1"
        x11 = _root(lead.inverse(), nu, eq, permissive)
        if x11 is None:
            scale, x11 = lead, ONE
        else:
            eq = None
        if lab is L.STAR1_LAMBDA:
            A = LinearChange(x11, -x11 * a21 / (a20 - a11), ONE)
        elif lab is L.J_1:
            A = LinearChange(x11, ZERO, x11 ** (nu + 1) * a21 / scale)
        elif lab is L.STAR1_1:
            A = LinearChange(x11, ZERO, ONE)
        else:  # STAR_2
            A = LinearChange(x11, x11 * a21 / a11, ONE)

    if expected is None:
        expected = tuple(tuple(x * scale for x in row) for row in cls.template())
    f_new = A.conjugate(g.reconstruct())
    g_new = germ_decompose(f_new)
    if g_new.nu != nu or hompair_to_matrix(g_new.part(1)) != expected:
        raise PreconditionError(
            f"linear normalization failed to reach the {lab.display} template: "
            f"got {hompair_to_matrix(g_new.part(1))}")
    return LinearNormalization(A=A, germ=g_new, cls=cls, scale=scale, root_equation=eq)
