"""Splitting ``f = z + z1^nu * fo(z)`` and reading off contact and pure order."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInput, HypothesisViolation, PreconditionError
from .jets import HomPair, JetMap, poly_shift_z1, poly_z1_valuation


@dataclass(frozen=True)
class GermDecomposition:
    """``nu`` (order of contact), ``fo`` (reduced map through degree D - nu), ``mu`` (pure order)."""

    nu: int
    fo: JetMap
    mu: int
    D: int

    def part(self, j: int) -> HomPair:
        """Homogeneous degree-``j`` piece ``P^j`` of ``fo``."""
        return self.fo.homogeneous_part(j)

    @property
    def leading(self) -> HomPair:
        return self.part(self.mu)

    def a(self, comp: int, k: int, j: int | None = None):
        """Coefficient ``a^j_{comp,k}``: of ``z1^k z2^(j-k)`` in component ``comp`` (1 or 2) of ``P^j``."""
        j = self.mu if j is None else j
        return self.fo.coeff(comp - 1, k, j - k)

    def reconstruct(self) -> JetMap:
        """``id + z1^nu * fo`` through degree ``D``."""
        return JetMap(self.D, poly_shift_z1(self.fo.p1, self.nu),
                      poly_shift_z1(self.fo.p2, self.nu)).plus_identity()


def germ_decompose(f: JetMap, *, require_singular: bool = True) -> GermDecomposition:
    """Decompose a jet tangent to the identity that fixes ``{z1 = 0}`` pointwise.

    ``nu`` is the minimum z1-adic valuation of the two components of ``f - id``.
    Raises DegenerateInput when ``f == id``, HypothesisViolation("H1") when
    ``f - id`` is not divisible by z1, and HypothesisViolation("H2") when
    ``fo(O) != O`` (unless ``require_singular`` is False).
    """
    if not f.is_tangent_to_identity():
        raise HypothesisViolation("tangent", "f must be tangent to the identity with no constant term")
    g = f.minus_identity()
    vals = [v for v in (poly_z1_valuation(g.p1), poly_z1_valuation(g.p2)) if v is not None]
    if not vals:
        raise DegenerateInput()
    nu = min(vals)
    if nu == 0:
        raise HypothesisViolation("H1", "f - id is not divisible by z1: {z1=0} is not pointwise fixed")
    D = f.degree
    if D - nu < 1:
        raise HypothesisViolation("H2", f"truncation degree {D} too small to see fo beyond its constant term")
    fo = JetMap(D - nu, poly_shift_z1(g.p1, -nu), poly_shift_z1(g.p2, -nu))
    if fo.has_constant_term() and require_singular:
        raise HypothesisViolation("H2", "fo(O) != O: the origin is not a singular point")
    mu = fo.order()
    return GermDecomposition(nu=nu, fo=fo, mu=mu, D=D)
