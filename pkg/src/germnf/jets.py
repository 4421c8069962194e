"""Truncated bivariate polynomial maps (jets) over Q(i).

A polynomial is a sparse ``dict`` mapping exponent pairs ``(e1, e2)`` to
nonzero ``GaussQ`` coefficients. A ``JetMap`` is a pair of such polynomials
recorded exactly through a total-degree bound ``D``; every operation states
its output truncation.

Homogeneous pieces use the monomial basis of pairs of degree-``d`` forms::

    v_d^h = (z1^h z2^(d-h), 0)              h = 0..d
    v_d^h = (0, z1^k z2^(d-k)),  k = h-d-1  h = d+1..2d+1

``V_d`` is the span of ``v_d^1..v_d^{2d+1}`` (first component divisible by z1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidComposition, PreconditionError
from .gaussq import GaussQ, ONE, ZERO

Poly = dict  # {(e1, e2): GaussQ}, zero coefficients never stored


# ---------------------------------------------------------------------------
# sparse polynomial kernels


def poly_clean(p: Mapping) -> Poly:
    return {e: GaussQ.coerce(c) for e, c in p.items() if c}


def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for e, c in q.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def poly_neg(p: Poly) -> Poly:
    return {e: -c for e, c in p.items()}


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_neg(q))


def poly_scale(p: Poly, c) -> Poly:
    c = GaussQ.coerce(c)
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def poly_truncate(p: Poly, D: int) -> Poly:
    return {e: c for e, c in p.items() if e[0] + e[1] <= D}


def poly_mul(p: Poly, q: Poly, D: int | None = None) -> Poly:
    """Product of ``p`` and ``q``, dropping terms of total degree above ``D``."""
    out: Poly = {}
    if not p or not q:
        return out
    q_items = sorted(q.items(), key=lambda t: t[0][0] + t[0][1])
    for (a1, a2), c in p.items():
        da = a1 + a2
        for (b1, b2), d in q_items:
            if D is not None and da + b1 + b2 > D:
                break
            e = (a1 + b1, a2 + b2)
            s = out.get(e)
            out[e] = c * d if s is None else s + c * d
    return {e: c for e, c in out.items() if c}


def poly_deriv(p: Poly, var: int) -> Poly:
    """Partial derivative in ``z1`` (var=0) or ``z2`` (var=1)."""
    out: Poly = {}
    for e, c in p.items():
        k = e[var]
        if k:
            ne = (e[0] - 1, e[1]) if var == 0 else (e[0], e[1] - 1)
            out[ne] = c * k
    return out


def poly_homogeneous(p: Poly, d: int) -> Poly:
    return {e: c for e, c in p.items() if e[0] + e[1] == d}


def poly_order(p: Poly) -> int | None:
    """Lowest total degree present, or None for the zero polynomial."""
    return min((e[0] + e[1] for e in p), default=None)


def poly_z1_valuation(p: Poly) -> int | None:
    return min((e[0] for e in p), default=None)


def poly_shift_z1(p: Poly, k: int) -> Poly:
    """Multiply by ``z1**k``; negative ``k`` divides and requires exactness."""
    if k < 0 and any(e[0] < -k for e in p):
        raise PreconditionError(f"polynomial not divisible by z1^{-k}")
    return {(e[0] + k, e[1]): c for e, c in p.items()}


def poly_sorted_items(p: Poly):
    return sorted(p.items(), key=lambda t: t[0])


# ---------------------------------------------------------------------------
# homogeneous pairs


def basis_monomial(d: int, h: int) -> tuple[int, tuple[int, int]]:
    """Component index (0 or 1) and exponent of ``v_d^h``."""
    if not 0 <= h <= 2 * d + 1:
        raise IndexError(f"basis index {h} out of range for degree {d}")
    if h <= d:
        return 0, (h, d - h)
    k = h - d - 1
    return 1, (k, d - k)


def basis_index(d: int, comp: int, exp: tuple[int, int]) -> int:
    if comp == 0:
        return exp[0]
    return exp[0] + d + 1


@dataclass(frozen=True)
class HomPair:
    """A pair of homogeneous degree-``degree`` forms in the ``v_d^h`` basis."""

    degree: int
    coeffs: Mapping[int, GaussQ] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for h, c in self.coeffs.items():
            basis_monomial(self.degree, h)
            c = GaussQ.coerce(c)
            if c:
                clean[h] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, d: int, h: int) -> "HomPair":
        return cls(d, {h: ONE})

    @classmethod
    def from_polys(cls, d: int, p1: Poly, p2: Poly) -> "HomPair":
        coeffs = {}
        for comp, p in enumerate((p1, p2)):
            for e, c in p.items():
                if e[0] + e[1] != d:
                    raise ValueError(f"monomial {e} is not of degree {d}")
                coeffs[basis_index(d, comp, e)] = c
        return cls(d, coeffs)

    def to_polys(self) -> tuple[Poly, Poly]:
        out = ({}, {})
        for h, c in self.coeffs.items():
            comp, e = basis_monomial(self.degree, h)
            out[comp][e] = c
        return out

    def __getitem__(self, h: int) -> GaussQ:
        return self.coeffs.get(h, ZERO)

    def in_V(self) -> bool:
        """True when the first component is divisible by z1 (no ``v_d^0`` term)."""
        return not self[0]

    def support(self) -> set[int]:
        return set(self.coeffs)

    def __add__(self, other: "HomPair") -> "HomPair":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.coeffs)
        for h, c in other.coeffs.items():
            out[h] = out.get(h, ZERO) + c
        return HomPair(self.degree, out)

    def __neg__(self) -> "HomPair":
        return HomPair(self.degree, {h: -c for h, c in self.coeffs.items()})

    def __sub__(self, other: "HomPair") -> "HomPair":
        return self + (-other)

    def scale(self, c) -> "HomPair":
        c = GaussQ.coerce(c)
        return HomPair(self.degree, {h: v * c for h, v in self.coeffs.items()})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def vector(self, lo: int = 0) -> list[GaussQ]:
        """Dense coordinates on ``v^lo .. v^{2d+1}``."""
        return [self[h] for h in range(lo, 2 * self.degree + 2)]


# ---------------------------------------------------------------------------
# jets of maps


@dataclass(frozen=True)
class JetMap:
    """A polynomial map ``(p1, p2)`` recorded exactly through total degree ``degree``."""

    degree: int
    p1: Poly
    p2: Poly

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("truncation degree must be positive")
        object.__setattr__(self, "p1", poly_truncate(poly_clean(self.p1), self.degree))
        object.__setattr__(self, "p2", poly_truncate(poly_clean(self.p2), self.degree))

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, D: int) -> "JetMap":
        return cls(D, {(1, 0): ONE}, {(0, 1): ONE})

    @classmethod
    def zero(cls, D: int) -> "JetMap":
        return cls(D, {}, {})

    @classmethod
    def linear(cls, D: int, m11, m12, m21, m22) -> "JetMap":
        """The linear map ``z -> M z`` for ``M = [[m11, m12], [m21, m22]]``."""
        return cls(D, {(1, 0): m11, (0, 1): m12}, {(1, 0): m21, (0, 1): m22})

    @classmethod
    def from_homogeneous(cls, D: int, parts: Iterable[HomPair]) -> "JetMap":
        p1, p2 = {}, {}
        for part in parts:
            a, b = part.to_polys()
            p1 = poly_add(p1, a)
            p2 = poly_add(p2, b)
        return cls(D, p1, p2)

    # -- access -----------------------------------------------------------
    @property
    def comps(self) -> tuple[Poly, Poly]:
        return (self.p1, self.p2)

    def coeff(self, comp: int, e1: int, e2: int) -> GaussQ:
        return self.comps[comp].get((e1, e2), ZERO)

    def homogeneous_part(self, d: int) -> HomPair:
        return HomPair.from_polys(d, poly_homogeneous(self.p1, d), poly_homogeneous(self.p2, d))

    def homogeneous_parts(self) -> list[HomPair]:
        return [self.homogeneous_part(d) for d in range(self.degree + 1)]

    def linear_matrix(self) -> tuple[tuple[GaussQ, GaussQ], tuple[GaussQ, GaussQ]]:
        return ((self.coeff(0, 1, 0), self.coeff(0, 0, 1)),
                (self.coeff(1, 1, 0), self.coeff(1, 0, 1)))

    def has_constant_term(self) -> bool:
        return (0, 0) in self.p1 or (0, 0) in self.p2

    def is_tangent_to_identity(self) -> bool:
        m = self.linear_matrix()
        return not self.has_constant_term() and m == ((ONE, ZERO), (ZERO, ONE))

    def order(self) -> int | None:
        orders = [o for o in (poly_order(self.p1), poly_order(self.p2)) if o is not None]
        return min(orders, default=None)

    def terms(self):
        """Canonically ordered ``(component, (e1, e2), coeff)`` triples, component 1 first."""
        for comp, p in ((1, self.p1), (2, self.p2)):
            for e, c in poly_sorted_items(p):
                yield comp, e, c

    # -- algebra ----------------------------------------------------------
    def truncate(self, D: int) -> "JetMap":
        return JetMap(D, self.p1, self.p2)

    def __add__(self, other: "JetMap") -> "JetMap":
        D = min(self.degree, other.degree)
        return JetMap(D, poly_add(self.p1, other.p1), poly_add(self.p2, other.p2))

    def __sub__(self, other: "JetMap") -> "JetMap":
        D = min(self.degree, other.degree)
        return JetMap(D, poly_sub(self.p1, other.p1), poly_sub(self.p2, other.p2))

    def __neg__(self) -> "JetMap":
        return JetMap(self.degree, poly_neg(self.p1), poly_neg(self.p2))

    def scale(self, c) -> "JetMap":
        return JetMap(self.degree, poly_scale(self.p1, c), poly_scale(self.p2, c))

    def minus_identity(self) -> "JetMap":
        return self - JetMap.identity(self.degree)

    def plus_identity(self) -> "JetMap":
        return self + JetMap.identity(self.degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetMap):
            return NotImplemented
        return self.degree == other.degree and self.p1 == other.p1 and self.p2 == other.p2

    def __hash__(self):
        return hash((self.degree, frozenset(self.p1.items()), frozenset(self.p2.items())))

    def __repr__(self) -> str:
        return f"JetMap(D={self.degree}, p1={format_poly(self.p1)}, p2={format_poly(self.p2)})"


# ---------------------------------------------------------------------------
# composition, inversion, Jacobian action


def _powers(p: Poly, n: int, D: int) -> list[Poly]:
    out = [{(0, 0): ONE}]
    for _ in range(n):
        out.append(poly_mul(out[-1], p, D))
    return out


def compose_poly(f: Poly, g1: Poly, g2: Poly, D: int) -> Poly:
    """``f(g1, g2)`` through total degree ``D``; ``g1``, ``g2`` must lack constants."""
    if not f:
        return {}
    max1 = max(e[0] for e in f)
    max2 = max(e[1] for e in f)
    pw1 = _powers(g1, min(max1, D), D)
    pw2 = _powers(g2, min(max2, D), D)
    # group by the z1 exponent: f = sum_a z1^a * q_a(z2)
    by_a: dict[int, list] = {}
    for (a, b), c in f.items():
        if a + b <= D:
            by_a.setdefault(a, []).append((b, c))
    out: Poly = {}
    for a, items in by_a.items():
        q: Poly = {}
        for b, c in items:
            q = poly_add(q, poly_scale(pw2[b], c))
        # g1^a has order >= a, so q is only needed through degree D - a
        q = poly_truncate(q, D - a)
        out = poly_add(out, poly_mul(pw1[a], q, D))
    return out


def jet_compose(f: JetMap, g: JetMap, D: int | None = None) -> JetMap:
    """Jet of ``f o g`` truncated at total degree ``D``.

    ``g`` must fix the origin; both inputs must be recorded through at least ``D``.
    """
    if D is None:
        D = min(f.degree, g.degree)
    if g.has_constant_term():
        raise InvalidComposition("inner map has a constant term")
    if f.degree < D or g.degree < D:
        raise InvalidComposition(f"inputs truncated below requested degree {D}")
    return JetMap(D, compose_poly(f.p1, g.p1, g.p2, D), compose_poly(f.p2, g.p1, g.p2, D))


def jet_invert(chi: JetMap, D: int | None = None) -> JetMap:
    """Compositional inverse of a map tangent to the identity, through degree ``D``.

    Iterates ``K <- id - (chi - id) o K``; each pass fixes at least one more degree.
    """
    if D is None:
        D = chi.degree
    if not chi.is_tangent_to_identity():
        raise PreconditionError("jet_invert requires a map tangent to the identity")
    chi = chi.truncate(D)
    ident = JetMap.identity(D)
    nonlin = chi - ident
    K = ident
    for _ in range(D):
        nxt = ident - jet_compose(nonlin, K, D)
        if nxt == K:
            break
        K = nxt
    return K


def jacobian_apply(H: JetMap, v: JetMap, D: int | None = None) -> JetMap:
    """``Jac(H) . v`` componentwise, truncated at ``D`` (default: the smaller bound)."""
    if D is None:
        D = min(H.degree, v.degree)
    comps = []
    for p in H.comps:
        acc = poly_mul(poly_deriv(p, 0), v.p1, D)
        acc = poly_add(acc, poly_mul(poly_deriv(p, 1), v.p2, D))
        comps.append(acc)
    return JetMap(D, comps[0], comps[1])


def conjugate(f: JetMap, chi: JetMap, chi_inv: JetMap, D: int | None = None) -> JetMap:
    """``chi_inv o f o chi`` through degree ``D``."""
    if D is None:
        D = f.degree
    return jet_compose(chi_inv, jet_compose(f, chi, D), D)


# ---------------------------------------------------------------------------
# presentation


def format_monomial(e: tuple[int, int]) -> str:
    parts = []
    for name, k in (("z1", e[0]), ("z2", e[1])):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    out = []
    for e, c in poly_sorted_items(p):
        mono = format_monomial(e)
        if mono == "1":
            out.append(str(c))
        elif c == ONE:
            out.append(mono)
        elif c == -ONE:
            out.append(f"-{mono}")
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out).replace("+ -", "- ")
