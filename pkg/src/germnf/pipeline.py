"""Degree-by-degree formal normalization and its conjugacy certificate.

After the linear stage puts ``P^1`` in template form, stage ``d`` (d = 2, 3, ...)
splits the degree-d part of ``fo`` into an image-of-``L_{P^1,d}`` piece and a
piece supported on a fixed complement, then removes the former by exact
conjugation with ``id + H^d``. The complements are the monomial sets of the
nine normal-form templates; each one is checked against the operator matrix
at every stage.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

from .errors import CaseTableError, GermError, PreconditionError
from .gaussq import GaussQ, ONE, ZERO
from .germ import GermDecomposition, germ_decompose
from .jets import (HomPair, JetMap, basis_index, conjugate, jet_compose, jet_invert,
                   poly_add, poly_sub)
from .linear import LinearChange, LinearClass, LinearLabel, classify_linear, linear_normalize
from .operator import greedy_complement, op_matrix, solve_stage
from .resonance import EMembership, in_E, rational_parts

log = logging.getLogger(__name__)

PARAMETER_NAMES = ("a", "t", "g", "g1", "g2", "p_o", "p_nu")


class Case(enum.Enum):
    GENERIC = "star1_generic"
    ZERO = "star1_zero"
    NEGRAT = "star1_negrat"
    RECIP = "star1_recip"
    POSRAT = "star1_posrat"
    ONE = "star1_one"
    J_1 = "J_1"
    STAR_2 = "star2"
    J_0 = "J_0"

    @property
    def display(self) -> str:
        return {
            "star1_generic": "★_1^λ-generic", "star1_zero": "★_1^λ-zero",
            "star1_negrat": "★_1^λ-negrat", "star1_recip": "★_1^λ-recip",
            "star1_posrat": "★_1^λ-posrat", "star1_one": "★_1^λ-one",
            "J_1": "J_1", "star2": "★_2", "J_0": "J_0",
        }[self.value]


_TEMPLATE_TEXT = {
    Case.GENERIC: "(z1 + z1^ν[λ z1 + a z1^{ν+1} + z2² t(z2)], z2 + z1^ν z2)",
    Case.ZERO: "(z1 + z1^ν[z1² g(z1) + z2² t(z2)], z2 + z1^ν z2)",
    Case.NEGRAT: "(z1 + z1^ν[z1 g1(z1^q z2^p) + z1^{ν+1} g2(z1^q z2^p) + z2² t(z2)], z2 + z1^ν z2)",
    Case.RECIP: "(z1 + z1^ν[λ z1 + z1^{ν+1} p_o(z1^{-q} z2) + z2² t(z2)], z2 + z1^ν(z2 + a z1^q))",
    Case.POSRAT: "(z1 + z1^ν[λ z1 + z1^{ν+1} p_o(z1^{-q} z2^p) + z2² t(z2)], z2 + z1^ν z2)",
    Case.ONE: "(z1 + z1^ν[z1 + z1 p_ν(z1, z2) + z2² t(z2)], z2 + z1^ν z2)",
    Case.J_1: "(z1 + z1^ν[z1 + a z1 z2^ν + z2² t(z2)], z2 + z1^ν(z1 + z2))",
    Case.STAR_2: "(z1 + z1^ν[z1 + z1^{ν+1} g1(z2) + z2² t(z2)], z2 + z1^ν z2² g2(z2))",
    Case.J_0: "(z1 + z1^ν[z1 z2 g1(z2) + z2² t(z2)], z2 + z1^ν[z1 + z2² g2(z2)])",
}


@dataclass(frozen=True)
class CaseTemplate:
    """A normal-form case with its parameters (λ for the ★_1 family; p, q for the rational ones)."""

    case: Case
    lam: GaussQ | None = None
    p: int | None = None
    q: int | None = None

    @property
    def template_text(self) -> str:
        return _TEMPLATE_TEXT[self.case]

    def linear_class(self) -> LinearClass:
        if self.case is Case.J_1:
            return LinearClass(LinearLabel.J_1)
        if self.case is Case.STAR_2:
            return LinearClass(LinearLabel.STAR_2)
        if self.case is Case.J_0:
            return LinearClass(LinearLabel.J_0)
        if self.case is Case.ONE:
            return LinearClass(LinearLabel.STAR1_1)
        return LinearClass(LinearLabel.STAR1_LAMBDA, self.lam)

    def complement(self, nu: int, d: int) -> list[int]:
        return complement_basis(self, nu, d)

    def allowed_support(self, nu: int, d: int, tangential: bool = False) -> set[int]:
        allowed = set(self.complement(nu, d))
        if tangential:
            allowed.discard(0)
        return allowed

    def slots(self, nu: int, max_degree: int) -> list[tuple[str, int, int, tuple[int, int]]]:
        """Parameter slots ``(name, index, component, exponent)`` of ``fo`` with degree in ``2..max_degree``."""
        return template_slots(self, nu, max_degree)


def dispatch_case(cls: LinearClass, nu: int) -> CaseTemplate:
    """Map an (H4) linear class and its λ onto one of the nine templates."""
    L = LinearLabel
    if cls.label is L.J_1:
        return CaseTemplate(Case.J_1)
    if cls.label is L.STAR_2:
        return CaseTemplate(Case.STAR_2)
    if cls.label is L.J_0:
        return CaseTemplate(Case.J_0)
    if cls.label is L.STAR1_1:
        return CaseTemplate(Case.ONE, ONE, 1, 1)
    if cls.label is not L.STAR1_LAMBDA:
        raise PreconditionError(f"{cls.label.display} does not satisfy (H4): no template")
    lam = cls.lam
    pq = rational_parts(lam)
    if pq is None:
        return CaseTemplate(Case.GENERIC, lam)
    p, q = pq
    if p == 0:
        return CaseTemplate(Case.ZERO, lam, 0, 1)
    if p < 0:
        return CaseTemplate(Case.NEGRAT, lam, -p, q)
    if p == 1 and q == 1:
        return CaseTemplate(Case.ONE, lam, 1, 1)
    if p == 1:
        return CaseTemplate(Case.RECIP, lam, 1, q)
    if q <= nu:
        return CaseTemplate(Case.POSRAT, lam, p, q)
    return CaseTemplate(Case.GENERIC, lam, p, q)


def complement_basis(case: CaseTemplate, nu: int, d: int) -> list[int]:
    """Indices ``h`` of the monomials ``v_d^h`` kept in the normal form at degree ``d``.

    ``v_d^0 = (z2^d, 0)`` is always kept: the operator never reaches it.
    """
    if d < 2:
        raise PreconditionError("complements are defined for d >= 2")
    c = case.case
    out = {0}
    if c is Case.GENERIC:
        if d == nu + 1:
            out.add(nu + 1)
    elif c is Case.ZERO:
        out.add(d)
    elif c is Case.NEGRAT:
        p, q = case.p, case.q
        # tau(d, k) = 0 with k = q*l: keep the first-component partner v^{k+1}
        for l in range(1, d):
            if q * l + 1 + p * l == d:
                out.add(q * l + 1)
        # sigma(d, h) = 0 with h = nu+1+q*l, d = h+p*l (l = 0 is the permanent one)
        for l in range(0, d):
            h = nu + 1 + q * l
            if h + p * l == d:
                out.add(h)
    elif c is Case.RECIP:
        q = case.q
        for l in range(0, nu // q + 1):
            h = nu + 1 - q * l
            if h + l == d:
                out.add(h)
        if d == q:
            out.add(2 * d + 1)  # (0, z1^q)
    elif c is Case.POSRAT:
        p, q = case.p, case.q
        for l in range(0, nu // q + 1):
            h = nu + 1 - q * l
            if h + p * l == d:
                out.add(h)
    elif c is Case.ONE:
        if d == nu + 1:
            out.update(range(1, d + 1))
    elif c is Case.J_1:
        if d == nu + 1:
            out.add(1)
    elif c is Case.STAR_2:
        if d >= nu + 1:
            out.add(nu + 1)
        out.add(d + 1)
    elif c is Case.J_0:
        out.update((1, d + 1))
    return sorted(out)


def template_slots(case: CaseTemplate, nu: int, max_degree: int):
    """Monomials carrying the free parameters of the template, read off its formula."""
    c = case.case
    slots = []

    def add(name, idx, comp, e):
        if 2 <= e[0] + e[1] <= max_degree:
            slots.append((name, idx, comp, e))

    for j in range(0, max_degree - 1):
        add("t", j, 0, (0, j + 2))
    if c is Case.GENERIC:
        add("a", 0, 0, (nu + 1, 0))
    elif c is Case.ZERO:
        for j in range(0, max_degree - 1):
            add("g", j, 0, (j + 2, 0))
    elif c is Case.NEGRAT:
        p, q = case.p, case.q
        for l in range(1, max_degree + 1):
            add("g1", l, 0, (1 + q * l, p * l))
        for l in range(0, max_degree + 1):
            add("g2", l, 0, (nu + 1 + q * l, p * l))
    elif c is Case.RECIP:
        q = case.q
        for l in range(0, nu // q + 1):
            add("p_o", l, 0, (nu + 1 - q * l, l))
        add("a", 0, 1, (q, 0))
    elif c is Case.POSRAT:
        p, q = case.p, case.q
        for l in range(0, nu // q + 1):
            add("p_o", l, 0, (nu + 1 - q * l, p * l))
    elif c is Case.ONE:
        for j in range(0, nu + 1):
            add("p_nu", j, 0, (1 + j, nu - j))
    elif c is Case.J_1:
        add("a", 0, 0, (1, nu))
    elif c is Case.STAR_2:
        for j in range(0, max_degree):
            add("g1", j, 0, (nu + 1, j))
        for j in range(0, max_degree - 1):
            add("g2", j, 1, (0, j + 2))
    elif c is Case.J_0:
        for j in range(0, max_degree - 1):
            add("g1", j, 0, (1, j + 1))
        for j in range(0, max_degree - 1):
            add("g2", j, 1, (0, j + 2))
    return slots


def _slot_capacity(case: CaseTemplate, nu: int, name: str) -> int | None:
    """Number of coefficients of a polynomial-valued parameter (None for power series)."""
    if name == "p_o":
        return nu // case.q + 1
    if name == "p_nu":
        return nu + 1
    if name == "a":
        return 1
    return None


def extract_parameters(case: CaseTemplate, nu: int, fo: JetMap) -> dict[str, list]:
    """Read the template parameters off a normalized ``fo``; undetermined entries are None."""
    params: dict[str, list] = {name: [] for name in PARAMETER_NAMES}
    slots = case.slots(nu, fo.degree)
    used = {s[0] for s in slots}
    for name in used:
        cap = _slot_capacity(case, nu, name)
        top = max(s[1] for s in slots if s[0] == name)
        size = cap if cap is not None else top + 1
        params[name] = [None] * size
    for name, idx, comp, e in slots:
        params[name][idx] = fo.coeff(comp, *e)
    # polynomial parameters whose slots all exceed the truncation still get their length
    for name in ("a", "p_o", "p_nu"):
        if not params[name] and _declares(case, name):
            params[name] = [None] * _slot_capacity(case, nu, name)
    if case.case is Case.NEGRAT:
        g1 = params["g1"] or [None]
        g1[0] = case.lam
        params["g1"] = g1
    return params


def _declares(case: CaseTemplate, name: str) -> bool:
    c = case.case
    return ((name == "a" and c in (Case.GENERIC, Case.RECIP, Case.J_1))
            or (name == "p_o" and c in (Case.RECIP, Case.POSRAT))
            or (name == "p_nu" and c is Case.ONE))


def template_fo(case: CaseTemplate, nu: int, params: dict[str, list], degree: int) -> JetMap:
    """Rebuild ``fo`` of the normal form from the linear template and the parameters."""
    (a11, a10), (a21, a20) = case.linear_class().template()
    p1 = {(1, 0): a11, (0, 1): a10}
    p2 = {(1, 0): a21, (0, 1): a20}
    for name, idx, comp, e in case.slots(nu, degree):
        value = params[name][idx]
        if value is None:
            raise PreconditionError(f"parameter {name}[{idx}] undetermined at degree {degree}")
        target = p1 if comp == 0 else p2
        target[e] = value
    return JetMap(degree, p1, p2)


def tangentiality(g: GermDecomposition) -> bool:
    """True iff z1 divides the first component of ``fo`` (through its recorded degree)."""
    return all(e[0] >= 1 for e in g.fo.p1)


# ---------------------------------------------------------------------------
# certificate


@dataclass(frozen=True)
class Discrepancy:
    degree: int
    component: int
    exponent: tuple[int, int]
    lhs: GaussQ
    rhs: GaussQ


@dataclass(frozen=True)
class ConjugacyCheck:
    ok: bool
    discrepancy: Discrepancy | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_conjugacy(f: JetMap, chi: JetMap, fhat: JetMap, D: int | None = None) -> ConjugacyCheck:
    """Check ``f o chi == chi o fhat`` coefficient by coefficient through degree ``D``.

    ``chi`` may carry an invertible linear part; it must fix the origin.
    """
    if D is None:
        D = min(f.degree, chi.degree, fhat.degree)
    lhs = jet_compose(f, chi, D)
    rhs = jet_compose(chi, fhat, D)
    bad = []
    for comp in (0, 1):
        diff = poly_sub(lhs.comps[comp], rhs.comps[comp])
        for e in diff:
            bad.append((e[0] + e[1], comp + 1, e))
    if not bad:
        return ConjugacyCheck(True)
    deg, comp, e = min(bad)
    return ConjugacyCheck(False, Discrepancy(deg, comp, e, lhs.coeff(comp - 1, *e),
                                             rhs.coeff(comp - 1, *e)))


# ---------------------------------------------------------------------------
# the procedure


@dataclass(frozen=True)
class NormalizeOptions:
    permissive_scale: bool = False
    verify: bool = True
    case_only: bool = False
    validate_operator: bool = True


@dataclass(frozen=True)
class StageRecord:
    d: int
    complement: tuple[int, ...]
    removed: bool
    residual: HomPair


@dataclass
class NormalFormReport:
    nu: int
    mu: int
    D: int
    linear_class: LinearClass | None = None
    case: CaseTemplate | None = None
    e_membership: EMembership | None = None
    normal_form: JetMap | None = None
    parameters: dict[str, list] = field(default_factory=lambda: {n: [] for n in PARAMETER_NAMES})
    chi: JetMap | None = None
    linear_change: LinearChange = field(default_factory=LinearChange.identity)
    tangential: bool = False
    verified: bool | None = None  # None: certificate skipped
    discrepancy: Discrepancy | None = None
    canonical: bool = False
    stopped_after: str = "complete"  # "classification" | "linear" | "complete"
    scale: GaussQ = ONE
    root_equation: str | None = None
    stages: list[StageRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def full_change(self) -> JetMap:
        """``A o chi``: conjugates the input into the normal form."""
        chi = self.chi if self.chi is not None else JetMap.identity(self.D)
        return jet_compose(self.linear_change.as_jet(self.D), chi, self.D)

    @property
    def normal_fo(self) -> JetMap | None:
        if self.normal_form is None:
            return None
        return germ_decompose(self.normal_form).fo


def _stage_loop(f: JetMap, nu: int, P: HomPair, complement_for, D: int, validate: bool):
    mu = P.degree
    chi = JetMap.identity(D)
    g = germ_decompose(f)
    stages = []
    for d in range(2, D - nu - mu + 2):
        e = d + mu - 1
        M = op_matrix(P, nu, d, validate=validate)
        comp = complement_for(d, M)
        target = g.part(e)
        H, residual = solve_stage(target, M, comp)
        if H:
            step = JetMap.from_homogeneous(D, [-H]).plus_identity()
            f_next = conjugate(f, step, jet_invert(step, D), D)
            g_next = germ_decompose(f_next)
            if g_next.nu != nu or any(g_next.part(j) != g.part(j) for j in range(1, e)):
                raise GermError(f"stage d={d} disturbed lower-degree terms")
            if g_next.part(e) != residual:
                raise GermError(f"stage d={d} left {g_next.part(e)} instead of {residual}")
            chi = jet_compose(chi, step, D)
            f, g = f_next, g_next
        stages.append(StageRecord(d, tuple(comp), bool(H), residual))
        log.debug("stage d=%d complement=%s removed=%s", d, comp, bool(H))
    return f, g, chi, stages


def normalize(f: JetMap, D: int | None = None,
              options: NormalizeOptions = NormalizeOptions()) -> NormalFormReport:
    """Formal normal form of ``f`` through total degree ``D`` (default ``f.degree``)."""
    if D is None:
        D = f.degree
    if f.degree < D:
        raise PreconditionError(f"input recorded through degree {f.degree} < {D}")
    f = f.truncate(D)
    g = germ_decompose(f)
    report = NormalFormReport(nu=g.nu, mu=g.mu, D=D)

    if g.mu >= 2:
        report.notes.append(f"(H3) fails: pure order {g.mu}; generic reduction with greedy complements, "
                            "no template claimed")
        report.tangential = tangentiality(g)
        if options.case_only:
            report.stopped_after = "classification"
            return report
        fhat, ghat, chi, stages = _stage_loop(
            f, g.nu, g.leading, lambda d, M: greedy_complement(M), D, options.validate_operator)
        report.normal_form, report.chi, report.stages = fhat, chi, stages
        report.tangential = tangentiality(ghat)
        return _certify(report, f, options)

    cls_report = linear_normalize_or_classify(g, options, report)
    if cls_report is None:
        return report
    lin = cls_report
    f_lin = lin.germ.reconstruct()
    if not lin.cls.satisfies_H4:
        report.notes.append(f"(H4) fails: class {lin.cls.label.display}; stopped after the linear stage")
        report.stopped_after = "linear"
        report.normal_form = f_lin
        report.chi = JetMap.identity(D)
        report.tangential = tangentiality(lin.germ)
        return _certify(report, f, options)

    case = report.case
    P1 = lin.germ.part(1)
    fhat, ghat, chi, stages = _stage_loop(
        f_lin, g.nu, P1, lambda d, M: case.complement(g.nu, d), D, options.validate_operator)
    report.normal_form, report.chi, report.stages = fhat, chi, stages
    report.canonical = lin.scale == ONE
    report.parameters = extract_parameters(case, g.nu, ghat.fo)
    if lin.scale == ONE:
        rebuilt = template_fo(case, g.nu, report.parameters, ghat.fo.degree)
        if rebuilt != ghat.fo:
            raise GermError("normal form is not of template shape")
    t = [c for c in report.parameters["t"] if c is not None]
    report.tangential = not any(t)
    return _certify(report, f, options)


def linear_normalize_or_classify(g: GermDecomposition, options: NormalizeOptions,
                                 report: NormalFormReport):
    """Classification, in_E verdict and linear stage; fills ``report`` and returns the stage result."""
    cls = classify_linear(g.part(1), g.nu)
    report.linear_class = cls
    if cls.label is LinearLabel.STAR1_LAMBDA:
        report.e_membership = in_E(cls.lam, g.nu)
    elif cls.label is LinearLabel.STAR1_1:
        report.e_membership = in_E(ONE, g.nu)
    if cls.satisfies_H4:
        report.case = dispatch_case(cls, g.nu)
    report.tangential = tangentiality(g)
    if options.case_only:
        report.stopped_after = "classification"
        return None
    lin = linear_normalize(g, permissive=options.permissive_scale)
    report.linear_change = lin.A
    report.scale = lin.scale
    report.root_equation = lin.root_equation
    if lin.root_equation is not None:
        report.notes.append(f"scaling skipped: {lin.root_equation} has no solution in Q(i); "
                            f"linear part is the template times {lin.scale}")
    return lin


def _certify(report: NormalFormReport, f: JetMap, options: NormalizeOptions) -> NormalFormReport:
    if not options.verify:
        report.verified = None
        return report
    check = verify_conjugacy(f, report.full_change, report.normal_form, report.D)
    report.verified = check.ok
    report.discrepancy = check.discrepancy
    return report
