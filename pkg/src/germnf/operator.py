"""The homological operator ``L_{P,d}(H) = Jac(P) H - Jac(H) P + nu * (H1/z1) * P``.

``L_{P,d}`` maps ``V_d`` (pairs of degree-d forms whose first component is
divisible by z1) to ``Ṽ_{d+mu-1}``. Its image is exactly what a degree-d change
of coordinates ``id + H`` can remove from the degree ``mu+d-1`` part of ``fo``.

Two independent routes are provided: ``op_apply_definition`` evaluates the
definition with polynomial arithmetic, ``op_matrix`` assembles the matrix from
the closed-form monomial action. Tests check one against the other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CaseTableError, PreconditionError
from .gaussq import GaussQ, ZERO
from .jets import HomPair, poly_add, poly_deriv, poly_mul, poly_scale, poly_shift_z1, poly_sub
from .linalg import eliminate, mat_vec, rank


def op_apply_definition(P: HomPair, nu: int, H: HomPair) -> HomPair:
    """Evaluate ``L_{P,d}(H)`` straight from the definition."""
    if not H.in_V():
        raise PreconditionError("H must lie in V_d (first component divisible by z1)")
    p1, p2 = P.to_polys()
    h1, h2 = H.to_polys()
    h1_check = poly_shift_z1(h1, -1)
    out = []
    for p, h in ((p1, h1), (p2, h2)):
        jac_p_h = poly_add(poly_mul(poly_deriv(p, 0), h1), poly_mul(poly_deriv(p, 1), h2))
        jac_h_p = poly_add(poly_mul(poly_deriv(h, 0), p1), poly_mul(poly_deriv(h, 1), p2))
        term = poly_sub(jac_p_h, jac_h_p)
        term = poly_add(term, poly_scale(poly_mul(h1_check, p), nu))
        out.append(term)
    return HomPair.from_polys(H.degree + P.degree - 1, out[0], out[1])


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of ``L_{P,d}``.

    Row ``r`` is the coordinate on ``v_e^r`` (``e = d + mu - 1``, ``r = 0..2e+1``);
    column ``c`` (``c = 1..2d+1``) is the image of ``v_d^c``, stored at list
    position ``c - 1``.
    """

    nu: int
    mu: int
    d: int
    rows: tuple[tuple[GaussQ, ...], ...]

    @property
    def target_degree(self) -> int:
        return self.d + self.mu - 1

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), 2 * self.d + 1

    def entry(self, row: int, col: int) -> GaussQ:
        return self.rows[row][col - 1]

    def column(self, col: int) -> HomPair:
        e = self.target_degree
        return HomPair(e, {r: self.rows[r][col - 1] for r in range(2 * e + 2)})

    def apply(self, H: HomPair) -> HomPair:
        if not H.in_V() or H.degree != self.d:
            raise PreconditionError("argument must lie in V_d")
        x = [H[c] for c in range(1, 2 * self.d + 2)]
        y = mat_vec(self.rows, x)
        return HomPair(self.target_degree, dict(enumerate(y)))

    def rank(self) -> int:
        return rank([list(r) for r in self.rows])

    def nonzero_entries(self) -> set[tuple[int, int]]:
        return {(r, c + 1) for r, row in enumerate(self.rows) for c, x in enumerate(row) if x}


def op_matrix(P: HomPair, nu: int, d: int, *, validate: bool = False) -> OperatorMatrix:
    """Assemble ``L_{P,d}`` from the monomial-action formulas.

    With ``P^mu = (sum_i a1_i z1^i z2^(mu-i), sum_i a2_i z1^i z2^(mu-i))`` and the
    padding ``a1_{mu+1} = 0 = a2_{-1}``:

    * ``v_d^h`` (h=1..d) goes to ``sum_i [(nu+i-h) a1_i - (d-h) a2_{i-1}]`` on the
      first-component monomial ``z1^(h+i-1)`` plus ``sum_i (nu+i) a2_i`` on the
      second-component monomial ``z1^(h+i-1)``;
    * ``v_d^{k+d+1}`` (k=0..d) goes to ``sum_i (mu-i) a1_i`` on first-component
      ``z1^(k+i)`` plus ``sum_i [(mu+k+1-d-i) a2_{i-1} - k a1_i]`` on
      second-component ``z1^(k+i-1)``.

    Second-component rows are addressed relative to the target degree
    ``e = d+mu-1`` (row ``j + e + 1`` for ``z1^j``); for mu = 1 this coincides
    with the ``v^{h+i+d}`` indexing of the degree-one formulas.

    ``validate=True`` re-derives every column from the definition and raises
    CaseTableError on any mismatch.
    """
    if d < 2:
        raise PreconditionError("d must be at least 2")
    mu = P.degree
    e = d + mu - 1
    p1, p2 = P.to_polys()

    def a1(i):
        return p1.get((i, mu - i), ZERO) if 0 <= i <= mu else ZERO

    def a2(i):
        return p2.get((i, mu - i), ZERO) if 0 <= i <= mu else ZERO

    nrows, ncols = 2 * e + 2, 2 * d + 1
    M = [[ZERO] * ncols for _ in range(nrows)]

    def put(row_comp: int, j: int, col: int, value: GaussQ):
        if not value:
            return
        if not 0 <= j <= e:
            raise CaseTableError(f"nonzero coefficient outside the target basis (j={j})")
        r = j if row_comp == 0 else j + e + 1
        M[r][col - 1] = M[r][col - 1] + value

    for h in range(1, d + 1):
        for i in range(0, mu + 2):
            put(0, h + i - 1, h, a1(i) * (nu + i - h) - a2(i - 1) * (d - h))
        for i in range(0, mu + 1):
            put(1, h + i - 1, h, a2(i) * (nu + i))
    for k in range(0, d + 1):
        col = k + d + 1
        for i in range(0, mu):
            put(0, k + i, col, a1(i) * (mu - i))
        for i in range(0, mu + 2):
            put(1, k + i - 1, col, a2(i - 1) * (mu + k + 1 - d - i) - a1(i) * k)

    out = OperatorMatrix(nu=nu, mu=mu, d=d, rows=tuple(tuple(r) for r in M))
    if validate:
        for c in range(1, ncols + 1):
            ref = op_apply_definition(P, nu, HomPair.basis(d, c))
            if out.column(c) != ref:
                raise CaseTableError(f"operator column v_{d}^{c} disagrees with the definition")
    return out


def solve_stage(target: HomPair, M: OperatorMatrix,
                complement: Sequence[int]) -> tuple[HomPair, HomPair]:
    """Split ``target = M H + residual`` with ``residual`` supported on ``complement``.

    ``complement`` is checked to span a complement of the column space of ``M``
    (CaseTableError otherwise). When ``M`` has a kernel, the free coordinates of
    ``H`` are set to zero: columns are eliminated from ``v^{2d+1}`` down to
    ``v^1``, each pivoting on its lowest available row, which for triangular
    operators means a zero diagonal entry leaves its coordinate at zero.
    """
    e = M.target_degree
    if target.degree != e:
        raise PreconditionError(f"target has degree {target.degree}, operator maps into degree {e}")
    nrows, ncols = M.shape
    comp = list(complement)
    if len(set(comp)) != len(comp) or any(not 0 <= c < nrows for c in comp):
        raise CaseTableError(f"malformed complement {comp}")
    # augmented layout: [M columns | complement unit columns | target]
    width = ncols + len(comp) + 1
    work = []
    for r in range(nrows):
        row = list(M.rows[r]) + [ZERO] * (len(comp) + 1)
        for j, c in enumerate(comp):
            if c == r:
                row[ncols + j] = GaussQ(1)
        row[width - 1] = target[r]
        work.append(row)
    order = list(range(ncols - 1, -1, -1)) + list(range(ncols, ncols + len(comp)))
    pivots = eliminate(work, order)
    m_rank = sum(1 for c in pivots if c < ncols)
    if m_rank + len(comp) != nrows or any(ncols + j not in pivots for j in range(len(comp))):
        raise CaseTableError(
            f"complement {comp} does not span a complement of Im L (d={M.d}, rank={m_rank})")
    rhs = width - 1
    h_coeffs = {c + 1: work[r][rhs] for c, r in pivots.items() if c < ncols}
    res_coeffs = {comp[j]: work[pivots[ncols + j]][rhs] for j in range(len(comp))}
    H = HomPair(M.d, h_coeffs)
    residual = HomPair(e, res_coeffs)
    if M.apply(H) + residual != target:
        raise CaseTableError("stage reconstruction failed")
    return H, residual


def greedy_complement(M: OperatorMatrix) -> list[int]:
    """Basis vectors of the target space, in index order, not already spanned by Im L and earlier picks."""
    nrows, ncols = M.shape
    cols = [[M.rows[r][c] for r in range(nrows)] for c in range(ncols)]
    chosen: list[int] = []
    current = rank([list(col) for col in cols]) if cols else 0
    for r in range(nrows):
        unit = [GaussQ(1) if i == r else ZERO for i in range(nrows)]
        trial = cols + [[GaussQ(1) if i == c else ZERO for i in range(nrows)] for c in chosen] + [unit]
        if rank(trial) > current:
            chosen.append(r)
            current += 1
        if current == nrows:
            break
    return chosen
