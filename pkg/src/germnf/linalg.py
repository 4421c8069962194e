"""Dense Gauss-Jordan elimination over Q(i).

Matrices are lists of row lists of GaussQ. The elimination visits columns in a
caller-chosen order and pivots each on the lowest-index unused row with a
nonzero entry, so the set of free (kernel) columns is deterministic.
"""
from __future__ import annotations

from typing import Sequence

from .gaussq import GaussQ, ZERO


def eliminate(rows: list[list[GaussQ]], col_order: Sequence[int]) -> dict[int, int]:
    """Reduce ``rows`` in place; return the ``{column: pivot_row}`` map.

    Columns not listed in ``col_order`` (e.g. right-hand sides) are carried along.
    """
    pivots: dict[int, int] = {}
    used: set[int] = set()
    n = len(rows)
    for c in col_order:
        r = next((i for i in range(n) if i not in used and rows[i][c]), None)
        if r is None:
            continue
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        pr = rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y if y else x for x, y in zip(rows[i], pr)]
        pivots[c] = r
        used.add(r)
    return pivots


def rank(rows: Sequence[Sequence[GaussQ]]) -> int:
    if not rows:
        return 0
    work = [list(r) for r in rows]
    return len(eliminate(work, range(len(work[0]))))


def mat_vec(rows: Sequence[Sequence[GaussQ]], x: Sequence[GaussQ]) -> list[GaussQ]:
    out = []
    for row in rows:
        acc = ZERO
        for a, b in zip(row, x):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out
