"""Diagonal elements of the operator for ``P^1 = (lambda z1, z2)`` and the resonance set E.

For the linear template ``(lambda z1, z2)`` the operator is lower triangular with
diagonal entries

    sigma(d, h) = (nu + 1 - h) * lambda - (d - h)     h = 1..d
    tau(d, k)   = (k + 1 - d) - k * lambda           k = 0..d

``sigma(nu+1, nu+1)`` vanishes identically. E collects the lambdas that make any
other diagonal entry vanish; in closed form it is

    E = U_{q=1..nu} (1/q)N  u  {1/d : d >= 2}  u  {0}  u  Q^-
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from gmpy2 import mpq

from .errors import PreconditionError
from .gaussq import GaussQ

Kind = Literal["sigma", "tau"]


@dataclass(frozen=True, order=True)
class ResonanceWitness:
    kind: Kind
    d: int
    index: int

    def __post_init__(self):
        if self.d < 2:
            raise PreconditionError("witness degree must be at least 2")
        lo = 1 if self.kind == "sigma" else 0
        if not lo <= self.index <= self.d:
            raise PreconditionError(f"{self.kind} index {self.index} out of range for d={self.d}")


def sigma(lam: GaussQ, nu: int, d: int, h: int) -> GaussQ:
    return GaussQ.coerce(lam) * (nu + 1 - h) - (d - h)


def tau(lam: GaussQ, d: int, k: int) -> GaussQ:
    return GaussQ(k + 1 - d) - GaussQ.coerce(lam) * k


def sigma_tau(lam: GaussQ, nu: int, w: ResonanceWitness) -> GaussQ:
    if w.kind == "sigma":
        return sigma(lam, nu, w.d, w.index)
    return tau(lam, w.d, w.index)


@dataclass(frozen=True)
class EMembership:
    member: bool
    component: str | None = None  # "(1/q)N", "1/d", "0", "Q-"
    p: int | None = None
    q: int | None = None

    def __bool__(self) -> bool:
        return self.member


def rational_parts(lam: GaussQ) -> tuple[int, int] | None:
    """``(p, q)`` with ``lam = p/q`` in lowest terms, ``q > 0``; None if ``lam`` is not real."""
    lam = GaussQ.coerce(lam)
    if not lam.is_real():
        return None
    return int(lam.re.numerator), int(lam.re.denominator)


def in_E(lam: GaussQ, nu: int) -> EMembership:
    """Closed-form membership test; components are tried in the order they are listed above."""
    pq = rational_parts(lam)
    if pq is None:
        return EMembership(False)
    p, q = pq
    if p > 0 and q <= nu:
        return EMembership(True, "(1/q)N", p, q)
    if p == 1 and q >= 2:
        return EMembership(True, "1/d", p, q)
    if p == 0:
        return EMembership(True, "0", 0, 1)
    if p < 0:
        return EMembership(True, "Q-", p, q)
    return EMembership(False, None, p, q)


def witness_scan(lam: GaussQ, nu: int, d_max: int) -> list[ResonanceWitness]:
    """Every vanishing diagonal element with ``d <= d_max``, skipping ``sigma(nu+1, nu+1)``.

    A brute-force scan over all ``(d, h)`` and ``(d, k)``; for rational ``lam = p/q``
    it runs on cleared-denominator integers instead of field elements.
    """
    if d_max < 2:
        raise PreconditionError("d_max must be at least 2")
    lam = GaussQ.coerce(lam)
    pq = rational_parts(lam)
    if pq is not None:
        p, q = pq

        def sigma_zero(d, h):
            return (nu + 1 - h) * p == (d - h) * q

        def tau_zero(d, k):
            return (k + 1 - d) * q == k * p
    else:
        def sigma_zero(d, h):
            return not sigma(lam, nu, d, h)

        def tau_zero(d, k):
            return not tau(lam, d, k)

    out = []
    for d in range(2, d_max + 1):
        for h in range(1, d + 1):
            if (d, h) != (nu + 1, nu + 1) and sigma_zero(d, h):
                out.append(ResonanceWitness("sigma", d, h))
        for k in range(0, d + 1):
            if tau_zero(d, k):
                out.append(ResonanceWitness("tau", d, k))
    return out


def scan_bound(p: int, q: int, nu: int) -> int:
    """Degree bound large enough for every closed-form component to produce a witness for ``p/q``."""
    return nu + 1 + q * (abs(p) + nu + 2)


def as_gaussq(p: int, q: int = 1) -> GaussQ:
    return GaussQ(mpq(p, q))
