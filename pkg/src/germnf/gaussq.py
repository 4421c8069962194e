"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts.

Both parts are ``gmpy2.mpq`` values, which are always kept in lowest terms with
a positive denominator.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq

__all__ = ["GaussQ", "parse_rational", "format_rational", "ZERO", "ONE", "I"]

_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> mpq:
    """Parse ``"p/q"`` or ``"p"`` into a reduced rational.

    Raises ValueError on malformed text or a zero denominator.
    """
    m = _RAT.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(num, den)


def format_rational(x) -> str:
    x = mpq(x)
    return f"{int(x.numerator)}/{int(x.denominator)}"


def _to_mpq(x):
    if isinstance(x, type(mpq())):
        return x
    if isinstance(x, (int, Fraction, Rational)) or type(x).__name__ == "mpz":
        return mpq(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class GaussQ:
    """An element ``re + im*i`` of Q(i).

    Instances are immutable and hashable. Arithmetic mixes freely with ``int``,
    ``Fraction`` and ``mpq`` operands. There is no float mode.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_mpq(re))
        object.__setattr__(self, "im", _to_mpq(im))

    @classmethod
    def _raw(cls, re, im) -> "GaussQ":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        return cls(x, 0)

    @classmethod
    def from_strings(cls, re: str, im: str) -> "GaussQ":
        return cls._raw(parse_rational(re), parse_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussQ is immutable")

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussQ):
            return self.re == other.re and self.im == other.im
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self) -> tuple:
        """Lexicographic key on (re, im), used wherever a canonical choice is needed."""
        return (self.re, self.im)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "GaussQ":
        return GaussQ._raw(-self.re, -self.im)

    def __pos__(self) -> "GaussQ":
        return self

    def __add__(self, other) -> "GaussQ":
        if not isinstance(other, GaussQ):
            other = GaussQ.coerce(other)
        return GaussQ._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussQ":
        if not isinstance(other, GaussQ):
            other = GaussQ.coerce(other)
        return GaussQ._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussQ":
        return GaussQ.coerce(other) - self

    def __mul__(self, other) -> "GaussQ":
        if not isinstance(other, GaussQ):
            other = GaussQ.coerce(other)
            return GaussQ._raw(self.re * other.re, self.im * other.re)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussQ._raw(a * c, b)
        return GaussQ._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self):
        """The field norm ``re**2 + im**2`` (a rational)."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussQ":
        return GaussQ._raw(self.re, -self.im)

    def inverse(self) -> "GaussQ":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussQ._raw(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "GaussQ":
        if not isinstance(other, GaussQ):
            other = GaussQ.coerce(other)
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussQ._raw(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "GaussQ":
        return GaussQ.coerce(other) / self

    def __pow__(self, n: int) -> "GaussQ":
        if not isinstance(n, int):
            raise TypeError("only integer powers are exact")
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- roots ------------------------------------------------------------
    def nth_roots(self, n: int) -> list["GaussQ"]:
        """All ``x`` in Q(i) with ``x**n == self``, sorted by ``sort_key``."""
        if n < 1:
            raise ValueError("root order must be positive")
        if not self:
            return [ZERO]
        # scale to a Gaussian integer G = self * m**n; roots of G in Q(i) lie in Z[i]
        m = int(gmpy2.lcm(self.re.denominator, self.im.denominator))
        g_re = int(self.re * m**n)
        g_im = int(self.im * m**n)
        norm = g_re * g_re + g_im * g_im
        root_norm, exact = gmpy2.iroot(gmpy2.mpz(norm), n)
        if not exact:
            return []
        candidates = _gaussian_integer_roots(g_re, g_im, n, int(root_norm))
        roots = sorted({GaussQ(mpq(a, m), mpq(b, m)) for a, b in candidates},
                       key=GaussQ.sort_key)
        return roots

    # -- presentation -----------------------------------------------------
    def to_strings(self) -> tuple[str, str]:
        return format_rational(self.re), format_rational(self.im)

    def __repr__(self) -> str:
        return f"GaussQ({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self) -> str:
        def fmt(x):
            return str(int(x.numerator)) if x.denominator == 1 else f"{int(x.numerator)}/{int(x.denominator)}"

        if not self.im:
            return fmt(self.re)
        if not self.re:
            return f"{fmt(self.im)}*i" if self.im != 1 else "i"
        sign = "+" if self.im > 0 else "-"
        mag = fmt(abs(self.im))
        return f"({fmt(self.re)} {sign} {mag}*i)" if mag != "1" else f"({fmt(self.re)} {sign} i)"


def _gaussian_integer_roots(g_re: int, g_im: int, n: int, root_norm: int) -> list[tuple[int, int]]:
    """Gaussian integers y with y**n == g_re + g_im*i, given |y|**2 == root_norm."""
    import mpmath

    digits = max(len(str(abs(g_re))), len(str(abs(g_im))), 1)
    found = []
    with mpmath.workdps(digits + 30):
        g = mpmath.mpc(g_re, g_im)
        r = mpmath.root(abs(g), n)
        theta = mpmath.arg(g)
        for j in range(n):
            z = r * mpmath.expj((theta + 2 * mpmath.pi * j) / n)
            a, b = int(mpmath.nint(z.real)), int(mpmath.nint(z.imag))
            if a * a + b * b != root_norm:
                continue
            y = GaussQ(a, b) ** n
            if y.re == g_re and y.im == g_im:
                found.append((a, b))
    return found


ZERO = GaussQ._raw(mpq(0), mpq(0))
ONE = GaussQ._raw(mpq(1), mpq(0))
I = GaussQ._raw(mpq(0), mpq(1))
