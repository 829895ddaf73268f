"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored low-to-high; the zero polynomial is the empty list.
Resultants go through a fraction-free subresultant remainder sequence on
integerized polynomials, so intermediate values stay integral and bounded
instead of accumulating rational blowup.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .exact import format_rational, parse_rational


class RatPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int | str]):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "RatPoly":
        return RatPoly([])

    @staticmethod
    def const(c) -> "RatPoly":
        return RatPoly([c])

    @staticmethod
    def x() -> "RatPoly":
        return RatPoly([0, 1])

    @staticmethod
    def monomial(k: int, c=1) -> "RatPoly":
        return RatPoly([0] * k + [c])

    @staticmethod
    def from_strings(strs: Sequence[str]) -> "RatPoly":
        """Repo-wide JSON format: array of 'a' / 'a/b' strings, low-to-high."""
        return RatPoly([parse_rational(s) for s in strs])

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(
            [self[i] + other[i] for i in range(n)]
        )

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return RatPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = RatPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise DomainError("division by zero polynomial")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = list(self.coeffs)
        d = other.degree
        lo = other.lc
        while len(r) - 1 >= d and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            c = r[-1] / lo
            q[k] = c
            for i in range(d + 1):
                r[k + i] -= c * other.coeffs[i]
        return RatPoly(q), RatPoly(r)

    def exact_div(self, other: "RatPoly") -> "RatPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DomainError("division was not exact")
        return q

    # -- evaluation / substitution -------------------------------------------

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "RatPoly") -> "RatPoly":
        """self(inner(x)) by Horner over polynomials."""
        acc = RatPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + RatPoly.const(c)
        return acc

    def substitute_linear(self, a, b) -> "RatPoly":
        """self(a*x + b)."""
        return self.compose(RatPoly([b, a]))

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- integerization ------------------------------------------------------

    def denominator_lcm(self) -> int:
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def integerized(self) -> tuple[list[int], int]:
        """(D*self as int coefficient list, D) for D the denominator lcm."""
        d = self.denominator_lcm()
        return [int(c * d) for c in self.coeffs], d

    # -- display -------------------------------------------------------------

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(format_rational(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    terms.append(xs)
                elif c == -1:
                    terms.append(f"-{xs}")
                else:
                    terms.append(f"{format_rational(c)}*{xs}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


# ---------------------------------------------------------------------------
# fraction-free resultants
# ---------------------------------------------------------------------------


def _deg(a: list[int]) -> int:
    return len(a) - 1


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g or 1


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b, exactly."""
    r = list(a)
    db = _deg(b)
    lb = b[-1]
    e = _deg(a) - db + 1
    while r and _deg(r) >= db:
        lr = r[-1]
        shift = _deg(r) - db
        nr = [lb * c for c in r[:-1]]
        for i, c in enumerate(b[:-1]):
            nr[shift + i] -= lr * c
        r = _trim(nr)
        e -= 1
    if e > 0:
        f = lb**e
        r = [c * f for c in r]
    return r


def _exact_divide(a: list[int], d: int) -> list[int]:
    out = []
    for c in a:
        q, rem = divmod(c, d)
        if rem:
            raise AssertionError("subresultant division was not exact")
        out.append(q)
    return out


def resultant_int(a: list[int], b: list[int]) -> int:
    """Resultant of two nonzero integer polynomials via the subresultant
    pseudo-remainder sequence (fraction-free, bounded intermediates).
    """
    if not a or not b:
        raise DomainError("resultant of zero polynomial")
    s = 1
    if _deg(a) < _deg(b):
        if (_deg(a) * _deg(b)) % 2:
            s = -s
        a, b = b, a
    if _deg(b) == 0:
        return s * b[0] ** _deg(a)
    ca, cb = _content(a), _content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    t = s * ca ** _deg(b) * cb ** _deg(a)
    g = h = 1
    s = 1
    while True:
        da, db = _deg(a), _deg(b)
        delta = da - db
        if (da & 1) and (db & 1):
            s = -s
        r = _prem(a, b)
        if not r:
            return 0
        a = b
        b = _exact_divide(r, g * h**delta)
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            q, rem = divmod(g**delta, h ** (delta - 1))
            if rem:
                raise AssertionError("subresultant h-update was not exact")
            h = q
        if _deg(b) == 0:
            break
    da = _deg(a)
    num = b[0] ** da
    if da > 1:
        q, rem = divmod(num, h ** (da - 1))
        if rem:
            raise AssertionError("subresultant finish was not exact")
        num = q
    return s * t * num


def resultant(p: RatPoly, q: RatPoly) -> Fraction:
    """Res(p, q) with the usual convention Res(p,q) = (-1)^(deg p deg q) Res(q,p)."""
    if p.is_zero() or q.is_zero():
        raise DomainError("resultant of zero polynomial")
    pi, dp = p.integerized()
    qi, dq = q.integerized()
    r = resultant_int(pi, qi)
    return Fraction(r, dp ** q.degree * dq ** p.degree)


def discriminant(p: RatPoly) -> Fraction:
    """disc(p) = (-1)^(d(d-1)/2) * Res(p, p') / lc(p); zero iff p not squarefree."""
    d = p.degree
    if d < 1:
        raise DomainError("discriminant needs degree >= 1")
    if d == 1:
        return Fraction(1)
    r = resultant(p, p.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * r / p.lc


def is_squarefree(p: RatPoly) -> bool:
    return p.degree >= 1 and (p.degree == 1 or discriminant(p) != 0)
