"""Exact scalar arithmetic: rationals, perfect-square tests, bounded
factorization, and square-class (rationals modulo squares) utilities.

Rationals are plain ``fractions.Fraction`` (arbitrary precision, always in
lowest terms), integers are Python ints.  Nothing here ever rounds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import DomainError, IncompleteFactorization

# Squares modulo 256 / 255 / 253: cheap rejection before paying for isqrt.
_SQ_MOD_256 = frozenset((i * i) & 255 for i in range(256))
_SQ_MOD_255 = frozenset((i * i) % 255 for i in range(255))
_SQ_MOD_253 = frozenset((i * i) % 253 for i in range(253))


def is_square_int(n: int) -> bool:
    """True iff the integer n is a perfect square (0 counts)."""
    if n < 0:
        return False
    if n & 255 not in _SQ_MOD_256:
        return False
    if n % 255 not in _SQ_MOD_255:
        return False
    if n % 253 not in _SQ_MOD_253:
        return False
    r = math.isqrt(n)
    return r * r == n


def is_square(r: Fraction | int) -> bool:
    """True iff r is the square of a rational.  r = 0 -> True."""
    if isinstance(r, int):
        return is_square_int(r)
    return is_square_int(r.numerator) and is_square_int(r.denominator)


def sqrt_exact(r: Fraction | int) -> Fraction:
    """The nonnegative rational square root of a perfect square r."""
    f = Fraction(r)
    if not is_square(f):
        raise DomainError(f"{r} is not a rational square")
    return Fraction(math.isqrt(f.numerator), math.isqrt(f.denominator))


def parse_rational(s: str) -> Fraction:
    """Parse 'a' or 'a/b' into a Fraction."""
    return Fraction(s)


def format_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


# ---------------------------------------------------------------------------
# bounded factorization
# ---------------------------------------------------------------------------

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24 via fixed bases."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = 100_000
    rho_iterations: int = 200_000
    rho_restarts: int = 8


@dataclass
class Factorization:
    """sign * prod(p^e) * cofactor == n; cofactor == 1 iff complete."""

    sign: int
    factors: list[tuple[int, int]] = field(default_factory=list)
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        v = self.sign * self.cofactor
        for p, e in self.factors:
            v *= p**e
        return v

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if not self.complete:
            parts.append(f"C{self.cofactor}")
        s = "*".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + s


def _pollard_rho(n: int, budget: FactorBudget, rng: random.Random) -> Optional[int]:
    """Brent-cycle rho; returns a nontrivial factor of composite odd n or None."""
    if n % 2 == 0:
        return 2
    for _ in range(budget.rho_restarts):
        y = rng.randrange(2, n - 1)
        c = rng.randrange(1, n - 1)
        m = 128
        g, r, q = 1, 1, 1
        x = ys = y
        count = 0
        while g == 1 and count < budget.rho_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            count += r
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor_bounded(n: int, budget: FactorBudget | None = None) -> Factorization:
    """Trial division up to the budget bound, then Pollard rho with an
    iteration cap.  Incompleteness is reported via the cofactor, never raised.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    budget = budget or FactorBudget()
    sign = 1 if n > 0 else -1
    n = abs(n)
    found: dict[int, int] = {}

    def record(p: int) -> None:
        found[p] = found.get(p, 0) + 1

    for p in (2, 3, 5):
        while n % p == 0:
            record(p)
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    wi = 0
    while p * p <= n and p <= budget.trial_bound:
        while n % p == 0:
            record(p)
            n //= p
        p += wheel[wi]
        wi = (wi + 1) % 8
    if n > 1 and p * p > n:
        record(n)
        n = 1

    cofactor = 1
    if n > 1:
        rng = random.Random(0xC0FFEE ^ n)
        stack = [n]
        while stack:
            m = stack.pop()
            if is_probable_prime(m):
                record(m)
                continue
            d = _pollard_rho(m, budget, rng)
            if d is None:
                cofactor *= m
            else:
                stack.append(d)
                stack.append(m // d)

    factors = sorted(found.items())
    return Factorization(sign=sign, factors=factors, cofactor=cofactor)


def squarefree_kernel(n: int, budget: FactorBudget | None = None) -> int:
    """Signed squarefree part of n (n / largest square divisor).

    Requires the factorization to complete within the budget.
    """
    if n == 0:
        raise DomainError("0 has no squarefree kernel")
    fac = factor_bounded(n, budget)
    if not fac.complete:
        raise IncompleteFactorization(f"cannot certify squarefree kernel of {n}")
    k = fac.sign
    for p, e in fac.factors:
        if e % 2:
            k *= p
    return k


# ---------------------------------------------------------------------------
# square classes
# ---------------------------------------------------------------------------


class SquareClass:
    """A nonzero rational modulo nonzero rational squares.

    The class is carried lazily by any representative; the squarefree integer
    kernel is only computed on demand (it needs factorization, which orbit
    values quickly outgrow -- equality testing never factors anything).
    """

    __slots__ = ("value", "_kernel")

    def __init__(self, value: Fraction | int):
        v = Fraction(value)
        if v == 0:
            raise DomainError("square class of 0 is undefined")
        self.value = v
        self._kernel: Optional[int] = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SquareClass):
            return NotImplemented
        return is_square(self.value / other.value)

    def __hash__(self):  # classes with equal kernels collide, as they must
        return hash(self.value > 0)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(self.value * other.value)

    def is_trivial(self) -> bool:
        return is_square(self.value)

    def kernel(self, budget: FactorBudget | None = None) -> int:
        """Signed squarefree integer representing the class."""
        if self._kernel is None:
            n = self.value.numerator * self.value.denominator
            self._kernel = squarefree_kernel(n, budget)
        return self._kernel

    def __repr__(self):
        return f"SquareClass({format_rational(self.value)})"


def class_membership(
    target: Fraction | int | SquareClass,
    gens: Sequence[Fraction | int | SquareClass],
) -> Optional[tuple[int, ...]]:
    """Search for a subset S of gens with target * prod(S) a rational square.

    Returns the indices of the first such subset (ordered by subset size,
    then lexicographically), or None.  Checks all 2^len(gens) subsets with
    exact square tests -- no factorization, so huge orbit values are fine.
    An empty tuple means the target itself is already a square.
    """
    t = target.value if isinstance(target, SquareClass) else Fraction(target)
    if t == 0:
        raise DomainError("square-class membership of 0 is undefined")
    vals = [g.value if isinstance(g, SquareClass) else Fraction(g) for g in gens]
    if any(v == 0 for v in vals):
        raise DomainError("zero generator in square-class membership")
    for size in range(len(vals) + 1):
        for subset in combinations(range(len(vals)), size):
            prod = t
            for i in subset:
                prod *= vals[i]
            if is_square(prod):
                return subset
    return None
