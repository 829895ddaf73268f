"""Stage-by-stage maximality certificates for the Galois groups of iterates
of x^2 + c inside the automorphism group of the binary preimage tree.

The certificate at stage k is a square-class computation: the quadratic
subfields of the splitting field of f^(k-1) are multiplicatively generated by
-c, f^2(0), ..., f^(k-1)(0) while all earlier stages are maximal, so stage k
degenerates exactly when f^k(0) times a subset product of those generators is
a rational square.  A witness subset is returned whenever one exists.
Necessity of the generator list is proven through stage 4 and inductive
beyond, which the reports flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .dynamics import DEFAULT_ORBIT_CAP, orbit
from .errors import DomainError, IncompleteFactorization
from .exact import (
    FactorBudget,
    SquareClass,
    class_membership,
    factor_bounded,
    format_rational,
    is_square,
)

MAXIMAL = "maximal"
NON_MAXIMAL = "non_maximal"
REDUCIBLE = "reducible_obstruction"
UNKNOWN = "unknown"

# Generator-list necessity is displayed through K_3 and extends to stage 4;
# for stages >= 5 it rests on the same induction, so Maximal there is
# reported with basis "induction" rather than "certified".
_CERTIFIED_THROUGH = 4


@dataclass
class Stage:
    k: int
    status: str
    witness: Optional[list[Fraction]] = None
    basis: str = "certified"

    def to_json(self) -> dict:
        out = {"k": self.k, "status": self.status}
        if self.status != UNKNOWN:
            out["basis"] = self.basis
        if self.witness is not None:
            out["witness"] = [format_rational(w) for w in self.witness]
        return out


@dataclass
class StageReport:
    c: Fraction
    n: int
    stages: list[Stage]

    def status(self, k: int) -> str:
        return self.stages[k - 1].status

    def all_maximal_through(self, k: int) -> bool:
        return all(s.status == MAXIMAL for s in self.stages[:k])

    def newly_small_at(self, k: int) -> bool:
        """Stages 1..k-1 maximal, stage k degenerate (either flavour)."""
        return self.all_maximal_through(k - 1) and self.status(k) in (
            NON_MAXIMAL,
            REDUCIBLE,
        )

    def index_lower_bound(self) -> int:
        return 2 if any(s.status in (NON_MAXIMAL, REDUCIBLE) for s in self.stages) else 1

    def to_json(self) -> dict:
        return {
            "c": format_rational(self.c),
            "stages": [s.to_json() for s in self.stages],
            "tree_order": str(tree_order(self.n)),
            "index_lower_bound": self.index_lower_bound(),
        }


def tree_order(n: int) -> int:
    """Order of the full automorphism group of the depth-n binary tree: 2^(2^n - 1)."""
    if n < 1:
        raise DomainError("need n >= 1")
    return 2 ** (2**n - 1)


def subfield_generators(c: Fraction | int, m: int, cap: int = DEFAULT_ORBIT_CAP) -> list[SquareClass]:
    """[-c, f^2(0), ..., f^m(0)] as square classes.

    Under the all-stages-maximal hypothesis these generate the group of
    quadratic subfields of the splitting field of f^m.
    """
    if m < 1:
        raise DomainError("need m >= 1")
    c = Fraction(c)
    if c == 0:
        raise DomainError("generator -c is zero")
    orb = orbit(c, m, cap=cap) if m >= 2 else None
    gens = [SquareClass(-c)]
    for j in range(2, m + 1):
        v = orb.value(j)
        if v == 0:
            raise DomainError(f"f^{j}(0) = 0: critical orbit hits 0")
        gens.append(SquareClass(v))
    return gens


def stage_status(c: Fraction | int, n: int, cap: int = DEFAULT_ORBIT_CAP) -> StageReport:
    """Certificates for stages 1..n.

    Stage 1 is maximal iff -c is not a square.  At stage k >= 2 (all earlier
    stages maximal), a subset-square witness over the generators of the
    previous splitting field certifies non-maximality; an empty witness means
    f^k(0) is itself a square, which obstructs irreducibility.  Once any
    stage degenerates, later stages are reported unknown.
    """
    c = Fraction(c)
    stages: list[Stage] = []
    orb = orbit(c, n, cap=cap)
    gen_vals: list[Fraction] = [-c]
    broken = False
    for k in range(1, n + 1):
        if broken:
            stages.append(Stage(k=k, status=UNKNOWN))
            continue
        if k == 1:
            if c == 0 or is_square(-c):
                stages.append(Stage(k=1, status=REDUCIBLE, witness=[]))
                broken = True
            else:
                stages.append(Stage(k=1, status=MAXIMAL))
            continue
        vk = orb.value(k)
        if vk == 0:
            stages.append(Stage(k=k, status=REDUCIBLE, witness=[]))
            broken = True
            continue
        subset = class_membership(vk, gen_vals)
        basis = "certified" if k <= _CERTIFIED_THROUGH else "induction"
        if subset is None:
            stages.append(Stage(k=k, status=MAXIMAL, basis=basis))
            gen_vals.append(vk)
        elif subset == ():
            stages.append(Stage(k=k, status=REDUCIBLE, witness=[]))
            broken = True
        else:
            stages.append(
                Stage(k=k, status=NON_MAXIMAL, witness=[gen_vals[i] for i in subset])
            )
            broken = True
    return StageReport(c=c, n=n, stages=stages)


# ---------------------------------------------------------------------------
# scans for newly small iterates
# ---------------------------------------------------------------------------


def _int_candidates(bound: int) -> Iterable[Fraction]:
    yield Fraction(0)
    for h in range(1, bound + 1):
        yield Fraction(-h)
        yield Fraction(h)


def _rational_candidates(height: int) -> Iterable[Fraction]:
    cands = []
    for den in range(1, height + 1):
        for num in range(-height, height + 1):
            if math.gcd(abs(num), den) == 1:
                cands.append(Fraction(num, den))
    cands.sort(key=lambda c: (max(abs(c.numerator), c.denominator), c.numerator, c.denominator))
    return cands


def _newly_small_int(c: int, n: int) -> bool:
    """Integer fast path of the stage certificates, avoiding Fractions."""
    if c == 0 or is_square(-c):
        return False
    gens = [-c]
    v = c
    for k in range(2, n + 1):
        v = v * v + c
        hit = None
        if v == 0:
            hit = True
        else:
            hit = _subset_square_int(v, gens)
        if k < n:
            if hit:
                return False
            gens.append(v)
        else:
            return bool(hit)
    return False


def _subset_square_int(target: int, gens: list[int]) -> bool:
    for mask in range(1 << len(gens)):
        prod = target
        m = mask
        i = 0
        while m:
            if m & 1:
                prod *= gens[i]
            m >>= 1
            i += 1
        if prod >= 0 and is_square(prod):
            return True
    return False


def scan_newly_small(
    n: int,
    int_bound: int | None = None,
    height: int | None = None,
    threads: int = 1,
) -> list[Fraction]:
    """All c in range whose iterate tower first degenerates exactly at stage n.

    Modes: integers |c| <= int_bound, or rationals of height <= height
    (height of a/b in lowest terms is max(|a|, b)).  Enumeration order is by
    height, then numerator, so output order is deterministic.
    """
    if n not in (2, 3, 4, 5):
        raise DomainError("scan supported for n in 2..5")
    if (int_bound is None) == (height is None):
        raise DomainError("give exactly one of int_bound / height")
    out: list[Fraction] = []
    if int_bound is not None:
        candidates = list(_int_candidates(int_bound))
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            chunk = max(1024, len(candidates) // (8 * threads))
            blocks = [candidates[i : i + chunk] for i in range(0, len(candidates), chunk)]

            def work(block):
                return [c for c in block if _newly_small_int(int(c), n)]

            with ThreadPoolExecutor(max_workers=threads) as ex:
                for found in ex.map(work, blocks):
                    out.extend(found)
        else:
            out = [c for c in candidates if _newly_small_int(int(c), n)]
    else:
        for c in _rational_candidates(height):
            if c == 0:
                continue
            report = stage_status(c, n)
            if report.newly_small_at(n):
                out.append(c)
    return out


# ---------------------------------------------------------------------------
# the Hall-type bound apparatus for integer c
# ---------------------------------------------------------------------------


def hall_candidate_d(
    c: int, n: int, budget: FactorBudget | None = None, cap: int = DEFAULT_ORBIT_CAP
) -> list[int]:
    """Candidate squarefree twists d for stage n: all +/- products of distinct
    primes dividing 2 * prod_{j <= floor(n/2)} f^j(0), including +/-1.

    Raises IncompleteFactorization when the budget cannot certify the support.
    """
    if int(c) != c:
        raise DomainError("integer c required")
    c = int(c)
    m = n // 2
    orb = orbit(c, max(m, 1), cap=cap)
    prod = 2
    for j in range(1, m + 1):
        vj = orb.value(j)
        if vj == 0:
            raise DomainError("critical orbit hits 0")
        prod *= int(vj)
    fac = factor_bounded(prod, budget)
    if not fac.complete:
        raise IncompleteFactorization(f"support of {prod} not certified")
    support = fac.primes()
    ds = []
    for mask in range(1 << len(support)):
        d = 1
        for i in range(len(support)):
            if mask >> i & 1:
                d *= support[i]
        ds.extend((d, -d))
    return sorted(ds)


def mordell_bound_scan(
    c: int = 3, budget: FactorBudget | None = None
) -> dict:
    """The finite verification backing the rank-style index claim at c=3.

    Part (a): for each n, test the explicit height inequality
    f^(n-1)(0) < 26214400 * (f^(floor(n/2)+1)(0))^17 + 1 that a square witness
    at stage n would force; reported per n through 14.
    Part (b): for 2 <= n <= 13, test whether f^n(0)*d is a square for some
    candidate d that moreover lies in the square-class group generated by
    -c, f^2(0), ..., f^(n-1)(0); the side condition is what pins the witness
    twist to an actual quadratic subfield one level down.  Collects the n
    that admit a witness, with (d, y).
    """
    if c != 3:
        raise DomainError("the scan is specific to c = 3")
    orb = orbit(c, 14, cap=16)
    inequality = {}
    for n in range(2, 15):
        lhs = orb.value(n - 1)
        rhs = 26214400 * orb.value(n // 2 + 1) ** 17 + 1
        inequality[n] = lhs < rhs
    witnesses = {}
    for n in range(2, 14):
        vn = int(orb.value(n))
        gens = [Fraction(-c)] + [orb.value(j) for j in range(2, n)]
        for d in hall_candidate_d(c, n, budget):
            if d > 0 and vn % d == 0 and is_square(vn // d):
                if class_membership(d, gens) is not None:
                    witnesses[n] = (d, math.isqrt(vn // d))
                    break
    return {
        "c": c,
        "inequality_holds": inequality,
        "square_witness_n": sorted(witnesses),
        "witnesses": witnesses,
    }
