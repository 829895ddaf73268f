import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from itercurves.errors import DomainError, IncompleteFactorization
from itercurves.exact import (
    FactorBudget,
    SquareClass,
    class_membership,
    factor_bounded,
    is_square,
    is_square_int,
    sqrt_exact,
    squarefree_kernel,
)

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13, 15, 17, 19, 21, 2021]


def test_is_square_examples():
    assert is_square(1764)          # 42^2
    assert not is_square(147)       # 3 * 7^2
    assert not is_square(-4)
    assert is_square(0)
    assert is_square(Fraction(49, 64))
    assert not is_square(Fraction(49, 63))


@given(st.integers(min_value=-(10**30), max_value=10**30))
def test_square_of_anything_is_square(n):
    assert is_square_int(n * n)


@given(st.integers(min_value=1, max_value=10**20), st.sampled_from(SQUAREFREE))
def test_squarefree_multiple_is_not_square(n, k):
    assert not is_square_int(n * n * k)


@given(
    st.fractions(
        min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=1000
    ).filter(lambda r: r != 0)
)
def test_sqrt_exact_roundtrip(r):
    s = sqrt_exact(r * r)
    assert s * s == r * r and s >= 0


def test_factor_bounded_examples():
    f = factor_bounded(21612)
    assert f.complete and f.factors == [(2, 2), (3, 1), (1801, 1)]
    assert f.value() == 21612
    f2 = factor_bounded(147)
    assert f2.complete and f2.factors == [(3, 1), (7, 2)]
    f3 = factor_bounded(-360)
    assert f3.sign == -1 and f3.value() == -360


def test_factor_bounded_budget_exhaustion():
    p = 2425967623052370772757633156976982469681  # 40-digit prime
    q = 3317044064679887385961981874994585012923
    tight = FactorBudget(trial_bound=100, rho_iterations=50, rho_restarts=1)
    f = factor_bounded(p * q, tight)
    assert not f.complete
    assert f.value() == p * q  # cofactor keeps the product exact


def test_factor_roundtrip_random():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(2, 10**12)
        f = factor_bounded(n)
        assert f.complete and f.value() == n
        ps = f.primes()
        assert ps == sorted(set(ps))


def test_squarefree_kernel():
    assert squarefree_kernel(147) == 3
    assert squarefree_kernel(-12) == -3
    assert squarefree_kernel(1764) == 1
    with pytest.raises(IncompleteFactorization):
        squarefree_kernel(
            2425967623052370772757633156976982469681
            * 3317044064679887385961981874994585012923,
            FactorBudget(trial_bound=100, rho_iterations=50, rho_restarts=1),
        )


def test_square_class_equality_without_factoring():
    huge = Fraction(3) * (10**200 + 7) ** 2
    assert SquareClass(huge) == SquareClass(3)
    assert SquareClass(huge) != SquareClass(-3)
    assert SquareClass(Fraction(147)) == SquareClass(3)
    assert SquareClass(12).kernel() == 3
    assert SquareClass(Fraction(-20, 9)).kernel() == -5
    with pytest.raises(DomainError):
        SquareClass(0)


def _membership_oracle(target, gens):
    """Independent exhaustive recheck, bit-mask enumeration."""
    hits = []
    for mask in range(1 << len(gens)):
        prod = Fraction(target)
        for i in range(len(gens)):
            if mask >> i & 1:
                prod *= Fraction(gens[i])
        if is_square(prod):
            hits.append(tuple(i for i in range(len(gens)) if mask >> i & 1))
    return hits


def test_class_membership_examples():
    assert class_membership(147, [-3, 12]) == (1,)       # 147*12 = 42^2
    assert class_membership(4, []) == ()
    assert class_membership(5, [-1, 2]) is None


def test_class_membership_against_oracle():
    rng = random.Random(5)
    for _ in range(200):
        k = rng.randint(0, 4)
        gens = [rng.choice(SQUAREFREE) * rng.choice([1, -1]) for _ in range(k)]
        target = rng.choice(SQUAREFREE) * rng.choice([1, -1]) * rng.randint(1, 30) ** 2
        got = class_membership(target, gens)
        hits = _membership_oracle(target, gens)
        if got is None:
            assert hits == []
        else:
            assert got in hits
            prod = Fraction(target)
            for i in got:
                prod *= gens[i]
            assert is_square(prod)


def test_class_membership_rejects_zero():
    with pytest.raises(DomainError):
        class_membership(0, [2])
    with pytest.raises(DomainError):
        class_membership(3, [0])
