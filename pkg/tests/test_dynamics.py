from fractions import Fraction as F

import pytest

from itercurves.dynamics import (
    QuadraticMap,
    chebyshev_identity_check,
    cycle_resultant_support,
    disc_recurrence_check,
    iterate_poly,
    orbit,
)
from itercurves.errors import CapExceeded, DomainError
from itercurves.ratpoly import RatPoly, discriminant


def test_orbit_examples():
    assert orbit(3, 4).values == [3, 12, 147, 21612]
    assert orbit(-2, 5).values == [-2, 2, 2, 2, 2]
    assert orbit(-1, 4).values == [-1, 0, -1, 0]
    assert orbit(F(2, 3), 2).values == [F(2, 3), F(10, 9)]


def test_orbit_recurrence_property():
    for c in (F(1), F(-7, 5), F(3), F(22, 7)):
        orb = orbit(c, 8)
        assert orb.values[0] == c
        for k in range(1, 8):
            assert orb.values[k] == orb.values[k - 1] ** 2 + c


def test_orbit_cap():
    with pytest.raises(CapExceeded):
        orbit(2, 17)
    assert len(orbit(2, 17, cap=17).values) == 17
    with pytest.raises(CapExceeded):
        orbit(2, 5).value(6)


def test_orbit_monotone_for_positive_integer_c():
    for c in range(1, 51):
        vals = orbit(c, 10).values
        assert all(vals[i] < vals[i + 1] for i in range(9))


def test_iterate_poly_examples():
    assert iterate_poly(3, 2) == RatPoly([12, 0, 6, 0, 1])
    assert iterate_poly(F(5, 7), 1) == RatPoly([F(5, 7), 0, 1])
    assert iterate_poly(0, 3) == RatPoly.monomial(8, 1)


def test_iterate_poly_consistency():
    for c in (F(3), F(-2), F(1, 2)):
        f = RatPoly([c, 0, 1])
        for n in range(2, 6):
            p = iterate_poly(c, n)
            assert p == iterate_poly(c, n - 1).compose(f)
            assert p[0] == orbit(c, n).value(n)
            assert p.degree == 2**n


def test_iterate_poly_cap():
    with pytest.raises(CapExceeded):
        iterate_poly(1, 13)


def test_iterate_composition_identity():
    # f^a o f^b = f^(a+b): what makes the tower coverings compose
    for c in (F(3), F(-2), F(2, 3)):
        for a in (1, 2):
            for b in (1, 2, 3):
                assert iterate_poly(c, a).compose(iterate_poly(c, b)) == iterate_poly(c, a + b)


def test_quadratic_map():
    f = QuadraticMap(F(3))
    assert f.critical_point == 0
    assert f(F(2)) == 7
    assert f.poly() == RatPoly([3, 0, 1])


@pytest.mark.parametrize("c,m", [(3, 2), (1, 3), (-2, 3), (5, 2), (1, 4)])
def test_disc_recurrence(c, m):
    res = disc_recurrence_check(c, m)
    assert res["holds"]
    assert res["sign"] in (1, -1)
    # magnitude recomputed independently from scratch
    dm = discriminant(iterate_poly(c, m))
    dm1 = discriminant(iterate_poly(c, m - 1))
    assert abs(dm) == dm1 * dm1 * 2 ** (2**m) * abs(orbit(c, m).value(m))


def test_disc_recurrence_degenerate():
    with pytest.raises(DomainError):
        disc_recurrence_check(0, 2)


def test_chebyshev_identity():
    for n in range(1, 7):
        assert chebyshev_identity_check(n)
    with pytest.raises(DomainError):
        chebyshev_identity_check(9)


def test_cycle_resultant_support_four_cycle():
    c = F(-31, 48)
    g1 = RatPoly([F(23, 48), F(-1, 2), 1])
    g2 = RatPoly([F(53, 48), 2, 1])
    s1, complete1 = cycle_resultant_support(g1, c, 4)
    s2, complete2 = cycle_resultant_support(g2, c, 4)
    assert complete1 and complete2
    assert s1 <= {2, 3, 23, 53}
    assert s2 <= {2, 3, 23, 53}


def test_cycle_resultant_support_chebyshev_case():
    s, complete = cycle_resultant_support(RatPoly([2, 1]), -2, 5)
    assert complete and s == {2}
