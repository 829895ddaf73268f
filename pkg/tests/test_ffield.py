import pytest

from itercurves.errors import CapExceeded, DomainError, HypothesisViolated, NotOnCurve
from itercurves.ffield import (
    INF,
    QuadExt,
    SignModelBijection,
    bijection_pi,
    curve_affine_points,
    make_field,
    quad_char,
    two_adic_valuation,
    two_power_nonsquare,
)


def test_make_field_deterministic_moduli():
    assert make_field(5, 1).modulus == (0, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(5, 4).q == 625
    with pytest.raises(DomainError):
        make_field(9, 1)
    with pytest.raises(DomainError):
        make_field(2, 3)
    with pytest.raises(CapExceeded):
        make_field(3, 25)


def test_field_arithmetic_exhaustive_small():
    for (p, m) in [(3, 1), (5, 1), (3, 2), (5, 2), (7, 2), (3, 4), (11, 1)]:
        ctx = make_field(p, m)
        one = ctx.one
        for k in range(1, ctx.q):
            a = ctx.from_index(k)
            assert ctx.mul(a, ctx.inv(a)) == one
            assert ctx.index(ctx.from_index(k)) == k
        # Frobenius fixes exactly the prime field
        fixed = [k for k in range(ctx.q) if ctx.pow(ctx.from_index(k), p) == ctx.from_index(k)]
        assert len(fixed) == p


def test_quad_char_examples():
    f5 = make_field(5, 1)
    assert f5.quad_char(f5.from_int(2)) == -1
    assert f5.quad_char(f5.zero) == 0
    assert f5.quad_char(f5.from_int(4)) == 1


def test_quad_char_multiplicative_exhaustive():
    for (p, m) in [(3, 1), (5, 1), (7, 1), (11, 1), (3, 2), (5, 2), (7, 2), (3, 4), (11, 2)]:
        ctx = make_field(p, m)
        if ctx.q > 121:
            continue
        els = [ctx.from_index(k) for k in range(1, ctx.q)]
        for a in els:
            for b in els:
                assert ctx.quad_char(ctx.mul(a, b)) == ctx.quad_char(a) * ctx.quad_char(b)


def test_sqrt_all_squares():
    for (p, m) in [(3, 2), (5, 2), (13, 1), (11, 2)]:
        ctx = make_field(p, m)
        for k in range(1, ctx.q):
            a = ctx.from_index(k)
            if ctx.quad_char(a) == 1:
                r = ctx.canonical_sqrt(a)
                assert ctx.mul(r, r) == a
                assert ctx.index(r) <= ctx.index(ctx.neg(r))


def test_two_power_nonsquare_examples():
    a = two_power_nonsquare(1, 5, 1)
    assert a.vec == (2,)  # order 4, nonsquare
    ctx = a.ctx
    assert ctx.pow(a.vec, 4) == ctx.one and quad_char(a) == -1

    b = two_power_nonsquare(2, 3, 2)
    bctx = b.ctx
    assert bctx.pow(b.vec, 8) == bctx.one
    assert bctx.pow(b.vec, 4) != bctx.one
    assert quad_char(b) == -1

    with pytest.raises(HypothesisViolated):
        two_power_nonsquare(1, 7, 1)  # 7 = -1 mod 8
    with pytest.raises(HypothesisViolated):
        two_power_nonsquare(1, 3, 2)  # m >= 2^n


def test_two_adic_valuation_tower():
    # v2(p^(2^t) - 1) = t + 2 for t >= 1; at t = 0 only the 5 mod 8 classes
    for p in (3, 5, 11, 13, 19, 29):
        for t in range(1, 7):
            assert two_adic_valuation(p ** (2**t) - 1) == t + 2
        assert two_adic_valuation(p - 1) == (2 if p % 8 == 5 else 1)


def test_quad_ext():
    base = make_field(3, 1)
    ext = QuadExt(base)
    for k in range(1, 9):
        u = (base.from_index(k % 3), base.from_index(k // 3))
        assert ext.mul(u, ext.inv(u)) == ext.one
    r = ext.sqrt_of_base(base.from_int(2))  # 2 is a nonsquare mod 3
    assert ext.mul(r, r) == ext.embed(base.from_int(2))


def _roundtrip(p, n, m):
    b = SignModelBijection(p, n, m)
    plus = b.plus_points()
    minus = b.minus_points()
    assert len(plus) == len(minus)
    seen = set()
    for pt in plus:
        img = b.pi_plus(pt)
        key = img if img == INF else (img[0], img[1])
        assert key not in seen
        seen.add(key)
        assert b.pi_minus(img) == pt
    for qt in minus:
        assert b.pi_plus(b.pi_minus(qt)) == qt
    return len(plus)


@pytest.mark.parametrize("p,n,m", [(3, 2, 1), (5, 2, 1), (11, 2, 1), (3, 3, 1),
                                   (3, 2, 3), (5, 1, 1), (19, 2, 1), (3, 2, 2)])
def test_bijection_roundtrip_exhaustive(p, n, m):
    _roundtrip(p, n, m)


def test_bijection_examples():
    b = SignModelBijection(3, 2, 1)
    ctx = b.ctx
    assert b.pi_plus((ctx.from_int(-2), ctx.zero)) == (ctx.from_int(2), ctx.zero)
    assert b.pi_plus(INF) == INF
    assert b.pi_minus(INF) == INF
    with pytest.raises(NotOnCurve):
        b.pi_plus((ctx.from_int(2), ctx.from_int(1)))


def test_bijection_wrapper_and_hypotheses():
    b = SignModelBijection(3, 2, 1)
    ctx = b.ctx
    assert bijection_pi(3, 2, 1, (ctx.from_int(-2), ctx.zero), "+") == (
        ctx.from_int(2),
        ctx.zero,
    )
    with pytest.raises(HypothesisViolated):
        SignModelBijection(7, 3, 1)   # v2(p+1) = 3 unsupported
    with pytest.raises(HypothesisViolated):
        SignModelBijection(3, 1, 1)   # n below v2(p+1)
    with pytest.raises(DomainError):
        bijection_pi(3, 2, 1, INF, "sideways")


def test_curve_affine_points_against_pair_enumeration():
    # independent oracle: loop over all (x, y) pairs
    ctx = make_field(5, 1)
    coeffs = [2, 0, -1, 1]  # x^3 - x^2 + 2 mod 5
    fast = {(pt[0], pt[1]) for pt in curve_affine_points(ctx, coeffs)}
    slow = set()
    for kx in range(5):
        for ky in range(5):
            x, y = ctx.from_index(kx), ctx.from_index(ky)
            if ctx.mul(y, y) == ctx.eval_poly(coeffs, x):
                slow.add((x, y))
    assert fast == slow
