"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Everything is exact integer/rational arithmetic; the only tolerance anywhere
is the 1e-6 float check that Frobenius eigenvalues sit on |a| = sqrt(p).
The torsion-gcd criterion is by far the slowest item (gigantic integer gcds)
and runs last.
"""

import math
from fractions import Fraction as F

import pytest

from itercurves.curves import (
    cm_map_identity,
    make_curve,
    mordell_map,
    sqrt_recip_series,
    substitute_model,
)
from itercurves.dynamics import chebyshev_identity_check, disc_recurrence_check, orbit
from itercurves.exact import class_membership, is_square
from itercurves.ffield import INF, SignModelBijection
from itercurves.galois import mordell_bound_scan, scan_newly_small, stage_status
from itercurves.ratpoly import RatPoly, resultant
from itercurves.search import naive_search, runge_integer_points
from itercurves.zeta import (
    char_poly,
    charsum_vanishing,
    count_points,
    gcd_orbit_bound,
    has_good_reduction,
    verify_chebyshev,
    verify_cover,
    verify_decomposition,
)

CHEB_MATRIX = [(1, 5), (1, 13), (1, 29), (2, 5), (2, 13), (2, 3), (2, 11), (2, 19), (3, 3), (3, 5)]
ODD_PRIMES_30 = [3, 5, 7, 11, 13, 17, 19, 23, 29]


def _line(name: str, ok: bool, detail: str = ""):
    tail = f"  [{detail}]" if detail else ""
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}{tail}")


def test_c01_chebyshev_charpolys():
    bad = []
    for n, p in CHEB_MATRIX:
        cp = char_poly(make_curve("B", c=-2, n=n), p)
        g = 2 ** (n - 1)
        if cp.coeffs != [1] + [0] * (2 * g - 1) + [p**g]:
            bad.append((n, p))
        if not verify_chebyshev(n, p):
            bad.append((n, p))
    if verify_chebyshev(1, 3):
        bad.append((1, 3, "should be false"))
    if char_poly(make_curve("B", c=-2, n=1), 3).coeffs != [1, -2, 3]:
        bad.append((1, 3, "chi"))
    _line("C1 chebyshev-charpoly", not bad, f"matrix of {len(CHEB_MATRIX)} + excluded pair")
    assert not bad, bad


def test_c02_jacobian_orders():
    bad = []
    for n, p in CHEB_MATRIX:
        cp = char_poly(make_curve("B", c=-2, n=n), p)
        if cp.jacobian_order() != p ** (2 ** (n - 1)) + 1:
            bad.append((n, p))
    _line("C2 jacobian-orders", not bad)
    assert not bad, bad


def test_c03_decomposition():
    checked = 0
    bad = []
    for c in (F(-2), F(1), F(3)):
        for n in (2, 3):
            curves = [make_curve("C", c=c, n=n)] + [
                make_curve("B", c=c, n=m) for m in range(1, n)
            ]
            for p in ODD_PRIMES_30:
                if not all(has_good_reduction(cv, p) for cv in curves):
                    continue
                checked += 1
                if not verify_decomposition(c, n, p):
                    bad.append((c, n, p))
    _line("C3 jacobian-decomposition", not bad and checked > 30, f"{checked} (c,n,p) triples")
    assert not bad and checked > 30, (bad, checked)


def test_c04_character_sum_vanishing():
    bad = [(n, p) for (n, p) in [(1, 3), (1, 5), (2, 3), (2, 5)] if not charsum_vanishing(n, p)]
    _line("C4 character-sum-vanishing", not bad)
    assert not bad, bad


def test_c05_sign_model_bijection():
    bad = []
    for p, n in [(3, 2), (5, 2), (11, 2), (3, 3)]:
        for m in (1, 3):
            b = SignModelBijection(p, n, m)
            plus, minus = b.plus_points(), b.minus_points()
            if len(plus) != len(minus):
                bad.append((p, n, m, "count"))
                continue
            images = set()
            for pt in plus:
                img = b.pi_plus(pt)
                key = img if img == INF else (img[0], img[1])
                if key in images or b.pi_minus(img) != pt:
                    bad.append((p, n, m, pt))
                    break
                images.add(key)
    _line("C5 sign-model-bijection", not bad, "q in {p, p^3}, exhaustive")
    assert not bad, bad


def test_c06_runge():
    f2_points, cert = runge_integer_points(make_curve("F2"))
    got = {(int(p.x), int(p.y)) for p in f2_points.points}
    want = {(-1, 1), (-1, -1), (0, 1), (0, -1), (-2, 1), (-2, -1)}
    ok = (
        got == want
        and len(f2_points.at_infinity) == 2
        and cert.g == RatPoly([15, 6, 24, 16])
        and cert.h_rem == RatPoly([31, -180, -244])
        and cert.shift == 4
        and f2_points.complete_over == "Z"
    )
    f0_points, _ = runge_integer_points(make_curve("F0"))
    ok = ok and {(int(p.x), int(p.y)) for p in f0_points.points} == {(0, 0), (-1, 0)}
    _line("C6 runge-integer-points", ok, "printed g, h_rem, Y=16y reproduced")
    assert ok


def test_c07_point_lists():
    pts = {(p.x, p.y) for p in naive_search(make_curve("F2"), 10).points}
    want = {
        (F(2, 3), F(53, 27)), (F(2, 3), F(-53, 27)),
        (F(-6, 7), F(377, 343)), (F(-6, 7), F(-377, 343)),
    }
    ok = want <= pts
    for (x, y) in want:
        ok = ok and y * y == make_curve("F2").h(x)
    _line("C7 rational-point-lists", ok)
    assert ok


def test_c08_galois_scans():
    s3 = scan_newly_small(3, int_bound=10**5)
    s4 = scan_newly_small(4, int_bound=10**4)
    s4h = scan_newly_small(4, height=10)
    ok = s3 == [F(3)] and s4 == [] and s4h == [F(2, 3), F(-6, 7)]
    _line("C8 galois-scans", ok, f"s3={s3} s4={s4} s4h={s4h}")
    assert ok


def test_c09_mordell_bound_scan():
    rep = mordell_bound_scan()
    ineq = rep["inequality_holds"]
    clauses = {
        "inequality holds for n<=13": all(ineq[n] for n in range(2, 14)),
        "inequality fails at n=14": not ineq[14],
        "unique witness n=3 with (d,y)=(3,7)": rep["square_witness_n"] == [3]
        and rep["witnesses"][3] == (3, 7),
        "mapped point (33,189) on y^2=x^3-216": mordell_map(3, 3, 7) == (33, 189)
        and 189**2 == 33**3 - 216,
    }
    ok = all(clauses.values())
    detail = "; ".join(f"{k}: {'ok' if v else 'FAIL'}" for k, v in clauses.items())
    _line("C9 mordell-bound-scan", ok, detail)
    # the first clause is false as stated: exact arithmetic gives
    # f^12(0) ~ 10^1109 > 26214400*(f^7(0))^17 + 1 ~ 10^597, so the
    # inequality already fails at n = 13 (it holds for n <= 12)
    assert ok, {k: v for k, v in clauses.items() if not v}


def test_c11_discriminant_recurrence():
    bad = []
    for c in (1, 3, -2, 5):
        for m in range(2, 7):
            if not disc_recurrence_check(c, m)["holds"]:
                bad.append((c, m))
    _line("C11 discriminant-recurrence", not bad, "c in {1,3,-2,5}, m <= 6, exact")
    assert not bad, bad


def test_c12_series_expansion():
    f1p = substitute_model(make_curve("F1"), -1, -2)
    series, integrals = sqrt_recip_series(f1p.h, 8)
    want = [F(1), F(-21, 2), F(1019, 8), F(-28089, 16),
            F(3292019, 128), F(-99637707, 256), F(6153979535, 1024)]
    ok = series.coefficients[:7] == want and integrals[0][2] == F(-21, 4)
    _line("C12 series-expansion", ok, "seven printed coefficients, exact")
    assert ok


def test_c13_identities():
    results = {}
    results["chebyshev laurent n<=6"] = all(chebyshev_identity_check(n) for n in range(1, 7))
    fm2 = RatPoly([-2, 0, 1])
    g = fm2
    res_ok = True
    for n in range(1, 11):
        res_ok = res_ok and resultant(RatPoly([2, 1]), g) == 2
        if n < 10:
            g = g.compose(fm2)
    results["Res(x+2, iterate)=2 n<=10"] = res_ok
    results["cm-map identity"] = cm_map_identity()
    cover_ok = True
    pairs = 0
    for c in (F(3), F(1), F(-2)):
        for n in (2, 3):
            for m in range(1, n):
                for p in [q for q in ODD_PRIMES_30 if q <= 13]:
                    cn = make_curve("C", c=c, n=n)
                    bm = make_curve("B", c=c, n=m)
                    if has_good_reduction(cn, p) and has_good_reduction(bm, p):
                        pairs += 1
                        cover_ok = cover_ok and verify_cover(c, n, m, p)
    results[f"cover pushforward ({pairs} cases)"] = cover_ok and pairs > 15
    ok = all(results.values())
    _line("C13 identities", ok, "; ".join(f"{k}: {'ok' if v else 'FAIL'}" for k, v in results.items()))
    assert ok, results


def test_c14_property_suites():
    ok = True
    # Hasse-Weil and the functional-equation self-check on every charpoly of
    # the acceptance matrix (char_poly would raise internally; re-assert here)
    for n, p in CHEB_MATRIX:
        curve = make_curve("B", c=-2, n=n)
        g = curve.genus
        cp = char_poly(curve, p)
        ok = ok and cp.roots_on_weil_circle(1e-6)
        for m in range(1, g + 1):
            nm = count_points(curve, p, m)
            ok = ok and abs(nm - (p**m + 1)) <= 2 * g * math.sqrt(p**m)
            ok = ok and cp.predict_count(m) == nm
        if p ** (g + 1) <= 2**31:
            ok = ok and cp.predict_count(g + 1) == count_points(curve, p, g + 1)
    # class-membership certificates re-verified directly
    for c in (F(3), F(-2), F(2, 3), F(-6, 7)):
        rep = stage_status(c, 4)
        for st in rep.stages:
            if st.status == "non_maximal":
                prod = F(1)
                for w in st.witness:
                    prod *= w
                vk = orbit(c, st.k).value(st.k)
                ok = ok and is_square(vk * prod)
                ok = ok and class_membership(vk, st.witness) is not None
    _line("C14 property-suites", ok, "exact; only the 1e-6 eigenvalue-modulus float check")
    assert ok


# slowest criterion last: each step gcds integers with up to ~7.5e8 digits
def test_c10_torsion_gcd_bound():
    bad = []
    for n in range(1, 31):
        g = gcd_orbit_bound(n, [5, 13])
        print(f"  gcd(5^(2^{n})+1, 13^(2^{n})+1) = {g}")
        if g != 2:
            bad.append((n, g))
    _line("C10 torsion-gcd-bound", not bad, "n <= 30, exact")
    assert not bad, bad
