"""Exact bound formulas, floors, parameter packs, and the aggregated report."""

from fractions import Fraction
from math import isqrt

import numpy as np
import pytest

import c4book as cb
from c4book import bounds
from c4book.errors import DomainError, NotPrimePower


# -- star bound --


def test_parsons_values():
    assert cb.parsons_upper(4) == 7
    assert cb.parsons_upper(10) == 14
    assert cb.parsons_upper(9) == 13
    # n-1 a perfect square lowers the bound by one; at n=2 that gives 4,
    # which exhaustive search confirms is the exact Ramsey value.
    assert cb.parsons_upper(2) == 4
    with pytest.raises(DomainError):
        cb.parsons_upper(1)


# -- iterated star recurrence --


def test_g_sequence_hand_values():
    gs = cb.g_sequence(10, 3)
    assert gs.values == (10, 15, 20, 26)
    assert gs.cap == 28
    assert gs.cap_holds


def test_g_sequence_small():
    assert cb.g_sequence(2, 1).values == (2, 5)
    assert cb.g_sequence(10, 0).values == (10,)
    with pytest.raises(DomainError):
        cb.g_sequence(1, 2)


def _isqrt_vec(x):
    """Exact floor sqrt on an int64 array (float seed + correction)."""
    s = np.floor(np.sqrt(x.astype(np.float64))).astype(np.int64)
    s = np.where((s + 1) * (s + 1) <= x, s + 1, s)
    s = np.where(s * s > x, s - 1, s)
    return s


def test_g1_matches_general_star_form_to_1e6():
    n = np.arange(2, 1_000_001, dtype=np.int64)
    g1 = n + _isqrt_vec(n - 1) + 2
    spot = np.linspace(2, 1_000_000, 500, dtype=np.int64)
    for v in spot:
        assert cb.g_sequence(int(v), 1).values[1] == int(g1[v - 2])
    # and the vectorized isqrt itself is exact on a spot sample
    for v in spot:
        assert int(_isqrt_vec(np.array([v - 1]))[0]) == isqrt(int(v) - 1)


def test_closed_form_cap_characterization_to_1e6():
    """The floored closed-form cap fails for k >= 6 (first at n=3, k=6,
    where the recurrence reaches 33 against a cap of 32); the same cap with
    an unfloored sqrt(n) holds everywhere in range.  The violation flag on
    g_sequence must report exactly the floored-cap failures."""
    n = np.arange(2, 1_000_001, dtype=np.int64)
    g = n.copy()
    for k in range(1, 11):
        g = g + _isqrt_vec(g - 1) + 2
        cap = n + k * _isqrt_vec(n) + (k * k + 9 * k + 3) // 4
        bad = g > cap
        if k <= 5:
            assert not bad.any(), f"unexpected cap violation at k={k}"
        cap_real = n.astype(np.float64) + k * np.sqrt(n.astype(np.float64)) + (k * k + 9 * k) / 4
        assert np.all(g.astype(np.float64) <= cap_real + 1e-9)
    # smallest violation, by hand: 3, 6, 10, 15, 20, 26, 33 vs 3 + 6 + 23
    gs = cb.g_sequence(3, 6)
    assert gs.values == (3, 6, 10, 15, 20, 26, 33)
    assert gs.cap == 32
    assert not gs.cap_holds


def test_remark_cap_scalar_agreement():
    # the scalar cap formula matches the sweep's, and the flag is honest
    for n in (2, 3, 10, 99, 100, 10_000, 999_999):
        for k in (1, 5, 10):
            gs = cb.g_sequence(n, k)
            assert gs.cap == n + k * isqrt(n) + -(-(k * k + 9 * k) // 4)
            assert gs.cap_holds == (gs.values[-1] <= gs.cap)
            if k <= 5:
                assert gs.cap_holds


# -- exact floors of sqrt(n) - c n^alpha --


def test_floor_sqrt_minus_power_spot_values():
    # 6 * 10^1.575 = 225.50...; floor(1000 - that) = 774
    assert bounds.floor_sqrt_minus_power(10**6) == 774
    assert bounds.floor_sqrt_minus_power(100) == -11
    assert bounds.floor_sqrt_minus_power(2074) == 0
    assert bounds.floor_sqrt_minus_power(2075) == 1


def test_floor_sqrt_minus_power_exact_integer_case():
    # n = 2^80: sqrt(n) = 2^40 and n^(21/80) = 2^21 exactly
    n = 2**80
    want = 2**40 - 6 * 2**21
    assert bounds.floor_sqrt_minus_power(n) == want
    assert bounds._cmp_sqrt_expr(n, 6, Fraction(21, 80), want) == 0


def test_floor_sqrt_minus_power_against_high_precision():
    from decimal import Decimal, getcontext

    getcontext().prec = 60
    for n in (10, 97, 1024, 4096, 50000, 123456, 10**6, 10**8 + 7):
        x = Decimal(n).sqrt() - 6 * (Decimal(n) ** (Decimal(21) / Decimal(80)))
        assert bounds.floor_sqrt_minus_power(n) == int(x.to_integral_value("ROUND_FLOOR"))


def test_min_n_default_regime_boundary():
    mn = bounds.min_n_default_regime()
    assert bounds.floor_sqrt_minus_power(mn) >= 1
    assert bounds.floor_sqrt_minus_power(mn - 1) < 1


# -- parameter pack --


def test_bounds_params_k3():
    p = cb.bounds_params(3, 10, 2, Fraction(1, 2))
    assert (p.a_k, p.b_k) == (0, 0)
    assert p.n == 72  # q^2 - kq + t + a_k
    assert p.ladder == (82, 93, 102)


def test_bounds_params_k4():
    p = cb.bounds_params(4, 10, 0, Fraction(1, 2))
    assert (p.a_k, p.b_k, p.n) == (2, 2, 62)


def test_threshold_identity():
    for k in range(3, 9):
        for eps in (Fraction(1, 2), Fraction(1, 3), Fraction(7, 10)):
            assert bounds.q_threshold(k, eps) * eps ** (2 * k) == Fraction(320 * k**4) ** (k + 1)


def test_bounds_params_validation():
    with pytest.raises(DomainError):
        cb.bounds_params(2, 10, 0, Fraction(1, 2))
    with pytest.raises(DomainError):
        cb.bounds_params(3, 10, 0, Fraction(3, 2))
    with pytest.raises(DomainError):
        cb.bounds_params(3, 1, 0, Fraction(1, 2))


def test_ladder_gaps_sweep():
    for k in range(3, 9):
        b_k = bounds.ladder_offset(k)
        for q in range(10, 101, 9):
            for t in range(0, q + 1, 7):
                p = cb.bounds_params(k, q, t, Fraction(1, 2))
                ladder = p.ladder
                assert ladder[-1] - ladder[-2] == q - b_k - 1
                if k >= 3:
                    assert ladder[-2] - ladder[-3] == q + 1 if k > 3 else True
                if k > 3:
                    for i in range(k - 3):
                        assert ladder[i + 1] - ladder[i] == q


def test_ladder_strictly_increasing_when_q_large():
    for k in range(3, 9):
        b_k = bounds.ladder_offset(k)
        q = b_k + 2  # the smallest q that orders the ladder
        p = cb.bounds_params(k, max(q, 2), 3, Fraction(1, 2))
        assert list(p.ladder) == sorted(set(p.ladder))


# -- admissibility --


def test_theorem15_examples():
    assert not cb.theorem15_admissible(3, 8, 1, Fraction(3, 10)).admissible
    assert cb.theorem15_admissible(3, 8, 5, Fraction(3, 10)).admissible
    assert not cb.theorem15_admissible(3, 7, 5, Fraction(1, 10)).admissible
    assert cb.theorem15_admissible(3, 7, 4, Fraction(1, 10)).admissible
    assert not cb.theorem15_admissible(3, 9, 5, Fraction(1, 10)).admissible  # (q+1)/2 excluded
    assert cb.theorem15_admissible(3, 9, 4, Fraction(1, 10)).admissible
    with pytest.raises(NotPrimePower):
        cb.theorem15_admissible(3, 6, 0, Fraction(1, 2))


def test_theorem15_table_shape():
    rows = bounds.theorem15_table(7, 9, 3, Fraction(1, 4))
    assert {(r["q"], r["t"]) for r in rows} == {
        (7, 4),
        (8, 0), (8, 2), (8, 3), (8, 4), (8, 5), (8, 6),
        (9, 4), (9, 6),
    }
    for r in rows:
        assert r["r"] == r["q"] ** 2 + r["t"]


# -- general lower bound --


def test_theorem16_examples():
    t = cb.theorem16_lower(10**6, 3)
    assert t.value == 1_002_322 and t.in_regime
    t = cb.theorem16_lower(100, 2)
    assert not t.in_regime and t.value == 102  # trivial n + k
    assert cb.theorem16_lower(50, 0).value == 50


def test_theorem16_integer_correction_term():
    # k(k-3)/2 is always integral
    for k in range(0, 12):
        assert (k * k - 3 * k) % 2 == 0


# -- aggregated reports --


def test_report_known_exact_values():
    assert cb.bound_report(3, 2).exact == 9
    assert cb.bound_report(13, 2).exact == 22
    assert cb.bound_report(9, 1).exact == 13
    assert cb.bound_report(10, 1).exact == 14
    assert cb.bound_report(4, 1).exact == 7
    assert cb.bound_report(7, 2).exact == 16


def test_report_k2_family_values():
    # even prime power family: q=4, t=0 -> n=7 handled above; q=4, t=3 -> n=10
    rep = cb.bound_report(10, 2)
    assert rep.exact == 19
    # t=1 is excluded, so n=8 = (4-1)^2 + (1-2) has no exact claim
    rep = cb.bound_report(8, 2)
    assert rep.exact is None
    assert rep.upper is not None and rep.lower <= rep.upper


def test_report_sweep_consistency():
    for n in range(1, 2001, 13):
        for k in range(1, 7):
            rep = cb.bound_report(n, k)
            if rep.upper is not None:
                assert rep.lower <= rep.upper, (n, k)
            if rep.exact is not None:
                assert rep.lower == rep.upper == rep.exact


def test_report_trivial_lower():
    rep = cb.bound_report(1, 3)
    assert rep.lower == 4
    assert rep.upper is None
