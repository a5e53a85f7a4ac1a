"""Closed-form bounds: frozen values, exact-rational fidelity, identities."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphsieve import (
    DomainError,
    GraphFamily,
    bipartite_asymptotic_bounds,
    bipartite_bounds,
    bipartite_half_bounds,
    bipartite_turan_asymptotic_bounds,
    bipartite_turan_bounds,
    bipartite_turan_half_lower,
    directed_adjust,
    gnp_asymptotic_bounds,
    gnp_asymptotic_upper_alt,
    gnp_bounds,
    gnp_half_lower,
    kpartite_asymptotic_bounds,
    kpartite_bounds,
    kpartite_half_lower,
    kpartite_turan_asymptotic_bounds,
    kpartite_turan_bounds,
    kpartite_turan_half_lower,
    make_shape,
    solve_threshold_p,
    threshold_c,
    turan_bipartite_threshold_c,
    turan_kpartite_threshold_c,
)

# ----------------------------------------------------------------------
# Exact rational evaluators of the same formulas (test-side oracles)
# ----------------------------------------------------------------------


def gnp_lower_term_exact(n: int, p: Fraction) -> Fraction:
    return Fraction(n * n, 2) * (1 - p * p) ** (n - 2) * (1 - p)


def gnp_upper_exact(n: int, p: Fraction) -> Fraction:
    one = Fraction(2) / ((n - 1) ** 2 * (1 - p * p) ** n * (1 - p))
    two = Fraction(8, n) * (1 + p**3 / (1 - p) ** 2) ** n
    return one + two


def kpartite_lower_term_exact(sizes, p: Fraction) -> Fraction:
    n, k = sum(sizes), len(sizes)
    nk, nk1, nk2 = sizes[-1], sizes[-2], sizes[-3]
    q2 = 1 - p * p
    return (
        Fraction(nk * nk, 2)
        * q2 ** (n - nk)
        * (
            1
            + Fraction(2 * nk1, nk) * q2 ** (-nk1)
            + Fraction(7 * k * k * nk1 * nk1, 3 * nk * nk) * q2 ** (nk - nk1 - nk2)
        )
    )


def kpartite_upper_exact(sizes, p: Fraction) -> Fraction:
    n, k = sum(sizes), len(sizes)
    nk, nk1 = sizes[-1], sizes[-2]
    q2 = 1 - p * p
    one = (
        Fraction(2)
        / (nk * (nk - 1) * q2 ** (n - nk))
        / (1 + Fraction(2 * nk1, nk - 1) * q2 ** (-nk1) * (1 - p))
    )
    two = Fraction(3 * k**3, nk1 - 1) * (1 + p**3 / (1 - p)) ** (n - nk) * q2**-2
    return one + two


def bipartite_lower_term_exact(n1, n2, p: Fraction) -> Fraction:
    q2 = 1 - p * p
    return (
        Fraction(n2 * n2, 2) * q2**n1 * (1 + Fraction(n1 * n1, n2 * n2) * q2 ** (n2 - n1))
    )


def bipartite_upper_exact(n1, n2, p: Fraction) -> Fraction:
    q2 = 1 - p * p
    shared = 1 + Fraction(n1 * (n1 - 1), n2 * (n2 - 1)) * q2 ** (n2 - n1)
    return (
        Fraction(2) / (n2 * (n2 - 1) * q2**n1)
        + (1 + p**3 / (1 - p)) ** n1 / n2 * (8 + 8 / (1 - p))
    ) / shared


def _rel_err(value: float, exact: Fraction) -> float:
    if exact == 0:
        return abs(value)
    return abs((Fraction(value) - exact) / exact)


# ----------------------------------------------------------------------
# Frozen example values
# ----------------------------------------------------------------------


class TestGnpBounds:
    def test_lower_n20(self):
        # 1 - 100*(3/4)^18, from the exact rational evaluation
        exact = 1 - gnp_lower_term_exact(20, Fraction(1, 2))
        assert abs(float(exact) - 0.4362293) < 1e-6
        assert abs(gnp_bounds(20, 0.5).lower - float(exact)) < 1e-6

    def test_n50_upper_trivial(self):
        b = gnp_bounds(50, 0.5)
        # exact: 1 - 625*(3/4)^48 = 0.99937075...
        exact = 1 - gnp_lower_term_exact(50, Fraction(1, 2))
        assert b.lower == pytest.approx(float(exact), rel=1e-9)
        assert b.upper_raw > 1e8
        assert b.trivial_upper and b.upper == 1.0

    def test_large_sparse(self):
        b = gnp_bounds(10000, 0.02)
        assert b.lower == 0.0 and b.trivial_lower
        assert abs(b.upper - 8.706e-4) < 1e-5

    def test_preconditions(self):
        with pytest.raises(DomainError):
            gnp_bounds(2, 0.5)
        with pytest.raises(DomainError):
            gnp_bounds(10, 0.0)

    def test_half_corollary_values(self):
        assert gnp_half_lower(10) == 0.0  # raw ~ -1.503, clamped
        assert abs(gnp_half_lower(60) - 0.9999490) < 1e-6

    def test_corollary_never_tighter(self):
        for n in range(3, 501):
            assert gnp_half_lower(n) >= gnp_bounds(n, 0.5).lower - 1e-12

    def test_rational_fidelity(self):
        for n in range(3, 41):
            for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                b = gnp_bounds(n, float(p))
                assert _rel_err(b.lower_term, gnp_lower_term_exact(n, p)) < 1e-9
                assert _rel_err(b.upper_raw, gnp_upper_exact(n, p)) < 1e-9

    @given(
        n=st.integers(min_value=3, max_value=5000),
        p=st.floats(min_value=1e-6, max_value=1 - 1e-6),
    )
    @settings(max_examples=120, deadline=None)
    def test_clamped_in_unit_interval(self, n, p):
        b = gnp_bounds(n, p)
        assert 0.0 <= b.lower <= 1.0
        assert 0.0 <= b.upper <= 1.0


class TestGnpAsymptotic:
    def test_n200_half(self):
        b = gnp_asymptotic_bounds(200, 0.5)
        # correction factor (1 + 4p^2) = 2 at p = 1/2
        assert b.lower_term == pytest.approx(2 * (200**2 / 2) * math.exp(-50), rel=1e-12)
        # 1 - 2*(2e4)*e^-50 rounds to 1.0
        assert b.lower_raw == pytest.approx(1.0, abs=1e-12)

    def test_large_sparse(self):
        b = gnp_asymptotic_bounds(10000, 0.02)
        assert b.lower_raw == pytest.approx(-9.17246e5, rel=1e-4)
        assert b.lower == 0.0

    def test_window(self):
        with pytest.raises(DomainError):
            gnp_asymptotic_bounds(199, 0.1)
        with pytest.raises(DomainError):
            gnp_asymptotic_bounds(500, 0.6)

    def test_alt_upper_is_weaker(self):
        # np^2(p-1) > np^2(p^2-1) for p in (0,1): the variant decays slower
        for n, p in [(200, 0.1), (500, 0.05), (1000, 0.3)]:
            assert gnp_asymptotic_upper_alt(n, p) >= gnp_asymptotic_bounds(n, p).upper_raw

    def test_flagged_asymptotic(self):
        assert gnp_asymptotic_bounds(300, 0.1).asymptotic
        assert not gnp_bounds(300, 0.1).asymptotic


class TestKpartiteBounds:
    def test_222_lower(self):
        # exact: 1 - (81/128)*(1 + 32/9 + 336/9) = 1 - 30537/1152
        b = kpartite_bounds(make_shape([2, 2, 2]), 0.5)
        exact = 1 - Fraction(30537, 1152)
        assert b.lower_raw == pytest.approx(float(exact), rel=1e-12)
        assert b.lower == 0.0

    def test_upper_decreasing_in_largest_part(self):
        uppers = [
            kpartite_bounds(make_shape([5, 30, nk]), 0.3).upper_raw
            for nk in (40, 60, 90, 140)
        ]
        assert all(a > b for a, b in zip(uppers, uppers[1:]))

    def test_clamping(self):
        for sizes in ([2, 2, 2], [3, 4, 9], [2, 5, 5, 6]):
            for p in (0.1, 0.5, 0.9):
                b = kpartite_bounds(make_shape(sizes), p)
                assert 0.0 <= b.lower <= 1.0 and 0.0 <= b.upper <= 1.0

    def test_rational_fidelity(self):
        for sizes in ([2, 2, 2], [2, 3, 5], [3, 4, 4, 5]):
            for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                b = kpartite_bounds(make_shape(sizes), float(p))
                assert _rel_err(b.lower_term, kpartite_lower_term_exact(sizes, p)) < 1e-9
                assert _rel_err(b.upper_raw, kpartite_upper_exact(sizes, p)) < 1e-9

    def test_half_corollary_matches_theorem(self):
        for sizes in ([2, 2, 2], [2, 3, 7], [4, 5, 6]):
            shape = make_shape(sizes)
            assert kpartite_half_lower(shape) >= kpartite_bounds(shape, 0.5).lower - 1e-12

    def test_preconditions(self):
        with pytest.raises(DomainError):
            kpartite_bounds(make_shape([3, 3]), 0.5)
        with pytest.raises(DomainError):
            kpartite_bounds(make_shape([1, 1, 4]), 0.5)

    def test_asymptotic_continuity(self):
        shape = make_shape([2, 2, 2])
        values = [
            kpartite_asymptotic_bounds(shape, p).lower_raw
            for p in (0.01, 0.02, 0.03, 0.04)
        ]
        diffs = [abs(a - b) for a, b in zip(values, values[1:])]
        assert all(d < 1.0 for d in diffs)

    def test_asymptotic_converges_to_theorem(self):
        # with p^4(n - nk) -> 0, the asymptotic forms track the theorem
        shape = make_shape([5, 30, 40])
        th = kpartite_bounds(shape, 0.02)
        asym = kpartite_asymptotic_bounds(shape, 0.02)
        assert abs(asym.lower_term / th.lower_term - 1) < 0.05
        assert abs(asym.upper_raw / th.upper_raw - 1) < 0.05


class TestKpartiteTuran:
    def test_n30_clamps(self):
        b = kpartite_turan_bounds(30, 3, 0.5)
        assert b.lower_raw < -25 and b.lower == 0.0

    def test_n200_lower(self):
        assert kpartite_turan_bounds(200, 3, 0.5).lower > 0.999

    def test_boundary(self):
        with pytest.raises(DomainError):
            kpartite_turan_bounds(6, 3, 0.5)
        kpartite_turan_bounds(7, 3, 0.5)

    def test_half_corollary_matches_theorem(self):
        for n, k in [(10, 3), (50, 3), (100, 4), (301, 5)]:
            assert (
                kpartite_turan_half_lower(n, k)
                >= kpartite_turan_bounds(n, k, 0.5).lower - 1e-12
            )

    def test_asymptotic_example(self):
        b = kpartite_turan_asymptotic_bounds(1000, 4, 0.05)
        # 1 - (1e6 * e^(-2.5*0.75) / 8)(1 + 3 e^0.625): large negative
        assert b.lower_raw < -1e5
        assert b.lower == 0.0


class TestBipartiteBounds:
    def test_30_40_lower(self):
        b = bipartite_bounds(make_shape([30, 40]), 0.5)
        exact = 1 - bipartite_lower_term_exact(30, 40, Fraction(1, 2))
        assert abs(float(exact) - 0.85261) < 1e-5
        assert b.lower == pytest.approx(float(exact), rel=1e-9)

    def test_5_5_clamps(self):
        b = bipartite_bounds(make_shape([5, 5]), 0.5)
        assert b.lower_raw == pytest.approx(-4.9326, abs=1e-4)
        assert b.lower == 0.0

    def test_rational_fidelity(self):
        for n1, n2 in [(2, 2), (3, 7), (10, 25), (20, 40)]:
            for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
                b = bipartite_bounds(make_shape([n1, n2]), float(p))
                assert _rel_err(b.lower_term, bipartite_lower_term_exact(n1, n2, p)) < 1e-9
                assert _rel_err(b.upper_raw, bipartite_upper_exact(n1, n2, p)) < 1e-9

    def test_half_corollary_matches_theorem(self):
        for n1, n2 in [(2, 2), (5, 9), (30, 40)]:
            shape = make_shape([n1, n2])
            cor = bipartite_half_bounds(shape)
            th = bipartite_bounds(shape, 0.5)
            assert cor.lower >= th.lower - 1e-12
            assert cor.upper == pytest.approx(th.upper, abs=1e-12)

    def test_nontrivial_upper_for_lopsided_parts(self):
        # with n2 = 10^6, the upper is informative once n1 is small enough
        n2 = 10**6
        limit = min(
            (2 * math.log(n2) - math.log(8)) / math.log(4 / 3),
            (math.log(n2) - math.log(48)) / math.log(5 / 4),
        )
        n1 = int(limit) - 4
        assert bipartite_half_bounds(make_shape([n1, n2])).upper < 1.0

    def test_preconditions(self):
        with pytest.raises(DomainError):
            bipartite_bounds(make_shape([1, 5]), 0.5)
        with pytest.raises(DomainError):
            bipartite_bounds(make_shape([2, 2, 2]), 0.5)


class TestBipartiteTuran:
    def test_n60_half(self):
        b = bipartite_turan_bounds(60, 0.5)
        assert b.lower == pytest.approx(0.90409, abs=1e-4)

    def test_corollary_weaker_than_theorem(self):
        # corollary constant 1/4 vs theorem 1/8: never tighter
        for n in range(4, 501):
            assert bipartite_turan_half_lower(n) <= bipartite_turan_bounds(n, 0.5).lower + 1e-12

    def test_boundary_smoke(self):
        b = bipartite_turan_bounds(4, 0.9)
        assert math.isfinite(b.lower_raw) and math.isfinite(b.upper_raw)

    def test_asymptotic_example(self):
        b = bipartite_turan_asymptotic_bounds(10**4, 0.03)
        assert b.lower == 0.0
        assert b.upper_raw == pytest.approx(3.2166e-3, rel=1e-3)

    def test_balanced_consistency_with_general(self):
        # at shape (m, m), the general asymptotic lower term equals the
        # balanced-family one at n = 2m; upper agrees once corrections decay
        for m in (50, 100):
            gen = bipartite_asymptotic_bounds(make_shape([m, m]), 0.5)
            bal = bipartite_turan_asymptotic_bounds(2 * m, 0.5)
            assert gen.lower_term == pytest.approx(bal.lower_term, rel=1e-12)
        gen = bipartite_asymptotic_bounds(make_shape([100, 100]), 0.5)
        bal = bipartite_turan_asymptotic_bounds(200, 0.5)
        assert gen.upper_raw == pytest.approx(bal.upper_raw, rel=0.1)

    def test_threshold_regime_upper(self):
        # with c fixed by the threshold expression, the asymptotic upper is
        # e^(-c) up to vanishing corrections
        shape = make_shape([2000, 200000])
        spec = solve_threshold_p(GraphFamily.bipartite(shape), 2.0)
        b = bipartite_asymptotic_bounds(shape, spec.p)
        assert b.upper_raw == pytest.approx(math.exp(-2.0), rel=0.05)


class TestDirectedAdjust:
    def test_gnp_rule(self):
        b = gnp_bounds(20, 0.5)
        d = directed_adjust(b)
        assert d.lower_raw == 1.0 - 2.0 * (1.0 - b.lower_raw)
        assert d.upper_raw == b.upper_raw / 2.0
        assert d.lower == 0.0  # 1 - 2*0.5638 < 0
        assert d.source == "directed_gnp_theorem"

    def test_double_adjust_rejected(self):
        d = directed_adjust(gnp_bounds(20, 0.5))
        with pytest.raises(DomainError):
            directed_adjust(d)

    def test_all_sources_adjustable(self):
        pairs = [
            gnp_bounds(50, 0.3),
            kpartite_bounds(make_shape([2, 3, 4]), 0.4),
            kpartite_turan_bounds(20, 3, 0.4),
            bipartite_bounds(make_shape([4, 9]), 0.4),
            bipartite_turan_bounds(12, 0.4),
            gnp_asymptotic_bounds(300, 0.2),
        ]
        for b in pairs:
            d = directed_adjust(b)
            assert d.lower_raw == 1.0 - 2.0 * (1.0 - b.lower_raw)
            assert d.upper_raw == b.upper_raw / 2.0


class TestThresholds:
    def test_solve_then_reevaluate(self):
        fam = GraphFamily.simple(2000)
        spec = solve_threshold_p(fam, -2.0)
        assert abs(spec.p - 0.09085) < 1e-4
        assert abs(spec.c_observed - (-2.0)) < 1e-9
        again = threshold_c(fam, spec.p)
        assert abs(again.c_observed - (-2.0)) < 1e-9

    def test_directed_adds_log2(self):
        p = 0.05
        for n in (100, 1000):
            und = threshold_c(GraphFamily.simple(n), p)
            dire = threshold_c(GraphFamily.simple(n, directed=True), p)
            assert dire.c_observed == und.c_observed + math.log(2)

    def test_balanced_bipartite_substitution(self):
        # shape (m, m): expression reduces to 2 log m - m p^2 - log 2
        m, p = 40, 0.2
        spec = threshold_c(GraphFamily.bipartite(make_shape([m, m])), p)
        assert spec.c_observed == pytest.approx(
            2 * math.log(m) - m * p * p - math.log(2), rel=1e-12
        )

    def test_turan_variants(self):
        s1 = turan_kpartite_threshold_c(100, 4, 0.1)
        assert s1.c_observed == pytest.approx(
            2 * math.log(100)
            - math.log(4)
            - 100 * 0.01 * 0.75
            - math.log(2)
            + math.log(1 + 3 * math.exp(0.25)),
            rel=1e-12,
        )
        s2 = turan_bipartite_threshold_c(100, 0.1)
        assert s2.c_observed == pytest.approx(
            2 * math.log(100) - math.log(4) - 0.5, rel=1e-12
        )

    def test_solver_covers_families(self):
        targets = [
            (GraphFamily.simple(500), None),
            (GraphFamily.simple(500, directed=True), None),
            (GraphFamily.kpartite(make_shape([10, 20, 30])), None),
            (GraphFamily.bipartite(make_shape([20, 60])), None),
            (None, ("kpartite", 60, 3)),
            (None, ("bipartite", 60, None)),
        ]
        for fam, turan in targets:
            if turan is None:
                spec = solve_threshold_p(fam, -1.0)
                check = threshold_c(fam, spec.p).c_observed
            else:
                kind, n, k = turan
                spec = solve_threshold_p(None, -1.0, n=n, k=k, turan=kind)
                check = (
                    turan_kpartite_threshold_c(n, k, spec.p).c_observed
                    if kind == "kpartite"
                    else turan_bipartite_threshold_c(n, spec.p).c_observed
                )
            assert abs(check - (-1.0)) < 1e-9

    def test_unreachable_c(self):
        with pytest.raises(DomainError):
            solve_threshold_p(GraphFamily.simple(10), 100.0)
