"""Tests for the rational construction: Toeplitz assembly, nullspace solve,
numerator product, evaluation, circle scans, and the structural identities."""

import math

import numpy as np
import pytest

from pipct import (
    ChebyshevSeries,
    Interval,
    PadeChebyshevApproximant,
    PoleEvaluationError,
    build_pct,
    build_toeplitz,
    compute_coefficients,
    compute_numerator,
    denominator_min_on_circle,
    evaluate_pct,
    solve_denominator,
)
from pipct.harness import REGISTRY
from pipct.pade import toeplitz_singular_values


def series_from(coeffs, n=64):
    return ChebyshevSeries(Interval(-1, 1), n=n, coeffs=np.asarray(coeffs, dtype=float))


def geometric_series(r, length):
    return series_from([r**k for k in range(length)])


class TestBuildToeplitz:
    def test_1x2_layout(self):
        series = series_from([10.0, 11.0, 12.0, 13.0])
        system = build_toeplitz(series, 1, 1)
        assert system.matrix.shape == (1, 2)
        assert system.matrix[0, 0] == 12.0  # c_2
        assert system.matrix[0, 1] == 11.0  # c_1

    def test_2x3_layout(self):
        series = series_from([0.0, 1.0, 2.0, 3.0, 4.0])
        system = build_toeplitz(series, 2, 2)
        expected = np.array([[3.0, 2.0, 1.0], [4.0, 3.0, 2.0]])
        assert np.array_equal(system.matrix, expected)

    def test_geometric_series_has_rank_one(self):
        """Rows of the geometric-series system are proportional."""
        series = geometric_series(0.6, 20)
        system = build_toeplitz(series, 4, 4)
        rows = system.matrix
        for i in range(1, rows.shape[0]):
            ratio = rows[i] / rows[0]
            assert np.ptp(ratio) < 1e-13
        s = toeplitz_singular_values(system)
        assert s[1] < 1e-13 * s[0]

    def test_insufficient_coefficients_named(self):
        series = series_from([1.0, 2.0, 3.0])
        with pytest.raises(ValueError, match="need 4"):
            build_toeplitz(series, 2, 2)


class TestSolveDenominator:
    def test_geometric_nullvector(self):
        """q proportional to (1, -r) kills the geometric system."""
        r = 0.37
        series = geometric_series(r, 8)
        system = build_toeplitz(series, 1, 1)
        q = solve_denominator(system)
        expected = np.array([1.0, -r]) / math.hypot(1.0, r)
        assert q == pytest.approx(expected, abs=1e-14)
        assert abs(system.matrix @ q).max() < 1e-15

    def test_identity_series_nullspace_by_inspection(self):
        series = series_from([0.0, 1.0, 0.0])  # f(x) = x
        system = build_toeplitz(series, 1, 1)
        assert np.array_equal(system.matrix, np.array([[0.0, 1.0]]))
        q = solve_denominator(system)
        assert q == pytest.approx([1.0, 0.0], abs=1e-15)

    def test_random_full_rank_residual(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n_q = int(rng.integers(1, 9))
            matrix = rng.standard_normal((n_q, n_q + 1))
            from pipct.pade import ToeplitzSystem

            q = solve_denominator(ToeplitzSystem(n_p=n_q, n_q=n_q, matrix=matrix))
            assert np.linalg.norm(matrix @ q) <= 1e-12 * np.linalg.norm(matrix)
            assert np.linalg.norm(q) == pytest.approx(1.0, abs=1e-12)
            assert q[np.argmax(np.abs(q))] > 0

    def test_zero_matrix_gets_unit_head(self):
        """A numerically null system picks Q = 1 (head basis vector)."""
        from pipct.pade import ToeplitzSystem

        q = solve_denominator(ToeplitzSystem(n_p=3, n_q=3, matrix=np.zeros((3, 4))))
        assert q == pytest.approx([1.0, 0.0, 0.0, 0.0], abs=1e-15)

    def test_nonfinite_rejected(self):
        from pipct.pade import ToeplitzSystem

        with pytest.raises(ValueError):
            solve_denominator(ToeplitzSystem(n_p=1, n_q=1, matrix=np.array([[np.nan, 1.0]])))


class TestComputeNumerator:
    def test_identity_reproduction(self):
        series = series_from([0.0, 1.0, 0.0])
        p = compute_numerator(series, np.array([1.0, 0.0]), 1, 1)
        assert p == pytest.approx([0.0, 1.0], abs=1e-15)

    def test_constant_gives_p_equal_q(self):
        series = series_from([2.0, 0.0, 0.0, 0.0])
        q = np.array([0.8, -0.6])
        p = compute_numerator(series, q, 2, 1)
        assert p[0] == pytest.approx(q[0])
        assert p[1] == pytest.approx(q[1])
        assert p[2] == pytest.approx(0.0, abs=1e-15)

    def test_geometric_order_condition(self):
        """Q(z) C(z) - P(z) has vanishing coefficients through z^{n_p+n_q}."""
        r = 0.55
        n_p, n_q = 3, 1
        series = geometric_series(r, 12)
        q = solve_denominator(build_toeplitz(series, n_p, n_q))
        p = compute_numerator(series, q, n_p, n_q)
        cs = series.coeffs.copy()
        cs[0] *= 0.5
        conv = np.convolve(cs[: n_p + n_q + 1], q)[: n_p + n_q + 1]
        resid = conv - np.concatenate([p, np.zeros(n_q)])
        assert np.abs(resid).max() < 1e-14

    def test_length_mismatch_rejected(self):
        series = series_from([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            compute_numerator(series, np.array([1.0]), 2, 1)


class TestBuildEvaluate:
    def test_linear_reproduction(self):
        r = build_pct(lambda x: x, Interval(-1, 1), 16, 1, 1)
        xs = np.linspace(-1, 1, 100)
        assert np.abs(evaluate_pct(r, xs) - xs).max() < 1e-13

    def test_cubic_reproduction(self):
        def f(x):
            return 0.3 * x**3 - 1.2 * x**2 + x - 0.7

        r = build_pct(f, Interval(-1, 1), 32, 3, 1)
        xs = np.linspace(-1, 1, 100)
        assert np.abs(evaluate_pct(r, xs) - f(xs)).max() < 1e-12

    def test_polynomial_reproduction_up_to_np(self):
        rng = np.random.default_rng(3)
        for deg in (2, 4, 5):
            mono = rng.uniform(-1, 1, deg + 1)

            def f(x, mono=mono):
                return sum(c * x**j for j, c in enumerate(mono))

            r = build_pct(f, Interval(-0.5, 1.5), 3 * deg + 8, deg, 1)
            xs = np.linspace(-0.5, 1.5, 200)
            assert np.abs(evaluate_pct(r, xs) - f(xs)).max() < 1e-11

    def test_sign_global_error_away_from_jump(self):
        """Dense evaluation: [20/20] at n = 200 resolves sign(x) to below 1e-6
        outside |x| < 0.2."""
        r = build_pct(np.sign, Interval(-1, 1), 200, 20, 20)
        xs = np.concatenate([np.linspace(-1, -0.2, 2001), np.linspace(0.2, 1, 2001)])
        assert np.abs(evaluate_pct(r, xs) - np.sign(xs)).max() < 1e-6

    def test_linear_point_value(self):
        r = build_pct(lambda x: x, Interval(-1, 1), 16, 1, 1)
        assert evaluate_pct(r, 0.37) == pytest.approx(0.37, abs=1e-13)

    def test_constant_approximant_is_one(self):
        r = build_pct(lambda x: np.ones_like(x), Interval(-1, 1), 16, 2, 2)
        xs = np.linspace(-1, 1, 50)
        assert evaluate_pct(r, xs) == pytest.approx(np.ones(50), abs=1e-13)

    def test_endpoints_finite(self):
        r = build_pct(np.exp, Interval(-1, 1), 32, 4, 2)
        for x in (-1.0, 1.0):
            assert math.isfinite(evaluate_pct(r, x))

    def test_outside_interval_rejected(self):
        r = build_pct(np.exp, Interval(0, 1), 16, 2, 1)
        with pytest.raises(ValueError):
            evaluate_pct(r, 1.0001)

    def test_pole_raises(self):
        q = np.array([1.0, -1.0]) / math.sqrt(2)  # Q(1) = 0, i.e. theta = 0, x = b
        r = PadeChebyshevApproximant(
            interval=Interval(-1, 1), n_p=1, n_q=1,
            p=np.array([1.0, 0.0]), q=q, n=8,
        )
        with pytest.raises(PoleEvaluationError):
            evaluate_pct(r, 1.0)

    def test_small_n_warns(self):
        with pytest.warns(UserWarning, match="aliased"):
            build_pct(np.exp, Interval(-1, 1), 4, 3, 2)


class TestCircleScan:
    def _approximant_with_q(self, q):
        q = np.asarray(q, dtype=float)
        q = q / np.linalg.norm(q)
        n_q = q.size - 1
        return PadeChebyshevApproximant(
            interval=Interval(-1, 1), n_p=n_q, n_q=n_q,
            p=np.zeros(n_q + 1), q=q, n=8,
        )

    def test_constant_denominator(self):
        r = self._approximant_with_q([1.0, 0.0])
        mag, _ = denominator_min_on_circle(r, 256)
        assert mag == pytest.approx(1.0)

    def test_root_at_endpoint_detected(self):
        r = self._approximant_with_q([1.0, -1.0])  # root exactly at theta = 0
        mag, theta = denominator_min_on_circle(r, 256)
        assert theta == 0.0
        assert mag == pytest.approx(0.0, abs=1e-15)

    def test_interior_root_minimum_shrinks_with_samples(self):
        theta0 = 0.8371
        r = self._approximant_with_q([1.0, -2.0 * math.cos(theta0), 1.0])
        for samples in (64, 256, 1024, 4096):
            mag, theta = denominator_min_on_circle(r, samples)
            assert abs(theta - theta0) < math.pi / (samples - 1)
            # |Q'| <= 4 on the circle, so the grid minimum shrinks like 1/samples
            assert mag <= 4 * math.pi / (samples - 1)

    def test_sign_approximant_minimum_near_jump_preimage(self):
        """The [20/20] denominator of sign(x) dips at theta near pi/2 (the
        preimage of the jump at 0); checked against a dense scan."""
        r = build_pct(np.sign, Interval(-1, 1), 200, 20, 20)
        _, theta = denominator_min_on_circle(r, 512)
        assert abs(theta - math.pi / 2) < 0.05
        dense_mag, dense_theta = denominator_min_on_circle(r, 65536)
        assert abs(dense_theta - theta) < 0.01

    def test_too_few_samples_rejected(self):
        r = self._approximant_with_q([1.0, 0.0])
        with pytest.raises(ValueError):
            denominator_min_on_circle(r, 1)


class TestOrderCondition:
    def test_randomized_instances(self):
        """Q C - P vanishes through z^{n_p + n_q} (relative 1e-10) for random
        smooth functions and random degrees."""
        rng = np.random.default_rng(2024)
        for _ in range(60):
            amp = rng.uniform(0.5, 2.0, 3)
            freq = rng.uniform(0.5, 3.0, 2)
            mono = rng.uniform(-1, 1, int(rng.integers(1, 6)))

            def f(x):
                poly = sum(c * x**j for j, c in enumerate(mono))
                return amp[0] * np.sin(freq[0] * x) + amp[1] * np.exp(freq[1] * x) + amp[2] * poly

            n_q = int(rng.integers(1, 7))
            n_p = n_q + int(rng.integers(0, 7))
            n = n_p + n_q + 1 + int(rng.integers(0, 20))
            series = compute_coefficients(f, Interval(-1, 1), n, n_p + n_q)
            q = solve_denominator(build_toeplitz(series, n_p, n_q))
            p = compute_numerator(series, q, n_p, n_q)
            cs = series.coeffs.copy()
            cs[0] *= 0.5
            conv = np.convolve(cs, q)[: n_p + n_q + 1]
            resid = conv - np.concatenate([p, np.zeros(n_q)])
            scale = max(np.abs(cs).max(), 1e-30)
            assert np.abs(resid).max() <= 1e-10 * scale


def _denominators_from_shared_series(f, n, n_q, n_p_low, n_p_high):
    series = compute_coefficients(f, Interval(-1, 1), n, n_p_high + n_q)
    q_low = solve_denominator(build_toeplitz(series, n_p_low, n_q))
    q_high = solve_denominator(build_toeplitz(series, n_p_high, n_q))
    gap_low = toeplitz_singular_values(build_toeplitz(series, n_p_low, n_q))[-1]
    gap_high = toeplitz_singular_values(build_toeplitz(series, n_p_high, n_q))[-1]
    return q_low, q_high, min(gap_low, gap_high)


class TestFlipProperty:
    @pytest.mark.parametrize("j", [0, 1, 2, 3])
    def test_runge_denominators_flip(self, j):
        """[(n-j-1)/n_q] and [(n+j)/n_q] denominators from the same aliased
        coefficient sequence agree up to flip and sign."""
        f = REGISTRY["runge"].fn
        n, n_q = 32, 4
        q_low, q_high, gap = _denominators_from_shared_series(f, n, n_q, n - j - 1, n + j)
        assert gap > 1e-10  # one-dimensional nullspace regime
        flipped = q_high[::-1]
        dist = min(np.linalg.norm(q_low - flipped), np.linalg.norm(q_low + flipped))
        assert dist <= 1e-8

    def test_mirror_special_case(self):
        """j = 0: the [n-1/n_q] and [n/n_q] denominators coincide up to sign."""
        f = REGISTRY["runge"].fn
        n, n_q = 32, 4
        q_low, q_high, gap = _denominators_from_shared_series(f, n, n_q, n - 1, n)
        assert gap > 1e-10
        dist = min(np.linalg.norm(q_low - q_high), np.linalg.norm(q_low + q_high))
        assert dist <= 1e-8


class TestAliasAntisymmetry:
    @pytest.mark.parametrize("name", sorted(REGISTRY))
    @pytest.mark.parametrize("n", [8, 33])
    def test_registry_functions(self, name, n):
        """c_{kn+j,n} = -c_{kn-j,n} and c_{kn,n} = 0 for odd k."""
        entry = REGISTRY[name]
        cap = 4 * n
        series = compute_coefficients(entry.fn, entry.interval, n, cap)
        scale = max(1.0, np.abs(series.coeffs).max())
        for k in (1, 3):
            if k * n > cap:
                continue
            assert abs(series.coeffs[k * n]) <= 1e-12 * scale
            for j in range(1, min(2 * n, cap - k * n) + 1):
                if k * n - j < 0:
                    break
                total = series.coeffs[k * n + j] + series.coeffs[k * n - j]
                assert abs(total) <= 1e-12 * scale
