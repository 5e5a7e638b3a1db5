"""Chebyshev and signed-power filterbanks and aggregate features."""

import numpy as np
import pytest

from adoge import (
    DimensionMismatch,
    SpectralHistogram,
    aggregate,
    bin_centers,
    chebyshev_frf_table,
    power_frf_table,
)


class TestChebyshev:
    def test_first_rows(self):
        t = chebyshev_frf_table(3, 8)
        x = bin_centers(8)
        assert np.array_equal(t.values[0], np.ones(8))
        assert np.array_equal(t.values[1], x)
        assert np.allclose(t.values[2], 2 * x * x - 1, atol=1e-15)

    def test_matches_cosine_form(self):
        # T_k(cos t) = cos(k t); recurrence vs closed form on [-1, 1].
        t = chebyshev_frf_table(100, 200)
        x = bin_centers(200)
        for row in range(100):
            ref = np.cos(row * np.arccos(x))
            assert np.allclose(t.values[row], ref, atol=1e-10)

    def test_bounded_by_one(self):
        t = chebyshev_frf_table(100, 200)
        assert np.max(np.abs(t.values)) <= 1.0 + 1e-12

    def test_row_ids_one_based(self):
        t = chebyshev_frf_table(4, 8)
        assert t.row_ids == (1, 2, 3, 4)
        assert t.power_guard is None
        assert t.k == 4 and t.num_bins == 8

    def test_rejects_nonpositive_k(self):
        with pytest.raises(ValueError):
            chebyshev_frf_table(0, 8)


class TestPower:
    def test_exponent_order(self):
        t = power_frf_table(6, 8)
        assert t.row_ids == (1, 2, 3, -1, -2, -3)

    def test_positive_rows_are_plain_powers(self):
        t = power_frf_table(4, 8, eps_guard=0.3)
        x = bin_centers(8)
        assert np.array_equal(t.values[0], x)
        assert np.allclose(t.values[1], x * x, atol=1e-16)

    def test_guard_zeroes_negative_rows_only(self):
        # B = 200, guard 0.05: exactly the 10 centers nearest zero drop out
        # of negative-power rows; positive rows keep every bin.
        t = power_frf_table(100, 200, eps_guard=0.05)
        x = bin_centers(200)
        guarded = np.abs(x) < 0.05
        assert int(guarded.sum()) == 10
        for row, expo in enumerate(t.row_ids):
            if expo < 0:
                assert np.all(t.values[row][guarded] == 0.0)
                assert np.all(np.isfinite(t.values[row]))
                assert np.all(t.values[row][~guarded] != 0.0)
            else:
                assert np.all(t.values[row] == x**expo)

    def test_guard_boundary_is_strict(self):
        # Centers at exactly |c| == eps_guard stay live.
        t = power_frf_table(2, 4, eps_guard=0.25)
        assert np.all(t.values[1] != 0.0)
        t2 = power_frf_table(2, 4, eps_guard=0.250001)
        assert t2.values[1][1] == 0.0 and t2.values[1][2] == 0.0

    def test_zero_guard_is_finite_for_even_bins(self):
        # Even B means no center sits at 0, so an unguarded table is finite.
        t = power_frf_table(8, 40, eps_guard=0.0)
        assert np.all(np.isfinite(t.values))

    def test_reciprocal_identity(self):
        t = power_frf_table(4, 16, eps_guard=0.0)
        x = bin_centers(16)
        assert np.allclose(t.values[2] * x, 1.0, atol=1e-12)

    def test_rejects_odd_or_small_k(self):
        with pytest.raises(ValueError):
            power_frf_table(3, 8)
        with pytest.raises(ValueError):
            power_frf_table(0, 8)

    def test_rejects_negative_guard(self):
        with pytest.raises(ValueError):
            power_frf_table(4, 8, eps_guard=-0.1)


class TestAggregate:
    def test_constant_response_sums_bins(self):
        h = SpectralHistogram(np.array([1.0, 0.0, 0.0, 1.0]), "dos", 2)
        t = chebyshev_frf_table(1, 4)
        g = aggregate(h, t)
        # g_1 = sum_b h(c_b) * 1 = mass / delta.
        assert g.shape == (1,)
        assert g[0] == pytest.approx(2.0, abs=1e-15)

    def test_k2_second_moment(self):
        # DOS(K2) = (1,0,0,1) at B=4; lambda^2 sampled at centers gives
        # g = 1 * 0.75^2 + 1 * 0.75^2 = 1.125.
        h = SpectralHistogram(np.array([1.0, 0.0, 0.0, 1.0]), "dos", 2)
        t = power_frf_table(4, 4)
        assert t.row_ids == (1, 2, -1, -2)
        g = aggregate(h, t)
        assert g[1] == pytest.approx(1.125, abs=1e-15)

    def test_no_bin_width_factor(self):
        # Aggregates are plain dot products; doubling B (halving delta)
        # roughly doubles g for a fixed density.
        h4 = SpectralHistogram(np.full(4, 0.5), "dos", 2)
        h8 = SpectralHistogram(np.full(8, 0.5), "dos", 2)
        t4 = chebyshev_frf_table(1, 4)
        t8 = chebyshev_frf_table(1, 8)
        assert aggregate(h8, t8)[0] == pytest.approx(2 * aggregate(h4, t4)[0])

    def test_bin_mismatch_rejected(self):
        h = SpectralHistogram(np.zeros(4), "dos", 2)
        t = chebyshev_frf_table(2, 8)
        with pytest.raises(DimensionMismatch):
            aggregate(h, t)
