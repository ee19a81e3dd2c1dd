"""Sweep engine: determinism, continuation, contour extraction."""

import numpy as np
import pytest

from nlcscatter.errors import EmptyContour, InvalidParams
from nlcscatter.model import ModelParams
from nlcscatter.scattering import forcing_from_normalized, scattering_matrix
from nlcscatter.sweep import (
    GridSpec,
    marching_squares,
    run_sweep,
    superradiance_contour,
)


def small_grid(n_freq=41, n_amp=11, s_min=0.4, s_max=20.0):
    return GridSpec.from_ranges(1740.0, 1900.0, n_freq, s_min, s_max, n_amp)


class TestGridSpec:
    def test_default_shape(self):
        g = GridSpec.default()
        assert g.freq_hz.size == 161 and g.s_tilde.size == 61
        assert g.freq_hz[0] == 1740.0 and g.freq_hz[-1] == 1900.0
        assert g.s_tilde[0] == pytest.approx(0.1) and g.s_tilde[-1] == pytest.approx(25.0)
        assert np.all(np.diff(np.log(g.s_tilde)) > 0)

    def test_rejects_bad_axes(self):
        with pytest.raises(InvalidParams):
            GridSpec(freq_hz=np.array([2.0, 1.0]), s_tilde=np.array([1.0]))
        with pytest.raises(InvalidParams):
            GridSpec(freq_hz=np.array([1.0]), s_tilde=np.array([-1.0]))


class TestRunSweep:
    def test_single_cell_matches_point_call(self, ref_params):
        grid = GridSpec(freq_hz=np.array([1820.0]), s_tilde=np.array([1.5]))
        sw = run_sweep(ref_params, grid)
        from nlcscatter.model import build_coupling

        c = build_coupling(ref_params)
        s = forcing_from_normalized(ref_params, 1.5)
        direct = scattering_matrix(ref_params, c, 2 * np.pi * 1820.0, s)
        np.testing.assert_array_equal(sw.S[0, 0], direct.S)
        assert sw.alpha[0, 0, 0] == direct.alpha[0]
        assert sw.errors == {}

    def test_workers_bit_identical(self, ref_params):
        grid = small_grid()
        a = run_sweep(ref_params, grid, workers=1)
        b = run_sweep(ref_params, grid, workers=3)
        np.testing.assert_array_equal(a.S, b.S)
        np.testing.assert_array_equal(a.alpha, b.alpha)
        np.testing.assert_array_equal(a.rho, b.rho)
        np.testing.assert_array_equal(a.n_roots, b.n_roots)

    def test_policy_irrelevant_in_single_root_region(self, ref_params):
        # s_tilde >= 0.4 keeps the reference sweep out of the 3-root zone.
        grid = small_grid()
        a = run_sweep(ref_params, grid, policy="continuation")
        b = run_sweep(ref_params, grid, policy="largest-stable")
        assert int(a.n_roots.max()) == 1
        np.testing.assert_array_equal(a.S, b.S)

    def test_cell_errors_recorded_not_fatal(self, ref_params, monkeypatch):
        import nlcscatter.sweep as sweep_mod

        real = sweep_mod.scattering_matrix
        bad_omega = 2 * np.pi * 1820.0

        def flaky(p, c, omega, s, **kw):
            if abs(omega - bad_omega) < 1e-9:
                raise InvalidParams("synthetic cell failure")
            return real(p, c, omega, s, **kw)

        monkeypatch.setattr(sweep_mod, "scattering_matrix", flaky)
        grid = GridSpec(
            freq_hz=np.array([1819.0, 1820.0, 1821.0]), s_tilde=np.array([1.0, 2.0])
        )
        sw = run_sweep(ref_params, grid, workers=1)
        assert set(sw.errors) == {(1, 0), (1, 1)}
        assert all("synthetic cell failure" in msg for msg in sw.errors.values())
        assert np.all(np.isnan(sw.alpha[:, 1, :]))
        assert not np.any(np.isnan(sw.alpha[:, [0, 2], :]))

    def test_result_at_view(self, ref_params):
        grid = GridSpec(freq_hz=np.array([1800.0, 1820.0]), s_tilde=np.array([1.5]))
        sw = run_sweep(ref_params, grid)
        cell = sw.result_at(1, 0)
        assert cell["freq_hz"] == 1820.0
        assert cell["s_tilde"] == 1.5
        assert cell["error"] is None
        assert cell["n_roots"] == (1, 1)


class TestMarchingSquares:
    def test_uniform_sign_raises(self):
        xs, ys = np.arange(5.0), np.arange(4.0)
        with pytest.raises(EmptyContour):
            marching_squares(xs, ys, np.ones((4, 5)))

    def test_linear_field_horizontal_line(self):
        # f(x, y) = y - 1: single straight contour at y = 1.
        xs = np.linspace(0, 10, 21)
        ys = np.linspace(0, 3, 16)
        vals = np.broadcast_to((ys - 1.0)[:, None], (16, 21)).copy()
        lines = marching_squares(xs, ys, vals)
        assert len(lines) == 1
        assert np.allclose(lines[0][:, 1], 1.0, atol=1e-12)
        # Spans the full x range.
        assert lines[0][:, 0].min() == pytest.approx(0.0)
        assert lines[0][:, 0].max() == pytest.approx(10.0)

    def test_circle_closed_loop(self):
        xs = np.linspace(-2, 2, 81)
        ys = np.linspace(-2, 2, 81)
        X, Y = np.meshgrid(xs, ys)
        lines = marching_squares(xs, ys, X**2 + Y**2 - 1.0)
        assert len(lines) == 1
        loop = lines[0]
        # Closed: first and last vertices coincide.
        np.testing.assert_allclose(loop[0], loop[-1], atol=1e-12)
        radii = np.hypot(loop[:, 0], loop[:, 1])
        assert np.max(np.abs(radii - 1.0)) < 0.05 * 2  # sub-cell accuracy

    def test_nan_cells_skipped(self):
        xs = np.linspace(0, 4, 5)
        ys = np.linspace(0, 4, 5)
        vals = np.broadcast_to((ys - 2.0)[:, None], (5, 5)).copy()
        vals[2, 2] = np.nan
        lines = marching_squares(xs, ys, vals)
        # Contour split around the NaN hole; both pieces survive.
        assert len(lines) == 2

    def test_refinement_stability(self):
        # Doubling the resolution moves contour vertices by less than one
        # coarse cell diagonal (in index units).
        def field(X, Y):
            return Y - (1.0 + 0.3 * np.sin(X))

        xs_c = np.linspace(0, 6, 31)
        ys_c = np.linspace(0, 3, 16)
        xs_f = np.linspace(0, 6, 61)
        ys_f = np.linspace(0, 3, 31)
        Xc, Yc = np.meshgrid(xs_c, ys_c)
        Xf, Yf = np.meshgrid(xs_f, ys_f)
        coarse = marching_squares(xs_c, ys_c, field(Xc, Yc))
        fine = marching_squares(xs_f, ys_f, field(Xf, Yf))
        dx = xs_c[1] - xs_c[0]
        dy = ys_c[1] - ys_c[0]
        coarse_pts = np.vstack(coarse) / [dx, dy]
        for line in fine:
            for pt in line / [dx, dy]:
                d = np.min(np.hypot(*(coarse_pts - pt).T))
                assert d < np.sqrt(2.0)


class TestSuperradianceContour:
    def test_reference_contours_exist(self, ref_params):
        sw = run_sweep(ref_params, small_grid(n_freq=81, n_amp=31, s_min=0.1, s_max=25.0))
        for port in (1, 2):
            lines = superradiance_contour(sw, port)
            assert len(lines) >= 1
            for line in lines:
                assert line.shape[0] >= 2

    def test_uniform_sign_grid(self, ref_params):
        # Restricted to low amplitudes near resonance everything is
        # superradiant for port 1: no contour.
        grid = GridSpec.from_ranges(1810.0, 1830.0, 11, 0.5, 2.0, 5)
        sw = run_sweep(ref_params, grid)
        with pytest.raises(EmptyContour):
            superradiance_contour(sw, 1)

    def test_bad_port(self, ref_params):
        sw = run_sweep(ref_params, GridSpec(freq_hz=np.array([1820.0]), s_tilde=np.array([1.0])))
        with pytest.raises(InvalidParams):
            superradiance_contour(sw, 3)


def test_superradiant_region_connected(ref_params):
    # The alpha_j < 0 set contains (omega0, low amplitude) and is connected
    # on the grid (4-neighbour flood fill).
    sw = run_sweep(ref_params, small_grid(n_freq=81, n_amp=31, s_min=0.1, s_max=25.0))
    for port in (1, 2):
        neg = sw.alpha[:, :, port - 1] < 0
        j0 = 0
        i0 = int(np.argmin(np.abs(sw.freq_hz - 1820.0)))
        assert neg[j0, i0]
        # flood fill from (j0, i0)
        seen = np.zeros_like(neg, dtype=bool)
        stack = [(j0, i0)]
        seen[j0, i0] = True
        while stack:
            j, i = stack.pop()
            for dj, di in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                jj, ii = j + dj, i + di
                if 0 <= jj < neg.shape[0] and 0 <= ii < neg.shape[1]:
                    if neg[jj, ii] and not seen[jj, ii]:
                        seen[jj, ii] = True
                        stack.append((jj, ii))
        # every negative cell is reached from the seed
        assert np.array_equal(seen, neg)
