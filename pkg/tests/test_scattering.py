"""S-matrix assembly, absorption, linear limit, saturation, asymmetry."""

import math

import numpy as np
import pytest

from nlcscatter.errors import NoLimitCycle, ZeroInput
from nlcscatter.model import ModelParams, background_matrix, build_coupling
from nlcscatter.scattering import (
    absorption,
    forcing_from_normalized,
    limit_cycle_amplitude,
    normalized_amplitude,
    scattering_from_signals,
    scattering_matrix,
)


class TestLimitCycle:
    def test_unit_values(self):
        p = ModelParams(omega0=10, nu=1, kappa=1, gamma=1, sigma=1, epsilon=0)
        assert limit_cycle_amplitude(p) == 1.0

    def test_reference_value(self, ref_params):
        # sqrt(nu/kappa) = sqrt(0.004 * 2*pi*1820) ~ 6.763
        a0 = limit_cycle_amplitude(ref_params)
        assert a0 == pytest.approx(math.sqrt(ref_params.nu), rel=1e-15)
        assert a0 == pytest.approx(6.763, abs=5e-4)

    def test_no_limit_cycle(self):
        p = ModelParams(omega0=10, nu=-1, kappa=1, gamma=1, sigma=1, epsilon=0)
        with pytest.raises(NoLimitCycle):
            limit_cycle_amplitude(p)

    def test_normalization_round_trip(self, ref_params):
        s = forcing_from_normalized(ref_params, 1.5)
        assert normalized_amplitude(ref_params, s) == pytest.approx(1.5, rel=1e-14)


class TestLinearLimit:
    def test_fan_reflection_lorentzian(self, matched_params):
        # sigma=1, eps=0, mode suppressed: |S11|^2 = gamma^2/(gamma^2+Delta^2).
        p = matched_params
        c = build_coupling(p)
        for delta in np.linspace(-6, 6, 201) * p.gamma:
            res = scattering_matrix(p, c, p.omega0 + delta, s=1.0, include_mode=False)
            want = p.gamma**2 / (p.gamma**2 + delta**2)
            assert abs(abs(res.S[0, 0]) ** 2 - want) < 1e-12
            np.testing.assert_array_equal(res.S, res.S_linear)

    def test_matched_alpha_zero_everywhere(self, matched_params):
        p = matched_params
        c = build_coupling(p)
        for delta in np.linspace(-8, 8, 33) * p.gamma:
            res = scattering_matrix(p, c, p.omega0 + delta, s=1.0, include_mode=False)
            # alpha is analytically zero; the strict alpha<0 flag is noise here.
            assert res.alpha[0] == pytest.approx(0.0, abs=1e-12)
            assert res.alpha[1] == pytest.approx(0.0, abs=1e-12)


class TestScatteringMatrix:
    def test_split_is_exact(self, ref_params, ref_coupling):
        p, c = ref_params, ref_coupling
        s = forcing_from_normalized(p, 1.5)
        res = scattering_matrix(p, c, p.omega0 + p.nu, s)
        np.testing.assert_array_equal(res.S, res.S_linear + res.S_nonlinear)
        np.testing.assert_allclose(
            res.S_linear, background_matrix(c, p, p.omega0 + p.nu), atol=0
        )

    def test_nonlinear_columns_from_responses(self, ref_params, ref_coupling):
        p, c = ref_params, ref_coupling
        s = forcing_from_normalized(p, 0.8)
        res = scattering_matrix(p, c, p.omega0 - 2 * p.nu, s)
        for j in (1, 2):
            fr = res.responses[j - 1]
            col = c.D * fr.rho * np.exp(1j * fr.phi) / s
            np.testing.assert_allclose(res.S_nonlinear[:, j - 1], col, rtol=1e-14)

    def test_superradiance_at_reference_point(self, ref_params, ref_coupling):
        # (omega0, s_tilde=0.6): both ports amplify the incident wave.
        p, c = ref_params, ref_coupling
        res = scattering_matrix(p, c, p.omega0, forcing_from_normalized(p, 0.6))
        assert res.alpha[0] < 0 and res.alpha[1] < 0
        assert res.superradiant == (True, True)

    def test_saturation_exponent(self, ref_params, ref_coupling):
        # ||S - S_linear|| ~ s_tilde^{-2/3} at fixed omega.
        p, c = ref_params, ref_coupling
        sts = np.array([1e2, 1e3, 1e4])
        defects = []
        for st in sts:
            res = scattering_matrix(p, c, p.omega0, forcing_from_normalized(p, st))
            defects.append(np.linalg.norm(res.S_nonlinear))
        slope = np.polyfit(np.log(sts), np.log(defects), 1)[0]
        assert slope == pytest.approx(-2.0 / 3.0, abs=0.02)

    def test_reflection_asymmetry(self, ref_params, ref_coupling):
        p, c = ref_params, ref_coupling
        # Linear part: |S11|/|S22| = g^2 at every detuning.
        for delta in np.linspace(-5, 5, 21) * p.gamma:
            S = background_matrix(c, p, p.omega0 + delta)
            assert abs(S[0, 0]) / abs(S[1, 1]) == pytest.approx(c.g**2, rel=1e-12)
        # Full nonlinear S keeps |S11| > |S22| at resonance (single-root zone).
        for st in (0.6, 1.5, 9.0):
            res = scattering_matrix(p, c, p.omega0, forcing_from_normalized(p, st))
            assert res.responses[0].n_real_roots == 1
            assert abs(res.S[0, 0]) > abs(res.S[1, 1])

    def test_energy_bookkeeping(self, ref_params, ref_coupling):
        p, c = ref_params, ref_coupling
        res = scattering_matrix(p, c, p.omega0 + 3 * p.nu, forcing_from_normalized(p, 2.0))
        for j in (1, 2):
            e = np.zeros(2)
            e[j - 1] = 1.0
            assert res.alpha[j - 1] == pytest.approx(
                1.0 - np.linalg.norm(res.S @ e) ** 2, abs=1e-14
            )

    def test_multi_root_warning(self):
        # Three-root point: result carries a branch-ambiguity warning.
        p = ModelParams(omega0=100, nu=1, kappa=1, gamma=1, sigma=1, epsilon=0)
        c = build_coupling(p)
        res = scattering_matrix(p, c, omega=100.0, s=0.01)
        assert res.responses[0].n_real_roots == 3
        assert any("branch-dependent" in w for w in res.warnings)

    def test_s_tilde_nan_without_limit_cycle(self):
        p = ModelParams(omega0=100, nu=-0.5, kappa=1, gamma=1, sigma=1, epsilon=0)
        c = build_coupling(p)
        res = scattering_matrix(p, c, omega=100.0, s=1.0)
        assert math.isnan(res.s_tilde)

    def test_rejects_zero_forcing(self, ref_params, ref_coupling):
        with pytest.raises(ZeroInput):
            scattering_matrix(ref_params, ref_coupling, ref_params.omega0, 0.0)


class TestRankOneEstimate:
    def test_port1_unit_input(self):
        S = scattering_from_signals([1.0, 0.0], [0.3 + 0.1j, 0.9])
        np.testing.assert_allclose(S, [[0.3 + 0.1j, 0.0], [0.9, 0.0]], atol=0)

    def test_port2_unit_input(self):
        S = scattering_from_signals([0.0, 1.0], [0.7, 0.2 - 0.4j])
        np.testing.assert_allclose(S, [[0.0, 0.7], [0.0, 0.2 - 0.4j]], atol=0)

    def test_zero_input_rejected(self):
        with pytest.raises(ZeroInput):
            scattering_from_signals([0.0, 0.0], [1.0, 1.0])

    def test_column_assembly_reproduces_matrix(self, ref_params, ref_coupling):
        # Feeding each column's exact outgoing wave back through the rank-1
        # formula reassembles S.
        p, c = ref_params, ref_coupling
        s = forcing_from_normalized(p, 1.5)
        res = scattering_matrix(p, c, p.omega0 + p.nu, s)
        total = np.zeros((2, 2), dtype=complex)
        for j in (1, 2):
            s_in = np.zeros(2, dtype=complex)
            s_in[j - 1] = s
            total += scattering_from_signals(s_in, res.S @ s_in)
        np.testing.assert_allclose(total, res.S, rtol=1e-14)


class TestAbsorption:
    def test_unitary_matrix(self):
        theta = 0.7
        U = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]],
            dtype=complex,
        )
        assert absorption(U, 1) == pytest.approx(0.0, abs=1e-15)
        assert absorption(U, 2) == pytest.approx(0.0, abs=1e-15)

    def test_amplifying_matrix(self):
        S = np.array([[2.0, 0.0], [0.0, 0.0]], dtype=complex)
        assert absorption(S, 1) == -3.0
        assert absorption(S, 2) == 1.0
