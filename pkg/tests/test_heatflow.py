"""Tests for the 1D flow evolution and envelope comparisons."""

import math

import numpy as np
import pytest

from eigenbounds.coefficients import CurvatureParams, drift_kahler
from eigenbounds.errors import DegenerateInitialData, DomainError, StabilityFailure
from eigenbounds.heatflow import (
    FIT_RESIDUAL_MAX,
    GRAPHICAL_MCF,
    LINEAR,
    FlowProfile,
    FlowResult,
    heatflow_1d,
    modulus_envelope_check,
)

PI = math.pi


def _psi(s):
    # first mixed eigenfunction of the flat half-problem, slope 1 at 0
    return np.sin(PI * np.asarray(s, dtype=float)) / PI


def _sign_like(x):
    return np.tanh(6.0 * x)


class TestDecayRates:
    def test_flat_rate_is_pi2(self):
        r = heatflow_1d(None, LINEAR, 0.5, _sign_like, 3.0, n=128, fit_target=PI**2)
        assert r.fit is not None
        assert abs(r.fit.fitted_rate - PI**2) / PI**2 < 1e-2
        assert r.fit.fit_residual < FIT_RESIDUAL_MAX
        assert r.fit.fit_window[0] == pytest.approx(2.0, abs=0.01)

    def test_kappa2_drift_rate_is_three(self):
        params = CurvatureParams(m=2, kappa1=0.0, kappa2=1.0)
        r = heatflow_1d(
            lambda x: drift_kahler(params, x),
            LINEAR,
            PI / 2,
            lambda x: np.tanh(4.0 * x),
            2.0,
            n=128,
            fit_target=3.0,
        )
        assert abs(r.fit.fitted_rate - 3.0) / 3.0 < 1e-2
        assert r.fit.fit_residual < FIT_RESIDUAL_MAX

    def test_no_fit_without_target(self):
        r = heatflow_1d(None, LINEAR, 0.5, _sign_like, 0.2, n=64)
        assert r.fit is None


class TestOscillation:
    def test_monotone_under_heat(self):
        r = heatflow_1d(None, LINEAR, 0.5, _sign_like, 1.0, n=64)
        assert np.all(np.diff(r.osc) <= 1e-12 * r.osc[0])

    def test_monotone_under_graphical_mcf(self):
        r = heatflow_1d(None, GRAPHICAL_MCF, 0.5, lambda x: np.tanh(10.0 * x), 1.0, n=128)
        assert np.all(np.diff(r.osc) <= 1e-12 * r.osc[0])
        assert r.osc[-1] < 0.01 * r.osc[0]


class TestFailureModes:
    def test_constant_initial_data(self):
        with pytest.raises(DegenerateInitialData):
            heatflow_1d(None, LINEAR, 0.5, lambda x: np.ones_like(x), 1.0, n=32)

    def test_stability_failure_on_huge_diffusivity(self):
        stiff = FlowProfile(
            alpha=lambda s: np.full_like(s, 1e9), beta=lambda s: np.ones_like(s), name="stiff"
        )
        with pytest.raises(StabilityFailure):
            heatflow_1d(None, stiff, 0.5, _sign_like, 1.0, n=16)

    def test_profile_positivity_enforced(self):
        bad = FlowProfile(
            alpha=lambda s: 1.0 - 10.0 * s * s, beta=lambda s: np.ones_like(s), name="bad"
        )
        with pytest.raises(DomainError):
            heatflow_1d(None, bad, 0.5, lambda x: np.tanh(10.0 * x), 0.1, n=32)

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            heatflow_1d(None, LINEAR, 0.0, _sign_like, 1.0)
        with pytest.raises(DomainError):
            heatflow_1d(None, LINEAR, 0.5, _sign_like, -1.0)
        with pytest.raises(DomainError):
            heatflow_1d(None, LINEAR, 0.5, _sign_like, 1.0, n=8)
        with pytest.raises(DomainError):
            heatflow_1d(None, LINEAR, 0.5, np.zeros(7), 1.0, n=32)


def _envelope_constant(C, lam):
    def env(s, t):
        return C * math.exp(-lam * t) * _psi(s)

    return env


def _calibrate(flow):
    iu, ju = np.triu_indices(len(flow.xs), k=1)
    s_pairs = 0.5 * np.abs(flow.xs[ju] - flow.xs[iu])
    gaps = np.abs(flow.states[0][ju] - flow.states[0][iu])
    return float(np.max(gaps / (2.0 * _psi(s_pairs))))


class TestEnvelope:
    def test_generic_data_never_violates(self):
        flow = heatflow_1d(None, LINEAR, 0.5, _sign_like, 1.5, n=128)
        C = _calibrate(flow)
        rep = modulus_envelope_check(flow, _envelope_constant(C, PI**2))
        assert rep.ok
        assert rep.max_violation <= 1e-6
        assert rep.initial_violation <= 1e-12

    def test_random_smooth_data(self):
        rng = np.random.default_rng(20240819)
        coef = rng.normal(size=4)

        def u0(x):
            out = np.sin(PI * x)
            for j, c in enumerate(coef):
                out = out + 0.2 * c * np.cos((j + 1) * PI * x) / (j + 1)
            return out

        flow = heatflow_1d(None, LINEAR, 0.5, u0, 1.5, n=128)
        C = _calibrate(flow)
        rep = modulus_envelope_check(flow, _envelope_constant(C, PI**2))
        assert rep.ok
        assert rep.max_violation <= 1e-6

    def test_separable_equality_case(self):
        # the envelope-generating solution: violation bounded by grid error
        flow = heatflow_1d(None, LINEAR, 0.5, lambda x: _psi(x), 1.0, n=128)
        rep = modulus_envelope_check(flow, _envelope_constant(1.0, PI**2), tol=1e-3)
        assert rep.ok
        assert rep.max_violation <= 5e-4

    def test_constant_trajectory_dominated_by_any_envelope(self):
        xs = np.linspace(-0.45, 0.45, 32)
        states = np.ones((3, 32)) * 0.7
        flow = FlowResult(
            xs=xs,
            times=np.array([0.0, 0.5, 1.0]),
            states=states,
            osc=np.zeros(3),
            profile=LINEAR,
            drift=None,
            length=0.5,
        )
        rep = modulus_envelope_check(flow, lambda s, t: 0.1 * np.ones_like(s))
        assert rep.ok
        assert rep.max_violation == pytest.approx(-0.2)

    def test_rejects_decreasing_barrier(self):
        flow = heatflow_1d(None, LINEAR, 0.5, _sign_like, 0.5, n=64)
        rep = modulus_envelope_check(
            flow, lambda s, t: 5.0 * math.exp(-PI**2 * t) * np.cos(PI * np.asarray(s))
        )
        assert not rep.ok
        assert rep.monotone_margin < 0

    def test_rejects_too_fast_decay(self):
        # decays faster than its own diffusion allows: not a supersolution
        flow = heatflow_1d(None, LINEAR, 0.5, _sign_like, 0.5, n=64)
        rep = modulus_envelope_check(flow, _envelope_constant(5.0, 30.0))
        assert not rep.ok
        assert rep.supersolution_margin < 0
