"""Shared fixtures: the biased-cavity reference parameter set used throughout.

Reference values: f0 = 1820 Hz, nu = 0.4% of omega0, gamma = 2*nu, kappa = 1,
sigma = 0.6, epsilon = 0.3.
"""

import math

import pytest

from nlcscatter.model import ModelParams, build_coupling

OMEGA0 = 2.0 * math.pi * 1820.0


@pytest.fixture(scope="session")
def ref_params() -> ModelParams:
    return ModelParams(
        omega0=OMEGA0,
        nu=0.004 * OMEGA0,
        kappa=1.0,
        gamma=0.008 * OMEGA0,
        sigma=0.6,
        epsilon=0.3,
    )


@pytest.fixture(scope="session")
def ref_coupling(ref_params):
    return build_coupling(ref_params)


@pytest.fixture(scope="session")
def matched_params() -> ModelParams:
    """Perfectly matched scatterer: sigma=1, eps=0 (unitary background)."""
    return ModelParams(
        omega0=OMEGA0,
        nu=0.004 * OMEGA0,
        kappa=1.0,
        gamma=0.008 * OMEGA0,
        sigma=1.0,
        epsilon=0.0,
    )
