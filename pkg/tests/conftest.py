import math

import numpy as np
import pytest

from ioncavity import InitialState, ModelBasis, ScenarioConfig, SystemParams, analytic_eigensystem, build_profile
from ioncavity.settings import PRESET_KAPPAS, to_scaled_units

# T = 45, 90 and 135 degrees on the default 721-point grid
IDX_45 = 180
IDX_90 = 360
IDX_135 = 540


@pytest.fixture(scope="session")
def params():
    """a11 = 1, mu11 = 4, Omega = sqrt(15)."""
    return SystemParams.from_alpha(math.sqrt(15.0), 4.0)


@pytest.fixture(scope="session")
def scenario():
    return to_scaled_units(ScenarioConfig())


@pytest.fixture(scope="session")
def times(scenario):
    return scenario.times


@pytest.fixture(scope="session")
def eig(scenario):
    return analytic_eigensystem(scenario.params)


@pytest.fixture(scope="session")
def rho0():
    return InitialState().density(ModelBasis())


@pytest.fixture(scope="session")
def profiles(scenario):
    return {
        kappa: build_profile(scenario.bath.with_kappa(kappa), scenario.params, scenario.times)
        for kappa in PRESET_KAPPAS
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (x + x.conj().T)


def random_density(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real
