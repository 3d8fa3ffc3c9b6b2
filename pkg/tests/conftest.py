import pytest

from qaserdyn import ModelParams


@pytest.fixture
def resonant_params() -> ModelParams:
    """Reference parameter set at combination resonance (documented defaults)."""
    return ModelParams(omega0=7.93624, Omega=3.96812, delta=0.4, nu_d=2.0)


@pytest.fixture
def nominal_params() -> ModelParams:
    """Round-number parameter set used for closed-form spot values."""
    return ModelParams(omega0=8.0, Omega=4.0, delta=0.4, nu_d=2.0)
