import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1337)


@pytest.fixture
def dl_config():
    """Small downlink scenario for fast end to end tests"""
    from pybeamtrack.scenario import ScenarioConfig

    return ScenarioConfig.for_mode("DL", n_runs=4, n_slots=5, seed=42)


@pytest.fixture
def ul_config():
    """Small uplink scenario for fast end to end tests"""
    from pybeamtrack.scenario import ScenarioConfig

    return ScenarioConfig.for_mode("UL", k_users=2, n_runs=3, n_slots=4, seed=7)
