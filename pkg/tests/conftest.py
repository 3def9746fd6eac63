"""
Pytest configuration and fixtures.
"""

import pytest

from ars548_toolkit.model import ObjectClass
from ars548_toolkit.simulator import DetectionNoise, Scenario, ScenarioObject
from tests.builders import free_udp_port, loopback_transport
from tests.config_helpers import config_overrides


@pytest.fixture
def mock_config():
    """Config reset to factory values for the duration of a test."""
    with config_overrides() as config:
        yield config


@pytest.fixture
def data_port():
    """Free UDP port for sensor data."""
    return free_udp_port()


@pytest.fixture
def loopback_config(data_port):
    """Transport config receiving unicast on the loopback interface."""
    return loopback_transport(data_port)


@pytest.fixture
def two_objects_scenario():
    """Two moving cars with moderate detection noise, 10 s at 20 Hz."""
    return Scenario(
        duration=10.0,
        cycle_rate=20.0,
        objects=(
            ScenarioObject(x=20.0, y=4.0, vy=-1.388889, detections_per_cycle=4),
            ScenarioObject(
                x=30.0,
                y=-3.5,
                vx=13.888889,
                classification=ObjectClass.CAR,
                detections_per_cycle=6,
            ),
        ),
        noise=DetectionNoise(
            range_std=0.1, azimuth_std=0.002, elevation_std=0.002, range_rate_std=0.05
        ),
        seed=7,
    )


@pytest.fixture
def noiseless_scenario():
    """One target straight ahead at 10 m closing at 5 m/s, no noise."""
    return Scenario(
        duration=1.0,
        cycle_rate=20.0,
        objects=(ScenarioObject(x=10.0, y=0.0, vx=-5.0),),
        seed=1,
    )
