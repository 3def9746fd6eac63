"""
Simulator module - a scenario-driven ARS 548 emulator.
"""

from .emitter import EmissionSummary, SensorSimulator, run_emitter
from .scenario import (
    DetectionNoise,
    Scenario,
    ScenarioObject,
    SensorSetup,
    propagate,
)
from .synthesis import (
    CLASS_RCS_DBSM,
    CycleFrames,
    GroundTruth,
    GroundTruthObject,
    cycle_stamp,
    initial_status,
    noise_generator,
    synthesize_cycle,
)

__all__ = [
    "CLASS_RCS_DBSM",
    "CycleFrames",
    "DetectionNoise",
    "EmissionSummary",
    "GroundTruth",
    "GroundTruthObject",
    "Scenario",
    "ScenarioObject",
    "SensorSetup",
    "SensorSimulator",
    "cycle_stamp",
    "initial_status",
    "noise_generator",
    "propagate",
    "run_emitter",
    "synthesize_cycle",
]
