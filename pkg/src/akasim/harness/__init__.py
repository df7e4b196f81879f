"""Simulated bus, adversaries and the scenario matrix."""

from akasim.harness.adversary import Adversary, AdversaryKind, assert_sound
from akasim.harness.bus import Bus, FaultSchedule
from akasim.harness.report import EXPECTED_SUCCESS, MatrixReport, MatrixRow, run_matrix
from akasim.harness.scenarios import PROPERTY_OF, SCENARIOS, ScenarioOutcome, run_scenario
from akasim.harness.world import NETWORK_A, NETWORK_B, World, build_world, network_for

__all__ = [
    "Adversary", "AdversaryKind", "Bus", "EXPECTED_SUCCESS", "FaultSchedule", "MatrixReport",
    "MatrixRow", "NETWORK_A", "NETWORK_B", "PROPERTY_OF", "SCENARIOS", "ScenarioOutcome", "World",
    "assert_sound", "build_world", "network_for", "run_matrix", "run_scenario",
]
