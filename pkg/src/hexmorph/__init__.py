"""Token-exchange morphogenesis on a periodic hexagonal lattice."""

from .dynamics import GrowthScope, ModelParams, SimState, amputate, initial_state, step
from .metrics import MetricsRecord, compute_metrics, recovery_index, track_components
from .scenarios import (Regime, RunResult, ScenarioConfig, classify,
                        regeneration_experiment, replication_monitor, run, sweep)

__all__ = [
    "GrowthScope", "ModelParams", "SimState", "amputate", "initial_state", "step",
    "MetricsRecord", "compute_metrics", "recovery_index", "track_components",
    "Regime", "RunResult", "ScenarioConfig", "classify",
    "regeneration_experiment", "replication_monitor", "run", "sweep",
]
