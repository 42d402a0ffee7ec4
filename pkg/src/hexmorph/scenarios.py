"""Reproducible experiment protocols on top of the step engine: single
runs, parameter sweeps with derived per-cell seeds, regime classification,
amputation/regeneration experiments, and replication monitoring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .dynamics import ModelParams, SimState, amputate, initial_state, step
from .metrics import (ComponentTrack, MetricsRecord, compute_metrics,
                      recovery_index, track_components)


class Regime(Enum):
    EXTINCT = "Extinct"
    SMALL_FIXED_CLUSTER = "SmallFixedCluster"
    LIMB_EXTENSION = "LimbExtension"
    MESH_EXPANSION = "MeshExpansion"
    FULL_EXPANSION = "FullExpansion"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class ClassifyThresholds:
    """Regime boundaries; defaults follow the published qualitative bands."""
    small_area: int = 200
    stable_window: int = 50
    max_area_drift: int = 0          # allowed area change for "fixed" clusters
    full_fraction: float = 0.8       # of the whole lattice
    limb_circularity: float = 0.2
    limb_ratio: tuple[float, float] = (2.0, 3.5)


@dataclass(frozen=True)
class ScenarioConfig:
    width: int = 150
    height: int = 150
    radius: float = 20.0
    params: ModelParams = field(default_factory=ModelParams)
    seed: int = 1
    steps: int = 400
    snapshot_every: int = 0                    # 0 = no snapshots
    amputation_step: int | None = None
    amputation_rows: tuple[int, int] = (0, 64)
    checkpoint_step: int = 400
    sweep_axes: dict = field(default_factory=dict)   # param name -> list of values
    sweep_cap: int = 1024
    track_components: bool = False
    thresholds: ClassifyThresholds = field(default_factory=ClassifyThresholds)

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.amputation_step is not None and not (0 < self.amputation_step < self.steps):
            raise ValueError("amputation step must fall inside the run")
        for name in self.sweep_axes:
            if not hasattr(self.params, name):
                raise ValueError(f"unknown sweep parameter {name!r}")


@dataclass
class RunResult:
    config: ScenarioConfig
    series: list[MetricsRecord]
    snapshots: list[tuple[int, np.ndarray, np.ndarray]]
    label: Regime
    ri_series: list[tuple[int, float]] = field(default_factory=list)
    ri_success_step: int | None = None          # steps after the cut, or None
    ri_v_pre: float | None = None
    ri_v_post: float | None = None
    component_counts: list[int] = field(default_factory=list)
    births: list[tuple[int, int]] = field(default_factory=list)      # (step, id)
    persistence: dict = field(default_factory=dict)                  # id -> max run

    @property
    def final_area(self) -> int:
        return self.series[-1].area if self.series else 0


def run(config: ScenarioConfig) -> RunResult:
    """Execute one deterministic run, recording metrics after every step."""
    state = initial_state(config.height, config.width, config.radius, config.seed)
    series: list[MetricsRecord] = []
    snapshots = []
    tracks: list[ComponentTrack] = []
    next_id = 1
    births: list[tuple[int, int]] = []
    persistence: dict[int, int] = {}
    ri_series: list[tuple[int, float]] = []
    v_pre = v_post = None
    success = None

    for _ in range(config.steps):
        step(state, config.params)
        rec = compute_metrics(state.active, state.potentials, state.nbr,
                              step=state.step_count)
        series.append(rec)

        if config.track_components:
            prev_ids = {t.track_id for t in tracks}
            tracks, next_id = track_components(tracks, state.active,
                                               state.step_count, next_id)
            for t in tracks:
                persistence[t.track_id] = max(persistence.get(t.track_id, 0),
                                              t.persistence)
                if t.track_id not in prev_ids:
                    births.append((state.step_count, t.track_id))

        if config.snapshot_every and state.step_count % config.snapshot_every == 0:
            snapshots.append((state.step_count, state.active.copy(),
                              state.potentials.copy()))

        if config.amputation_step is not None:
            if state.step_count == config.amputation_step:
                v_pre = rec.dispersion
                amputate(state, *config.amputation_rows)
                post = compute_metrics(state.active, state.potentials, state.nbr,
                                       step=state.step_count)
                v_post = post.dispersion
                if v_post is not None and v_pre is not None and v_pre != v_post:
                    ri_series.append((0, 0.0))
            elif v_pre is not None and v_post is not None and v_pre != v_post:
                if rec.dispersion is not None:
                    t = state.step_count - config.amputation_step
                    ri = recovery_index(v_pre, v_post, rec.dispersion)
                    ri_series.append((t, ri))
                    if success is None and ri >= 0.8:
                        success = t

    label = classify(series[-1], series, config.width * config.height,
                     config.thresholds)
    return RunResult(config, series, snapshots, label,
                     ri_series=ri_series, ri_success_step=success,
                     ri_v_pre=v_pre, ri_v_post=v_post,
                     component_counts=[r.components for r in series],
                     births=births, persistence=persistence)


def classify(record: MetricsRecord, history: list[MetricsRecord],
             lattice_cells: int,
             thresholds: ClassifyThresholds = ClassifyThresholds()) -> Regime:
    """Assign a regime label from a checkpoint record plus recent history."""
    if record.area == 0:
        return Regime.EXTINCT
    window = thresholds.stable_window
    if len(history) < window:
        return Regime.UNCLASSIFIED
    recent = [r.area for r in history[-window:]]
    if record.area > thresholds.full_fraction * lattice_cells:
        return Regime.FULL_EXPANSION
    if record.area < thresholds.small_area and \
            max(recent) - min(recent) <= thresholds.max_area_drift:
        return Regime.SMALL_FIXED_CLUSTER
    growing = recent[-1] > recent[0]
    ratio = record.area / record.perimeter if record.perimeter else float("inf")
    lo, hi = thresholds.limb_ratio
    if growing and record.circularity is not None and \
            record.circularity < thresholds.limb_circularity and lo <= ratio <= hi:
        return Regime.LIMB_EXTENSION
    if growing and ratio > hi:
        return Regime.MESH_EXPANSION
    return Regime.UNCLASSIFIED


def derive_seed(base_seed: int, indices: tuple[int, ...]) -> int:
    """Stable per-cell seed for sweeps: independent of execution order."""
    return int(np.random.SeedSequence([base_seed, *indices]).generate_state(1)[0])


def sweep(base: ScenarioConfig, axes: dict[str, list] | None = None
          ) -> list[dict]:
    """Cartesian-product sweep; each cell is an independent seeded run.

    Returns one row per cell: {"values": {param: value}, "seed": ...,
    "record": checkpoint MetricsRecord, "label": Regime}.
    """
    axes = axes if axes is not None else base.sweep_axes
    if not axes:
        raise ValueError("sweep requires at least one axis")
    names = list(axes)
    value_lists = [list(axes[n]) for n in names]
    total = 1
    for vals in value_lists:
        total *= len(vals)
    if total > base.sweep_cap:
        raise ValueError(f"sweep of {total} cells exceeds cap {base.sweep_cap}")

    rows = []
    for indices in itertools.product(*(range(len(v)) for v in value_lists)):
        values = {n: value_lists[k][indices[k]] for k, n in enumerate(names)}
        cell_seed = derive_seed(base.seed, indices)
        cfg = replace(base,
                      params=replace(base.params, **values),
                      seed=cell_seed,
                      steps=max(base.steps, base.checkpoint_step),
                      sweep_axes={})
        result = run(cfg)
        checkpoint = min(base.checkpoint_step, cfg.steps) - 1
        rec = result.series[checkpoint]
        label = classify(rec, result.series[:checkpoint + 1],
                         base.width * base.height, base.thresholds)
        rows.append({"values": values, "seed": cell_seed,
                     "record": rec, "label": label})
    return rows


@dataclass
class RegenReport:
    ri_series: list[tuple[int, float]]
    success_step: int | None        # steps after the cut to reach RI >= 0.8
    extinct: bool
    v_pre: float | None
    v_post: float | None


def regeneration_experiment(config: ScenarioConfig) -> RegenReport:
    """Amputation/recovery protocol; requires an amputation step in config."""
    if config.amputation_step is None:
        raise ValueError("regeneration experiment requires an amputation step")
    result = run(config)
    post = [r for r in result.series if r.step > config.amputation_step]
    extinct = bool(post) and post[0].area == 0
    return RegenReport(result.ri_series, result.ri_success_step, extinct,
                       result.ri_v_pre, result.ri_v_post)


@dataclass
class ReplicationReport:
    component_counts: list[int]
    births: list[tuple[int, int]]
    persistence: dict
    max_components: int

    @property
    def max_persistence(self) -> int:
        return max(self.persistence.values(), default=0)


def replication_monitor(result: RunResult) -> ReplicationReport:
    """Summarize component births and lifetimes from a tracked run."""
    if not result.config.track_components:
        raise ValueError("run was executed without component tracking")
    return ReplicationReport(
        component_counts=result.component_counts,
        births=result.births,
        persistence=result.persistence,
        max_components=max(result.component_counts, default=0),
    )
