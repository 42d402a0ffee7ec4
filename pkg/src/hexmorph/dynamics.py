"""One simulation step: potential-driven death, random boundary growth,
growth-scope variants, and the amputation perturbation.

Update order per step (all potentials are computed once, pre-death):
seed tokens -> propagate -> potentials -> death -> growth -> counter.
Death is synchronous over all active cells; growth is decided on the
post-death lattice by boundary cells whose pre-death potential clears the
growth threshold, each picking one empty neighbor uniformly at random from
a single row-major RNG stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from enum import Enum

import numpy as np

from . import tokens
from .components import exterior_empty
from .lattice import disk_mask, neighbor_table


class GrowthScope(Enum):
    BOUNDARY_ONLY = "boundary"      # grow only toward the outside world
    INCLUDE_INTERNAL = "internal"   # also fill enclosed voids


@dataclass(frozen=True)
class ModelParams:
    """All model parameters; defaults are the reference set."""
    token_steps: int = 20          # Z: max propagation rounds / label count
    inner_range: int = 8           # X: activator window (labels 1..X)
    outer_range: int = 16          # Y: inhibitor window (labels 1..Y)
    weight: float = 0.470          # w: inhibition weight in the potential
    growth_threshold: float = 1.40     # G
    survival_threshold: float = 1.27   # R: die when P <= R
    overcrowd_threshold: float = 50.0  # Ro: die when P >= Ro
    growth_scope: GrowthScope = GrowthScope.BOUNDARY_ONLY
    carryover: float = 0.0         # k: inheritance transfer rate, 0 = basic model

    def __post_init__(self):
        if self.token_steps < 2:
            raise ValueError("token_steps (Z) must be >= 2")
        if not (1 <= self.inner_range < self.outer_range <= self.token_steps):
            raise ValueError(
                "ranges must satisfy 1 <= X < Y <= Z "
                f"(got X={self.inner_range}, Y={self.outer_range}, Z={self.token_steps})")
        if not (0.0 <= self.carryover <= 1.0):
            raise ValueError(f"carryover (k) must be in [0, 1], got {self.carryover}")
        if self.weight < 0:
            raise ValueError("weight (w) must be >= 0")
        if self.survival_threshold >= self.overcrowd_threshold:
            raise ValueError("survival threshold R must be below overcrowding threshold Ro")


@dataclass
class SimState:
    """Full simulation state; mutated only by step() and amputate()."""
    active: np.ndarray                 # bool (H, W)
    potentials: np.ndarray             # float (H, W), NaN where undefined
    step_count: int
    rng: np.random.Generator
    token_total: np.ndarray | None = None   # per-cell sum over labels, for carryover
    token_field: np.ndarray | None = None   # last full (Z, H, W) field
    nbr: np.ndarray = dc_field(default=None, repr=False)  # cached neighbor table

    @property
    def shape(self) -> tuple[int, int]:
        return self.active.shape


def initial_state(height: int, width: int, radius: float, seed: int,
                  center: tuple[int, int] | None = None) -> SimState:
    if center is None:
        center = (height // 2, width // 2)
    active = disk_mask(height, width, center, radius)
    return SimState(
        active=active,
        potentials=np.full((height, width), np.nan),
        step_count=0,
        rng=np.random.Generator(np.random.PCG64(seed)),
        nbr=neighbor_table(height, width),
    )


def boundary_cells(active: np.ndarray, nbr: np.ndarray,
                   scope: GrowthScope,
                   exterior: np.ndarray | None = None) -> np.ndarray:
    """Mask of active cells with at least one qualifying empty neighbor.

    Under BOUNDARY_ONLY the empty neighbor must belong to the outside world
    (largest empty component); under INCLUDE_INTERNAL any empty neighbor
    counts, including enclosed voids.
    """
    if scope is GrowthScope.BOUNDARY_ONLY:
        if exterior is None:
            exterior = exterior_empty(active)
        target = exterior
    else:
        target = ~active
    has_target = target.ravel()[nbr].any(axis=0).reshape(active.shape)
    return active & has_target


def apply_death(active: np.ndarray, potentials: np.ndarray,
                survival: float, overcrowd: float) -> np.ndarray:
    """Synchronous death: active cells with P <= R or P >= Ro become empty."""
    with np.errstate(invalid="ignore"):
        doomed = active & ((potentials <= survival) | (potentials >= overcrowd))
    return active & ~doomed


def apply_growth(active: np.ndarray, potentials: np.ndarray,
                 growth_threshold: float, scope: GrowthScope,
                 nbr: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Each eligible boundary cell claims one empty neighbor at random.

    `active` is the post-death lattice; `potentials` are the pre-death
    values, so cells that just died never grow (they are no longer active).
    Growers are visited in row-major order, drawing one choice each from the
    shared stream; a cell claimed several times still becomes active once.
    """
    height, width = active.shape
    if scope is GrowthScope.BOUNDARY_ONLY:
        target = exterior_empty(active)
    else:
        target = ~active
    boundary = boundary_cells(active, nbr, scope, exterior=target)
    with np.errstate(invalid="ignore"):
        eligible = boundary & (potentials >= growth_threshold)
    if not eligible.any():
        return active

    out = active.copy()
    target_flat = target.ravel()
    for i in np.nonzero(eligible.ravel())[0]:
        choices = [n for n in nbr[:, i] if target_flat[n]]
        pick = choices[rng.integers(len(choices))]
        out.ravel()[pick] = True
    return out


def step(state: SimState, params: ModelParams) -> SimState:
    """Advance the simulation by one full cycle, in place, and return it."""
    if state.nbr is None:
        state.nbr = neighbor_table(*state.shape)

    field = tokens.seed_tokens(state.active, params.token_steps,
                               prev_total=state.token_total,
                               carryover=params.carryover)
    tokens.propagate(field, state.active, state.nbr)
    potentials = tokens.compute_potentials(
        field, state.active, params.inner_range, params.outer_range, params.weight)

    survivors = apply_death(state.active, potentials,
                            params.survival_threshold, params.overcrowd_threshold)
    grown = apply_growth(survivors, potentials, params.growth_threshold,
                         params.growth_scope, state.nbr, state.rng)

    # Tokens of dying cells are discarded; newly grown cells hold none
    # until the next seeding.
    total = field.sum(axis=0)
    state.token_total = np.where(survivors, total, 0.0)
    state.token_field = field
    state.active = grown
    # cells grown this step (including die-and-regrow flickers) have no
    # potential until the next cycle
    state.potentials = np.where(survivors, potentials, np.nan)
    state.step_count += 1
    return state


def amputate(state: SimState, row_start: int, row_stop: int) -> SimState:
    """Clear all cells in rows [row_start, row_stop], discarding their tokens.

    The step counter is unchanged; an empty range is a no-op.
    """
    height, _ = state.shape
    if row_stop < row_start:
        return state
    if not (0 <= row_start < height and 0 <= row_stop < height):
        raise ValueError(f"row range {row_start}..{row_stop} outside [0, {height})")
    state.active[row_start:row_stop + 1, :] = False
    state.potentials[row_start:row_stop + 1, :] = np.nan
    if state.token_total is not None:
        state.token_total[row_start:row_stop + 1, :] = 0.0
    if state.token_field is not None:
        state.token_field[:, row_start:row_stop + 1, :] = 0.0
    return state
