"""Per-step shape and potential statistics, component tracking, and the
recovery index used by the regeneration experiments.

Circularity is 4*pi*area/perimeter^2 with perimeter counted in boundary
CELLS (not edges), so values above 1 are legitimate for compact blobs.
Dispersion is the mean distance of active cells from a wrap-aware centroid
(circular mean per Cartesian axis) using minimum-image distances, which
makes it invariant under lattice translation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .components import label_components
from .lattice import ROW_SPACING, cartesian_coords


@dataclass(frozen=True)
class MetricsRecord:
    step: int
    area: int
    perimeter: int
    circularity: float | None
    dispersion: float | None
    p_min: float | None
    p_max: float | None
    p_avg: float | None
    components: int


def _circular_mean(values: np.ndarray, period: float) -> float:
    angles = values * (2.0 * math.pi / period)
    s = np.sin(angles).mean()
    c = np.cos(angles).mean()
    return math.atan2(s, c) * period / (2.0 * math.pi) % period


def dispersion(active: np.ndarray) -> float | None:
    """Mean minimum-image distance of active cells from the wrap-aware centroid."""
    height, width = active.shape
    if not active.any():
        return None
    x, y = cartesian_coords(height, width)
    xs, ys = x[active], y[active]
    lx, ly = float(width), height * ROW_SPACING
    cx = _circular_mean(xs, lx)
    cy = _circular_mean(ys, ly)
    dx = (xs - cx + lx / 2.0) % lx - lx / 2.0
    dy = (ys - cy + ly / 2.0) % ly - ly / 2.0
    return float(np.hypot(dx, dy).mean())


def compute_metrics(active: np.ndarray, potentials: np.ndarray | None,
                    nbr: np.ndarray, step: int = 0) -> MetricsRecord:
    """All indices for one lattice snapshot.

    Perimeter counts active cells with any empty neighbor (enclosed voids
    included).  Potential stats ignore cells without a defined potential
    (e.g. cells grown this step); they are None when nothing is defined.
    """
    area = int(active.sum())
    if area == 0:
        return MetricsRecord(step, 0, 0, None, None, None, None, None, 0)

    empty_adjacent = (~active).ravel()[nbr].any(axis=0).reshape(active.shape)
    perimeter = int((active & empty_adjacent).sum())
    circ = 4.0 * math.pi * area / perimeter ** 2 if perimeter > 0 else None

    p_min = p_max = p_avg = None
    if potentials is not None:
        vals = potentials[active]
        vals = vals[~np.isnan(vals)]
        if vals.size:
            p_min, p_max, p_avg = float(vals.min()), float(vals.max()), float(vals.mean())

    _, n_components = label_components(active)
    return MetricsRecord(step, area, perimeter, circ, dispersion(active),
                         p_min, p_max, p_avg, n_components)


def recovery_index(v_pre: float, v_post: float, v_t: float) -> float:
    """Fraction of the amputation-induced drop that has been recovered."""
    if v_pre == v_post:
        raise ValueError("degenerate cut: value unchanged by amputation")
    return (v_t - v_post) / (v_pre - v_post)


@dataclass
class ComponentTrack:
    track_id: int
    cells: frozenset          # flat indices
    birth_step: int
    persistence: int          # consecutive steps observed


def track_components(prev_tracks: list[ComponentTrack], active: np.ndarray,
                     step: int, next_id: int | None = None,
                     ) -> tuple[list[ComponentTrack], int]:
    """Match current components to previous tracks by maximal cell overlap.

    Each current component inherits the previous track it overlaps most
    (ties: larger previous component, then lower id); when several current
    components claim the same track (a split), the largest overlap wins and
    the rest are births.  Returns (tracks, next_fresh_id).
    """
    if next_id is None:
        next_id = max((t.track_id for t in prev_tracks), default=0) + 1
    labels, n = label_components(active)
    flat = labels.ravel()
    current = [frozenset(np.nonzero(flat == lab)[0].tolist()) for lab in range(1, n + 1)]

    by_track = {t.track_id: t for t in prev_tracks}
    claims = []  # (component index, claimed track id or None, overlap)
    for ci, cells in enumerate(current):
        best = None
        for t in prev_tracks:
            ov = len(cells & t.cells)
            if ov == 0:
                continue
            key = (ov, len(t.cells), -t.track_id)
            if best is None or key > best[0]:
                best = (key, t.track_id, ov)
        claims.append((ci, best[1] if best else None, best[2] if best else 0))

    # Resolve splits: one winner per claimed track, by overlap then size.
    winners: dict[int, tuple[int, int]] = {}
    for ci, tid, ov in claims:
        if tid is None:
            continue
        if tid not in winners or (ov, len(current[ci])) > (winners[tid][1], len(current[winners[tid][0]])):
            winners[tid] = (ci, ov)

    out = []
    taken = {ci for ci, _ in winners.values()}
    for tid, (ci, _) in sorted(winners.items()):
        prev = by_track[tid]
        out.append(ComponentTrack(tid, current[ci], prev.birth_step, prev.persistence + 1))
    for ci, cells in enumerate(current):
        if ci not in taken:
            out.append(ComponentTrack(next_id, cells, step, 1))
            next_id += 1
    return out, next_id
