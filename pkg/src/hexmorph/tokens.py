"""Token seeding, aging propagation with boundary sink, and potentials.

Token amounts live in a dense (Z, H, W) float array; plane v-1 holds the
amounts with age label v.  Active cells each seed one unit at label 1, then
for Z-1 rounds every cell passes 1/6 of its label-v amount to each neighbor;
shares sent toward empty cells vanish (the boundary sink), shares received
by active cells land at label v+1.  Sent amounts are not deducted: the
per-label planes are the accumulated record used for the potential.
"""

from __future__ import annotations

import numpy as np


def seed_tokens(active: np.ndarray, z: int,
                prev_total: np.ndarray | None = None,
                carryover: float = 0.0) -> np.ndarray:
    """Fresh (z, H, W) token field: label 1 gets 1.0 on every active cell.

    With carryover k > 0 (the inheritance variant), each cell also receives
    k times its total accumulated amount from the previous step; cells that
    were empty then, or are empty now, contribute nothing.
    """
    height, width = active.shape
    field = np.zeros((z, height, width))
    amount = np.where(active, 1.0, 0.0)
    if carryover > 0.0 and prev_total is not None:
        amount = amount + np.where(active, carryover * prev_total, 0.0)
    field[0] = amount
    return field


def propagate(field: np.ndarray, active: np.ndarray, nbr: np.ndarray) -> np.ndarray:
    """Run the aging propagation in place and return the field.

    For v = 1 .. Z-1, each cell's incoming label-(v+1) amount is the sum of
    its six neighbors' label-v amounts divided by 6, masked to active cells.
    Summing before the single division keeps the uniform-field case exact.
    """
    z = field.shape[0]
    active_flat = active.ravel()
    for v in range(z - 1):
        plane = field[v].ravel()
        incoming = plane[nbr].sum(axis=0) / 6.0
        field[v + 1] = np.where(active_flat, incoming, 0.0).reshape(active.shape)
    return field


def compute_potentials(field: np.ndarray, active: np.ndarray,
                       inner: int, outer: int, weight: float) -> np.ndarray:
    """Potential map (H, W): sum of labels 1..inner minus weight times the
    sum of labels 1..outer.  Empty cells are NaN (no potential defined)."""
    sum_inner = field[:inner].sum(axis=0)
    sum_outer = field[:outer].sum(axis=0)
    p = sum_inner - sum_outer * weight
    return np.where(active, p, np.nan)
