"""Periodic hexagonal lattice: neighbor topology, Cartesian embedding, initial disk.

The grid uses odd-r offset coordinates: odd rows are shifted half a column
to the right.  All coordinates wrap periodically, so every cell has exactly
six neighbors.  Neighbor order is fixed as E, W, NE, NW, SE, SW.
"""

from __future__ import annotations

import numpy as np

ROW_SPACING = np.sqrt(3.0) / 2.0

# (dr, dc_even, dc_odd) for E, W, NE, NW, SE, SW in odd-r offset coordinates.
NEIGHBOR_OFFSETS = (
    (0, 1, 1),    # E
    (0, -1, -1),  # W
    (-1, 0, 1),   # NE
    (-1, -1, 0),  # NW
    (1, 0, 1),    # SE
    (1, -1, 0),   # SW
)


def neighbors(row: int, col: int, height: int, width: int) -> list[tuple[int, int]]:
    """Six neighbor coordinates of (row, col), wrapped periodically.

    Order is E, W, NE, NW, SE, SW.
    """
    odd = row % 2
    out = []
    for dr, dc_even, dc_odd in NEIGHBOR_OFFSETS:
        dc = dc_odd if odd else dc_even
        out.append(((row + dr) % height, (col + dc) % width))
    return out


def to_cartesian(row: int, col: int) -> tuple[float, float]:
    """Cartesian position of a cell in units of inter-cell spacing.

    Odd rows sit half a column to the right; rows are sqrt(3)/2 apart,
    which puts all six neighbors at distance exactly 1.
    """
    x = col + 0.5 * (row % 2)
    y = row * ROW_SPACING
    return x, y


def check_dims(height: int, width: int) -> None:
    """Periodic hex topology needs >= 3 columns/rows and an even row count:
    with odd height the row wrap flips offset parity and breaks neighbor
    symmetry."""
    if height < 3 or width < 3:
        raise ValueError(f"lattice must be at least 3x4, got {width}x{height}")
    if height % 2:
        raise ValueError(f"lattice height must be even, got {height}")


def neighbor_table(height: int, width: int) -> np.ndarray:
    """Flat-index neighbor lookup, shape (6, height*width), dtype intp.

    nbr[d, i] is the flat index of the d-th neighbor (E, W, NE, NW, SE, SW)
    of the cell with flat index i = row*width + col.
    """
    check_dims(height, width)
    rows, cols = np.divmod(np.arange(height * width, dtype=np.intp), width)
    odd = rows % 2
    table = np.empty((6, height * width), dtype=np.intp)
    for d, (dr, dc_even, dc_odd) in enumerate(NEIGHBOR_OFFSETS):
        dc = np.where(odd == 1, dc_odd, dc_even)
        nr = (rows + dr) % height
        nc = (cols + dc) % width
        table[d] = nr * width + nc
    return table


def cartesian_coords(height: int, width: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell Cartesian x and y arrays, each of shape (height, width)."""
    rows = np.arange(height)[:, None]
    cols = np.arange(width)[None, :]
    x = cols + 0.5 * (rows % 2)
    y = rows * ROW_SPACING
    return np.broadcast_to(x, (height, width)).astype(float), \
        np.broadcast_to(y, (height, width)).astype(float)


def disk_mask(height: int, width: int, center: tuple[int, int], radius: float) -> np.ndarray:
    """Boolean (height, width) mask of cells within Euclidean distance radius
    of the center cell, using the minimum-image convention on the torus.

    Raises ValueError if the disk would overlap itself through the wrap.
    """
    check_dims(height, width)
    if radius <= 0:
        raise ValueError("radius must be positive")
    limit = min(width * 1.0, height * ROW_SPACING) / 2.0
    if radius >= limit:
        raise ValueError(
            f"radius {radius} too large for {width}x{height} lattice "
            f"(must be < {limit} so the disk cannot wrap onto itself)")
    cx, cy = to_cartesian(*center)
    x, y = cartesian_coords(height, width)
    lx = float(width)
    ly = height * ROW_SPACING
    dx = (x - cx + lx / 2.0) % lx - lx / 2.0
    dy = (y - cy + ly / 2.0) % ly - ly / 2.0
    # epsilon so cells at exactly the radius (e.g. the 6 unit neighbors at
    # radius 1.0) are not dropped by representation error
    return dx * dx + dy * dy <= radius * radius + 1e-9
