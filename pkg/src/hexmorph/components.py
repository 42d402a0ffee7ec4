"""Connected-component labeling for hex masks on the periodic lattice.

Strategy: shear the odd-r offset grid into axial columns, where hex
adjacency becomes a fixed 3x3 stencil usable by scipy.ndimage.label,
then stitch components across the torus seams with a small union-find.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from .lattice import neighbors

# In axial coordinates (q = col - row//2) the six hex neighbors are
# (0,+-1), (-1,0), (-1,+1), (+1,0), (+1,-1): a 3x3 stencil minus two corners.
_HEX_STRUCTURE = np.array([[0, 1, 1],
                           [1, 1, 1],
                           [1, 1, 0]], dtype=bool)


def _axial_index(height: int, width: int) -> tuple[np.ndarray, np.ndarray]:
    rows = np.arange(height)[:, None]
    cols = np.arange(width)[None, :]
    q = (cols - rows // 2) % width
    return np.broadcast_to(rows, (height, width)), np.broadcast_to(q, (height, width))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def label_components(mask: np.ndarray) -> tuple[np.ndarray, int]:
    """Label 6-connected components of a boolean (H, W) mask on the torus.

    Returns (labels, count) where labels is an int array with 0 on False
    cells and components numbered 1..count.  Label order follows the first
    (row-major) cell of each component.
    """
    height, width = mask.shape
    rr, qq = _axial_index(height, width)
    axial = np.zeros_like(mask)
    axial[rr, qq] = mask
    raw, n = ndimage.label(axial, structure=_HEX_STRUCTURE)
    labels = raw[rr, qq]
    if n == 0:
        return labels.astype(np.int32), 0

    # Stitch across the wrap seams: any mask cell whose row or axial column
    # touches the array border may have true neighbors on the far side.
    uf = _UnionFind(n + 1)
    border = mask & ((rr % (height - 1) == 0) | (qq % (width - 1) == 0)) \
        if height > 1 and width > 1 else mask.copy()
    for r, c in zip(*np.nonzero(border)):
        li = labels[r, c]
        for nr, nc in neighbors(int(r), int(c), height, width):
            if mask[nr, nc]:
                uf.union(li, labels[nr, nc])

    # Renumber roots compactly in order of first row-major appearance.
    roots = np.array([uf.find(i) for i in range(n + 1)])
    flat = roots[labels]
    remap = np.zeros(n + 1, dtype=np.int32)
    next_id = 1
    for lab in flat[mask]:
        if remap[lab] == 0:
            remap[lab] = next_id
            next_id += 1
    out = np.where(mask, remap[flat], 0).astype(np.int32)
    return out, next_id - 1


def component_count(mask: np.ndarray) -> int:
    return label_components(mask)[1]


def exterior_empty(active: np.ndarray) -> np.ndarray:
    """Mask of the 'outside world': the largest connected Empty component.

    Ties between equally large components go to the one containing the
    smallest (row, col) in row-major order.  All-active lattices have an
    empty exterior.
    """
    empty = ~active
    labels, n = label_components(empty)
    if n == 0:
        return np.zeros_like(active)
    sizes = np.bincount(labels.ravel(), minlength=n + 1)
    sizes[0] = -1
    best = sizes[1:].max()
    # argmax over labels 1..n; label ids are ordered by first appearance,
    # so the first maximal id is the row-major tie-break winner.
    winner = int(np.nonzero(sizes[1:] == best)[0][0]) + 1
    return labels == winner
