import numpy as np
import pytest

from hexmorph.components import component_count, exterior_empty, label_components
from hexmorph.lattice import disk_mask, neighbors


def brute_force_components(mask):
    """Union-find oracle over the same 6-neighbor periodic topology."""
    height, width = mask.shape
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for cell in zip(*np.nonzero(mask)):
        parent[cell] = cell
    for row, col in list(parent):
        for n in neighbors(row, col, height, width):
            if mask[n]:
                ra, rb = find((row, col)), find(n)
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for cell in parent:
        groups.setdefault(find(cell), set()).add(cell)
    return list(groups.values())


@pytest.mark.parametrize("seed", range(12))
def test_labeling_matches_union_find_oracle(seed):
    rng = np.random.default_rng(seed)
    mask = rng.random((20, 20)) < rng.uniform(0.2, 0.8)
    labels, n = label_components(mask)
    oracle = brute_force_components(mask)
    assert n == len(oracle)
    # identical partition: every oracle group maps to exactly one label
    seen = set()
    for group in oracle:
        ids = {labels[c] for c in group}
        assert len(ids) == 1
        lab = ids.pop()
        assert lab not in seen
        seen.add(lab)
    assert (labels > 0).sum() == mask.sum()


def test_component_count_wraps_across_seams():
    mask = np.zeros((10, 10), dtype=bool)
    mask[0, :] = True
    mask[9, :] = True  # touches row 0 through the vertical wrap
    assert component_count(mask) == 1
    mask2 = np.zeros((10, 10), dtype=bool)
    mask2[:, 0] = True   # a full column is one ring on the torus
    assert component_count(mask2) == 1


def test_exterior_of_disk_is_all_empty_cells():
    active = disk_mask(150, 150, (75, 75), 20.0)
    ext = exterior_empty(active)
    assert ext.sum() == (~active).sum()


def test_exterior_excludes_enclosed_void():
    active = disk_mask(30, 30, (15, 15), 5.0)
    hole = (15, 15)
    active[hole] = False
    ext = exterior_empty(active)
    assert not ext[hole]
    assert ext.sum() == (~active).sum() - 1


def test_exterior_of_full_lattice_is_empty():
    active = np.ones((12, 12), dtype=bool)
    assert exterior_empty(active).sum() == 0


def test_exterior_tie_break_row_major():
    # Two empty components of equal size; winner holds the smallest (row, col).
    active = np.ones((8, 8), dtype=bool)
    active[1, 1] = False
    active[5, 5] = False
    ext = exterior_empty(active)
    assert ext[1, 1] and not ext[5, 5]
