import numpy as np
import pytest

from hexmorph.lattice import neighbor_table, neighbors
from hexmorph.tokens import compute_potentials, propagate, seed_tokens


def dense_oracle(active, z):
    """Independent check: label-v amounts are M^(v-1) @ s with M the
    active-subgraph adjacency matrix scaled by 1/6."""
    height, width = active.shape
    n = height * width
    m = np.zeros((n, n))
    for row in range(height):
        for col in range(width):
            i = row * width + col
            if not active[row, col]:
                continue
            for nr, nc in neighbors(row, col, height, width):
                j = nr * width + nc
                if active[nr, nc]:
                    m[j, i] += 1.0 / 6.0
    field = np.zeros((z, height, width))
    vec = active.ravel().astype(float)
    field[0] = vec.reshape(height, width)
    for v in range(1, z):
        vec = m @ vec
        field[v] = vec.reshape(height, width)
    return field


def run_propagation(active, z):
    nbr = neighbor_table(*active.shape)
    field = seed_tokens(active, z)
    return propagate(field, active, nbr)


def two_cell_lattice():
    active = np.zeros((8, 9), dtype=bool)
    active[4, 4] = True
    active[4, 5] = True
    return active


def geometric_sum(m):
    return (1.0 - 6.0 ** -m) / (1.0 - 1.0 / 6.0)


def test_seed_basic_model():
    active = np.zeros((5, 5), dtype=bool)
    active[2, 2] = active[2, 3] = True
    field = seed_tokens(active, 20)
    assert field[0, 2, 2] == 1.0 and field[0, 2, 3] == 1.0
    assert field[0].sum() == 2.0
    assert field[1:].sum() == 0.0


def test_seed_carryover():
    active = np.ones((3, 3), dtype=bool)
    prev_total = np.full((3, 3), 2.0)
    field = seed_tokens(active, 5, prev_total=prev_total, carryover=0.5)
    assert np.all(field[0] == 2.0)  # 1 + 0.5 * 2


def test_seed_carryover_new_cell_gets_plain_unit():
    active = np.ones((3, 3), dtype=bool)
    prev_total = np.zeros((3, 3))  # newly grown cells had no tokens
    field = seed_tokens(active, 5, prev_total=prev_total, carryover=0.02)
    assert np.all(field[0] == 1.0)


def test_isolated_cell_keeps_only_seed():
    active = np.zeros((8, 7), dtype=bool)
    active[3, 3] = True
    field = run_propagation(active, 20)
    assert field[0, 3, 3] == 1.0
    assert field[1:].sum() == 0.0  # all six shares vanish into the sink


def test_two_adjacent_cells_geometric_sequence():
    active = two_cell_lattice()
    field = run_propagation(active, 20)
    for v in range(20):
        expect = 6.0 ** -v
        assert field[v, 4, 4] == pytest.approx(expect, rel=1e-12)
        assert field[v, 4, 5] == pytest.approx(expect, rel=1e-12)


def test_all_active_torus_is_uniform_unit():
    active = np.ones((10, 12), dtype=bool)
    field = run_propagation(active, 20)
    assert np.all(field == 1.0)


def test_potential_isolated_cell():
    active = np.zeros((8, 7), dtype=bool)
    active[3, 3] = True
    field = run_propagation(active, 20)
    p = compute_potentials(field, active, 8, 16, 0.470)
    assert p[3, 3] == 1.0 - 0.470
    assert np.isnan(p[0, 0])


def test_potential_all_active():
    active = np.ones((8, 9), dtype=bool)
    field = run_propagation(active, 20)
    p = compute_potentials(field, active, 8, 16, 0.470)
    assert np.all(p == 8.0 - 16.0 * 0.470)


def test_potential_two_cells_geometric_formula():
    active = two_cell_lattice()
    field = run_propagation(active, 20)
    p = compute_potentials(field, active, 8, 16, 0.470)
    expect = geometric_sum(8) - 0.470 * geometric_sum(16)
    assert p[4, 4] == pytest.approx(expect, abs=1e-12)
    assert expect == pytest.approx(0.6359993, abs=1e-6)


@pytest.mark.parametrize("seed", range(8))
def test_propagation_matches_dense_oracle(seed):
    rng = np.random.default_rng(seed)
    height = int(rng.integers(2, 11)) * 2
    width = int(rng.integers(4, 21))
    active = rng.random((height, width)) < rng.uniform(0.3, 0.9)
    z = 20
    got = run_propagation(active, z)
    expect = dense_oracle(active, z)
    assert np.abs(got - expect).max() <= 1e-10


@pytest.mark.parametrize("seed", range(5))
def test_mass_bound_and_nonnegativity(seed):
    rng = np.random.default_rng(seed + 100)
    active = rng.random((14, 15)) < 0.6
    field = run_propagation(active, 20)
    assert np.all(field >= 0.0)
    masses = field.sum(axis=(1, 2))
    for v in range(19):
        assert masses[v + 1] <= masses[v] + 1e-12


def test_sink_tightness_on_full_torus():
    active = np.ones((8, 8), dtype=bool)
    field = run_propagation(active, 20)
    masses = field.sum(axis=(1, 2))
    assert np.all(masses == masses[0])


def test_locality_of_influence():
    # Changing a cell farther than v-1 hops never alters a label-v amount.
    active = np.zeros((14, 15), dtype=bool)
    active[7, 3:10] = True
    base = run_propagation(active, 6)
    far = active.copy()
    far[7, 11] = True  # 2 hops beyond the strip end
    changed = run_propagation(far, 6)
    # label 1 and 2 at the strip's far end (distance > 1 from the new cell)
    assert changed[0, 7, 3] == base[0, 7, 3]
    assert changed[1, 7, 3] == base[1, 7, 3]


def test_potential_linearity_in_seed_scale():
    rng = np.random.default_rng(7)
    active = rng.random((12, 12)) < 0.6
    nbr = neighbor_table(12, 12)
    f1 = propagate(seed_tokens(active, 20), active, nbr)
    f3 = seed_tokens(active, 20)
    f3[0] *= 3.0
    propagate(f3, active, nbr)
    p1 = compute_potentials(f1, active, 8, 16, 0.47)
    p3 = compute_potentials(f3, active, 8, 16, 0.47)
    assert np.allclose(p3[active], 3.0 * p1[active], rtol=1e-12)
