import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from choquet_bochner.lattice import box_structure, chain_sup
from oracles import brute_grid_variation

shapes = st.lists(st.integers(1, 4), min_size=1, max_size=3).map(tuple)


def test_boolean_box_index_is_bitmask():
    # axis a stands for point N-1-a, so the C-order flat index is the mask
    n = 3
    coords = np.indices((2,) * n).reshape(n, -1).T
    masks = [sum(int(c[a]) << (n - 1 - a) for a in range(n)) for c in coords]
    assert masks == list(range(1 << n))


def test_box_structure():
    layers, preds = box_structure((2, 3))
    assert [layer.tolist() for layer in layers] == [[0], [1, 3], [2, 4], [5]]
    assert preds[0].tolist() == [6, 6, 6, 0, 1, 2]
    assert preds[1].tolist() == [6, 0, 1, 6, 3, 4]


def test_unreachable_nodes_are_minus_inf():
    v = np.arange(4.0)[:, None]
    out = chain_sup(v, (2, 2), [1])[0, :, 0]
    assert out[1] == 0 and out[3] == 2
    assert np.isneginf(out[0]) and np.isneginf(out[2])


def test_bad_values_shape():
    with pytest.raises(ValueError):
        chain_sup(np.zeros(4), (2, 2), [0])


@given(st.integers(0, 2**32 - 1), shapes, st.sampled_from(["abs", "pos", "neg"]), st.integers(1, 2))
def test_matches_all_chain_enumeration(seed, shape, weight, comps):
    rng = np.random.default_rng(seed)
    size = int(np.prod(shape))
    vals = rng.normal(size=(size, comps))
    nodes = np.indices(shape).reshape(len(shape), -1).T
    src = int(rng.integers(size))
    out = chain_sup(vals, shape, [src], weight)[0]
    for dst in range(size):
        if np.all(nodes[dst] >= nodes[src]):
            ref = brute_grid_variation(vals, nodes, src, dst, weight)
            assert np.allclose(out[dst], ref, atol=1e-12)
        else:
            assert np.all(np.isneginf(out[dst]))


def test_batched_sources_equal_single_runs(monkeypatch):
    import choquet_bochner.lattice as lat

    rng = np.random.default_rng(3)
    shape = (3, 3, 3)
    vals = rng.normal(size=(27, 2))
    sources = list(range(27))
    full = chain_sup(vals, shape, sources)
    monkeypatch.setattr(lat, "_BATCH_ELEMENTS", 60)
    chunked = chain_sup(vals, shape, sources)
    again = np.stack([chain_sup(vals, shape, [s])[0] for s in sources])
    assert np.array_equal(full, chunked) and np.array_equal(full, again)
