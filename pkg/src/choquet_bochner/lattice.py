"""Longest-path dynamic programming over finite box lattices.

A box lattice is ``{0..s_0-1} x ... x {0..s_{N-1}-1}`` with the product
order, nodes flattened in C order.  The Boolean lattice of subsets of an
N-point set is the box ``(2,) * N``; with axis ``a`` standing for point
``N-1-a`` the flat index of a subset equals its bitmask.

Both variation notions in the package (set-function variation over chains
of subsets, operator variation over chains of grid functions) are suprema
of additive chain weights whose edge weight is subadditive under chain
refinement (|.|, (.)+ and (.)- all are).  Maximal chains, i.e. paths of
covering steps, therefore attain the supremum, and a componentwise
supremum in R^C splits into C independent longest-path problems.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

EDGE_WEIGHTS = {
    "abs": np.abs,
    "pos": lambda d: np.maximum(d, 0.0),
    "neg": lambda d: np.maximum(-d, 0.0),
}

_BATCH_ELEMENTS = 4_000_000


@lru_cache(maxsize=32)
def box_structure(shape: tuple):
    """Rank layers and per-axis predecessor indices of a box lattice.

    Returns ``(layers, preds)``: ``layers[r]`` holds flat indices of nodes
    whose coordinate sum is ``r``; ``preds[a][k]`` is the node one step
    down along axis ``a`` from node ``k``, or ``size`` (a sentinel) when the
    coordinate is already 0.
    """
    size = int(np.prod(shape)) if shape else 1
    coords = np.indices(shape).reshape(len(shape), -1)
    strides = [int(np.prod(shape[a + 1:])) for a in range(len(shape))]
    rank = coords.sum(axis=0)
    layers = tuple(np.flatnonzero(rank == r) for r in range(int(rank.max()) + 1))
    preds = []
    flat = np.arange(size)
    for a, stride in enumerate(strides):
        p = np.where(coords[a] > 0, flat - stride, size)
        p.setflags(write=False)
        preds.append(p)
    for layer in layers:
        layer.setflags(write=False)
    return layers, tuple(preds)


def chain_sup(values, shape, sources, weight: str = "abs") -> np.ndarray:
    """Supremum over chains of summed edge weights, from each source to every node.

    ``values`` has shape ``(size, C)`` (one row per node, C real components).
    Returns ``(len(sources), size, C)``; entry ``[s, k, c]`` is the largest
    value of sum_k w(values[f_k, c] - values[f_{k-1}, c]) over chains from
    ``sources[s]`` up to node ``k``, and ``-inf`` where node ``k`` is not
    above the source.
    """
    shape = tuple(int(s) for s in shape)
    values = np.asarray(values, dtype=float)
    size = int(np.prod(shape)) if shape else 1
    if values.ndim != 2 or values.shape[0] != size:
        raise ValueError(f"values must have shape ({size}, C)")
    C = values.shape[1]
    sources = np.asarray(sources, dtype=int).reshape(-1)
    wfun = EDGE_WEIGHTS[weight]
    layers, preds = box_structure(shape)

    padded = np.vstack([values, np.zeros((1, C))])
    edge = []
    for p in preds:
        w = wfun(values - padded[p])
        w[p == size] = -np.inf
        edge.append(w)

    out = np.empty((sources.size, size, C))
    chunk = max(1, _BATCH_ELEMENTS // max(1, (size + 1) * C))
    for start in range(0, sources.size, chunk):
        src = sources[start:start + chunk]
        S = src.size
        V = np.full((S, size + 1, C), -np.inf)
        V[np.arange(S), src, :] = 0.0
        for layer in layers[1:]:
            best = None
            for p, w in zip(preds, edge):
                cand = V[:, p[layer], :] + w[layer][None]
                best = cand if best is None else np.maximum(best, cand)
            V[:, layer, :] = np.maximum(best, V[:, layer, :])
        out[start:start + S] = V[:, :size, :]
    return out
