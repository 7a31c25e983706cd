"""Random capacities and functions for property checks and experiments."""

from __future__ import annotations

import numpy as np

from .capacity import Capacity, SetFunction, distort, is_submodular, popcounts
from .integral import GroundFunction
from .ordered_values import ValueKind

KINDS = ("scalar", "vector", "sym")


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def make_kind(name: str, dim: int = 1) -> ValueKind:
    return ValueKind.scalar() if name == "scalar" else ValueKind(name, dim)


def _monotone_scalar_tables(rng, n: int, count: int, sparsity: float = 0.3) -> np.ndarray:
    """``count`` random monotone scalar tables, built layer by layer."""
    size = 1 << n
    pc = popcounts(n)
    masks = np.arange(size)
    t = np.zeros((count, size))
    for r in range(1, n + 1):
        layer = masks[pc == r]
        base = np.full((count, layer.size), -np.inf)
        for i in range(n):
            has = (layer >> i) & 1 == 1
            base[:, has] = np.maximum(base[:, has], t[:, layer[has] ^ (1 << i)])
        inc = rng.exponential(1.0, (count, layer.size))
        inc[rng.random((count, layer.size)) < sparsity] = 0.0
        t[:, layer] = base + inc
    return t


def _random_psd(rng, dim: int, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    B = rng.normal(size=(dim, rank))
    return B @ B.T / rank


def _lift(rng, scalar_tables: np.ndarray, kind: ValueKind) -> np.ndarray:
    """Combine nonnegative-coefficient scalar tables into a table of ``kind``.

    ``scalar_tables`` has shape ``(K, 2**N)``.  Vector components use one
    table each; sym values are sums of table_k * P_k with random PSD P_k.
    """
    if kind.name == "scalar":
        return scalar_tables[0]
    if kind.name == "vector":
        return scalar_tables[: kind.dim].T.copy()
    mats = np.stack([_random_psd(rng, kind.dim, rank=int(rng.integers(1, kind.dim + 1))) for _ in scalar_tables])
    return np.einsum("km,kij->mij", scalar_tables, mats)


def _components(kind: ValueKind) -> int:
    return kind.dim if kind.name == "vector" else (kind.dim + 1 if kind.name == "sym" else 1)


def random_capacity(seed, n: int, kind: ValueKind, family: str = "monotone") -> Capacity:
    """A random capacity.

    Families: ``monotone`` (generic), ``additive``, ``unanimity`` (positive
    mixture of unanimity games, hence supermodular), ``concave`` (power
    distortion with exponent < 1 of an additive measure, submodular),
    ``convex`` (exponent > 1, supermodular).
    """
    rng = _rng(seed)
    k = _components(kind)
    size = 1 << n
    masks = np.arange(size)
    if family == "monotone":
        tables = _monotone_scalar_tables(rng, n, k)
    elif family in ("additive", "concave", "convex"):
        w = rng.exponential(1.0, (k, n))
        tables = np.zeros((k, size))
        for i in range(n):
            tables[:, (masks >> i) & 1 == 1] += w[:, i : i + 1]
        if family != "additive":
            p = rng.uniform(0.2, 0.9) if family == "concave" else rng.uniform(1.2, 3.0)
            tot = tables[:, -1:]
            tables = tot * (tables / tot) ** p
    elif family == "unanimity":
        tables = np.zeros((k, size))
        for c in range(k):
            for _ in range(int(rng.integers(1, 2 * n + 1))):
                T = int(rng.integers(1, size))
                tables[c, (masks & T) == T] += rng.exponential(1.0)
    else:
        raise ValueError(f"unknown family {family!r}")
    table = _lift(rng, tables, kind)
    table[0] = 0.0
    return Capacity(n, kind, table)


def random_submodular(seed, n: int, kind: ValueKind, max_tries: int = 200) -> Capacity:
    """A certified-submodular capacity.

    Half the draws are concave distortions of additive measures; the rest
    are rejection samples: a concave-distorted measure plus a random
    monotone perturbation, kept only if the local submodularity check passes.
    The perturbation size shrinks with every rejection, so sampling ends.
    """
    rng = _rng(seed)
    if rng.random() < 0.5:
        mu = random_capacity(rng, n, kind, "concave")
        if is_submodular(mu).holds:
            return mu
    for attempt in range(max_tries):
        base = random_capacity(rng, n, kind, "concave")
        noise = random_capacity(rng, n, kind, "monotone")
        eps = rng.uniform(0.0, 0.2) * 0.9 ** attempt
        cand = Capacity(n, kind, base.table + eps * noise.table)
        if is_submodular(cand).holds:
            return cand
    raise RuntimeError("rejection sampling found no submodular capacity")


def random_set_function(seed, n: int, kind: ValueKind) -> SetFunction:
    """Signed set function vanishing on the empty set."""
    rng = _rng(seed)
    table = rng.normal(size=(1 << n,) + kind.shape)
    if kind.name == "sym":
        table = 0.5 * (table + np.swapaxes(table, -1, -2))
    table[0] = 0.0
    return SetFunction(n, kind, table)


def random_function(seed, n: int, style: str = "mixed", scale: float = 2.0) -> GroundFunction:
    """Random ground function; styles: normal, ties, nonneg, indicator, mixed."""
    rng = _rng(seed)
    if style == "mixed":
        style = ("normal", "ties", "nonneg", "indicator")[int(rng.integers(4))]
    if style == "normal":
        v = rng.normal(0.0, scale, n)
    elif style == "ties":
        v = rng.integers(-2, 3, n) * (scale / 2)
    elif style == "nonneg":
        v = rng.uniform(0.0, scale, n)
    elif style == "indicator":
        v = (rng.random(n) < 0.5).astype(float)
    else:
        raise ValueError(f"unknown style {style!r}")
    return GroundFunction(v)


def corpus(seed=0, max_n: int = 6):
    """A fixed mixed corpus of capacities over all kinds (used by tests)."""
    rng = _rng(seed)
    out = []
    for kind in (ValueKind.scalar(), ValueKind.vector(2), ValueKind.vector(3), ValueKind.sym(2), ValueKind.sym(3)):
        for n in range(1, max_n + 1):
            for family in ("monotone", "additive", "unanimity", "concave", "convex"):
                out.append(random_capacity(rng, n, kind, family))
    out.append(distort(random_capacity(rng, 4, ValueKind.sym(2), "additive"), "sqrt"))
    return [mu if isinstance(mu, Capacity) else Capacity.from_set_function(mu) for mu in out]
