"""Choquet-Bochner integrals of real functions on a finite ground set.

Two independent routes are provided:

* :func:`choquet_sorted` -- the closed form.  After shifting ``f`` to be
  nonnegative on ``A`` the survival function ``t -> mu({f >= t})`` is a
  step function whose plateaus are the upper sets of the sorted values, so
  its Bochner integral is a finite weighted sum; the shift is undone with
  translation invariance.
* :func:`choquet_quadrature` -- left-endpoint Riemann sums of the two
  improper integrals (positive and negative half-lines) taken literally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .capacity import SetFunction, subset_indices, subset_mask
from .errors import EmptySubset, GroundMismatch
from .ordered_values import OrderedValue, norm_array


@dataclass(frozen=True, eq=False)
class GroundFunction:
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(-1)
        if v.size == 0:
            raise ValueError("a ground function needs at least one point")
        if not np.all(np.isfinite(v)):
            raise ValueError("ground function values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def ground_size(self) -> int:
        return self.values.size

    def __add__(self, other):
        return GroundFunction(self.values + _values(other))

    def __sub__(self, other):
        return GroundFunction(self.values - _values(other))

    def __rmul__(self, a):
        return GroundFunction(float(a) * self.values)

    def __neg__(self):
        return GroundFunction(-self.values)

    def __repr__(self):
        return f"GroundFunction({self.values.tolist()!r})"


def _values(f) -> np.ndarray:
    if isinstance(f, GroundFunction):
        return f.values
    if np.isscalar(f):
        return np.asarray(f, dtype=float)
    return np.asarray(f, dtype=float).reshape(-1)


def _resolve(f, mu: SetFunction, subset):
    vals = _values(f)
    if vals.shape != (mu.ground_size,):
        raise GroundMismatch(f"function has {vals.size} points, set function has {mu.ground_size}")
    if subset is None:
        mask = mu.full_mask
    elif isinstance(subset, (int, np.integer)):
        mask = int(subset)
    else:
        mask = subset_mask(subset)
    if mask == 0:
        raise EmptySubset("integration domain is empty")
    if mask > mu.full_mask:
        raise ValueError("subset outside the ground set")
    return vals, mask


def _sorted_upper_sets(vals, mask, n):
    """Points of A sorted by (value, index), their values, and suffix masks.

    ``suffix[i]`` is the mask of the points ranked ``i..k-1``; ``suffix[k]``
    is the empty set.
    """
    pts = np.asarray(subset_indices(mask, n), dtype=int)
    order = np.argsort(vals[pts], kind="stable")
    pts = pts[order]
    v = vals[pts]
    bits = np.left_shift(1, pts)
    suffix = np.zeros(pts.size + 1, dtype=np.int64)
    suffix[:-1] = np.bitwise_or.accumulate(bits[::-1])[::-1]
    return pts, v, suffix


def choquet_sorted_array(f, mu: SetFunction, subset=None) -> np.ndarray:
    """Raw-array version of :func:`choquet_sorted`."""
    vals, mask = _resolve(f, mu, subset)
    if np.any(mu.table[0] != 0.0):
        raise ValueError("set function does not vanish on the empty set")
    _, v, suffix = _sorted_upper_sets(vals, mask, mu.ground_size)
    shift = min(float(v[0]), 0.0)
    g = v - shift
    steps = np.diff(np.concatenate(([0.0], g)))
    plateau = mu.table[suffix[:-1]]
    out = np.tensordot(steps, plateau, axes=(0, 0))
    if shift != 0.0:
        out = out + shift * mu.table[mask]
    return np.asarray(out, dtype=float)


def choquet_sorted(f, mu: SetFunction, subset=None) -> OrderedValue:
    """Closed-form Choquet-Bochner integral of ``f`` over ``subset`` (default: X).

    ``f`` may be a :class:`GroundFunction` or any length-N sequence;
    ``subset`` a bitmask or an iterable of point indices.  Ties are broken
    by point index; the result does not depend on the tie order.
    """
    return OrderedValue(mu.kind, choquet_sorted_array(f, mu, subset))


def choquet_quadrature(f, mu: SetFunction, subset=None, steps: int = 10_000) -> OrderedValue:
    """Riemann-sum evaluation of the two improper integrals.

    The positive part integrates ``mu({x in A: f(x) >= t})`` over
    ``[0, max f+]`` and the negative part ``mu({f >= t}) - mu(A)`` over
    ``[min(-f-), 0]``, each with ``steps`` uniform cells sampled at their
    left endpoints.  For a capacity the error is at most
    :func:`quadrature_error_bound`.
    """
    if int(steps) < 1:
        raise ValueError("steps must be >= 1")
    steps = int(steps)
    vals, mask = _resolve(f, mu, subset)
    _, v, suffix = _sorted_upper_sets(vals, mask, mu.ground_size)
    table = mu.table
    total = np.zeros(mu.kind.shape)
    top = max(float(v[-1]), 0.0)
    if top > 0.0:
        h = top / steps
        t = np.arange(steps) * h
        levels = suffix[np.searchsorted(v, t, side="left")]
        counts = np.bincount(levels, minlength=table.shape[0])
        total = total + h * np.tensordot(counts.astype(float), table, axes=(0, 0))
    bottom = min(float(v[0]), 0.0)
    if bottom < 0.0:
        h = -bottom / steps
        t = bottom + np.arange(steps) * h
        levels = suffix[np.searchsorted(v, t, side="left")]
        counts = np.bincount(levels, minlength=table.shape[0])
        acc = np.tensordot(counts.astype(float), table, axes=(0, 0)) - steps * table[mask]
        total = total + h * acc
    return OrderedValue(mu.kind, total)


def quadrature_error_bound(f, mu: SetFunction, subset=None, steps: int = 10_000) -> float:
    """2 ||f||_inf ||mu(A)|| / steps, valid for capacities."""
    vals, mask = _resolve(f, mu, subset)
    return 2.0 * float(np.abs(vals).max()) * float(norm_array(mu.kind, mu.table[mask])) / steps


def is_comonotone(f, g) -> bool:
    """True iff (f(s) - f(t)) * (g(s) - g(t)) >= 0 for every pair of points."""
    a, b = _values(f), _values(g)
    if a.shape != b.shape:
        raise GroundMismatch("functions live on ground sets of different size")
    da = a[:, None] - a[None, :]
    db = b[:, None] - b[None, :]
    return not bool(np.any(da * db < 0))


def random_comonotone_pair(seed, n: int, value_range=(-1.0, 1.0), decimals: int | None = None):
    """Two functions sharing one random ordering of the ground set.

    Draws a uniform permutation sigma and two independent nondecreasing
    arrays a, b; returns f(sigma(i)) = a_i and g(sigma(i)) = b_i.  With
    ``decimals`` the sorted arrays are rounded, which creates ties but keeps
    them sorted.  ``seed`` may be an int or a numpy Generator.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    lo, hi = value_range
    sigma = rng.permutation(n)
    a = np.sort(rng.uniform(lo, hi, n))
    b = np.sort(rng.uniform(lo, hi, n))
    if decimals is not None:
        a, b = np.round(a, decimals), np.round(b, decimals)
    f = np.empty(n)
    g = np.empty(n)
    f[sigma] = a
    g[sigma] = b
    return GroundFunction(f), GroundFunction(g)
