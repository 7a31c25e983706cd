"""Black-box analysis of operators from functions on a finite set to an ordered space.

On a finite discrete ground set every function is continuous and every
subset is an upper contour set, so the representation of a comonotonic
additive monotone operator by a capacity becomes a finite statement: the
capacity is read off indicator functions and the integral formula can be
checked on samples.  Variations of operators are suprema over chains in
C(X); here they are computed exactly on finite grid sublattices, which
gives a lower bound in general and the exact value for monotone operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .capacity import Capacity, SetFunction, capacity_violations, subset_indices
from .errors import GridMisaligned, GroundMismatch, NotComparable, NotMonotone, UnknownBuiltin
from .integral import GroundFunction, choquet_sorted_array, random_comonotone_pair
from .lattice import chain_sup
from .ordered_values import (
    DEFAULT_TOL,
    OrderedValue,
    ValueKind,
    _require_lattice,
    cone_slack,
    norm_array,
)
from .reports import HOLDS, INCONCLUSIVE, REFUTED, PropertyReport

GRID_NODE_BUDGET = 20_000


@dataclass(frozen=True)
class OperatorHandle:
    """A deterministic map from functions on ``ground_size`` points to values of ``kind``.

    ``func`` receives a float array of length ``ground_size`` and returns
    anything convertible to a ``kind``-shaped array.
    """

    name: str
    ground_size: int
    kind: ValueKind
    func: Callable = field(repr=False, compare=False)

    def evaluate_array(self, f) -> np.ndarray:
        v = f.values if isinstance(f, GroundFunction) else np.asarray(f, dtype=float).reshape(-1)
        if v.shape != (self.ground_size,):
            raise GroundMismatch(f"{self.name} acts on {self.ground_size} points, got {v.size}")
        out = self.func(v)
        if isinstance(out, OrderedValue):
            out = out.payload
        out = np.asarray(out, dtype=float)
        if out.shape != self.kind.shape:
            raise ValueError(f"{self.name} returned shape {out.shape}, expected {self.kind.shape}")
        return out

    def evaluate(self, f) -> OrderedValue:
        return OrderedValue(self.kind, self.evaluate_array(f))

    __call__ = evaluate

    def __sub__(self, other: "OperatorHandle") -> "OperatorHandle":
        if other.ground_size != self.ground_size or other.kind != self.kind:
            raise GroundMismatch("operators act on different spaces")
        return OperatorHandle(
            f"({self.name} - {other.name})",
            self.ground_size,
            self.kind,
            lambda v: self.evaluate_array(v) - other.evaluate_array(v),
        )

    def __add__(self, other: "OperatorHandle") -> "OperatorHandle":
        if other.ground_size != self.ground_size or other.kind != self.kind:
            raise GroundMismatch("operators act on different spaces")
        return OperatorHandle(
            f"({self.name} + {other.name})",
            self.ground_size,
            self.kind,
            lambda v: self.evaluate_array(v) + other.evaluate_array(v),
        )


def cb_operator(mu: SetFunction, name: str = "cb") -> OperatorHandle:
    """f -> Choquet-Bochner integral of f over X with respect to ``mu``."""
    return OperatorHandle(name, mu.ground_size, mu.kind, lambda v: choquet_sorted_array(v, mu))


# --------------------------------------------------------------------------
# Builtin operators


def _tphi(phi, u, quad: int):
    phi = np.asarray(phi, dtype=float)
    u = np.asarray(u, dtype=float)
    n = phi.size
    if n < 2:
        raise ValueError("tphi needs at least two grid points")
    if np.any(phi < 0):
        raise ValueError("phi must be nonnegative")
    grid = np.linspace(-1.0, 1.0, n)
    if abs(float(np.interp(0.0, grid, phi))) > 1e-12:
        raise ValueError("phi must vanish at 0")
    if np.any(u < 0):
        raise ValueError("U weights must be nonnegative")
    if u.shape[-1] != n:
        raise ValueError("U needs one weight per t-grid point")
    xq = np.linspace(-1.0, 1.0, quad)
    wq = np.full(quad, 2.0 / (quad - 1))
    wq[[0, -1]] *= 0.5
    phi_q = np.interp(xq, grid, phi) * wq
    targets = grid[:, None] * xq[None, :]

    def func(f):
        fpos = np.maximum(np.interp(targets, grid, f), 0.0)
        h = fpos @ phi_q
        return u @ h

    return func


def builtin_operator(name: str, params: dict | None = None, ground_size: int | None = None) -> OperatorHandle:
    """Builtin operators: ``min``, ``max``, ``weighted_sum``, ``tphi``.

    ``weighted_sum`` takes ``{"w": [...]}`` (a list gives a scalar codomain,
    a list of rows a vector codomain, weights may be signed).  ``tphi``
    takes ``{"phi": [...], "u": [...], "quad": int}``: phi and u are sampled
    on the ground grid of [-1, 1]; the operator is
    f -> sum_j u_j int phi(x) f+(t_j x) dx with f interpolated piecewise
    linearly and the x-integral done by the trapezoid rule on ``quad`` nodes.
    """
    params = dict(params or {})
    if name in ("min", "max"):
        n = params.get("ground_size", ground_size)
        if n is None:
            raise ValueError(f"{name} needs a ground size")
        op = np.min if name == "min" else np.max
        return OperatorHandle(name, int(n), ValueKind.scalar(), lambda v: op(v))
    if name == "weighted_sum":
        w = np.asarray(params["w"], dtype=float)
        if w.ndim == 1:
            return OperatorHandle(name, w.size, ValueKind.scalar(), lambda v: w @ v)
        return OperatorHandle(name, w.shape[1], ValueKind.vector(w.shape[0]), lambda v: w @ v)
    if name == "tphi":
        phi = np.asarray(params["phi"], dtype=float)
        u = np.asarray(params.get("u", np.full(phi.size, 1.0 / phi.size)), dtype=float)
        quad = int(params.get("quad", 201))
        kind = ValueKind.scalar() if u.ndim == 1 else ValueKind.vector(u.shape[0])
        return OperatorHandle(name, phi.size, kind, _tphi(phi, u, quad))
    raise UnknownBuiltin(f"unknown builtin operator {name!r}")


# --------------------------------------------------------------------------
# Axiom certification


def _close(kind, a, b, tol):
    """``||a - b|| <= tol (1 + max ||a||, ||b||)``, batched over leading axes."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    scale = 1.0 + np.maximum(norm_array(kind, a), norm_array(kind, b))
    return norm_array(kind, a - b) <= tol * scale


def _below(kind, a, b, tol):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    scale = 1.0 + np.maximum(norm_array(kind, a), norm_array(kind, b))
    return cone_slack(kind, b - a) >= -tol * scale


def _random_f(rng, n):
    style = rng.integers(3)
    if style == 0:
        return rng.normal(0.0, 2.0, n)
    if style == 1:
        return rng.integers(-2, 3, n).astype(float)
    return rng.uniform(-1.0, 3.0, n)


def _report(name, tol, cases, witness=None, verdict=None):
    if witness is not None:
        return PropertyReport(name, REFUTED, cases, tol, counterexample=witness)
    return PropertyReport(name, verdict or HOLDS, cases, tol)


def _val(kind, arr):
    return OrderedValue(kind, arr)


def _first_failure(ok) -> int | None:
    bad = np.flatnonzero(~np.asarray(ok, dtype=bool))
    return int(bad[0]) if bad.size else None


def _sweep(name, kind, tol, lhs, rhs, compare, witness_of):
    """Report for one batched comparison; the first failing sample is the witness."""
    k = _first_failure(compare(kind, lhs, rhs, tol))
    if k is None:
        return _report(name, tol, len(lhs))
    return _report(name, tol, k + 1, witness_of(k))


def check_axioms(I: OperatorHandle, samples: int = 1000, seed=0, tol: float = DEFAULT_TOL) -> dict[str, PropertyReport]:
    """Randomised certification of the Choquet-operator axioms.

    Returns reports keyed ``subadditivity``, ``positive_homogeneity``
    (together the sublinearity axiom), ``comonotonic_additivity`` and
    ``monotonicity``.  "holds" means no violation was found in ``samples``
    random cases; refutations carry exact witnesses (the first failing
    sample, ``cases`` counts up to it).  Comparisons use the tolerance
    relative to ``1 + norm`` of the compared values.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    n, kind = I.ground_size, I.kind

    def ev(fs):
        return np.stack([I.evaluate_array(f) for f in fs])

    reports = {}

    fs = np.stack([_random_f(rng, n) for _ in range(samples)])
    gs = np.stack([_random_f(rng, n) for _ in range(samples)])
    lhs, If, Ig = ev(fs + gs), ev(fs), ev(gs)
    reports["subadditivity"] = _sweep(
        "subadditivity", kind, tol, lhs, If + Ig, _below,
        lambda k: {"inputs": {"f": fs[k], "g": gs[k]},
                   "outputs": {"I(f+g)": _val(kind, lhs[k]), "I(f)+I(g)": _val(kind, If[k] + Ig[k])}})

    fs = np.stack([_random_f(rng, n) for _ in range(samples)])
    a = np.where(np.arange(samples) % 10 == 0, 0.0, rng.uniform(0.0, 4.0, samples))
    lhs = ev(a[:, None] * fs)
    rhs = a.reshape((-1,) + (1,) * kind.ndim) * ev(fs)
    reports["positive_homogeneity"] = _sweep(
        "positive_homogeneity", kind, tol, lhs, rhs, _close,
        lambda k: {"inputs": {"f": fs[k], "a": float(a[k])},
                   "outputs": {"I(a f)": _val(kind, lhs[k]), "a I(f)": _val(kind, rhs[k])}})

    pairs = [random_comonotone_pair(rng, n, (-2.0, 2.0), decimals=1 if k % 3 == 0 else None) for k in range(samples)]
    fs = np.stack([p[0].values for p in pairs])
    gs = np.stack([p[1].values for p in pairs])
    lhs, If, Ig = ev(fs + gs), ev(fs), ev(gs)
    reports["comonotonic_additivity"] = _sweep(
        "comonotonic_additivity", kind, tol, lhs, If + Ig, _close,
        lambda k: {"inputs": {"f": fs[k], "g": gs[k]},
                   "outputs": {"I(f+g)": _val(kind, lhs[k]), "I(f)+I(g)": _val(kind, If[k] + Ig[k])}})

    fs = np.stack([_random_f(rng, n) for _ in range(samples)])
    bump = rng.exponential(1.0, (samples, n))
    bump[rng.random((samples, n)) < 0.4] = 0.0
    gs = fs + bump
    lo, hi = ev(fs), ev(gs)
    reports["monotonicity"] = _sweep(
        "monotonicity", kind, tol, lo, hi, _below,
        lambda k: {"inputs": {"f": fs[k], "g": gs[k]},
                   "outputs": {"I(f)": _val(kind, lo[k]), "I(g)": _val(kind, hi[k])}})
    return reports


def replay_axiom(I: OperatorHandle, name: str, inputs: dict, tol: float = DEFAULT_TOL) -> bool:
    """Re-evaluate one axiom witness; True when the violation reproduces."""
    ev, kind = I.evaluate_array, I.kind
    f = np.asarray(inputs["f"], dtype=float)
    if name == "positive_homogeneity":
        a = float(inputs["a"])
        return not bool(_close(kind, ev(a * f), a * ev(f), tol))
    g = np.asarray(inputs["g"], dtype=float)
    if name == "subadditivity":
        return not bool(_below(kind, ev(f + g), ev(f) + ev(g), tol))
    if name == "comonotonic_additivity":
        return not bool(_close(kind, ev(f + g), ev(f) + ev(g), tol))
    if name == "monotonicity":
        return bool(np.all(f <= g)) and not bool(_below(kind, ev(f), ev(g), tol))
    if name == "representation":
        raise ValueError("use replay_representation for representation witnesses")
    raise ValueError(f"unknown axiom {name!r}")


# --------------------------------------------------------------------------
# Capacity extraction and representation


def indicator(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=float)


def extract_set_function(I: OperatorHandle) -> SetFunction:
    """Table of I on all indicator functions (no validation)."""
    n = I.ground_size
    table = np.stack([I.evaluate_array(indicator(m, n)) for m in range(1 << n)])
    return SetFunction(n, I.kind, table)


def extract_capacity(I: OperatorHandle, tol: float = DEFAULT_TOL) -> Capacity:
    """mu(K) = I(indicator of K) for every subset K, validated as a capacity.

    On a finite discrete set the Urysohn functions of K equal the indicator
    as soon as n exceeds the inverse gap (see :func:`urysohn_sequence`),
    so the defining limit is attained.  Raises :class:`NotMonotone` with
    the violations when the table is not a capacity.
    """
    sf = extract_set_function(I)
    bad = capacity_violations(sf, tol)
    if bad:
        raise NotMonotone(f"{I.name} does not yield a capacity: {bad[0].describe(sf.ground_size)}", bad)
    return Capacity.from_set_function(sf, tol)


def urysohn_sequence(I: OperatorHandle, subset, defining=None, level: float = 1.0, max_doublings: int = 30):
    """Evaluate I on the Urysohn functions 1 - min(1, n (level - h)+) of K = {h >= level}.

    ``defining`` is a function ``h`` whose upper level set at ``level`` is
    the subset K; by default h = 1 on K and (i + 1) / (N + 1) at points
    i outside K.  ``n`` runs over 1, 2, 4, ...; the result records each
    value and the first ``n`` at which the Urysohn function equals the
    indicator of K exactly.
    """
    n_pts = I.ground_size
    mask = subset if isinstance(subset, (int, np.integer)) else sum(1 << int(i) for i in subset)
    chi = indicator(int(mask), n_pts)
    if defining is None:
        h = np.where(chi == 1.0, 1.0, (np.arange(n_pts) + 1.0) / (n_pts + 1.0))
        level = 1.0
    else:
        h = np.asarray(defining, dtype=float)
        if not np.array_equal(h >= level, chi == 1.0):
            raise ValueError("the defining function's level set is not the requested subset")
    values = []
    stable_at = None
    for k in range(max_doublings + 1):
        m = 2 ** k
        fn = 1.0 - np.minimum(1.0, m * np.maximum(level - h, 0.0))
        values.append((m, I.evaluate(fn)))
        if np.array_equal(fn, chi):
            stable_at = m
            break
    return {
        "subset": subset_indices(int(mask), n_pts),
        "sequence": values,
        "stabilizes_at": stable_at,
        "limit": I.evaluate(chi),
    }


def _representation_inputs(rng, n, samples):
    for k in range(samples):
        style = k % 4
        if style == 0:
            yield rng.normal(0.0, 2.0, n)
        elif style == 1:
            yield rng.integers(-2, 3, n).astype(float)
        elif style == 2:
            yield (rng.random(n) < 0.5).astype(float)
        else:
            yield rng.uniform(-3.0, 3.0, n) * (rng.random(n) < 0.7)


def verify_representation(I: OperatorHandle, mu: SetFunction, samples: int = 500, seed=0, tol: float = DEFAULT_TOL) -> PropertyReport:
    """Check ||I(f) - integral of f d mu|| <= tol (1 + ||I(f)||) on random f.

    The inputs cycle through signed Gaussian, tie-heavy integer,
    indicator-valued and sparse functions.
    """
    if mu.ground_size != I.ground_size or mu.kind != I.kind:
        raise GroundMismatch("operator and set function live on different spaces")
    rng = np.random.default_rng(seed)
    kind = I.kind
    fs = np.stack(list(_representation_inputs(rng, I.ground_size, samples)))
    got = np.stack([I.evaluate_array(f) for f in fs])
    want = np.stack([choquet_sorted_array(f, mu) for f in fs])
    ok = norm_array(kind, got - want) <= tol * (1.0 + norm_array(kind, got))
    k = _first_failure(ok)
    if k is None:
        return PropertyReport("representation", HOLDS, samples, tol)
    witness = {"inputs": {"f": fs[k]}, "outputs": {"I(f)": _val(kind, got[k]), "integral": _val(kind, want[k])}}
    return PropertyReport("representation", REFUTED, k + 1, tol, counterexample=witness)


def replay_representation(I: OperatorHandle, mu: SetFunction, inputs: dict, tol: float = DEFAULT_TOL) -> bool:
    f = np.asarray(inputs["f"], dtype=float)
    got, want = I.evaluate_array(f), choquet_sorted_array(f, mu)
    return float(norm_array(I.kind, got - want)) > tol * (1.0 + float(norm_array(I.kind, got)))


# --------------------------------------------------------------------------
# Grid lattices and variation


@dataclass(frozen=True)
class GridLattice:
    """Functions on ``ground_size`` points with values lo + k (hi - lo) / levels."""

    ground_size: int
    levels: int
    lo: float
    hi: float

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError("levels must be >= 1")
        if not self.lo < self.hi:
            raise ValueError("grid bounds need lo < hi")
        if self.size > GRID_NODE_BUDGET:
            raise ValueError(f"grid has {self.size} nodes, budget is {GRID_NODE_BUDGET}")

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / self.levels

    @property
    def shape(self) -> tuple:
        return (self.levels + 1,) * self.ground_size

    @property
    def size(self) -> int:
        return (self.levels + 1) ** self.ground_size

    def level_of(self, x: float) -> int | None:
        """Grid level of value ``x``, or None when x is not on the grid."""
        k = (float(x) - self.lo) / self.step
        r = round(k)
        if abs(k - r) > 1e-9 * max(1.0, abs(k)) or not 0 <= r <= self.levels:
            return None
        return int(r)

    def coords(self, f) -> tuple:
        v = f.values if isinstance(f, GroundFunction) else np.asarray(f, dtype=float).reshape(-1)
        if v.size != self.ground_size:
            raise GroundMismatch("function does not live on this grid's ground set")
        ks = [self.level_of(x) for x in v]
        if any(k is None for k in ks):
            raise GridMisaligned(f"{v.tolist()} is not a grid node")
        return tuple(ks)

    def flat_index(self, coords) -> int:
        return int(np.ravel_multi_index(tuple(coords), self.shape))

    def node(self, coords) -> np.ndarray:
        return self.lo + np.asarray(coords, dtype=float) * self.step

    def nodes(self) -> np.ndarray:
        """All node functions, shape ``(size, N)``, in flat-index order."""
        ks = np.indices(self.shape).reshape(self.ground_size, -1).T
        return self.lo + ks * self.step

    def contains_constant(self, c: float) -> bool:
        return self.level_of(c) is not None


def evaluate_grid(I: OperatorHandle, G: GridLattice) -> np.ndarray:
    """I on every grid node, shape ``(size,) + kind.shape``."""
    if G.ground_size != I.ground_size:
        raise GroundMismatch("grid and operator ground sets differ")
    return np.stack([I.evaluate_array(v) for v in G.nodes()])


def variation_from(values: np.ndarray, G: GridLattice, sources, weight: str = "abs") -> np.ndarray:
    """Chain suprema from each source (flat index) to every node.

    ``values`` is :func:`evaluate_grid` output.  Returns
    ``(len(sources), size) + kind.shape`` with ``-inf`` at nodes not above
    the source.
    """
    flat = values.reshape(values.shape[0], -1)
    sup = chain_sup(flat, G.shape, sources, weight)
    return sup.reshape((sup.shape[0], sup.shape[1]) + values.shape[1:])


def grid_variation(I: OperatorHandle, G: GridLattice, f, g, weight: str = "abs") -> OrderedValue:
    """Supremum of sum |I(f_k) - I(f_{k-1})| over chains f = f_0 <= ... <= f_n = g in G.

    Computed per component by longest path over covering steps of the
    sub-box [f, g].  This is a lower bound of the variation over all of
    C(X), and equals I(g) - I(f) for monotone I.
    """
    _require_lattice(I.kind)
    cf, cg = np.array(G.coords(f)), np.array(G.coords(g))
    if np.any(cf > cg):
        raise NotComparable("f is not below g")
    box = tuple(int(s) for s in cg - cf + 1)
    ks = np.indices(box).reshape(G.ground_size, -1).T + cf
    vals = np.stack([I.evaluate_array(G.lo + k * G.step) for k in ks])
    flat = vals.reshape(vals.shape[0], -1)
    sup = chain_sup(flat, box, [0], weight)[0, -1]
    return OrderedValue(I.kind, sup.reshape(I.kind.shape))


# --------------------------------------------------------------------------
# Decomposition into monotone operators


@dataclass
class Decomposition:
    """I = i1 - i2 on the nodes of ``grid`` with i1, i2 monotone.

    ``mode="total"`` uses the chain variation sum |dI|; ``mode="jordan"``
    uses the upper variation sum (dI)+, which yields the smallest monotone
    i1 (for a linear functional: its positive weights).  Chain suprema are
    taken on ``shift_grid`` = {0, step, ..., hi - lo + step}^N, where every
    G-node shifted to be nonnegative lives.
    """

    grid: GridLattice
    shift_grid: GridLattice
    mode: str
    operator: OperatorHandle
    chain_values: np.ndarray
    i1: OperatorHandle = field(init=False)
    i2: OperatorHandle = field(init=False)

    def __post_init__(self):
        kind, n = self.operator.kind, self.grid.ground_size
        self.i1 = OperatorHandle(f"{self.operator.name}[1]", n, kind, self._first)
        self.i2 = OperatorHandle(
            f"{self.operator.name}[2]", n, kind, lambda v: self._first(v) - self.operator.evaluate_array(v)
        )

    def __iter__(self):
        return iter((self.i1, self.i2))

    @property
    def unit(self) -> np.ndarray:
        """Chain supremum from 0 to the constant function 1."""
        return self.chain_at(np.ones(self.grid.ground_size))

    def chain_at(self, h) -> np.ndarray:
        idx = self.shift_grid.flat_index(self.shift_grid.coords(h))
        return self.chain_values[idx]

    def min_shift(self, f) -> float:
        self.grid.coords(f)
        return max(0.0, -float(np.min(f)))

    def upper_with_shift(self, f, alpha: float) -> np.ndarray:
        """chain(0, f + alpha) - alpha * chain(0, 1) for an admissible shift alpha."""
        f = np.asarray(f, dtype=float)
        self.grid.coords(f)
        if np.min(f) + alpha < -1e-12 * max(1.0, abs(alpha)):
            raise ValueError("shift does not make f nonnegative")
        h = np.maximum(f + alpha, 0.0)
        return self.chain_at(h) - alpha * self.unit

    def _first(self, v):
        return self.upper_with_shift(v, self.min_shift(v))

    def admissible_shifts(self, f) -> list[float]:
        """Grid-aligned shifts alpha with f + alpha a node of the shift grid."""
        a0 = self.min_shift(f)
        top = self.shift_grid.hi
        out = []
        k = 0
        while True:
            a = a0 + k * self.grid.step
            if np.max(f) + a > top + 1e-9 * max(1.0, top):
                break
            out.append(a)
            k += 1
        return out


def decompose(I: OperatorHandle, G: GridLattice, mode: str = "total") -> Decomposition:
    """Split I into two monotone, translation invariant operators on grid nodes.

    i1(f) = chain(0, f + alpha) - alpha chain(0, 1), with alpha the smallest
    grid-aligned shift making f + alpha >= 0, and i2 = i1 - I, so that
    I = i1 - i2.  Requires 0 and 1 to be grid levels.
    """
    _require_lattice(I.kind)
    if mode not in ("total", "jordan"):
        raise ValueError("mode must be 'total' or 'jordan'")
    if G.ground_size != I.ground_size:
        raise GroundMismatch("grid and operator ground sets differ")
    if not (G.contains_constant(0.0) and G.contains_constant(1.0)):
        raise GridMisaligned("grid must contain the constants 0 and 1")
    top = G.hi - G.lo + G.step
    shift = GridLattice(G.ground_size, G.levels + 1, 0.0, top)
    values = evaluate_grid(I, shift)
    chains = variation_from(values, shift, [0], "abs" if mode == "total" else "pos")[0]
    return Decomposition(G, shift, mode, I, chains)


def check_decomposition(I: OperatorHandle, i1: OperatorHandle, i2: OperatorHandle, G: GridLattice,
                        tol: float = DEFAULT_TOL, decomposition: Decomposition | None = None) -> list[PropertyReport]:
    """Verify I = i1 - i2 and the structural facts of the two parts on all grid nodes.

    Reports: ``identity``; ``monotone[1]`` / ``monotone[2]`` over all
    covering node pairs; ``homogeneity`` for integer scalings staying in G;
    ``translation`` i_j(f + b) = i_j(f) + i_j(b) for grid-aligned constants
    b; ``shift_independence`` of i1 across admissible shifts (needs the
    ``decomposition`` object, otherwise inconclusive).
    """
    kind = I.kind
    nodes = G.nodes()
    ev = {name: np.stack([op.evaluate_array(v) for v in nodes]) for name, op in (("I", I), ("1", i1), ("2", i2))}
    reports = []

    def node_json(k):
        return nodes[k]

    # identity
    witness, cases = None, 0
    for k in range(G.size):
        cases += 1
        lhs, rhs = ev["I"][k], ev["1"][k] - ev["2"][k]
        if not _close(kind, lhs, rhs, tol):
            witness = {"inputs": {"f": node_json(k)}, "outputs": {"I(f)": _val(kind, lhs), "I1(f)-I2(f)": _val(kind, rhs)}}
            break
    reports.append(_report("identity", tol, cases, witness))

    # monotonicity over covering pairs
    shape = G.shape
    for part in ("1", "2"):
        witness, cases = None, 0
        vals = ev[part]
        for axis in range(G.ground_size):
            ks = np.indices(shape).reshape(G.ground_size, -1)
            lower = np.flatnonzero(ks[axis] < G.levels)
            stride = int(np.prod(shape[axis + 1:]))
            upper = lower + stride
            cases += lower.size
            scale = 1.0 + np.maximum(norm_array(kind, vals[lower]), norm_array(kind, vals[upper]))
            slack = cone_slack(kind, vals[upper] - vals[lower])
            bad = np.flatnonzero(slack < -tol * scale)
            if bad.size:
                a, b = int(lower[bad[0]]), int(upper[bad[0]])
                witness = {"inputs": {"f": node_json(a), "g": node_json(b)},
                           "outputs": {f"I{part}(f)": _val(kind, vals[a]), f"I{part}(g)": _val(kind, vals[b])}}
                break
        reports.append(_report(f"monotone[{part}]", tol, cases, witness))

    index = {tuple(G.coords(v)): k for k, v in enumerate(nodes)}

    def lookup(v):
        try:
            return index[G.coords(v)]
        except GridMisaligned:
            return None

    # positive homogeneity for integer factors
    witness, cases = None, 0
    zero_k = lookup(np.zeros(G.ground_size))
    for k, v in enumerate(nodes):
        for a in (0.0, 2.0, 3.0):
            j = zero_k if a == 0.0 else lookup(a * v)
            if j is None:
                continue
            for part in ("1", "2"):
                cases += 1
                lhs, rhs = ev[part][j], a * ev[part][k]
                if not _close(kind, lhs, rhs, tol):
                    witness = {"inputs": {"f": v, "a": a, "part": int(part)},
                               "outputs": {"I(a f)": _val(kind, lhs), "a I(f)": _val(kind, rhs)}}
                    break
            if witness:
                break
        if witness:
            break
    reports.append(_report("homogeneity", tol, cases, witness))

    # translation invariance by grid-aligned constants
    witness, cases = None, 0
    ones = np.ones(G.ground_size)
    for k, v in enumerate(nodes):
        for sgn in (1.0, -1.0):
            b = sgn * G.step
            j, jb = lookup(v + b), lookup(b * ones)
            if j is None or jb is None:
                continue
            for part in ("1", "2"):
                cases += 1
                lhs, rhs = ev[part][j], ev[part][k] + ev[part][jb]
                if not _close(kind, lhs, rhs, tol):
                    witness = {"inputs": {"f": v, "b": b, "part": int(part)},
                               "outputs": {"I(f+b)": _val(kind, lhs), "I(f)+I(b)": _val(kind, rhs)}}
                    break
            if witness:
                break
        if witness:
            break
    reports.append(_report("translation", tol, cases, witness))

    # independence of the shift
    if decomposition is None:
        reports.append(_report("shift_independence", tol, 0, verdict=INCONCLUSIVE))
    else:
        witness, cases = None, 0
        for v in nodes:
            shifts = decomposition.admissible_shifts(v)
            base = decomposition.upper_with_shift(v, shifts[0])
            for a in shifts[1:]:
                cases += 1
                other = decomposition.upper_with_shift(v, a)
                if not _close(kind, base, other, tol):
                    witness = {"inputs": {"f": v, "alpha": [shifts[0], a]},
                               "outputs": {"first": _val(kind, base), "second": _val(kind, other)}}
                    break
            if witness:
                break
        reports.append(_report("shift_independence", tol, cases, witness))
    return reports
