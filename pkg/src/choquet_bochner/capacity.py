"""Set functions and vector capacities on finite ground sets.

A set function on ``{0, ..., N-1}`` is stored densely: ``table[mask]`` is
the value on the subset whose bitmask is ``mask``.  :class:`Capacity` is
the validated refinement (vanishes on the empty set, monotone in the cone
order).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import KindMismatch, NegativeWeight, NonPositiveTotal, NotPSD
from .lattice import chain_sup
from .ordered_values import (
    DEFAULT_TOL,
    OrderedValue,
    ValueKind,
    cone_slack,
    jacobi_eigh,
    sym_apply,
)
from .reports import HOLDS, REFUTED, PropertyReport

MAX_N_SCALAR = 20
MAX_N_STRUCTURED = 12
MAX_N_EXHAUSTIVE = 10


def max_ground_size(kind: ValueKind) -> int:
    return MAX_N_SCALAR if kind.name == "scalar" else MAX_N_STRUCTURED


def subset_mask(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def subset_indices(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def popcounts(n: int) -> np.ndarray:
    masks = np.arange(1 << n)
    counts = np.zeros(1 << n, dtype=int)
    for i in range(n):
        counts += (masks >> i) & 1
    return counts


@dataclass(frozen=True)
class GroundSet:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("ground set needs at least one point")
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("one label per point is required")

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1


@dataclass(frozen=True, eq=False)
class SetFunction:
    """Values of an arbitrary (possibly signed, non-monotone) set function."""

    ground_size: int
    kind: ValueKind
    table: np.ndarray
    labels: tuple[str, ...] | None = None
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.ground_size
        if not 1 <= n <= max_ground_size(self.kind):
            raise ValueError(
                f"ground size {n} outside 1..{max_ground_size(self.kind)} for {self.kind} values"
            )
        table = np.array(self.table, dtype=float)
        expected = (1 << n,) + self.kind.shape
        if table.shape != expected:
            raise KindMismatch(f"table shape {table.shape}, expected {expected}")
        if not np.all(np.isfinite(table)):
            raise ValueError("set function values must be finite")
        if self.kind.name == "sym":
            table = 0.5 * (table + np.swapaxes(table, -1, -2))
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            GroundSet(n, self.labels)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.ground_size, self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.ground_size) - 1

    def value(self, subset) -> OrderedValue:
        """Value on a subset given as a bitmask or an iterable of point indices."""
        mask = subset if isinstance(subset, (int, np.integer)) else subset_mask(subset)
        if not 0 <= mask <= self.full_mask:
            raise ValueError(f"subset mask {mask} outside the ground set")
        return OrderedValue(self.kind, self.table[int(mask)])

    def __getitem__(self, subset) -> OrderedValue:
        return self.value(subset)

    def _same_space(self, other: "SetFunction"):
        if other.ground_size != self.ground_size or other.kind != self.kind:
            raise KindMismatch("set functions live on different grounds or kinds")

    def __add__(self, other: "SetFunction") -> "SetFunction":
        self._same_space(other)
        return SetFunction(self.ground_size, self.kind, self.table + other.table, self.labels)

    def __sub__(self, other: "SetFunction") -> "SetFunction":
        self._same_space(other)
        return SetFunction(self.ground_size, self.kind, self.table - other.table, self.labels)

    def scaled(self, a: float) -> "SetFunction":
        return SetFunction(self.ground_size, self.kind, float(a) * self.table, self.labels)

    def as_set_function(self) -> "SetFunction":
        return SetFunction(self.ground_size, self.kind, self.table, self.labels, self.flags)

    def equals(self, other: "SetFunction", tol: float = 0.0) -> bool:
        if other.ground_size != self.ground_size or other.kind != self.kind:
            return False
        return bool(np.all(np.abs(self.table - other.table) <= tol))

    def flat(self) -> np.ndarray:
        """Table reshaped to ``(2**N, C)`` for componentwise algorithms."""
        return self.table.reshape(self.table.shape[0], -1)


@dataclass(frozen=True)
class Violation:
    condition: str  # "C1" or "C2"
    subset: int
    superset: int | None
    lower: OrderedValue
    upper: OrderedValue | None
    slack: float

    def describe(self, n: int) -> str:
        if self.condition == "C1":
            return f"C1 violated: value on the empty set is {self.lower.to_json()!r}, not 0"
        return (
            f"C2 violated: mu({subset_indices(self.subset, n)}) = {self.lower.to_json()!r} "
            f"is not below mu({subset_indices(self.superset, n)}) = {self.upper.to_json()!r}"
        )

    def to_json(self, n: int) -> dict:
        return {
            "condition": self.condition,
            "subset": subset_indices(self.subset, n),
            "superset": None if self.superset is None else subset_indices(self.superset, n),
            "values": [self.lower.to_json(), None if self.upper is None else self.upper.to_json()],
        }


def capacity_violations(sf: SetFunction, tol: float = DEFAULT_TOL, limit: int | None = None) -> list[Violation]:
    """Witnesses against (C1) exact vanishing at the empty set and (C2) monotonicity.

    (C2) is checked on the ``N * 2**(N-1)`` covering pairs ``(A, A + {i})``;
    transitivity of the cone order extends it to all nested pairs.
    """
    out = []
    t = sf.table
    if np.any(t[0] != 0.0):
        zero = OrderedValue(sf.kind, t[0])
        out.append(Violation("C1", 0, None, zero, None, float(-np.abs(t[0]).max())))
    masks = np.arange(1 << sf.ground_size)
    for i in range(sf.ground_size):
        lower = masks[(masks >> i) & 1 == 0]
        upper = lower | (1 << i)
        slack = cone_slack(sf.kind, t[upper] - t[lower])
        for k in np.flatnonzero(slack < -tol):
            a, b = int(lower[k]), int(upper[k])
            out.append(Violation("C2", a, b, sf.value(a), sf.value(b), float(slack[k])))
            if limit is not None and len(out) >= limit:
                return out
    return out


@dataclass(frozen=True, eq=False)
class Capacity(SetFunction):
    """A set function with (C1) and (C2) verified at tolerance ``tol``."""

    tol: float = DEFAULT_TOL

    def __post_init__(self):
        super().__post_init__()
        bad = capacity_violations(self, self.tol, limit=1)
        if bad:
            raise ValueError(bad[0].describe(self.ground_size))

    @classmethod
    def from_set_function(cls, sf: SetFunction, tol: float = DEFAULT_TOL) -> "Capacity":
        return cls(sf.ground_size, sf.kind, sf.table, sf.labels, sf.flags, tol)

    @property
    def total(self) -> OrderedValue:
        return self.value(self.full_mask)


def validate_capacity(sf: SetFunction, tol: float = DEFAULT_TOL):
    """Return a :class:`Capacity`, or the list of :class:`Violation` witnesses."""
    bad = capacity_violations(sf, tol)
    if bad:
        return bad
    return Capacity.from_set_function(sf, tol)


# --------------------------------------------------------------------------
# Constructors


def set_function_from(n: int, kind: ValueKind, fn) -> SetFunction:
    """Tabulate ``fn(indices) -> array`` over all subsets."""
    table = np.zeros((1 << n,) + kind.shape)
    for mask in range(1, 1 << n):
        table[mask] = fn(subset_indices(mask, n))
    return SetFunction(n, kind, table)


def additive_measure(weights) -> Capacity:
    """mu(A) = sum of point weights over A; weights must lie in the positive cone."""
    ws = [w if isinstance(w, OrderedValue) else OrderedValue.scalar(w) for w in weights]
    if not ws:
        raise ValueError("at least one weight is required")
    kind = ws[0].kind
    for i, w in enumerate(ws):
        if w.kind != kind:
            raise KindMismatch("weights of mixed kinds")
        if cone_slack(kind, w.payload) < 0:
            raise NegativeWeight(f"weight {i} is not in the positive cone")
    n = len(ws)
    masks = np.arange(1 << n)
    table = np.zeros((1 << n,) + kind.shape)
    for i, w in enumerate(ws):
        table[(masks >> i) & 1 == 1] += w.payload
    return Capacity(n, kind, table)


def unanimity(n: int, subset, value: OrderedValue | None = None) -> Capacity:
    """u_T(A) = value if T is contained in A else 0 (value defaults to scalar 1)."""
    t_mask = subset if isinstance(subset, (int, np.integer)) else subset_mask(subset)
    value = OrderedValue.scalar(1.0) if value is None else value
    masks = np.arange(1 << n)
    hit = (masks & t_mask) == t_mask
    if t_mask == 0:
        hit[0] = False
    table = np.zeros((1 << n,) + value.kind.shape)
    table[hit] = value.payload
    return Capacity(n, value.kind, table)


def _like(sf: SetFunction, table, flags=()) -> SetFunction:
    if isinstance(sf, Capacity):
        return Capacity(sf.ground_size, sf.kind, table, sf.labels, tuple(flags), sf.tol)
    return SetFunction(sf.ground_size, sf.kind, table, sf.labels, tuple(flags))


def dual(mu: SetFunction) -> SetFunction:
    """mu_bar(A) = mu(X) - mu(X minus A)."""
    full = mu.full_mask
    masks = np.arange(1 << mu.ground_size)
    table = mu.table[full] - mu.table[full ^ masks]
    table[0] = 0.0
    return _like(mu, table)


# --------------------------------------------------------------------------
# Distortions


_POWER = re.compile(r"^power[:(]\s*([0-9.eE+-]+)\s*\)?$")


def parse_distortion(name) -> float:
    """Exponent of a distortion name: square -> 2, sqrt -> 0.5, power:p -> p."""
    if isinstance(name, (int, float)):
        p = float(name)
    elif name == "square":
        p = 2.0
    elif name == "sqrt":
        p = 0.5
    else:
        m = _POWER.match(str(name).strip())
        if not m:
            raise ValueError(f"unknown distortion {name!r}")
        p = float(m.group(1))
    if not p > 0:
        raise ValueError("distortion exponent must be positive")
    return p


def distort(mu: SetFunction, distortion, strict: bool = False, tol: float = DEFAULT_TOL) -> SetFunction:
    """nu(A) = T(mu(A)) for a power distortion T.

    Scalar and vector values are distorted entrywise after normalising by
    mu(X), i.e. ``nu(A) = mu(X) * T(mu(A) / mu(X))``, so T maps the order
    interval [0, mu(X)] onto itself.  When mu(X) has a zero entry the raw
    values are distorted instead and ``"raw-values"`` is added to
    ``flags`` (``strict=True`` raises :class:`NonPositiveTotal` instead).

    Sym values go through the spectrum: ``square`` is the matrix product
    A @ A, ``sqrt`` the principal square root.  Matrix squaring is not
    operator monotone, so a sym ``square`` result need not revalidate.
    """
    p = parse_distortion(distortion)
    t = mu.table
    flags = []
    if mu.kind.name == "sym":
        if p == 2.0:
            out = np.einsum("...ij,...jk->...ik", t, t)
        else:
            w, _ = jacobi_eigh(t)
            if np.any(w[..., 0] < -tol):
                raise NotPSD("matrix power of a value that is not positive semidefinite")
            out = sym_apply(t, lambda lam: np.maximum(lam, 0.0) ** p)
    else:
        total = t[mu.full_mask]
        if np.any(total < 0):
            raise NonPositiveTotal("mu(X) has a negative entry")
        if np.all(total > 0):
            ratio = np.clip(t / total, 0.0, None)
            out = total * ratio ** p
        else:
            if strict:
                raise NonPositiveTotal("mu(X) has a zero entry; cannot normalise")
            flags.append("raw-values")
            if np.any(t < 0) and p != round(p):
                raise NonPositiveTotal("fractional power of negative values")
            out = np.sign(t) * np.abs(t) ** p
    out = np.array(out)
    out[0] = 0.0
    return SetFunction(mu.ground_size, mu.kind, out, mu.labels, tuple(flags))


# --------------------------------------------------------------------------
# Sub/supermodularity


def _check_local(mu: SetFunction, tol: float, sign: float, name: str) -> PropertyReport:
    n = mu.ground_size
    t = mu.table
    masks = np.arange(1 << n)
    cases = 0
    for i, j in itertools.combinations(range(n), 2):
        a = masks[((masks >> i) & 1 == 0) & ((masks >> j) & 1 == 0)]
        ai, aj, aij = a | 1 << i, a | 1 << j, a | 1 << i | 1 << j
        diff = (t[ai] + t[aj]) - (t[aij] + t[a])
        slack = cone_slack(mu.kind, sign * diff)
        cases += a.size
        bad = np.flatnonzero(slack < -tol)
        if bad.size:
            k = int(a[bad[0]])
            witness = {
                "inputs": {"A": subset_indices(k, n), "i": i, "j": j},
                "outputs": {
                    "mu(A+i+j)+mu(A)": OrderedValue(mu.kind, t[k | 1 << i | 1 << j] + t[k]),
                    "mu(A+i)+mu(A+j)": OrderedValue(mu.kind, t[k | 1 << i] + t[k | 1 << j]),
                },
            }
            return PropertyReport(name, REFUTED, cases, tol, counterexample=witness)
    return PropertyReport(name, HOLDS, cases, tol)


def _check_exhaustive(mu: SetFunction, tol: float, sign: float, name: str) -> PropertyReport:
    n = mu.ground_size
    if n > MAX_N_EXHAUSTIVE:
        raise ValueError(f"exhaustive mode is limited to N <= {MAX_N_EXHAUSTIVE}")
    t = mu.table
    masks = np.arange(1 << n)
    cases = 0
    for a in range(1 << n):
        b = masks
        diff = (t[a] + t[b]) - (t[a | b] + t[a & b])
        slack = cone_slack(mu.kind, sign * diff)
        cases += b.size
        bad = np.flatnonzero(slack < -tol)
        if bad.size:
            bb = int(b[bad[0]])
            witness = {
                "inputs": {"A": subset_indices(a, n), "B": subset_indices(bb, n)},
                "outputs": {
                    "mu(A|B)+mu(A&B)": OrderedValue(mu.kind, t[a | bb] + t[a & bb]),
                    "mu(A)+mu(B)": OrderedValue(mu.kind, t[a] + t[bb]),
                },
            }
            return PropertyReport(name, REFUTED, cases, tol, counterexample=witness)
    return PropertyReport(name, HOLDS, cases, tol)


def is_submodular(mu: SetFunction, tol: float = DEFAULT_TOL, mode: str = "local") -> PropertyReport:
    """mu(A|B) + mu(A&B) <= mu(A) + mu(B) in the cone order.

    ``mode="local"`` checks the equivalent pairwise condition
    mu(A+i+j) + mu(A) <= mu(A+i) + mu(A+j) for i, j outside A;
    ``mode="exhaustive"`` checks all pairs of subsets (N <= 10).
    """
    check = _check_local if mode == "local" else _check_exhaustive
    return check(mu, tol, 1.0, "submodular")


def is_supermodular(mu: SetFunction, tol: float = DEFAULT_TOL, mode: str = "local") -> PropertyReport:
    check = _check_local if mode == "local" else _check_exhaustive
    return check(mu, tol, -1.0, "supermodular")


# --------------------------------------------------------------------------
# Variations


def _require_lattice(sf: SetFunction):
    from .ordered_values import _require_lattice as req

    req(sf.kind)


def variation_table(sf: SetFunction, weight: str = "abs") -> SetFunction:
    """Chain supremum from the empty set to every subset, as a new set function.

    ``weight`` selects the increment functional: ``"abs"`` gives the
    variation |mu|, ``"pos"`` the inner upper variation mu+, ``"neg"`` the
    inner lower variation mu-.  Chains end at the subset itself.
    """
    _require_lattice(sf)
    n = sf.ground_size
    sup = chain_sup(sf.flat(), (2,) * n, [0], weight)[0]
    return SetFunction(n, sf.kind, sup.reshape(sf.table.shape), sf.labels)


def _at(sf: SetFunction, subset, weight: str) -> OrderedValue:
    mask = subset if isinstance(subset, (int, np.integer)) else subset_mask(subset)
    _require_lattice(sf)
    n = sf.ground_size
    # restrict the lattice to subsets of A: bits outside A are dropped
    pts = subset_indices(int(mask), n)
    sub_masks = np.zeros(1 << len(pts), dtype=int)
    for k, p in enumerate(pts):
        sub_masks[(np.arange(1 << len(pts)) >> k) & 1 == 1] |= 1 << p
    sub = sf.flat()[sub_masks]
    # bit k of the local mask is point pts[k]; the box axis for bit k is len-1-k
    sup = chain_sup(sub, (2,) * len(pts), [0], weight)[0] if pts else np.zeros((1, sub.shape[1]))
    return OrderedValue(sf.kind, sup[-1].reshape(sf.kind.shape))


def variation(sf: SetFunction, subset) -> OrderedValue:
    return _at(sf, subset, "abs")


def inner_upper_variation(sf: SetFunction, subset) -> OrderedValue:
    return _at(sf, subset, "pos")


def inner_lower_variation(sf: SetFunction, subset) -> OrderedValue:
    return _at(sf, subset, "neg")


def jordan_decomposition(sf: SetFunction) -> tuple[Capacity, Capacity]:
    """(mu+, mu-) as capacities; mu = mu+ - mu- when mu vanishes on the empty set."""
    plus = variation_table(sf, "pos")
    minus = variation_table(sf, "neg")
    return Capacity.from_set_function(plus), Capacity.from_set_function(minus)


def replay_modularity(mu: SetFunction, name: str, inputs: dict, tol: float = DEFAULT_TOL) -> bool:
    """Re-evaluate a sub/supermodularity witness; True when it still violates."""
    if name not in ("submodular", "supermodular"):
        raise ValueError(f"unknown property {name!r}")
    sign = 1.0 if name == "submodular" else -1.0
    t = mu.table
    a = subset_mask(inputs["A"])
    if "B" in inputs:
        b = subset_mask(inputs["B"])
        diff = (t[a] + t[b]) - (t[a | b] + t[a & b])
    else:
        i, j = int(inputs["i"]), int(inputs["j"])
        if (a >> i) & 1 or (a >> j) & 1 or i == j:
            raise ValueError("witness points must be distinct and outside A")
        diff = (t[a | 1 << i] + t[a | 1 << j]) - (t[a | 1 << i | 1 << j] + t[a])
    return bool(cone_slack(mu.kind, sign * diff) < -tol)
