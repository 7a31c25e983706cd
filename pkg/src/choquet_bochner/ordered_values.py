"""Values in the three concrete ordered Banach spaces used as codomains.

``scalar`` is the real line, ``vector(n)`` is R^n with the coordinatewise
order and the sup norm, ``sym(n)`` is the space of real symmetric n x n
matrices with the Loewner order (cone of positive semidefinite matrices)
and the spectral norm.  Scalar and vector are Banach lattices; sym is only
ordered, so lattice operations raise :class:`LatticeUnsupported` there.

Most of the package works on raw numpy arrays whose trailing axes are
``kind.shape``; :class:`OrderedValue` is the user-facing immutable wrapper.
The ``*_array`` helpers accept arbitrary leading batch axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import KindMismatch, LatticeUnsupported, NoConvergence

DEFAULT_TOL = 1e-9

JACOBI_MAX_N = 16
JACOBI_MAX_SWEEPS = 100
JACOBI_REL_THRESHOLD = 1e-12
SYM_ASYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class ValueKind:
    name: str
    dim: int = 1

    def __post_init__(self):
        if self.name not in ("scalar", "vector", "sym"):
            raise ValueError(f"unknown value kind {self.name!r}")
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if self.name == "scalar" and self.dim != 1:
            raise ValueError("scalar kind has dimension 1")

    @classmethod
    def scalar(cls) -> "ValueKind":
        return cls("scalar", 1)

    @classmethod
    def vector(cls, n: int) -> "ValueKind":
        return cls("vector", n)

    @classmethod
    def sym(cls, n: int) -> "ValueKind":
        return cls("sym", n)

    @property
    def shape(self) -> tuple:
        if self.name == "scalar":
            return ()
        if self.name == "vector":
            return (self.dim,)
        return (self.dim, self.dim)

    @property
    def is_lattice(self) -> bool:
        return self.name != "sym"

    @property
    def ndim(self) -> int:
        return len(self.shape)

    def __str__(self):
        return "scalar" if self.name == "scalar" else f"{self.name}({self.dim})"


# --------------------------------------------------------------------------
# Cyclic Jacobi eigensolver


def jacobi_eigh(M, max_sweeps: int = JACOBI_MAX_SWEEPS, rel_threshold: float = JACOBI_REL_THRESHOLD):
    """Eigen-decomposition of symmetric matrices by cyclic Jacobi rotations.

    ``M`` has shape ``(..., n, n)``; all matrices in the batch are rotated
    together, sweep by sweep, until every off-diagonal Frobenius norm is at
    most ``rel_threshold * ||M||_F`` of its own matrix.

    Returns ``(w, Q)`` with eigenvalues ``w`` sorted ascending along the last
    axis and orthogonal ``Q`` such that ``M = Q diag(w) Q^T``.
    """
    A = np.array(M, dtype=float, copy=True)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise ValueError("expected square matrices")
    n = A.shape[-1]
    if n > JACOBI_MAX_N:
        raise ValueError(f"Jacobi solver is limited to n <= {JACOBI_MAX_N}")
    batch = A.shape[:-2]
    A = A.reshape((-1, n, n))
    A = 0.5 * (A + np.swapaxes(A, -1, -2))
    V = np.broadcast_to(np.eye(n), A.shape).copy()
    threshold = rel_threshold * np.sqrt(np.einsum("bij,bij->b", A, A))
    off_mask = ~np.eye(n, dtype=bool)

    def off_norm():
        return np.sqrt(np.sum(A[:, off_mask] ** 2, axis=-1))

    for _ in range(max_sweeps + 1):
        if np.all(off_norm() <= threshold):
            break
        if _ == max_sweeps:
            raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[:, p, q]
                active = apq != 0.0
                if not np.any(active):
                    continue
                safe = np.where(active, apq, 1.0)
                # a tiny pivot overflows theta to inf, which correctly gives t = 0
                with np.errstate(over="ignore"):
                    theta = (A[:, q, q] - A[:, p, p]) / (2.0 * safe)
                    t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c3, s3 = c[:, None], s[:, None]
                app = A[:, p, p] - t * apq
                aqq = A[:, q, q] + t * apq
                colp, colq = A[:, :, p].copy(), A[:, :, q].copy()
                A[:, :, p] = c3 * colp - s3 * colq
                A[:, :, q] = s3 * colp + c3 * colq
                rowp, rowq = A[:, p, :].copy(), A[:, q, :].copy()
                A[:, p, :] = c3 * rowp - s3 * rowq
                A[:, q, :] = s3 * rowp + c3 * rowq
                A[:, p, p] = app
                A[:, q, q] = aqq
                A[:, p, q] = 0.0
                A[:, q, p] = 0.0
                vp, vq = V[:, :, p].copy(), V[:, :, q].copy()
                V[:, :, p] = c3 * vp - s3 * vq
                V[:, :, q] = s3 * vp + c3 * vq

    w = np.diagonal(A, axis1=-2, axis2=-1).copy()
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    V = np.take_along_axis(V, order[:, None, :], axis=-1)
    return w.reshape(batch + (n,)), V.reshape(batch + (n, n))


def min_eigenvalue(M) -> float:
    """Smallest eigenvalue of one symmetric matrix (n <= 16)."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError("min_eigenvalue expects a single matrix")
    w, _ = jacobi_eigh(M)
    return float(w[0])


def sym_apply(M, func):
    """Apply a real function to symmetric matrices through their spectrum."""
    w, Q = jacobi_eigh(M)
    fw = func(w)
    return np.einsum("...ik,...k,...jk->...ij", Q, fw, Q)


# --------------------------------------------------------------------------
# Array-level cone order and norms


def cone_slack(kind: ValueKind, arr) -> np.ndarray:
    """Largest ``s`` with ``arr - s*e`` still in the closed cone, per item.

    For scalar this is the value itself, for vector the minimum component,
    for sym the minimum eigenvalue.  ``u <= v`` at tolerance ``tol`` is
    ``cone_slack(v - u) >= -tol``.
    """
    arr = np.asarray(arr, dtype=float)
    if kind.name == "scalar":
        return arr
    if kind.name == "vector":
        return arr.min(axis=-1)
    w, _ = jacobi_eigh(arr)
    return w[..., 0]


def norm_array(kind: ValueKind, arr) -> np.ndarray:
    arr = np.asarray(arr, dtype=float)
    if kind.name == "scalar":
        return np.abs(arr)
    if kind.name == "vector":
        return np.abs(arr).max(axis=-1)
    w, _ = jacobi_eigh(arr)
    return np.abs(w).max(axis=-1)


def leq_array(kind: ValueKind, u, v, tol: float = DEFAULT_TOL) -> np.ndarray:
    return cone_slack(kind, np.asarray(v, dtype=float) - np.asarray(u, dtype=float)) >= -tol


def _require_lattice(kind: ValueKind):
    if not kind.is_lattice:
        raise LatticeUnsupported(f"{kind} is ordered but not a vector lattice")


# --------------------------------------------------------------------------
# OrderedValue


@dataclass(frozen=True, eq=False)
class OrderedValue:
    """An immutable element of one of the three ordered spaces."""

    kind: ValueKind
    payload: np.ndarray

    def __post_init__(self):
        arr = np.array(self.payload, dtype=float)
        if arr.shape != self.kind.shape:
            raise KindMismatch(f"payload shape {arr.shape} does not fit kind {self.kind}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("ordered values must be finite")
        if self.kind.name == "sym":
            skew = np.abs(arr - arr.T).max()
            scale = max(1.0, np.abs(arr).max())
            if skew > SYM_ASYMMETRY_TOL * scale:
                raise ValueError(f"matrix is not symmetric (asymmetry {skew:.3g})")
            arr = 0.5 * (arr + arr.T)
        arr.setflags(write=False)
        object.__setattr__(self, "payload", arr)

    @classmethod
    def scalar(cls, x: float) -> "OrderedValue":
        return cls(ValueKind.scalar(), np.asarray(x, dtype=float))

    @classmethod
    def vector(cls, xs) -> "OrderedValue":
        xs = np.asarray(xs, dtype=float)
        return cls(ValueKind.vector(xs.shape[0]), xs)

    @classmethod
    def sym(cls, m) -> "OrderedValue":
        m = np.asarray(m, dtype=float)
        return cls(ValueKind.sym(m.shape[0]), m)

    @classmethod
    def zero(cls, kind: ValueKind) -> "OrderedValue":
        return cls(kind, np.zeros(kind.shape))

    def _check(self, other: "OrderedValue"):
        if not isinstance(other, OrderedValue):
            raise TypeError(f"expected OrderedValue, got {type(other).__name__}")
        if other.kind != self.kind:
            raise KindMismatch(f"cannot combine {self.kind} with {other.kind}")

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return scale(-1.0, self)

    def __rmul__(self, a):
        return scale(a, self)

    def __eq__(self, other):
        return (
            isinstance(other, OrderedValue)
            and other.kind == self.kind
            and np.array_equal(other.payload, self.payload)
        )

    def __hash__(self):
        return hash((self.kind, self.payload.tobytes()))

    def __repr__(self):
        if self.kind.name == "scalar":
            return f"OrderedValue.scalar({float(self.payload)!r})"
        return f"OrderedValue.{self.kind.name}({self.payload.tolist()!r})"

    def to_json(self):
        if self.kind.name == "scalar":
            return float(self.payload)
        return self.payload.tolist()


def add(u: OrderedValue, v: OrderedValue) -> OrderedValue:
    u._check(v)
    return OrderedValue(u.kind, u.payload + v.payload)


def sub(u: OrderedValue, v: OrderedValue) -> OrderedValue:
    u._check(v)
    return OrderedValue(u.kind, u.payload - v.payload)


def scale(a: float, u: OrderedValue) -> OrderedValue:
    return OrderedValue(u.kind, float(a) * u.payload)


def leq(u: OrderedValue, v: OrderedValue, tol: float = DEFAULT_TOL) -> bool:
    """Cone order ``u <= v`` up to an absolute tolerance."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    u._check(v)
    return bool(leq_array(u.kind, u.payload, v.payload, tol))


def norm(u: OrderedValue) -> float:
    return float(norm_array(u.kind, u.payload))


def sup(u: OrderedValue, v: OrderedValue) -> OrderedValue:
    u._check(v)
    _require_lattice(u.kind)
    return OrderedValue(u.kind, np.maximum(u.payload, v.payload))


def inf(u: OrderedValue, v: OrderedValue) -> OrderedValue:
    u._check(v)
    _require_lattice(u.kind)
    return OrderedValue(u.kind, np.minimum(u.payload, v.payload))


def pos_part(u: OrderedValue) -> OrderedValue:
    _require_lattice(u.kind)
    return OrderedValue(u.kind, np.maximum(u.payload, 0.0))


def neg_part(u: OrderedValue) -> OrderedValue:
    _require_lattice(u.kind)
    return OrderedValue(u.kind, np.maximum(-u.payload, 0.0))


def modulus(u: OrderedValue) -> OrderedValue:
    _require_lattice(u.kind)
    return OrderedValue(u.kind, np.abs(u.payload))


# --------------------------------------------------------------------------
# JSON encoding


def kind_to_json(kind: ValueKind):
    if kind.name == "scalar":
        return "scalar"
    return {kind.name: kind.dim}


def kind_from_json(obj) -> ValueKind:
    if obj == "scalar":
        return ValueKind.scalar()
    if isinstance(obj, dict) and len(obj) == 1:
        (name, dim), = obj.items()
        if name in ("vector", "sym") and isinstance(dim, int) and not isinstance(dim, bool):
            return ValueKind(name, dim)
    raise ValueError(f"unrecognised value_kind {obj!r}")


def value_from_json(kind: ValueKind, obj) -> OrderedValue:
    arr = np.asarray(obj, dtype=float)
    return OrderedValue(kind, arr)
