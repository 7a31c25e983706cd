"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
Tolerances are relative: ``tol * (1 + norm)`` of the compared values.
"""

import sys
from collections import defaultdict
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from choquet_bochner.capacity import (  # noqa: E402
    Capacity,
    SetFunction,
    additive_measure,
    dual,
    is_submodular,
    is_supermodular,
    jordan_decomposition,
    unanimity,
    variation_table,
)
from choquet_bochner.generators import corpus, random_capacity, random_set_function, random_submodular  # noqa: E402
from choquet_bochner.integral import (  # noqa: E402
    choquet_quadrature,
    choquet_sorted_array,
    quadrature_error_bound,
    random_comonotone_pair,
)
from choquet_bochner.operators import (  # noqa: E402
    GridLattice,
    builtin_operator,
    cb_operator,
    check_axioms,
    check_decomposition,
    decompose,
    evaluate_grid,
    extract_capacity,
    variation_from,
    verify_representation,
)
from choquet_bochner.ordered_values import (  # noqa: E402
    OrderedValue,
    ValueKind,
    cone_slack,
    jacobi_eigh,
    leq,
    norm,
    norm_array,
)
from oracles import eig2_min  # noqa: E402

TOL = 1e-9


class Ledger:
    """Collects named checks and prints one line for the criterion."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failures, self.notes = [], []

    def check(self, name, ok, detail=""):
        if not ok:
            self.failures.append(f"{name} {detail}".strip())

    def note(self, text):
        self.notes.append(text)

    def finish(self, capsys):
        status = "PASS" if not self.failures else "FAIL"
        info = "; ".join(self.notes + self.failures[:3])
        with capsys.disabled():
            print(f"\ncriterion {self.number} ({self.title}): {status}  {info}")
        assert not self.failures, self.failures


def stacked_le(groups):
    """Batched cone comparisons: {kind: [(lhs, rhs), ...]} -> number of failures."""
    bad = 0
    for kind, pairs in groups.items():
        lhs = np.stack([p[0] for p in pairs])
        rhs = np.stack([p[1] for p in pairs])
        scale = 1.0 + np.maximum(norm_array(kind, lhs), norm_array(kind, rhs))
        bad += int(np.sum(cone_slack(kind, rhs - lhs) < -TOL * scale))
    return bad


def stacked_close(groups):
    bad = 0
    for kind, pairs in groups.items():
        lhs = np.stack([p[0] for p in pairs])
        rhs = np.stack([p[1] for p in pairs])
        scale = 1.0 + np.maximum(norm_array(kind, lhs), norm_array(kind, rhs))
        bad += int(np.sum(norm_array(kind, lhs - rhs) > TOL * scale))
    return bad


def random_kind(rng, name):
    if name == "scalar":
        return ValueKind.scalar(), int(rng.integers(1, 9))
    dim = int(rng.integers(1, 5 if name == "vector" else 4))
    return ValueKind(name, dim), int(rng.integers(1, 7))


# --- 1. integral axioms -----------------------------------------------------------


def test_criterion_1_integral_axioms(capsys):
    led = Ledger(1, "integral axioms")
    rng = np.random.default_rng(101)
    per_kind = 1000
    calib_bad = 0
    le, close = defaultdict(list), defaultdict(list)
    for name in ("scalar", "vector", "sym"):
        for _ in range(per_kind):
            kind, n = random_kind(rng, name)
            mu = random_capacity(rng, n, kind, ("monotone", "additive", "unanimity", "concave", "convex")[_ % 5])
            a = int(rng.integers(1, 1 << n))
            zero = np.zeros(kind.shape)
            # calibration, bit for bit
            if not np.array_equal(choquet_sorted_array(np.ones(n), mu, a), mu.table[a]):
                calib_bad += 1
            f = rng.normal(0.0, 2.0, n)
            if _ % 4 == 0:
                f = np.round(f)
            I = lambda h: choquet_sorted_array(h, mu, a)  # noqa: E731
            If = I(f)
            # positivity
            le[kind].append((zero, I(np.abs(f))))
            # monotonicity
            bump = rng.exponential(1.0, n) * (rng.random(n) < 0.6)
            le[kind].append((If, I(f + bump)))
            # positive homogeneity
            s = float(rng.uniform(0.0, 5.0))
            close[kind].append((I(s * f), s * If))
            # translation invariance
            c = float(rng.normal(0.0, 2.0))
            close[kind].append((I(f + c), If + c * mu.table[a]))
            # comonotonic additivity
            g, h = random_comonotone_pair(rng, n, (-2.0, 2.0), 1 if _ % 3 == 0 else None)
            close[kind].append((I(g.values + h.values), I(g) + I(h)))
    total = 3 * per_kind
    led.check("calibration", calib_bad == 0, f"{calib_bad} inexact")
    led.check("order", (b := stacked_le(le)) == 0, f"{b} order failures")
    led.check("equalities", (b := stacked_close(close)) == 0, f"{b} equality failures")
    led.note(f"{total} instances, {sum(map(len, le.values())) + sum(map(len, close.values()))} comparisons")
    led.finish(capsys)


# --- 2. oracle equivalence ------------------------------------------------------------


def test_criterion_2_quadrature_vs_sorted(capsys):
    led = Ledger(2, "quadrature vs closed form")
    rng = np.random.default_rng(202)
    kinds = [ValueKind.scalar(), ValueKind.vector(2), ValueKind.vector(4), ValueKind.sym(2), ValueKind.sym(3)]
    worst, not_decreasing, over, exact_already = 0.0, 0, 0, 0
    for k in range(200):
        kind = kinds[k % len(kinds)]
        n = int(rng.integers(1, 7))
        mu = random_capacity(rng, n, kind)
        f = rng.normal(0.0, 2.0, n)
        a = int(rng.integers(1, 1 << n))
        exact = OrderedValue(kind, choquet_sorted_array(f, mu, a))
        errs = []
        for steps in (100, 10_000):
            err = norm(choquet_quadrature(f, mu, a, steps=steps) - exact)
            bound = quadrature_error_bound(f, mu, a, steps=steps)
            if err > bound * (1 + 1e-9) + 1e-15:
                over += 1
            worst = max(worst, err / bound if bound else 0.0)
            errs.append(err)
        # a domain whose breakpoints sit on cell edges (e.g. a single point) is
        # summed exactly at every step count; there only roundoff can remain
        floor = 1e-12 * (1.0 + np.abs(f).max() * norm(mu.value(a)))
        if errs[0] <= floor:
            exact_already += 1
            if errs[1] > floor:
                not_decreasing += 1
        elif not errs[1] < errs[0]:
            not_decreasing += 1
    led.check("bound", over == 0, f"{over} errors above the bound")
    led.check("decrease", not_decreasing == 0, f"{not_decreasing} instances without decrease")
    led.note(f"200 instances, worst err/bound {worst:.3g}, {exact_already} exact at roundoff already")
    led.finish(capsys)


# --- 3. subadditivity and submodularity transfer ----------------------------------------


def test_criterion_3_subadditivity_transfer(capsys):
    led = Ledger(3, "subadditivity and transfer")
    rng = np.random.default_rng(303)
    kinds = [ValueKind.scalar(), ValueKind.vector(2), ValueKind.vector(3), ValueKind.sym(2), ValueKind.sym(3)]
    sub, lat = defaultdict(list), defaultdict(list)
    caps = 0
    for k in range(50):
        kind = kinds[k % len(kinds)]
        n = int(rng.integers(2, 7))
        mu = random_submodular(rng, n, kind)
        led.check("certified", is_submodular(mu, mode="exhaustive").holds, f"capacity {k}")
        caps += 1
        for _ in range(500):
            f, g = rng.normal(0.0, 2.0, n), rng.normal(0.0, 2.0, n)
            if _ % 5 == 0:
                f, g = np.round(f), np.round(g)
            rhs = choquet_sorted_array(f, mu) + choquet_sorted_array(g, mu)
            sub[kind].append((choquet_sorted_array(f + g, mu), rhs))
            lat[kind].append((choquet_sorted_array(np.maximum(f, g), mu) + choquet_sorted_array(np.minimum(f, g), mu),
                              rhs))
    led.check("subadditivity", (b := stacked_le(sub)) == 0, f"{b} failures")
    led.check("transfer", (b := stacked_le(lat)) == 0, f"{b} failures")
    # a certified non-submodular capacity must show a subadditivity violation
    bad_mu = random_capacity(7, 4, ValueKind.vector(2), "convex")
    cert = is_submodular(bad_mu)
    rep = check_axioms(cb_operator(bad_mu), samples=500, seed=1)["subadditivity"]
    led.check("non-submodular certified", cert.refuted)
    led.check("violation found", rep.refuted)
    led.note(f"{caps} capacities x 500 pairs; convex capacity refuted after {rep.cases} cases")
    led.finish(capsys)


# --- 4. modulus inequality ------------------------------------------------------------------


def test_criterion_4_modulus_inequality(capsys):
    led = Ledger(4, "modulus inequality")
    rng = np.random.default_rng(404)
    kinds = [ValueKind.scalar(), ValueKind.vector(2), ValueKind.vector(4)]
    groups = defaultdict(list)
    for k in range(12):
        kind = kinds[k % len(kinds)]
        n = int(rng.integers(1, 7))
        mu = random_submodular(rng, n, kind)
        for _ in range(500):
            f, g = rng.normal(0.0, 2.0, n), rng.normal(0.0, 2.0, n)
            lhs = np.abs(choquet_sorted_array(f, mu) - choquet_sorted_array(g, mu))
            groups[kind].append((lhs, choquet_sorted_array(np.abs(f - g), mu)))
    led.check("modulus", (b := stacked_le(groups)) == 0, f"{b} failures")
    led.note("12 submodular capacities x 500 pairs")
    led.finish(capsys)


# --- 5. capacity algebra ----------------------------------------------------------------------


def test_criterion_5_capacity_algebra(capsys):
    led = Ledger(5, "capacity algebra")
    caps = corpus(max_n=6)
    exact, near = 0, 0
    for mu in caps:
        back = dual(dual(mu)).table
        ulp = 2 * np.spacing(np.abs(mu.table).max())
        if np.array_equal(back, mu.table):
            exact += 1
        elif np.abs(back - mu.table).max() <= ulp:
            near += 1
        else:
            led.check("involution", False, f"N={mu.ground_size} {mu.kind}")
        d = dual(mu)
        for m in ("local", "exhaustive"):
            led.check("swap", is_submodular(mu, mode=m).holds == is_supermodular(d, mode=m).holds)
            led.check("swap", is_supermodular(mu, mode=m).holds == is_submodular(d, mode=m).holds)
        for fn in (is_submodular, is_supermodular):
            for sf in (mu, d):
                led.check("local=exhaustive", fn(sf).holds == fn(sf, mode="exhaustive").holds, fn.__name__)
    # dyadic tables: the subtraction is exact, so the involution is bit for bit
    rng = np.random.default_rng(505)
    for n in range(1, 7):
        mu = random_capacity(rng, n, ValueKind.vector(2))
        dy = Capacity(n, mu.kind, np.round(mu.table * 1024) / 1024)
        led.check("dyadic involution", np.array_equal(dual(dual(dy)).table, dy.table), f"N={n}")
    for n in range(1, 7):
        for kind in (ValueKind.scalar(), ValueKind.vector(3), ValueKind.sym(2)):
            add = random_capacity(rng, n, kind, "additive")
            led.check("additive", is_submodular(add).holds and is_supermodular(add).holds, f"N={n} {kind}")
        w = additive_measure(rng.exponential(1.0, n))
        led.check("additive", is_submodular(w, mode="exhaustive").holds and is_supermodular(w, mode="exhaustive").holds)
    led.note(f"{len(caps)} corpus capacities, dual twice bit-exact {exact}, within 2 ulp {near}")
    led.finish(capsys)


# --- 6. representation roundtrip ---------------------------------------------------------------


def test_criterion_6_representation_roundtrip(capsys):
    led = Ledger(6, "representation roundtrip")
    caps = corpus(max_n=6)
    for k, mu in enumerate(caps):
        I = cb_operator(mu)
        led.check("extract", np.array_equal(extract_capacity(I).table, mu.table), f"corpus {k}")
        led.check("representation", verify_representation(I, mu, samples=500, seed=k, tol=TOL).holds, f"corpus {k}")
    for n in range(1, 7):
        lo = extract_capacity(builtin_operator("min", ground_size=n))
        hi = extract_capacity(builtin_operator("max", ground_size=n))
        ones = np.ones(1 << n)
        ones[0] = 0.0
        led.check("min", np.array_equal(lo.table, unanimity(n, (1 << n) - 1).table), f"N={n}")
        led.check("max", np.array_equal(hi.table, ones), f"N={n}")
    led.note(f"{len(caps)} corpus capacities x 500 samples; min/max for N<=6")
    led.finish(capsys)


# --- 7. variation and decomposition -------------------------------------------------------------


def comparable_pairs_check(I, G, chunk=256):
    """Max relative deviation of grid variation from I(g) - I(f), plus reachability errors."""
    values = evaluate_grid(I, G)
    flat = values.reshape(G.size, -1)
    coords = np.indices(G.shape).reshape(G.ground_size, -1).T
    worst, reach_bad, pairs = 0.0, 0, 0
    for start in range(0, G.size, chunk):
        src = np.arange(start, min(start + chunk, G.size))
        sup = variation_from(values, G, src).reshape(src.size, G.size, -1)
        above = np.all(coords[None, :, :] >= coords[src, None, :], axis=-1)
        reach_bad += int(np.sum(np.isneginf(sup[..., 0]) == above))
        diff = flat[None, :, :] - flat[src, None, :]
        scale = 1.0 + np.maximum(np.abs(flat)[None, :, :], np.abs(flat)[src, None, :]).max(axis=-1)
        dev = np.where(above, np.abs(np.where(above[..., None], sup, 0.0) - diff).max(axis=-1) / scale, 0.0)
        worst = max(worst, float(dev.max()))
        pairs += int(above.sum())
    return worst, reach_bad, pairs


def test_criterion_7_variation_and_decomposition(capsys):
    led = Ledger(7, "variation and decomposition")
    rng = np.random.default_rng(707)
    # Jordan identities, every subset
    jordan = 0
    for n in range(1, 6):
        for kind in (ValueKind.scalar(), ValueKind.vector(3)):
            for _ in range(40):
                sf = random_set_function(rng, n, kind)
                plus, minus = jordan_decomposition(sf)
                tv = variation_table(sf).table
                scale = 1.0 + np.abs(tv).max()
                led.check("mu = mu+ - mu-", np.abs(plus.table - minus.table - sf.table).max() <= TOL * scale)
                led.check("|mu| = mu+ + mu-", np.abs(plus.table + minus.table - tv).max() <= TOL * scale)
                jordan += 1
    # telescoping of grid variation for monotone operators
    worst_all, total_pairs = 0.0, 0
    grids = [(2, 69), (3, 16), (4, 7), (5, 4), (6, 3)]
    for k, (n, m) in enumerate(grids):
        G = GridLattice(n, m, -1.0, 1.0)
        kind = (ValueKind.scalar(), ValueKind.vector(2))[k % 2]
        I = cb_operator(random_capacity(rng, n, kind))
        worst, reach_bad, pairs = comparable_pairs_check(I, G)
        led.check("telescoping", worst <= TOL, f"N={n} m={m} worst {worst:.2e}")
        led.check("reachability", reach_bad == 0, f"N={n} m={m}")
        worst_all, total_pairs = max(worst_all, worst), total_pairs + pairs
    # decomposition of non-monotone operators
    ops = [
        cb_operator(random_set_function(rng, 2, ValueKind.scalar())),
        cb_operator(random_set_function(rng, 3, ValueKind.vector(2))),
        builtin_operator("weighted_sum", {"w": [1.5, -0.5, -1.0]}),
        builtin_operator("weighted_sum", {"w": [[1.0, -2.0], [-0.5, 0.25]]}),
    ]
    for I in ops:
        G = GridLattice(I.ground_size, 4, -1.0, 1.0)
        for mode in ("total", "jordan"):
            dec = decompose(I, G, mode)
            reps = check_decomposition(I, dec.i1, dec.i2, G, tol=TOL, decomposition=dec)
            for r in reps:
                if r.name in ("identity", "monotone[1]", "monotone[2]"):
                    led.check(r.name, r.holds, f"{I.name} {mode}")
    # mixed-sign linear functional: positive and negative weight parts
    w = np.array([2.0, -1.0, 0.5, -0.25])
    I = builtin_operator("weighted_sum", {"w": w.tolist()})
    G = GridLattice(4, 4, -1.0, 1.0)
    nodes = G.nodes()
    wp, wm = np.maximum(w, 0.0), np.maximum(-w, 0.0)
    for mode, (w1, w2) in (("jordan", (wp, wm)), ("total", (np.abs(w), 2 * wm))):
        dec = decompose(I, G, mode)
        got1 = np.array([dec.i1.evaluate_array(v) for v in nodes])
        got2 = np.array([dec.i2.evaluate_array(v) for v in nodes])
        led.check("linear split", np.allclose(got1, nodes @ w1, rtol=0, atol=1e-12), mode)
        led.check("linear split", np.allclose(got2, nodes @ w2, rtol=0, atol=1e-12), mode)
    led.note(f"{jordan} Jordan checks; {total_pairs} comparable grid pairs, worst {worst_all:.1e}")
    led.finish(capsys)


# --- 8. eigensolver ------------------------------------------------------------------------


def test_criterion_8_eigensolver(capsys):
    led = Ledger(8, "eigensolver")
    rng = np.random.default_rng(808)
    worst = 0.0
    for n in range(1, 9):
        A = rng.normal(size=(300, n, n))
        A = 0.5 * (A + np.swapaxes(A, -1, -2))
        A[:50] *= 10.0 ** rng.integers(-6, 7, (50, 1, 1))
        A[50:60] = np.round(A[50:60])  # repeated eigenvalues are common here
        w, Q = jacobi_eigh(A)
        R = np.einsum("bik,bk,bjk->bij", Q, w, Q)
        fro = np.linalg.norm(A, axis=(1, 2))
        rel = np.linalg.norm(R - A, axis=(1, 2)) / np.where(fro > 0, fro, 1.0)
        worst = max(worst, float(rel.max()))
        led.check("reconstruction", bool(np.all(rel <= 1e-9)), f"n={n} worst {rel.max():.2e}")
        led.check("sorted", bool(np.all(np.diff(w, axis=-1) >= 0)), f"n={n}")
    disagree = 0
    for _ in range(5000):
        u = rng.normal(size=(2, 2))
        u = u + u.T
        v = u + rng.normal(0.0, 1.0, (2, 2)) if _ % 2 else u + np.outer(*(2 * [rng.normal(size=2)]))
        v = 0.5 * (v + v.T)
        d = v - u
        ref = eig2_min(d[0, 0], d[0, 1], d[1, 1]) >= -TOL
        if leq(OrderedValue.sym(u), OrderedValue.sym(v), TOL) != ref:
            disagree += 1
    led.check("loewner", disagree == 0, f"{disagree} disagreements")
    led.note(f"n<=8 worst relative reconstruction {worst:.1e}; 5000 Loewner comparisons")
    led.finish(capsys)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
