"""Command-line front end.

Exit codes: 0 success or property holds, 1 property refuted (the
counterexample is printed), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .capacity import (
    capacity_violations,
    distort,
    dual,
    inner_lower_variation,
    inner_upper_variation,
    is_submodular,
    is_supermodular,
    replay_modularity,
    variation,
)
from .errors import ChoquetError, NotMonotone
from .integral import choquet_quadrature, choquet_sorted, quadrature_error_bound
from .operators import (
    GridLattice,
    builtin_operator,
    cb_operator,
    check_axioms,
    check_decomposition,
    decompose,
    extract_capacity,
    extract_set_function,
    replay_axiom,
    replay_representation,
    urysohn_sequence,
    verify_representation,
)
from .ordered_values import DEFAULT_TOL
from .reports import jsonable

COMMANDS = (
    "integrate",
    "check-capacity",
    "dual",
    "distort",
    "variation",
    "check-operator",
    "extract",
    "verify-representation",
    "decompose",
)


class UsageError(Exception):
    """Bad flag value; ``flag`` names the offender."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


@dataclass
class CliConfig:
    command: str
    capacity: str | None = None
    function: str | None = None
    subset: list[int] | None = None
    tol: float = DEFAULT_TOL
    steps: int = 10_000
    samples: int = 1000
    seed: int = 0
    format: str = "text"
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tol < 0:
            raise UsageError("--tol", "must be >= 0")
        if self.steps < 1:
            raise UsageError("--steps", "must be >= 1")
        if self.samples < 1:
            raise UsageError("--samples", "must be >= 1")


# --------------------------------------------------------------------------
# Output helpers


def _num(x) -> str:
    return io.format_number(x, 6)


def text_value(v) -> str:
    """Six significant digits; vectors and matrices in bracket notation."""
    data = jsonable(v)

    def enc(o):
        if isinstance(o, list):
            return "[" + ", ".join(enc(w) for w in o) + "]"
        return _num(o) if isinstance(o, (int, float)) and not isinstance(o, bool) else str(o)

    return enc(data)


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str):
        self.lines.append(text)

    def put(self, key, value):
        self.data[key] = value

    def flush(self):
        if self.fmt == "json":
            self.stream.write(io.dumps(self.data))
        else:
            for ln in self.lines:
                self.stream.write(ln + "\n")
        self.stream.flush()


def _report_lines(out: Output, reports):
    for r in reports:
        out.line(r.summary())
        if r.refuted:
            for k, v in r.counterexample.get("outputs", {}).items():
                out.line(f"  {k} = {text_value(v)}")


def _capacity_text(out: Output, sf):
    n = sf.ground_size
    out.line(f"ground_size {n}, value kind {sf.kind}")
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if (mask >> i) & 1]
        out.line("{" + ",".join(map(str, idx)) + "}: " + text_value(sf.value(mask)))


def _emit_capacity(out: Output, sf, cfg: CliConfig):
    path = cfg.extra.get("output")
    if path:
        io.save_set_function(sf, path)
    if out.fmt == "json":
        out.data = io.set_function_to_json(sf)
    else:
        _capacity_text(out, sf)
        if path:
            out.line(f"written to {path}")


# --------------------------------------------------------------------------
# Loading


def _need(value, flag: str):
    if value is None:
        raise UsageError(flag, "is required for this command")
    return value


def _load_capacity(cfg: CliConfig, flag: str = "--capacity"):
    path = _need(cfg.capacity, flag)
    try:
        return io.load_set_function(path)
    except ChoquetError as exc:
        raise UsageError(flag, str(exc)) from exc


def _load_function(cfg: CliConfig):
    path = _need(cfg.function, "--function")
    try:
        return io.load_function(path)
    except ChoquetError as exc:
        raise UsageError("--function", str(exc)) from exc


def _subset(cfg: CliConfig, n: int):
    if cfg.subset is None:
        return None
    bad = [i for i in cfg.subset if not 0 <= i < n]
    if bad:
        raise UsageError("--subset", f"indices {bad} outside 0..{n - 1}")
    if not cfg.subset:
        raise UsageError("--subset", "integration domain is empty")
    return sorted(set(cfg.subset))


def _parse_subset(text: str | None):
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError("--subset", f"expected comma-separated indices, got {text!r}") from exc


def _params(cfg: CliConfig) -> dict:
    raw = cfg.extra.get("params")
    if raw is None:
        return {}
    try:
        if raw.startswith("@"):
            return json.loads(Path(raw[1:]).read_text())
        return json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError("--params", str(exc)) from exc


def _operator(cfg: CliConfig, with_capacity_fallback: bool = True):
    """Builtin operator from --operator/--params, or cb_operator of --capacity."""
    name = cfg.extra.get("operator")
    if name is None or name == "cb":
        if not with_capacity_fallback:
            raise UsageError("--operator", "is required for this command")
        return cb_operator(_load_capacity(cfg), name="cb")
    n = cfg.extra.get("ground_size")
    if n is None and cfg.capacity is not None:
        n = _load_capacity(cfg).ground_size
    try:
        return builtin_operator(name, _params(cfg), n)
    except ChoquetError as exc:
        raise UsageError("--operator", str(exc)) from exc
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError("--params", f"bad parameters for {name}: {exc}") from exc


def _replay_items(path: str):
    try:
        data = io.load_json(path)
    except ChoquetError as exc:
        raise UsageError("--replay", str(exc)) from exc
    if isinstance(data, dict) and "reports" in data:
        data = data["reports"]
    if isinstance(data, dict):
        data = [data]
    items = [r for r in data if r.get("counterexample")]
    if not items:
        raise UsageError("--replay", "file holds no counterexample")
    return items


def _replay(out: Output, items, fn) -> int:
    reproduced = []
    for r in items:
        try:
            hit = fn(r["property"], r["counterexample"]["inputs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError("--replay", f"malformed counterexample: {exc}") from exc
        reproduced.append({"property": r["property"], "reproduced": hit, "inputs": r["counterexample"]["inputs"]})
        out.line(f"{r['property']}: {'reproduced' if hit else 'not reproduced'} on {json.dumps(r['counterexample']['inputs'])}")
    out.put("replay", reproduced)
    return 1 if any(x["reproduced"] for x in reproduced) else 0


# --------------------------------------------------------------------------
# Commands


def cmd_integrate(cfg: CliConfig, out: Output) -> int:
    mu = _load_capacity(cfg)
    f = _load_function(cfg)
    if f.ground_size != mu.ground_size:
        raise UsageError("--function", f"has {f.ground_size} points, capacity has {mu.ground_size}")
    subset = _subset(cfg, mu.ground_size)
    method = cfg.extra.get("method", "sorted")
    out.put("method", method)
    out.put("subset", subset if subset is not None else list(range(mu.ground_size)))
    if method == "sorted":
        val = choquet_sorted(f, mu, subset)
        out.put("value", val)
        out.line("integral: " + text_value(val))
        return 0
    val = choquet_quadrature(f, mu, subset, cfg.steps)
    bound = quadrature_error_bound(f, mu, subset, cfg.steps)
    out.put("value", val)
    out.put("steps", cfg.steps)
    out.put("bound", bound)
    out.line("integral: " + text_value(val))
    out.line(f"error bound: {_num(bound)} ({cfg.steps} steps)")
    return 0


def cmd_check_capacity(cfg: CliConfig, out: Output) -> int:
    path = cfg.extra.get("file") or cfg.capacity
    if path is None:
        raise UsageError("--capacity", "give a capacity file")
    cfg.capacity = path
    sf = _load_capacity(cfg)
    if cfg.extra.get("replay"):
        items = _replay_items(cfg.extra["replay"])
        return _replay(out, items, lambda name, inputs: replay_modularity(sf, name, inputs, cfg.tol))
    bad = capacity_violations(sf, cfg.tol)
    out.put("capacity", not bad)
    out.put("violations", [v.to_json(sf.ground_size) for v in bad])
    if bad:
        out.line(f"not a capacity: {len(bad)} violation(s)")
        for v in bad[:20]:
            out.line("  " + v.describe(sf.ground_size))
        return 1
    out.line("capacity: ok")
    mode = cfg.extra.get("mode", "local")
    reports = [is_submodular(sf, cfg.tol, mode), is_supermodular(sf, cfg.tol, mode)]
    out.put("reports", [r.to_json() for r in reports])
    _report_lines(out, reports)
    return 0


def cmd_dual(cfg: CliConfig, out: Output) -> int:
    _emit_capacity(out, dual(_load_capacity(cfg)), cfg)
    return 0


def cmd_distort(cfg: CliConfig, out: Output) -> int:
    mu = _load_capacity(cfg)
    dist_name = _need(cfg.extra.get("distortion"), "--distortion")
    try:
        res = distort(mu, dist_name, strict=cfg.extra.get("strict", False), tol=cfg.tol)
    except (ValueError, ChoquetError) as exc:
        raise UsageError("--distortion", str(exc)) from exc
    if "raw-values" in res.flags:
        print("warning: mu(X) has a zero entry; that entry is distorted without normalisation", file=sys.stderr)
    _emit_capacity(out, res, cfg)
    return 0


def cmd_variation(cfg: CliConfig, out: Output) -> int:
    sf = _load_capacity(cfg)
    subset = _subset(cfg, sf.ground_size)
    subset = list(range(sf.ground_size)) if subset is None else subset
    vals = {
        "variation": variation(sf, subset),
        "upper": inner_upper_variation(sf, subset),
        "lower": inner_lower_variation(sf, subset),
    }
    out.put("subset", subset)
    for k, v in vals.items():
        out.put(k, v)
        out.line(f"{k}: {text_value(v)}")
    return 0


def cmd_check_operator(cfg: CliConfig, out: Output) -> int:
    op = _operator(cfg)
    out.put("operator", op.name)
    if cfg.extra.get("replay"):
        items = _replay_items(cfg.extra["replay"])
        return _replay(out, items, lambda name, inputs: replay_axiom(op, name, inputs, cfg.tol))
    reports = list(check_axioms(op, cfg.samples, cfg.seed, cfg.tol).values())
    out.put("reports", [r.to_json() for r in reports])
    _report_lines(out, reports)
    return 1 if any(r.refuted for r in reports) else 0


def cmd_extract(cfg: CliConfig, out: Output) -> int:
    op = _operator(cfg)
    try:
        mu = extract_capacity(op, cfg.tol)
    except NotMonotone as exc:
        n = op.ground_size
        out.put("capacity", False)
        out.put("values", io.set_function_to_json(extract_set_function(op))["values"])
        out.put("violations", [v.to_json(n) for v in exc.violations])
        out.line(f"{op.name} does not yield a capacity")
        for v in exc.violations[:20]:
            out.line("  " + v.describe(n))
        return 1
    if cfg.extra.get("urysohn"):
        n = op.ground_size
        seqs = [urysohn_sequence(op, [i for i in range(n) if (m >> i) & 1]) for m in range(1, 1 << n)]
        stab = {",".join(map(str, s["subset"])): s["stabilizes_at"] for s in seqs}
        if out.fmt == "text":
            for k, v in stab.items():
                out.line(f"urysohn {{{k}}}: indicator reached at n = {v}")
    _emit_capacity(out, mu, cfg)
    return 0


def cmd_verify_representation(cfg: CliConfig, out: Output) -> int:
    mu = _load_capacity(cfg)
    op = _operator(cfg)
    if op.ground_size != mu.ground_size or op.kind != mu.kind:
        raise UsageError("--operator", f"{op.name} acts on {op.ground_size} points with {op.kind} values; "
                         f"capacity has {mu.ground_size} points with {mu.kind} values")
    out.put("operator", op.name)
    if cfg.extra.get("replay"):
        items = _replay_items(cfg.extra["replay"])
        return _replay(out, items, lambda name, inputs: replay_representation(op, mu, inputs, cfg.tol))
    rep = verify_representation(op, mu, cfg.samples, cfg.seed, cfg.tol)
    out.put("reports", [rep.to_json()])
    _report_lines(out, [rep])
    return 1 if rep.refuted else 0


def _grid(cfg: CliConfig, n: int) -> GridLattice:
    levels = cfg.extra.get("grid_levels", 4)
    bounds = cfg.extra.get("grid_bounds", "-1,1")
    try:
        lo, hi = (float(t) for t in bounds.split(","))
    except ValueError as exc:
        raise UsageError("--grid-bounds", f"expected lo,hi, got {bounds!r}") from exc
    try:
        return GridLattice(n, int(levels), lo, hi)
    except ValueError as exc:
        raise UsageError("--grid-levels", str(exc)) from exc


def cmd_decompose(cfg: CliConfig, out: Output) -> int:
    op = _operator(cfg)
    G = _grid(cfg, op.ground_size)
    try:
        dec = decompose(op, G, cfg.extra.get("mode", "total"))
    except ChoquetError as exc:
        raise UsageError("--grid-bounds" if "grid" in str(exc) else "--operator", str(exc)) from exc
    reports = check_decomposition(op, dec.i1, dec.i2, G, cfg.tol, decomposition=dec)
    mu1, mu2 = extract_set_function(dec.i1), extract_set_function(dec.i2)
    out.put("operator", op.name)
    out.put("grid", {"levels": G.levels, "lo": G.lo, "hi": G.hi, "nodes": G.size})
    out.put("mode", dec.mode)
    out.put("reports", [r.to_json() for r in reports])
    out.put("mu1", io.set_function_to_json(mu1)["values"])
    out.put("mu2", io.set_function_to_json(mu2)["values"])
    out.line(f"{op.name} on {G.size} grid nodes, levels {G.levels} over [{_num(G.lo)}, {_num(G.hi)}], mode {dec.mode}")
    _report_lines(out, reports)
    n = op.ground_size
    for mask in range(1, 1 << n):
        idx = ",".join(str(i) for i in range(n) if (mask >> i) & 1)
        out.line(f"{{{idx}}}: mu1 = {text_value(mu1.value(mask))}, mu2 = {text_value(mu2.value(mask))}")
    return 1 if any(r.refuted for r in reports) else 0


HANDLERS = {
    "integrate": cmd_integrate,
    "check-capacity": cmd_check_capacity,
    "dual": cmd_dual,
    "distort": cmd_distort,
    "variation": cmd_variation,
    "check-operator": cmd_check_operator,
    "extract": cmd_extract,
    "verify-representation": cmd_verify_representation,
    "decompose": cmd_decompose,
}


# --------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--capacity", help="capacity (set function) JSON file")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=1000)

    oper = argparse.ArgumentParser(add_help=False)
    oper.add_argument("--operator", help="builtin name (min, max, weighted_sum, tphi) or cb")
    oper.add_argument("--params", help="operator parameters as JSON, or @file")
    oper.add_argument("--ground-size", type=int)

    cap_out = argparse.ArgumentParser(add_help=False)
    cap_out.add_argument("--output", "-o", help="also write the capacity file here")

    parser = argparse.ArgumentParser(prog="choquet-bochner", description="Choquet-Bochner integrals on finite sets")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("integrate", parents=[common], help="integrate a function")
    p.add_argument("--function", help="function JSON file")
    p.add_argument("--subset", help="comma-separated point indices (default: all)")
    p.add_argument("--method", choices=("sorted", "quadrature"), default="sorted")
    p.add_argument("--steps", type=int, default=10_000)

    p = sub.add_parser("check-capacity", parents=[common], help="validate a capacity, report modularity")
    p.add_argument("file", nargs="?")
    p.add_argument("--mode", choices=("local", "exhaustive"), default="local")
    p.add_argument("--replay", help="report JSON whose counterexample is re-evaluated")

    sub.add_parser("dual", parents=[common, cap_out], help="dual capacity")

    p = sub.add_parser("distort", parents=[common, cap_out], help="power distortion")
    p.add_argument("--distortion", help="square, sqrt or power:p")
    p.add_argument("--strict", action="store_true", help="fail when mu(X) has a zero entry")

    p = sub.add_parser("variation", parents=[common], help="total, upper and lower variation")
    p.add_argument("--subset")

    p = sub.add_parser("check-operator", parents=[common, oper], help="randomised axiom checks")
    p.add_argument("--replay")

    p = sub.add_parser("extract", parents=[common, oper, cap_out], help="capacity from an operator")
    p.add_argument("--urysohn", action="store_true", help="also show Urysohn stabilisation")

    p = sub.add_parser("verify-representation", parents=[common, oper], help="operator vs integral")
    p.add_argument("--replay")

    p = sub.add_parser("decompose", parents=[common, oper], help="split into monotone parts on a grid")
    p.add_argument("--grid-levels", type=int, default=4)
    p.add_argument("--grid-bounds", default="-1,1")
    p.add_argument("--mode", choices=("total", "jordan"), default="total")
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    extra = {}
    for key in ("method", "file", "mode", "replay", "output", "distortion", "strict", "operator", "params",
                "ground_size", "urysohn", "grid_levels", "grid_bounds"):
        if getattr(ns, key, None) is not None:
            extra[key] = getattr(ns, key)
    return CliConfig(
        command=ns.command,
        capacity=ns.capacity,
        function=getattr(ns, "function", None),
        subset=_parse_subset(getattr(ns, "subset", None)),
        tol=ns.tol,
        steps=getattr(ns, "steps", 10_000),
        samples=ns.samples,
        seed=ns.seed,
        format=ns.format,
        extra=extra,
    )


def run(argv=None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 2
    out = Output(ns.format, stdout)
    try:
        cfg = config_from_args(ns)
        code = HANDLERS[cfg.command](cfg, out)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (ChoquetError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
