"""Command-line entry point: ``hypertrace <command> ...``.

Exit codes: 0 success, 1 a verification reported FAIL, 2 bad input (with
location for JSON errors), 3 unsupported topology, 4 resource budget hit.
Data goes to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .enumerate import enumerate_hypertrees, enumerate_pm_hypertrees, enumerate_unicyclic
from .errors import HypothesisError, InputError, ResourceLimitError, UnsupportedTopologyError
from .estrada import compare_ee, estrada_truncated
from .hypergraph import Hypergraph
from .oracle import default_budget, trace_bruteforce
from .traces import trace, trace_terms
from .verify import (
    FAIL,
    LemmaInstance,
    check_extremal_theorem,
    check_perturbation,
    check_structure_lemma,
    load_instances,
    problem_sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_TOPOLOGY, EXIT_BUDGET = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    d: list[int] = field(default_factory=list)
    depth: int | None = None
    fmt: str = "json"
    budget: int | None = None
    jobs: int = 1
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.fmt not in ("json", "csv"):
            raise InputError(f"unknown output format {self.fmt!r}")
        if self.budget is not None and self.budget < 1:
            raise InputError("budget must be positive")
        if self.jobs < 1:
            raise InputError("jobs must be positive")


def q(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def read_hypergraph(path: str) -> Hypergraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return Hypergraph.from_dict(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _emit(payload, cfg: RunConfig, rows: list[dict] | None = None) -> str:
    if cfg.fmt == "csv" and rows is not None:
        return _csv(rows)
    return json.dumps(payload, sort_keys=False) + "\n"


def _d_values(cfg: RunConfig) -> list[int]:
    if not cfg.d:
        raise InputError("give --d (one or more values)")
    return cfg.d


def _cmd_trace(cfg: RunConfig) -> tuple[str, int]:
    h = read_hypergraph(cfg.inputs[0])
    rows = []
    for d in _d_values(cfg):
        row = {"d": d, "trace": q(trace(h, d))}
        if cfg.options.get("terms"):
            row["terms"] = [{"edges": list(s.edge_subset), "tr_d": q(v)} for s, v in trace_terms(h, d)]
        rows.append(row)
    if len(rows) == 1:
        payload = {k: v for k, v in rows[0].items() if k != "d"}
    else:
        payload = {"traces": rows}
    flat = [{"d": r["d"], "trace": r["trace"]} for r in rows]
    return _emit(payload, cfg, flat), EXIT_OK


def _cmd_oracle(cfg: RunConfig) -> tuple[str, int]:
    h = read_hypergraph(cfg.inputs[0])
    budget = cfg.budget or default_budget()
    rows = [{"d": d, "trace": q(trace_bruteforce(h, d, budget, cfg.jobs))} for d in _d_values(cfg)]
    payload = {"trace": rows[0]["trace"]} if len(rows) == 1 else {"traces": rows}
    return _emit(payload, cfg, rows), EXIT_OK


def _cmd_estrada(cfg: RunConfig) -> tuple[str, int]:
    h = read_hypergraph(cfg.inputs[0])
    v = estrada_truncated(h, cfg.depth, cfg.jobs)
    out = v.to_dict()
    return _emit(out, cfg, [out]), EXIT_OK


def _cmd_compare(cfg: RunConfig) -> tuple[str, int]:
    a, b = (read_hypergraph(p) for p in cfg.inputs[:2])
    verdict, va, vb = compare_ee(a, b, cfg.depth, cfg.jobs)
    payload = {"verdict": verdict, "a": va.to_dict(), "b": vb.to_dict()}
    row = {"verdict": verdict, "a_lower": va.lower_decimal(), "a_upper": va.upper_decimal(),
           "b_lower": vb.lower_decimal(), "b_upper": vb.upper_decimal(), "D": va.depth}
    return _emit(payload, cfg, [row]), EXIT_OK


def _cmd_enumerate(cfg: RunConfig) -> tuple[str, int]:
    o = cfg.options
    family, m = o["family"], o["m"]
    if family == "hypertrees":
        members = enumerate_hypertrees(m, _need(o, "k"))
    elif family == "pm_hypertrees":
        members = enumerate_pm_hypertrees(m, _need(o, "k"))
    else:
        members = enumerate_unicyclic(m, _need(o, "z"), _need(o, "g"))
    items = [h.to_dict() for h in members]
    rows = [{"index": i, "n": h["n"], "edges": json.dumps(h["edges"])} for i, h in enumerate(items)]
    return _emit({"family": family, "count": len(items), "members": items}, cfg, rows), EXIT_OK


def _need(o: dict, key: str) -> int:
    if o.get(key) is None:
        raise InputError(f"--{key} is required here")
    return o[key]


def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    o = cfg.options
    if o.get("lemma"):
        insts = [i for i in load_instances(o["lemma"]) if o.get("m") is None or i.m == o["m"]]
        if o.get("instance"):
            insts = [LemmaInstance.from_dict(json.loads(Path(o["instance"]).read_text()))]
        if not insts:
            raise InputError(f"no bundled instances for lemma {o['lemma']} with m={o.get('m')}")
        reports = [check_perturbation(i, cfg.d or None) for i in insts]
        status = FAIL if any(r["status"] == FAIL for r in reports) else "PASS"
        payload = {"lemma": o["lemma"], "status": status, "reports": reports}
    elif o.get("theorem"):
        which = {"5.3": "pm_hypertrees", "6.6": "unicyclic_girth3"}.get(o["theorem"])
        if which is None:
            raise InputError("--theorem must be 5.3 or 6.6")
        size = _need(o, "k") if which == "pm_hypertrees" else _need(o, "z")
        payload = check_extremal_theorem(which, _need(o, "m"), size, cfg.depth, cfg.jobs)
        status = payload["status"]
    elif o.get("structure"):
        payload = check_structure_lemma(o["structure"])
        status = payload["status"]
    elif o.get("problem"):
        if o["problem"] != "6.7":
            raise InputError("--problem must be 6.7")
        payload = problem_sweep(_need(o, "m"), _need(o, "z"), cfg.depth, cfg.jobs)
        status = "REPORT"
    else:
        raise InputError("verify needs one of --lemma, --theorem, --structure, --problem")
    return _emit(payload, cfg), EXIT_FAIL if status == FAIL else EXIT_OK


COMMANDS = {
    "trace": _cmd_trace,
    "oracle": _cmd_oracle,
    "estrada": _cmd_estrada,
    "compare": _cmd_compare,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
}


def dispatch(cfg: RunConfig) -> tuple[str, int]:
    """Run one command; returns (stdout text, exit status).  Library errors propagate."""
    return COMMANDS[cfg.command](cfg)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypertrace", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, d=False, depth=False, budget=False):
        sp.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        if d:
            sp.add_argument("--d", type=int, nargs="+", default=[], help="trace orders")
        if depth:
            sp.add_argument("--depth", "-D", type=int, help="truncation depth D")
        if budget:
            sp.add_argument("--budget", type=int, help="max candidate multisets (default $HYPERTRACE_BUDGET or 10^7)")

    sp = sub.add_parser("trace", help="closed-form Tr_d of a hypertree or linear unicyclic hypergraph")
    sp.add_argument("input")
    sp.add_argument("--terms", action="store_true", help="list the non-zero tr_d contributions")
    common(sp, d=True)

    sp = sub.add_parser("oracle", help="brute-force Tr_d of any hypergraph")
    sp.add_argument("input")
    common(sp, d=True, budget=True)

    sp = sub.add_parser("estrada", help="certified Estrada index interval")
    sp.add_argument("input")
    common(sp, depth=True)

    sp = sub.add_parser("compare", help="certified comparison of two Estrada indices")
    sp.add_argument("a")
    sp.add_argument("b")
    common(sp, depth=True)

    sp = sub.add_parser("enumerate", help="list a family up to isomorphism")
    sp.add_argument("family", choices=["hypertrees", "pm_hypertrees", "unicyclic"])
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, help="edges (hypertrees) or matching size (pm_hypertrees)")
    sp.add_argument("--z", type=int, help="edges (unicyclic)")
    sp.add_argument("--g", type=int, help="girth (unicyclic)")
    common(sp)

    sp = sub.add_parser("verify", help="lemma, theorem and structure checks")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--lemma", help="3.3, 4.4, 5.1, 6.2(1), 6.2(2), 6.3, 6.4 or 6.5")
    g.add_argument("--theorem", help="5.3 or 6.6")
    g.add_argument("--structure", choices=["tree_root", "cored_multiplicity", "pm_decomposition"])
    g.add_argument("--problem", help="6.7 (exploratory sweep)")
    sp.add_argument("--instance", help="lemma instance JSON file instead of the bundled library")
    sp.add_argument("--m", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--z", type=int)
    common(sp, d=True, depth=True)
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    inputs = [x for x in (getattr(ns, "input", None), getattr(ns, "a", None), getattr(ns, "b", None)) if x]
    skip = {"command", "input", "a", "b", "d", "depth", "fmt", "budget", "jobs"}
    options = {k: v for k, v in vars(ns).items() if k not in skip}
    return RunConfig(
        ns.command, inputs, getattr(ns, "d", []), getattr(ns, "depth", None), ns.fmt,
        getattr(ns, "budget", None), ns.jobs, options,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        out, status = dispatch(_config(ns))
    except UnsupportedTopologyError as exc:
        print(f"hypertrace: {exc}", file=sys.stderr)
        return EXIT_TOPOLOGY
    except ResourceLimitError as exc:
        print(f"hypertrace: {exc} (raise --budget or HYPERTRACE_BUDGET)", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, HypothesisError, OSError) as exc:
        print(f"hypertrace: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
