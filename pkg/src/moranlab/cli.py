"""Command-line orchestration: generate, estimate, exact, recurrence, audit, theorem-check.

Every command emits a JSON record containing the full spec (seed included),
so any emitted result can be reproduced by re-running its spec. Exit codes:
0 success, 2 parameter error, 3 structure/conditioning error, 4 capacity
error. MORANLAB_SEED provides the default seed; a flat key=value config file
sits between flags and defaults (flags > config > defaults).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import walks
from .audit import AuditConfig, audit
from .engine import (ProcessParams, Variant, derive_run_seed, estimate_fixation,
                     DEFAULT_MAX_ACTIVE_STEPS)
from .errors import ConditioningError, MoranLabError, ParameterError
from .exact import exact_fixation_all, neutral_bd_fixation, neutral_db_fixation
from .graph import (Graph, classify, derive_thresholds, generate_gnp,
                    load_edge_list, save_edge_list)

DEFAULT_EPS = 0.3
DEFAULT_RETRIES = 10_000
DEFAULT_M = 200


def _read_config(path: str | None) -> dict:
    if not path:
        return {}
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParameterError(f"config line without '=': {line!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


class _Resolver:
    """flags > config file > defaults (MORANLAB_SEED feeds the seed default)."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = _read_config(getattr(args, "config", None))

    def get(self, name: str, default, cast):
        flag = getattr(self.args, name, None)
        if flag is not None:
            return flag
        if name in self.config:
            return cast(self.config[name])
        return default


def _default_seed() -> int:
    return int(os.environ.get("MORANLAB_SEED", "0"))


def _variant(code: str) -> Variant:
    if code == "bd":
        return Variant.BIRTH_DEATH
    if code == "db":
        return Variant.DEATH_BIRTH
    raise ParameterError(f"unknown variant {code!r} (expected bd or db)")


def _emit(payload: dict, out: str | None, fmt: str = "json") -> None:
    if fmt == "json":
        text = json.dumps(payload, indent=2)
    else:
        text = payload["csv"]
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _graph_summary(graph: Graph, eps: float | None, p: float | None) -> dict:
    out = {"n": graph.n, "m": graph.edge_count, "max_degree": graph.max_degree()}
    if p is not None and graph.n * p > 1.0:
        params = derive_thresholds(graph.n, p, eps_override=eps)
        classes = classify(graph, params)
        out["s0_size"] = len(classes.s0)
        out["s1_size"] = len(classes.s1)
        out["thresholds"] = params.to_json_dict()
    return out


def _resolve_graph(res: _Resolver) -> tuple[Graph, float | None, dict]:
    """One graph source: either --graph FILE or generated from --n/--p/--seed."""
    path = res.get("graph", None, str)
    n = res.get("n", None, int)
    if path is not None and n is not None:
        raise ParameterError("give either --graph or --n/--p, not both")
    if path is not None:
        return load_edge_list(path), res.get("p", None, float), {"graph_file": path}
    if n is None:
        raise ParameterError("a graph source is required (--graph or --n with --p)")
    p = res.get("p", None, float)
    if p is None:
        raise ParameterError("--p is required when generating a graph")
    seed = res.get("seed", _default_seed(), int)
    g = generate_gnp(int(n), float(p), int(seed))
    return g, float(p), {"n": int(n), "p": float(p), "seed": int(seed)}


def _pick_v0(graph: Graph, rule: str, explicit: int | None, eps: float,
             p: float | None, rng) -> int:
    if rule == "explicit":
        if explicit is None:
            raise ParameterError("--v0 is required with rule 'explicit'")
        if not 0 <= explicit < graph.n:
            raise ParameterError(f"v0={explicit} out of range")
        return explicit
    if rule == "uniform":
        return int(rng.integers(graph.n))
    if rule == "min-degree":
        return int(np.argmin(graph.degrees))
    if rule == "uniform-conditioned":
        if p is None:
            raise ParameterError("rule 'uniform-conditioned' needs a nominal p")
        params = derive_thresholds(graph.n, p, eps_override=eps)
        classes = classify(graph, params)
        s0_mask = classes.s0_mask(graph.n)
        ok = []
        for v in range(graph.n):
            if v in classes.s1:
                continue
            if np.any(s0_mask[graph.neighbors(v)]):
                continue
            ok.append(v)
        if not ok:
            raise ConditioningError("no vertex satisfies the conditioning event")
        return int(ok[rng.integers(len(ok))])
    raise ParameterError(f"unknown v0 rule {rule!r}")


def cmd_generate(res: _Resolver) -> int:
    n = res.get("n", None, int)
    p = res.get("p", None, float)
    if n is None or p is None:
        raise ParameterError("generate requires --n and --p")
    seed = res.get("seed", _default_seed(), int)
    graph = generate_gnp(int(n), float(p), int(seed))
    out = res.get("out", None, str)
    if out:
        save_edge_list(graph, out)
        sys.stdout.write(json.dumps({"written": out, "n": graph.n,
                                     "m": graph.edge_count, "seed": int(seed)}) + "\n")
    else:
        sys.stdout.write(f"{graph.n} {graph.edge_count}\n")
        for u, v in graph.edges():
            sys.stdout.write(f"{u} {v}\n")
    return 0


def cmd_estimate(res: _Resolver) -> int:
    graph, p, source = _resolve_graph(res)
    s = res.get("s", None, float)
    if s is None:
        raise ParameterError("estimate requires --s")
    params = ProcessParams(float(s), _variant(res.get("variant", "bd", str)))
    runs = int(res.get("runs", 1000, int))
    seed = int(res.get("seed", _default_seed(), int))
    eps = float(res.get("eps", DEFAULT_EPS, float))
    rule = res.get("v0_rule", "explicit", str)
    rng = np.random.default_rng(derive_run_seed(seed, 7001))
    v0 = _pick_v0(graph, rule, res.get("v0", None, int), eps, p, rng)
    t0 = time.perf_counter()
    est = estimate_fixation(graph, v0, params, runs, seed,
                            confidence=float(res.get("confidence", 0.95, float)),
                            max_active_steps=int(res.get("max_steps",
                                                         DEFAULT_MAX_ACTIVE_STEPS, int)),
                            threads=int(res.get("threads", 1, int)))
    record = {
        "spec": {"command": "estimate", "source": source, "s": params.s,
                 "variant": params.variant.value, "v0_rule": rule, "v0": v0,
                 "runs": runs, "seed": seed},
        "graph": _graph_summary(graph, eps, p),
        "payload": {"estimate": est.to_json_dict(), "d_v0": graph.degree(v0)},
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    _emit(record, res.get("out", None, str))
    return 0


def cmd_exact(res: _Resolver) -> int:
    graph, p, source = _resolve_graph(res)
    s = res.get("s", None, float)
    if s is None:
        raise ParameterError("exact requires --s")
    params = ProcessParams(float(s), _variant(res.get("variant", "bd", str)))
    t0 = time.perf_counter()
    f = exact_fixation_all(graph, params, cap=int(res.get("cap", 16, int)))
    record = {
        "spec": {"command": "exact", "source": source, "s": params.s,
                 "variant": params.variant.value},
        "graph": _graph_summary(graph, None, p),
        "payload": {"f": [float(x) for x in f]},
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    _emit(record, res.get("out", None, str))
    return 0


def _build_family(res: _Resolver):
    family = res.get("family", None, str)
    if family is None:
        raise ParameterError("recurrence requires --family")
    s = float(res.get("s", 2.0, float))
    m = int(res.get("m", DEFAULT_M, int))
    landing = res.get("landing", walks.AT_J, str)
    alpha = res.get("alpha", None, float)
    dy0 = res.get("dy0", None, float)
    dx1 = res.get("dx1", None, float)
    npn = res.get("np", None, float)
    if family == "bdf3":
        if alpha is None:
            raise ParameterError("bdf3 needs --alpha")
        return walks.bdf3(float(alpha), s, m, landing)
    if family == "bdf4":
        if dy0 is None:
            raise ParameterError("bdf4 needs --dy0")
        return walks.bdf4(float(dy0), s, m, landing)
    if family == "dbf2":
        if alpha is None:
            raise ParameterError("dbf2 needs --alpha")
        return walks.dbf2(float(alpha), s, m, landing)
    if family == "dbf3":
        if dx1 is None:
            raise ParameterError("dbf3 needs --dx1")
        return walks.dbf3_coupled(float(dx1), s, m, landing)
    if family == "dbf4":
        if dy0 is None or npn is None:
            raise ParameterError("dbf4 needs --dy0 and --np")
        return walks.dbf4(float(dy0), s, float(npn), m, switch_landing=landing)
    if family == "dbf5":
        if alpha is None or dy0 is None:
            raise ParameterError("dbf5 needs --alpha and --dy0")
        return walks.dbf5(float(alpha), float(dy0), s, m, landing)
    raise ParameterError(f"unknown recurrence family {family!r}")


def cmd_recurrence(res: _Resolver) -> int:
    spec = _build_family(res)
    t0 = time.perf_counter()
    sol = walks.solve_recurrence(spec)
    fmt = res.get("format", "json", str)
    if fmt == "csv":
        lines = ["j," + ",".join(f"layer{lay}" for lay in range(spec.layers))]
        for j in range(spec.m + 1):
            lines.append(f"{j}," + ",".join(repr(float(sol.p[lay, j]))
                                            for lay in range(spec.layers)))
        _emit({"csv": "\n".join(lines)}, res.get("out", None, str), fmt="csv")
        return 0
    record = {
        "spec": {"command": "recurrence", "description": spec.description,
                 "m": spec.m, "s": spec.s, "landing": spec.switch_landing},
        "payload": {"p1": sol.p1, "residual": sol.residual,
                    "vector": [float(x) for x in sol.p[0]]},
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    _emit(record, res.get("out", None, str))
    return 0


def cmd_audit(res: _Resolver) -> int:
    graph, p, source = _resolve_graph(res)
    if p is None:
        raise ParameterError("audit needs a nominal p (--p, also with --graph)")
    eps = float(res.get("eps", DEFAULT_EPS, float))
    params = derive_thresholds(graph.n, p, eps_override=eps)
    config = AuditConfig(subset_samples=int(res.get("samples", 8, int)),
                         seed=int(res.get("seed", _default_seed(), int)))
    t0 = time.perf_counter()
    report = audit(graph, params, config)
    record = {
        "spec": {"command": "audit", "source": source, "eps": eps,
                 "samples": config.subset_samples, "seed": config.seed},
        "graph": _graph_summary(graph, eps, p),
        "payload": {"report": [r.to_json_dict() for r in report.records]},
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    _emit(record, res.get("out", None, str))
    return 0


_CASE_TARGETS = {
    "BDF1": "fix ~ (s-1)/s", "DBF1": "fix ~ (s-1)/s",
    "BDF2": "fix = 1-o(1)",
}


def _infer_case(variant: Variant, in_s1: bool, d_v0: float, n_s0: int,
                s0_cutoff: float) -> str:
    if variant is Variant.BIRTH_DEATH:
        if d_v0 <= s0_cutoff:
            return "BDF2"
        if not in_s1 and n_s0 == 0:
            return "BDF1"
        if in_s1 and n_s0 == 0:
            return "BDF3"
        if not in_s1 and n_s0 == 1:
            return "BDF4"
        if in_s1:
            return "BDF5"
        return "unclassified"
    if not in_s1 and n_s0 == 0:
        return "DBF1"
    if in_s1 and n_s0 == 0:
        return "DBF3" if d_v0 <= s0_cutoff else "DBF2"
    if not in_s1 and n_s0 == 1:
        return "DBF4"
    if in_s1:
        return "DBF5"
    return "unclassified"


def _case_prediction(case: str, s: float, np_nominal: float, d_v0: float,
                     s0_neighbor_degrees: list[int], m: int) -> dict:
    out: dict = {"case": case}
    if s == 1.0:
        out["target"] = "Maciejewski closed form over realized degrees"
        return out
    if s < 1.0:
        out["target"] = "extinction: fix = o(1)"
        return out
    if case in _CASE_TARGETS:
        out["target"] = _CASE_TARGETS[case]
        if case in ("BDF1", "DBF1"):
            out["target_value"] = (s - 1.0) / s
        return out
    alpha = d_v0 / np_nominal
    dy0 = float(min(s0_neighbor_degrees)) if s0_neighbor_degrees else None
    try:
        if case in ("BDF3", "BDF5"):
            sol = walks.solve_recurrence(walks.bdf3(alpha, s, m))
            out["recurrence_fix"] = 1.0 - sol.p1
        elif case == "BDF4" and dy0:
            sol = walks.solve_recurrence(walks.bdf4(dy0, s, m))
            out["recurrence_fix"] = 1.0 - sol.p1
        elif case == "DBF2":
            sol = walks.solve_recurrence(walks.dbf2(alpha, s, m))
            out["recurrence_fix"] = 1.0 - sol.p1
        elif case == "DBF3":
            sol = walks.solve_recurrence(walks.dbf3_coupled(max(d_v0, 1.0), s, m))
            out["recurrence_fix"] = 1.0 - sol.p1
        elif case == "DBF4" and dy0:
            sol = walks.solve_recurrence(walks.dbf4(dy0, s, np_nominal, m))
            out["recurrence_fix"] = 1.0 - sol.p1
        elif case == "DBF5" and dy0:
            sol = walks.solve_recurrence(walks.dbf5(alpha, dy0, s, m))
            out["recurrence_fix"] = 1.0 - sol.p1
    except MoranLabError as exc:
        out["recurrence_error"] = str(exc)
    return out


def cmd_theorem_check(res: _Resolver) -> int:
    n = res.get("n", None, int)
    p = res.get("p", None, float)
    if n is None or p is None:
        raise ParameterError("theorem-check requires --n and --p")
    n = int(n)
    p = float(p)
    s = float(res.get("s", 2.0, float))
    params = ProcessParams(s, _variant(res.get("variant", "bd", str)))
    eps = float(res.get("eps", DEFAULT_EPS, float))
    runs = int(res.get("runs", 2000, int))
    seed = int(res.get("seed", _default_seed(), int))
    retries = int(res.get("retries", DEFAULT_RETRIES, int))
    rule = res.get("v0_rule", "uniform-conditioned", str)
    thresholds = derive_thresholds(n, p, eps_override=eps)
    rng = np.random.default_rng(derive_run_seed(seed, 7001))
    t0 = time.perf_counter()
    graph = None
    v0 = None
    attempts = 0
    for attempt in range(retries):
        attempts += 1
        g = generate_gnp(n, p, derive_run_seed(seed, 1_000_000 + attempt))
        if not g.is_connected():
            continue
        try:
            cand = _pick_v0(g, rule, res.get("v0", None, int), eps, p, rng)
        except ConditioningError:
            continue
        if rule == "min-degree" and g.degrees[cand] > thresholds.s0_cutoff:
            continue
        graph, v0 = g, cand
        break
    if graph is None:
        raise ConditioningError(
            f"conditioning event not satisfied in {retries} graph attempts")
    classes = classify(graph, thresholds)
    s0_mask = classes.s0_mask(graph.n)
    s0_neighbors = [int(u) for u in graph.neighbors(v0) if s0_mask[u]]
    case = _infer_case(params.variant, v0 in classes.s1, graph.degree(v0),
                       len(s0_neighbors), thresholds.s0_cutoff)
    prediction = _case_prediction(case, s, thresholds.np_nominal, graph.degree(v0),
                                  [graph.degree(u) for u in s0_neighbors],
                                  int(res.get("m", DEFAULT_M, int)))
    if s == 1.0:
        fix = (neutral_bd_fixation(graph) if params.variant is Variant.BIRTH_DEATH
               else neutral_db_fixation(graph))
        prediction["target_value"] = float(fix[v0])
    est = estimate_fixation(graph, v0, params, runs, seed,
                            max_active_steps=int(res.get("max_steps",
                                                         DEFAULT_MAX_ACTIVE_STEPS, int)),
                            threads=int(res.get("threads", 1, int)))
    record = {
        "spec": {"command": "theorem-check", "n": n, "p": p, "s": s,
                 "variant": params.variant.value, "v0_rule": rule, "runs": runs,
                 "seed": seed, "eps": eps},
        "graph": _graph_summary(graph, eps, p) | {"attempts": attempts},
        "payload": {
            "v0": v0,
            "d_v0": graph.degree(v0),
            "v0_in_s1": v0 in classes.s1,
            "s0_neighbor_degrees": [graph.degree(u) for u in s0_neighbors],
            "case": case,
            "prediction": prediction,
            "estimate": est.to_json_dict(),
        },
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    _emit(record, res.get("out", None, str))
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", type=str, help="flat key=value config file")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--out", type=str)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moranlab",
                                     description="Moran processes on graphs")
    subs = parser.add_subparsers(dest="command", required=True)

    p_gen = subs.add_parser("generate", help="write a G(n,p) edge list")
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--p", type=float)
    _add_common(p_gen)

    p_est = subs.add_parser("estimate", help="Monte Carlo fixation estimate")
    for flag, typ in (("--n", int), ("--p", float), ("--graph", str), ("--s", float),
                      ("--v0", int), ("--runs", int), ("--max-steps", int),
                      ("--threads", int), ("--eps", float), ("--confidence", float)):
        p_est.add_argument(flag, type=typ)
    p_est.add_argument("--variant", choices=["bd", "db"])
    p_est.add_argument("--v0-rule", choices=["explicit", "uniform",
                                             "uniform-conditioned", "min-degree"])
    _add_common(p_est)

    p_ex = subs.add_parser("exact", help="exact fixation probabilities (all v0)")
    for flag, typ in (("--n", int), ("--p", float), ("--graph", str), ("--s", float),
                      ("--cap", int)):
        p_ex.add_argument(flag, type=typ)
    p_ex.add_argument("--variant", choices=["bd", "db"])
    _add_common(p_ex)

    p_rec = subs.add_parser("recurrence", help="solve a regime-switch walk recurrence")
    p_rec.add_argument("--family", choices=["bdf3", "bdf4", "dbf2", "dbf3",
                                            "dbf4", "dbf5"])
    for flag, typ in (("--alpha", float), ("--dy0", float), ("--dx1", float),
                      ("--s", float), ("--m", int), ("--np", float)):
        p_rec.add_argument(flag, type=typ)
    p_rec.add_argument("--landing", choices=[walks.AT_J, walks.AT_J_MINUS_1])
    p_rec.add_argument("--format", choices=["json", "csv"])
    _add_common(p_rec)

    p_aud = subs.add_parser("audit", help="random-graph structural property audit")
    for flag, typ in (("--n", int), ("--p", float), ("--graph", str),
                      ("--eps", float), ("--samples", int)):
        p_aud.add_argument(flag, type=typ)
    _add_common(p_aud)

    p_thm = subs.add_parser("theorem-check", help="conditioned fixation experiment")
    for flag, typ in (("--n", int), ("--p", float), ("--s", float), ("--v0", int),
                      ("--runs", int), ("--eps", float), ("--retries", int),
                      ("--max-steps", int), ("--threads", int), ("--m", int)):
        p_thm.add_argument(flag, type=typ)
    p_thm.add_argument("--variant", choices=["bd", "db"])
    p_thm.add_argument("--v0-rule", choices=["explicit", "uniform",
                                             "uniform-conditioned", "min-degree"])
    _add_common(p_thm)
    return parser


_COMMANDS = {
    "generate": cmd_generate,
    "estimate": cmd_estimate,
    "exact": cmd_exact,
    "recurrence": cmd_recurrence,
    "audit": cmd_audit,
    "theorem-check": cmd_theorem_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](_Resolver(args))
    except MoranLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
