"""Empirical checkers for the structural properties the random-graph analysis uses.

Thirteen properties, ids "a".."m". (a)-(e) are decided exactly (degree scans,
bounded BFS, bounded cycle search); (f)-(m) quantify over exponentially many
subsets and are checked on seeded BFS-grown connected samples, reporting
sampled-pass / sampled-fail. Every fail carries a witness that
verify_witness re-derives from scratch. The audit is a measurement
instrument: at small n several properties may genuinely fail, and the report
says so rather than asserting.

Distance/cycle/scale uses of omega0 apply the clamp max(omega0, 3) (omega0 is
far below 1 at desk scale); params_used records the clamped values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .graph import UNREACHABLE, Graph, ThresholdParams, VertexClasses, bfs_distances, classify

PROPERTY_IDS = tuple("abcdefghijklm")


@dataclass(frozen=True)
class AuditConfig:
    subset_samples: int = 8
    subset_size_grid: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.subset_samples < 1:
            raise ParameterError("subset_samples must be >= 1")


@dataclass
class PropertyRecord:
    id: str
    status: str  # pass | fail | sampled-pass | sampled-fail | skipped
    witness: dict | None
    params_used: dict
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "witness": self.witness,
            "params_used": self.params_used,
            "detail": self.detail,
        }


@dataclass
class PropertyReport:
    records: list[PropertyRecord] = field(default_factory=list)

    def __getitem__(self, prop_id: str) -> PropertyRecord:
        for rec in self.records:
            if rec.id == prop_id:
                return rec
        raise KeyError(prop_id)

    def to_json(self) -> str:
        return json.dumps([r.to_json_dict() for r in self.records], indent=2)


def _subset_mask(graph: Graph, vertices) -> np.ndarray:
    mask = np.zeros(graph.n, dtype=bool)
    mask[list(vertices)] = True
    return mask


def _edges_inside(graph: Graph, mask: np.ndarray) -> int:
    total = 0
    for v in np.flatnonzero(mask):
        nb = graph.neighbors(v)
        total += int(np.count_nonzero(mask[nb]))
    return total // 2


def _edges_between(graph: Graph, mask_a: np.ndarray, mask_b: np.ndarray) -> int:
    total = 0
    for v in np.flatnonzero(mask_a):
        nb = graph.neighbors(v)
        total += int(np.count_nonzero(mask_b[nb]))
    return total


def _neighborhood_mask(graph: Graph, mask: np.ndarray) -> np.ndarray:
    out = np.zeros(graph.n, dtype=bool)
    for v in np.flatnonzero(mask):
        out[graph.neighbors(v)] = True
    out &= ~mask
    return out


def _is_connected_subset(graph: Graph, vertices: list[int]) -> bool:
    if not vertices:
        return False
    allowed = _subset_mask(graph, vertices)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        v = stack.pop()
        for u in graph.neighbors(v):
            u = int(u)
            if allowed[u] and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(vertices)


def _grow_connected(graph: Graph, size: int, rng, forbidden: np.ndarray | None = None,
                    tries: int = 20) -> list[int] | None:
    """Uniformly seeded BFS-grown connected subset of the given size."""
    n = graph.n
    for _ in range(tries):
        if forbidden is None:
            start = int(rng.integers(n))
        else:
            allowed = np.flatnonzero(~forbidden)
            if len(allowed) == 0:
                return None
            start = int(allowed[rng.integers(len(allowed))])
        chosen = {start}
        frontier: list[int] = []
        for u in graph.neighbors(start):
            u = int(u)
            if forbidden is None or not forbidden[u]:
                frontier.append(u)
        while len(chosen) < size and frontier:
            i = int(rng.integers(len(frontier)))
            v = frontier[i]
            frontier[i] = frontier[-1]
            frontier.pop()
            if v in chosen:
                continue
            chosen.add(v)
            for u in graph.neighbors(v):
                u = int(u)
                if u not in chosen and (forbidden is None or not forbidden[u]):
                    frontier.append(u)
        if len(chosen) == size:
            return sorted(chosen)
    return None


def _cycle_through(graph: Graph, v: int, bound: int) -> list[int] | None:
    """A simple cycle through v of length <= bound, or None (bounded BFS search).

    BFS from v labels every vertex with the first-hop branch it descends from;
    a non-tree edge joining two branches closes a cycle through v of length
    depth(u) + depth(w) + 1, and branch-disjointness makes it simple.
    """
    if bound < 3:
        return None
    n = graph.n
    depth = np.full(n, -1, dtype=np.int64)
    branch = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    depth[v] = 0
    queue = [v]
    half = bound // 2
    best_len = bound + 1
    best_pair: tuple[int, int] | None = None
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for w in graph.neighbors(u):
            w = int(w)
            if w == parent[u] or w == v:
                continue
            if depth[w] == -1:
                if depth[u] < half:
                    depth[w] = depth[u] + 1
                    branch[w] = w if u == v else branch[u]
                    parent[w] = u
                    queue.append(w)
            elif u != v and branch[u] != branch[w]:
                length = int(depth[u] + depth[w] + 1)
                if length <= bound and length < best_len:
                    best_len = length
                    best_pair = (u, w)
    if best_pair is None:
        return None
    u, w = best_pair
    path_u = []
    while u != -1:
        path_u.append(int(u))
        u = int(parent[u])
    path_w = []
    while w != -1:
        path_w.append(int(w))
        w = int(parent[w])
    # v .. u, then w .. back toward v (dropping the final v)
    return list(reversed(path_u)) + path_w[:-1]


def _default_grid(graph: Graph, params: ThresholdParams) -> tuple[int, ...]:
    top = max(4, int(min(graph.n - 1, params.n1)))
    sizes = []
    x = 2.0
    while x <= top:
        sizes.append(int(round(x)))
        x *= 1.8
    sizes.append(top)
    return tuple(sorted(set(sizes)))


def audit(graph: Graph, params: ThresholdParams, config: AuditConfig) -> PropertyReport:
    """Run all thirteen property checks; deterministic for fixed inputs and seed."""
    rng = np.random.default_rng(config.seed)
    classes = classify(graph, params)
    grid = config.subset_size_grid or _default_grid(graph, params)
    report = PropertyReport()
    for prop_id in PROPERTY_IDS:
        checker = _CHECKERS[prop_id]
        report.records.append(checker(graph, params, classes, config, grid, rng))
    return report


def _base_params(params: ThresholdParams) -> dict:
    return {
        "eps": params.eps,
        "omega0": params.omega0,
        "omega0_clamped": params.omega0_clamped(),
        "np_nominal": params.np_nominal,
        "n1": params.n1,
        "s0_cutoff": params.s0_cutoff,
    }


def _check_a(graph, params, classes, config, grid, rng):
    bound = 5.0 * params.np_nominal
    used = _base_params(params) | {"bound": bound}
    v = int(np.argmax(graph.degrees))
    if graph.degrees[v] <= bound:
        return PropertyRecord("a", "pass", None, used,
                              f"max degree {graph.max_degree()} <= {bound:g}")
    return PropertyRecord("a", "fail", {"vertex": v, "degree": int(graph.degrees[v])},
                          used, f"degree {graph.degrees[v]} > {bound:g}")


def _check_b(graph, params, classes, config, grid, rng):
    bound = graph.n ** (1.0 - params.eps ** 2 / 4.0)
    used = _base_params(params) | {"bound": bound}
    size = len(classes.s1)
    if size <= bound:
        return PropertyRecord("b", "pass", None, used, f"|S1|={size} <= {bound:.3f}")
    return PropertyRecord("b", "fail", {"vertices": sorted(classes.s1)}, used,
                          f"|S1|={size} > {bound:.3f}")


def _check_c(graph, params, classes, config, grid, rng):
    bound = int(math.floor(params.omega0_clamped()))
    used = _base_params(params) | {"cycle_length_bound": bound}
    for v in sorted(classes.s1):
        cycle = _cycle_through(graph, v, bound)
        if cycle is not None:
            return PropertyRecord("c", "fail", {"cycle": cycle}, used,
                                  f"cycle of length {len(cycle)} meets S1 at {v}")
    return PropertyRecord("c", "pass", None, used,
                          f"no cycle of length <= {bound} meets S1 ({len(classes.s1)} vertices checked)")


def _check_d(graph, params, classes, config, grid, rng):
    bound = params.omega0_clamped()
    used = _base_params(params) | {"distance_bound": bound}
    s0 = sorted(classes.s0)
    for v in s0:
        dist = bfs_distances(graph, v, max_depth=int(math.ceil(bound)) - 1)
        for w in s0:
            if w != v and dist[w] != UNREACHABLE and dist[w] < bound:
                return PropertyRecord("d", "fail",
                                      {"pair": [int(v), int(w)], "distance": int(dist[w])},
                                      used, f"S0 pair at distance {dist[w]} < {bound:g}")
    return PropertyRecord("d", "pass", None, used, f"|S0|={len(s0)}, pairwise distance >= {bound:g}")


def _check_e(graph, params, classes, config, grid, rng):
    bound = params.omega0_clamped()
    used = _base_params(params) | {"distance_bound": bound, "degree_bound": bound}
    s1_mask = classes.s1_mask(graph.n)
    low = np.flatnonzero(graph.degrees < bound)
    for w in low:
        dist = bfs_distances(graph, int(w), max_depth=int(math.floor(bound)))
        hits = np.flatnonzero(s1_mask & (dist != UNREACHABLE) & (dist <= bound))
        hits = hits[hits != w]
        if len(hits):
            v = int(hits[0])
            return PropertyRecord("e", "fail",
                                  {"pair": [v, int(w)], "distance": int(dist[v])},
                                  used, f"S1 vertex {v} at distance {dist[v]} <= {bound:g} "
                                        f"from degree-{graph.degrees[w]} vertex {w}")
    return PropertyRecord("e", "pass", None, used,
                          f"{len(low)} low-degree vertices checked")


def _sampled(prop_id, graph, params, classes, config, grid, rng, lo, hi, violation,
             forbidden=None, used_extra=None):
    """Shared driver for the subset-quantified checks."""
    used = _base_params(params) | {"size_band": [lo, hi],
                                   "subset_samples": config.subset_samples}
    if used_extra:
        used |= used_extra
    sizes = [k for k in grid if lo <= k <= hi]
    if not sizes:
        return PropertyRecord(prop_id, "skipped", None, used,
                              f"no grid sizes inside band [{lo:g}, {hi:g}]")
    checked = 0
    for size in sizes:
        for _ in range(config.subset_samples):
            subset = _grow_connected(graph, size, rng, forbidden=forbidden)
            if subset is None:
                continue
            checked += 1
            witness, detail = violation(subset)
            if witness is not None:
                return PropertyRecord(prop_id, "sampled-fail", witness, used, detail)
    if checked == 0:
        return PropertyRecord(prop_id, "skipped", None, used,
                              "no connected subsets of the required sizes found")
    return PropertyRecord(prop_id, "sampled-pass", None, used,
                          f"{checked} sampled subsets satisfied the bound")


def _check_f(graph, params, classes, config, grid, rng):
    hi = 2.0 * graph.n / params.np_nominal ** (9.0 / 8.0)

    def violation(subset):
        mask = _subset_mask(graph, subset)
        e_s = _edges_inside(graph, mask)
        if e_s >= 10 * len(subset):
            return {"subset": subset}, f"e(S)={e_s} >= 10|S|={10 * len(subset)}"
        return None, ""

    return _sampled("f", graph, params, classes, config, grid, rng, 1, hi, violation)


def _check_g(graph, params, classes, config, grid, rng):
    hi = 2.0 * params.omega0_clamped()

    def violation(subset):
        mask = _subset_mask(graph, subset)
        e_s = _edges_inside(graph, mask)
        if e_s > len(subset):
            return {"subset": subset}, f"e(S)={e_s} > |S|={len(subset)}"
        return None, ""

    return _sampled("g", graph, params, classes, config, grid, rng, 1, hi, violation)


def _check_h(graph, params, classes, config, grid, rng):
    lo = 10.0 / params.eps ** 3
    hi = params.n1
    s1_mask = classes.s1_mask(graph.n)
    p = params.np_nominal / graph.n

    def violation(subset):
        mask = _subset_mask(graph, subset)
        t_mask = ~mask & ~s1_mask
        e_st = _edges_between(graph, mask, t_mask)
        target = len(subset) * int(t_mask.sum()) * p
        lo_e = (1.0 - 2.0 * params.eps) * target
        hi_e = (1.0 + 2.0 * params.eps) * target
        if not lo_e <= e_st <= hi_e:
            return ({"subset": subset},
                    f"e(S:T)={e_st} outside [{lo_e:.1f}, {hi_e:.1f}]")
        return None, ""

    return _sampled("h", graph, params, classes, config, grid, rng, lo, hi, violation,
                    forbidden=s1_mask)


def _check_i(graph, params, classes, config, grid, rng):
    lo = params.omega0_clamped() / 2.0
    hi = graph.n / params.np_nominal ** (9.0 / 8.0)

    def violation(subset):
        mask = _subset_mask(graph, subset)
        e_out = _edges_between(graph, mask, ~mask)
        bound = len(subset) * params.np_nominal / 2.0
        if e_out < bound:
            return {"subset": subset}, f"e(S:~S)={e_out} < {bound:g}"
        return None, ""

    return _sampled("i", graph, params, classes, config, grid, rng, lo, hi, violation)


def _check_j(graph, params, classes, config, grid, rng):
    s1_mask = classes.s1_mask(graph.n)
    s1_plus = s1_mask | _neighborhood_mask(graph, s1_mask)
    om = params.omega0_clamped()

    def violation(subset):
        mask = _subset_mask(graph, subset)
        closed = mask | _neighborhood_mask(graph, mask)
        count = int(np.count_nonzero(closed & s1_plus))
        bound = 7.0 / params.eps ** 2 * max(1.0, len(subset) / om)
        if count > bound:
            return {"subset": subset}, f"|(S+N(S)) & (S1+N(S1))| = {count} > {bound:g}"
        return None, ""

    return _sampled("j", graph, params, classes, config, grid, rng, 1, graph.n - 1,
                    violation)


def _check_k(graph, params, classes, config, grid, rng):
    hi = graph.n / params.np_nominal ** (9.0 / 8.0)
    k_top = int(math.floor(params.np_nominal ** (1.0 / 3.0)))
    if k_top < 2:
        used = _base_params(params) | {"k_range": [2, k_top]}
        return PropertyRecord("k", "skipped", None, used,
                              f"(np)^(1/3) = {params.np_nominal ** (1/3):.2f} < 2: no k to check")

    def violation(subset):
        mask = _subset_mask(graph, subset)
        d_s = np.zeros(graph.n, dtype=np.int64)
        for v in subset:
            d_s[graph.neighbors(v)] += 1
        d_s[mask] = 0
        for k in range(2, k_top + 1):
            count = int(np.count_nonzero(d_s == k))
            bound = params.eps / k ** 2 * len(subset) * params.np_nominal
            if count > bound:
                return ({"subset": subset, "k": k},
                        f"|B_{k}(S)|={count} > {bound:g}")
        return None, ""

    return _sampled("k", graph, params, classes, config, grid, rng, 1, hi, violation,
                    used_extra={"k_range": [2, k_top]})


def _theta(params: ThresholdParams) -> float:
    return 1.0 / (math.e ** 2 * math.sqrt(params.np_nominal))


def _check_l(graph, params, classes, config, grid, rng):
    lo = graph.n / params.np_nominal ** 2
    hi = params.n1
    p = params.np_nominal / graph.n
    theta = _theta(params)

    def violation(subset):
        mask = _subset_mask(graph, subset)
        outside = int((~mask).sum())
        target = outside * p
        lo_d = (1.0 - params.eps) * target
        hi_d = (1.0 + params.eps) * target
        bad = 0
        for v in subset:
            d_out = int(np.count_nonzero(~mask[graph.neighbors(v)]))
            if not lo_d <= d_out <= hi_d:
                bad += 1
        bound = theta * len(subset)
        if bad > bound:
            return {"subset": subset}, f"{bad} atypical-boundary vertices > {bound:g}"
        return None, ""

    return _sampled("l", graph, params, classes, config, grid, rng, lo, hi, violation,
                    used_extra={"theta": theta})


def _check_m(graph, params, classes, config, grid, rng):
    lo = graph.n / params.np_nominal ** (9.0 / 8.0)
    hi = graph.n / params.np_nominal ** (1.0 / 3.0)
    theta = _theta(params)
    alpha = params.np_nominal ** 0.25
    p = params.np_nominal / graph.n
    used = _base_params(params) | {"size_band": [lo, hi], "theta": theta, "alpha": alpha,
                                   "subset_samples": config.subset_samples}
    sizes = [k for k in grid if lo <= k <= hi]
    if not sizes:
        return PropertyRecord("m", "skipped", None, used,
                              f"no grid sizes inside band [{lo:g}, {hi:g}]")
    checked = 0
    for size in sizes:
        t_size = int(round(theta * (graph.n - size)))
        if t_size < 1 or size + t_size > graph.n:
            continue
        for _ in range(config.subset_samples):
            subset = _grow_connected(graph, size, rng)
            if subset is None:
                continue
            mask = _subset_mask(graph, subset)
            pool = np.flatnonzero(~mask)
            t_set = sorted(int(v) for v in rng.choice(pool, size=t_size, replace=False))
            t_mask = _subset_mask(graph, t_set)
            checked += 1
            e_st = _edges_between(graph, mask, t_mask)
            bound = alpha * size * t_size * p
            if e_st >= bound:
                return PropertyRecord("m", "sampled-fail",
                                      {"s": subset, "t": t_set}, used,
                                      f"e(S,T)={e_st} >= {bound:g}")
    if checked == 0:
        return PropertyRecord("m", "skipped", None, used, "no usable (S,T) samples")
    return PropertyRecord("m", "sampled-pass", None, used,
                          f"{checked} sampled pairs satisfied the bound")


_CHECKERS = {
    "a": _check_a, "b": _check_b, "c": _check_c, "d": _check_d, "e": _check_e,
    "f": _check_f, "g": _check_g, "h": _check_h, "i": _check_i, "j": _check_j,
    "k": _check_k, "l": _check_l, "m": _check_m,
}


def verify_witness(graph: Graph, params: ThresholdParams, property_id: str,
                   witness: dict) -> bool:
    """Recompute the single violated inequality from scratch; True iff confirmed."""
    if property_id not in PROPERTY_IDS:
        raise ParameterError(f"unknown property id {property_id!r}")
    if not isinstance(witness, dict):
        raise ParameterError("witness must be a mapping")
    classes = classify(graph, params)
    try:
        return _VERIFIERS[property_id](graph, params, classes, witness)
    except (KeyError, TypeError, IndexError) as exc:
        raise ParameterError(f"malformed witness for property {property_id}: {exc}") from exc


def _vertices_ok(graph: Graph, vertices) -> bool:
    return all(isinstance(v, (int, np.integer)) and 0 <= v < graph.n for v in vertices)


def _verify_a(graph, params, classes, witness):
    v = witness["vertex"]
    if not _vertices_ok(graph, [v]):
        return False
    return graph.degrees[v] > 5.0 * params.np_nominal


def _verify_b(graph, params, classes, witness):
    vertices = witness["vertices"]
    if not _vertices_ok(graph, vertices):
        return False
    lo, hi = params.i_eps
    if not all((graph.degrees[v] < lo) or (graph.degrees[v] > hi) for v in vertices):
        return False
    return len(set(vertices)) > graph.n ** (1.0 - params.eps ** 2 / 4.0)


def _verify_c(graph, params, classes, witness):
    cycle = witness["cycle"]
    if not _vertices_ok(graph, cycle) or len(cycle) < 3:
        return False
    if len(set(cycle)) != len(cycle):
        return False
    if len(cycle) > params.omega0_clamped():
        return False
    edges_ok = all(graph.has_edge(cycle[i], cycle[(i + 1) % len(cycle)])
                   for i in range(len(cycle)))
    return edges_ok and any(v in classes.s1 for v in cycle)


def _verify_d(graph, params, classes, witness):
    v, w = witness["pair"]
    if not _vertices_ok(graph, [v, w]) or v == w:
        return False
    if v not in classes.s0 or w not in classes.s0:
        return False
    dist = bfs_distances(graph, v)[w]
    return dist != UNREACHABLE and dist < params.omega0_clamped()


def _verify_e(graph, params, classes, witness):
    v, w = witness["pair"]
    if not _vertices_ok(graph, [v, w]) or v == w:
        return False
    bound = params.omega0_clamped()
    if v not in classes.s1 or graph.degrees[w] >= bound:
        return False
    dist = bfs_distances(graph, v)[w]
    return dist != UNREACHABLE and dist <= bound


def _verify_f(graph, params, classes, witness):
    subset = witness["subset"]
    if not _vertices_ok(graph, subset):
        return False
    if len(subset) > 2.0 * graph.n / params.np_nominal ** (9.0 / 8.0):
        return False
    mask = _subset_mask(graph, subset)
    return _edges_inside(graph, mask) >= 10 * len(subset)


def _verify_g(graph, params, classes, witness):
    subset = witness["subset"]
    if not _vertices_ok(graph, subset):
        return False
    if len(subset) > 2.0 * params.omega0_clamped():
        return False
    mask = _subset_mask(graph, subset)
    return _edges_inside(graph, mask) > len(subset)


def _verify_h(graph, params, classes, witness):
    subset = witness["subset"]
    if not _vertices_ok(graph, subset):
        return False
    if any(v in classes.s1 for v in subset):
        return False
    if not 10.0 / params.eps ** 3 <= len(subset) <= params.n1:
        return False
    mask = _subset_mask(graph, subset)
    t_mask = ~mask & ~classes.s1_mask(graph.n)
    e_st = _edges_between(graph, mask, t_mask)
    target = len(subset) * int(t_mask.sum()) * params.np_nominal / graph.n
    return not ((1 - 2 * params.eps) * target <= e_st <= (1 + 2 * params.eps) * target)


def _verify_i(graph, params, classes, witness):
    subset = witness["subset"]
    if not _vertices_ok(graph, subset) or not _is_connected_subset(graph, list(subset)):
        return False
    if not params.omega0_clamped() / 2.0 <= len(subset) <= graph.n / params.np_nominal ** (9.0 / 8.0):
        return False
    mask = _subset_mask(graph, subset)
    return _edges_between(graph, mask, ~mask) < len(subset) * params.np_nominal / 2.0


def _verify_j(graph, params, classes, witness):
    subset = witness["subset"]
    if not _vertices_ok(graph, subset) or not _is_connected_subset(graph, list(subset)):
        return False
    mask = _subset_mask(graph, subset)
    s1_mask = classes.s1_mask(graph.n)
    closed = mask | _neighborhood_mask(graph, mask)
    s1_plus = s1_mask | _neighborhood_mask(graph, s1_mask)
    count = int(np.count_nonzero(closed & s1_plus))
    bound = 7.0 / params.eps ** 2 * max(1.0, len(subset) / params.omega0_clamped())
    return count > bound


def _verify_k(graph, params, classes, witness):
    subset = witness["subset"]
    k = witness["k"]
    if not _vertices_ok(graph, subset) or not _is_connected_subset(graph, list(subset)):
        return False
    if not (2 <= k <= params.np_nominal ** (1.0 / 3.0)):
        return False
    if len(subset) > graph.n / params.np_nominal ** (9.0 / 8.0):
        return False
    mask = _subset_mask(graph, subset)
    d_s = np.zeros(graph.n, dtype=np.int64)
    for v in subset:
        d_s[graph.neighbors(v)] += 1
    d_s[mask] = 0
    count = int(np.count_nonzero(d_s == k))
    return count > params.eps / k ** 2 * len(subset) * params.np_nominal


def _verify_l(graph, params, classes, witness):
    subset = witness["subset"]
    if not _vertices_ok(graph, subset):
        return False
    if not graph.n / params.np_nominal ** 2 <= len(subset) <= params.n1:
        return False
    mask = _subset_mask(graph, subset)
    outside = int((~mask).sum())
    target = outside * params.np_nominal / graph.n
    bad = 0
    for v in subset:
        d_out = int(np.count_nonzero(~mask[graph.neighbors(v)]))
        if not (1 - params.eps) * target <= d_out <= (1 + params.eps) * target:
            bad += 1
    return bad > _theta(params) * len(subset)


def _verify_m(graph, params, classes, witness):
    s_set = witness["s"]
    t_set = witness["t"]
    if not _vertices_ok(graph, s_set) or not _vertices_ok(graph, t_set):
        return False
    if set(s_set) & set(t_set):
        return False
    lo = graph.n / params.np_nominal ** (9.0 / 8.0)
    hi = graph.n / params.np_nominal ** (1.0 / 3.0)
    if not lo <= len(s_set) <= hi:
        return False
    if len(t_set) != int(round(_theta(params) * (graph.n - len(s_set)))):
        return False
    mask_s = _subset_mask(graph, s_set)
    mask_t = _subset_mask(graph, t_set)
    e_st = _edges_between(graph, mask_s, mask_t)
    bound = params.np_nominal ** 0.25 * len(s_set) * len(t_set) * params.np_nominal / graph.n
    return e_st >= bound


_VERIFIERS = {
    "a": _verify_a, "b": _verify_b, "c": _verify_c, "d": _verify_d, "e": _verify_e,
    "f": _verify_f, "g": _verify_g, "h": _verify_h, "i": _verify_i, "j": _verify_j,
    "k": _verify_k, "l": _verify_l, "m": _verify_m,
}
