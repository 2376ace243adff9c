"""Event-driven simulation of the Birth-Death and Death-Birth processes.

The jump chain only visits X-changing events. Transition probabilities follow
the exact per-state laws:

  Birth-Death: p+ = (s/w) sum_{v in X} d_Xbar(v)/d(v),
               p- = (1/w) sum_{u in N(X)} d_X(u)/d(u),  w = (s-1)|X| + n
  Death-Birth: p+ = (1/n) sum_{u in N(X)} s d_X(u) / (s d_X(u) + d_Xbar(u)),
               p- = (1/n) sum_{v in X} d_Xbar(v) / (s d_X(v) + d_Xbar(v))

MutantState is the didactic pure-python implementation with incrementally
maintained aggregates (used for stepping, audits, and as the reference the
tests check the fast kernels against); run/estimate_fixation dispatch to the
jitted kernels in _kernels.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ParameterError, StateError, StructureError
from .graph import Graph
from .stats import binomial_ci

DEFAULT_MAX_ACTIVE_STEPS = 10_000_000


class Variant(enum.Enum):
    BIRTH_DEATH = "bd"
    DEATH_BIRTH = "db"


@dataclass(frozen=True)
class ProcessParams:
    """Relative mutant fitness and process variant."""

    s: float
    variant: Variant = Variant.BIRTH_DEATH

    def __post_init__(self):
        if not self.s > 0.0:
            raise ParameterError(f"fitness s must be positive, got {self.s}")

    @property
    def variant_code(self) -> int:
        return _kernels.BD if self.variant is Variant.BIRTH_DEATH else _kernels.DB


class Terminal(enum.Enum):
    EXTINCTION = "extinction"
    FIXATION = "fixation"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Outcome:
    terminal: Terminal
    active_steps: int
    raw_steps: int | None = None


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo fixation estimate with a Wilson confidence interval.

    Timed-out runs are excluded from p_hat (reported separately with
    warning=True); completed = runs - timeouts is the denominator.
    """

    p_hat: float
    ci_low: float
    ci_high: float
    runs: int
    fixations: int
    timeouts: int
    seed: int
    confidence: float
    warning: bool

    def to_json_dict(self) -> dict:
        return {
            "p_hat": self.p_hat,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "runs": self.runs,
            "fixations": self.fixations,
            "timeouts": self.timeouts,
            "seed": self.seed,
        }


class MutantState:
    """Mutant set X with incrementally maintained transition aggregates.

    agg_up/agg_down are the variant's reproduce-into/out sums; w is the
    Birth-Death fitness normalizer (s-1)|X| + n. d_X counts are cached per
    vertex and updated on each flip.
    """

    def __init__(self, graph: Graph, params: ProcessParams, vertices=()):
        self.graph = graph
        self.params = params
        n = graph.n
        self.in_x = np.zeros(n, dtype=bool)
        self.d_x = np.zeros(n, dtype=np.int64)
        self.size = 0
        self.w = float(n)
        self.agg_up = 0.0
        self.agg_down = 0.0
        self._up_w = np.zeros(n, dtype=np.float64)
        self._down_w = np.zeros(n, dtype=np.float64)
        for v in vertices:
            self.flip(int(v))

    @property
    def x(self) -> frozenset:
        return frozenset(int(v) for v in np.flatnonzero(self.in_x))

    def _weights(self, v: int) -> tuple[float, float]:
        """(reproducer-up weight, reproducer-down weight) of v for the variant."""
        g = self.graph
        s = self.params.s
        d = g.degrees[v]
        dxv = self.d_x[v]
        if self.params.variant is Variant.BIRTH_DEATH:
            if self.in_x[v]:
                return (d - dxv) / d, 0.0
            return 0.0, dxv / d
        if self.in_x[v]:
            return 0.0, (d - dxv) / (s * dxv + (d - dxv))
        if dxv > 0:
            return s * dxv / (s * dxv + (d - dxv)), 0.0
        return 0.0, 0.0

    def flip(self, v: int) -> None:
        """Toggle v's membership, updating caches and aggregates incrementally."""
        joining = not self.in_x[v]
        self.in_x[v] = joining
        self.size += 1 if joining else -1
        self.w = self.graph.n + (self.params.s - 1.0) * self.size
        delta = 1 if joining else -1
        for u in self.graph.neighbors(v):
            self.d_x[u] += delta
            self._refresh(int(u))
        self._refresh(v)

    def _refresh(self, v: int) -> None:
        up, down = self._weights(v)
        self.agg_up += up - self._up_w[v]
        self.agg_down += down - self._down_w[v]
        self._up_w[v] = up
        self._down_w[v] = down

    def recompute_aggregates(self) -> tuple[float, float]:
        """From-scratch aggregate recomputation (the drift audit's reference)."""
        g = self.graph
        s = self.params.s
        in_x = self.in_x
        d = g.degrees.astype(np.float64)
        d_x = np.zeros(g.n, dtype=np.int64)
        for v in np.flatnonzero(in_x):
            d_x[g.neighbors(v)] += 1
        d_xbar = d - d_x
        if self.params.variant is Variant.BIRTH_DEATH:
            up = float(np.sum(np.where(in_x, d_xbar / d, 0.0)))
            boundary = (~in_x) & (d_x > 0)
            down = float(np.sum(np.where(boundary, d_x / d, 0.0)))
        else:
            denom = s * d_x + d_xbar
            boundary = (~in_x) & (d_x > 0)
            up = float(np.sum(np.where(boundary, s * d_x / denom, 0.0)))
            down = float(np.sum(np.where(in_x, d_xbar / denom, 0.0)))
        return up, down


def transition_probs(graph: Graph, state: MutantState, params: ProcessParams) -> tuple[float, float]:
    """(p+, p-) for the current mutant set; (0, 0) at the absorbing sets."""
    if state.graph is not graph or state.params != params:
        raise ParameterError("state was built for a different graph or parameters")
    if state.size == 0 or state.size == graph.n:
        return (0.0, 0.0)
    if params.variant is Variant.BIRTH_DEATH:
        return (params.s / state.w * state.agg_up, state.agg_down / state.w)
    return (state.agg_up / graph.n, state.agg_down / graph.n)


def step_active(graph: Graph, state: MutantState, params: ProcessParams, rng) -> MutantState:
    """Advance the jump chain by one X-changing event (in place; returns state).

    Grow with probability p+/(p+ + p-). The flipped vertex follows the exact
    conditional law: for Birth-Death growth a reproducer v in X is drawn with
    weight d_Xbar(v)/d(v) and a uniform non-mutant neighbor adopts; shrinkage
    draws a reproducer u in N(X) with weight d_X(u)/d(u) and recolors a
    uniform mutant neighbor. Death-Birth flips the dying vertex directly.
    """
    if not graph.is_connected():
        raise StructureError("step_active requires a connected graph")
    if state.size == 0 or state.size == graph.n:
        raise StateError("cannot step an absorbed process")
    p_plus, p_minus = transition_probs(graph, state, params)
    grow = rng.random() < p_plus / (p_plus + p_minus)
    if params.variant is Variant.BIRTH_DEATH:
        if grow:
            v = _weighted_pick(state._up_w, rng)
            options = [int(u) for u in graph.neighbors(v) if not state.in_x[u]]
        else:
            v = _weighted_pick(state._down_w, rng)
            options = [int(u) for u in graph.neighbors(v) if state.in_x[u]]
        flipped = options[rng.integers(len(options))]
    else:
        flipped = _weighted_pick(state._up_w if grow else state._down_w, rng)
    state.flip(flipped)
    return state


def _weighted_pick(weights: np.ndarray, rng) -> int:
    total = float(weights.sum())
    target = rng.random() * total
    acc = 0.0
    last = 0
    for v, wv in enumerate(weights):
        if wv <= 0.0:
            continue
        acc += wv
        last = v
        if target < acc:
            return v
    return last


def derive_run_seed(master_seed: int, run_index: int) -> int:
    """Stable per-run stream seed: splitmix64 of (master_seed + run_index)."""
    return _kernels.splitmix64_py((master_seed + run_index) & 0xFFFFFFFFFFFFFFFF)


def _check_runnable(graph: Graph, v0: int, max_active_steps: int) -> None:
    if not 0 <= v0 < graph.n:
        raise ParameterError(f"v0={v0} out of range for n={graph.n}")
    if max_active_steps < 1:
        raise ParameterError("max_active_steps must be >= 1")
    if not graph.is_connected():
        raise StructureError("process runs require a connected graph")


def run(graph: Graph, v0: int, params: ProcessParams, seed: int,
        max_active_steps: int = DEFAULT_MAX_ACTIVE_STEPS, track_raw_steps: bool = False) -> Outcome:
    """Run the jump chain from X={v0} to absorption (or the active-step cap).

    raw_steps, when requested, adds one geometric variate per active step with
    success probability p+ + p-, recovering the raw-chain step count.
    """
    _check_runnable(graph, v0, max_active_steps)
    n = graph.n
    if n == 1:
        return Outcome(Terminal.FIXATION, 0, 0 if track_raw_steps else None)
    scr = _scratch(n)
    code, active, raw = _kernels.run_process(
        graph.indptr, graph.indices, graph.degrees, _harmonic_neighbor_sums(graph),
        params.variant_code, float(params.s), v0, max_active_steps,
        np.uint64(seed & 0xFFFFFFFFFFFFFFFF), track_raw_steps, *scr)
    terminal = (Terminal.EXTINCTION, Terminal.FIXATION, Terminal.TIMEOUT)[code]
    return Outcome(terminal, int(active), int(raw) if track_raw_steps else None)


def _scratch(n: int):
    return (np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.int64),
            np.zeros(n, dtype=np.float64), np.zeros(n, dtype=np.float64),
            np.zeros(n, dtype=np.float64), np.zeros(n + 1, dtype=np.float64),
            np.zeros(n + 1, dtype=np.float64))


_HSUM_CACHE: dict[int, np.ndarray] = {}


def _harmonic_neighbor_sums(graph: Graph) -> np.ndarray:
    """Per-vertex sum of 1/d(u) over neighbors u (static; cached per graph)."""
    key = id(graph)
    cached = _HSUM_CACHE.get(key)
    if cached is None:
        inv = 1.0 / graph.degrees.astype(np.float64)
        hsum = np.zeros(graph.n, dtype=np.float64)
        for v in range(graph.n):
            hsum[v] = inv[graph.neighbors(v)].sum()
        if len(_HSUM_CACHE) > 64:
            _HSUM_CACHE.clear()
        _HSUM_CACHE[key] = hsum
        cached = hsum
    return cached


def estimate_fixation(graph: Graph, v0: int, params: ProcessParams, runs: int,
                      master_seed: int, confidence: float = 0.95,
                      max_active_steps: int = DEFAULT_MAX_ACTIVE_STEPS,
                      threads: int = 1) -> Estimate:
    """Monte Carlo fixation probability over seed-derived independent runs.

    Each run r uses the stream seed derive_run_seed(master_seed, r), so the
    result is bit-identical for any thread count or interleaving.
    """
    if runs < 1:
        raise ParameterError("runs must be >= 1")
    _check_runnable(graph, v0, max_active_steps)
    seeds = np.array([derive_run_seed(master_seed, r) for r in range(runs)],
                     dtype=np.uint64)
    hsum = _harmonic_neighbor_sums(graph)
    args = (graph.indptr, graph.indices, graph.degrees, hsum,
            params.variant_code, float(params.s), v0, max_active_steps)
    if graph.n == 1:
        outcomes = np.full(runs, _kernels.OUTCOME_FIXATION, dtype=np.int8)
    elif threads <= 1 or runs < 4:
        outcomes, _ = _kernels.run_batch(*args, seeds)
    else:
        chunks = np.array_split(np.arange(runs), threads)
        outcomes = np.empty(runs, dtype=np.int8)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {pool.submit(_kernels.run_batch, *args, seeds[c]): c
                       for c in chunks if len(c)}
            for fut, c in futures.items():
                outcomes[c] = fut.result()[0]
    fixations = int(np.sum(outcomes == _kernels.OUTCOME_FIXATION))
    timeouts = int(np.sum(outcomes == _kernels.OUTCOME_TIMEOUT))
    completed = runs - timeouts
    if completed == 0:
        return Estimate(math.nan, 0.0, 1.0, runs, 0, timeouts, master_seed,
                        confidence, True)
    lo, hi = binomial_ci(fixations, completed, confidence)
    return Estimate(fixations / completed, lo, hi, runs, fixations, timeouts,
                    master_seed, confidence, timeouts > 0)
