"""Ground-truth fixation probabilities and gambler's-ruin closed forms.

exact_fixation solves the full absorbing chain over all 2^n mutant subsets
(the walk on |X| alone is not Markov on general graphs, so the solve must
track which vertex flips). Gauss-Seidel sweeps run in popcount order with the
transition kernel generated on the fly; the residual is verified by
substitution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .engine import ProcessParams
from .errors import CapacityError, DomainError, ParameterError, StructureError
from .graph import Graph

EXACT_CAP_DEFAULT = 16
_RESIDUAL_TOL = 1e-12
_SWEEP_CAP = 1_000_000


def _solve_all_states(graph: Graph, params: ProcessParams) -> np.ndarray:
    n = graph.n
    nstates = 1 << n
    popcnt = np.zeros(nstates, dtype=np.uint8)
    for state in range(1, nstates):
        popcnt[state] = popcnt[state >> 1] + (state & 1)
    counts = popcnt[1:nstates - 1]
    interior = np.arange(1, nstates - 1, dtype=np.int64)
    order = interior[np.argsort(counts, kind="stable")]
    f, resid, _sweeps = _kernels.gs_solve(
        n, graph.indptr, graph.indices, graph.degrees, params.variant_code,
        float(params.s), order, popcnt, _RESIDUAL_TOL, _SWEEP_CAP)
    if resid >= _RESIDUAL_TOL:
        raise RuntimeError(f"subset solve did not reach residual {_RESIDUAL_TOL:g} "
                           f"(got {resid:g})")
    return f


def _check_exact_instance(graph: Graph, cap: int) -> None:
    if graph.n > cap:
        raise CapacityError(f"exact solve capped at n={cap}, got n={graph.n}")
    if not graph.is_connected():
        raise StructureError("exact solve requires a connected graph")


def exact_fixation(graph: Graph, v0: int, params: ProcessParams,
                   cap: int = EXACT_CAP_DEFAULT) -> float:
    """Exact fixation probability from a single mutant at v0."""
    if not 0 <= v0 < graph.n:
        raise ParameterError(f"v0={v0} out of range")
    _check_exact_instance(graph, cap)
    if graph.n == 1:
        return 1.0
    f = _solve_all_states(graph, params)
    return float(f[1 << v0])


def exact_fixation_all(graph: Graph, params: ProcessParams,
                       cap: int = EXACT_CAP_DEFAULT) -> np.ndarray:
    """Exact fixation probability for every start vertex, from one solve."""
    _check_exact_instance(graph, cap)
    if graph.n == 1:
        return np.ones(1)
    f = _solve_all_states(graph, params)
    return np.array([f[1 << v] for v in range(graph.n)])


def classical_moran_fixation(n: int, s: float) -> float:
    """Fixation probability of the size-n well-mixed population: (1-1/s)/(1-s^-n)."""
    if s == 1.0:
        return 1.0 / n
    return (1.0 - 1.0 / s) / (1.0 - s ** (-n))


def neutral_bd_fixation(graph: Graph) -> np.ndarray:
    """s=1 Birth-Death closed form: f(v) = d(v)^-1 / sum_w d(w)^-1."""
    inv = 1.0 / graph.degrees.astype(np.float64)
    return inv / inv.sum()


def neutral_db_fixation(graph: Graph) -> np.ndarray:
    """s=1 Death-Birth closed form: f(v) = d(v) / sum_w d(w)."""
    d = graph.degrees.astype(np.float64)
    return d / d.sum()


@dataclass(frozen=True)
class WalkClosedFormQuery:
    """Biased walk on {0..z1} (absorption forms) or {0..m} (duration forms).

    alpha/beta are the up/down step probabilities; r = beta/alpha must be < 1
    for the closed forms. z0/z1 parameterize the absorption probability, a/m
    the duration formulas.
    """

    alpha: float
    beta: float
    z0: int = 0
    z1: int = 0
    a: int = 0
    m: int = 0

    @property
    def r(self) -> float:
        return self.beta / self.alpha


def gambler_phi(query: WalkClosedFormQuery) -> float:
    """Probability the walk started at z0 is absorbed at 0 (before z1).

    phi = (r^z0 - r^z1) / (1 - r^z1) with r = beta/alpha < 1.
    """
    if not 0 <= query.z0 <= query.z1:
        raise ParameterError(f"need 0 <= z0 <= z1, got z0={query.z0}, z1={query.z1}")
    r = query.r
    if not 0.0 < r < 1.0:
        raise DomainError(f"closed form requires 0 < beta/alpha < 1, got {r}")
    rz1 = r ** query.z1
    return (r ** query.z0 - rz1) / (1.0 - rz1)


def expected_duration(query: WalkClosedFormQuery) -> float:
    """Closed-form duration D = m/(alpha-beta) * (1-r^a)/(1-r^m) + a/(alpha-beta).

    Evaluated exactly as written. Note the sign convention: at a = m this
    yields 2m/(alpha-beta) rather than 0; oracle_duration gives the exact mean
    absorption time of the same walk.
    """
    if not 0 <= query.a <= query.m:
        raise ParameterError(f"need 0 <= a <= m, got a={query.a}, m={query.m}")
    if query.alpha <= query.beta:
        raise DomainError("duration form requires alpha > beta")
    r = query.r
    gap = query.alpha - query.beta
    if query.m == 0:
        return 0.0
    return query.m / gap * (1.0 - r ** query.a) / (1.0 - r ** query.m) + query.a / gap


def oracle_duration(query: WalkClosedFormQuery) -> float:
    """Exact expected absorption time from a, by solving the tridiagonal system.

    E_j = 1 + alpha E_{j+1} + beta E_{j-1} for 0 < j < m, E_0 = E_m = 0
    (alpha + beta = 1 assumed, matching the closed form's walk).
    """
    if not 0 <= query.a <= query.m:
        raise ParameterError(f"need 0 <= a <= m, got a={query.a}, m={query.m}")
    m = query.m
    if query.a in (0, m):
        return 0.0
    alpha, beta = query.alpha, query.beta
    size = m - 1
    # Thomas algorithm on -beta E_{j-1} + E_j - alpha E_{j+1} = 1
    cp = np.zeros(size)
    dp = np.zeros(size)
    cp[0] = -alpha
    dp[0] = 1.0
    for i in range(1, size):
        denom = 1.0 - (-beta) * cp[i - 1]
        cp[i] = -alpha / denom
        dp[i] = (1.0 + beta * dp[i - 1]) / denom
    e = np.zeros(size)
    e[-1] = dp[-1]
    for i in range(size - 2, -1, -1):
        e[i] = dp[i] - cp[i] * e[i + 1]
    return float(e[query.a - 1])
