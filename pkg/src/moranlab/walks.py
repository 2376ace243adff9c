"""Regime-switch walk models: boundary-value recurrences and a chain oracle.

Each spec describes a walk on {0..m} with absorbing ends (p_0 = 1, p_m = 0 are
the probabilities of reaching 0 first). At interior j the step decomposes as

  up (j+1)  |  up-switch (hop into a nested spec at j)  |  down (j-1)
  down-cross (j-1, dropping to layer 0)  |  q-switch (irrevocable move to the
  constant-bias chain, landing at j or j-1 per the spec's landing convention)

The weights form a probability decomposition row by row. solve_recurrence
eliminates each layer tridiagonally (layer 0 first; layer 1 consumes it);
simulate_spec runs the identical chain by Monte Carlo, so the two sides are
independent routes to the same numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError, ParameterError, SpecificationError

# coefficient kinds, shared with the simulation kernel
K_UP = 0
K_UP_SWITCH = 1
K_DOWN_STAY = 2
K_DOWN_CROSS = 3
K_Q_SWITCH = 4

_ROW_TOL = 1e-12

AT_J = "at_j"
AT_J_MINUS_1 = "at_j_minus_1"


def q_vector(s: float, m: int) -> np.ndarray:
    """Absorption-at-0 probabilities of the constant-bias walk: q_j = (s^-j - s^-m)/(1 - s^-m)."""
    if s <= 1.0:
        raise DomainError(f"q_vector requires s > 1, got {s}")
    if m < 1:
        raise ParameterError(f"m must be >= 1, got {m}")
    j = np.arange(m + 1, dtype=np.float64)
    sm = s ** (-float(m))
    return (s ** (-j) - sm) / (1.0 - sm)


@dataclass(frozen=True)
class RegimeWalkSpec:
    """Coefficients of a (possibly two-layer) regime-switch walk."""

    m: int
    s: float
    coeffs: np.ndarray  # shape (layers, 5, m+1)
    switch_landing: str = AT_J
    nested: "tuple[RegimeWalkSpec, int] | None" = None  # (spec, entry layer)
    description: str = ""

    @property
    def layers(self) -> int:
        return int(self.coeffs.shape[0])

    def __post_init__(self):
        if self.m < 2:
            raise ParameterError(f"m must be >= 2, got {self.m}")
        if self.switch_landing not in (AT_J, AT_J_MINUS_1):
            raise ParameterError(f"unknown switch landing {self.switch_landing!r}")
        c = self.coeffs
        if c.shape != (c.shape[0], 5, self.m + 1):
            raise SpecificationError(f"coefficient array has shape {c.shape}")
        for lay in range(c.shape[0]):
            for j in range(1, self.m):
                row = c[lay, :, j]
                if np.any(row < -_ROW_TOL) or np.any(row > 1.0 + _ROW_TOL):
                    raise SpecificationError(
                        f"coefficient outside [0,1] at layer {lay}, j={j}: {row}")
                total = row.sum()
                if abs(total - 1.0) > _ROW_TOL:
                    raise SpecificationError(
                        f"row does not sum to 1 at layer {lay}, j={j}: sum={total!r}")
        if np.any(c[:, K_UP_SWITCH, :] > 0.0) and self.nested is None:
            raise SpecificationError("up-switch weight present but no nested spec attached")
        if self.nested is not None:
            nspec, nlayer = self.nested
            if nspec.nested is not None:
                raise SpecificationError("nested specs cannot themselves nest")
            if not 0 <= nlayer < nspec.layers:
                raise SpecificationError(f"nested entry layer {nlayer} out of range")


@dataclass(frozen=True)
class RecurrenceSolution:
    """Solved p-vectors (one per layer) with the verified substitution residual."""

    p: np.ndarray  # shape (layers, m+1)
    residual: float
    psi: np.ndarray | None = None  # nested-source values used, if any

    @property
    def vector(self) -> np.ndarray:
        return self.p[0]

    @property
    def p1(self) -> float:
        return float(self.p[0, 1])


def _landed_q(spec: RegimeWalkSpec) -> np.ndarray:
    q = q_vector(spec.s, spec.m)
    if spec.switch_landing == AT_J:
        return q
    landed = np.empty_like(q)
    landed[1:] = q[:-1]
    landed[0] = 1.0
    return landed


def _thomas(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray,
            rhs: np.ndarray) -> np.ndarray:
    n = len(diag)
    cp = np.zeros(n)
    dp = np.zeros(n)
    cp[0] = upper[0] / diag[0]
    dp[0] = rhs[0] / diag[0]
    for i in range(1, n):
        denom = diag[i] - lower[i] * cp[i - 1]
        cp[i] = upper[i] / denom
        dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / denom
    x = np.zeros(n)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def solve_recurrence(spec: RegimeWalkSpec) -> RecurrenceSolution:
    """Solve the boundary-value recurrence by tridiagonal elimination.

    Layer 0 closes in itself and is solved first; layer 1 consumes its values
    through the down-cross terms. A nested spec (up-switch source) is solved
    recursively and its entry-layer vector feeds the source term.
    """
    m = spec.m
    qland = _landed_q(spec)
    psi = None
    if spec.nested is not None:
        nspec, nlayer = spec.nested
        psi = solve_recurrence(nspec).p[nlayer]
    p = np.zeros((spec.layers, m + 1))
    p[:, 0] = 1.0
    p[:, m] = 0.0
    for lay in range(spec.layers):
        up = spec.coeffs[lay, K_UP, 1:m]
        upsw = spec.coeffs[lay, K_UP_SWITCH, 1:m]
        dstay = spec.coeffs[lay, K_DOWN_STAY, 1:m]
        dcross = spec.coeffs[lay, K_DOWN_CROSS, 1:m]
        qsw = spec.coeffs[lay, K_Q_SWITCH, 1:m]
        rhs = qsw * qland[1:m]
        if psi is not None:
            rhs = rhs + upsw * psi[1:m]
        if lay > 0:
            rhs = rhs + dcross * p[0, 0:m - 1]
        # -dstay_j p_{j-1} + p_j - up_j p_{j+1} = rhs_j, boundaries folded in
        diag = np.ones(m - 1)
        lower = -dstay.copy()
        upper = -up.copy()
        rhs = rhs.copy()
        rhs[0] += dstay[0] * 1.0  # p_0 = 1
        p[lay, 1:m] = _thomas(lower, diag, upper, rhs)
    residual = _substitution_residual(spec, p, qland, psi)
    if not np.all((p > -1e-9) & (p < 1.0 + 1e-9)):
        raise SpecificationError("solution escaped [0,1]; coefficients are inconsistent")
    return RecurrenceSolution(p=np.clip(p, 0.0, 1.0), residual=residual, psi=psi)


def _substitution_residual(spec: RegimeWalkSpec, p: np.ndarray, qland: np.ndarray,
                           psi: np.ndarray | None) -> float:
    worst = 0.0
    for lay in range(spec.layers):
        for j in range(1, spec.m):
            rhs = (spec.coeffs[lay, K_UP, j] * p[lay, j + 1]
                   + spec.coeffs[lay, K_DOWN_STAY, j] * p[lay, j - 1]
                   + spec.coeffs[lay, K_DOWN_CROSS, j] * p[0, j - 1]
                   + spec.coeffs[lay, K_Q_SWITCH, j] * qland[j])
            if psi is not None:
                rhs += spec.coeffs[lay, K_UP_SWITCH, j] * psi[j]
            worst = max(worst, abs(p[lay, j] - rhs))
    return worst


def _blank(layers: int, m: int) -> np.ndarray:
    return np.zeros((layers, 5, m + 1))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


def constant_bias_spec(s: float, m: int) -> RegimeWalkSpec:
    """Plain biased walk (up s/(s+1)); its solution is the gambler closed form."""
    _require(s > 1.0, "constant bias spec needs s > 1")
    c = _blank(1, m)
    c[0, K_UP, 1:m] = s / (s + 1.0)
    c[0, K_DOWN_STAY, 1:m] = 1.0 / (s + 1.0)
    return RegimeWalkSpec(m=m, s=s, coeffs=c, description=f"constant_bias(s={s}, m={m})")


def bdf3(alpha: float, s: float, m: int, switch_landing: str = AT_J) -> RegimeWalkSpec:
    """Birth-Death walk for a start vertex of relative degree alpha (!= 1).

    While the start vertex remains a mutant the up weight is
    s/(s+1+(alpha-1)/j); it leaves on a down-move with probability
    alpha/(j-1+alpha), switching the walk irrevocably to constant bias.
    """
    _require(alpha > 0.0, "alpha must be positive")
    _require(s > 1.0, "s must exceed 1")
    c = _blank(1, m)
    for j in range(1, m):
        a_j = s / (s + 1.0 + (alpha - 1.0) / j)
        eta_j = alpha / (j - 1.0 + alpha)
        _check_unit("bdf3", "up", j, a_j)
        _check_unit("bdf3", "eta", j, eta_j)
        c[0, K_UP, j] = a_j
        c[0, K_DOWN_STAY, j] = (1.0 - a_j) * (1.0 - eta_j)
        c[0, K_Q_SWITCH, j] = (1.0 - a_j) * eta_j
    return RegimeWalkSpec(m=m, s=s, coeffs=c, switch_landing=switch_landing,
                          description=f"bdf3(alpha={alpha}, s={s}, m={m})")


def bdf4(d_y0: float, s: float, m: int, switch_landing: str = AT_J) -> RegimeWalkSpec:
    """Birth-Death walk with one very-low-degree neighbor y0 of the start vertex.

    Up weight s/(s+1+1/(j d(y0))); the switch probability is 1/j.
    """
    _require(d_y0 > 0.0, "d_y0 must be positive")
    _require(s > 1.0, "s must exceed 1")
    c = _blank(1, m)
    for j in range(1, m):
        b_j = s / (s + 1.0 + 1.0 / (j * d_y0))
        eta_j = 1.0 / j
        _check_unit("bdf4", "up", j, b_j)
        c[0, K_UP, j] = b_j
        c[0, K_DOWN_STAY, j] = (1.0 - b_j) * (1.0 - eta_j)
        c[0, K_Q_SWITCH, j] = (1.0 - b_j) * eta_j
    return RegimeWalkSpec(m=m, s=s, coeffs=c, switch_landing=switch_landing,
                          description=f"bdf4(d_y0={d_y0}, s={s}, m={m})")


def dbf2(alpha: float, s: float, m: int, switch_landing: str = AT_J) -> RegimeWalkSpec:
    """Death-Birth walk for a start vertex of relative degree alpha.

    Up weight from the drift s(j-1+alpha) against j; the start vertex leaves
    with weight s/((s+1)j - 1 + alpha).
    """
    _require(alpha > 0.0, "alpha must be positive")
    _require(s > 1.0, "s must exceed 1")
    c = _blank(1, m)
    for j in range(1, m):
        g_j = s * (j - 1.0 + alpha) / (s * (j - 1.0 + alpha) + j)
        eta_j = s / ((s + 1.0) * j - 1.0 + alpha)
        _check_unit("dbf2", "up", j, g_j)
        _check_unit("dbf2", "eta", j, eta_j)
        c[0, K_UP, j] = g_j
        c[0, K_DOWN_STAY, j] = (1.0 - g_j) * (1.0 - eta_j)
        c[0, K_Q_SWITCH, j] = (1.0 - g_j) * eta_j
    return RegimeWalkSpec(m=m, s=s, coeffs=c, switch_landing=switch_landing,
                          description=f"dbf2(alpha={alpha}, s={s}, m={m})")


def dbf3_coupled(d_x1: float, s: float, m: int, switch_landing: str = AT_J) -> RegimeWalkSpec:
    """Death-Birth walk for a bounded-degree start vertex x1, tracking delta = d_X(x1).

    Layer delta in {0,1} carries psi(delta) = (d(x1)-delta)/(s delta + d(x1)-delta).
    Layer 0 is closed; layer 1 can drop to layer 0 on a down-move (the tracked
    neighbor leaving), with weight theta_j = eta_j = s/(sj + j - 1).
    """
    _require(d_x1 >= 1.0, "d_x1 must be >= 1")
    _require(s > 1.0, "s must exceed 1")
    c = _blank(2, m)
    for delta in (0, 1):
        psi = (d_x1 - delta) / (s * delta + d_x1 - delta) if d_x1 > delta else 0.0
        for j in range(1, m):
            denom = s * (j - 1.0) + (j - 1.0) + psi
            g_j = s * (j - 1.0) / denom if denom > 0.0 else 0.0
            eta_j = s / (s * j + j - 1.0)
            theta_j = eta_j
            _check_unit("dbf3", "up", j, g_j)
            _check_unit("dbf3", "eta", j, eta_j)
            c[delta, K_UP, j] = g_j
            rest = 1.0 - g_j
            if delta == 0:
                c[delta, K_DOWN_STAY, j] = rest * (1.0 - eta_j)
            else:
                c[delta, K_DOWN_STAY, j] = rest * (1.0 - eta_j) * (1.0 - theta_j)
                c[delta, K_DOWN_CROSS, j] = rest * (1.0 - eta_j) * theta_j
            c[delta, K_Q_SWITCH, j] = rest * eta_j
    return RegimeWalkSpec(m=m, s=s, coeffs=c, switch_landing=switch_landing,
                          description=f"dbf3_coupled(d_x1={d_x1}, s={s}, m={m})")


def dbf4(d_y0: float, s: float, np_nominal: float, m: int,
         psi: "RegimeWalkSpec | tuple[RegimeWalkSpec, int] | None" = None,
         switch_landing: str = AT_J) -> RegimeWalkSpec:
    """Death-Birth walk with one very-low-degree neighbor y0 of the start vertex.

    Up-moves absorb y0 into the mutant set with weight
    xi_j = d(y0)/(np (j-1) + d(y0)), after which absorption follows the psi
    source (default: the coupled bounded-degree walk, layer 1, with
    d(x1) = d(y0)). The start vertex leaves with weight eta_j = 1/j.
    """
    _require(d_y0 > 0.0, "d_y0 must be positive")
    _require(np_nominal > 0.0, "np_nominal must be positive")
    _require(s > 1.0, "s must exceed 1")
    if psi is None:
        nested = (dbf3_coupled(max(d_y0, 1.0), s, m, switch_landing), 1)
    elif isinstance(psi, RegimeWalkSpec):
        nested = (psi, 0)
    else:
        nested = (psi[0], int(psi[1]))
    cy = 1.0 / (d_y0 + s - 1.0)
    c = _blank(1, m)
    for j in range(1, m):
        lam_j = s * (j + cy) / (s * (j + cy) + j)
        xi_j = d_y0 / (np_nominal * (j - 1.0) + d_y0)
        eta_j = 1.0 / j
        _check_unit("dbf4", "up", j, lam_j)
        _check_unit("dbf4", "xi", j, xi_j)
        c[0, K_UP, j] = lam_j * (1.0 - xi_j)
        c[0, K_UP_SWITCH, j] = lam_j * xi_j
        c[0, K_DOWN_STAY, j] = (1.0 - lam_j) * (1.0 - eta_j)
        c[0, K_Q_SWITCH, j] = (1.0 - lam_j) * eta_j
    return RegimeWalkSpec(m=m, s=s, coeffs=c, switch_landing=switch_landing,
                          nested=nested,
                          description=f"dbf4(d_y0={d_y0}, s={s}, np={np_nominal}, m={m})")


def dbf5(alpha: float, d_y0: float, s: float, m: int,
         switch_landing: str = AT_J) -> RegimeWalkSpec:
    """Death-Birth walk with an atypical start vertex and one low-degree neighbor.

    The printed down weight mu_j = s(alpha + c)/(s(j-1+alpha+c) + j) with
    c = 1/(d(y0)+s-1) is used directly as the down-move probability (its
    description as a conditional leave probability does not match that role;
    kept as printed and flagged in the project notes). eta_j = alpha/(j-1+alpha).
    """
    _require(alpha > 0.0, "alpha must be positive")
    _require(d_y0 > 0.0, "d_y0 must be positive")
    _require(s > 1.0, "s must exceed 1")
    cy = 1.0 / (d_y0 + s - 1.0)
    c = _blank(1, m)
    for j in range(1, m):
        mu_j = s * (alpha + cy) / (s * (j - 1.0 + alpha + cy) + j)
        eta_j = alpha / (j - 1.0 + alpha)
        _check_unit("dbf5", "mu", j, mu_j)
        c[0, K_UP, j] = 1.0 - mu_j
        c[0, K_DOWN_STAY, j] = mu_j * (1.0 - eta_j)
        c[0, K_Q_SWITCH, j] = mu_j * eta_j
    return RegimeWalkSpec(m=m, s=s, coeffs=c, switch_landing=switch_landing,
                          description=f"dbf5(alpha={alpha}, d_y0={d_y0}, s={s}, m={m})")


def _check_unit(family: str, name: str, j: int, value: float) -> None:
    if not -1e-12 <= value <= 1.0 + 1e-12:
        raise SpecificationError(f"{family}: coefficient {name}_{j} = {value!r} escapes [0,1]")


def simulate_spec(spec: RegimeWalkSpec, start: int, runs: int, seed: int,
                  start_layer: int = 0) -> float:
    """Monte Carlo absorption-at-0 probability of the exact chain the spec encodes.

    Up-switches hop into the nested spec's chain; q-switches continue in the
    constant-bias chain from the landing state. Independent oracle for
    solve_recurrence.
    """
    if not 0 < start < spec.m:
        raise ParameterError(f"start must lie strictly inside (0, m), got {start}")
    if runs < 1:
        raise ParameterError("runs must be >= 1")
    if not 0 <= start_layer < spec.layers:
        raise ParameterError(f"start_layer {start_layer} out of range")
    land = 0 if spec.switch_landing == AT_J else 1
    bias = spec.s / (spec.s + 1.0)
    if spec.nested is not None:
        nspec, nlayer = spec.nested
        n_co = nspec.coeffs
        n_land = 0 if nspec.switch_landing == AT_J else 1
        n_bias = nspec.s / (nspec.s + 1.0)
        n_m = nspec.m
        has_nested = True
    else:
        n_co = np.zeros((1, 5, 3))
        n_land, n_bias, n_m, nlayer = 0, bias, spec.m, 0
        has_nested = False
    hits = _kernels.simulate_chain_batch(
        spec.coeffs, land, bias, spec.m, start, start_layer, runs,
        np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
        n_co, n_land, n_bias, n_m, nlayer, has_nested)
    return hits / runs
