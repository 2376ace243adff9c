"""Binomial tail-bound evaluators and Wilson score confidence intervals."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import ndtri

from .errors import DomainError, ParameterError


@dataclass(frozen=True)
class TailBoundQuery:
    """Inputs for a binomial tail bound on B(N, p)."""

    N: int
    p: float
    theta: float = 0.0
    lam: float = 1.0


def chernoff(query: TailBoundQuery, which: str) -> float:
    """Evaluate a multiplicative tail bound for the binomial B(N, p).

    which="lower": bound on P(B <= (1-theta)Np), value exp(-theta^2 Np / 2).
    which="upper": bound on P(B >= (1+theta)Np), value exp(-theta^2 Np / 3).
    which="mult":  bound on P(B >= lam Np), value (e/lam)^(lam Np).
    """
    if query.N < 0 or not 0.0 <= query.p <= 1.0:
        raise ParameterError("need N >= 0 and p in [0,1]")
    mean = query.N * query.p
    if which == "lower":
        if not 0.0 <= query.theta <= 1.0:
            raise DomainError(f"theta must lie in [0,1], got {query.theta}")
        return math.exp(-query.theta ** 2 * mean / 2.0)
    if which == "upper":
        if not 0.0 <= query.theta <= 1.0:
            raise DomainError(f"theta must lie in [0,1], got {query.theta}")
        return math.exp(-query.theta ** 2 * mean / 3.0)
    if which == "mult":
        if query.lam <= 0.0:
            raise DomainError(f"lambda must be positive, got {query.lam}")
        return (math.e / query.lam) ** (query.lam * mean)
    raise ParameterError(f"unknown bound kind {which!r}")


def binomial_ci(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Chosen over the Wald interval because it stays informative at p_hat in
    {0, 1}, which occurs routinely for strongly biased processes.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ParameterError(f"successes {successes} outside [0, {trials}]")
    if not 0.0 < confidence < 1.0:
        raise ParameterError(f"confidence must lie in (0,1), got {confidence}")
    z = float(ndtri(0.5 + confidence / 2.0))
    phat = successes / trials
    z2n = z * z / trials
    denom = 1.0 + z2n
    center = (phat + z2n / 2.0) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2n / (4.0 * trials)) / denom
    # at phat in {0, 1} the interval endpoint is exactly 0 or 1; snap the
    # sqrt rounding residue away
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return (lo, hi)
