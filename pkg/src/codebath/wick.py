"""Exact pairing sums along an error string and the scaling laws they feed.

The enumerator is deliberately brute force: it is the desk-scale oracle the
asymptotic formulas are checked against, so it must stay independent of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .bath import BathSpec
from .errors import ResourceLimitError

MATCHING_HARD_LIMIT = 20   # 19!! ~ 6.5e8 pairings: the absolute ceiling
PROBE_DEFAULT_LIMIT = 16   # 15!! ~ 2e6 pairings: comfortable desk scale


class RegimeLabel(Enum):
    """Spatial-correlation regime of the environment."""

    SHORT_RANGE = "ShortRange"
    CRITICAL = "Critical"
    LONG_RANGE = "LongRange"


def classify_regime(z, s=1.0, tol: float = 1e-12) -> RegimeLabel:
    """Compare z against 1/(s+1): above is short range, equal is critical.

    Fraction (or int) inputs are compared exactly; floats within ``tol`` of
    the boundary count as critical.
    """
    if z <= 0:
        raise ValueError("z must be positive")
    if not 0 < s <= 1:
        raise ValueError("s must lie in (0, 1]")
    if isinstance(z, (Fraction, int)) and isinstance(s, (Fraction, int)):
        boundary = Fraction(1, 1) / (Fraction(s) + 1)
        if z > boundary:
            return RegimeLabel.SHORT_RANGE
        if z == boundary:
            return RegimeLabel.CRITICAL
        return RegimeLabel.LONG_RANGE
    boundary = 1.0 / (float(s) + 1.0)
    if abs(float(z) - boundary) <= tol:
        return RegimeLabel.CRITICAL
    return RegimeLabel.SHORT_RANGE if float(z) > boundary else RegimeLabel.LONG_RANGE


@dataclass(frozen=True)
class MatchingProblem:
    """An even number of distinct integer sites plus the decay exponent z."""

    positions: tuple[int, ...]
    z: float

    def __post_init__(self):
        pos = tuple(self.positions)
        object.__setattr__(self, "positions", pos)
        if len(pos) < 2 or len(pos) % 2:
            raise ValueError("need an even number (>= 2) of positions")
        if any(not isinstance(p, int) or isinstance(p, bool) for p in pos):
            raise ValueError("positions must be integers")
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("positions must be strictly increasing")


def matching_sum(problem: MatchingProblem) -> float:
    """Sum over all (n-1)!! perfect matchings of prod |x_i - x_j|**(-2z).

    Recursion pairs the smallest unmatched site with every partner, so each
    matching is visited exactly once.
    """
    pos = problem.positions
    n = len(pos)
    if n > MATCHING_HARD_LIMIT:
        raise ResourceLimitError(
            f"n = {n} exceeds the enumeration ceiling of {MATCHING_HARD_LIMIT}"
        )
    expo = -2.0 * problem.z
    w = [
        [abs(pos[i] - pos[j]) ** expo if i != j else 0.0 for j in range(n)]
        for i in range(n)
    ]
    used = [False] * n

    def rec(remaining: int, acc: float, lo: int) -> float:
        if remaining == 0:
            return acc
        i = lo
        while used[i]:
            i += 1
        used[i] = True
        wi = w[i]
        total = 0.0
        for j in range(i + 1, n):
            if not used[j]:
                used[j] = True
                total += rec(remaining - 2, acc * wi[j], i + 1)
                used[j] = False
        used[i] = False
        return total

    return rec(n, 1.0, 0)


@dataclass(frozen=True)
class ProbeResult:
    """Per-pair effective weights w(n) = S(n)**(2/n) over a ladder of sizes."""

    z: float
    regime: RegimeLabel
    n_values: tuple[int, ...]
    sums: tuple[float, ...]
    weights: tuple[float, ...]
    increments: tuple[float, ...]
    loglog_slope: float

    @property
    def trend_label(self) -> str:
        return {
            RegimeLabel.SHORT_RANGE: "bounded",
            RegimeLabel.CRITICAL: "logarithmic",
            RegimeLabel.LONG_RANGE: "power_law",
        }[self.regime]


def matching_scaling_probe(n_values, z, allow_large: bool = False) -> ProbeResult:
    """Evaluate the pairing sum on unit-spaced strings and report its trend.

    The label comes from comparing z against 1/2 (the s = 1 criterion); the
    raw weights let callers verify the trend class directly.  Sizes above
    ``PROBE_DEFAULT_LIMIT`` need ``allow_large`` (hard ceiling 20 either way).
    """
    ns = tuple(int(n) for n in n_values)
    if len(ns) < 3:
        raise ValueError("need at least 3 sample sizes to read off a trend")
    if any(n < 2 or n % 2 for n in ns):
        raise ValueError("sample sizes must be even and >= 2")
    ceiling = MATCHING_HARD_LIMIT if allow_large else PROBE_DEFAULT_LIMIT
    if max(ns) > ceiling:
        raise ResourceLimitError(
            f"n = {max(ns)} above probe ceiling {ceiling}"
            + ("" if allow_large else " (pass allow_large=True for n <= 20)")
        )
    ns = tuple(sorted(ns))
    sums = tuple(matching_sum(MatchingProblem(tuple(range(n)), z)) for n in ns)
    weights = tuple(s ** (2.0 / n) for s, n in zip(sums, ns))
    increments = tuple(b - a for a, b in zip(weights, weights[1:]))
    lx = [math.log(n) for n in ns]
    ly = [math.log(wt) for wt in weights]
    mx = sum(lx) / len(lx)
    my = sum(ly) / len(ly)
    slope = sum((x - mx) * (y - my) for x, y in zip(lx, ly)) / sum(
        (x - mx) ** 2 for x in lx
    )
    return ProbeResult(
        z=float(z),
        regime=classify_regime(float(z), 1.0),
        n_values=ns,
        sums=sums,
        weights=weights,
        increments=increments,
        loglog_slope=slope,
    )


def _check_even_L(L) -> int:
    if not isinstance(L, int) or isinstance(L, bool) or L < 2 or L % 2:
        raise ValueError("L must be an even integer >= 2")
    return L


def lambda_bar_sq(spec: BathSpec, L: int) -> float:
    """Effective per-segment contraction weight entering the macroscopic coupling.

    Base value 16 (lam tau / hbar)**2 / (a0**(2(1-z)) a**(2z)); multiplied by
    ln L at z = 1/2 and by L**(1-2z) below it.  Branches on z against 1/2
    (the s = 1 spatial criterion); ln L > 0 is guaranteed by L >= 2.
    """
    _check_even_L(L)
    base = (
        16.0
        * (spec.lam * spec.tau_qec) ** 2
        / (spec.hbar**2 * spec.a0 ** (2.0 * (1.0 - spec.z)) * spec.a ** (2.0 * spec.z))
    )
    regime = classify_regime(spec.z, 1.0)
    if regime is RegimeLabel.SHORT_RANGE:
        return base
    if regime is RegimeLabel.CRITICAL:
        return base * math.log(L)
    return base * L ** (1.0 - 2.0 * spec.z)


def n_paths(L: int) -> int:
    """Exact number of degenerate failure pathways, L * C(L, L/2)."""
    _check_even_L(L)
    if L > 512:
        raise ResourceLimitError("exact path count is guarded at L <= 512")
    return L * math.comb(L, L // 2)


def n_paths_stirling(L: int) -> float:
    """Stirling form sqrt(2L/pi) * 2**L of the exact path count."""
    _check_even_L(L)
    log_val = 0.5 * math.log(2.0 * L / math.pi) + L * math.log(2.0)
    if log_val > 709.0:
        return math.inf
    return math.exp(log_val)
