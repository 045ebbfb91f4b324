"""Exact finite-horizon first-passage probabilities for the urn.

The excess process S_n = black_n - white_n moves +1 with probability
``black/total`` and -1 otherwise, the counts growing by one ball per draw.
``first_passage_dp`` computes the exact distribution of the first time S
hits a target level, by forward dynamic programming over (step, number of
black draws so far).  ``enumerate_sequences`` brute-forces all draw
sequences and is the independent cross-check for the DP and for
exchangeability properties.

All probabilities are exact ``Fraction`` values.  Internally each DP row n
keeps integer numerators over the common denominator
``prod_{i<n} (total + i)``, so no per-cell reduction is needed; reduction
happens once per emitted probability.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .exact import UrnConfig

__all__ = [
    "DPTable",
    "SequenceProbability",
    "first_passage_dp",
    "enumerate_sequences",
    "marginal_black_distribution",
    "estimate_dp_memory_bytes",
    "max_feasible_horizon",
    "resolve_memory_budget",
    "DEFAULT_MEMORY_BUDGET_BYTES",
    "MEMORY_BUDGET_ENV_VAR",
    "MAX_ENUMERATION_STEPS",
]

DEFAULT_MEMORY_BUDGET_BYTES = 256 * 1024 * 1024
MEMORY_BUDGET_ENV_VAR = "POLYA_URN_DP_MEMORY_BYTES"

# 2^n sequences; past 20 the enumeration is no longer a practical oracle.
MAX_ENUMERATION_STEPS = 20


@dataclass(frozen=True)
class DPTable:
    """First-passage distribution of S to ``target_diff`` up to ``horizon``.

    ``hit_pmf[n]`` is the exact P(tau = n); ``cumulative`` is P(tau <= horizon).
    """

    config: UrnConfig
    target_diff: int
    horizon: int
    hit_pmf: tuple[Fraction, ...]
    cumulative: Fraction = field(init=False)

    def __post_init__(self) -> None:
        if len(self.hit_pmf) != self.horizon + 1:
            raise DomainError(
                f"hit_pmf must have horizon+1 entries, got {len(self.hit_pmf)}"
            )
        total = Fraction(0)
        parity = abs(self.config.initial_excess - self.target_diff) % 2
        for n, p in enumerate(self.hit_pmf):
            if p < 0:
                raise DomainError(f"P(tau={n}) must be >= 0, got {p}")
            if n % 2 != parity and p != 0:
                raise DomainError(
                    f"P(tau={n}) must vanish: S moves by 1 per step, so tau has "
                    f"the parity of |S_0 - target| = {parity}"
                )
            total += p
        if total > 1:
            raise DomainError(f"hit probabilities sum to {total} > 1")
        object.__setattr__(self, "cumulative", total)

    def cumulative_through(self, n: int) -> Fraction:
        """P(tau <= n) for any n <= horizon."""
        if not 0 <= n <= self.horizon:
            raise DomainError(f"n must lie in [0, {self.horizon}], got {n}")
        return sum(self.hit_pmf[: n + 1], Fraction(0))


@dataclass(frozen=True)
class SequenceProbability:
    """One draw sequence ('B'/'W' per step) and its exact probability."""

    draws: str
    probability: Fraction


def resolve_memory_budget(memory_budget: int | None) -> int:
    """Budget in bytes: the argument, else the environment override, else default."""
    if memory_budget is not None:
        if memory_budget < 1:
            raise DomainError(f"memory budget must be positive, got {memory_budget}")
        return memory_budget
    env = os.environ.get(MEMORY_BUDGET_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
        except ValueError as exc:
            raise DomainError(
                f"{MEMORY_BUDGET_ENV_VAR} must be an integer byte count, got {env!r}"
            ) from exc
        if value < 1:
            raise DomainError(f"{MEMORY_BUDGET_ENV_VAR} must be positive, got {value}")
        return value
    return DEFAULT_MEMORY_BUDGET_BYTES


def estimate_dp_memory_bytes(config: UrnConfig, horizon: int) -> int:
    """Rough peak-memory estimate for ``first_passage_dp`` at this horizon.

    Row n of the DP holds n+1 integer numerators whose bit length is bounded
    by that of the common denominator ``prod_{i<n}(total+i)``; two adjacent
    rows plus the emitted pmf dominate the footprint.  CPython stores ints
    in 30-bit digits with ~28 bytes of object overhead.
    """
    if horizon < 0:
        raise DomainError(f"horizon must be >= 0, got {horizon}")
    t = config.total
    denom_bits = (math.lgamma(t + horizon) - math.lgamma(t)) / math.log(2)
    int_bytes = 28 + 4 * math.ceil(denom_bits / 30)
    rows = 2 * (horizon + 1) * (int_bytes + 8)
    pmf = (horizon + 1) * (2 * int_bytes + 56)
    return int(rows + pmf)


def max_feasible_horizon(config: UrnConfig, memory_budget: int | None = None) -> int:
    """Largest horizon whose estimated DP footprint fits the budget."""
    budget = resolve_memory_budget(memory_budget)
    if estimate_dp_memory_bytes(config, 0) > budget:
        return 0
    lo, hi = 0, 1
    while estimate_dp_memory_bytes(config, hi) <= budget:
        lo, hi = hi, hi * 2
        if hi > 100_000_000:
            return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if estimate_dp_memory_bytes(config, mid) <= budget:
            lo = mid
        else:
            hi = mid
    return lo


def first_passage_dp(
    config: UrnConfig,
    target_diff: int,
    horizon: int,
    memory_budget: int | None = None,
) -> DPTable:
    """Exact P(tau = n) for n <= horizon, tau the first time S hits the target.

    State (n, k) is "k black draws after n steps", reachable with S never
    having touched the target before step n; S(n, k) = S_0 + 2k - n.  A state
    sitting on the target contributes its mass to P(tau = n) and is pruned
    from further transitions.  If the urn starts on the target, tau = 0.

    The target may be any integer, including negative levels ("ever k more
    white than black"), for which no closed form is exported; the DP and the
    Monte Carlo estimators are the supported route.
    """
    if horizon < 0:
        raise DomainError(f"horizon must be >= 0, got {horizon}")
    budget = resolve_memory_budget(memory_budget)
    estimate = estimate_dp_memory_bytes(config, horizon)
    if estimate > budget:
        feasible = max_feasible_horizon(config, budget)
        raise ResourceLimitError(
            f"horizon {horizon} needs ~{estimate} bytes, over the budget of "
            f"{budget}; largest feasible horizon is ~{feasible} "
            f"(override via {MEMORY_BUDGET_ENV_VAR} or memory_budget=)"
        )

    b, w = config.black, config.white
    s0 = config.initial_excess
    m = target_diff
    pmf: list[Fraction] = [Fraction(0)] * (horizon + 1)

    if s0 == m:
        pmf[0] = Fraction(1)
        return DPTable(config, m, horizon, tuple(pmf))

    # numerators[k] / denom = P(n steps, k black draws, target untouched)
    numerators: list[int] = [1]
    denom = 1
    for n in range(horizon + 1):
        hit_twice_k = m - s0 + n  # S(n, k) == m  <=>  2k == m - s0 + n
        if hit_twice_k % 2 == 0 and 0 <= hit_twice_k // 2 < len(numerators):
            k = hit_twice_k // 2
            if numerators[k]:
                pmf[n] = Fraction(numerators[k], denom)
                numerators[k] = 0
        if n == horizon:
            break
        nxt = [0] * (n + 2)
        for k, mass in enumerate(numerators):
            if mass:
                nxt[k + 1] += mass * (b + k)
                nxt[k] += mass * (w + n - k)
        numerators = nxt
        denom *= b + w + n

    return DPTable(config, m, horizon, tuple(pmf))


def _sequence_numerator(config: UrnConfig, n: int, blacks: int) -> int:
    """Unnormalized weight of any length-n sequence with the given black count."""
    b, w = config.black, config.white
    num = 1
    for i in range(blacks):
        num *= b + i
    for i in range(n - blacks):
        num *= w + i
    return num


def _step_denominator(config: UrnConfig, n: int) -> int:
    d = 1
    for i in range(n):
        d *= config.total + i
    return d


def enumerate_sequences(config: UrnConfig, n: int) -> list[SequenceProbability]:
    """All 2^n draw sequences of length n with exact probabilities.

    Every sequence's probability depends only on its black count (the draws
    are exchangeable), but each of the 2^n orderings is materialized so that
    callers can verify exactly that.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n > MAX_ENUMERATION_STEPS:
        raise ResourceLimitError(
            f"enumeration is 2^n; n={n} exceeds the limit of {MAX_ENUMERATION_STEPS}"
        )
    denom = _step_denominator(config, n)
    by_count = [
        Fraction(_sequence_numerator(config, n, blacks), denom)
        for blacks in range(n + 1)
    ]
    out = []
    for bits in range(1 << n):
        blacks = bits.bit_count()
        draws = "".join("B" if (bits >> i) & 1 else "W" for i in range(n))
        out.append(SequenceProbability(draws, by_count[blacks]))
    return out


def marginal_black_distribution(config: UrnConfig, n: int) -> dict[int, Fraction]:
    """Exact pmf of the number of black draws in n steps.

    P(k blacks) = C(n, k) times the probability of any single sequence with
    k blacks; the result sums to exactly 1.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    denom = _step_denominator(config, n)
    return {
        k: Fraction(math.comb(n, k) * _sequence_numerator(config, n, k), denom)
        for k in range(n + 1)
    }
