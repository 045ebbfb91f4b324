"""Exact closed forms for the urn equalization probability.

An urn holds ``black`` and ``white`` balls; each draw returns the ball plus
one more of the same color.  The probability that the counts are ever equal
has three algebraically identical closed forms, all computed here in exact
rational arithmetic:

* ``equalization_probability`` -- twice the Beta(b, w) CDF at 1/2, with the
  CDF expanded as a binomial tail sum over ``n = b + w - 1`` fair-coin
  tosses (Pearson's identity for integer shape parameters);
* ``equalization_probability_binomial`` -- the head sum
  ``2^-(b+w-2) * sum_{j<=w-1} C(b+w-1, j)``;
* ``equalization_probability_complement`` -- one minus the middle block
  ``2^-(b+w-1) * sum_{w<=j<=b-1} C(b+w-1, j)``.

Everything is a pure function of its inputs; all returned values are
immutable and reduced to lowest terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "UrnConfig",
    "ExactProbability",
    "BetaParams",
    "binomial_coefficient",
    "beta_density",
    "beta_cdf_rational",
    "beta_cdf_real",
    "equalization_probability",
    "equalization_probability_binomial",
    "equalization_probability_complement",
]


def _require_positive_int(value: object, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an int, got {type(value).__name__}")
    if value < 1:
        raise DomainError(f"{name} must be >= 1, got {value}")
    return value


@dataclass(frozen=True, slots=True)
class UrnConfig:
    """Initial urn contents: ``black`` and ``white`` ball counts, both >= 1."""

    black: int
    white: int

    def __post_init__(self) -> None:
        _require_positive_int(self.black, "black")
        _require_positive_int(self.white, "white")

    @property
    def total(self) -> int:
        return self.black + self.white

    @property
    def initial_excess(self) -> int:
        """Starting value of the excess process S = black - white."""
        return self.black - self.white

    def swapped(self) -> "UrnConfig":
        """The color-relabelled urn (white for black)."""
        return UrnConfig(black=self.white, white=self.black)


@dataclass(frozen=True, slots=True)
class ExactProbability:
    """An arbitrary-precision rational in [0, 1], stored in lowest terms.

    ``Fraction`` canonicalizes on construction, so equality between two
    ``ExactProbability`` values is structural.
    """

    value: Fraction

    def __post_init__(self) -> None:
        if isinstance(self.value, float):
            raise TypeError("ExactProbability requires a Fraction or int, not float")
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if not 0 <= self.value <= 1:
            raise DomainError(f"probability must lie in [0, 1], got {self.value}")

    def as_float(self) -> float:
        return float(self.value)

    def rational_str(self) -> str:
        """Render as ``"num/den"``, always with an explicit denominator."""
        return f"{self.value.numerator}/{self.value.denominator}"

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.rational_str()


@dataclass(frozen=True, slots=True)
class BetaParams:
    """Integer shape parameters (b, w) of a Beta(b, w) distribution."""

    b: int
    w: int

    def __post_init__(self) -> None:
        _require_positive_int(self.b, "b")
        _require_positive_int(self.w, "w")


def binomial_coefficient(n: int, k: int) -> int:
    """C(n, k) as an exact arbitrary-precision integer.

    Unlike ``math.comb`` this refuses k > n instead of returning 0: callers
    here always mean a term of an existing row of Pascal's triangle.
    """
    if not isinstance(n, int) or not isinstance(k, int):
        raise DomainError("n and k must be ints")
    if n < 0 or k < 0:
        raise DomainError(f"n and k must be nonnegative, got n={n}, k={k}")
    if k > n:
        raise DomainError(f"k must be <= n, got n={n}, k={k}")
    return math.comb(n, k)


def _integer_beta_normalizer(b: int, w: int) -> int:
    # Gamma(b+w) / (Gamma(b) Gamma(w)) = (b+w-1)! / ((b-1)! (w-1)!), an integer
    # for integer shapes; no transcendental evaluation needed.
    return (b + w - 1) * math.comb(b + w - 2, b - 1)


def beta_density(params: BetaParams, p: float) -> float:
    """Beta(b, w) density at ``p``: ``norm * p^(b-1) * (1-p)^(w-1)``.

    The normalizer is computed as an exact integer and the product evaluated
    directly; if that underflows or overflows, the value is recovered from
    log space.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly in (0, 1), got {p}")
    b, w = params.b, params.w
    norm = _integer_beta_normalizer(b, w)
    try:
        direct = float(norm) * p ** (b - 1) * (1.0 - p) ** (w - 1)
    except OverflowError:
        direct = math.inf
    if 0.0 < direct < math.inf:
        return direct
    log_density = (
        math.lgamma(b + w)
        - math.lgamma(b)
        - math.lgamma(w)
        + (b - 1) * math.log(p)
        + (w - 1) * math.log1p(-p)
    )
    return math.exp(log_density)


def _as_exact_fraction(x: object, name: str = "x") -> Fraction:
    if isinstance(x, float):
        raise TypeError(
            f"{name} must be an exact rational (Fraction, int, or string like '1/2'); "
            "floats carry binary rounding and are refused"
        )
    try:
        return Fraction(x)  # type: ignore[arg-type]
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} is not a rational number: {x!r}") from exc


def beta_cdf_rational(params: BetaParams, x: Fraction | int | str) -> ExactProbability:
    """Beta(b, w) CDF at rational ``x``, exactly.

    For integer shapes the CDF equals the probability that at least ``b`` of
    ``n = b + w - 1`` independent Bernoulli(x) trials succeed:

        F(x) = sum_{j=b}^{n} C(n, j) x^j (1-x)^(n-j)

    evaluated term by term in integer arithmetic over the common denominator
    ``q^n`` (with x = p/q in lowest terms).
    """
    frac = _as_exact_fraction(x)
    if not 0 <= frac <= 1:
        raise DomainError(f"x must lie in [0, 1], got {frac}")
    if frac == 0:
        return ExactProbability(Fraction(0))
    if frac == 1:
        return ExactProbability(Fraction(1))
    b, w = params.b, params.w
    n = b + w - 1
    p, q = frac.numerator, frac.denominator
    qp = q - p
    coeff = math.comb(n, b)
    x_pow = p**b
    y_pow = qp ** (n - b)
    total = 0
    for j in range(b, n + 1):
        total += coeff * x_pow * y_pow
        if j < n:
            coeff = coeff * (n - j) // (j + 1)
            x_pow *= p
            y_pow //= qp
    return ExactProbability(Fraction(total, q**n))


def beta_cdf_real(params: BetaParams, x: float) -> float:
    """Floating-point Beta(b, w) CDF at ``x``.

    Each binomial term is evaluated in log space (log-gamma) and the terms
    are summed in ascending magnitude, which avoids overflow at large n and
    keeps the result within 1e-12 relative error of the rational value for
    b + w <= 200.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    b, w = params.b, params.w
    n = b + w - 1
    log_x = math.log(x)
    log_1mx = math.log1p(-x)
    lg_full = math.lgamma(n + 1)
    log_terms = [
        lg_full
        - math.lgamma(j + 1)
        - math.lgamma(n - j + 1)
        + j * log_x
        + (n - j) * log_1mx
        for j in range(b, n + 1)
    ]
    log_terms.sort()
    total = 0.0
    for lt in log_terms:
        total += math.exp(lt)
    return min(total, 1.0)


def equalization_probability(config: UrnConfig) -> ExactProbability:
    """Probability the urn ever holds equal black and white counts.

    For black > white this is twice the Beta(black, white) CDF at 1/2.  An
    urn already equal counts as equalized (probability 1), and black < white
    is handled by relabelling the colors.
    """
    b, w = config.black, config.white
    if b == w:
        return ExactProbability(Fraction(1))
    if b < w:
        return equalization_probability(config.swapped())
    cdf_half = beta_cdf_rational(BetaParams(b, w), Fraction(1, 2))
    return ExactProbability(2 * cdf_half.value)


def _require_strict_majority(config: UrnConfig) -> tuple[int, int]:
    if config.black <= config.white:
        raise DomainError(
            f"this form requires black > white, got black={config.black}, "
            f"white={config.white}"
        )
    return config.black, config.white


def equalization_probability_binomial(config: UrnConfig) -> ExactProbability:
    """Head-sum form: ``2^-(b+w-2) * sum_{j=0}^{w-1} C(b+w-1, j)``.

    Sums w terms, so it is the cheap form when white is small.
    """
    b, w = _require_strict_majority(config)
    n = b + w - 1
    coeff = 1
    total = 0
    for j in range(w):
        total += coeff
        coeff = coeff * (n - j) // (j + 1)
    return ExactProbability(Fraction(total, 2 ** (b + w - 2)))


def equalization_probability_complement(config: UrnConfig) -> ExactProbability:
    """Complement form: ``1 - 2^-(b+w-1) * sum_{j=w}^{b-1} C(b+w-1, j)``.

    Sums b - w terms, so it is the cheap form when the majority is slim.
    """
    b, w = _require_strict_majority(config)
    n = b + w - 1
    coeff = math.comb(n, w)
    total = 0
    for j in range(w, b):
        total += coeff
        coeff = coeff * (n - j) // (j + 1)
    return ExactProbability(1 - Fraction(total, 2 ** (b + w - 1)))
