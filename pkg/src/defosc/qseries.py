"""q-Pochhammer products, basic hypergeometric series and little q-Jacobi values.

All arguments in scope are real; negative q is fully supported.  No complex
arithmetic is used: parameter pairs that would individually be complex are
always consumed through their real pairwise products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateParameterError, DivergenceError, ParameterDomainError

__all__ = [
    "q_pochhammer",
    "multi_pochhammer",
    "little_q_jacobi",
    "HyperSeriesSpec",
    "HyperSeriesResult",
    "basic_hypergeometric",
    "generalized_factorial_closed",
    "normalization_series_closed",
]

_INF_TOL = 1e-17
_INF_MAX_TERMS = 100_000


def q_pochhammer(a: float, q: float, n: int | float | None) -> float:
    """(a; q)_n = prod_{k<n} (1 - a q^k); n = None or math.inf gives the full product."""
    if n is None or n == math.inf:
        if not (0.0 < abs(q) < 1.0):
            raise ParameterDomainError(
                f"infinite product requires 0 < |q| < 1, got q={q}"
            )
        result = 1.0
        factor = a
        for _ in range(_INF_MAX_TERMS):
            result *= 1.0 - factor
            factor *= q
            if abs(factor) < _INF_TOL:
                break
        return result
    if not isinstance(n, int) or n < 0:
        raise ParameterDomainError(f"n must be a nonnegative integer or inf, got {n!r}")
    result = 1.0
    for k in range(n):
        result *= 1.0 - a * q**k
    return result


def multi_pochhammer(values: tuple[float, ...], q: float, n: int | float | None) -> float:
    """(a_1, ..., a_r; q)_n = prod_i (a_i; q)_n."""
    result = 1.0
    for a in values:
        result *= q_pochhammer(a, q, n)
    return result


def _q_binomial(n: int, j: int, q: float) -> float:
    """Gaussian binomial (q;q)_n / ((q;q)_j (q;q)_{n-j})."""
    num = 1.0
    for k in range(j):
        num *= (1.0 - q ** (n - k)) / (1.0 - q ** (k + 1))
    return num


def little_q_jacobi(n: int, x: float, a: float, b: float, q: float) -> float:
    """Value of the monic-normalized little q-Jacobi polynomial p_n(x; a, b).

    Terminating sum

        p_n(x) = sum_{j=0}^{n} [n,j]_q (abq^{n+1};q)_j / (aq;q)_j
                 * q^{binom(j+1,2) - n j} (-x)^j,

    normalized so that p_0 = 1 and p_n(0) = 1.  Satisfies the monic-form
    recurrence -x p_n = A_n p_{n+1} - (A_n + C_n) p_n + C_n p_{n-1}.
    """
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    if not (0.0 < abs(q) < 1.0):
        raise ParameterDomainError(f"little_q_jacobi requires 0 < |q| < 1, got q={q}")
    total = 0.0
    for j in range(n + 1):
        denom = q_pochhammer(a * q, q, j)
        if denom == 0.0:
            raise DegenerateParameterError(
                f"(aq; q)_{j} = 0 at a={a}, q={q}: polynomial undefined"
            )
        term = (
            _q_binomial(n, j, q)
            * q_pochhammer(a * b * q ** (n + 1), q, j)
            / denom
            * q ** (j * (j + 1) // 2 - n * j)
            * (-x) ** j
        )
        total += term
    return total


@dataclass(frozen=True)
class HyperSeriesSpec:
    """Arguments of a basic hypergeometric series r_phi_s.

    numerator/denominator hold the upper and lower parameters; q is the base,
    z the argument.  The standard convention multiplies term k by
    ((-1)^k q^binom(k,2))^(1 + s - r).
    """

    numerator: tuple[float, ...]
    denominator: tuple[float, ...]
    q: float
    z: float
    tol: float = 1e-14
    max_terms: int = 10_000

    def __post_init__(self) -> None:
        if not (0.0 < abs(self.q) < 1.0):
            raise ParameterDomainError(f"require 0 < |q| < 1, got q={self.q}")
        if self.tol <= 0.0:
            raise ParameterDomainError(f"tol must be positive, got {self.tol}")
        if self.max_terms < 1:
            raise ParameterDomainError(f"max_terms must be >= 1, got {self.max_terms}")


@dataclass(frozen=True)
class HyperSeriesResult:
    value: float
    terms_used: int
    tail_estimate: float


def basic_hypergeometric(spec: HyperSeriesSpec) -> HyperSeriesResult:
    """Sum an r_phi_s series with tail control and divergence detection.

    Stops once two consecutive terms fall below tol relative to the partial
    sum.  Declares divergence when the term ratio stays >= 1 and keeps
    growing for three consecutive steps, or when max_terms is exhausted.
    """
    exponent = 1 + len(spec.denominator) - len(spec.numerator)
    q, z = spec.q, spec.z
    term = 1.0
    total = 1.0
    small_streak = 0
    growth_streak = 0
    prev_ratio = None
    for k in range(spec.max_terms):
        num = 1.0
        for a in spec.numerator:
            num *= 1.0 - a * q**k
        den = 1.0 - q ** (k + 1)
        for b in spec.denominator:
            den *= 1.0 - b * q**k
        if den == 0.0:
            raise DegenerateParameterError(
                f"denominator Pochhammer factor vanishes at k={k}"
            )
        multiplier = num / den * z * (-(q**k)) ** exponent
        next_term = term * multiplier
        if next_term == 0.0:
            # a numerator factor hit zero: the series terminates here
            return HyperSeriesResult(total, k + 1, 0.0)
        ratio = abs(next_term) / abs(term)
        if ratio >= 1.0 and prev_ratio is not None and ratio >= prev_ratio:
            growth_streak += 1
            if growth_streak >= 3:
                raise DivergenceError(
                    f"series diverges: term ratio grew to {ratio} at k={k}"
                )
        else:
            growth_streak = 0
        prev_ratio = ratio
        term = next_term
        total += term
        if abs(term) <= spec.tol * max(1.0, abs(total)):
            small_streak += 1
            if small_streak >= 2:
                tail = abs(term) / (1.0 - ratio) if ratio < 1.0 else abs(term)
                return HyperSeriesResult(total, k + 2, tail)
        else:
            small_streak = 0
    raise DivergenceError(
        f"series did not converge within {spec.max_terms} terms"
    )


def generalized_factorial_closed(a: float, b: float, q: float, n: int) -> float:
    """prod_{k<n} 2 b_k^2 for the little q-Jacobi oscillator, via Pochhammer products.

    Closed form

        2^n a^n q^(n^2) (aq;q)_n (abq;q)_n (q;q)_n (bq;q)_n
        / ((abq;q)_{2n} (abq^2;q)_{2n}),

    an independent route to the same product the coherent-state module
    accumulates from A_k C_{k+1} factors.
    """
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    if not (0.0 < abs(q) < 1.0):
        raise ParameterDomainError(f"require 0 < |q| < 1, got q={q}")
    ab = a * b
    den = q_pochhammer(ab * q, q, 2 * n) * q_pochhammer(ab * q**2, q, 2 * n)
    if den == 0.0:
        raise DegenerateParameterError("Pochhammer denominator vanishes")
    num = (
        2.0**n
        * a**n
        * q ** (n * n)
        * q_pochhammer(a * q, q, n)
        * q_pochhammer(ab * q, q, n)
        * q_pochhammer(q, q, n)
        * q_pochhammer(b * q, q, n)
    )
    return num / den


def normalization_series_closed(
    a: float, b: float, q: float, r2: float, n_terms: int
) -> float:
    """Partial sum sum_{m<n_terms} r2^m / prod_{k<m}(2 b_k^2), closed-form route.

    Cross-check path for the coherent-state normalization: each coefficient
    comes from generalized_factorial_closed rather than from numerically
    accumulated recurrence products.  May overflow to inf for decaying b_k
    at large n_terms; callers compare partial sums at a safe depth.
    """
    if n_terms < 1:
        raise ParameterDomainError(f"n_terms must be >= 1, got {n_terms}")
    if r2 < 0.0:
        raise ParameterDomainError(f"r2 must be >= 0, got {r2}")
    total = 0.0
    for m in range(n_terms):
        total += r2**m / generalized_factorial_closed(a, b, q, m)
    return total
