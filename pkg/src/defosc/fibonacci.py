"""Fibonacci numbers, their deformations, and two exact-arithmetic results.

Two indexing conventions coexist on purpose:

  fib(n)            F_0 = F_1 = 1 (the convention used throughout the rest of
                    this package: 1, 1, 2, 3, 5, 8, ...)
  fib_classical(k)  F_1 = F_2 = 1 with F_0 = 0, so fib(n) = fib_classical(n+1).

The reciprocal-Fibonacci (Filbert) matrix inverse is integer valued in the
classical convention, and the classical reciprocals 1/F_{k+2} = 1, 1/2, 1/3,
1/5, ... are the moment sequence whose Hankel functional orthogonalizes the
golden little q-Jacobi polynomials after the affine calibration computed here
(the calibration scale comes out as the golden ratio).  Both reciprocal
sequences are exposed; berg_moment follows the first convention, only
berg_moment_classical admits a real calibration.
"""

from __future__ import annotations

import contextlib
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import (
    CalibrationError,
    InsufficientMomentsError,
    InternalConsistencyError,
    ParameterDomainError,
    SingularMatrixError,
)

__all__ = [
    "BigRational",
    "GoldenNumber",
    "GOLDEN_Q_EXACT",
    "PHI",
    "THETA0",
    "fib",
    "fib_classical",
    "fib_iterative",
    "gen_fib",
    "ismail_fib",
    "ismail_fib_values",
    "fib_via_chebyshev",
    "NuMomentResult",
    "nu_moments",
    "filbert_matrix",
    "exact_inverse",
    "exact_matmul",
    "is_integer_matrix",
    "berg_moment",
    "berg_moment_classical",
    "MomentFunctional",
    "functional_apply",
    "calibrate_affine",
    "BergReport",
    "berg_orthogonality",
]

# Exact rational carrier.  fractions.Fraction already keeps gcd-reduced
# numerator / positive denominator, which is the whole contract.
BigRational = Fraction

# sinh(THETA0) = 1/2; at this point the deformed Fibonacci sequence becomes
# the integer one and -exp(-2*THETA0) is the golden deformation base.
THETA0 = math.asinh(0.5)


class GoldenNumber:
    """Exact element r + s*sqrt(5) of the quadratic field Q(sqrt 5)."""

    __slots__ = ("r", "s")

    def __init__(self, r, s=0):
        object.__setattr__(self, "r", Fraction(r))
        object.__setattr__(self, "s", Fraction(s))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenNumber is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GoldenNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return GoldenNumber(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GoldenNumber(self.r + o.r, self.s + o.s)

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber(-self.r, -self.s)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GoldenNumber(self.r - o.r, self.s - o.s)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GoldenNumber(
            self.r * o.r + 5 * self.s * o.s, self.r * o.s + self.s * o.r
        )

    __rmul__ = __mul__

    def inverse(self) -> "GoldenNumber":
        # (r + s sqrt5)(r - s sqrt5) = r^2 - 5 s^2, never 0 for r, s rational
        # unless both vanish (sqrt 5 is irrational)
        den = self.r * self.r - 5 * self.s * self.s
        if den == 0:
            raise ZeroDivisionError("division by zero GoldenNumber")
        return GoldenNumber(self.r / den, -self.s / den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = GoldenNumber(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "GoldenNumber":
        return GoldenNumber(self.r, -self.s)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.r == o.r and self.s == o.s

    def __hash__(self):
        return hash((self.r, self.s))

    def __float__(self) -> float:
        return float(self.r) + float(self.s) * math.sqrt(5.0)

    def __repr__(self) -> str:
        return f"GoldenNumber({self.r!r}, {self.s!r})"


# (1 - sqrt5)/(1 + sqrt5) = (sqrt5 - 3)/2 and the golden ratio (1 + sqrt5)/2;
# they satisfy GOLDEN_Q_EXACT = PHI - 2 = -1/PHI**2 exactly.
GOLDEN_Q_EXACT = GoldenNumber(Fraction(-3, 2), Fraction(1, 2))
PHI = GoldenNumber(Fraction(1, 2), Fraction(1, 2))


# -- Fibonacci numbers ---------------------------------------------------------


def _fib_pair(k: int) -> tuple[int, int]:
    """(G_k, G_{k+1}) with G_0 = 0, G_1 = 1, by halving the index."""
    if k == 0:
        return 0, 1
    a, b = _fib_pair(k >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if k & 1:
        return d, c + d
    return c, d


def fib(n: int) -> int:
    """Fibonacci number with F_0 = F_1 = 1: 1, 1, 2, 3, 5, 8, 13, ..."""
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    return _fib_pair(n + 1)[0]


def fib_classical(k: int) -> int:
    """Fibonacci number with F_0 = 0, F_1 = F_2 = 1."""
    if k < 0:
        raise ParameterDomainError(f"k must be >= 0, got {k}")
    return _fib_pair(k)[0]


def fib_iterative(n: int) -> int:
    """fib(n) by plain addition; independent route kept for consistency checks."""
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    prev, cur = 1, 1
    for _ in range(n):
        prev, cur = cur, prev + cur
    return prev


def gen_fib(a: float, b: float, n: int) -> float:
    """Two-parameter deformation y_{k+1} = a y_k + b y_{k-1}, y_0 = y_1 = 1."""
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    prev, cur = 1.0, 1.0
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, a * cur + b * prev
    return cur


def ismail_fib_values(theta: float, n: int) -> tuple[float, float]:
    """(closed form, recurrence value) of the theta-deformed Fibonacci F_n.

    Closed form e^{(n-1) theta} (1 - Q^n)/(1 - Q) with Q = -e^{-2 theta};
    recurrence y_{k+1} = 2 sinh(theta) y_k + y_{k-1}, F_1 = 1,
    F_2 = 2 sinh(theta).
    """
    if not (theta > 0.0):
        raise ParameterDomainError(f"theta must be > 0, got {theta}")
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    q_base = -math.exp(-2.0 * theta)
    closed = math.exp((n - 1) * theta) * (1.0 - q_base**n) / (1.0 - q_base)
    two_sinh = 2.0 * math.sinh(theta)
    prev, cur = 1.0, two_sinh
    if n == 1:
        return closed, prev
    for _ in range(n - 2):
        prev, cur = cur, two_sinh * cur + prev
    return closed, cur


_ISMAIL_TOL = 1e-9


def ismail_fib(theta: float, n: int) -> float:
    """Closed-form F_n(theta), cross-checked against the recurrence route."""
    closed, rec = ismail_fib_values(theta, n)
    if abs(closed - rec) > _ISMAIL_TOL * max(1.0, abs(closed)):
        raise InternalConsistencyError(
            f"F_{n}({theta}): closed form {closed!r} vs recurrence {rec!r}"
        )
    return closed


def fib_via_chebyshev(n: int) -> int:
    """fib(n) through the Chebyshev-U recurrence at the imaginary point i/2.

    V_k := (-i)^k U_k(i/2) turns U_{k+1} = 2x U_k - U_{k-1} into the integer
    recurrence V_{k+1} = V_k + V_{k-1} with V_0 = V_1 = 1, so the sign factor
    is absorbed exactly and no complex arithmetic is needed.
    """
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    prev, cur = 1, 1
    for _ in range(max(0, n - 1)):
        prev, cur = cur, cur + prev
    return cur if n >= 1 else prev


# -- nu-measure moments --------------------------------------------------------


def _resolve_precision(precision: str | None) -> str:
    p = precision or os.environ.get("DEFOSC_PRECISION") or "extended"
    if p not in ("double", "extended"):
        raise ParameterDomainError(
            f"precision must be 'double' or 'extended', got {p!r}"
        )
    return p


@dataclass(frozen=True)
class NuMomentResult:
    """Truncated vs closed-form n-th moment of the discrete measure nu.

    within_bound compares |truncated - closed_form| against tail_bound plus a
    rounding margin at the working precision.  In double precision the margin
    (~1e-13) usually dwarfs the tail bound itself, so a True verdict there
    only certifies double-level agreement; `extended` (the default) sizes the
    precision so the margin sits far below the bound and the comparison is
    meaningful.
    """

    n: int
    alpha: float
    theta: float
    q: float
    terms: int
    truncated: float
    closed_form: float
    tail_bound: float
    within_bound: bool
    precision: str
    dps: int | None


def nu_moments(
    n: int,
    alpha: float,
    theta: float,
    q: float | None = None,
    K: int = 200,
    precision: str | None = None,
) -> NuMomentResult:
    """Moments of nu = (1 - q^alpha) sum_k q^{alpha k} delta(x - q^k e^{-theta}).

    truncated sums the first K mass points; closed_form is
    (1 - q^alpha) e^{-n theta} / (1 - q^{alpha+n}); tail_bound is the
    geometric bound |1 - q^alpha| e^{-n theta} |q|^{(alpha+n)K} / (1 - |q|^{alpha+n})
    on their true difference.  q defaults to -e^{-2 theta}.

    When q^{alpha+n} > 0 the dropped tail is a positive geometric series and
    the bound is attained exactly, so within_bound compares with a small
    working-precision margin; without it the verdict at equality would be
    decided by the last rounding of two equal quantities.
    """
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    if K < 1:
        raise ParameterDomainError(f"K must be >= 1, got {K}")
    if not math.isfinite(theta):
        raise ParameterDomainError(f"theta must be finite, got {theta}")
    if q is not None and not (0.0 < abs(q) < 1.0):
        raise ParameterDomainError(f"require 0 < |q| < 1, got q={q}")
    q_known = -math.exp(-2.0 * theta) if q is None else q
    if q_known < 0.0 and alpha != int(alpha):
        raise ParameterDomainError(
            f"alpha must be an integer when q < 0, got alpha={alpha}"
        )
    mode = _resolve_precision(precision)

    alpha_i = int(alpha) if alpha == int(alpha) else alpha
    if mode == "double":
        qv = q_known
        e_nt = math.exp(-n * theta)
        mass = 1.0 - qv**alpha_i
        step = qv ** (alpha_i + n)
        truncated = mass * e_nt * sum(step**k for k in range(K))
        closed = mass * e_nt / (1.0 - step)
        tail = abs(mass) * e_nt * abs(qv) ** ((alpha_i + n) * K) / (1.0 - abs(qv) ** (alpha_i + n))
        margin = 1e-13 * (abs(truncated) + abs(closed))
        within = abs(truncated - closed) <= tail + margin
        return NuMomentResult(
            n, alpha, theta, qv, K, truncated, closed, tail, within, mode, None
        )

    # working precision sized so rounding stays below the geometric tail
    dps = max(50, int(math.ceil(K * (alpha + n) * -math.log10(abs(q_known)))) + 30)
    with mpmath.workdps(dps):
        tv = mpmath.mpf(theta)
        qv = -mpmath.e ** (-2 * tv) if q is None else mpmath.mpf(q)
        e_nt = mpmath.e ** (-n * tv)
        mass = 1 - qv**alpha_i
        step = qv ** (alpha_i + n)
        acc = mpmath.mpf(0)
        power = mpmath.mpf(1)
        for _ in range(K):
            acc += power
            power *= step
        truncated = mass * e_nt * acc
        closed = mass * e_nt / (1 - step)
        tail = abs(mass) * e_nt * abs(qv) ** ((alpha_i + n) * K) / (1 - abs(qv) ** (alpha_i + n))
        margin = (abs(truncated) + abs(closed)) * mpmath.mpf(10) ** (15 - dps)
        within = bool(abs(truncated - closed) <= tail + margin)
        return NuMomentResult(
            n,
            alpha,
            theta,
            float(qv),
            K,
            float(truncated),
            float(closed),
            float(tail),
            within,
            mode,
            dps,
        )


# -- Filbert matrix and exact inversion ----------------------------------------


def filbert_matrix(n: int) -> list[list[Fraction]]:
    """n x n matrix with entries 1/F_{i+j+1} (classical indexing, i, j >= 1)."""
    if n < 1:
        raise ParameterDomainError(f"n must be >= 1, got {n}")
    return [
        [Fraction(1, fib_classical(i + j + 1)) for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]


def _as_exact_square(m: Sequence[Sequence]) -> list[list[Fraction]]:
    rows = [[Fraction(v) for v in row] for row in m]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ParameterDomainError("matrix must be square and non-empty")
    return rows


def exact_inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse by rational Gauss-Jordan elimination; exact, no rounding."""
    a = _as_exact_square(m)
    n = len(a)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError(f"matrix is singular (column {col})")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        pivot = a[col][col]
        a[col] = [v / pivot for v in a[col]]
        inv[col] = [v / pivot for v in inv[col]]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            factor = a[r][col]
            a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
            inv[r] = [v - factor * w for v, w in zip(inv[r], inv[col])]
    return inv


def exact_matmul(
    a: Sequence[Sequence], b: Sequence[Sequence]
) -> list[list[Fraction]]:
    rows_a = [[Fraction(v) for v in row] for row in a]
    rows_b = [[Fraction(v) for v in row] for row in b]
    if not rows_a or not rows_b or len(rows_a[0]) != len(rows_b):
        raise ParameterDomainError("inner dimensions must agree")
    return [
        [sum(x * y for x, y in zip(row, col)) for col in zip(*rows_b)]
        for row in rows_a
    ]


def is_integer_matrix(m: Sequence[Sequence[Fraction]]) -> bool:
    return all(Fraction(v).denominator == 1 for row in m for v in row)


# -- Berg moments and the Hankel moment functional ------------------------------


def berg_moment(n: int) -> Fraction:
    """1/F_{n+2} in the F_0 = F_1 = 1 convention: 1/2, 1/3, 1/5, 1/8, ..."""
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    return Fraction(1, fib(n + 2))


def berg_moment_classical(n: int) -> Fraction:
    """1/F_{n+2} in the classical convention: 1, 1/2, 1/3, 1/5, ..."""
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    return Fraction(1, fib_classical(n + 2))


class MomentFunctional:
    """Linear functional L(x^k) = mu_k with bilinear (Hankel) application.

    The carrier is whatever numeric type the moments are supplied in:
    Fraction for exact work, float, or an mpmath float for extended
    precision.  All arithmetic stays within that carrier.
    """

    def __init__(self, moments: Sequence):
        self._moments = list(moments)
        if not self._moments:
            raise InsufficientMomentsError("at least one moment is required")

    def __len__(self) -> int:
        return len(self._moments)

    def moment(self, k: int):
        if k < 0:
            raise ParameterDomainError(f"moment index must be >= 0, got {k}")
        if k >= len(self._moments):
            raise InsufficientMomentsError(
                f"moment {k} requested but only {len(self._moments)} stored"
            )
        return self._moments[k]

    def apply(self, p1: Sequence, p2: Sequence):
        """L(p1 * p2) for coefficient lists in ascending powers of x."""
        need = (len(p1) - 1) + (len(p2) - 1)
        if need >= len(self._moments):
            raise InsufficientMomentsError(
                f"degree {need} product needs {need + 1} moments, have {len(self._moments)}"
            )
        total = 0
        for i, c1 in enumerate(p1):
            for j, c2 in enumerate(p2):
                total = total + c1 * c2 * self._moments[i + j]
        return total

    def affine(self, alpha, beta) -> "MomentFunctional":
        """Functional of x -> alpha x + beta: mu'_m = L((alpha x + beta)^m)."""
        out = []
        for m in range(len(self._moments)):
            acc = 0
            for k in range(m + 1):
                acc = acc + math.comb(m, k) * alpha**k * beta ** (m - k) * self._moments[k]
            out.append(acc)
        return MomentFunctional(out)


def functional_apply(functional: MomentFunctional, p1: Sequence, p2: Sequence):
    """L(p1 * p2); thin alias kept for API symmetry."""
    return functional.apply(p1, p2)


def _sqrt(x):
    if isinstance(x, mpmath.mpf):
        return mpmath.sqrt(x)
    return math.sqrt(float(x))


def calibrate_affine(
    functional: MomentFunctional, p1: Sequence, p2: Sequence
) -> tuple[object, object]:
    """Affine map x -> alpha x + beta with L(p1(x')) = L(p2(x')) = 0.

    p1 must have degree 1 and p2 degree 2 (ascending coefficients).  Solves
    for the first two moments U = L(x'), V = L(x'^2) of the mapped variable,
    then alpha^2 = (V - U^2/mu0) / (mu2 - mu1^2/mu0) and
    beta = (U - alpha mu1)/mu0, taking the positive root.
    """
    if len(p1) != 2 or p1[1] == 0:
        raise CalibrationError("p1 must have exact degree 1")
    if len(p2) != 3 or p2[2] == 0:
        raise CalibrationError("p2 must have exact degree 2")
    mu0 = functional.moment(0)
    mu1 = functional.moment(1)
    mu2 = functional.moment(2)
    if mu0 == 0:
        raise CalibrationError("mu_0 = 0: functional not normalizable")
    u = -p1[0] * mu0 / p1[1]
    v = -(p2[0] * mu0 + p2[1] * u) / p2[2]
    denom = mu2 - mu1 * mu1 / mu0
    if denom == 0:
        raise CalibrationError("moment variance vanishes, no affine map exists")
    alpha_sq = (v - u * u / mu0) / denom
    if not alpha_sq > 0:
        raise CalibrationError(
            f"alpha^2 = {float(alpha_sq):.6g} <= 0: no real affine calibration"
        )
    alpha = _sqrt(alpha_sq)
    beta = (u - alpha * mu1) / mu0
    return alpha, beta


def _q_pochhammer_generic(a, q, n: int):
    out = 1
    power = 1
    for _ in range(n):
        out = out * (1 - a * power)
        power = power * q
    return out


def _little_q_jacobi_coeffs(n: int, a, b, q) -> list:
    """Ascending coefficients of p_n(x): p_n(0) = 1 normalization.

    coeff_j = qbinom(n, j) (a b q^{n+1}; q)_j / (a q; q)_j
              * q^{j(j+1)/2 - n j} (-1)^j
    in whatever numeric carrier a, b, q are supplied in.
    """
    qq_n = _q_pochhammer_generic(q, q, n)
    coeffs = []
    for j in range(n + 1):
        qq_j = _q_pochhammer_generic(q, q, j)
        qq_nj = _q_pochhammer_generic(q, q, n - j)
        binom = qq_n / (qq_j * qq_nj)
        num = _q_pochhammer_generic(a * b * q ** (n + 1), q, j)
        den = _q_pochhammer_generic(a * q, q, j)
        if den == 0:
            raise CalibrationError(f"(aq;q)_{j} vanishes: polynomial undefined")
        coeffs.append(binom * num / den * q ** (j * (j + 1) // 2 - n * j) * (-1) ** j)
    return coeffs


@dataclass(frozen=True)
class BergReport:
    """Calibrated Gram table of the reciprocal-Fibonacci moment functional."""

    convention: str
    n_max: int
    alpha: float
    beta: float
    normalized_off_diagonal: tuple[tuple[float, ...], ...]  # rows m, entries n > m
    diagonal: tuple[float, ...]
    max_off_diagonal: float
    diagonal_positive: bool
    dps: int | None

    def passes(self, tol: float) -> bool:
        return self.diagonal_positive and self.max_off_diagonal < tol

    def to_dict(self) -> dict:
        return {
            "convention": self.convention,
            "n_max": self.n_max,
            "alpha": self.alpha,
            "beta": self.beta,
            "normalized_off_diagonal": [list(r) for r in self.normalized_off_diagonal],
            "diagonal": list(self.diagonal),
            "max_off_diagonal": self.max_off_diagonal,
            "diagonal_positive": self.diagonal_positive,
            "dps": self.dps,
        }


_BERG_DPS = 50


def berg_orthogonality(
    n_max: int = 6,
    convention: str = "classical",
    precision: str | None = None,
) -> BergReport:
    """Gram table L(p_m p_n) of golden-base little q-Jacobi polynomials.

    Moments are the exact reciprocal Fibonacci numbers; the affine map
    x -> alpha x + beta is calibrated from L(p_1) = L(p_2) = 0 before the
    table is formed.  Off-diagonal entries are reported normalized by
    sqrt(L(p_m^2) L(p_n^2)).  Double precision loses ~14 digits to
    cancellation and is only useful to demonstrate that loss.
    """
    if not (1 <= n_max <= 16):
        raise ParameterDomainError(f"n_max must be in 1..16, got {n_max}")
    if convention == "classical":
        moment_fn = berg_moment_classical
    elif convention == "shifted":
        moment_fn = berg_moment
    else:
        raise ParameterDomainError(
            f"convention must be 'classical' or 'shifted', got {convention!r}"
        )
    mode = _resolve_precision(precision)

    if mode == "extended":
        dps = _BERG_DPS
        ctx = mpmath.workdps(dps)
    else:
        dps = None
        ctx = contextlib.nullcontext()

    with ctx:
        if mode == "extended":
            sqrt5 = mpmath.sqrt(5)
            lift = mpmath.mpf
        else:
            sqrt5 = math.sqrt(5.0)
            lift = float
        q = (1 - sqrt5) / (1 + sqrt5)
        moments = [
            lift(moment_fn(k).numerator) / lift(moment_fn(k).denominator)
            for k in range(2 * n_max + 1)
        ]
        base = MomentFunctional(moments)
        polys = [_little_q_jacobi_coeffs(n, q, 1, q) for n in range(n_max + 1)]
        alpha, beta = calibrate_affine(base, polys[1], polys[2])
        cal = base.affine(alpha, beta)

        gram = [[cal.apply(polys[m], polys[n]) for n in range(n_max + 1)] for m in range(n_max + 1)]
        diag = [gram[m][m] for m in range(n_max + 1)]
        diagonal_positive = all(d > 0 for d in diag)
        rows = []
        max_off = 0.0
        for m in range(n_max + 1):
            row = []
            for n in range(m + 1, n_max + 1):
                if diagonal_positive:
                    val = float(abs(gram[m][n]) / _sqrt(diag[m] * diag[n]))
                else:
                    val = float(abs(gram[m][n]))
                row.append(val)
                max_off = max(max_off, val)
            rows.append(tuple(row))
        return BergReport(
            convention,
            n_max,
            float(alpha),
            float(beta),
            tuple(rows),
            tuple(float(d) for d in diag),
            max_off,
            diagonal_positive,
            dps,
        )
