"""Truncated matrix representation of the generalized oscillator.

Operators act on the coordinate vector (c_0, ..., c_{dim-1}) of an expansion
sum_n c_n psi_n in the orthonormal polynomial basis:

    X   tridiagonal symmetric, diag a_n, off-diagonals b_n
    P   i * K with K[n, n+1] = +b_n, K[n+1, n] = -b_n (stored real,
        imaginary flag set)
    a+  strict lower shift, entries sqrt(2) b_n at [n+1, n]
    a-  transpose of a+
    N   diag(0, 1, ..., dim-1)
    B   diag(b_{-1}^2, b_0^2, ...) = diag(0, b_0^2, ...)
    H   a+ a- + a- a+  (exactly diagonal by construction)

a+- = (X -+... +- i P)/sqrt(2) holds exactly when a_n = 0; for families with
a_n != 0 the ladder operators stay pure shifts and the entrywise gap
X^2 + P^2 - H is reported, never asserted.  All relation checks exclude the
last two rows and columns, where a finite section cannot close the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .recurrence import CoefficientSequence

__all__ = [
    "BandMatrix",
    "Operators",
    "RelationCheck",
    "AlgebraReport",
    "build_operators",
    "commutator",
    "verify_algebra",
    "matrix_to_json",
    "matrix_csv_rows",
]


class BandMatrix:
    """Square matrix stored by diagonals, optionally carrying a factor of i.

    bands[o] holds the diagonal at offset o = j - i as a vector indexed by
    k = min(i, j); entries off the stored bands are zero.  When `imaginary`
    is true the represented matrix is i times the stored real data, so a
    single flag bit is enough to keep all arithmetic real.
    """

    __slots__ = ("dim", "bands", "kind", "imaginary")

    def __init__(
        self,
        dim: int,
        bands: dict[int, np.ndarray],
        kind: str = "generic",
        imaginary: bool = False,
    ):
        if dim < 1:
            raise DimensionError(f"dim must be >= 1, got {dim}")
        self.dim = dim
        self.kind = kind
        self.imaginary = bool(imaginary)
        self.bands: dict[int, np.ndarray] = {}
        for o, vals in bands.items():
            o = int(o)
            arr = np.asarray(vals, dtype=float)
            if abs(o) >= dim or arr.shape != (dim - abs(o),):
                raise DimensionError(
                    f"band {o} of a {dim}x{dim} matrix must have length {dim - abs(o)}"
                )
            if np.any(arr != 0.0):
                self.bands[o] = arr.copy()

    # -- accessors ---------------------------------------------------------

    def band(self, o: int) -> np.ndarray:
        """Diagonal at offset o (a fresh zero vector if not stored)."""
        if o in self.bands:
            return self.bands[o].copy()
        return np.zeros(self.dim - abs(o))

    @property
    def diag(self) -> np.ndarray:
        return self.band(0)

    @property
    def super(self) -> np.ndarray:
        return self.band(1)

    @property
    def sub(self) -> np.ndarray:
        return self.band(-1)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex if self.imaginary else float)
        unit = 1j if self.imaginary else 1.0
        for o, vals in self.bands.items():
            i0, j0 = (0, o) if o >= 0 else (-o, 0)
            for k, v in enumerate(vals):
                out[i0 + k, j0 + k] = unit * v
        return out

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Matrix-vector product; complex output when the i flag is set."""
        v = np.asarray(v)
        if v.shape != (self.dim,):
            raise DimensionError(f"vector of length {self.dim} expected, got {v.shape}")
        out = np.zeros(self.dim, dtype=np.result_type(v.dtype, float))
        for o, vals in self.bands.items():
            if o >= 0:
                out[: self.dim - o] += vals * v[o:]
            else:
                out[-o:] += vals * v[: self.dim + o]
        return out * 1j if self.imaginary else out

    def transpose(self) -> "BandMatrix":
        # k = min(i, j) indexing makes transposition a pure offset flip
        return BandMatrix(
            self.dim, {-o: v for o, v in self.bands.items()}, self.kind, self.imaginary
        )

    # -- arithmetic ---------------------------------------------------------

    def _combine(self, other: "BandMatrix", sign: float) -> "BandMatrix":
        if not isinstance(other, BandMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionError(f"dim mismatch: {self.dim} vs {other.dim}")
        if self.imaginary != other.imaginary:
            raise ValueError("cannot add a real-valued and an i-valued BandMatrix")
        out: dict[int, np.ndarray] = {o: v.copy() for o, v in self.bands.items()}
        for o, v in other.bands.items():
            if o in out:
                out[o] = out[o] + sign * v
            else:
                out[o] = sign * v
        return BandMatrix(self.dim, out, "generic", self.imaginary)

    def __add__(self, other: "BandMatrix") -> "BandMatrix":
        return self._combine(other, 1.0)

    def __sub__(self, other: "BandMatrix") -> "BandMatrix":
        return self._combine(other, -1.0)

    def __mul__(self, scalar: float) -> "BandMatrix":
        return BandMatrix(
            self.dim,
            {o: scalar * v for o, v in self.bands.items()},
            self.kind,
            self.imaginary,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "BandMatrix":
        return self * -1.0

    def __matmul__(self, other: "BandMatrix") -> "BandMatrix":
        if not isinstance(other, BandMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionError(f"dim mismatch: {self.dim} vs {other.dim}")
        dim = self.dim
        out: dict[int, np.ndarray] = {}
        for p, av in self.bands.items():
            for r, bv in other.bands.items():
                o = p + r
                if abs(o) >= dim:
                    continue
                lo = max(0, -p, -o)
                hi = dim - max(0, p, o)
                if hi <= lo:
                    continue
                a_sl = av[lo + min(p, 0) : hi + min(p, 0)]
                b_sl = bv[lo + p + min(r, 0) : hi + p + min(r, 0)]
                tgt = out.setdefault(o, np.zeros(dim - abs(o)))
                tgt[lo + min(o, 0) : hi + min(o, 0)] += a_sl * b_sl
        # (iA)(iB) = -(AB): both flags set cancels the i and flips the sign
        if self.imaginary and other.imaginary:
            out = {o: -v for o, v in out.items()}
        return BandMatrix(dim, out, "generic", self.imaginary ^ other.imaginary)

    # -- residual norms ------------------------------------------------------

    def max_abs(self, skip_edge: int = 0) -> float:
        """Largest |entry| over rows and columns below dim - skip_edge."""
        cut = self.dim - skip_edge
        best = 0.0
        for o, vals in self.bands.items():
            # both endpoints of band entry k are < cut iff k < cut - |o|
            stop = min(len(vals), cut - abs(o))
            if stop > 0:
                best = max(best, float(np.max(np.abs(vals[:stop]))))
        return best

    def edge_max_abs(self, skip_edge: int = 2) -> float:
        """Largest |entry| touching the last skip_edge rows or columns."""
        cut = self.dim - skip_edge
        best = 0.0
        for o, vals in self.bands.items():
            start = max(0, cut - abs(o))
            if start < len(vals):
                best = max(best, float(np.max(np.abs(vals[start:]))))
        return best

    def __repr__(self) -> str:
        pre = "i*" if self.imaginary else ""
        return f"BandMatrix({pre}{self.kind}, dim={self.dim}, offsets={sorted(self.bands)})"


@dataclass(frozen=True)
class Operators:
    """The operator set of one family at one truncation dimension."""

    dim: int
    x: BandMatrix
    p: BandMatrix
    a_plus: BandMatrix
    a_minus: BandMatrix
    n_op: BandMatrix
    b_op: BandMatrix
    hamiltonian: BandMatrix


def build_operators(seq: CoefficientSequence, dim: int) -> Operators:
    """Assemble X, P, a+-, N, B(N) and H for `seq` truncated at `dim`."""
    if dim < 3:
        raise DimensionError(f"dim must be >= 3, got {dim}")
    a_vals = np.array([seq.a(n) for n in range(dim)])
    b_vals = np.array([seq.b(n) for n in range(dim - 1)])
    # B's eigenvalues are assembled from the same sqrt(2) b_n products that
    # fill the ladder operators, so 2B(N) - a+ a- cancels exactly in floating
    # point instead of leaving eps * b_n^2 noise that commutators amplify.
    s_vals = np.sqrt(2.0) * b_vals
    b_shift = np.concatenate(([0.0], 0.5 * s_vals * s_vals))  # b(-1) = 0

    x = BandMatrix(dim, {0: a_vals, 1: b_vals, -1: b_vals}, "X")
    p = BandMatrix(dim, {1: b_vals, -1: -b_vals}, "P", imaginary=True)
    a_plus = BandMatrix(dim, {-1: s_vals}, "a+")
    a_minus = BandMatrix(dim, {1: s_vals}, "a-")
    n_op = BandMatrix(dim, {0: np.arange(dim, dtype=float)}, "N")
    b_op = BandMatrix(dim, {0: b_shift}, "B")
    h = a_plus @ a_minus + a_minus @ a_plus
    h.kind = "H"
    return Operators(dim, x, p, a_plus, a_minus, n_op, b_op, h)


def commutator(m1: BandMatrix, m2: BandMatrix) -> BandMatrix:
    """[M1, M2] = M1 M2 - M2 M1; pentadiagonal at most for tridiagonal input."""
    return m1 @ m2 - m2 @ m1


@dataclass(frozen=True)
class RelationCheck:
    name: str
    interior_residual: float
    boundary_residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "interior_residual": self.interior_residual,
            "boundary_residual": self.boundary_residual,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class AlgebraReport:
    """Interior residuals of the defining relations at one truncation."""

    family_id: str
    dim: int
    tolerance: float
    relations: tuple[RelationCheck, ...]
    xp_identity_gap: float  # || X^2 + P^2 - H ||, reported only

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.relations)

    def to_dict(self) -> dict:
        return {
            "family": self.family_id,
            "dim": self.dim,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "relations": [r.to_dict() for r in self.relations],
            "xp_identity_gap": self.xp_identity_gap,
        }


def _check(name: str, residual: BandMatrix, tol: float) -> RelationCheck:
    interior = residual.max_abs(skip_edge=2)
    return RelationCheck(name, interior, residual.edge_max_abs(2), interior <= tol)


def verify_algebra(seq: CoefficientSequence, dim: int, tol: float = 1e-10) -> AlgebraReport:
    """Check the oscillator relations on interior rows at truncation `dim`.

    Relations checked (interior = all rows/columns except the last two):

      1. [a-, a+] = 2 (B(N + I) - B(N))
      2. [N, a+] = a+   and   [N, a-] = -a-
      3. H = a+ a- + a- a+ is diagonal with H_nn = 2 (b_{n-1}^2 + b_n^2)
      4. the central element 2 B(N) - a+ a- vanishes and commutes with a+-
    """
    if dim < 4:
        raise DimensionError(f"dim must be >= 4, got {dim}")
    ops = build_operators(seq, dim)

    # The target diagonals reuse the same sqrt(2) b_n floats that fill the
    # ladder bands; otherwise the residuals carry eps * b_n^2 rounding noise,
    # which the casimir commutator inflates by another factor b_n.
    s_last = np.sqrt(2.0) * seq.b(dim - 1)
    s_sq = np.concatenate((ops.a_plus.band(-1) ** 2, [s_last * s_last]))
    s_prev = np.concatenate(([0.0], s_sq[:-1]))

    # B(N + I) has eigenvalue b_n^2 on psi_n
    b_next = BandMatrix(dim, {0: 0.5 * s_sq}, "B+")
    lam_op = BandMatrix(dim, {0: s_prev + s_sq}, "lambda")

    casimir = 2.0 * ops.b_op - ops.a_plus @ ops.a_minus
    cas_comm = max(
        commutator(casimir, ops.a_plus).max_abs(2),
        commutator(casimir, ops.a_minus).max_abs(2),
    )
    cas_comm_edge = max(
        commutator(casimir, ops.a_plus).edge_max_abs(2),
        commutator(casimir, ops.a_minus).edge_max_abs(2),
    )

    checks = (
        _check(
            "ladder_commutator",
            commutator(ops.a_minus, ops.a_plus) - 2.0 * (b_next - ops.b_op),
            tol,
        ),
        _check("number_raising", commutator(ops.n_op, ops.a_plus) - ops.a_plus, tol),
        _check("number_lowering", commutator(ops.n_op, ops.a_minus) + ops.a_minus, tol),
        _check("hamiltonian_diagonal", ops.hamiltonian - lam_op, tol),
        _check("casimir_zero", casimir, tol),
        RelationCheck("casimir_commutes", cas_comm, cas_comm_edge, cas_comm <= tol),
    )

    xp_gap = (ops.x @ ops.x + ops.p @ ops.p - ops.hamiltonian).max_abs(2)
    return AlgebraReport(seq.family_id, dim, tol, checks, xp_gap)


# -- export ------------------------------------------------------------------

_DENSE_LIMIT = 64


def matrix_to_json(m: BandMatrix) -> dict:
    """Banded JSON form; a dense mirror is included up to 64x64."""
    out = {
        "dim": m.dim,
        "kind": m.kind,
        "imaginary": m.imaginary,
        "bands": {str(o): [float(v) for v in vals] for o, vals in sorted(m.bands.items())},
    }
    if m.dim <= _DENSE_LIMIT:
        dense = m.to_dense()
        real = dense.imag if m.imaginary else dense.real
        out["dense"] = [[float(v) for v in row] for row in real]
    return out


def matrix_csv_rows(m: BandMatrix):
    """Yield (row, col, value) triplets of the stored real band data.

    For a matrix with the imaginary flag the represented entry is i*value;
    only P is stored that way.
    """
    for o in sorted(m.bands):
        vals = m.bands[o]
        i0, j0 = (0, o) if o >= 0 else (-o, 0)
        for k, v in enumerate(vals):
            yield i0 + k, j0 + k, float(v)
