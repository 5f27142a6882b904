"""Exact dense linear algebra over the rationals.

Entries are Python ints or :class:`fractions.Fraction`; nothing here touches
floating point.  Heavy elimination on integer matrices goes through
:mod:`echelonmotion.kernels`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import InconsistencyError, InputError, SingularMatrixError

#: Re-multiply every Bruhat certificate (enabled by the test suite).
CHECK_CERTIFICATES = os.environ.get("ECHELON_CHECK", "") not in ("", "0")


def _num(v) -> int | Fraction:
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (Rational, str)):
        f = Fraction(v)
        return f.numerator if f.denominator == 1 else f
    raise InputError(f"not an exact rational entry: {v!r}")


class ExactMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows: Sequence[Sequence]):
        data = tuple(tuple(_num(v) for v in r) for r in rows)
        width = len(data[0]) if data else 0
        if any(len(r) != width for r in data):
            raise InputError("ragged matrix rows")
        self.rows = data
        self.shape = (len(data), width)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in r) for r in self.rows)
        return f"ExactMatrix([{body}])"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-v for v in r] for r in self.rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return ExactMatrix([[sum(a * b for a, b in zip(r, c) if a and b) for c in cols]
                            for r in self.rows])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)) if self.rows else [])

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def lower_left(self, i: int, j: int) -> "ExactMatrix":
        """Rows ``i..`` and columns ``..j`` (0-based, inclusive)."""
        return ExactMatrix([r[: j + 1] for r in self.rows[i:]])

    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    def is_upper_triangular(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.rows) for v in r[:i])

    def is_lower_triangular(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.rows) for v in r[i + 1:])

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for r in self.rows for v in r)

    def integer_rows(self) -> list[list[int]]:
        """Rows scaled by positive constants to clear denominators.

        Row scaling preserves rank and is an upper-triangular operation, so it
        leaves the Bruhat permutation unchanged too.
        """
        out = []
        for r in self.rows:
            d = lcm(*(v.denominator for v in r if isinstance(v, Fraction))) if r else 1
            out.append([int(v * d) for v in r])
        return out


@dataclass(frozen=True)
class PermutationMatrix:
    """Permutation matrix with a 1 at ``(image[j], j)`` for every column ``j``."""

    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(v) for v in self.image)
        if sorted(img) != list(range(len(img))):
            raise InputError(f"not a permutation: {img}")
        object.__setattr__(self, "image", img)

    @property
    def n(self) -> int:
        return len(self.image)

    def matrix(self) -> ExactMatrix:
        n = len(self.image)
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(self.image):
            rows[i][j] = 1
        return ExactMatrix(rows)

    def inverse(self) -> "PermutationMatrix":
        inv = [0] * len(self.image)
        for j, i in enumerate(self.image):
            inv[i] = j
        return PermutationMatrix(tuple(inv))

    def ones(self) -> list[tuple[int, int]]:
        """``(row, column)`` positions of the ones, sorted by row."""
        return sorted((i, j) for j, i in enumerate(self.image))


@dataclass(frozen=True)
class BruhatCertificate:
    """``U1 @ P @ U2 == M`` with ``U1``, ``U2`` invertible upper-triangular."""

    P: PermutationMatrix
    U1: ExactMatrix
    U2: ExactMatrix

    def product(self) -> ExactMatrix:
        return self.U1 @ self.P.matrix() @ self.U2

    def verify(self, M: ExactMatrix) -> bool:
        return (self.U1.is_upper_triangular() and self.U2.is_upper_triangular()
                and all(self.U1[i, i] != 0 and self.U2[i, i] != 0 for i in range(M.shape[0]))
                and self.product() == M)


def as_exact(M) -> ExactMatrix:
    return M if isinstance(M, ExactMatrix) else ExactMatrix(M)


def rank(M) -> int:
    """Rank over the rationals (Bareiss fraction-free elimination)."""
    M = as_exact(M)
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    return kernels.rank_exact(M.integer_rows())


def inverse(M) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    M = as_exact(M)
    if not M.is_square():
        raise InputError("inverse of a non-square matrix")
    n = M.shape[0]
    A = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(M.rows)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [v / pv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return ExactMatrix([r[n:] for r in A])


def bruhat_permutation(M) -> BruhatCertificate:
    """Bruhat decomposition of an invertible matrix with explicit factors.

    Column sweep: column ``j`` pivots on the bottom-most unused row ``i`` with a
    nonzero entry; row operations clear column ``j`` above ``i`` and column
    operations clear row ``i`` to the right of ``j``.  Both kinds of operation
    are upper-triangular, so the leftover scaled permutation gives the factors.
    """
    M = as_exact(M)
    if not M.is_square():
        raise InputError("Bruhat decomposition needs a square matrix")
    n = M.shape[0]
    A = [[Fraction(v) for v in r] for r in M.rows]
    R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    C = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    used = [False] * n
    image = [0] * n
    for j in range(n):
        i = next((r for r in range(n - 1, -1, -1) if not used[r] and A[r][j] != 0), None)
        if i is None:
            raise SingularMatrixError(f"no pivot in column {j}: matrix is singular")
        used[i] = True
        image[j] = i
        pv = A[i][j]
        for k in range(i):
            if A[k][j] != 0:
                f = A[k][j] / pv
                A[k] = [a - f * b for a, b in zip(A[k], A[i])]
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
        for c in range(j + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / pv
                for r in range(n):
                    A[r][c] -= f * A[r][j]
                    C[r][c] -= f * C[r][j]
    P = PermutationMatrix(tuple(image))
    D = ExactMatrix.diagonal([A[image[j]][j] for j in range(n)])
    U1 = inverse(ExactMatrix(R))
    U2 = D @ inverse(ExactMatrix(C))
    cert = BruhatCertificate(P, U1, U2)
    if CHECK_CERTIFICATES and not cert.verify(M):
        raise InconsistencyError("Bruhat certificate does not reproduce the input")
    return cert


def bruhat_pivot_rows(M, ncols: int | None = None) -> list[int]:
    """Pivot row of each of the first ``ncols`` columns of the Bruhat sweep.

    The pivots of the first ``j`` columns only depend on those columns, so a
    truncated sweep answers single-column queries cheaply.
    """
    rows = M.integer_rows() if isinstance(M, ExactMatrix) else M
    piv = kernels.bruhat_pivots(rows, len(rows) if ncols is None else ncols)
    if -1 in piv:
        raise SingularMatrixError("matrix is singular")
    return piv


def bruhat_permutation_fast(M) -> PermutationMatrix:
    """Bruhat permutation without factors, via the elimination kernel."""
    return PermutationMatrix(tuple(bruhat_pivot_rows(M)))


def bruhat_permutation_mod(M, p: int) -> PermutationMatrix | None:
    """Bruhat permutation over the field with ``p`` elements, or ``None`` if singular there."""
    rows = M.integer_rows() if isinstance(M, ExactMatrix) else M
    piv = kernels.bruhat_pivots_mod(rows, p)
    return None if -1 in piv else PermutationMatrix(tuple(piv))


def rank_grid_oracle(M) -> PermutationMatrix:
    """Bruhat permutation from the four-rank condition on lower-left blocks.

    ``P[i, j] = 1`` iff ``r(i+1, j-1) = r(i+1, j) = r(i, j-1) = r(i, j) - 1``
    where ``r(i, j)`` is the rank of rows ``>= i`` and columns ``<= j``.
    Quintic time; only meant as a test oracle.
    """
    M = as_exact(M)
    n = M.shape[0]
    # r[i][j + 1] = rank of rows i.. and columns ..j ; r[n][*] = r[*][0] = 0
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            r[i][j + 1] = rank(M.lower_left(i, j))
    image = [-1] * n
    hits = [0] * n
    for i in range(n):
        for j in range(n):
            full = r[i][j + 1]
            if r[i + 1][j] == r[i + 1][j + 1] == r[i][j] == full - 1:
                if image[j] != -1:
                    raise InconsistencyError(f"two cells selected in column {j}")
                image[j] = i
                hits[i] += 1
    if -1 in image or any(h != 1 for h in hits):
        raise InconsistencyError("rank conditions do not select a permutation")
    return PermutationMatrix(tuple(image))


class Prescreen(NamedTuple):
    rank: int
    agree: bool


def mod_p_rank_prescreen(M, primes: Sequence[int] = kernels.PRIMES) -> Prescreen:
    """Lower bound for the rational rank from ranks over prime fields."""
    M = as_exact(M)
    if not M.is_integral():
        raise InputError("modular prescreen needs integer entries")
    rows = [list(r) for r in M.rows]
    ranks = [kernels.rank_mod(rows, p) for p in primes]
    return Prescreen(max(ranks), len(set(ranks)) == 1)


def nullspace(M) -> list[list[Fraction]]:
    """Basis of the right kernel ``{v : M v = 0}`` from the reduced row echelon form."""
    M = as_exact(M)
    n_rows, n_cols = M.shape
    A = [[Fraction(v) for v in r] for r in M.rows]
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        p = next((q for q in range(r, n_rows) if A[q][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for q in range(n_rows):
            if q != r and A[q][c] != 0:
                f = A[q][c]
                A[q] = [a - f * b for a, b in zip(A[q], A[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -A[row][fc]
        basis.append(v)
    return basis
