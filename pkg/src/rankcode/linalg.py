"""Dense linear algebra over F_q (and F_{q^m}) on galois arrays.

Matrices are 2-D ``galois.FieldArray`` values. Every routine works for any
finite field galois provides; the rank metric itself only ever uses F_q.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import galois
import numpy as np

from rankcode.errors import ParameterError, ShapeError


def _field_of(*arrays):
    for a in arrays:
        if isinstance(a, galois.FieldArray):
            return type(a)
    raise ShapeError("expected at least one galois array")


def vstack(blocks, GF=None):
    GF = GF or _field_of(*blocks)
    return GF(np.concatenate([np.asarray(b) for b in blocks], axis=0))


def hstack(blocks, GF=None):
    GF = GF or _field_of(*blocks)
    return GF(np.concatenate([np.asarray(b) for b in blocks], axis=1))


def rre(X) -> tuple[galois.FieldArray, tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns.

    Zero rows of the result sit at the bottom; ``len(pivots)`` is the rank.
    """
    if X.ndim != 2:
        raise ShapeError(f"rre needs a matrix, got shape {X.shape}")
    if 0 in X.shape:
        return X.copy(), ()
    R = X.row_reduce()
    nonzero = np.asarray(R) != 0
    pivots = tuple(int(np.argmax(row)) for row in nonzero if row.any())
    return R, pivots


def rank(X) -> int:
    return len(rre(X)[1])


def rank_distance(X, Y) -> int:
    if X.shape != Y.shape:
        raise ShapeError(f"rank distance needs equal shapes, got {X.shape} and {Y.shape}")
    return rank(Y - X)


def null_space(A) -> galois.FieldArray:
    """Basis of {v : A v = 0} as rows, in RRE form."""
    GF = type(A)
    rows, cols = A.shape
    if rows == 0:
        return GF.Identity(cols)
    if rank(A) == cols:
        return GF.Zeros((0, cols))
    return A.null_space()


def left_null_space(A) -> galois.FieldArray:
    """Basis of {v : v A = 0} as rows, in RRE form."""
    GF = type(A)
    rows, cols = A.shape
    if cols == 0:
        return GF.Identity(rows)
    if rank(A) == rows:
        return GF.Zeros((0, rows))
    return A.left_null_space()


def right_inverse(h) -> galois.FieldArray:
    """Q with h Q = I for a full-row-rank n x m matrix h."""
    GF = type(h)
    n, m = h.shape
    if n > m:
        raise ParameterError(f"a {n}x{m} matrix has no right inverse")
    reduced = hstack([h, GF.Identity(n)]).row_reduce(ncols=m)
    Rh, E = reduced[:, :m], reduced[:, m:]
    pivots = [int(np.argmax(row)) for row in np.asarray(Rh) != 0 if row.any()]
    if len(pivots) != n:
        raise ParameterError(f"matrix has rank {len(pivots)} < {n}; no right inverse")
    P = GF.Zeros((m, n))
    for j, p in enumerate(pivots):
        P[p, j] = 1
    return P @ E


def errata_matrix(L_hat, e, E_hat) -> galois.FieldArray:
    """The block matrix [L_hat, e; 0, E_hat]."""
    GF = _field_of(e)
    mu, delta = L_hat.shape[1], E_hat.shape[0]
    top = hstack([L_hat, e], GF)
    bottom = hstack([GF.Zeros((delta, mu)), E_hat], GF)
    return vstack([top, bottom], GF)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of a matrix, held by its canonical RRE basis."""

    basis: galois.FieldArray
    ambient_dim: int

    @classmethod
    def span(cls, X) -> "Subspace":
        R, pivots = rre(X)
        return cls(R[: len(pivots)], X.shape[1])

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def _key(self):
        return (
            type(self.basis).order,
            self.ambient_dim,
            self.basis.shape,
            tuple(np.asarray(self.basis).ravel().tolist()),
        )

    def __eq__(self, other):
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def __contains__(self, v) -> bool:
        row = type(self.basis)(np.asarray(v).reshape(1, -1))
        return rank(vstack([self.basis, row])) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace.span(vstack([self.basis, other.basis]))

    def intersection_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - (self + other).dim


def _check_ambient(U: Subspace, V: Subspace):
    if U.ambient_dim != V.ambient_dim:
        raise ShapeError(f"ambient dimensions differ: {U.ambient_dim} != {V.ambient_dim}")


def subspace_distance(U: Subspace, V: Subspace) -> int:
    _check_ambient(U, V)
    return 2 * rank(vstack([U.basis, V.basis])) - U.dim - V.dim


def rank_stack_bound(X, Y) -> tuple[int, int]:
    """(rank [X; Y], rank(Y - X) + min(rank X, rank Y))."""
    lhs = rank(vstack([X, Y]))
    rhs = rank_distance(X, Y) + min(rank(X), rank(Y))
    return lhs, rhs


def gaussian_coefficient(M: int, n: int, q: int) -> int:
    """Number of n-dimensional subspaces of F_q^M."""
    if not 0 <= n <= M:
        raise ParameterError(f"need 0 <= n <= M, got n={n}, M={M}")
    numerator = math.prod(q ** (M - i) - 1 for i in range(n))
    denominator = math.prod(q ** (n - i) - 1 for i in range(n))
    return numerator // denominator


class SingletonBounds(NamedTuple):
    rank_metric_bound: int
    suboptimality_bound: float


def singleton_bounds(q: int, n: int, m: int, d: int) -> SingletonBounds:
    if not 1 <= d <= min(n, m):
        raise ParameterError(f"need 1 <= d <= min(n, m) = {min(n, m)}, got d={d}")
    size = q ** (max(n, m) * (min(n, m) - d + 1))
    return SingletonBounds(size, 4 / ((n + m) * math.log2(q)))


class SubspaceBounds(NamedTuple):
    singleton: int
    approximation: int


def subspace_code_bound(q: int, M: int, n: int, d: int) -> SubspaceBounds:
    """Bounds on the size of a constant-dimension code with distance 2d.

    ``singleton`` is the Gaussian-coefficient bound, ``approximation`` the
    strictly larger 4 q^(max(n, M-n)(min(n, M-n) - d + 1)).
    """
    if not 1 <= d <= min(n, M - n) + 1:
        raise ParameterError(f"distance 2d={2 * d} impossible for dimension {n} in F_q^{M}")
    singleton = gaussian_coefficient(M - d + 1, max(n, M - n), q)
    approximation = 4 * q ** (max(n, M - n) * (min(n, M - n) - d + 1))
    return SubspaceBounds(singleton, approximation)


def sub_optimality(q: int, n: int, m: int, k: int) -> float:
    """Sub-optimality of a lifted MRD code measured against the Singleton bound."""
    d = n - k + 1 if n <= m else m - k + 1
    bound = math.log(subspace_code_bound(q, n + m, n, d).singleton, q)
    size = max(n, m) * (min(n, m) - d + 1)
    return (bound - size) / bound


def _inverse_table(q: int) -> np.ndarray:
    table = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        table[a] = pow(a, -1, q)
    return table


def batch_rank(stack, q: int) -> np.ndarray:
    """Ranks over F_q of a (batch, rows, cols) stack of integer matrices."""
    A = np.array(stack, dtype=np.int64) % q
    if A.ndim != 3:
        raise ShapeError(f"batch_rank needs a 3-D stack, got shape {A.shape}")
    batch, rows, cols = A.shape
    inverses = _inverse_table(q)
    ranks = np.zeros(batch, dtype=np.int64)
    row_ids = np.arange(rows)
    for col in range(cols):
        eligible = (A[:, :, col] != 0) & (row_ids[None, :] >= ranks[:, None])
        has_pivot = eligible.any(axis=1)
        if not has_pivot.any():
            continue
        idx = np.flatnonzero(has_pivot)
        src = np.argmax(eligible[idx], axis=1)
        dst = ranks[idx]
        src_rows = A[idx, src].copy()
        A[idx, src] = A[idx, dst]
        A[idx, dst] = src_rows
        scale = inverses[A[idx, dst, col]]
        A[idx, dst] = (A[idx, dst] * scale[:, None]) % q
        factors = A[idx, :, col].copy()
        factors[np.arange(idx.size), dst] = 0
        A[idx] = (A[idx] - factors[:, :, None] * A[idx, dst][:, None, :]) % q
        ranks[idx] += 1
    return ranks


def random_full_rank(GF, rows: int, cols: int, rng: np.random.Generator) -> galois.FieldArray:
    """Uniform rows x cols matrix of rank min(rows, cols), by rejection."""
    target = min(rows, cols)
    while True:
        M = GF(rng.integers(0, GF.order, size=(rows, cols)))
        if target == 0 or rank(M) == target:
            return M
