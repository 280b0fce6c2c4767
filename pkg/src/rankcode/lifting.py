"""Lifting rank-metric codewords to subspaces and reducing received matrices.

``lift`` maps an n x m matrix x to the row space of [I | x]. ``reduce``
turns any received N x (n+m) matrix into a tuple (r, L_hat, E_hat) whose
generalized rank-decoding objective is the subspace distance in disguise:

    d_S(<[I | x]>, <Y>) = 2 rank [L_hat, r - x; 0, E_hat] - (mu + delta)
"""

from dataclasses import dataclass

import galois

from rankcode.decoder import ReceivedTuple
from rankcode.errors import ShapeError
from rankcode.field import ExtensionField
from rankcode.linalg import Subspace, errata_matrix, hstack, rank, rre, subspace_distance, vstack


def lifted_matrix(x) -> galois.FieldArray:
    """[I | x]."""
    GF = type(x)
    return hstack([GF.Identity(x.shape[0]), x])


def lift(x) -> Subspace:
    return Subspace.span(lifted_matrix(x))


@dataclass(frozen=True, eq=False)
class ReductionResult:
    r: galois.FieldArray
    L_hat: galois.FieldArray
    E_hat: galois.FieldArray
    U: tuple[int, ...]

    @property
    def mu(self) -> int:
        return len(self.U)

    @property
    def delta(self) -> int:
        return self.E_hat.shape[0]

    @property
    def n(self) -> int:
        return self.r.shape[0]

    def assembled(self) -> galois.FieldArray:
        """[I + L_hat I_U^T, r; 0, E_hat], row-equivalent to the received matrix."""
        GF = type(self.r)
        header = GF.Identity(self.n)
        header[:, list(self.U)] += self.L_hat
        top = hstack([header, self.r])
        bottom = hstack([GF.Zeros((self.delta, self.n)), self.E_hat])
        return vstack([top, bottom])

    def to_received(self, field: ExtensionField) -> ReceivedTuple:
        return ReceivedTuple(field.from_matrix(self.r), self.L_hat, self.E_hat)


def reduce(Y, n: int) -> ReductionResult:
    """Reduction of an N x (n+m) matrix, read off its RRE form.

    Zero rows are dropped. Pivots among the first n columns give U^c; the
    remaining rows, whose pivots lie in the payload, give E_hat.
    """
    GF = type(Y)
    if Y.ndim != 2 or Y.shape[1] < n:
        raise ShapeError(f"received matrix must have at least {n} columns, got {Y.shape}")
    m = Y.shape[1] - n
    R, pivots = rre(Y)
    R = R[: len(pivots)]
    header_pivots = [p for p in pivots if p < n]
    rows = len(header_pivots)
    U = tuple(i for i in range(n) if i not in header_pivots)

    W, r_tilde, E_hat = R[:rows, :n], R[:rows, n:], R[rows:, n:]
    r = GF.Zeros((n, m))
    r[header_pivots] = r_tilde
    L_hat = GF.Zeros((n, len(U)))
    for j, u in enumerate(U):
        L_hat[u, j] = -GF(1)
    if U and rows:
        L_hat[header_pivots] += W[:, list(U)]
    return ReductionResult(r, L_hat, E_hat.copy(), U)


def reduction_distance(red: ReductionResult, x) -> int:
    """2 rank [L_hat, r - x; 0, E_hat] - (mu + delta)."""
    if x.shape != red.r.shape:
        raise ShapeError(f"payload shape {x.shape} does not match {red.r.shape}")
    return 2 * rank(errata_matrix(red.L_hat, red.r - x, red.E_hat)) - (red.mu + red.delta)


def errata_counts(red: ReductionResult, x) -> tuple[int, int, int]:
    """(eps, mu, delta) of the errata pattern relative to payload x."""
    total = rank(errata_matrix(red.L_hat, red.r - x, red.E_hat))
    return total - red.mu - red.delta, red.mu, red.delta


def distance_bound(X, Y) -> tuple[int, int]:
    """(d_S(<X>, <Y>), 2 rank(Y - X) - |rank X - rank Y|) for same-shape X, Y."""
    if X.shape != Y.shape:
        raise ShapeError(f"shapes differ: {X.shape} and {Y.shape}")
    distance = subspace_distance(Subspace.span(X), Subspace.span(Y))
    bound = 2 * rank(Y - X) - abs(rank(X) - rank(Y))
    return distance, bound


def capability_guarantee(t: int, rho: int, d: int) -> bool:
    """Whether 2t + rho < d, which guarantees decoding of a lifted MRD code."""
    return 2 * t + rho < d
