"""Exhaustive reference decoders and rank minimizations.

Everything here enumerates, so every entry point checks its search size
against a limit and raises OracleLimitError instead of truncating.
"""

import itertools
import logging
from typing import Any, NamedTuple, Sequence

import numpy as np

from rankcode.decoder import ReceivedTuple
from rankcode.errors import OracleLimitError, ShapeError
from rankcode.gabidulin import DEFAULT_ENUMERATION_LIMIT, GabidulinCode
from rankcode.linalg import Subspace, batch_rank, subspace_distance

logger = logging.getLogger(__name__)

CHUNK = 4096


class OracleResult(NamedTuple):
    winner: Any
    objective: int
    ambiguous: bool
    minimizers: tuple


def _as_int(X) -> np.ndarray:
    return np.asarray(X).view(np.ndarray).astype(np.int64)


def _check_size(count: int, limit: int, what: str):
    if count > limit:
        raise OracleLimitError(f"{what}: {count} candidates exceed the limit {limit}")


def _batched_ranks(stacks, q: int) -> np.ndarray:
    return np.concatenate(
        [batch_rank(stacks[i : i + CHUNK], q) for i in range(0, len(stacks), CHUNK)]
    )


def _digit_grid(q: int, count: int) -> np.ndarray:
    if count == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(q), repeat=count)), dtype=np.int64)


def brute_generalized_decode(
    code: GabidulinCode, received: ReceivedTuple, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> OracleResult:
    """argmin over codewords x of rank [L_hat, r - x; 0, E_hat]."""
    received.validate(code)
    _check_size(code.cardinality, limit, code.spec)
    field, q = code.field, code.q
    n, mu, delta = code.n, received.mu, received.delta
    words = code.codeword_matrices
    r = _as_int(field.to_matrix(received.r))

    stacks = np.zeros((len(words), n + delta, mu + code.m), dtype=np.int64)
    stacks[:, :n, :mu] = _as_int(received.L_hat)
    stacks[:, :n, mu:] = (r[None] - words) % q
    stacks[:, n:, mu:] = _as_int(received.E_hat)
    objectives = _batched_ranks(stacks, q)

    best = int(objectives.min())
    indices = np.flatnonzero(objectives == best)
    minimizers = tuple(field.from_matrix(field.GFq(words[i])) for i in indices)
    if len(indices) > 1:
        logger.debug(f"oracle: {len(indices)} codewords share objective {best}")
    return OracleResult(minimizers[0], best, len(indices) > 1, minimizers)


def brute_subspace_decode(codebook: Sequence[Subspace], U: Subspace) -> OracleResult:
    """argmin over the codebook of the subspace distance to U."""
    if not codebook:
        raise ShapeError("empty codebook")
    distances = [subspace_distance(V, U) for V in codebook]
    best = min(distances)
    minimizers = tuple(V for V, dist in zip(codebook, distances) if dist == best)
    return OracleResult(minimizers[0], best, len(minimizers) > 1, minimizers)


def min_rank_erasure_deviation(e, L_hat, E_hat, limit: int = DEFAULT_ENUMERATION_LIMIT) -> int:
    """min over E1 (mu x m) and L2 (n x delta) of rank(e - L_hat E1 - L2 E_hat)."""
    q = type(e).order
    n, m = e.shape
    mu, delta = L_hat.shape[1], E_hat.shape[0]
    if L_hat.shape[0] != n or E_hat.shape[1] != m:
        raise ShapeError(f"L_hat {L_hat.shape} and E_hat {E_hat.shape} do not fit e {e.shape}")
    unknowns = mu * m + n * delta
    _check_size(q**unknowns, limit, "erasure/deviation search")

    grid = _digit_grid(q, unknowns)
    E1 = grid[:, : mu * m].reshape(len(grid), mu, m)
    L2 = grid[:, mu * m :].reshape(len(grid), n, delta)
    residual = (
        _as_int(e)[None]
        - np.einsum("iu,cum->cim", _as_int(L_hat), E1)
        - np.einsum("ciu,um->cim", L2, _as_int(E_hat))
    ) % q
    return int(_batched_ranks(residual, q).min())


def min_rank_unconstrained(X, Y, limit: int = DEFAULT_ENUMERATION_LIMIT) -> int:
    """min over A of rank(Y - A X)."""
    q = type(X).order
    if X.shape[1] != Y.shape[1]:
        raise ShapeError(f"X {X.shape} and Y {Y.shape} need the same number of columns")
    rows_a, cols_a = Y.shape[0], X.shape[0]
    _check_size(q ** (rows_a * cols_a), limit, "unconstrained search")

    grid = _digit_grid(q, rows_a * cols_a)
    A = grid.reshape(len(grid), rows_a, cols_a)
    residual = (_as_int(Y)[None] - np.einsum("cij,jk->cik", A, _as_int(X))) % q
    return int(_batched_ranks(residual, q).min())
