"""Generalized decoding of Gabidulin codes: errors, erasures and deviations.

The error word is written e = sum_j L_j E_j with locators
X_j = sum_i L_ij h_i, so the syndromes are S_l = sum_j X_j^[l] E_j.
Erasures know their locator X_j, deviations know their value E_j and full
errors know neither. Decoding succeeds whenever 2*eps + mu + delta <= d - 1.

Two pipelines are provided. ``generalized_decode`` first finds the span
of the error values, ``generalized_decode_locator`` first finds the span of
the locators. They share one core because q-reversing the syndromes swaps
the roles of locators and values.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import NamedTuple

import galois
import numpy as np

from rankcode.errors import DecodingFailure, InconsistentSystemError, ParameterError, ShapeError
from rankcode.field import ExtensionField, count_operations
from rankcode.gabidulin import GabidulinCode, berlekamp_massey, gabidulin_solve
from rankcode.linalg import errata_matrix, null_space, random_full_rank, rank
from rankcode.linpoly import LinPoly, min_poly, q_reverse, root_space_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ReceivedTuple:
    """(r, L_hat, E_hat): received word, erasure locations, deviation values."""

    r: galois.FieldArray
    L_hat: galois.FieldArray
    E_hat: galois.FieldArray

    @classmethod
    def plain(cls, code: GabidulinCode, r) -> "ReceivedTuple":
        GFq = code.field.GFq
        return cls(r, GFq.Zeros((code.n, 0)), GFq.Zeros((0, code.m)))

    @property
    def mu(self) -> int:
        return self.L_hat.shape[1]

    @property
    def delta(self) -> int:
        return self.E_hat.shape[0]

    def validate(self, code: GabidulinCode):
        field = code.field
        field.check(self.r)
        if self.r.shape != (code.n,):
            raise ShapeError(f"r must have length {code.n}, got shape {self.r.shape}")
        if self.L_hat.ndim != 2 or self.L_hat.shape[0] != code.n:
            raise ShapeError(f"L_hat must have {code.n} rows, got shape {self.L_hat.shape}")
        if self.E_hat.ndim != 2 or self.E_hat.shape[1] != code.m:
            raise ShapeError(f"E_hat must have {code.m} columns, got shape {self.E_hat.shape}")
        if not isinstance(self.L_hat, field.GFq) or not isinstance(self.E_hat, field.GFq):
            raise ParameterError("L_hat and E_hat must be matrices over the base field")
        if rank(self.L_hat) != self.mu:
            raise ParameterError(f"L_hat must have full column rank {self.mu}")
        if rank(self.E_hat) != self.delta:
            raise ParameterError(f"E_hat must have full row rank {self.delta}")

    def objective(self, code: GabidulinCode, x) -> int:
        """rank [L_hat, r - x; 0, E_hat]."""
        e = code.field.to_matrix(code.field.sub(self.r, x))
        return rank(errata_matrix(self.L_hat, e, self.E_hat))


@dataclass
class DecoderWorkspace:
    """Intermediate values of one decode; a fresh instance per call."""

    S: LinPoly | None = None
    X_hat: galois.FieldArray | None = None
    E_hat: galois.FieldArray | None = None
    lambda_U: LinPoly | None = None
    sigma_D: LinPoly | None = None
    # value-first pipeline
    S_DU: LinPoly | None = None
    sigma_F: LinPoly | None = None
    omega: LinPoly | None = None
    S_FD: LinPoly | None = None
    beta: galois.FieldArray | None = None
    sigma_U: LinPoly | None = None
    sigma: LinPoly | None = None
    # locator-first pipeline
    S_UD: LinPoly | None = None
    lambda_F: LinPoly | None = None
    psi: LinPoly | None = None
    S_FU: LinPoly | None = None
    gamma: galois.FieldArray | None = None
    lambda_D: LinPoly | None = None
    lam: LinPoly | None = None
    # errata
    locators: galois.FieldArray | None = None
    values: galois.FieldArray | None = None
    locations: galois.FieldArray | None = None
    epsilon: int | None = None
    tau: int | None = None


@dataclass
class DecodeOutcome:
    codeword: galois.FieldArray | None
    error: galois.FieldArray | None
    epsilon: int | None
    mu: int
    delta: int
    failure: DecodingFailure | None = None
    operations: int = 0
    workspace: DecoderWorkspace = dataclass_field(default_factory=DecoderWorkspace, repr=False)

    @property
    def success(self) -> bool:
        return self.failure is None

    def unwrap(self):
        if self.failure is not None:
            raise self.failure
        return self.codeword


class _SpanResult(NamedTuple):
    lambda_U: LinPoly
    sigma_D: LinPoly
    aux: LinPoly
    sigma_F: LinPoly
    remainder: LinPoly
    S_FD: LinPoly
    beta: galois.FieldArray
    sigma_U: LinPoly
    sigma: LinPoly
    epsilon: int


def _span_polynomial(field: ExtensionField, d: int, T: LinPoly, locators, values) -> _SpanResult:
    """Polynomial whose roots span the values of T_l = sum_j loc_j^[l] val_j.

    ``locators`` are the known locators (erasure-like terms), ``values`` the
    known values (deviation-like terms).
    """
    a, b = locators.size, values.size
    lambda_U = min_poly(field, locators)
    sigma_D = min_poly(field, values)
    aux = sigma_D @ T @ q_reverse(lambda_U, a)

    d_eff = d - a - b
    sigma_F = berlekamp_massey(field, aux.padded(d - 1)[a + b :], d_eff)
    epsilon = sigma_F.q_degree
    if 2 * epsilon > d_eff - 1:
        raise DecodingFailure(
            f"{epsilon} full errors exceed the remaining capability", kind="capability"
        )

    tau = epsilon + a + b
    remainder = (sigma_F @ aux).truncate(d - 1)
    if remainder.q_degree >= tau:
        raise DecodingFailure(
            "modified key equation has a remainder of q-degree >= tau", kind="key-equation"
        )

    S_FD = sigma_F @ sigma_D @ T
    if a:
        start = epsilon + b
        rhs = S_FD.padded(d - 1)[start:]
        beta = gabidulin_solve(field, field.frob_pow(locators, start), rhs)
    else:
        beta = field.zeros(0)
    sigma_U = min_poly(field, beta)
    sigma = sigma_U @ sigma_F @ sigma_D
    return _SpanResult(lambda_U, sigma_D, aux, sigma_F, remainder, S_FD, beta, sigma_U, sigma, epsilon)


def _roots(poly: LinPoly, what: str):
    roots = root_space_basis(poly)
    if roots.size != poly.q_degree:
        raise DecodingFailure(
            f"{what} has a root space of dimension {roots.size} < q-degree {poly.q_degree}",
            kind="root-space",
        )
    return roots


def _known_errata(code: GabidulinCode, received: ReceivedTuple):
    field = code.field
    X_hat = field.from_matrix(received.L_hat.T @ code.h_matrix) if received.mu else field.zeros(0)
    E_hat = field.from_matrix(received.E_hat) if received.delta else field.zeros(0)
    return X_hat, E_hat


def _error_word(code: GabidulinCode, locators, values, ws: DecoderWorkspace):
    field = code.field
    ws.locators, ws.values = locators, values
    if locators.size == 0:
        ws.locations = field.GFq.Zeros((code.n, 0))
        return field.zeros(code.n)
    ws.locations = (field.to_matrix(locators) @ code.Q).T
    return field.from_matrix(ws.locations @ field.to_matrix(values))


def _value_first(code: GabidulinCode, received: ReceivedTuple, ws: DecoderWorkspace):
    field, d = code.field, code.d
    span = _span_polynomial(field, d, ws.S, ws.X_hat, ws.E_hat)
    ws.lambda_U, ws.sigma_D, ws.S_DU = span.lambda_U, span.sigma_D, span.aux
    ws.sigma_F, ws.omega, ws.S_FD = span.sigma_F, span.remainder, span.S_FD
    ws.beta, ws.sigma_U, ws.sigma = span.beta, span.sigma_U, span.sigma
    ws.epsilon = span.epsilon

    values = _roots(span.sigma, "error span polynomial")
    ws.tau = values.size
    S_bar = q_reverse(ws.S, d - 2).padded(d - 1)
    locators = gabidulin_solve(field, field.frob_pow(values, 2 - d), S_bar)
    return _error_word(code, locators, values, ws)


def _locator_first(code: GabidulinCode, received: ReceivedTuple, ws: DecoderWorkspace):
    field, d = code.field, code.d
    S_bar = q_reverse(ws.S, d - 2)
    dual_locators = field.frob_pow(ws.E_hat, 2 - d)
    span = _span_polynomial(field, d, S_bar, dual_locators, ws.X_hat)
    ws.sigma_D = min_poly(field, ws.E_hat)
    ws.lambda_U, ws.S_UD = span.sigma_D, span.aux
    ws.lambda_F, ws.psi, ws.S_FU = span.sigma_F, span.remainder, span.S_FD
    ws.gamma, ws.lambda_D, ws.lam = span.beta, span.sigma_U, span.sigma
    ws.epsilon = span.epsilon

    locators = _roots(span.sigma, "error locator polynomial")
    ws.tau = locators.size
    values = gabidulin_solve(field, locators, ws.S.padded(d - 1))
    return _error_word(code, locators, values, ws)


def _errors_only(code: GabidulinCode, received: ReceivedTuple, ws: DecoderWorkspace):
    """Berlekamp-Massey on the syndromes, then the error span, then the locators."""
    field, d = code.field, code.d
    ws.sigma_F = berlekamp_massey(field, ws.S.padded(d - 1), d)
    ws.sigma = ws.sigma_F
    ws.epsilon = ws.sigma_F.q_degree
    if 2 * ws.epsilon > d - 1:
        raise DecodingFailure(
            f"{ws.epsilon} errors exceed the capability (d-1)//2 = {(d - 1) // 2}",
            kind="capability",
        )
    values = _roots(ws.sigma_F, "error span polynomial")
    ws.tau = values.size
    if not values.size:
        return _error_word(code, field.zeros(0), values, ws)
    S_bar = q_reverse(ws.S, d - 2).padded(d - 1)
    locators = gabidulin_solve(field, field.frob_pow(values, 2 - d), S_bar)
    return _error_word(code, locators, values, ws)


def _verify(code: GabidulinCode, received: ReceivedTuple, codeword, error):
    if not code.is_codeword(codeword):
        raise DecodingFailure("corrected word is not a codeword", kind="not-codeword")
    mu, delta = received.mu, received.delta
    budget = mu + delta + (code.d - 1 - mu - delta) // 2
    errata = errata_matrix(received.L_hat, code.field.to_matrix(error), received.E_hat)
    if rank(errata) > budget:
        raise DecodingFailure(
            f"errata rank {rank(errata)} exceeds the decoding radius {budget}", kind="radius"
        )


def _decode(code: GabidulinCode, received: ReceivedTuple, pipeline) -> DecodeOutcome:
    received.validate(code)
    field = code.field
    ws = DecoderWorkspace()
    mu, delta = received.mu, received.delta
    with count_operations() as ops:
        try:
            if mu + delta >= code.d:
                raise DecodingFailure(
                    f"mu + delta = {mu + delta} reaches d = {code.d}", kind="capability"
                )
            ws.S = code.syndrome_poly(received.r)
            ws.X_hat, ws.E_hat = _known_errata(code, received)
            error = pipeline(code, received, ws)
            codeword = field.sub(received.r, error)
            _verify(code, received, codeword, error)
        except InconsistentSystemError as e:
            failure = DecodingFailure(f"inconsistent locator system: {e}", kind="inconsistent")
        except DecodingFailure as e:
            failure = e
        else:
            failure = None
    operations = sum(ops.values())
    if failure is not None:
        logger.debug(f"decoding failed (mu={mu}, delta={delta}): {failure.reason}")
        return DecodeOutcome(None, None, ws.epsilon, mu, delta, failure, operations, ws)
    logger.debug(f"decoded eps={ws.epsilon}, mu={mu}, delta={delta} in {operations} operations")
    return DecodeOutcome(codeword, error, ws.epsilon, mu, delta, None, operations, ws)


def generalized_decode(code: GabidulinCode, received: ReceivedTuple) -> DecodeOutcome:
    return _decode(code, received, _value_first)


def generalized_decode_locator(code: GabidulinCode, received: ReceivedTuple) -> DecodeOutcome:
    return _decode(code, received, _locator_first)


def conventional_decode(code: GabidulinCode, r) -> DecodeOutcome:
    """Errors-only decoding up to rank (d-1)//2."""
    return _decode(code, ReceivedTuple.plain(code, r), _errors_only)


def errata_capability(epsilon: int, mu: int, delta: int, d: int) -> bool:
    """2*eps + mu + delta <= d - 1."""
    return 2 * epsilon + mu + delta <= d - 1


class ConversePattern(NamedTuple):
    transmitted: galois.FieldArray
    rival: galois.FieldArray
    received: ReceivedTuple


def _minimum_rank_codeword(code: GabidulinCode, rng):
    """(c, L, E) with c = L E a codeword of rank exactly d."""
    field, n, d = code.field, code.n, code.d
    L = random_full_rank(field.GFq, n, d, rng)
    X = field.from_matrix(L.T @ code.h_matrix)
    if d == 1:
        E = field.random_independent(1, rng)
    else:
        moore = field.GF(np.stack([field.frob_pow(X, ell) for ell in range(d - 1)]))
        E = null_space(moore)[0]
    c = field.matmul(field.embed(L), E)
    return c, L, field.to_matrix(E)


def converse_pattern(code: GabidulinCode, epsilon: int, mu: int, delta: int, rng) -> ConversePattern:
    """A tuple that the transmitted codeword does not uniquely minimize.

    Needs 2*eps + mu + delta >= d and eps + mu + delta <= d. The difference
    of two codewords at distance d is split into erasure, deviation, error
    and leftover parts; the received tuple carries the first three.
    """
    d = code.d
    spare = d - mu - delta - epsilon
    if errata_capability(epsilon, mu, delta, d) or spare < 0 or min(epsilon, mu, delta) < 0:
        raise ParameterError(
            f"(eps, mu, delta) = ({epsilon}, {mu}, {delta}) does not give a converse for d={d}"
        )
    field = code.field
    c, L, E = _minimum_rank_codeword(code, rng)
    x = code.encode(code.random_message(rng))
    parts = d - spare
    e = field.from_matrix(L[:, :parts] @ E[:parts])
    received = ReceivedTuple(field.add(x, e), L[:, :mu].copy(), E[mu : mu + delta].copy())
    return ConversePattern(x, field.add(x, c), received)


def random_received(code: GabidulinCode, epsilon: int, mu: int, delta: int, rng):
    """(x, tuple) with eps full errors, mu erasures and delta deviations on codeword x."""
    tau = epsilon + mu + delta
    if min(epsilon, mu, delta) < 0 or tau > min(code.n, code.m):
        raise ParameterError(f"cannot place errata of rank {tau} in a {code.n}x{code.m} word")
    field = code.field
    L = random_full_rank(field.GFq, code.n, tau, rng)
    E = random_full_rank(field.GFq, tau, code.m, rng)
    x = code.encode(code.random_message(rng))
    r = field.add(x, field.from_matrix(L @ E)) if tau else x.copy()
    return x, ReceivedTuple(r, L[:, :mu].copy(), E[mu : mu + delta].copy())
