"""Random linear network coding channel Y = A X + B Z, and a trial runner.

A is an N x n transfer matrix whose rank is at least n - rho_max, Z holds
t_max injected packets entering the network on ``num_links`` links and B
mixes them into the N received packets. Ground truth is returned next to Y
for assertions and reports; decoders only ever see Y.
"""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from functools import partial
from typing import NamedTuple

import galois
import numpy as np
import pandas as pd

from rankcode.decoder import DecodeOutcome, generalized_decode, generalized_decode_locator
from rankcode.errors import FieldMismatchError, ParameterError, ShapeError
from rankcode.gabidulin import GabidulinCode
from rankcode.lifting import (
    ReductionResult,
    errata_counts,
    lifted_matrix,
    reduce,
    reduction_distance,
)
from rankcode.linalg import hstack, random_full_rank, rank

logger = logging.getLogger(__name__)

DEFAULT_ADVERSARY_CANDIDATES = 32


@dataclass(frozen=True)
class ChannelConfig:
    n: int
    m: int
    N: int
    rho_max: int = 0
    t_max: int = 0
    num_links: int | None = None
    seed: int = 0
    adversarial: bool = False
    adversary_candidates: int = DEFAULT_ADVERSARY_CANDIDATES

    def __post_init__(self):
        if self.num_links is None:
            object.__setattr__(self, "num_links", self.t_max)
        if self.n < 1 or self.m < 0 or self.N < 0:
            raise ParameterError(f"invalid channel shape n={self.n}, m={self.m}, N={self.N}")
        if self.rho_max < 0 or self.t_max < 0:
            raise ParameterError("rho_max and t_max must be non-negative")
        if self.num_links < self.t_max:
            raise ParameterError(
                f"{self.t_max} corrupt packets need at least as many links, got {self.num_links}"
            )
        if self.N < self.n - self.rho_max:
            raise ParameterError(
                f"infeasible rank target: N={self.N} < n - rho_max = {self.n - self.rho_max}"
            )
        if self.adversary_candidates < 1:
            raise ParameterError("adversarial search needs at least one candidate")

    @property
    def M(self) -> int:
        """Packet length."""
        return self.n + self.m

    @classmethod
    def for_code(cls, code: GabidulinCode, **kwargs) -> "ChannelConfig":
        kwargs.setdefault("N", code.n)
        return cls(n=code.n, m=code.m, **kwargs)


class Transmission(NamedTuple):
    Y: galois.FieldArray
    A: galois.FieldArray
    B: galois.FieldArray
    Z: galois.FieldArray
    adversary_rank: int | None = None


def channel_output(X, A, B, Z) -> galois.FieldArray:
    """A X + B Z."""
    Y = A @ X
    if Z.shape[0]:
        Y = Y + B @ Z
    return Y


def _random_matrix(GF, shape, rng: np.random.Generator):
    return GF(rng.integers(0, GF.order, size=shape))


def _nonzero_rows(GF, count: int, cols: int, rng: np.random.Generator):
    Z = _random_matrix(GF, (count, cols), rng)
    for i in range(count):
        while cols and not np.any(Z[i]):
            Z[i] = _random_matrix(GF, (cols,), rng)
    return Z


class RandomLinearNetworkChannel:
    """Owns its RNG; one instance per independent stream of draws."""

    def __init__(self, cfg: ChannelConfig, code: GabidulinCode | None = None, rng=None):
        self.cfg = cfg
        self.code = code
        self.rng = rng if rng is not None else np.random.default_rng(cfg.seed)

    def transfer_matrix(self, GF) -> galois.FieldArray:
        """N x n, rank drawn uniformly from [n - rho_max, min(N, n)]."""
        cfg = self.cfg
        low, high = max(cfg.n - cfg.rho_max, 0), min(cfg.N, cfg.n)
        target = int(self.rng.integers(low, high + 1))
        if target == 0:
            return GF.Zeros((cfg.N, cfg.n))
        left = random_full_rank(GF, cfg.N, target, self.rng)
        right = random_full_rank(GF, target, cfg.n, self.rng)
        return left @ right

    def injection(self, GF, directions=None) -> tuple[galois.FieldArray, galois.FieldArray]:
        """(B, Z) with exactly t_max nonzero rows of Z placed on random links.

        ``directions`` restricts the injected rows to combinations of its rows.
        """
        cfg = self.cfg
        B = _random_matrix(GF, (cfg.N, cfg.num_links), self.rng)
        Z = GF.Zeros((cfg.num_links, cfg.M))
        if cfg.t_max == 0:
            return B, Z
        links = self.rng.choice(cfg.num_links, size=cfg.t_max, replace=False)
        if directions is None:
            Z[links] = _nonzero_rows(GF, cfg.t_max, cfg.M, self.rng)
        else:
            mix = _nonzero_rows(GF, cfg.t_max, directions.shape[0], self.rng)
            rows = mix @ directions
            for i in range(cfg.t_max):
                if not np.any(rows[i]):
                    rows[i] = _nonzero_rows(GF, 1, cfg.M, self.rng)[0]
            Z[links] = rows
        return B, Z

    def _codeword_directions(self, GF):
        """Rows [0 | c] for a random nonzero codeword c."""
        code = self.code
        while True:
            c = code.encode(code.random_message(self.rng))
            if np.any(c):
                break
        payload = code.field.to_matrix(c)
        return hstack([GF.Zeros((code.n, code.n)), payload])

    def _adversarial_injection(self, GF, X, A):
        x = X[:, self.cfg.n :]
        best = None
        for trial in range(self.cfg.adversary_candidates):
            directions = None
            if self.code is not None and trial % 2:
                directions = self._codeword_directions(GF)
            B, Z = self.injection(GF, directions)
            score = reduction_distance(reduce(channel_output(X, A, B, Z), self.cfg.n), x)
            if best is None or score > best[0]:
                best = (score, B, Z)
        score, B, Z = best
        logger.debug(f"adversary picked an injection at subspace distance {score}")
        return B, Z, score

    def transmit(self, X) -> Transmission:
        cfg = self.cfg
        if X.ndim != 2 or X.shape != (cfg.n, cfg.M):
            raise ShapeError(f"transmitted matrix must be {cfg.n}x{cfg.M}, got {X.shape}")
        GF = type(X)
        if self.code is not None and GF is not self.code.field.GFq:
            raise FieldMismatchError("transmitted matrix is not over the code's base field")
        A = self.transfer_matrix(GF)
        if cfg.adversarial and cfg.t_max:
            B, Z, score = self._adversarial_injection(GF, X, A)
        else:
            (B, Z), score = self.injection(GF), None
        return Transmission(channel_output(X, A, B, Z), A, B, Z, score)


def transmit(cfg: ChannelConfig, X, rng=None, code: GabidulinCode | None = None) -> Transmission:
    return RandomLinearNetworkChannel(cfg, code, rng).transmit(X)


def decode_reduction(code: GabidulinCode, red: ReductionResult, locator: bool = False) -> DecodeOutcome:
    decoder = generalized_decode_locator if locator else generalized_decode
    return decoder(code, red.to_received(code.field))


def end_to_end_decode(code: GabidulinCode, Y, locator: bool = False) -> DecodeOutcome:
    """Reduce a received matrix and decode the resulting tuple."""
    if type(Y) is not code.field.GFq:
        raise FieldMismatchError("received matrix is not over the code's base field")
    if Y.ndim != 2 or Y.shape[1] != code.n + code.m:
        raise ShapeError(f"received packets must have length {code.n + code.m}, got {Y.shape}")
    return decode_reduction(code, reduce(Y, code.n), locator)


class TrialResult(NamedTuple):
    success: bool
    failure: str | None
    errata: tuple[int, int, int]
    rank_z: int
    operations: int


def run_trial(code: GabidulinCode, cfg: ChannelConfig, seed) -> TrialResult:
    rng = np.random.default_rng(seed)
    x_word = code.encode(code.random_message(rng))
    x = code.field.to_matrix(x_word)
    tx = RandomLinearNetworkChannel(cfg, code, rng).transmit(lifted_matrix(x))
    red = reduce(tx.Y, code.n)
    outcome = decode_reduction(code, red)
    if outcome.success and np.array_equal(outcome.codeword, x_word):
        failure = None
    elif outcome.success:
        failure = "miscorrection"
    else:
        failure = outcome.failure.kind
    return TrialResult(
        failure is None, failure, errata_counts(red, x), rank(tx.Z), outcome.operations
    )


@dataclass
class SimulationReport:
    code: str
    config: ChannelConfig
    trials: int = 0
    successes: int = 0
    failures: Counter = dataclass_field(default_factory=Counter)
    errata: Counter = dataclass_field(default_factory=Counter)
    rank_z_total: int = 0
    operations_total: int = 0

    def add(self, result: TrialResult):
        self.trials += 1
        self.successes += result.success
        if result.failure is not None:
            self.failures[result.failure] += 1
        self.errata[result.errata] += 1
        self.rank_z_total += result.rank_z
        self.operations_total += result.operations

    @property
    def success_rate(self) -> float | None:
        return self.successes / self.trials if self.trials else None

    @property
    def mean_rank_z(self) -> float | None:
        return self.rank_z_total / self.trials if self.trials else None

    @property
    def mean_operations(self) -> float | None:
        return self.operations_total / self.trials if self.trials else None

    def as_lines(self) -> list[str]:
        """Flat ``key=value`` lines in a fixed order."""
        cfg = self.config
        lines = [
            f"code={self.code}",
            f"N={cfg.N}",
            f"rho={cfg.rho_max}",
            f"t={cfg.t_max}",
            f"links={cfg.num_links}",
            f"seed={cfg.seed}",
            f"adversarial={str(cfg.adversarial).lower()}",
            f"trials={self.trials}",
            f"successes={self.successes}",
        ]
        if not self.trials:
            return lines
        lines.append(f"success_rate={self.success_rate:.6f}")
        lines.append(f"mean_rank_z={self.mean_rank_z:.6f}")
        lines.append(f"mean_operations={self.mean_operations:.1f}")
        for reason in sorted(self.failures):
            lines.append(f"failures.{reason}={self.failures[reason]}")
        for eps, mu, delta in sorted(self.errata):
            lines.append(f"errata.e{eps}.m{mu}.d{delta}={self.errata[eps, mu, delta]}")
        return lines

    def histogram_frame(self) -> pd.DataFrame:
        rows = [
            {"eps": eps, "mu": mu, "delta": delta, "trials": count}
            for (eps, mu, delta), count in sorted(self.errata.items())
        ]
        frame = pd.DataFrame(rows, columns=["eps", "mu", "delta", "trials"])
        if self.trials:
            frame["share"] = frame["trials"] / self.trials
        return frame


def simulate(code: GabidulinCode, cfg: ChannelConfig, trials: int, jobs: int = 1) -> SimulationReport:
    """Run ``trials`` seeded transmissions; the report depends only on cfg.seed."""
    if (cfg.n, cfg.m) != (code.n, code.m):
        raise ShapeError(
            f"channel carries {cfg.n}x{cfg.m} payloads, code {code.spec} needs {code.n}x{code.m}"
        )
    if trials < 0 or jobs < 1:
        raise ParameterError(f"need trials >= 0 and jobs >= 1, got {trials} and {jobs}")
    seeds = np.random.SeedSequence(cfg.seed).spawn(trials)
    run = partial(run_trial, code, cfg)
    if jobs > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, seeds))
    else:
        results = [run(seed) for seed in seeds]

    report = SimulationReport(code.spec, cfg)
    for result in results:
        report.add(result)
    if trials:
        logger.info(
            f"{code.spec}: {report.successes}/{trials} decoded, failures {dict(report.failures)}"
        )
    return report
