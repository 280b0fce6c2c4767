import argparse

import numpy as np

from rankcode.config import resolve_seed
from rankcode.decoder import generalized_decode, generalized_decode_locator, random_received
from rankcode.errors import EXIT_DECODE
from rankcode.gabidulin import DEFAULT_ENUMERATION_LIMIT
from rankcode.oracle import brute_generalized_decode
from rankcode.utils import add_common_args, code_spec, exit_on_error


def correctable_patterns(d: int) -> list[tuple[int, int, int]]:
    """Every (eps, mu, delta) with 2 eps + mu + delta <= d - 1."""
    return [
        (eps, mu, delta)
        for eps in range((d - 1) // 2 + 1)
        for mu in range(d - 2 * eps)
        for delta in range(d - 2 * eps - mu)
    ]


def check(code, trials: int, seed: int, limit: int, logger) -> dict[str, int]:
    rng = np.random.default_rng(seed)
    patterns = [p for p in correctable_patterns(code.d) if sum(p) <= min(code.n, code.m)]
    counts = {"trials": trials, "value_first": 0, "locator_first": 0, "oracle_unique": 0}
    for trial in range(trials):
        eps, mu, delta = patterns[rng.integers(len(patterns))]
        x, received = random_received(code, eps, mu, delta, rng)
        oracle = brute_generalized_decode(code, received, limit)
        counts["oracle_unique"] += not oracle.ambiguous and np.array_equal(oracle.winner, x)
        for key, decoder in (
            ("value_first", generalized_decode),
            ("locator_first", generalized_decode_locator),
        ):
            outcome = decoder(code, received)
            if outcome.success and np.array_equal(outcome.codeword, oracle.winner):
                counts[key] += 1
            else:
                logger.warning(f"trial {trial}: {key} disagrees with the oracle at {(eps, mu, delta)}")
    return counts


@exit_on_error
def run(args, logger):
    seed = resolve_seed(args.seed)
    counts = check(args.code, args.trials, seed, args.limit, logger)
    print(f"code={args.code.spec}")
    print(f"seed={seed}")
    for key, value in counts.items():
        print(f"{key}={value}")
    if counts["value_first"] != args.trials or counts["locator_first"] != args.trials:
        return EXIT_DECODE


def add_parser(subparsers):
    parser = subparsers.add_parser(
        "oracle-check",
        help="Compare both decoders with brute-force decoding",
        description="""
Draws random correctable received tuples (2 eps + mu + delta <= d - 1) for
a code small enough to enumerate, decodes them with both algebraic decoders
and with exhaustive search, and reports how often they agree. Exits with
status 4 on any disagreement.

Example:
    rankcode oracle-check gab:q=2,m=4,n=4,k=2 --trials 500 --seed 1
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_common_args(parser)
    parser.add_argument("code", type=code_spec, help="Code spec, e.g. gab:q=2,m=4,n=4,k=2")
    parser.add_argument("--trials", type=int, default=100, help="Number of tuples (default: 100)")
    parser.add_argument("--seed", type=int, help="Seed (default: $RANKCODE_SEED, then 0)")
    parser.add_argument(
        "--limit",
        type=int,
        default=DEFAULT_ENUMERATION_LIMIT,
        help=f"Largest code to enumerate (default: {DEFAULT_ENUMERATION_LIMIT})",
    )
    parser.set_defaults(func=run)
