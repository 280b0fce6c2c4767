import argparse

import numpy as np

from rankcode.channel import decode_reduction
from rankcode.errors import OracleLimitError
from rankcode.lifting import reduce
from rankcode.oracle import brute_generalized_decode
from rankcode.utils import add_common_args, code_spec, exit_on_error, read_rows, write_rows


def cross_check(code, received, codeword, logger) -> bool:
    try:
        result = brute_generalized_decode(code, received)
    except OracleLimitError as e:
        logger.warning(f"oracle skipped: {e}")
        return True
    agrees = not result.ambiguous and np.array_equal(result.winner, codeword)
    if agrees:
        logger.info(f"oracle agrees (objective {result.objective})")
    else:
        logger.warning(
            f"oracle disagrees: {len(result.minimizers)} minimizer(s) at objective {result.objective}"
        )
    return agrees


@exit_on_error
def run(args, logger):
    code = args.code
    field = code.field
    Y = read_rows(args.input, field.GFq, code.n + code.m)
    red = reduce(Y, code.n)
    logger.info(f"received {Y.shape[0]} packets: mu={red.mu}, delta={red.delta}")

    outcome = decode_reduction(code, red, locator=args.locator)
    if not outcome.success:
        logger.error(
            f"decoding failed ({outcome.failure.kind}) with mu={outcome.mu}, "
            f"delta={outcome.delta}, eps={outcome.epsilon}"
        )
    codeword = outcome.unwrap()
    logger.info(f"decoded with eps={outcome.epsilon} in {outcome.operations} operations")

    if args.oracle:
        cross_check(code, red.to_received(field), codeword, logger)

    if args.codeword:
        write_rows(args.output, field.to_matrix(codeword))
    else:
        write_rows(args.output, field.to_matrix(code.unencode(codeword)))


def add_parser(subparsers):
    parser = subparsers.add_parser(
        "decode",
        help="Decode received packets",
        description="""
Reads received packets, one per line as n+m base-q digits, reduces them to
a received word with erasure and deviation information and decodes. Writes
the k message symbols (or with --codeword the n x m payload) on success and
exits with status 4 when decoding fails.

Examples:
    rankcode decode gab:q=2,m=4,n=4,k=2 packets.txt
    rankcode decode gab:q=5,m=4,n=4,k=2 received.txt --codeword --oracle
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_common_args(parser)
    parser.add_argument("code", type=code_spec, help="Code spec, e.g. gab:q=2,m=8,n=8,k=4")
    parser.add_argument("input", nargs="?", default="-", help="Packet file (default: stdin)")
    parser.add_argument("-o", "--output", default="-", help="Output file (default: stdout)")
    parser.add_argument(
        "--codeword", action="store_true", help="Write the n x m payload instead of the message"
    )
    parser.add_argument(
        "--locator",
        action="store_true",
        help="Use the decoder that finds the error locators first",
    )
    parser.add_argument(
        "--oracle",
        action="store_true",
        help="Cross-check against the brute-force decoder when the code is small enough",
    )
    parser.set_defaults(func=run)
