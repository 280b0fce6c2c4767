import argparse

from rankcode.errors import ShapeError
from rankcode.lifting import lifted_matrix
from rankcode.utils import add_common_args, code_spec, exit_on_error, read_rows, write_rows


@exit_on_error
def run(args, logger):
    code = args.code
    field = code.field
    message = read_rows(args.input, field.GFq, code.m, code.k)
    if message.shape != (code.k, code.m):
        raise ShapeError(f"message must be {code.k}x{code.m}, got {message.shape}")
    x = code.encode(field.from_matrix(message))
    write_rows(args.output, lifted_matrix(field.to_matrix(x)))
    logger.info(f"encoded {code.k} message symbols into {code.n} packets")


def add_parser(subparsers):
    parser = subparsers.add_parser(
        "encode",
        help="Encode a message into lifted packets",
        description="""
Reads a message of k symbols of F_{q^m}, one per line as m base-q digits
(lowest power first), encodes it and writes the n packets [I | x], one per
line as n+m digits.

Example:
    rankcode encode gab:q=2,m=4,n=4,k=2 message.txt -o packets.txt
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_common_args(parser)
    parser.add_argument("code", type=code_spec, help="Code spec, e.g. gab:q=2,m=8,n=8,k=4")
    parser.add_argument("input", nargs="?", default="-", help="Message file (default: stdin)")
    parser.add_argument("-o", "--output", default="-", help="Packet file (default: stdout)")
    parser.set_defaults(func=run)
