import argparse
import sys

from rankcode.commands import (
    decode,
    encode,
    oracle_check,
    params,
    simulate,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankcode",
        description="Gabidulin codes for random linear network coding",
        epilog="For detailed help on a specific command, run: rankcode <command> -h",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    params.add_parser(subparsers)
    encode.add_parser(subparsers)
    decode.add_parser(subparsers)
    simulate.add_parser(subparsers)
    oracle_check.add_parser(subparsers)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code or 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
