import argparse

from tabulate import tabulate

from rankcode.channel import ChannelConfig, simulate
from rankcode.config import load_simulation_config, merge_config, resolve_seed
from rankcode.errors import FormatError, ShapeError
from rankcode.gabidulin import GabidulinCode
from rankcode.utils import (
    add_common_args,
    add_decimals_arg,
    code_spec,
    exit_on_error,
    format_dataframe,
)

DEFAULTS = {"rho": 0, "t": 0, "links": None, "trials": 100, "adversarial": False, "jobs": 1}


def resolve_settings(args) -> dict:
    config = load_simulation_config(args.config) if args.config else {}
    settings = merge_config(args, config, DEFAULTS)
    settings["seed"] = resolve_seed(args.seed, config)
    code = settings.get("code")
    if code is None:
        raise FormatError("no code given on the command line or in the config file")
    if isinstance(code, str):
        code = GabidulinCode.from_spec(code)
    settings["code"] = code
    if args.n is not None and args.n != code.n or args.m is not None and args.m != code.m:
        raise ShapeError(f"--n/--m do not match {code.spec} (n={code.n}, m={code.m})")
    settings.setdefault("N", code.n)
    return settings


@exit_on_error
def run(args, logger):
    settings = resolve_settings(args)
    code = settings["code"]
    cfg = ChannelConfig.for_code(
        code,
        N=settings["N"],
        rho_max=settings["rho"],
        t_max=settings["t"],
        num_links=settings["links"],
        seed=settings["seed"],
        adversarial=settings["adversarial"],
    )
    logger.info(f"simulating {settings['trials']} trials over {cfg}")
    report = simulate(code, cfg, settings["trials"], jobs=settings["jobs"])

    print("\n".join(report.as_lines()))
    if args.table and report.trials:
        frame = format_dataframe(report.histogram_frame(), args)
        print()
        print(tabulate(frame, headers="keys", tablefmt="simple", showindex=False))


def add_parser(subparsers):
    parser = subparsers.add_parser(
        "simulate",
        help="Run seeded transmissions through a random network channel",
        description="""
Each trial encodes a random message, lifts it, sends it through Y = AX + BZ
with rank A >= n - rho and t injected packets, reduces Y and decodes.
The report lists the success count, failure reasons, the histogram of
(eps, mu, delta) seen by the decoder, the mean rank of Z and the mean
number of field operations per decode. The same seed gives the same report.

Settings may come from a YAML file (--config); flags given on the command
line win. The seed falls back to $RANKCODE_SEED, then 0.

Examples:
    rankcode simulate gab:q=2,m=6,n=6,k=2 --rho 2 --t 1 --trials 1000
    rankcode simulate --config sim.yaml --seed 7 --table
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_common_args(parser)
    add_decimals_arg(parser)
    parser.add_argument(
        "code", nargs="?", type=code_spec, help="Code spec, e.g. gab:q=2,m=8,n=8,k=4"
    )
    parser.add_argument("--config", help="YAML file with simulation settings")
    parser.add_argument("--n", type=int, help="Expected number of source packets")
    parser.add_argument("--m", type=int, help="Expected payload length")
    parser.add_argument("--N", type=int, help="Received packets per trial (default: n)")
    parser.add_argument("--rho", type=int, help="Maximum rank deficiency of A (default: 0)")
    parser.add_argument("--t", type=int, help="Injected packets per trial (default: 0)")
    parser.add_argument("--links", type=int, help="Injection links (default: t)")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.add_argument("--trials", type=int, help="Number of trials (default: 100)")
    parser.add_argument(
        "--adversarial",
        action="store_true",
        default=None,
        help="Pick the injection that pushes the received space furthest away",
    )
    parser.add_argument("--jobs", type=int, help="Worker threads (default: 1)")
    parser.add_argument("--table", action="store_true", help="Also print the errata histogram")
    parser.set_defaults(func=run)
