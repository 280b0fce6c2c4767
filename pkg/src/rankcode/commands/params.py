import argparse
import math

from rankcode.linalg import singleton_bounds, sub_optimality, subspace_code_bound
from rankcode.utils import add_common_args, code_spec, exit_on_error


def report_lines(code) -> list[str]:
    q, n, m, k, d = code.q, code.n, code.m, code.k, code.d
    rank_bound = singleton_bounds(q, n, m, d)
    subspace = subspace_code_bound(q, n + m, n, d)
    log_size = m * k
    return [
        f"code={code.spec}",
        f"field={code.field.params}",
        f"q={q}",
        f"m={m}",
        f"n={n}",
        f"k={k}",
        f"d={d}",
        f"cardinality={code.cardinality}",
        f"log_q_cardinality={log_size}",
        f"rank_singleton_log_q={max(n, m) * (min(n, m) - d + 1)}",
        f"mrd={str(code.cardinality == rank_bound.rank_metric_bound).lower()}",
        f"lifted_subspace_distance={2 * d}",
        f"subspace_singleton_log_q={math.log(subspace.singleton, q):.6f}",
        f"subspace_approximation_log_q={math.log(subspace.approximation, q):.6f}",
        f"suboptimality={sub_optimality(q, n, m, k):.6f}",
        f"suboptimality_bound={rank_bound.suboptimality_bound:.6f}",
    ]


@exit_on_error
def run(args, logger):
    logger.info(f"parameters of {args.code!r}")
    print("\n".join(report_lines(args.code)))


def add_parser(subparsers):
    parser = subparsers.add_parser(
        "params",
        help="Show the parameters and bounds of a Gabidulin code",
        description="""
Prints n, m, k, d and |C| of a Gabidulin code, the rank-metric Singleton
bound it meets, and how far its lifting falls short of the Singleton bound
for constant-dimension subspace codes.

Example:
    rankcode params gab:q=2,m=4,n=4,k=2
""",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_common_args(parser)
    parser.add_argument("code", type=code_spec, help="Code spec, e.g. gab:q=2,m=8,n=8,k=4")
    parser.set_defaults(func=run)
