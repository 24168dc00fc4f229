"""
TPDS Command Line
Generation, identification, informativity checks and benchmarks over T3v1 files.

Exit codes:
    0  informative (check) / success (gen, bench) / unique identification
    1  not informative
    2  error (bad flags, unreadable or malformed files, shape errors)
    3  identification succeeded but A is not unique
"""

import argparse
import logging
import os
import sys

from checks import run_all_checks, run_check
from tensor_io import read_t3, write_archive, write_t3
from tpds.bench import (
    BENCH_TESTS,
    DEFAULT_P_RANGES,
    BenchConfig,
    expected_orders,
    records_to_frame,
    run_experiment,
    summarize_slopes,
    write_csv,
)
from tpds.config import FORMATS, METHODS, RunConfig, Tolerances, resolve_threads
from tpds.datagen import DISTRIBUTIONS, MODES, random_data, simulated_data
from tpds.errors import TPDSError
from tpds.informativity import TESTS, format_report, identify

logger = logging.getLogger('tpds.cli')

EXIT_OK = 0
EXIT_NOT_INFORMATIVE = 1
EXIT_ERROR = 2
EXIT_NOT_UNIQUE = 3


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def build_parser():
    """Argument parser with the global flags shared by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol-rank', type=float, default=None,
                        help='relative rank cutoff (default: max(dims) * machine epsilon)')
    common.add_argument('--tol-stab', type=float, default=1e-9,
                        help='stability margin; --tol-stab=-inf gives the non-strict radius <= 1 reading (default: 1e-9)')
    common.add_argument('--seed', type=int, default=0, help='64-bit seed (default: 0)')
    common.add_argument('--method', choices=METHODS, default='fourier')
    common.add_argument('--format', choices=FORMATS, default='text', dest='output_format')
    common.add_argument('--threads', type=_positive_int, default=None,
                        help='worker threads (default: $TPDS_THREADS or 1)')
    common.add_argument('--verbose', action='store_true', help='log progress to stderr')

    parser = argparse.ArgumentParser(prog='tpds', description='T-product dynamical system data informativity')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', parents=[common], help='generate random or simulated data tensors')
    gen.add_argument('--n', type=_positive_int, required=True)
    gen.add_argument('--h', type=_positive_int, required=True)
    gen.add_argument('--l', type=_positive_int, required=True)
    gen.add_argument('--r', type=_positive_int, required=True)
    gen.add_argument('--m', type=int, default=0, help='input dimension; > 0 also writes u0 (default: 0)')
    gen.add_argument('--mode', choices=MODES, default='random')
    gen.add_argument('--radius', type=float, default=None, help='spectral radius of A in simulate mode')
    gen.add_argument('--dist', choices=DISTRIBUTIONS, default='normal')
    gen.add_argument('--out', default='.', help='output directory (default: .)')

    ident = sub.add_parser('identify', parents=[common], help='identify A from X0, X1')
    ident.add_argument('--x0', required=True)
    ident.add_argument('--x1', required=True)
    ident.add_argument('--out', default='a_hat.t3')

    check = sub.add_parser('check', parents=[common], help='run an informativity test')
    check.add_argument('test', choices=TESTS + ('all',))
    check.add_argument('--x0', required=True)
    check.add_argument('--x1', default=None)
    check.add_argument('--u0', default=None)

    bench = sub.add_parser('bench', parents=[common], help='time unfold vs fourier checks over r = 2^p')
    bench.add_argument('test', choices=BENCH_TESTS)
    bench.add_argument('--pmin', type=int, default=None)
    bench.add_argument('--pmax', type=int, default=None)
    bench.add_argument('--reps', type=_positive_int, default=5)
    bench.add_argument('--n', type=_positive_int, default=2)
    bench.add_argument('--h', type=_positive_int, default=2)
    bench.add_argument('--l', type=_positive_int, default=10)
    bench.add_argument('--time-cap', type=float, default=120.0)
    bench.add_argument('--out', default='bench.csv')

    return parser


def _run_config(args):
    tolerances = Tolerances(tol_rank=args.tol_rank, tol_stab=args.tol_stab)
    return RunConfig(tolerances=tolerances, seed=args.seed, method=args.method,
                     threads=resolve_threads(args.threads), output_format=args.output_format)


# ===== Subcommands =====

def cmd_gen(args):
    if args.m < 0:
        raise ValueError(f"--m must be >= 0, got {args.m}")
    if args.radius is not None and args.mode != 'simulate':
        raise ValueError("--radius only applies to --mode simulate")

    if args.mode == 'random':
        data = random_data(args.n, args.h, args.l, args.r, seed=args.seed, dist=args.dist, m=args.m)
    else:
        data = simulated_data(args.n, args.h, args.l, args.r, seed=args.seed, radius=args.radius,
                              dist=args.dist, m=args.m)

    tensors = dict(data.extras)
    tensors['x0'] = data.x0
    tensors['x1'] = data.x1
    if data.u0 is not None:
        tensors['u0'] = data.u0

    meta = {
        'format': 'T3v1',
        'mode': args.mode,
        'seed': args.seed,
        'dist': args.dist,
        'n': args.n, 'h': args.h, 'l': args.l, 'r': args.r, 'm': args.m,
    }
    if args.radius is not None:
        meta['radius'] = repr(args.radius)

    for path in write_archive(args.out, tensors, meta):
        print(path)
    return EXIT_OK


def cmd_identify(args):
    cfg = _run_config(args)
    x0, x1 = read_t3(args.x0), read_t3(args.x1)
    result = identify(x0, x1, method=cfg.method, tolerances=cfg.tolerances)
    write_t3(args.out, result.a, comment=f"identified with the {result.method} method")

    if cfg.output_format == 'machine':
        print(f"out={args.out}")
        print(f"unique={'true' if result.unique else 'false'}")
        print(f"residual={result.residual:.17g}")
        print(f"relative_residual={result.relative_residual:.17g}")
    else:
        mark = "✅ unique" if result.unique else "⚠️ NOT unique (minimum-norm solution)"
        print(f"{mark}: wrote {args.out}")
        print(f"   residual max|X1 - A*X0| = {result.residual:.3e} (relative {result.relative_residual:.3e})")
    return EXIT_OK if result.unique else EXIT_NOT_UNIQUE


def cmd_check(args):
    cfg = _run_config(args)
    x0 = read_t3(args.x0)
    x1 = read_t3(args.x1) if args.x1 else None
    u0 = read_t3(args.u0) if args.u0 else None

    if args.test == 'all':
        if x1 is None:
            raise ValueError("check all needs --x1")
        result = run_all_checks(x0, x1, u0, cfg)
        for report in result['reports'].values():
            sys.stdout.write(format_report(report, cfg.output_format))
            if cfg.output_format == 'text':
                print()
        if cfg.output_format == 'machine':
            print(f"informative_count={result['informative_count']}")
            print(f"overall={'true' if result['overall'] else 'false'}")
        else:
            print(result['summary'])
        return EXIT_OK if result['overall'] else EXIT_NOT_INFORMATIVE

    report = run_check(args.test, x0, x1, u0, cfg)
    sys.stdout.write(format_report(report, cfg.output_format))
    return EXIT_OK if report.verdict else EXIT_NOT_INFORMATIVE


def cmd_bench(args):
    default_p = DEFAULT_P_RANGES[args.test]
    pmin = default_p[0] if args.pmin is None else args.pmin
    pmax = default_p[-1] if args.pmax is None else args.pmax
    if pmin > pmax:
        raise ValueError(f"--pmin {pmin} is larger than --pmax {pmax}")

    cfg = BenchConfig(
        test=args.test, n=args.n, h=args.h, l=args.l, p_range=tuple(range(pmin, pmax + 1)),
        repetitions=args.reps, seed=args.seed, threads=resolve_threads(args.threads),
        output=args.out, time_cap=args.time_cap,
        tolerances=Tolerances(tol_rank=args.tol_rank, tol_stab=args.tol_stab),
    )
    records = run_experiment(cfg)

    metadata = {
        'test': cfg.test,
        'seed': cfg.seed,
        'p_range': f"{pmin}..{pmax}",
        'tolerances': cfg.tolerances.as_dict(),
    }
    if cfg.test == 'controllability':
        metadata['rank_procedure'] = 'candidate-lambda roots of compressed pencils (replaces symbolic rank)'
    write_csv(records, cfg.output, metadata)

    frame = records_to_frame(records)
    print(frame[['method', 'r', 'time_s', 'time_per_r', 'time_per_r3', 'status']].to_string(index=False))

    orders = expected_orders(cfg.test)
    for tag, slope in summarize_slopes(records).items():
        fitted = f"{slope:.3f}" if slope is not None else "n/a (fewer than 3 points)"
        print(f"slope[{tag}] = {fitted} (expected ~{orders[tag]})")
    print(f"wrote {os.path.abspath(cfg.output)}")
    return EXIT_OK


COMMANDS = {
    'gen': cmd_gen,
    'identify': cmd_identify,
    'check': cmd_check,
    'bench': cmd_bench,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )
    logger.info(f"tpds {args.command}: method={getattr(args, 'method', None)}, seed={args.seed}")

    try:
        return COMMANDS[args.command](args)
    except (TPDSError, OSError, ValueError) as e:
        print(f"❌ error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
