"""Command-line entry point.

    harqcache delay-curve [--config FILE] [--out FILE] [overrides...]
    harqcache sweep-gamma ...
    harqcache allocation ...
    harqcache validate --seed 42 --runs 100000 ...

Exit status: 0 on success, 2 on configuration errors, 3 on runtime errors.
"""
import argparse
import sys

from . import config as config_mod
from .errors import ConfigError
from .experiments import RUNNERS, write_csv

EXIT_CONFIG = 2
EXIT_RUNTIME = 3

# flag name -> config key
OVERRIDES = {
    "--file-size": "file_size",
    "--rate": "rate",
    "--snr1-db": "snr1_db",
    "--snr2-db": "snr2_db",
    "--num-files": "num_files",
    "--gamma": "gamma",
    "--capacity": "capacity",
    "--cell-radius": "cell_radius",
    "--cell-levels": "cell_levels",
    "--pathloss-k-db": "pathloss_k_db",
    "--pathloss-mu": "pathloss_mu",
    "--runs": "runs",
    "--cached": "cached",
    "--workers": "workers",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="harqcache",
        description="Delay of fractional edge caching over HARQ fronthaul and downlink links.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in config_mod.MODES:
        p = sub.add_parser(mode)
        p.add_argument("--config", metavar="PATH", help="INI file overriding the packaged defaults")
        p.add_argument("--out", metavar="PATH", help="CSV destination (default: stdout)")
        if mode == "validate":
            p.add_argument("--seed", metavar="U64", help="master seed for the Monte Carlo streams")
        for flag, key in OVERRIDES.items():
            # lists are comma separated; write --snr1-db=-10,0 when a list starts with '-'
            p.add_argument(flag, dest=key, metavar=key.upper())
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {key: getattr(args, key) for key in OVERRIDES.values()}
    if args.mode == "validate":
        overrides["seed"] = args.seed
    try:
        cfg = config_mod.resolve(args.mode, args.config, overrides)
    except ConfigError as exc:
        print(f"harqcache: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        header, rows = RUNNERS[args.mode](cfg)
        if args.out:
            with open(args.out, "w", newline="") as fh:
                write_csv(header, rows, fh)
        else:
            write_csv(header, rows, sys.stdout)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"harqcache: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return 0


if __name__ == "__main__":
    sys.exit(main())
