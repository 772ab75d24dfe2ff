"""``paramres`` command line.

Exit codes: 0 success, 2 validation error, 3 numerical error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from ..errors import DivergenceError, NumericalError, ValidationError
from . import experiments
from .config import ExperimentConfig

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4


def _shared() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("model and run")
    g.add_argument("--config", metavar="FILE", help="flat JSON config; flags override it")
    g.add_argument("--zeta", type=float)
    g.add_argument("--omega-n", type=float)
    g.add_argument("--k", type=float, help="modulation amplitude K (1/s)")
    g.add_argument("--cap-omega", type=float, help="modulation frequency (rad/s)")
    g.add_argument("--x0", type=float)
    g.add_argument("--v0", type=float)
    g.add_argument("--t-end", type=float)
    g.add_argument("--dt", type=float)
    g.add_argument("--out", metavar="DIR", help="output directory (default $PARAMRES_OUT or ./out)")
    return p


def _modal_flags(p):
    p.add_argument("--window", type=float, help="Prony window length (s)")
    p.add_argument("--stride", type=float, help="window stride (s)")
    p.add_argument("--order", type=int, help="Prony model order (1..12)")


def build_parser() -> argparse.ArgumentParser:
    shared = _shared()
    parser = argparse.ArgumentParser(prog="paramres", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[shared], help="integrate and write t,x")
    sub.add_parser("mms", parents=[shared], help="evaluate the matching approximation")
    p = sub.add_parser("compare", parents=[shared], help="simulation vs approximation")
    _modal_flags(p)
    p = sub.add_parser("damping", parents=[shared], help="sliding Prony damping trace")
    _modal_flags(p)
    p = sub.add_parser("sweep", parents=[shared], help="classify and measure over Omega")
    _modal_flags(p)
    p.add_argument("--omega-min", type=float)
    p.add_argument("--omega-max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--no-measure", action="store_true", help="classification only")
    p = sub.add_parser("figures", parents=[shared], help="reproduce a reference figure")
    _modal_flags(p)
    p.add_argument("--preset", required=True, help="fig1 .. fig8, or all")
    return parser


_CFG_FLAGS = ("zeta", "omega_n", "k", "cap_omega", "x0", "v0", "t_end", "dt", "out",
              "window", "stride", "order", "omega_min", "omega_max", "steps", "workers")


def config_from_args(args) -> ExperimentConfig:
    base = ExperimentConfig.from_json(args.config) if args.config else ExperimentConfig()
    return base.merged(**{k: getattr(args, k, None) for k in _CFG_FLAGS})


def _dispatch(args) -> dict:
    cfg = config_from_args(args)
    cmd = args.command
    if cmd == "simulate":
        ts = experiments.run_simulate(cfg)
        return {"rows": len(ts), "out": cfg.out_dir()}
    if cmd == "mms":
        case, sol, _ = experiments.run_mms(cfg)
        return {"case": case.tag.value, "discriminant": case.discriminant}
    if cmd == "compare":
        return experiments.run_compare(cfg).to_dict()
    if cmd == "damping":
        trace = experiments.run_damping(cfg)
        return {"windows": len(trace), "out": cfg.out_dir()}
    if cmd == "sweep":
        rows = experiments.run_sweep(cfg, measure=not args.no_measure)
        return {"rows": len(rows), "out": cfg.out_dir()}
    if cmd == "figures":
        return experiments.run_figures(cfg, args.preset)
    raise ValidationError(f"unknown command {cmd}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        summary = _dispatch(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DivergenceError as exc:
        print(f"error: diverged at t={exc.t:.6g} s: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"error: bad config file: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(json.dumps(summary, indent=2, sort_keys=True, default=str))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
