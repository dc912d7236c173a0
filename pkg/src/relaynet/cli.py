"""Command line front-end.

    relaynet sweep   --m 5 --trials 500 --seed 42 --p-grid 0:25:1 --out fig4.csv
    relaynet surface --p-grid 0:10:0.5 --p-r-fixed 5 --trials 1
    relaynet solve   --channels-file ch.json --p 8
    relaynet bound   --seed 7 --p 25

``RELAYNET_SEED`` overrides ``--seed`` when set.
"""

import argparse
import json
import os
import sys
from typing import List, Optional

import numpy as np

from relaynet.errors import RelayNetError
from relaynet.harness import (
    SweepConfig,
    bound_report,
    channel_model_from_name,
    rows_to_csv,
    rows_to_json,
    run_surface,
    run_sweep,
    solve_single,
    surface_to_csv,
    trial_channels,
)
from relaynet.model import ChannelRealization, PowerBudget, budget_from_p


def parse_grid(text: str) -> List[float]:
    """``"a:b:step"`` (inclusive of ``b`` up to round-off) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"expected a:b:step, got {text!r}")
        a, b, step = (float(x) for x in parts)
        if step <= 0:
            raise argparse.ArgumentTypeError("grid step must be positive")
        n = int(np.floor((b - a) / step + 1e-9)) + 1
        if n < 1:
            raise argparse.ArgumentTypeError(f"empty grid {text!r}")
        return [round(a + k * step, 12) for k in range(n)]
    return [float(x) for x in text.split(",") if x.strip()]


def parse_budget(text: str) -> PowerBudget:
    values = [float(x) for x in text.split(",")]
    if len(values) != 5:
        raise argparse.ArgumentTypeError("budget needs 5 values: bs,r1,r2,u1,u2")
    return PowerBudget(*values)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relaynet", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=5, help="macro-BS antennas (default 5)")
    common.add_argument("--trials", type=int, default=500)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--p-grid", type=parse_grid, default=None, help='"a:b:step" or "p1,p2,..."')
    common.add_argument("--channel-model", choices=("real", "complex"), default="real")
    common.add_argument("--p-r-fixed", type=float, default=5.0)
    common.add_argument("--channels-file", default=None)
    common.add_argument("--strict-paper", action="store_true")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--p", type=float, default=25.0, help="single-instance power parameter")
    common.add_argument("--budget", type=parse_budget, default=None, help="bs,r1,r2,u1,u2")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in ("sweep", "surface", "solve", "bound"):
        sub.add_parser(mode, parents=[common])
    return parser


def _config(args) -> SweepConfig:
    seed = args.seed
    env = os.environ.get("RELAYNET_SEED")
    if env is not None and env.strip():
        seed = int(env)
    kwargs = dict(
        m=args.m,
        trials=args.trials,
        seed=seed,
        channel_model=channel_model_from_name(args.channel_model),
        mode=args.mode,
        strict_paper=args.strict_paper,
    )
    if args.p_grid is not None:
        kwargs["p_grid"] = args.p_grid
    return SweepConfig(**kwargs)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    if args.mode == "sweep":
        rows = run_sweep(cfg, workers=args.workers)
        text = rows_to_json(rows) if args.format == "json" else rows_to_csv(rows)
    elif args.mode == "surface":
        grid = list(cfg.p_grid)
        surface = run_surface(cfg, grid, grid, args.p_r_fixed, workers=args.workers)
        if args.format == "json":
            text = json.dumps(
                {"p_bs": grid, "p_u": grid, "p_r_fixed": args.p_r_fixed, "sum_rate": surface.tolist()},
                indent=2,
            ) + "\n"
        else:
            text = surface_to_csv(grid, grid, surface)
    else:
        if args.format == "csv":
            raise SystemExit(f"{args.mode}: only json output is supported")
        if args.channels_file:
            ch = ChannelRealization.load(args.channels_file)
        else:
            ch = trial_channels(cfg, 0)
        budget = args.budget if args.budget is not None else budget_from_p(args.p)
        if args.mode == "solve":
            report = solve_single(ch, budget, cfg.strict_paper)
        else:
            report = bound_report(ch, budget, cfg.strict_paper)
        text = json.dumps(report, indent=2) + "\n"
    _emit(text, args.out)
    return 0


def main() -> None:
    try:
        sys.exit(run())
    except RelayNetError as exc:
        print(f"relaynet: error: {exc}", file=sys.stderr)
        sys.exit(2)


if __name__ == "__main__":
    main()
