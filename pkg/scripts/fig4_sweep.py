"""Trial-averaged sum rates against P, printed next to the published curve.

    python3 scripts/fig4_sweep.py --trials 500 --seed 42 --out fig4.csv

The published values come from unknown channel draws, so the comparison is
qualitative: same ordering of the three curves and a similar ZF/TDMA ratio.
"""

import argparse
import csv
from pathlib import Path

from relaynet.harness import SweepConfig, rows_to_csv, run_sweep

REFERENCE = Path(__file__).parent / "data" / "fig4_reference.csv"


def load_reference(path=REFERENCE):
    with open(path, newline="") as fh:
        return {float(r["p"]): r for r in csv.DictReader(fh)}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--m", type=int, default=5)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default=None, help="also write the full sweep CSV here")
    args = parser.parse_args(argv)

    rows = run_sweep(SweepConfig(m=args.m, trials=args.trials, seed=args.seed), workers=args.workers)
    if args.out:
        Path(args.out).write_text(rows_to_csv(rows))
    ref = load_reference()
    print(f"{'P':>4} {'cutset':>8} {'ref':>8} {'zfepa':>8} {'ref':>8} {'tdma':>8} {'ref':>8} {'zf/tdma':>8}")
    for r in rows:
        q = ref.get(r.p)
        ratio = r.sum_zfepa / r.sum_tdma if r.sum_tdma > 0 else float("nan")
        refs = [float(q[k]) for k in ("sum_cutset", "sum_zfepa", "sum_tdma")] if q else [float("nan")] * 3
        print(
            f"{r.p:>4g} {r.sum_cutset:8.4f} {refs[0]:8.4f} {r.sum_zfepa:8.4f} {refs[1]:8.4f}"
            f" {r.sum_tdma:8.4f} {refs[2]:8.4f} {ratio:8.3f}"
        )


if __name__ == "__main__":
    main()
