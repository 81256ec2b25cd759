#!/usr/bin/env python3
"""Empirical growth-rate curve for one game at its solved price.

Sweeps the stake proportion, simulates the per-attempt growth rate at each
grid point, and writes a CSV next to the analytic optimum so the simulated
argmax can be compared with the solver's t. Example:

    python scripts/growth_curve.py sample_games/intro.json --game A \
        --points 41 --attempts 20000 --paths 400 -o growth_curve_A.csv
"""

import argparse
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gameprice import SimConfig, load_game_file, price_general, sweep_proportion
from gameprice.simulate import sweep_rows_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input", help="game-spec JSON file")
    ap.add_argument("--game", required=True)
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--attempts", type=int, default=20_000)
    ap.add_argument("--paths", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    args = ap.parse_args()

    gf = load_game_file(args.input)
    if gf.rate is None:
        ap.error("game file carries no rate")
    game = gf.games[args.game]
    res = price_general(game, gf.space, gf.rate)
    print(f"solved price u = {res.price:.6f}, optimal t = {res.proportion:.6f}, "
          f"regime = {res.regime}", file=sys.stderr)

    cfg = SimConfig(attempts=args.attempts, paths=args.paths, seed=args.seed,
                    price=res.price, proportion=0.0)
    rows = sweep_proportion(game, gf.space, res.price, args.points, cfg)
    best = max(rows, key=lambda r: r.mean_growth)
    g = gf.rate.growth_factor()
    print(f"empirical argmax t = {best.proportion:.4f} "
          f"(mean growth {best.mean_growth:.6f}, target {g:.6f}, "
          f"log-gap {math.log(best.mean_growth / g):+.2e})", file=sys.stderr)

    text = sweep_rows_csv(rows)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
