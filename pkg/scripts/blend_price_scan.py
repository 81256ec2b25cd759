#!/usr/bin/env python3
"""Price of the blend w*X + (1-w)*Y across weights, vs the one-fund weight.

Scans the growth-rate price of the two-game blend on the independent joint
space and writes a CSV (w, price); the mean-variance one-fund weight and the
price-maximizing weight are printed for comparison. Example:

    python scripts/blend_price_scan.py sample_games/remark35.json \
        --x X --y Y --points 201 -o blend_scan.csv
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gameprice import (
    Game,
    compare_mean_variance,
    joint_space,
    load_game_file,
    price_general,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input", help="game-spec JSON file")
    ap.add_argument("--x", default="X")
    ap.add_argument("--y", default="Y")
    ap.add_argument("--points", type=int, default=201)
    ap.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    args = ap.parse_args()

    gf = load_game_file(args.input)
    if gf.rate is None:
        ap.error("game file carries no rate")
    x, y = gf.games[args.x], gf.games[args.y]
    comp = compare_mean_variance(x, y, gf.rate)
    print(f"one-fund  w = {comp.w_onefund:.6f}  price = {comp.price_onefund:.6f}",
          file=sys.stderr)
    print(f"best mix  w = {comp.w_star:.6f}  price = {comp.price_star:.6f}",
          file=sys.stderr)
    print(f"stake t = {comp.t_star:.6f}  allocation (X, Y, cash) = "
          f"({comp.allocation[0]:.4f}, {comp.allocation[1]:.4f}, "
          f"{comp.allocation[2]:.4f})", file=sys.stderr)

    space, x4, y4 = joint_space(x, y)
    lines = ["w,price"]
    for w in np.linspace(0.0, 1.0, args.points):
        blend = Game(w * x4.payoffs + (1.0 - w) * y4.payoffs)
        lines.append(f"{float(w)!r},{price_general(blend, space, gf.rate).price!r}")
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
