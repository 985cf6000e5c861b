#!/usr/bin/env python3
"""Write the population sweep (ternary power vs. square-root law) and a gnuplot script.

    python scripts/figure1.py --out-dir out/
    cd out && gnuplot -p figure1.gp
"""
import argparse
import pathlib

from pivotal.cli import main

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--out-dir", default="figure1")
parser.add_argument("--points", type=int, default=25)
args = parser.parse_args()

out_dir = pathlib.Path(args.out_dir)
out_dir.mkdir(parents=True, exist_ok=True)
with open(out_dir / "figure1.csv", "w", encoding="utf-8") as fh:
    code = main(
        ["figure", "--format", "csv", "--precision", "12", "--points", str(args.points),
         "--gnuplot", str(out_dir / "figure1.gp"), "--data-name", "figure1.csv"],
        out=fh,
    )
print(f"wrote {out_dir / 'figure1.csv'} and {out_dir / 'figure1.gp'}")
raise SystemExit(code)
