#!/usr/bin/env python3
"""Run the whole CLI pipeline end to end on a generated fixture.

Generates a mono-peak series, then runs fit, evaluate and plot on it, leaving
fixture.csv, fit.json, report.json, predictions.csv and compare.svg in the
output directory (default demo_out/).

Usage:
    python scripts/demo_pipeline.py [--outdir demo_out] [--seed 0]
"""
import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from basscast.cli import main as cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="demo_out")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out = Path(args.outdir)
    fixture = out / "fixture.csv"
    steps = [
        ["synth", "--seed", str(args.seed), "--output", str(fixture)],
        ["fit", str(fixture), "--output-dir", str(out)],
        ["evaluate", str(fixture), "--output-dir", str(out)],
        ["plot", str(fixture), "--output-dir", str(out)],
    ]
    for step in steps:
        code = cli(step)
        if code != 0:
            print(f"step {step[0]} failed with exit code {code}", file=sys.stderr)
            return code

    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    print(
        f"\nvariant {report['variant_used']}: SSE {report['sse_classical']:.1f} -> "
        f"{report['sse_modified']:.1f} ({report['improvement_percent']:.2f}% better)"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
