#!/usr/bin/env python3
"""Run every figure-reproduction config under demos/figures/.

Each JSON file describes one gallery figure as a list of CLI panel
configs (spectrum clouds or classification maps).  By default the runner
downscales the spectrum resolution so the whole gallery finishes in a
few minutes; pass --full for the production Nk=100 / 200-tau sweeps.

    python demos/run_figures.py [--full] [--only 5,7] [--out DIR]
"""

import argparse
import json
from pathlib import Path

from longwave.cli import RunConfig, run

HERE = Path(__file__).parent


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true", help="production resolution")
    parser.add_argument("--only", help="comma-separated figure numbers")
    parser.add_argument("--out", default=str(HERE / "out"))
    parser.add_argument("--jobs", type=int, default=None)
    args = parser.parse_args()

    wanted = None
    if args.only:
        wanted = {int(tok) for tok in args.only.split(",")}

    for path in sorted((HERE / "figures").glob("fig*.json")):
        payload = json.loads(path.read_text())
        number = payload["figure"]
        if wanted is not None and number not in wanted:
            continue
        for index, panel in enumerate(payload["panels"], start=1):
            config = RunConfig(command=panel["command"], options=dict(panel["options"]))
            if config.command == "spectrum" and not args.full:
                config.options.setdefault("nk", 60)
                config.options.setdefault("tau_points", 32)
            out_dir = Path(args.out) / f"fig{number:02d}_panel{index}"
            summary = run(config, out_dir=out_dir, fmt="both", jobs=args.jobs or 4)
            line = f"fig{number:02d} panel {index}: {config.command}"
            if "gap_sigma" in summary:
                line += f", gap sigma = {summary['gap_sigma']:.6f}"
            elif "max_real_part" in summary:
                line += f", max Re = {summary['max_real_part']:.2e}"
            print(line, "->", out_dir)


if __name__ == "__main__":
    main()
