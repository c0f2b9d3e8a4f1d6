#!/usr/bin/env python3
"""
GreenEdge - Experiment Runner

Copyright (C) 2025-2030, All Rights Reserved
GreenEdge Developers

LEGAL NOTICE:
This software is proprietary and confidential. Unauthorized copying,
distribution, modification, or use is strictly prohibited without
explicit written permission from the copyright holder.

Runs the named experiment suites over a set of seeds and writes one CSV
per (suite, seed) plus a manifest per suite.

Usage:
    python experiments.py --suite renewable --seeds 0,1,2 --out-dir results
    python experiments.py --suite all --seeds 0-9 --jobs 4
    python experiments.py --list
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List

# Add package to path for direct execution
sys.path.insert(0, str(Path(__file__).parent))

from greenedge import __version__
from greenedge.analysis import (
    CsvWriteError,
    get_suite,
    run_sweep,
    suite_names,
    write_csv,
    write_manifest,
)
from greenedge.analysis.sweep import SweepError
from greenedge.core import ScenarioError


def parse_seeds(text: str) -> List[int]:
    """Seeds from "0,1,2" or an inclusive range "0-9"."""
    seeds: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            low, high = part.split("-", 1)
            seeds.extend(range(int(low), int(high) + 1))
        else:
            seeds.append(int(part))
    if not seeds:
        raise argparse.ArgumentTypeError(f"no seeds in {text!r}")
    return seeds


def run_suite(name: str, seeds: List[int], out_dir: Path, jobs: int, timing: bool) -> int:
    """Run one suite for every seed; returns the number of non-optimal rows."""
    suite = get_suite(name)
    suite_dir = out_dir / name
    outputs = []
    failures = 0
    spec = None
    for seed in seeds:
        spec = suite.sweep_spec(seed, jobs=jobs, record_timing=timing)
        table = run_sweep(spec)
        path = suite_dir / f"seed-{seed:03d}.csv"
        write_csv(table, path)
        outputs.append(str(path))
        failures += sum(1 for r in table.rows if r.status != "optimal")
        print(f"[OK] {name} seed {seed}: {len(table)} rows -> {path}", file=sys.stderr)
    if spec is not None:
        write_manifest(suite_dir / "manifest.yaml", spec, outputs=outputs,
                       extra={"suite": name, "description": suite.description, "seeds": seeds})
    return failures


def main() -> int:
    """Main entry point for the experiment suites."""
    parser = argparse.ArgumentParser(
        prog="experiments",
        description="Run GreenEdge experiment suites",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Suites:
  {", ".join(suite_names())}

Copyright (C) 2025-2030, GreenEdge Developers. All Rights Reserved.
""",
    )
    parser.add_argument("--version", action="version", version=f"greenedge {__version__}")
    parser.add_argument("--suite", action="append", default=[],
                        help="Suite to run (repeatable; 'all' runs every suite)")
    parser.add_argument("--seeds", type=parse_seeds, default=[0],
                        help="Seeds as 0,1,2 or 0-9 (default: 0)")
    parser.add_argument("--out-dir", default="results", help="Output directory (default: results)")
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes (default: 1)")
    parser.add_argument("--timing", action="store_true", help="Record wall time in wall_ms")
    parser.add_argument("--list", action="store_true", help="List suites and exit")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    args = parser.parse_args()

    if args.list:
        for name in suite_names():
            print(f"{name:20s} {get_suite(name).description}")
        return 0

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    names = suite_names() if "all" in args.suite or not args.suite else args.suite
    failures = 0
    try:
        for name in names:
            failures += run_suite(name, args.seeds, Path(args.out_dir), args.jobs, args.timing)
    except (SweepError, CsvWriteError, ScenarioError, OSError) as e:
        print(f"[ERROR] {getattr(e, 'message', e)}", file=sys.stderr)
        return 2
    if failures:
        print(f"[ERROR] {failures} rows did not solve to optimality", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
