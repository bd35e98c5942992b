#!/usr/bin/env python3
"""Minimum-finding cost benchmark: linear scan vs Grover minimum finding.

Sweeps list sizes, recording work units and found values for both search
methods, and writes a CSV for a work-vs-N comparison plot.

Usage: python3 scripts/run_minfind_benchmark.py [outdir]
"""
import pathlib
import sys

from qcontain.cli import main

outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "results")
outdir.mkdir(parents=True, exist_ok=True)
csv = outdir / "minfind_benchmark.csv"

rc = main(["bench-minfind", "--sizes", "4,16,64,256", "--reps", "50",
           "--rng", "7", "--out", str(csv)])
if rc == 0:
    print(f"wrote {csv}")
sys.exit(rc)
