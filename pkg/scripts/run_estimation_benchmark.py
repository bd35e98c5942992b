#!/usr/bin/env python3
"""Estimation accuracy benchmark: MC trials vs QAE Q-applications.

Generates a fixed random instance, sweeps both estimators over their work
grids, and writes a CSV suitable for a log-log error-vs-work plot.

Usage: python3 scripts/run_estimation_benchmark.py [outdir]
"""
import pathlib
import sys

from qcontain.cli import main

outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "results")
outdir.mkdir(parents=True, exist_ok=True)
instance = outdir / "bench_instance.txt"
csv = outdir / "estimation_benchmark.csv"

rc = main(["gen", "--nodes", "7", "--edge-prob", "0.25", "--seeds", "2",
           "--rng", "1217", "--out", str(instance)])
if rc == 0:
    rc = main(["bench-estimation", "--instance", str(instance),
               "--reps", "50", "--rng", "7", "--out", str(csv)])
if rc == 0:
    print(f"wrote {csv}")
sys.exit(rc)
