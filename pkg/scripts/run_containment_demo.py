#!/usr/bin/env python3
"""End-to-end containment demo on a generated instance.

Runs the greedy edge-removal loop twice on the same instance, once with the
linear finder and once with the Grover minimum finder, so the traces and
work accounting can be compared side by side.

Usage: python3 scripts/run_containment_demo.py [outdir]
"""
import pathlib
import sys

from qcontain.cli import main

outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "results")
outdir.mkdir(parents=True, exist_ok=True)
instance = outdir / "demo_instance.txt"

rc = main(["gen", "--nodes", "7", "--edge-prob", "0.3", "--seeds", "1",
           "--lam", "0.7", "--rng", "21", "--out", str(instance)])
for finder in ("linear", "gmf"):
    if rc != 0:
        break
    print(f"\n== finder: {finder} ==")
    rc = main(["contain", "--instance", str(instance), "--estimator", "exact",
               "--finder", finder, "--k-max", "3", "--rng", "5",
               "--out", str(outdir / f"containment_{finder}.csv")])
sys.exit(rc)
