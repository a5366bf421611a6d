#!/usr/bin/env python3
"""Solve exported LP models with HiGHS and compare against `vas exact`."""

import argparse
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import highspy


def run(cmd):
    return subprocess.run(cmd, check=True, capture_output=True, text=True).stdout


def solve_lp(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    h.setOptionValue("mip_feasibility_tolerance", 1e-10)
    h.setOptionValue("primal_feasibility_tolerance", 1e-10)
    h.readModel(str(path))
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        raise RuntimeError(f"{path}: solver status {h.modelStatusToString(status)}")
    return h.getInfo().objective_function_value


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vas", required=True, help="path to the vas executable")
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--epsilon", default="3", help="bandwidth; large enough that pairs interact")
    args = ap.parse_args()

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for n in range(3, 9):
            for k in sorted({2, n // 2 + 1}):
                data = tmp / f"pts_{n}.csv"
                model = tmp / f"model_{n}_{k}.lp"
                run([args.vas, "gen", "--blobs", "2", "--n", str(n), "--seed", str(n), "--output", str(data)])
                eps = ["--epsilon", args.epsilon]
                run([args.vas, "export-mip", "--input", str(data), "--k", str(k), *eps, "--output", str(model)])
                exact = json.loads(run([args.vas, "exact", "--input", str(data), "--k", str(k), *eps]))["objective"]
                lp = solve_lp(model)
                ok = abs(lp - exact) <= args.tol * max(1.0, abs(exact))
                failures += not ok
                print(f"{'ok  ' if ok else 'FAIL'} n={n} k={k} lp={lp:.12g} exact={exact:.12g}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
