"""Time the hot kernels with numba and with the pure-numpy fallback.

Each backend runs in its own interpreter because the switch is read at
import time.  Usage: python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = {
    "semigroups order 4": "enumerate_semigroups(4)",
    "solutions order 3 (all carriers)": "[enumerate_solutions(S) for S in enumerate_semigroups(3)]",
    "involutive census order 4": "census(4, SearchFilter(involutive=True))",
    "idempotent census order 4": "census(4, SearchFilter(idempotent=True))",
    "canonical forms order 4": "[canonical_form(S) for S in enumerate_semigroups(4)[:500]]",
}

CHILD = """
import json, sys, time
from pentagon._accel import HAS_NUMBA
from pentagon.enumeration import SearchFilter, census, enumerate_semigroups, enumerate_solutions
from pentagon.semigroup import canonical_form
workloads = json.loads(sys.argv[1]); repeat = int(sys.argv[2])
out = {"numba": HAS_NUMBA}
for name, expr in workloads.items():
    eval(expr)  # warm up (compilation or cache load)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter(); eval(expr); best = min(best, time.perf_counter() - t0)
    out[name] = best
print(json.dumps(out))
"""


def run(disable_jit, repeat):
    env = dict(os.environ)
    if disable_jit:
        env["PENTAGON_DISABLE_JIT"] = "1"
    else:
        env.pop("PENTAGON_DISABLE_JIT", None)
    proc = subprocess.run(
        [sys.executable, "-c", CHILD, json.dumps(WORKLOADS), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jit = run(False, args.repeat)
    fallback = run(True, args.repeat)
    if not jit["numba"]:
        print("numba is not importable; both columns use the fallback")
    print(f"{'workload':36s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name in WORKLOADS:
        a, b = jit[name], fallback[name]
        print(f"{name:36s} {a:10.4f} {b:10.4f} {b / a:8.1f}x")


if __name__ == "__main__":
    t0 = time.perf_counter()
    main()
    print(f"total {time.perf_counter() - t0:.1f}s")
