"""Compare the numba and numpy backends on the hot paths.

Each backend runs in its own interpreter because the backend is chosen at
import time from OVLK_DISABLE_NUMBA.

    python benchmarks/bench_kernels.py [--reps 200] [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
import ovlk
from ovlk import EstimatorSpec, GroupSample, evaluate, exact_ovl, run_simulation
from ovlk.published import SCENARIOS
from ovlk.simulation import bundled_config

reps, repeat = int(sys.argv[1]), int(sys.argv[2])

def best(fn):
    fn()  # warm-up, includes JIT compile or cache load
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

pops = [[ovlk.NormalParams(*q) for q in p] for p, _ in SCENARIOS.values()]
rng = np.random.default_rng(0)
samples = [GroupSample(i + 1, rng.normal(0, 1, 150)) for i in range(3)]
specs = [EstimatorSpec.comparator()] + [EstimatorSpec.simpson(a) for a in (1, 2, "ml")]
cfg = bundled_config("table2")
cfg = cfg.replace(repetitions=reps, scenarios=cfg.scenarios[:1])

result = {
    "backend": ovlk.BACKEND,
    "oracle, 4 scenarios": best(lambda: [exact_ovl(p) for p in pops]),
    "4 estimators, n=150 x 3": best(lambda: [evaluate(s, samples) for s in specs]),
    f"S1 study, R={reps}, 1 thread": best(lambda: run_simulation(cfg, threads=1)),
}
print(json.dumps(result))
"""


def run_backend(disable_numba, reps, repeat):
    env = dict(os.environ, OVLK_DISABLE_NUMBA="1" if disable_numba else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(reps), str(repeat)],
                         env=env, stdout=subprocess.PIPE, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    fast = run_backend(False, args.reps, args.repeat)
    slow = run_backend(True, args.reps, args.repeat)
    if fast["backend"] != "numba":
        print("numba is unavailable; both runs used numpy", file=sys.stderr)
    width = max(len(k) for k in fast)
    print(f"{'task':<{width}}  {'numba s':>10}  {'numpy s':>10}  {'speedup':>8}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:<{width}}  {fast[key]:>10.4f}  {slow[key]:>10.4f}  {slow[key] / fast[key]:>7.2f}x")


if __name__ == "__main__":
    main()
