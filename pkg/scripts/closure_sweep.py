"""Run the splitting-derived closure sweep and print one line per instance."""

import argparse
import time

from bihom.sweep import SweepConfig, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=SweepConfig.instances)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    t0 = time.perf_counter()
    results = run_sweep(SweepConfig(instances=args.instances, seed=args.seed))
    for r in results:
        inst = r.instance
        status = "ok" if r.ok else "FAIL " + ",".join(r.failed())
        print(f"{inst.lie.name:18} weight={str(inst.weight):>3} checks={len(r.checks):2} "
              f"flip={'pass' if r.flip_verdict else 'fail'}  {status}")
    bad = sum(not r.ok for r in results)
    print(f"{len(results)} instances, {bad} failing, {time.perf_counter() - t0:.1f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
