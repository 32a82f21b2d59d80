"""Run every randomized check and print one line per result."""

import time

from bvorder import GenConfig, run_suite, traceability

cfg = GenConfig(seed=42, trials=100)
t0 = time.perf_counter()
reports = run_suite(cfg)
anchors = traceability()
for r in reports:
    status = "ok  " if r.ok else "FAIL"
    print(f"{status} {r.check_id:<22} {r.passed:>4}/{r.trials}  worst {r.worst_margin:.1e}  {anchors[r.check_id]}")
print(f"{len(reports)} checks in {time.perf_counter() - t0:.1f}s")

sym = run_suite(GenConfig(seed=42, trials=50, dim_range=(2, 3)), kind="sym")
print("\nsymmetric matrices, lattice-free checks only:")
for r in sym:
    print(f"  {r.check_id:<22} {r.passed}/{r.trials}")
