#!/usr/bin/env python3
"""Run every verification suite and print a one-line result for each.

Writes canonical JSON reports under reports/ at the repository root and
exits nonzero if any suite fails.  Pass suite names to run a subset.
"""

import argparse
import pathlib
import sys
import time

from cayley_spectra.suites import SUITE_NAMES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("suites", nargs="*", default=[], help="suite names (default: all)")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--reports-dir", default=None)
    args = ap.parse_args()

    names = args.suites or list(SUITE_NAMES)
    out_dir = pathlib.Path(
        args.reports_dir
        or pathlib.Path(__file__).resolve().parent.parent / "reports"
    )
    out_dir.mkdir(parents=True, exist_ok=True)

    all_ok = True
    for name in names:
        t0 = time.monotonic()
        report = run_suite(name, threads=args.threads)
        dt = time.monotonic() - t0
        path = out_dir / f"{name}.json"
        path.write_text(report.to_json(), encoding="utf-8")
        status = "PASS" if report.ok else "FAIL"
        print(f"{name:<14} {status}  ({dt:6.1f}s, {len(report.groups)} groups, "
              f"{len(report.checks)} checks) -> {path}")
        all_ok = all_ok and report.ok
    print("all suites PASS" if all_ok else "SOME SUITES FAILED")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
