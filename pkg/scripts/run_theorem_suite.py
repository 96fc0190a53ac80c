#!/usr/bin/env python3
"""Run the classification-statement suite and print a check-by-check table."""

import argparse
import sys

from twistorgh.classifier import SamplingConfig, verify_all, verify_report_json


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--samples", type=int, default=64)
    ap.add_argument("--triples", type=int, default=32)
    ap.add_argument("--output", help="write the JSON report here")
    ap.add_argument("--details", action="store_true", help="print every check")
    args = ap.parse_args()

    cfg = SamplingConfig(seed=args.seed, num_points=args.samples, num_arg_triples=args.triples)
    results = verify_all(cfg)
    for r in results:
        print(f"{r.tid}  {'PASS' if r.passed else 'FAIL'}  {r.statement}")
        if args.details or not r.passed:
            for c in r.checks:
                mark = "ok " if c["ok"] else "BAD"
                print(f"    {mark} {c['name']:<44} {c['value']:.3e} {c['require']} {c['bound']:.0e}")
    failed = [r.tid for r in results if not r.passed]
    print(f"\npassed {len(results) - len(failed)}/{len(results)}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(verify_report_json(results))
        print(f"report written to {args.output}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
