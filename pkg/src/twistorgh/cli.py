"""Command line front end.

Commands:
    classify   run the class detector on a built-in model or an operator file
    verify     run the classification-statement suite (ids 4.2a .. 4.9b)
    selftest   run the internal-consistency oracles
    models     list the built-in curvature models

Exit codes: 0 success, 1 suite/assertion failure, 2 input error,
3 validation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classifier, curvature, selftest

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_VALIDATION = 3

#: models constructible from the scalar flag alone
_SCALAR_MODELS = {"flat": (), "constant_curvature": ("s",), "kaehler_witness": ("s",),
                  "w1_witness": ("s",), "w2_witness": ("s",)}


def _add_sampling_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    p.add_argument("--samples", type=int, default=64,
                   help="number of sampled points (default 64)")
    p.add_argument("--triples", type=int, default=32,
                   help="argument triples per point (default 32)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="residual threshold (default 1e-9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistorgh", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_cls = sub.add_parser("classify", help="detect the Gray-Hervella class")
    src = p_cls.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", help="built-in curvature model name")
    src.add_argument("--input", help="JSON curvature-operator file")
    p_cls.add_argument("--s", type=float, default=None, help="scalar curvature for --model")
    p_cls.add_argument("--component", required=True, choices=list(classifier.COMPONENTS))
    p_cls.add_argument("--n", type=int, required=True, choices=[1, 2, 3, 4])
    p_cls.add_argument("--t1", type=float, default=1.0)
    p_cls.add_argument("--t2", type=float, default=1.0)
    _add_sampling_args(p_cls)
    p_cls.add_argument("--format", choices=["json", "csv"], default="json")
    p_cls.add_argument("--output", help="write the report here instead of stdout")

    p_ver = sub.add_parser("verify", help="run the classification-statement suite")
    which = p_ver.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="run every statement")
    which.add_argument("--id", help="run one statement, e.g. 4.6b")
    _add_sampling_args(p_ver)
    p_ver.add_argument("--output", help="write the JSON report here")

    p_self = sub.add_parser("selftest", help="run the internal-consistency oracles")
    p_self.add_argument("--seed", type=int, default=1)
    p_self.add_argument("--trials", type=int, default=None,
                        help="override the per-oracle trial counts")
    p_self.add_argument("--corrupt-sign-table", action="store_true",
                        help=argparse.SUPPRESS)

    sub.add_parser("models", help="list built-in curvature models")
    return parser


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_operator(args) -> tuple[object, str]:
    if args.model is not None:
        name = args.model
        if name not in curvature.MODEL_SPECS:
            raise curvature.SchemaError(
                f"unknown model {name!r}; see 'twistorgh models'")
        if name not in _SCALAR_MODELS:
            raise curvature.SchemaError(
                f"model {name!r} needs matrix-valued blocks; supply it via --input FILE")
        needs_s = "s" in _SCALAR_MODELS[name]
        if needs_s and args.s is None:
            raise curvature.SchemaError(f"model {name!r} requires --s")
        if not needs_s and args.s is not None:
            raise curvature.SchemaError(f"model {name!r} does not take --s")
        params = {"s": args.s} if needs_s else {}
        return curvature.model(name, **params), f"model:{name}"
    try:
        return curvature.read_json(args.input), f"file:{args.input}"
    except FileNotFoundError as exc:
        raise curvature.SchemaError(f"cannot read {args.input!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise curvature.SchemaError(f"malformed JSON in {args.input!r}: {exc}") from None


def cmd_classify(args) -> int:
    try:
        rmat, source = _load_operator(args)
    except curvature.SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except curvature.CurvatureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        cfg = classifier.SamplingConfig(seed=args.seed, num_points=args.samples,
                                        num_arg_triples=args.triples, tol=args.tol)
        report = classifier.classify(rmat, args.component, (args.t1, args.t2),
                                     args.n, cfg, source=source)
    except (classifier.ClassifierError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    _emit(report.to_json() if args.format == "json" else report.to_csv(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = classifier.SamplingConfig(seed=args.seed, num_points=args.samples,
                                    num_arg_triples=args.triples, tol=args.tol)
    if args.id is not None:
        if args.id not in classifier.THEOREM_IDS:
            print(f"error: unknown statement id {args.id!r}; "
                  f"known: {', '.join(classifier.THEOREM_IDS)}", file=sys.stderr)
            return EXIT_INPUT
        results = [classifier.verify_theorem(args.id, cfg)]
    else:
        results = classifier.verify_all(cfg)
    detailed = args.id is not None
    for r in results:
        print(f"{r.tid}  {'PASS' if r.passed else 'FAIL'}  {r.statement}")
        if detailed or not r.passed:
            for c in r.checks:
                mark = "ok " if c["ok"] else "BAD"
                print(f"    {mark} {c['name']:<44} {c['value']:.3e} "
                      f"{c['require']} {c['bound']:.0e}")
    failed = [r.tid for r in results if not r.passed]
    print(f"passed {len(results) - len(failed)}/{len(results)}")
    if args.output:
        _emit(classifier.verify_report_json(results), args.output)
    if failed:
        print(f"failing ids: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run_selftest(seed=args.seed, trials=args.trials,
                                    corrupt_sign_table=args.corrupt_sign_table)
    for r in results:
        print(r.line())
    if not selftest.all_ok(results):
        failing = ", ".join(r.name for r in results if not r.ok)
        print(f"failing checks: {failing} (seed={args.seed})", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_models(_args) -> int:
    for name, (params, doc) in curvature.MODEL_SPECS.items():
        sig = ", ".join(params) if params else "-"
        via = "flags" if name in _SCALAR_MODELS else "--input file"
        print(f"{name:<20} params: {sig:<16} via {via:<12} {doc}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"classify": cmd_classify, "verify": cmd_verify,
               "selftest": cmd_selftest, "models": cmd_models}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
