"""The `pa` command line tool: compute, verify, dims, tangle.

Exit codes: 0 success, 1 parse error, 2 precondition violation,
3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import suites
from .config import Config, set_colour_cap
from .diagrams import catalan, enumerate_diagrams
from .elements import Element
from .errors import (ColourMismatchError, InternalError, LevelMismatchError,
                     ModeMismatchError, ParseError, PlanarAlgebraError,
                     PreconditionError, ValidationError)
from .scalars import Ring, Scalar
from .tangles import evaluate, parse, validate
from .tower import (GradedElement, bullet, cond_expect, dagger, dot_action,
                    include, inner_product, phi, psi, sharp, trace_Tr, trace_tk)

EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_INTERNAL = 3


def _ring_from_flag(delta: str) -> Ring:
    if delta in ("sym", "symbolic"):
        return Ring.symbolic()
    if "." in delta:
        return Ring.float_(float(delta))
    return Ring.rational(Fraction(delta))


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}")
    except OSError as exc:
        raise ParseError(f"{path}: {exc}")


def _load_graded(path: str) -> GradedElement:
    data = _load_json(path)
    if "level" in data:
        return GradedElement.from_json(data)
    element = Element.from_json(data)
    return GradedElement.of_element(element.colour.n, element)


def _load_element(path: str) -> Element:
    data = _load_json(path)
    if "level" in data:
        raise PreconditionError(f"{path}: expected an element, got a graded element")
    return Element.from_json(data)


def _emit(data, out: str | None):
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scalar_str(s: Scalar) -> str:
    return repr(s)


# -- compute -------------------------------------------------------------------


GRADED_BINARY = {"sharp": sharp, "bullet": bullet, "dot": dot_action}
GRADED_UNARY = {"dagger": dagger, "include": include, "expect": cond_expect}
GRADED_SCALAR = {"trace-tk": trace_tk, "trace-gr": trace_Tr}


def cmd_compute(args) -> int:
    op = args.op
    if op in GRADED_BINARY:
        a, b = _load_graded(args.inputs[0]), _load_graded(args.inputs[1])
        _emit(GRADED_BINARY[op](a, b).to_json(), args.out)
    elif op in GRADED_UNARY:
        a = _load_graded(args.inputs[0])
        _emit(GRADED_UNARY[op](a).to_json(), args.out)
    elif op in GRADED_SCALAR:
        a = _load_graded(args.inputs[0])
        print(_scalar_str(GRADED_SCALAR[op](a)))
    elif op == "inner":
        a, b = _load_graded(args.inputs[0]), _load_graded(args.inputs[1])
        print(_scalar_str(inner_product(a, b)))
    elif op in ("phi", "psi"):
        a = _load_graded(args.inputs[0])
        fn = phi if op == "phi" else psi
        _emit(fn(a.level if args.level is None else args.level, a).to_json(),
              args.out)
    elif op == "multiply":
        x, y = _load_element(args.inputs[0]), _load_element(args.inputs[1])
        _emit(x.multiply(y).to_json(), args.out)
    elif op == "star":
        _emit(_load_element(args.inputs[0]).star().to_json(), args.out)
    elif op == "tau":
        print(_scalar_str(_load_element(args.inputs[0]).tau()))
    else:
        raise PreconditionError(f"unknown operation {op!r}")
    return 0


def cmd_tangle(args) -> int:
    with open(args.tangle, "r", encoding="utf-8") as fh:
        tangle = parse(fh.read())
    validate(tangle)
    if args.action == "validate":
        print("ok")
        return 0
    inputs = [_load_element(path) for path in args.inputs]
    result = evaluate(tangle, inputs)
    _emit(result.to_json(), args.out)
    return 0


def cmd_dims(args) -> int:
    if args.max_colour > args.cap:
        raise PreconditionError(
            f"max colour {args.max_colour} exceeds cap {args.cap}")
    print(f"{'colour':>6} {'dim':>8} {'enum_ms':>10}")
    for n in range(args.max_colour + 1):
        start = time.perf_counter()
        count = len(enumerate_diagrams(n))
        ms = (time.perf_counter() - start) * 1000
        if count != catalan(n):
            raise InternalError("enumeration disagrees with the Catalan number")
        print(f"{n:>6} {count:>8} {ms:>10.2f}")
    return 0


def cmd_verify(args) -> int:
    names = list(suites.SUITE_NAMES) if args.suite == "all" else [args.suite]
    cfg = Config(delta=args.delta, level=args.level, max_colour=args.max_colour,
                 seed=args.seed, suites=tuple(names), out=args.out,
                 json_output=args.json, jobs=args.jobs, trials=args.trials)
    cfg.validate()
    report = suites.run_suites(names, cfg, jobs=args.jobs)
    if args.json or args.out:
        _emit(report, args.out)
    if not args.json:
        for row in report["checks"]:
            mark = "PASS" if row["status"] == "pass" else "FAIL"
            params = " ".join(f"{k}={v}" for k, v in sorted(row["params"].items()))
            detail = f"  [{row['details']}]" if row["details"] else ""
            print(f"{mark} {row['check']} {params}{detail}")
        print(f"{'all passed' if report['status'] == 'pass' else 'FAILURES'} "
              f"({len(report['checks'])} checks, seed {cfg.seed})")
    return 0 if report["status"] == "pass" else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="pa",
                                  description="Temperley-Lieb planar algebra workbench")
    top.add_argument("--cap", type=int, default=10,
                     help="colour cap for diagram enumeration")
    sub = top.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="apply one operation to JSON inputs")
    comp.add_argument("op")
    comp.add_argument("inputs", nargs="*")
    comp.add_argument("--level", type=int, default=None)
    comp.add_argument("--out", default=None)
    comp.set_defaults(func=cmd_compute)

    tang = sub.add_parser("tangle", help="validate or evaluate a DSL tangle")
    tang.add_argument("action", choices=("validate", "eval"))
    tang.add_argument("tangle")
    tang.add_argument("inputs", nargs="*")
    tang.add_argument("--out", default=None)
    tang.set_defaults(func=cmd_tangle)

    dims = sub.add_parser("dims", help="Catalan dimension table with timings")
    dims.add_argument("--max-colour", type=int, default=8)
    dims.set_defaults(func=cmd_dims)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", choices=suites.SUITE_NAMES + ("all",))
    ver.add_argument("--delta", default="sym")
    ver.add_argument("--level", type=int, default=2)
    ver.add_argument("--max-colour", type=int, default=None)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--trials", type=int, default=20)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--out", default=None)
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=cmd_verify)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_colour_cap(args.cap)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, ColourMismatchError, LevelMismatchError,
            ModeMismatchError, ValidationError) as exc:
        print(f"precondition violation: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
