"""Command-line front end: JSON in, JSON out.

One command per invocation.  Exit codes: 0 success, 1 validation error
(with a machine-readable ``{"error", "detail"}`` object), 2 verification
suite failure (with the failing properties in the report).

Output is deterministic given the same inputs and seed, except for the
trailing ``elapsed_ms`` field; floats are serialized with 17 significant
digits so results round-trip bit-exactly.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from .algebras import Algebra, AtomProfile, distance_D, distance_d, independent_with_profile
from .decomposition import decompose, extract_measure
from .entropies import EntropySpec
from .errors import InputFormatError, ModelError
from .measure_space import MSet, as_rat, rat_str
from .sampling import GENERATOR
from .transport import SwapPair, transport_increment, transport_rate
from .verify import run_suite


class _UsageError(ModelError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _render_json(value, pieces: list[str]) -> None:
    if value is None:
        pieces.append("null")
    elif value is True:
        pieces.append("true")
    elif value is False:
        pieces.append("false")
    elif isinstance(value, int):
        pieces.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite float in report: {value}")
        pieces.append(format(value + 0.0, ".17g"))
    elif isinstance(value, str):
        pieces.append(json.dumps(value))
    elif isinstance(value, dict):
        pieces.append("{")
        for i, (key, item) in enumerate(value.items()):
            if i:
                pieces.append(", ")
            pieces.append(json.dumps(str(key)))
            pieces.append(": ")
            _render_json(item, pieces)
        pieces.append("}")
    elif isinstance(value, (list, tuple)):
        pieces.append("[")
        for i, item in enumerate(value):
            if i:
                pieces.append(", ")
            _render_json(item, pieces)
        pieces.append("]")
    else:
        raise ValueError(f"unserializable value in report: {value!r}")


def dumps(value) -> str:
    """Deterministic JSON text: floats at 17 significant digits."""
    pieces: list[str] = []
    _render_json(value, pieces)
    return "".join(pieces)


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: malformed JSON: {exc}") from exc


def _load_spec(path: str) -> EntropySpec:
    return EntropySpec.from_json(_load_json(path))


def _load_algebra(path: str) -> Algebra:
    return Algebra.from_json(_load_json(path))


def _load_mset(path: str) -> MSet:
    return MSet.from_json(_load_json(path))


def _load_profile(path: str) -> AtomProfile:
    return AtomProfile.from_json(_load_json(path))


def _build_parser() -> _Parser:
    parser = _Parser(prog="partent", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", default=None, help="write the report here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "entropy", parents=[common], help="evaluate an entropy spec on an algebra"
    )
    p.add_argument("--spec", "--entropy", dest="spec", required=True)
    p.add_argument("--algebra", required=True)

    p = sub.add_parser(
        "join", parents=[common], help="smallest common refinement of two algebras"
    )
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("independent", parents=[common], help="exact independence check")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser(
        "independent-profile",
        parents=[common],
        help="build an algebra independent of --a with prescribed atom measures",
    )
    p.add_argument("--a", required=True)
    p.add_argument("--profile", required=True)

    p = sub.add_parser(
        "distance", parents=[common], help="agreement pseudometric between algebras"
    )
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--metric", choices=["d", "D"], default="d")

    p = sub.add_parser(
        "delta", parents=[common], help="transport increment / rate for a swap pair"
    )
    p.add_argument("--spec", "--entropy", dest="spec", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--lambda", dest="ratio", default=None, metavar="P/Q")

    p = sub.add_parser(
        "extract", parents=[common], help="recover the hidden measure on a grid"
    )
    p.add_argument("--spec", "--entropy", dest="spec", required=True)
    p.add_argument("--grid", type=int, required=True)

    p = sub.add_parser(
        "decompose",
        parents=[common],
        help="extract the measure and verify the split",
    )
    p.add_argument("--spec", "--entropy", dest="spec", required=True)
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", parents=[common], help="run a named property suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _dispatch(args) -> tuple[dict, bool, int]:
    """Returns (result payload, uses a seeded generator, exit code)."""
    if args.command == "entropy":
        spec = _load_spec(args.spec)
        algebra = _load_algebra(args.algebra)
        return {"value": spec.evaluate(algebra)}, False, 0
    if args.command == "join":
        a, b = _load_algebra(args.a), _load_algebra(args.b)
        return a.join(b).to_json(), False, 0
    if args.command == "independent":
        a, b = _load_algebra(args.a), _load_algebra(args.b)
        return {"independent": a.is_independent(b)}, False, 0
    if args.command == "independent-profile":
        a = _load_algebra(args.a)
        profile = _load_profile(args.profile)
        return independent_with_profile(a, profile).to_json(), False, 0
    if args.command == "distance":
        a, b = _load_algebra(args.a), _load_algebra(args.b)
        fn = distance_d if args.metric == "d" else distance_D
        return {"metric": args.metric, "value": rat_str(fn(a, b))}, False, 0
    if args.command == "delta":
        spec = _load_spec(args.spec)
        pair = SwapPair(_load_mset(args.v), _load_mset(args.w))
        if args.ratio is None:
            result = transport_rate(spec, pair)
        else:
            result = transport_increment(spec, pair, as_rat(args.ratio))
        return result.to_json(), False, 0
    if args.command == "extract":
        spec = _load_spec(args.spec)
        return extract_measure(spec, args.grid).to_json(), False, 0
    if args.command == "decompose":
        spec = _load_spec(args.spec)
        report = decompose(spec, args.grid, args.trials, args.seed)
        return report.to_json(), True, 0
    if args.command == "verify":
        result = run_suite(args.suite, args.trials, args.seed)
        return result.to_json(), True, 0 if result.passed else 2
    raise _UsageError(f"unknown command {args.command!r}")


def run(argv=None) -> int:
    """Parse arguments, run one command, print the JSON report."""
    argv = list(sys.argv[1:] if argv is None else argv)
    started = time.perf_counter()
    try:
        args = _build_parser().parse_args(argv)
        result, seeded, code = _dispatch(args)
    except ModelError as exc:
        print(dumps({"error": exc.code, "detail": str(exc)}))
        return 1
    report = {"command": argv, "version": __version__}
    if seeded:
        report["generator"] = GENERATOR
    report["result"] = result
    report["elapsed_ms"] = (time.perf_counter() - started) * 1000.0
    text = dumps(report)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
