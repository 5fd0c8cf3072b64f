"""Command-line front end: ``conjclass classify | compare | verify``.

Exit codes
  classify  0 ok, 2 parse/schema error, 4 unsupported dimension
  compare   0 conjugate, 1 not conjugate, 3 conjugate but no witness under
            --synthesize, 2 parse/schema error, 5 field or dimension mismatch
  verify    0 pass, 1 fail, 2 parse/schema error
In --batch mode each input line yields one output line and the process exits
with the largest per-line code.
"""
from __future__ import annotations

import argparse
import os
import sys

from .classify import AffineMap, conjugate, signature
from .exceptions import (ConjClassError, FieldOrDimensionMismatch, ParseError,
                         SynthesisUnsupported, UnsupportedDimension)
from .homeo import Homeomorphism, synthesize, verify_conjugacy
from .numeric import ExactVector, vector_from_json, vector_to_json
from .wire import (SCHEMA_VERSION, dumps, loads, map_from_json, signature_to_json,
                   verdict_to_json)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_SYNTH_UNSUPPORTED = 3
EXIT_DIMENSION = 4
EXIT_MISMATCH = 5

SYNTH_UNSUPPORTED = "SYNTH_UNSUPPORTED"
DEFAULT_TOL = 1e-9
DEFAULT_SAMPLES = 10_000
DEFAULT_RANGE = (-10.0, 10.0)


class CommandFailure(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code, self.kind = code, kind

    def to_json(self) -> dict:
        return {"v": SCHEMA_VERSION, "error": {"type": self.kind, "message": str(self)}}


def _failure_from(exc: Exception) -> CommandFailure:
    if isinstance(exc, UnsupportedDimension):
        return CommandFailure(EXIT_DIMENSION, "UnsupportedDimension", str(exc))
    if isinstance(exc, FieldOrDimensionMismatch):
        return CommandFailure(EXIT_MISMATCH, "FieldOrDimensionMismatch", str(exc))
    return CommandFailure(EXIT_PARSE, "ParseError", str(exc))


def _part(doc, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"document lacks {key!r}")
    return doc[key]


def _orbit(f: AffineMap, start, steps: int) -> list:
    x = vector_from_json(start, f.field) if start is not None else ExactVector.zeros(f.dim, f.field)
    if len(x) != f.dim:
        raise ParseError("orbit start has the wrong dimension")
    out = [vector_to_json(x)]
    for _ in range(steps):
        x = f(x)
        out.append(vector_to_json(x))
    return out


def cmd_classify(doc, emit_orbit: int | None = None, start=None) -> tuple[int, dict]:
    f = map_from_json(doc)
    out = signature_to_json(signature(f))
    if emit_orbit is not None:
        out["orbit"] = _orbit(f, start, emit_orbit)
    return EXIT_OK, out


def cmd_compare(doc, synthesize_witness=False, verify=False, samples=DEFAULT_SAMPLES,
                box=DEFAULT_RANGE, tol=DEFAULT_TOL) -> tuple[int, dict]:
    f, g = map_from_json(_part(doc, "f")), map_from_json(_part(doc, "g"))
    verdict = conjugate(f, g)
    out = {"v": SCHEMA_VERSION, **verdict_to_json(verdict),
           "signature_f": signature_to_json(signature(f)),
           "signature_g": signature_to_json(signature(g))}
    code = EXIT_OK if verdict.conjugate else EXIT_NEGATIVE
    if verdict.conjugate and (synthesize_witness or verify):
        try:
            h = synthesize(f, g)
        except SynthesisUnsupported as exc:
            out["warnings"].append({"code": SYNTH_UNSUPPORTED,
                                    "message": f"{type(exc).__name__}: {exc}"})
            if synthesize_witness:
                code = EXIT_SYNTH_UNSUPPORTED
        else:
            out["witness"] = h.to_json()
            if verify:
                out["verification"] = verify_conjugacy(f, g, h, samples, box, tol).to_json()
    return code, out


def cmd_verify(doc, samples=DEFAULT_SAMPLES, box=DEFAULT_RANGE, tol=DEFAULT_TOL) -> tuple[int, dict]:
    f, g = map_from_json(_part(doc, "f")), map_from_json(_part(doc, "g"))
    h = Homeomorphism.from_json(_part(doc, "h"))
    try:
        report = verify_conjugacy(f, g, h, samples, box, tol)
    except FieldOrDimensionMismatch as exc:
        raise ParseError(str(exc)) from exc
    return (EXIT_OK if report.passed else EXIT_NEGATIVE), report.to_json()


def _run(handler, doc) -> tuple[int, dict]:
    try:
        return handler(doc)
    except CommandFailure as exc:
        return exc.code, exc.to_json()
    except (ConjClassError, ValueError) as exc:
        failure = _failure_from(exc)
        return failure.code, failure.to_json()


def _read(path: str | None, stdin) -> str:
    if path is None or path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_docs(args, stdin, keys: tuple[str, ...]):
    """Yield documents: one per NDJSON line in batch mode, else a single document.

    With one path per key the files are combined into a single document.
    """
    paths = args.inputs
    if args.batch:
        text = _read(paths[0] if paths else None, stdin)
        for line in text.splitlines():
            if line.strip():
                yield line
        return
    if len(keys) > 1 and len(paths) == len(keys):
        yield {k: ("raw", _read(p, stdin)) for k, p in zip(keys, paths)}
        return
    if len(paths) > 1:
        raise CommandFailure(EXIT_PARSE, "ParseError",
                             f"expected 1 or {len(keys)} input files, got {len(paths)}")
    yield _read(paths[0] if paths else None, stdin)


def _parse(item):
    if isinstance(item, dict):
        return {k: loads(text) for k, (_, text) in item.items()}
    return loads(item)


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("range must look like LO,HI") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError("range needs LO < HI")
    return lo, hi


def _default_tol() -> float:
    env = os.environ.get("CONJCLASS_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            pass
    return DEFAULT_TOL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conjclass",
        description="Decide topological conjugacy of affine maps of R, R^2, C and C^2.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, verifying=False):
        p.add_argument("inputs", nargs="*", help="JSON input files ('-' or none for stdin)")
        p.add_argument("--batch", action="store_true",
                       help="read newline-delimited JSON documents, write one result per line")
        if verifying:
            p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
            p.add_argument("--range", type=_range, default=DEFAULT_RANGE, metavar="LO,HI")
            p.add_argument("--tol", type=float, default=None,
                           help="tolerance (default $CONJCLASS_TOL or 1e-9)")

    p = sub.add_parser("classify", help="print the conjugacy signature of one map")
    common(p)
    p.add_argument("--emit-orbit", type=int, default=None, metavar="N",
                   help="also dump N iterates of the orbit of --start")
    p.add_argument("--start", default=None, help="orbit start as a JSON vector (default origin)")

    p = sub.add_parser("compare", help="decide whether maps f and g are conjugate")
    common(p, verifying=True)
    p.add_argument("--synthesize", action="store_true", help="attach an explicit homeomorphism")
    p.add_argument("--verify", action="store_true", help="check the witness numerically")

    p = sub.add_parser("verify", help="check a homeomorphism h against g = h o f o h^-1")
    common(p, verifying=True)
    return parser


def main(argv=None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    tol = getattr(args, "tol", None)
    tol = _default_tol() if tol is None else tol

    if args.command == "classify":
        start = None
        if args.start is not None:
            try:
                start = loads(args.start)
            except ParseError as exc:
                print(dumps(CommandFailure(EXIT_PARSE, "ParseError", str(exc)).to_json()), file=stdout)
                return EXIT_PARSE
        keys = ("map",)
        handler = lambda d: cmd_classify(d, args.emit_orbit, start)  # noqa: E731
    elif args.command == "compare":
        keys = ("f", "g")
        handler = lambda d: cmd_compare(d, args.synthesize, args.verify,  # noqa: E731
                                        args.samples, args.range, tol)
    else:
        keys = ("f", "g", "h")
        handler = lambda d: cmd_verify(d, args.samples, args.range, tol)  # noqa: E731

    worst = EXIT_OK
    try:
        for item in _load_docs(args, stdin, keys):
            code, out = _run(lambda raw: handler(_parse(raw)), item)
            print(dumps(out), file=stdout)
            worst = max(worst, code)
    except (CommandFailure, OSError) as exc:
        failure = exc if isinstance(exc, CommandFailure) else CommandFailure(
            EXIT_PARSE, "ParseError", str(exc))
        print(dumps(failure.to_json()), file=stdout)
        return failure.code
    return worst


if __name__ == "__main__":
    sys.exit(main())
