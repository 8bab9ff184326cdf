"""Command-line front end.

Exit codes: 0 ok, 1 verified-false (or a degenerate motion), 2 usage or parse
error, 3 internal error. Artifacts go to ``--output`` or stdout; when an artifact
is written to a file the JSON run report is printed instead.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import braids, cubes, limits
from . import factsys as fs
from . import serialize as ser
from .braids import BraidError, DegenerateMotion
from .cat import check_yang_baxter, eval_braid
from .config import VerifyConfig
from .cubes import EmbeddingError
from .linalg import Field, LinalgError

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _field(args) -> Field | None:
    if getattr(args, "field", None) is None:
        return None
    try:
        return Field.parse(args.field)
    except LinalgError as exc:
        raise UsageError(str(exc)) from exc


def _koszul(args) -> bool | None:
    k = getattr(args, "koszul", None)
    return None if k is None else k == "on"


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


class Run:
    """Collects one report and writes output once at the end."""

    def __init__(self, args, command: str, inputs: Sequence[str]):
        self.args = args
        self.report: dict[str, Any] = {"command": command, "inputs": [str(p) for p in inputs], "status": "ok", "details": []}
        self.start = time.perf_counter()
        self.artifact: dict | None = None

    def fail(self, status: str, details: list) -> None:
        self.report["status"] = status
        self.report["details"] = details

    def finish(self) -> int:
        if getattr(self.args, "timing", False):
            self.report["timing_ms"] = round((time.perf_counter() - self.start) * 1000)
        out = getattr(self.args, "output", None)
        if self.artifact is not None and out is None:
            sys.stdout.write(ser.dumps(self.artifact))
        else:
            if self.artifact is not None:
                Path(out).write_text(ser.dumps(self.artifact), encoding="utf-8")
                self.report["output"] = str(out)
            sys.stdout.write(ser.dumps(self.report))
        return EXIT_OK if self.report["status"] == "ok" else EXIT_FALSE


# ---------------------------------------------------------------- commands

def cmd_yb_check(args) -> int:
    run = Run(args, "yb-check", [args.matrix])
    R = ser.square_matrix_from_json(ser.load_json(args.matrix), _field(args))
    try:
        rep = check_yang_baxter(R)
    except LinalgError as exc:
        raise ser.FormatError(str(exc)) from exc
    run.report["field"] = R.field.name
    if not rep.ok:
        detail: dict[str, Any] = {"reason": rep.reason}
        if rep.entry is not None:
            detail.update(entry=list(rep.entry), lhs=R.field.fmt(rep.lhs), rhs=R.field.fmt(rep.rhs))
        run.fail("violation", [detail])
    return run.finish()


def cmd_compose(args) -> int:
    run = Run(args, "compose", [args.outer, *args.inners])
    outer = ser.embedding_from_json(ser.load_json(args.outer))
    inners = [ser.embedding_from_json(ser.load_json(p)) for p in args.inners]
    for phi in (outer, *inners):
        cubes.require_valid(phi)
    run.artifact = ser.embedding_to_json(cubes.compose(outer, inners))
    return run.finish()


def cmd_straighten(args) -> int:
    run = Run(args, "straighten", [args.embedding])
    phi = ser.embedding_from_json(ser.load_json(args.embedding))
    try:
        b = braids.straighten(phi, args.perturb, args.orientation)
    except DegenerateMotion as exc:
        run.fail("error", [{"error": "DegenerateMotion", "slots": [p + 1 for p in exc.pair],
                            "time": ser._scalar(exc.time), "message": str(exc)}])
        return run.finish()
    run.artifact = ser.braid_to_json(b)
    return run.finish()


def cmd_build(args) -> int:
    inputs = [args.object, *(args.gauge or [])]
    run = Run(args, "build", inputs)
    obj = ser.object_from_json(ser.load_json(args.object), _field(args), _koszul(args))
    rep = check_yang_baxter(obj.R)
    if not rep.ok:
        run.fail("violation", [{"reason": rep.reason}])
        return run.finish()
    if args.gauge:
        gauge = [ser.square_matrix_from_json(ser.load_json(p), obj.field) for p in args.gauge]
        if len(gauge) != args.depth:
            raise UsageError(f"--depth {args.depth} needs {args.depth} gauge files, got {len(gauge)}")
        try:
            system = fs.extend_vertical_braided(obj, gauge, args.depth, orientation=args.orientation)
        except fs.VerticalDatumRejected as exc:
            run.fail("violation", [{"axiom": exc.axiom, "message": str(exc)}])
            return run.finish()
        except ValueError as exc:
            raise ser.FormatError(str(exc)) from exc
    else:
        system = fs.from_object(obj, args.depth, orientation=args.orientation)
    run.artifact = ser.system_to_json(system)
    return run.finish()


def _verify_config(args) -> VerifyConfig:
    return VerifyConfig(seed=args.seed)


def cmd_verify(args) -> int:
    run = Run(args, "verify", [args.system])
    system = ser.system_from_json(ser.load_json(args.system), Path(args.system).parent)
    cap = system.depth if args.depth_cap is None else args.depth_cap
    if cap > system.depth:
        raise UsageError(f"--depth-cap {cap} exceeds depth {system.depth}")
    rep = fs.verify_factorization(system, cap, _verify_config(args))
    run.report.update(seed=args.seed, depth_cap=cap, checked=dict(rep.checked))
    if not rep.ok:
        run.fail("violation", [ser.violation_to_json(v) for v in rep.violations])
    return run.finish()


def cmd_tower(args) -> int:
    run = Run(args, "tower", [args.system])
    system = ser.system_from_json(ser.load_json(args.system), Path(args.system).parent)
    height = system.depth if args.height is None else args.height
    if height > system.depth:
        raise UsageError(f"--height {height} exceeds depth {system.depth}")
    if args.twist is None:
        tower = limits.tower_of(system, height)
    else:
        tower, _ = limits.twisted_tower(system, args.twist, height)
    run.artifact = ser.tower_to_json(tower)
    return run.finish()


def cmd_assemble(args) -> int:
    run = Run(args, "assemble", [args.tower])
    tower = ser.tower_from_json(ser.load_json(args.tower), Path(args.tower).parent)
    rep = limits.verify_tower(tower, _verify_config(args))
    if not rep.ok:
        run.fail("violation", [ser.tower_violation_to_json(v) for v in rep.violations])
        return run.finish()
    run.artifact = ser.system_to_json(limits.assemble(tower, check=False))
    return run.finish()


def cmd_braid_matrix(args) -> int:
    run = Run(args, "braid-matrix", [args.object, args.braid])
    obj = ser.object_from_json(ser.load_json(args.object), _field(args), _koszul(args))
    b = ser.braid_from_json(ser.load_json(args.braid), args.n)
    if args.n is not None and b.n != args.n:
        raise UsageError(f"braid has {b.n} strands but --n is {args.n}")
    run.artifact = ser.matrix_to_json(eval_braid(obj, b))
    return run.finish()


# ---------------------------------------------------------------- parser

def build_parser() -> ArgumentParser:
    p = ArgumentParser(prog="factoperad", description="Factorized local systems on configuration spaces.")
    p.add_argument("--log-level", default="WARNING", help="logging level for stderr (default WARNING)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    def common(sp, output=True):
        if output:
            sp.add_argument("-o", "--output", help="write the artifact here and print the run report")
        sp.add_argument("--timing", action="store_true", help="include wall-clock milliseconds in the report")

    sp = sub.add_parser("yb-check", help="check the Yang-Baxter equation for a matrix file")
    sp.add_argument("matrix")
    sp.add_argument("--field", help="Q or Fp:<p> (overrides the file)")
    common(sp, output=False)
    sp.set_defaults(func=cmd_yb_check)

    sp = sub.add_parser("compose", help="operadic composition of embedding files")
    sp.add_argument("outer")
    sp.add_argument("inners", nargs="*")
    common(sp)
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("straighten", help="colored braid from an embedding to the canonical vertical one")
    sp.add_argument("embedding")
    sp.add_argument("--perturb", type=_fraction, default=None, help="deterministic perturbation, e.g. 1/1000")
    sp.add_argument("--orientation", choices=("ccw", "cw"), default="ccw")
    common(sp)
    sp.set_defaults(func=cmd_straighten)

    sp = sub.add_parser("build", help="canonical (or gauge-extended) system from a braided object")
    sp.add_argument("object")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--gauge", nargs="+", help="one gauge matrix file per degree 1..depth")
    sp.add_argument("--field", help="Q or Fp:<p> (overrides the file)")
    sp.add_argument("--koszul", choices=("on", "off"), default=None)
    sp.add_argument("--orientation", choices=("ccw", "cw"), default="ccw")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="check axioms (a), (b), (c) of a system file")
    sp.add_argument("system")
    sp.add_argument("--depth-cap", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, output=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tower", help="projective system of truncations of a system file")
    sp.add_argument("system")
    sp.add_argument("--height", type=int, default=None, help="tower height D (default: the system depth)")
    sp.add_argument("--twist", type=int, default=None, metavar="SEED", help="twist levels and transitions by seeded automorphisms")
    common(sp)
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("assemble", help="inverse-limit assembly of a tower file")
    sp.add_argument("tower")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_assemble)

    sp = sub.add_parser("braid-matrix", help="evaluate a braid on the tensor power of an object")
    sp.add_argument("object")
    sp.add_argument("braid")
    sp.add_argument("--n", type=int, default=None, help="strand count (required for a bare word)")
    sp.add_argument("--field", help="Q or Fp:<p> (overrides the file)")
    sp.add_argument("--koszul", choices=("on", "off"), default=None)
    common(sp)
    sp.set_defaults(func=cmd_braid_matrix)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"factoperad: usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING), stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ser.FormatError, EmbeddingError, BraidError, LinalgError, fs.DepthExceeded,
            limits.TowerError) as exc:
        sys.stderr.write(f"factoperad: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"factoperad: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
