"""Command-line entry point ``annular-floer``.

Every subcommand reads one input (``--grid FILE`` holding
``{"n", "x", "o", "axis"?}`` or ``--braid WORD --strands N``) and writes a
JSON report with sorted keys and rationals as ``"a/b"`` strings, so equal
inputs give byte-identical output.

Exit codes: 0 ok, 1 input error, 2 internal audit failure, 3 truncation
instability.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import annular_invariant as ai
from .braid_lab import band_rank_lower_bound, monoid_membership
from .braids import BraidWord, parse_word
from .chain_complexes import build_tilde, check_complex
from .errors import AnnularFloerError, AuditFailure, BadParameters, InputError
from .grid_core import GridDiagram, classical_invariants, from_braid, from_json
from .rational import fmt, to_fraction
from .transverse_refinement import (eta, legendrian_grading_audit, theta_for_braid,
                                    theta_nonzero)
from .verification import VerifyConfig, run_suite

EXIT_OK, EXIT_INPUT, EXIT_AUDIT, EXIT_TRUNCATION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, inputs: bool = True):
    g = p.add_argument_group("global")
    g.add_argument("--threads", type=int, default=None, help="numba worker threads")
    g.add_argument("--trunc", type=int, default=None, help="V-power truncation D")
    g.add_argument("--seed", type=int, default=None, help="seed for randomised checks")
    g.add_argument("--output", default=None, help="write the report here instead of stdout")
    if inputs:
        src = p.add_argument_group("input")
        src.add_argument("--grid", help="grid JSON file")
        src.add_argument("--braid", help='braid word such as "1 -2 1"')
        src.add_argument("--strands", type=int, help="braid index")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="annular-floer", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a grid, report components and classical data")
    _common(p)
    p = sub.add_parser("annular", help="top invariant as a PL function (or one value with --t)")
    _common(p)
    p.add_argument("--t", default=None)
    p = sub.add_parser("bottom", help="bottom invariant as a PL function (or one value with --t)")
    _common(p)
    p.add_argument("--t", default=None)
    p = sub.add_parser("tau", help="twice the top invariant at t = 1")
    _common(p)
    p = sub.add_parser("theta", help="is x+ outside the boundary image")
    _common(p)
    p = sub.add_parser("eta", help="first axis level where [x+] is a V-multiple")
    _common(p)
    p = sub.add_parser("tmod-check", help="t-modified tower level against the sweep")
    _common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = sub.add_parser("bands", help="band-rank lower bounds")
    _common(p)
    p = sub.add_parser("monoid", help="is M_t = n/2")
    _common(p)
    p.add_argument("--t", required=True)
    p = sub.add_parser("verify", help="run the self-verification suite")
    _common(p, inputs=False)
    p.add_argument("--max-grid", type=int, default=6)
    return parser


def _normalise_argv(argv: Sequence[str]) -> list:
    """Glue ``--braid WORD`` into ``--braid=WORD``; words may start with '-'."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--braid":
            out.append("--braid=" + next(it, ""))
        else:
            out.append(tok)
    return out


def _word(args) -> BraidWord:
    if args.braid is None:
        raise BadParameters("this command needs --braid and --strands")
    if args.strands is None:
        raise BadParameters("--braid needs --strands")
    return parse_word(args.braid, args.strands)


def _grid(args) -> GridDiagram:
    if (args.grid is None) == (args.braid is None):
        raise BadParameters("give exactly one of --grid and --braid")
    if args.grid is not None:
        try:
            with open(args.grid) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read grid {args.grid}: {exc}") from exc
        return from_json(obj, plain=obj.get("axis") is None and obj.get("plain", False))
    return from_braid(_word(args))


def _grid_json(d: GridDiagram) -> dict:
    return {"n": d.n, "x": list(d.x_col), "o": list(d.o_col), "axis": d.axis}


def _pl_report(d: GridDiagram, level: str, t: Optional[str]) -> dict:
    if t is not None:
        res = ai.value_at(d, to_fraction(t), level)
        return {"level": level, "t": fmt(res.t), "value": fmt(res.value),
                "witnesses": [[fmt(u), fmt(l)] for u, l in res.witness_bigradings]}
    return {"level": level, **ai.pl_function(d, level).to_json()}


def run(args) -> dict:
    cmd = args.command
    if args.threads is not None:
        import numba
        numba.set_num_threads(max(1, min(args.threads, numba.config.NUMBA_NUM_THREADS)))
    if cmd == "verify":
        cfg = VerifyConfig(max_grid=args.max_grid, seed=7 if args.seed is None else args.seed,
                           trunc=args.trunc or 4)
        report = run_suite(cfg)
        if not report["passed"]:
            raise _SuiteFailed(report)
        return report
    if cmd == "eta":
        res = eta(_word(args), D=args.trunc or 4)
        return {"command": "eta", **res.to_json()}
    if cmd == "theta":
        if args.braid is not None:
            return {"command": "theta", "theta_nonzero": theta_for_braid(_word(args))}
        return {"command": "theta", "theta_nonzero": theta_nonzero(_grid(args))}
    if cmd in ("bands", "monoid"):
        w = _word(args)
        if cmd == "bands":
            b = band_rank_lower_bound(w)
            return {"command": "bands", "lower_bound": fmt(b.bound), "at_t": fmt(b.at_t),
                    "bennequin_bound": fmt(b.bennequin)}
        t = to_fraction(args.t)
        return {"command": "monoid", "t": fmt(t), "member": monoid_membership(w, t)}

    d = _grid(args)
    if cmd == "validate":
        ci = classical_invariants(d)
        audit = legendrian_grading_audit(d)
        cx = check_complex(build_tilde(d)) if d.n <= 7 else None
        report = {
            "command": "validate", "grid": _grid_json(d), "components": d.num_components,
            "writhe": ci.writhe, "tb": ci.tb, "rot": fmt(ci.rot),
            "tb_components": list(ci.tb_comp), "rot_components": [fmt(r) for r in ci.rot_comp],
            "linking": [list(r) for r in ci.lk], "legendrian_audit": audit.checks,
        }
        if cx is not None:
            report["complex_audit"] = cx.checks
        if not audit.passed or (cx is not None and not cx.passed):
            raise AuditFailure("grid audit failed", report=report)
        return report
    if cmd == "annular":
        return {"command": "annular", **_pl_report(d, ai.TOP, args.t)}
    if cmd == "bottom":
        return {"command": "bottom", **_pl_report(d, ai.BOTTOM, args.t)}
    if cmd == "tau":
        return {"command": "tau", "tau": fmt(ai.tau(d))}
    if cmd == "tmod-check":
        D = args.trunc or 4
        level = ai.tmod_cross_check(d, args.p, args.q, D)
        t = Fraction(2 * args.p, args.q)
        expected = -ai.value_at(d, t).value
        report = {"command": "tmod-check", "t": fmt(t), "tower": fmt(level),
                  "minus_sweep": fmt(expected), "agree": level == expected, "truncation": D}
        if level != expected:
            raise AuditFailure("tower level disagrees with the sweep", report=report)
        return report
    raise BadParameters(f"unknown command {cmd}")


class _SuiteFailed(AuditFailure):
    code = "VerificationFailed"

    def __init__(self, report):
        super().__init__("verification suite failed", report=report)


def _emit(obj: dict, path: Optional[str]):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_normalise_argv(sys.argv[1:] if argv is None else argv))
    try:
        report = run(args)
    except AnnularFloerError as exc:
        body = {"error": exc.code, "message": str(exc)}
        if "report" in exc.details:
            body["report"] = exc.details["report"]
        _emit(body, args.output)
        return exc.exit_status
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        _emit({"error": "InputError", "message": str(exc)}, args.output)
        return EXIT_INPUT
    _emit(report, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
