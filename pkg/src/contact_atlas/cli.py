"""Command-line interface: `contact-atlas <subcommand> -p P -q Q [options]`.

Every subcommand emits a deterministic report envelope on stdout; errors go
to stderr as structured JSON.  Exit codes: 0 success, 2 domain errors
(non-coprime input, (p, +-1) knots, bad coefficients), 64 unknown
subcommand, 65 malformed diagram file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .classify import (
    classification_report,
    counts,
    mountain_range,
    normalize,
    surgered_manifold,
    tight_counts,
)
from .decor import (
    consistency_level,
    enumerate_decorations,
    is_totally_k_inconsistent,
    serialize_level,
)
from .euler import (
    TorsionKind,
    euler_class,
    euler_support,
    euler_value_set,
    k_e,
    side_of,
    totally2_euler_set,
)
from .paths import block_sequence, serialize_sequence
from .render import render_ascii, render_svg
from .surgery import (
    LutzKind,
    SurgeryError,
    dg_expand,
    euler_cross_check,
    homology,
    linking_matrix,
    lutz,
    parse_diagram,
    pd_euler,
    standard_diagram,
)

SUBCOMMANDS = (
    "counts",
    "paths",
    "decorations",
    "euler",
    "classify",
    "mountain",
    "surgery",
    "lutz",
    "normalize",
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_BADFILE = 65


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contact-atlas", add_help=True)
    sub = parser.add_subparsers(dest="cmd", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("-p", type=int, default=None)
        sp.add_argument("-q", type=int, default=None)
        sp.add_argument("--format", choices=("json", "ascii", "svg"), default="json")
        sp.add_argument("--tw-min", type=int, default=-5)
        sp.add_argument("--tw-max", type=int, default=5)
        sp.add_argument("--tor-max", type=str, default="2")
        sp.add_argument("--clip", type=int, default=4)
        sp.add_argument("--input", type=str, default=None)
        sp.add_argument("--normalize", action="store_true")
        if name == "lutz":
            sp.add_argument("--euler", type=int, required=True)
            sp.add_argument(
                "--kind",
                choices=tuple(k.value for k in LutzKind),
                required=True,
            )
        if name == "surgery":
            sp.add_argument("--r", type=int, default=None)
            sp.add_argument("--s", type=int, default=None)
    return parser


def _require_pq(args) -> tuple[int, int]:
    if args.p is None or args.q is None:
        raise CliError(EXIT_DOMAIN, "both -p and -q are required")
    p, q = args.p, args.q
    if args.normalize:
        p, q = normalize(p, q)
    else:
        if q >= 0:
            raise CliError(
                EXIT_DOMAIN, "q must be a negative integer (pass --normalize to reduce)"
            )
        if not 0 < p < -q:
            raise CliError(
                EXIT_DOMAIN,
                f"(p, q) = ({p}, {q}) is not in the range -q > p > 0; pass --normalize",
            )
    return p, q


def _parse_tor(text: str) -> Fraction:
    try:
        t = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_DOMAIN, f"bad --tor-max {text!r}") from exc
    if t < 0 or (2 * t).denominator != 1:
        raise CliError(EXIT_DOMAIN, "--tor-max must be a nonnegative half-integer")
    return t


def run_counts(args):
    p, q = _require_pq(args)
    payload = counts(p, q).serialize()
    payload["tight_counts"] = tight_counts(p, q)
    return payload


def run_paths(args):
    p, q = _require_pq(args)
    return serialize_sequence(block_sequence(p, q))


def run_decorations(args):
    p, q = _require_pq(args)
    seq = block_sequence(p, q)
    rows = []
    for dec in enumerate_decorations(seq):
        level = consistency_level(seq, dec)
        e = euler_class(seq, dec)
        row = {
            "positives": list(dec),
            "level": serialize_level(level),
            "euler": e,
            "totally_2_inconsistent": (
                level is not None and is_totally_k_inconsistent(seq, dec, 2)
            ),
            "side": None if level is None else side_of(seq, dec).value,
        }
        rows.append(row)
    return {"slope": f"{q}/{p}", "count": len(rows), "decorations": rows}


def run_euler(args):
    p, q = _require_pq(args)
    values = sorted(euler_value_set(p, q))
    return {
        "values": values,
        "zero_note": "tight (xi_std)",
        "k_e": k_e(p, q),
        "totally_2_inconsistent_values": sorted(totally2_euler_set(p, q)),
        "support": {
            kind.value: euler_support(p, q, kind).serialize()
            for kind in (TorsionKind.ZERO, TorsionKind.INTEGER, TorsionKind.HALF_INTEGER)
        },
    }


def run_classify(args):
    p, q = _require_pq(args)
    tor_max = _parse_tor(args.tor_max)
    return classification_report(p, q, args.tw_min, args.tw_max, tor_max)


def run_mountain(args):
    p, q = _require_pq(args)
    mr = mountain_range(p, q)
    if args.format == "ascii":
        return render_ascii(mr, args.clip)
    if args.format == "svg":
        return render_svg(mr, args.clip)
    return mr.serialize()


def run_surgery(args):
    if args.input is not None:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise CliError(EXIT_BADFILE, f"cannot read {args.input}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise CliError(EXIT_BADFILE, f"invalid JSON in {args.input}: {exc}") from exc
        try:
            diagram = parse_diagram(data)
        except SurgeryError as exc:
            raise CliError(EXIT_BADFILE, str(exc)) from exc
        Q = linking_matrix(diagram)
        payload = {
            "linking_matrix": Q,
            "homology": homology(Q).serialize(),
        }
        try:
            payload["pd_euler"] = pd_euler(diagram)
        except SurgeryError as exc:
            payload["pd_euler"] = None
            payload["pd_euler_note"] = str(exc)
        return payload
    p, q = _require_pq(args)
    if args.r is not None or args.s is not None:
        if args.r is None or args.s is None:
            raise CliError(EXIT_DOMAIN, "--r and --s must be given together")
        return surgered_manifold(p, q, args.r, args.s)
    base = standard_diagram(p, q)
    expanded = dg_expand(base)
    mismatches = euler_cross_check(p, q)
    return {
        "expansion": [
            {
                "id": c.id,
                "tb": c.tb,
                "contact_coeff": f"{c.contact_coeff.numerator}/{c.contact_coeff.denominator}",
                "stabilization_slots": c.slots,
                "parent": c.parent,
            }
            for c in expanded.components
        ],
        "linking": [list(row) for row in expanded.linking],
        "euler_cross_check_mismatches": mismatches,
    }


def run_lutz(args):
    if args.q is None:
        raise CliError(EXIT_DOMAIN, "-q is required")
    kind = LutzKind(args.kind)
    new_e = lutz(args.euler, args.q, kind)
    torsion_shift = "0" if kind is LutzKind.FULL else "1/2"
    return {
        "euler_before": args.euler,
        "euler_after": new_e,
        "torsion_shift": torsion_shift,
        "kind": kind.value,
    }


def run_normalize(args):
    if args.p is None or args.q is None:
        raise CliError(EXIT_DOMAIN, "both -p and -q are required")
    p, q = normalize(args.p, args.q)
    return {"p": p, "q": q}


RUNNERS = {
    "counts": run_counts,
    "paths": run_paths,
    "decorations": run_decorations,
    "euler": run_euler,
    "classify": run_classify,
    "mountain": run_mountain,
    "surgery": run_surgery,
    "lutz": run_lutz,
    "normalize": run_normalize,
}


def _emit_error(code: int, message: str):
    kind = {EXIT_DOMAIN: "domain", EXIT_USAGE: "usage", EXIT_BADFILE: "badfile"}
    sys.stderr.write(
        json.dumps({"error": {"code": kind.get(code, "error"), "message": message}})
        + "\n"
    )


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return EXIT_OK
    if argv[0] not in SUBCOMMANDS:
        _emit_error(EXIT_USAGE, f"unknown subcommand {argv[0]!r}")
        return EXIT_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        _emit_error(EXIT_USAGE, "bad arguments")
        return EXIT_USAGE

    try:
        payload = RUNNERS[args.cmd](args)
    except CliError as exc:
        _emit_error(exc.code, str(exc))
        return exc.code
    except ValueError as exc:
        # Domain errors from the engine (ClassifyError, FareyError, ...).
        _emit_error(EXIT_DOMAIN, str(exc))
        return EXIT_DOMAIN

    if isinstance(payload, str):
        sys.stdout.write(payload)
        return EXIT_OK
    envelope = {
        "tool": "contact-atlas",
        "version": __version__,
        "input": {
            "subcommand": args.cmd,
            "p": args.p,
            "q": args.q,
        },
        "payload": payload,
        "warnings": [],
    }
    if args.cmd == "surgery" and isinstance(payload, dict):
        mism = payload.get("euler_cross_check_mismatches")
        if mism:
            envelope["warnings"].append(
                "path-formula and diagram-formula Euler classes disagree; see payload"
            )
    sys.stdout.write(json.dumps(envelope, indent=2) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
