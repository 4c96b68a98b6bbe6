"""Command-line front end: every operation, machine-readable output.

Times are read and written as exact strings ("pi", "pi/2", "3pi/4") or as
{"num", "den"} objects holding tau/pi; rationals are serialized reduced.
CSV mode emits decimals with 17 significant digits plus an exactness
column.  Exit codes: 0 computed (even a no-transfer verdict), 2
precondition or obstruction error, 3 capacity error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import CapacityError, NumericFailure, ObstructionError, ParityPatternError
from .oracle import fidelity_curve, walk_fidelity
from .scheme import DEFAULT_ADJACENCY_CAP, WeightVector, eigen_table, scheme_axiom_check
from .transfer import (
    PstCertificate,
    canonical_example,
    construct_weights,
    minimal_pst_time,
    pst_check,
)
from .unweighted import (
    DEFAULT_ENUM_CAP,
    UnionSelector,
    check_union,
    enumerate_pi2,
    pi2_family,
    search_all,
    solve_congruence,
)
from .exactmath import nu2, odd_part

J62_K = 31
J62_CLASSES = (7, 11, 13, 14, 15, 19, 21, 22, 23, 25, 26, 27, 28, 29, 30)
J62_TIME = Fraction(1, 4)
FIGURE_KS = (12, 16, 20, 24, 28, 32, 36)


# ---------------------------------------------------------------------------
# parsing and serialization
# ---------------------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def parse_time(text: str) -> Fraction:
    """tau/pi from "pi", "pi/4", "3pi/4", "3pi", or a plain rational."""
    t = text.strip().lower().replace(" ", "")
    if "pi" in t:
        head, _, tail = t.partition("pi")
        num = Fraction(head) if head else Fraction(1)
        den = Fraction(tail[1:]) if tail.startswith("/") else Fraction(1)
        if tail and not tail.startswith("/"):
            raise ValueError(f"cannot parse time {text!r}")
        return num / den
    return Fraction(t)


def time_str(t: Fraction) -> str:
    num = "" if t.numerator == 1 else str(t.numerator)
    den = "" if t.denominator == 1 else f"/{t.denominator}"
    return f"{num}pi{den}"


def rat_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def parse_int_list(text: str) -> list[int]:
    t = text.strip().strip("[]")
    return [int(p) for p in t.split(",") if p.strip()] if t else []


def parse_rational_list(text: str) -> list[Fraction]:
    t = text.strip().strip("[]")
    return [Fraction(p.strip()) for p in t.split(",") if p.strip()] if t else []


def certificate_json(cert: PstCertificate) -> dict:
    return {
        "verdict": cert.verdict,
        "time_over_pi": rat_json(cert.time_over_pi) if cert.time_over_pi is not None else None,
        "time": time_str(cert.time_over_pi) if cert.time_over_pi is not None else None,
        "parity_evidence": [rat_json(e) for e in cert.parity_evidence],
        "failing_s": cert.failing_s,
        "pair": cert.pair_note,
    }


def command_result(command: str, inputs: dict, outputs: dict,
                   caps: dict | None = None, timestamp: bool = True) -> dict:
    result = {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "provenance": {
            "library": "johnson-pst",
            "version": __version__,
            "caps": caps or {},
        },
    }
    if timestamp:
        result["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return result


def emit_json(result: dict, out) -> None:
    json.dump(result, out, indent=2, sort_keys=True)
    out.write("\n")


def decimal17(q: Fraction) -> tuple[str, str]:
    """(17-significant-digit decimal, exactness flag) for CSV emission."""
    text = f"{float(q):.17g}"
    exact = "exact" if Fraction(text) == q else "approximate"
    return text, exact


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def cmd_eigentable(args, out) -> int:
    k = args.k
    if not 1 <= k <= 200:
        raise ValueError(f"eigentable requires 1 <= k <= 200, got {k}")
    table = eigen_table(k)
    if args.csv:
        writer = csv.writer(out)
        writer.writerow(["r"] + [f"s{s}" for s in range(k + 1)])
        for r in range(k + 1):
            writer.writerow([r] + [table.p(r, s) for s in range(k + 1)])
        return 0
    result = command_result(
        "eigentable",
        inputs={"k": k},
        outputs={"table": [list(row) for row in table.rows]},
        timestamp=not args.no_timestamp,
    )
    emit_json(result, out)
    return 0


def cmd_construct(args, out) -> int:
    c = parse_int_list(args.c)
    m = args.m if args.m is not None else len(c)
    if m != len(c):
        raise ValueError(f"--m {m} disagrees with {len(c)} coefficients")
    tau = parse_time(args.tau)
    w = construct_weights(args.k, c, tau, integral_shift=args.integral_shift)
    cert = pst_check(w, tau)
    result = command_result(
        "construct",
        inputs={"k": args.k, "m": m, "c": c, "tau_over_pi": rat_json(tau)},
        outputs={
            "weights": [rat_json(e) for e in w.entries],
            "certificate": certificate_json(cert),
        },
        timestamp=not args.no_timestamp,
    )
    emit_json(result, out)
    return 0


def _check_selector(args) -> tuple[dict, dict]:
    classes = parse_int_list(args.selector)
    u = UnionSelector.from_classes(args.k, classes)
    inputs = {"k": args.k, "selector": list(u.classes)}
    if args.tau is not None:
        tau = parse_time(args.tau)
        inputs["tau_over_pi"] = rat_json(tau)
        cert = pst_check(u.weight_vector(), tau)
        return inputs, {"certificate": certificate_json(cert)}
    cert = check_union(u)
    outputs = {"certificate": certificate_json(cert)}
    if cert.verdict:
        den = cert.time_over_pi.denominator
        outputs["h"] = nu2(den)
        outputs["z"] = odd_part(den)
    return inputs, outputs


def _check_weights(args) -> tuple[dict, dict]:
    entries = parse_rational_list(args.weights)
    w = WeightVector(k=args.k, entries=tuple(entries))
    inputs = {"k": args.k, "weights": [rat_json(e) for e in w.entries]}
    if args.tau is not None:
        tau = parse_time(args.tau)
        inputs["tau_over_pi"] = rat_json(tau)
        cert = pst_check(w, tau)
        return inputs, {"certificate": certificate_json(cert)}
    t = minimal_pst_time(w)
    outputs: dict = {
        "minimal_time_over_pi": rat_json(t) if t is not None else None,
        "minimal_time": time_str(t) if t is not None else None,
    }
    if t is not None:
        outputs["certificate"] = certificate_json(pst_check(w, t))
    return inputs, outputs


def cmd_check(args, out) -> int:
    if (args.selector is None) == (args.weights is None):
        raise ValueError("check needs exactly one of --selector or --weights")
    inputs, outputs = _check_selector(args) if args.selector else _check_weights(args)
    result = command_result(
        "check", inputs=inputs, outputs=outputs, timestamp=not args.no_timestamp
    )
    emit_json(result, out)
    return 0


def cmd_pi2(args, out) -> int:
    k = args.k
    if args.from_T is not None:
        T = parse_int_list(args.from_T)
        u = pi2_family(k, T)
        cert = check_union(u)
        result = command_result(
            "pi2",
            inputs={"k": k, "T": sorted(T)},
            outputs={"selector": list(u.classes), "certificate": certificate_json(cert)},
            timestamp=not args.no_timestamp,
        )
        emit_json(result, out)
        return 0
    cap = args.cap if args.cap is not None else DEFAULT_ENUM_CAP
    selectors = list(enumerate_pi2(k, cap=cap))
    if args.csv:
        writer = csv.writer(out)
        writer.writerow(["selector"])
        for u in selectors:
            writer.writerow([" ".join(map(str, u.classes))])
        return 0
    result = command_result(
        "pi2",
        inputs={"k": k},
        outputs={"count": len(selectors), "selectors": [list(u.classes) for u in selectors]},
        caps={"enumeration": cap},
        timestamp=not args.no_timestamp,
    )
    emit_json(result, out)
    return 0


def _search_rows(found) -> list[dict]:
    rows = []
    for u, t in found:
        rows.append({
            "selector": list(u.classes),
            "time_over_pi": rat_json(t),
            "time": time_str(t),
            "h": nu2(t.denominator),
            "z": odd_part(t.denominator),
        })
    return rows


def cmd_search(args, out) -> int:
    k = args.k
    cap = args.cap if args.cap is not None else DEFAULT_ENUM_CAP
    if args.h is not None:
        hits = solve_congruence(k, args.h)
        found = [(u, check_union(u).time_over_pi) for u in hits]
        inputs = {"k": k, "h": args.h}
    else:
        found = search_all(k, h_max=args.h_max, cap=cap, jobs=args.threads)
        inputs = {"k": k, "h_max": args.h_max}
    rows = _search_rows(found)
    if args.csv:
        writer = csv.writer(out)
        writer.writerow(["selector", "time_num", "time_den", "time", "h", "z"])
        for row in rows:
            writer.writerow([
                " ".join(map(str, row["selector"])),
                row["time_over_pi"]["num"], row["time_over_pi"]["den"],
                row["time"], row["h"], row["z"],
            ])
        return 0
    result = command_result(
        "search",
        inputs=inputs,
        outputs={"count": len(rows), "solutions": rows},
        caps={"enumeration": cap},
        timestamp=not args.no_timestamp,
    )
    emit_json(result, out)
    return 0


def cmd_verify_j62(args, out) -> int:
    u = UnionSelector.from_classes(J62_K, J62_CLASSES)
    cert = check_union(u)
    ok = cert.verdict and cert.time_over_pi == J62_TIME
    result = command_result(
        "verify-j62",
        inputs={"k": J62_K, "selector": list(J62_CLASSES)},
        outputs={
            "expected_time": time_str(J62_TIME),
            "certificate": certificate_json(cert),
            "pass": ok,
        },
        timestamp=not args.no_timestamp,
    )
    emit_json(result, out)
    return 0


def cmd_figure1(args, out) -> int:
    ks = parse_int_list(args.k_list) if args.k_list else list(FIGURE_KS)
    families = []
    for k in ks:
        w = canonical_example(k)
        families.append((k, w))
    if args.csv:
        writer = csv.writer(out)
        writer.writerow(["k", "r", "w_r", "log10_w_r", "exactness"])
        for k, w in families:
            for r in range(1, k + 1):
                q = w.entries[r]
                dec, exact = decimal17(q)
                log10 = math.log10(q.numerator) - math.log10(q.denominator)
                writer.writerow([k, r, dec, f"{log10:.17g}", exact])
        return 0
    result = command_result(
        "figure1",
        inputs={"k_list": ks},
        outputs={
            "families": [
                {
                    "k": k,
                    "weights": [rat_json(e) for e in w.entries],
                    "log10_weights": [
                        math.log10(e.numerator) - math.log10(e.denominator)
                        for e in w.entries[1:]
                    ],
                    "verdict_at_pi": pst_check(w, Fraction(1)).verdict,
                }
                for k, w in families
            ]
        },
        timestamp=not args.no_timestamp,
    )
    emit_json(result, out)
    return 0


def cmd_oracle(args, out) -> int:
    if (args.selector is None) == (args.weights is None):
        raise ValueError("oracle needs exactly one of --selector or --weights")
    n, k = args.n, args.k
    cap = args.cap if args.cap is not None else DEFAULT_ADJACENCY_CAP
    if args.selector is not None:
        system = UnionSelector.from_classes(k, parse_int_list(args.selector))
        sys_json: dict = {"selector": list(system.classes)}
    else:
        system = WeightVector(k=k, entries=tuple(parse_rational_list(args.weights)))
        sys_json = {"weights": [rat_json(e) for e in system.entries]}
    if args.curve:
        grid = [Fraction(i, args.curve) * 2 for i in range(args.curve + 1)]
        points = fidelity_curve(n, k, system, grid, cap=cap)
        writer = csv.writer(out)
        writer.writerow(["t_over_pi", "fidelity"])
        for t, fid in points:
            writer.writerow([f"{t:.17g}", f"{fid:.17g}"])
        return 0
    tau = parse_time(args.tau)
    report = walk_fidelity(n, k, system, tau, cap=cap)
    result = command_result(
        "oracle",
        inputs={"n": n, "k": k, "tau_over_pi": rat_json(tau), **sys_json},
        outputs={
            "fidelity": report.fidelity,
            "unitarity_defect": report.unitarity_defect,
            "pair": [list(report.pair[0]), list(report.pair[1])],
            "valid": report.valid,
        },
        caps={"adjacency": cap},
        timestamp=not args.no_timestamp,
    )
    emit_json(result, out)
    return 0


def cmd_axioms(args, out) -> int:
    cap = args.cap if args.cap is not None else DEFAULT_ADJACENCY_CAP
    report = scheme_axiom_check(args.n, args.k, cap=cap)
    result = command_result(
        "axioms",
        inputs={"n": args.n, "k": args.k},
        outputs={
            "ok": report.ok,
            "checks": list(report.checks),
            "failures": [
                {"check": f.check, "r": f.r, "s": f.s} for f in report.failures
            ],
        },
        caps={"adjacency": cap},
        timestamp=not args.no_timestamp,
    )
    emit_json(result, out)
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, csv_mode: bool = False) -> None:
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit the timestamp field (byte-reproducible output)")
    if csv_mode:
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="csv", action="store_false",
                         help="JSON output (default)")
        fmt.add_argument("--csv", dest="csv", action="store_true", help="CSV output")
        p.set_defaults(csv=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="johnson-pst",
        description="Exact perfect-state-transfer toolkit for unions of "
                    "Johnson-scheme distance graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigentable", help="eigenvalue grid p_r(s)")
    p.add_argument("--k", type=int, required=True)
    _add_common(p, csv_mode=True)
    p.set_defaults(func=cmd_eigentable)

    p = sub.add_parser("construct", help="weights with guaranteed transfer")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--c", type=str, required=True, help="c_1..c_m, comma separated")
    p.add_argument("--tau", type=str, required=True, help='e.g. "pi", "pi/2", "3/4"')
    p.add_argument("--integral-shift", action="store_true",
                   help="shift w_0 so the spectrum is integral")
    _add_common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="transfer certificate for weights or a selector")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--selector", type=str, default=None, help="e.g. 1,2")
    p.add_argument("--weights", type=str, default=None, help="w_0..w_m, e.g. 0,2/3,1/6")
    p.add_argument("--tau", type=str, default=None,
                   help="check at this time; omit to find the minimal time")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pi2", help="the complete pi/2 family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="list all members (default)")
    p.add_argument("--from-T", type=str, default=None, help="single member from subset T")
    p.add_argument("--cap", type=int, default=None)
    _add_common(p, csv_mode=True)
    p.set_defaults(func=cmd_pi2)

    p = sub.add_parser("search", help="all selectors with transfer")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, default=None,
                   help="solve the residue conditions at exactly this exponent")
    p.add_argument("--h-max", type=int, default=None,
                   help="exhaustive search filtered to exponents <= h-max")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    _add_common(p, csv_mode=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-j62", help="built-in fixture: the pi/4 union in J(62,31)")
    _add_common(p)
    p.set_defaults(func=cmd_verify_j62)

    p = sub.add_parser("figure1", help="reference-family weight data")
    p.add_argument("--k-list", type=str, default=None,
                   help=f"comma list; default {','.join(map(str, FIGURE_KS))}")
    _add_common(p, csv_mode=True)
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("oracle", help="numeric walk verification")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--selector", type=str, default=None)
    p.add_argument("--weights", type=str, default=None)
    p.add_argument("--tau", type=str, default="pi")
    p.add_argument("--curve", type=int, default=None,
                   help="emit a CSV fidelity curve with this many steps over [0, 2pi]")
    p.add_argument("--cap", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("axioms", help="association-scheme axiom check on explicit matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_axioms)

    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ObstructionError, ParityPatternError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())
