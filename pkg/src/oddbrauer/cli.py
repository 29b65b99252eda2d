"""Command-line front end.

Exit codes: 0 holds / no violations, 1 inconclusive or a violated invariant,
2 malformed input, 3 factoring budget exhausted. Diagnostics go to stderr;
`--json` prints exactly one JSON document on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import SCHEMA_VERSION, __version__
from .arith import DEFAULT_BUDGET, FactoringBudgetExceeded, factor
from .brauer import DEFAULT_PROBES, DEFAULT_SEARCH_BOUND, g_superset, phi_upper, s_candidates
from .criteria import combined_odd_verdict, in_I, theorem_C
from .fflab import A_COEFFS, cone_threshold, hasse_weil_threshold, swan_bound
from .fielddata import MissingPlaces, SpecError, load_spec
from .qp2 import hilbert2, hilbert2_oracle
from .verify import SUITES, run_suites

VERSION = f"oddbrauer {__version__} (schema {SCHEMA_VERSION})"

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    certification: dict = field(default_factory=dict)
    version: str = VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False, indent=2)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls(**json.loads(text))


def factored(n: int) -> str:
    if n == 1:
        return "1"
    return "·".join(f"{p}^{k}" if k > 1 else str(p) for p, k in factor(n).entries.items())


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if q == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return q


# --- commands -------------------------------------------------------------------


def cmd_analyze(args) -> tuple[Report, int]:
    spec = load_spec(args.spec)
    probes = args.probes or spec.probes or list(DEFAULT_PROBES)
    bound = args.search_bound or spec.search_bound or DEFAULT_SEARCH_BOUND
    verdict = combined_odd_verdict(spec, probes, bound)
    gs = g_superset(spec.N, probes, bound, args.budget)
    exp_bound = 1
    for ell, k in gs.bounded().items():
        exp_bound *= ell**k
    hit = theorem_C(spec)
    relevant = sorted(set(gs.bounded()) | set(spec.special_primes()) | ({hit[0]} if hit else set()))
    table = []
    for p in relevant:
        try:
            ok, tags = in_I(p, spec)
            table.append({"p": p, "in_I": ok, "conditions": tags})
        except MissingPlaces:
            table.append({"p": p, "in_I": None, "conditions": "no place data"})
    results = {
        "verdict": verdict.to_dict(),
        "theorem_C": None if hit is None else {"p": hit[0], "place": hit[1].to_dict()},
        "g_superset": gs.to_dict(),
        "I_table": table,
        "exponent_bound": exp_bound,
        "exponent_bound_factored": factored(exp_bound),
    }
    cert = {
        "verdict": verdict.status.value,
        "g_superset": "superset of G; each surviving prime carries the probe attaining its bound",
        "exponent_bound": f"kills the odd part of Br(X)/Br_0(X) provided N = {spec.N} is a multiple of the Galois exponent",
    }
    inputs = {"spec": spec.to_dict(), "probes": probes, "search_bound": bound}
    return Report("analyze", inputs, results, cert), EXIT_OK if verdict.holds else EXIT_INCONCLUSIVE


def cmd_phi(args) -> tuple[Report, int]:
    value, witness = phi_upper(args.ell, args.m, args.bound)
    results = {"phi_upper": value, "witness": witness.p, "witness_pi": str(witness.pi)}
    cert = {"phi_upper": "upper bound" + (" (0: ell certified outside S_m)" if value == 0 else "")}
    return Report("phi", {"ell": args.ell, "m": args.m, "bound": args.bound}, results, cert), EXIT_OK


def cmd_sbound(args) -> tuple[Report, int]:
    report = s_candidates(args.m, args.probes or list(DEFAULT_PROBES), args.budget)
    results = {
        "candidates": report.to_dict()["candidates"],
        "surviving": sorted(report.surviving()),
        "excluded": sorted(report.excluded()),
    }
    cert = {"candidates": "superset of S_m"}
    return Report("sbound", {"m": args.m, "probes": [p.p for p in report.probes_used]}, results, cert), EXIT_OK


def cmd_hilbert(args) -> tuple[Report, int]:
    closed = hilbert2(args.a, args.b)
    oracle = hilbert2_oracle(args.a, args.b)
    results = {"symbol": closed, "oracle": oracle}
    agree = closed == oracle
    cert = {"symbol": "closed form, confirmed by exhaustive search" if agree else "closed form DISAGREES with search"}
    return Report("hilbert", {"a": str(args.a), "b": str(args.b)}, results, cert), EXIT_OK if agree else EXIT_INCONCLUSIVE


def cmd_swan(args) -> tuple[Report, int]:
    sb = swan_bound(args.e, args.p, args.t)
    results = {"upper": sb.upper, "multiple_of": sb.multiple_of, "admissible": sb.admissible()}
    return Report("swan", {"e": args.e, "p": args.p, "t": args.t}, results, {"upper": "upper bound"}), EXIT_OK


def cmd_thresholds(args) -> tuple[Report, int]:
    results = {
        "hasse_weil": hasse_weil_threshold(args.q, args.p, args.g),
        "cone": cone_threshold(args.q, args.p),
    }
    cert = {k: "exact integer comparison" for k in results}
    return Report("thresholds", {"q": args.q, "p": args.p, "g": args.g}, results, cert), EXIT_OK


def cmd_verify_local(args) -> tuple[Report, int]:
    coeffs = tuple(args.curve) if args.curve else A_COEFFS
    if len(coeffs) != 5:
        raise InputError("--curve takes five coefficients a1,a3,a2,a4,a6")
    suites = run_suites(args.suite, coeffs, args.precision)
    results = {s.suite: s.to_dict() for s in suites}
    cert = {s.suite: "exhaustive" if s.ok else f"{len(s.violations)} violated" for s in suites}
    inputs = {"suite": args.suite, "curve": list(coeffs), "precision": args.precision}
    ok = all(s.ok for s in suites)
    return Report("verify-local", inputs, results, cert), EXIT_OK if ok else EXIT_INCONCLUSIVE


# --- rendering ------------------------------------------------------------------


def render(report: Report) -> str:
    r = report.results
    lines = [f"{report.command} ({report.version})"]
    if report.command == "analyze":
        v = r["verdict"]
        lines.append(f"verdict: {v['status']} [{v['criterion']}]")
        lines += [f"  - {x}" for x in v["reasons"]]
        if r["theorem_C"]:
            lines.append(f"valuation-sum criterion fires at p = {r['theorem_C']['p']}")
        lines.append("G-superset:")
        for ell, e in r["g_superset"]["candidates"].items():
            lines.append(f"  {ell}: {e['status']}, phi <= {e['phi_upper']} (witnesses {e['witnesses']})")
        lines.append("I-membership:")
        for row in r["I_table"]:
            lines.append(f"  {row['p']}: {row['in_I']} {row['conditions']}")
        lines.append(f"exponent bound: {r['exponent_bound']} = {r['exponent_bound_factored']}")
    elif report.command == "verify-local":
        for name, suite in r.items():
            for c in suite["checks"]:
                lines.append(f"{name}: {c['name']}: {'OK' if c['ok'] else 'VIOLATED'} {c['detail']}".rstrip())
            lines.append(f"{name}: {'0 violations' if suite['ok'] else 'violations found'}")
    else:
        for k, val in r.items():
            lines.append(f"{k}: {val}")
    return "\n".join(lines)


# --- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oddbrauer", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=VERSION)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable report on stdout")
        return p

    p = add("analyze", cmd_analyze, "odd-torsion verdict for a surface spec file")
    p.add_argument("spec")
    p.add_argument("--probes", type=_int_list)
    p.add_argument("--search-bound", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Pollard rho iteration budget")

    p = add("phi", cmd_phi, "upper bound for phi(ell, m)")
    p.add_argument("ell", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--bound", type=int, default=DEFAULT_SEARCH_BOUND)

    p = add("sbound", cmd_sbound, "candidate superset of S_m")
    p.add_argument("m", type=int)
    p.add_argument("--probes", type=_int_list)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("hilbert", cmd_hilbert, "Hilbert symbol (a, b) over Q_2")
    p.add_argument("a", type=_rational)
    p.add_argument("b", type=_rational)

    p = add("swan", cmd_swan, "Swan conductor bound")
    p.add_argument("e", type=int)
    p.add_argument("p", type=int)
    p.add_argument("t", type=int)

    p = add("thresholds", cmd_thresholds, "Hasse-Weil and cone thresholds")
    p.add_argument("q", type=int)
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)

    p = add("verify-local", cmd_verify_local, "run the finite verification suites")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--curve", type=_int_list, help="override curve coefficients a1,a3,a2,a4,a6")
    p.add_argument("--precision", type=int, default=12, help="unit bits for the 2-adic enumeration")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    # negative integers parse as positionals; use `--` before e.g. -1/2
    args = build_parser().parse_args(argv)
    try:
        report, code = args.fn(args)
    except (SpecError, MissingPlaces, InputError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FactoringBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(report.to_json() if args.json else render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
