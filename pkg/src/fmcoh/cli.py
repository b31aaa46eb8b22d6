"""Command-line front end.

Every command builds a JSON-ready record and renders it either as a one-line
table or as compact JSON.  Exit codes: 0 success, 1 domain error, 2 parse
error.  Integers beyond the signed 64-bit range and all rationals are
emitted as strings.
"""

from __future__ import annotations

import argparse
import json
import re
import shlex
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import bgn as bgn_mod
from .chern import ChernCharacter, DomainError, FMMatrix, phi_a, wit_index, wit_index_adjoint
from .moduli import GL, G0, birational_class, class_census, iso_certificate
from .oracle import SUITES, GridSpec, run_suite
from .systems import SystemType, g0_sample_alpha, ln_nonempty, brill_noether, transform_system, wall_candidates

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2
INT64 = 2**63


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise ParseError(message)


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.fullmatch(text):
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}; use p/q or an integer")
    return Fraction(text)


def parse_matrix(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4 or not all(re.fullmatch(r"[+-]?\d+", p) for p in parts):
        raise argparse.ArgumentTypeError("matrix must be alpha,beta,gamma,delta")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


def parse_range(text: str) -> range:
    m = re.fullmatch(r"([+-]?\d+):([+-]?\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError("range must be LO:HI (inclusive)")
    return range(int(m.group(1)), int(m.group(2)) + 1)


def num(x: int):
    return x if -INT64 <= x < INT64 else str(x)


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def triple(r, d, k) -> str:
    return f"({r},{d},{k})"


def render_json(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


# --- commands: each returns (record, exit code) ------------------------------


def cmd_transform(ns) -> tuple[dict, int]:
    s = SystemType(ns.r, ns.d, ns.k)
    out = transform_system(ns.a, s, "phi" if ns.phi else "psi")
    return {"r": num(out.r), "d": num(out.d), "k": num(out.k)}, EXIT_OK


def table_transform(rec: dict) -> str:
    return triple(rec["r"], rec["d"], rec["k"])


def cmd_wit(ns) -> tuple[dict, int]:
    if ns.matrix is not None:
        m = FMMatrix.of(*ns.matrix)
    elif ns.a is not None:
        m = phi_a(ns.a)
    else:
        raise ParseError("wit needs -a or --matrix")
    classify = wit_index_adjoint if ns.adjoint else wit_index
    res = classify(m, ChernCharacter(ns.r, ns.d))
    return {
        "index": res.index.value,
        "rank": num(res.transformed.rank),
        "degree": num(res.transformed.degree),
    }, EXIT_OK


def table_wit(rec: dict) -> str:
    label = {"IT0": "IT0", "IT1": "IT1", "WIT1_TORSION": "WIT1 torsion"}[rec["index"]]
    return f"{label} ({rec['rank']},{rec['degree']})"


def cmd_walls(ns) -> tuple[dict, int]:
    ws = wall_candidates(SystemType(ns.r, ns.d, ns.k), "auto" if ns.upper is None else ns.upper)
    walls = [
        {"alpha": rat(w), "witnesses": [[num(c.r), num(c.d), num(c.k)] for c in ws.witnesses[w]]}
        for w in ws.walls
    ]
    return {"walls": walls, "lower": "0", "upper": rat(ws.upper)}, EXIT_OK


def table_walls(rec: dict) -> str:
    parts = []
    for i, wall in enumerate(rec["walls"], start=1):
        wit = ",".join(triple(*t) for t in wall["witnesses"])
        parts.append(f"α_{i} = {wall['alpha']} (witnesses: {wit})")
    if not parts:
        parts.append("no candidate walls")
    parts.append(f"range ({rec['lower']},{rec['upper']})")
    return "; ".join(parts)


def cmd_moduli(ns) -> tuple[dict, int]:
    s = SystemType(ns.r, ns.d, ns.k)
    alpha = ns.alpha if ns.alpha is not None else g0_sample_alpha(s)
    res = ln_nonempty(s, alpha)
    return {
        "r": num(s.r),
        "d": num(s.d),
        "k": num(s.k),
        "alpha": rat(alpha),
        "nonempty": res.nonempty,
        "clause": res.clause,
        "dimension": num(brill_noether(s.d, s.k)) if res.nonempty else None,
    }, EXIT_OK


def table_moduli(rec: dict) -> str:
    head = f"G({rec['alpha']};{rec['r']},{rec['d']},{rec['k']})"
    if rec["nonempty"]:
        return f"{head}: nonempty via ({rec['clause']}), dimension {rec['dimension']}"
    return f"{head}: empty via ({rec['clause']})"


def cmd_bgn(ns) -> tuple[dict, int]:
    feas = bgn_mod.bgn_feasible(ns.r, ns.d, ns.k)
    ext = bgn_mod.ext_dimension(ChernCharacter(ns.r - ns.k, ns.d)) if feas.feasible else None
    rec = {
        "r": num(ns.r),
        "d": num(ns.d),
        "k": num(ns.k),
        "quotient": bgn_mod.STABLE if ns.stable else bgn_mod.SEMISTABLE,
        "feasible": feas.feasible,
        "reason": feas.reason,
        "ext_dim": None if ext is None else num(ext),
        "image": None,
    }
    if ns.phi or ns.psi:
        if ns.a is None:
            raise ParseError("a transform needs -a")
        t = bgn_mod.BGNType(ns.r, ns.d, ns.k, rec["quotient"])
        direction = "phi" if ns.phi else "psi"
        out = bgn_mod.transform_bgn(ns.a, t, direction)
        rec["image"] = {"via": f"{direction}_{ns.a}", "r": num(out.r), "d": num(out.d), "k": num(out.k)}
    return rec, EXIT_OK


def table_bgn(rec: dict) -> str:
    head = f"BGN{triple(rec['r'], rec['d'], rec['k'])} {rec['quotient']} quotient: "
    if rec["feasible"]:
        text = head + f"feasible ({rec['reason']}), ext dim {rec['ext_dim']}"
    else:
        text = head + f"infeasible ({rec['reason']})"
    if rec["image"] is not None:
        im = rec["image"]
        text += f"; {im['via']} -> {triple(im['r'], im['d'], im['k'])}"
    return text


def cmd_orbit(ns) -> tuple[dict, int]:
    s = SystemType(ns.r, ns.d, ns.k)
    cls = birational_class(s)
    rec = {
        "r": num(s.r),
        "d": num(s.d),
        "k": num(s.k),
        "residue": num(cls.residue),
        "census": None,
    }
    if ns.census is not None:
        rng = ns.census
        rec["census"] = {
            "lo": num(rng.start),
            "hi": num(rng.stop - 1),
            "classes": num(class_census(s.d, s.k, rng)),
        }
    return rec, EXIT_OK


def table_orbit(rec: dict) -> str:
    text = f"{triple(rec['r'], rec['d'], rec['k'])}: residue {rec['residue']} mod {rec['d']}"
    if rec["census"] is not None:
        c = rec["census"]
        text += f"; census r in [{c['lo']},{c['hi']}]: {c['classes']} classes (at most {rec['d']})"
    return text


def cmd_certify(ns) -> tuple[dict, int]:
    s1 = SystemType(ns.r, ns.d, ns.k)
    s2 = SystemType(ns.R, ns.d, ns.k)
    cert = iso_certificate(s1, s2, ns.regime)
    rec = {
        "source": [num(s1.r), num(s1.d), num(s1.k)],
        "target": [num(s2.r), num(s2.d), num(s2.k)],
        "regime": ns.regime,
        "chain": None if cert is None else [[step, num(a)] for step, a in cert.chain],
    }
    return rec, EXIT_OK


def table_certify(rec: dict) -> str:
    head = f"{triple(*rec['source'])} -> {triple(*rec['target'])} [{rec['regime']}]"
    if rec["chain"] is None:
        return f"{head}: no certificate"
    steps = ", ".join(f"{step}_{a}" for step, a in rec["chain"]) or "identity"
    return f"{head}: {steps}"


def cmd_verify(ns) -> tuple[dict, int]:
    names = list(SUITES) if ns.suite == "all" else [ns.suite]
    if ns.suite != "all" and ns.suite not in SUITES:
        raise ParseError(f"unknown suite {ns.suite!r}; choose from all, {', '.join(SUITES)}")
    try:
        grid = GridSpec.parse(ns.grid) if ns.grid else None
    except ValueError as exc:
        raise ParseError(f"bad --grid: {exc}") from None
    reports = [run_suite(name, grid) for name in names]
    passed = all(r.passed for r in reports)
    return {"passed": passed, "suites": [r.to_record() for r in reports]}, EXIT_OK if passed else EXIT_DOMAIN


def table_verify(rec: dict) -> str:
    lines = []
    for s in rec["suites"]:
        status = "PASS" if s["passed"] else "FAIL"
        lines.append(
            f"{status} {s['suite']}: {s['checked']} checked, {len(s['failures'])} failures, {s['elapsed']}s"
        )
        lines.extend(f"  counterexample {' '.join(f)}" for f in s["failures"][:10])
    lines.append("all suites passed" if rec["passed"] else "verification FAILED")
    return "\n".join(lines)


@dataclass(frozen=True)
class Command:
    run: Callable
    table: Callable[[dict], str]


COMMANDS = {
    "transform": Command(cmd_transform, table_transform),
    "wit": Command(cmd_wit, table_wit),
    "walls": Command(cmd_walls, table_walls),
    "moduli": Command(cmd_moduli, table_moduli),
    "bgn": Command(cmd_bgn, table_bgn),
    "orbit": Command(cmd_orbit, table_orbit),
    "certify": Command(cmd_certify, table_certify),
    "verify": Command(cmd_verify, table_verify),
}


def build_parser() -> _Parser:
    parser = _Parser(prog="fmcoh", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit JSON (JSON Lines in batch mode)")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def system_args(p, k=True):
        p.add_argument("-r", type=int, required=True)
        p.add_argument("-d", type=int, required=True)
        if k:
            p.add_argument("-k", type=int, required=True)

    p = sub.add_parser("transform", parents=[common], help="type of the phi_a / psi_a transform")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--phi", action="store_true")
    g.add_argument("--psi", action="store_true")
    p.add_argument("-a", type=int, required=True)
    system_args(p)

    p = sub.add_parser("wit", parents=[common], help="WIT index of a semistable bundle type")
    p.add_argument("-a", type=int, help="use phi_a(a)")
    p.add_argument("--matrix", type=parse_matrix, help="alpha,beta,gamma,delta")
    p.add_argument("--adjoint", action="store_true", help="classify for the adjoint transform")
    system_args(p, k=False)

    p = sub.add_parser("walls", parents=[common], help="candidate critical values of alpha")
    p.add_argument("--upper", type=parse_rational, help="search bound (required when k >= r)")
    system_args(p)

    p = sub.add_parser("moduli", parents=[common], help="non-emptiness and dimension")
    p.add_argument("--alpha", type=parse_rational, help="defaults to a first-chamber value")
    system_args(p)

    p = sub.add_parser("bgn", parents=[common], help="BGN feasibility and transforms")
    p.add_argument("--stable", action="store_true", help="stable quotient")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--phi", action="store_true")
    g.add_argument("--psi", action="store_true")
    p.add_argument("-a", type=int)
    system_args(p)

    p = sub.add_parser("orbit", parents=[common], help="residue class and birational census")
    p.add_argument("--census", type=parse_range, help="LO:HI range of ranks")
    system_args(p)

    p = sub.add_parser("certify", parents=[common], help="isomorphism certificate between two ranks")
    p.add_argument("-R", type=int, required=True, help="target rank")
    p.add_argument("--regime", choices=[G0, GL], default=G0)
    system_args(p)

    p = sub.add_parser("verify", parents=[common], help="run brute-force verification suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--grid", help="r_max,d_max,k_max,a_max,entry_max")

    p = sub.add_parser("batch", parents=[common], help="run one query per line of a file")
    p.add_argument("path")
    return parser


@dataclass
class Outcome:
    code: int
    record: Optional[dict] = None
    error: Optional[str] = None
    command: Optional[str] = None

    def render(self, as_json: bool) -> str:
        if self.error is not None:
            return render_json({"error": self.error, "exit": self.code}) if as_json else f"error: {self.error}"
        assert self.record is not None and self.command is not None
        return render_json(self.record) if as_json else COMMANDS[self.command].table(self.record)


def run(argv: Sequence[str]) -> tuple[Outcome, argparse.Namespace | None]:
    """Parse and execute one query (not ``batch``)."""
    try:
        ns = build_parser().parse_args(list(argv))
        if ns.command is None:
            raise ParseError("missing command")
        if ns.command == "batch":
            raise ParseError("batch files cannot nest")
        record, code = COMMANDS[ns.command].run(ns)
        return Outcome(code, record, command=ns.command), ns
    except ParseError as exc:
        return Outcome(EXIT_PARSE, error=str(exc)), None
    except DomainError as exc:
        return Outcome(EXIT_DOMAIN, error=str(exc)), None


def run_batch(path: str, as_json: bool, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read batch file: {exc}", file=sys.stderr)
        return EXIT_PARSE
    worst = EXIT_OK
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            tokens = shlex.split(text)
        except ValueError as exc:
            outcome = Outcome(EXIT_PARSE, error=str(exc))
        else:
            outcome, _ = run(tokens)
        if outcome.code != EXIT_OK:
            worst = EXIT_DOMAIN
        if as_json:
            rec: dict = {"line": lineno, "exit": outcome.code}
            if outcome.error is not None:
                rec["error"] = outcome.error
            else:
                rec["command"] = outcome.command
                rec["result"] = outcome.record
            print(render_json(rec), file=out)
        else:
            print(f"[{lineno}] {outcome.render(False)}", file=out)
    return worst


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if ns.command == "batch":
        return run_batch(ns.path, ns.json)
    outcome, parsed = run(argv)
    as_json = bool(parsed.json) if parsed is not None else bool(getattr(ns, "json", False))
    text = outcome.render(as_json)
    print(text, file=sys.stderr if outcome.error is not None and not as_json else sys.stdout)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
