"""Command-line front end.

Every run prints a deterministic plain-text report (schema header, command
echo, input digest, results, per-check lines) on stdout; diagnostics for
malformed input go to stderr.  Exit codes: 0 success/pass, 1 verification
failure or relation found, 2 input error, 3 search or budget exhaustion.
"""

from __future__ import annotations

import argparse
import hashlib
import sys

from . import frattini as fr
from . import pingpong
from .backends import GeometryBackend, MobiusBackend, TreeBackend
from .errors import (
    BudgetExceeded,
    GroupTooLarge,
    HypfreeError,
    NotIndependent,
    NotLoxodromic,
    ParseError,
    SearchExhausted,
)
from .freeprod import parse_presentation
from .mobius import classify, parse_mobius

SCHEMA = "hypfree report v1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_EXHAUSTED = 3


class Report:
    def __init__(self, command: str, inputs: list[str]):
        digest = hashlib.sha256("\n".join(inputs).encode()).hexdigest()[:16]
        self.lines = [SCHEMA, f"command: {command}", f"input-digest: {digest}"]

    def add(self, line: str):
        self.lines.append(line)

    def emit(self, status: str, code: int) -> int:
        self.lines.append(f"status: {status}")
        self.lines.append(f"exit: {code}")
        sys.stdout.write("\n".join(self.lines) + "\n")
        return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypfree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_backend_args(p, isometry_arg: bool):
        if isometry_arg:
            p.add_argument("--mobius", metavar="MATRIX", help="matrix 'p q r s'")
            p.add_argument("--tree", metavar="PRESENTATION", help="'orders: m1 m2 ...'")
            p.add_argument("--word", metavar="WORD", help="tree word, e.g. 'g1 g2^2'")
        else:
            p.add_argument("--mobius", action="store_true", help="use the Moebius backend")
            p.add_argument("--tree", metavar="PRESENTATION", help="'orders: m1 m2 ...'")

    p = sub.add_parser("classify", help="classify one isometry")
    add_backend_args(p, True)

    p = sub.add_parser("fixed-points", help="fixed boundary points of a loxodromic")
    add_backend_args(p, True)

    p = sub.add_parser("limit-sample", help="sample limit points of a generated subgroup")
    add_backend_args(p, False)
    p.add_argument("--gen", action="append", default=[], metavar="ISOMETRY")
    p.add_argument("--radius", type=int, default=2)

    p = sub.add_parser("pingpong-construct", help="build a free-subgroup certificate")
    add_backend_args(p, False)
    p.add_argument("--f", required=True, metavar="ISOMETRY")
    p.add_argument("--g", required=True, metavar="ISOMETRY")
    p.add_argument("--x", action="append", default=[], metavar="ISOMETRY")
    p.add_argument("--limits", default="64,12", metavar="E,D", help="max exponent, max depth")
    p.add_argument("--out", metavar="FILE", help="write the certificate here")

    p = sub.add_parser("pingpong-verify", help="verify a certificate file")
    p.add_argument("certificate", metavar="FILE")

    p = sub.add_parser("free-check", help="brute-force relation search")
    add_backend_args(p, False)
    p.add_argument("--gen", action="append", default=[], metavar="ISOMETRY")
    p.add_argument("--max-length", type=int, default=6)

    p = sub.add_parser("frattini", help="Frattini subgroup of a finite group")
    p.add_argument("--cayley", metavar="FILE")
    p.add_argument("--perms", metavar="FILE")
    p.add_argument("--name", metavar="CATALOG")

    p = sub.add_parser("invgen", help="invariable generation checks")
    p.add_argument("--cayley", metavar="FILE")
    p.add_argument("--perms", metavar="FILE")
    p.add_argument("--name", metavar="CATALOG")
    p.add_argument("--elements", metavar="I,J,...", help="element indices of the test set")
    p.add_argument("--all", action="store_true", help="test the full element set")
    p.add_argument("--criterion", action="store_true", help="run the normality criterion check")

    sub.add_parser("catalog-test", help="run the finite-group catalog battery")
    return parser


def _pick_backend(args) -> GeometryBackend:
    if getattr(args, "tree", None):
        return TreeBackend(parse_presentation(args.tree))
    if getattr(args, "mobius", None):
        return MobiusBackend()
    raise ParseError("select a backend with --mobius or --tree")


def _single_isometry(args):
    if args.tree:
        backend = TreeBackend(parse_presentation(args.tree))
        if not args.word:
            raise ParseError("--tree needs --word")
        return backend, backend.parse_isometry(args.word)
    if args.mobius:
        backend = MobiusBackend()
        try:
            return backend, parse_mobius(args.mobius)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError("select a backend with --mobius or --tree")


def _load_group(args) -> fr.FiniteGroup:
    chosen = [v for v in (args.cayley, args.perms, args.name) if v]
    if len(chosen) != 1:
        raise ParseError("give exactly one of --cayley, --perms, --name")
    if args.cayley:
        with open(args.cayley) as fh:
            return fr.parse_cayley(fh.read())
    if args.perms:
        with open(args.perms) as fh:
            return fr.parse_permutation_group(fh.read())
    groups = fr.catalog()
    if args.name not in groups:
        raise ParseError(f"unknown catalog group {args.name!r}; known: {', '.join(groups)}")
    return groups[args.name]


def _parse_limits(text: str) -> tuple[int, int]:
    try:
        e_text, d_text = text.split(",")
        return int(e_text), int(d_text)
    except ValueError as exc:
        raise ParseError(f"bad --limits {text!r}: expected 'E,D'") from exc


def _cmd_classify(args, report: Report) -> int:
    backend, iso = _single_isometry(args)
    if isinstance(backend, TreeBackend):
        kind, length = backend.presentation.classify_word(iso)
        if kind == "loxodromic":
            plus, minus = backend.fixed_pair(iso)
            report.add(
                f"result: Loxodromic translation-length={length} "
                f"plus={backend.format_point(plus)} minus={backend.format_point(minus)}"
            )
        else:
            report.add("result: Elliptic")
    else:
        report.add(f"result: {classify(iso)}")
    return report.emit("ok", EXIT_OK)


def _cmd_fixed_points(args, report: Report) -> int:
    backend, iso = _single_isometry(args)
    plus, minus = backend.fixed_pair(iso)
    report.add(f"plus: {backend.format_point(plus)}")
    report.add(f"minus: {backend.format_point(minus)}")
    return report.emit("ok", EXIT_OK)


def _cmd_limit_sample(args, report: Report) -> int:
    backend = _pick_backend(args)
    gens = [backend.parse_isometry(t) for t in args.gen]
    if not gens:
        raise ParseError("need at least one --gen")
    points = pingpong.sample_limit_set(backend, gens, args.radius)
    report.add(f"points: {len(points)}")
    for pt in points:
        report.add(f"  {backend.format_point(pt)}")
    report.add(f"non-elementary: {'yes' if len(points) >= 3 else 'undetermined'}")
    return report.emit("ok", EXIT_OK)


def _cmd_construct(args, report: Report) -> int:
    backend = _pick_backend(args)
    f = backend.parse_isometry(args.f)
    g = backend.parse_isometry(args.g)
    xs = [backend.parse_isometry(t) for t in args.x]
    max_exponent, max_depth = _parse_limits(args.limits)
    inp = pingpong.PingPongInput(backend, xs, f, g)
    cert = pingpong.construct(inp, max_exponent=max_exponent, max_depth=max_depth)
    text = pingpong.serialize_certificate(cert)
    for i, entry in enumerate(cert.schedule):
        report.add(f"schedule[{i + 1}]: s={entry.s} t={entry.t} p={entry.p} q={entry.q}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        report.add(f"certificate: written to {args.out}")
    else:
        report.add("certificate:")
        for line in text.rstrip("\n").splitlines():
            report.add("  " + line)
    report.add("verify: PASS")
    return report.emit("ok", EXIT_OK)


def _cmd_verify(args, report: Report) -> int:
    with open(args.certificate) as fh:
        cert = pingpong.parse_certificate(fh.read())
    result = pingpong.verify(cert)
    for line in result.lines():
        report.add(line)
    if result.passed:
        return report.emit("pass", EXIT_OK)
    return report.emit("fail", EXIT_FAIL)


def _cmd_free_check(args, report: Report) -> int:
    backend = _pick_backend(args)
    gens = [backend.parse_isometry(t) for t in args.gen]
    if not gens:
        raise ParseError("need at least one --gen")
    relation = pingpong.freeness_oracle(backend, gens, args.max_length)
    if relation is None:
        report.add(f"result: NoRelation up to length {args.max_length}")
        return report.emit("ok", EXIT_OK)
    report.add(f"result: Relation {relation}")
    return report.emit("relation", EXIT_FAIL)


def _cmd_frattini(args, report: Report) -> int:
    G = _load_group(args)
    phi = fr.frattini(G)
    quot = fr.frattini_quotient(G)
    report.add(f"group: {G.name} order {G.n}")
    report.add(f"Phi = {phi} (order {phi.order})")
    report.add(f"quotient = {fr.structure_name(quot.group)}")
    report.add(f"nilpotent(Phi) = {str(fr.is_nilpotent(phi)).lower()}")
    report.add(f"normal(Phi) = {str(phi.is_normal()).lower()}")
    return report.emit("ok", EXIT_OK)


def _cmd_invgen(args, report: Report) -> int:
    G = _load_group(args)
    report.add(f"group: {G.name} order {G.n}")
    if args.criterion:
        result = fr.check_invgen_criterion(G)
        report.add(f"all-maximals-normal: {str(result.maximals_all_normal).lower()}")
        report.add(
            f"every-generating-set-invariable: "
            f"{str(result.every_generating_set_invariable).lower()}"
        )
        if result.witness is not None:
            report.add(f"failing-generating-set: {sorted(result.witness)}")
        report.add(f"agreement: {str(result.agree).lower()}")
        return report.emit("ok" if result.agree else "fail", EXIT_OK if result.agree else EXIT_FAIL)
    if args.all:
        elements = list(range(G.n))
    elif args.elements:
        try:
            elements = [int(v) for v in args.elements.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad --elements {args.elements!r}") from exc
        if any(not 0 <= v < G.n for v in elements):
            raise ParseError("element index out of range")
    else:
        raise ParseError("give --elements, --all or --criterion")
    verdict = fr.invariably_generates(G, elements)
    report.add(f"invariably-generates: {str(verdict).lower()}")
    return report.emit("ok", EXIT_OK)


def _cmd_catalog_test(args, report: Report) -> int:
    failures = 0

    def check(label: str, ok: bool):
        nonlocal failures
        if not ok:
            failures += 1
        report.add(f"{'PASS' if ok else 'FAIL'} {label}")

    for name, G in fr.catalog().items():
        phi = fr.frattini(G)
        check(f"{name} phi-nilpotent", fr.is_nilpotent(phi))
        check(f"{name} phi-normal", phi.is_normal())
        if G.n <= fr.NON_GENERATORS_CAP:
            check(f"{name} phi-equals-non-generators", fr.non_generators(G) == phi.elements)
        quot = fr.frattini_quotient(G)
        check(f"{name} phi-of-quotient-trivial", fr.frattini(quot.group).order == 1)
        if quot.group.is_cyclic():
            check(f"{name} cyclic-quotient-implies-cyclic", G.is_cyclic())
    for n in (4, 8, 9, 12):
        G = fr.elementary_abelian_factor(n)
        ok = (
            G.n == n
            and not G.is_cyclic()
            and fr.frattini(G).order == 1
            and fr.all_maximals_normal(G)
        )
        check(f"ea{n} order-noncyclic-trivial-phi-normal-maximals", ok)
    if failures:
        return report.emit("fail", EXIT_FAIL)
    return report.emit("ok", EXIT_OK)


_HANDLERS = {
    "classify": _cmd_classify,
    "fixed-points": _cmd_fixed_points,
    "limit-sample": _cmd_limit_sample,
    "pingpong-construct": _cmd_construct,
    "pingpong-verify": _cmd_verify,
    "free-check": _cmd_free_check,
    "frattini": _cmd_frattini,
    "invgen": _cmd_invgen,
    "catalog-test": _cmd_catalog_test,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    echo = " ".join(argv) if argv is not None else " ".join(sys.argv[1:])
    report = Report(args.command, [echo])
    try:
        return _HANDLERS[args.command](args, report)
    except (ParseError, NotLoxodromic, NotIndependent, GroupTooLarge, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return report.emit("input-error", EXIT_INPUT)
    except (SearchExhausted, BudgetExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return report.emit("exhausted", EXIT_EXHAUSTED)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return report.emit("input-error", EXIT_INPUT)
    except HypfreeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return report.emit("input-error", EXIT_INPUT)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
