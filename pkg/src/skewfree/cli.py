"""Command-line driver.

Exit status: 0 on success, 1 when the library rejects the mathematics
(non-invertible elements, insufficient truncation, oracle mismatch, ...),
2 for malformed input (bad flags, unreadable ring specs, syntax errors).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import analysis, series, transforms
from .configs import builtin
from .errors import ParseError, SkewError, SpecError
from .linalg import RingMatrix
from .oracle import oracle_mul
from .parsing import extension_to_doc, load_ring_spec, parse_poly, parse_ring_literal
from .skewpoly import SkewPoly, deg, leading, ord_, random_skewpoly, render


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--ring", metavar="FILE", help="ring-spec JSON file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "records"), default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="skewfree", description="Arithmetic in free skew extensions R<x1..xn; sigma, delta>.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("normalize", parents=[common], help="print the normal form of an expression")
    p.add_argument("expr")
    for name in ("add", "mul"):
        p = sub.add_parser(name, parents=[common], help=f"{name} two expressions")
        p.add_argument("left")
        p.add_argument("right")
        if name == "mul":
            p.add_argument("--oracle", action="store_true", help="cross-check with the operator model")
    for name, text in (("deg", "degree (-inf for 0)"), ("ord", "order"), ("leading", "deglex leading term")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("expr")

    probe = sub.add_parser("probe", help="structural probes").add_subparsers(
        dest="probe", required=True, parser_class=_Parser)
    p = probe.add_parser("megainjective", parents=[common])
    p.add_argument("--rmax", type=int, default=3)
    p.add_argument("--samples", type=int, default=analysis.DEFAULT_RANDOM_SAMPLES)
    p = probe.add_parser("prime", parents=[common])
    p.add_argument("--degree-bound", type=int, default=4)

    ser = sub.add_parser("series", help="truncated power series").add_subparsers(
        dest="series", required=True, parser_class=_Parser)
    p = ser.add_parser("mul", parents=[common])
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--trunc", type=int, required=True, help="declared truncation of both inputs")
    p.add_argument("--order", type=int, help="product order q (default: --trunc)")

    tr = sub.add_parser("transform", help="changes of variables").add_subparsers(
        dest="transform", required=True, parser_class=_Parser)
    p = tr.add_parser("kill-delta", parents=[common])
    p.add_argument("--c", required=True, help="central element c")
    p = tr.add_parser("scalarize", parents=[common])
    p.add_argument("--cs", required=True, help="comma-separated c_1,...,c_n")

    p = sub.add_parser("eval", parents=[common], help="evaluate through the universal property")
    p.add_argument("expr")
    p.add_argument("--targets", required=True, metavar="FILE")

    check = sub.add_parser("check", help="law checks").add_subparsers(
        dest="check", required=True, parser_class=_Parser)
    p = check.add_parser("laws", parents=[common])
    p.add_argument("--budget", type=int, default=64)

    p = sub.add_parser("selftest", parents=[common], help="cross-check engines on built-in configurations")
    p.add_argument("--pairs", type=int, default=40)
    return parser


# -- helpers ------------------------------------------------------------------

def _read(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def _ext(args):
    if not args.ring:
        raise UsageError("--ring FILE is required")
    try:
        return load_ring_spec(args.ring, seed=0)
    except OSError as exc:
        raise UsageError(f"cannot read ring spec: {exc}") from None


def _poly(args, ext, text) -> SkewPoly:
    return parse_poly(_read(text), ext)


def _emit_poly(args, out, p):
    out.append(f"result={render(p)}" if args.format == "records" else render(p))


# -- commands -------------------------------------------------------------------

def _cmd_normalize(args, out):
    ext = _ext(args)
    _emit_poly(args, out, _poly(args, ext, args.expr))


def _cmd_add(args, out):
    ext = _ext(args)
    _emit_poly(args, out, _poly(args, ext, args.left) + _poly(args, ext, args.right))


def _cmd_mul(args, out):
    ext = _ext(args)
    f, g = _poly(args, ext, args.left), _poly(args, ext, args.right)
    p = f * g
    _emit_poly(args, out, p)
    if args.oracle:
        q = oracle_mul(f, g)
        if q != p:
            raise SkewError(f"oracle mismatch: rewriting gives {render(p)}, oracle gives {render(q)}")
        out.append("oracle=match" if args.format == "records" else "oracle: match")


def _cmd_deg(args, out):
    ext = _ext(args)
    d = analysis.deg_text(deg(_poly(args, ext, args.expr)))
    out.append(f"deg={d}" if args.format == "records" else d)


def _cmd_ord(args, out):
    ext = _ext(args)
    o = ord_(_poly(args, ext, args.expr))
    out.append(f"ord={o}" if args.format == "records" else str(o))


def _cmd_leading(args, out):
    ext = _ext(args)
    w, a = leading(_poly(args, ext, args.expr))
    out.append(f"word={w} coeff={a}" if args.format == "records" else f"{w} [{a}]")


def _verdict(args, out, v):
    out.append(v.records() if args.format == "records" else str(v))


def _cmd_probe(args, out):
    ext = _ext(args)
    if args.probe == "megainjective":
        v = analysis.megainjective_probe(ext, args.rmax, args.seed, args.samples)
        _verdict(args, out, v)
        if isinstance(v, analysis.DependenceWitness) and ext.delta.is_zero() and v.r >= 1:
            f, g = analysis.zero_divisor_from_witness(ext, v)
            line = f"f={render(f)} g={render(g)} product=0"
            out.append(line if args.format == "records" else f"zero divisors: ({render(f)}) * ({render(g)}) = 0")
    else:
        _verdict(args, out, analysis.prime_probe(ext, args.degree_bound, args.seed))


def _cmd_series(args, out):
    ext = _ext(args)
    q = args.trunc if args.order is None else args.order
    f = series.TruncSeries.from_poly(_poly(args, ext, args.left), args.trunc)
    g = series.TruncSeries.from_poly(_poly(args, ext, args.right), args.trunc)
    h = series.series_mul_trunc(f, g, q)
    out.append(f"result={render(h.to_poly())} order={q}" if args.format == "records" else str(h))


def _cmd_transform(args, out):
    ext = _ext(args)
    if args.transform == "kill-delta":
        bc = transforms.kill_delta(ext, parse_ring_literal(ext.ring, args.c), seed=args.seed)
    else:
        cs = [parse_ring_literal(ext.ring, c.strip()) for c in args.cs.split(",")]
        bc = transforms.scalarize_sigma(ext, cs, seed=args.seed)
    out.extend(bc.describe())
    out.append("target: " + json.dumps(extension_to_doc(bc.target), sort_keys=True))


def _load_targets(path, ext):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read targets: {exc}") from None
    if not isinstance(doc, dict) or "targets" not in doc:
        raise SpecError("expected {\"algebra\": ..., \"targets\": [...]}", "targets")
    kind = doc.get("algebra", "S")
    items = doc["targets"]
    if not isinstance(items, list):
        raise SpecError("must be a list", "targets")
    if kind == "S":
        return kind, [parse_poly(str(t), ext) for t in items]
    if kind == "R":
        return kind, [parse_ring_literal(ext.ring, str(t)) for t in items]
    if kind == "matrix":
        return kind, [RingMatrix.from_rows(ext.ring, [[parse_ring_literal(ext.ring, str(x)) for x in row] for row in m])
                      for m in items]
    raise SpecError(f"unknown algebra {kind!r}", "algebra")


def _cmd_eval(args, out):
    ext = _ext(args)
    kind, targets = _load_targets(args.targets, ext)
    v = transforms.eval_hom(ext, targets, _poly(args, ext, args.expr), kind, seed=args.seed)
    if kind == "S":
        text = render(v)
    elif kind == "R":
        text = str(v)
    else:
        text = "[" + "; ".join(", ".join(str(x) for x in row) for row in v.to_rows()) + "]"
    out.append(f"result={text}" if args.format == "records" else text)


def _cmd_check(args, out):
    ext = _ext(args)
    reports = ext.run_validation(budget=args.budget, seed=args.seed)
    failed = False
    for rep in reports.values():
        failed |= not rep.passed
        if args.format == "records":
            out.append(f"law={rep.law} passed={str(rep.passed).lower()} checked={rep.checked}")
        else:
            out.append(str(rep))
    if failed:
        raise SkewError("law check failed")


def _selftest_one(name, ext, pairs, seed, out):
    rng = random.Random(seed)
    ok_oracle = ok_assoc = 0
    for _ in range(pairs):
        f, g, h = (random_skewpoly(ext, rng, 2, 2) for _ in range(3))
        ok_oracle += (f * g) == oracle_mul(f, g)
        ok_assoc += ((f * g) * h) == (f * (g * h))
    out.append(f"{name}: oracle {ok_oracle}/{pairs} associativity {ok_assoc}/{pairs}")
    return ok_oracle == pairs and ok_assoc == pairs


def _cmd_selftest(args, out):
    if args.ring:
        cases = [(args.ring, _ext(args))]
    else:
        cases = [(name, builtin(name)) for name in ("ore", "diag", "triangular", "z6")]
    ok = all([_selftest_one(name, ext, args.pairs, args.seed, out) for name, ext in cases])
    out.append("selftest: pass" if ok else "selftest: FAIL")
    if not ok:
        raise SkewError("selftest failed")


COMMANDS = {
    "normalize": _cmd_normalize, "add": _cmd_add, "mul": _cmd_mul, "deg": _cmd_deg,
    "ord": _cmd_ord, "leading": _cmd_leading, "probe": _cmd_probe, "series": _cmd_series,
    "transform": _cmd_transform, "eval": _cmd_eval, "check": _cmd_check, "selftest": _cmd_selftest,
}


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out = []
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
        code = 0
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        code = 2
    except ParseError as exc:
        print(f"error: syntax: {exc}", file=stderr)
        code = 2
    except SpecError as exc:
        print(f"error: spec: {exc}", file=stderr)
        code = 2
    except SkewError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        code = 1
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    for line in out:
        print(line, file=stdout)
    return code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
