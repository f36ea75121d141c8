"""Command-line front end: derive, gen, check, fixtures."""

import argparse
import json
import sys
from dataclasses import fields
from fractions import Fraction

from .bfile import BFileError, compare, read_bfile
from .classify import classify_text, parse_poly
from .errors import (
    DerivationError, HolorecError, ParseError, RecurrenceError, UnsupportedShape,
    VerificationError,
)
from .exactmath import Poly, as_fraction
from .gfclass import CLASSES
from .pipeline import derive, shortened_recurrence, term_stream, transformed_recurrence
from .serialize import derivation_to_dict, dumps, recurrence_to_dict

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_DERIVE = 0, 1, 2, 3

_POLY_FLAGS = ("p", "q", "v", "w", "L", "H")
_VALUE_FLAGS = {f"--{name}" for name in _POLY_FLAGS + ("r", "sign", "alphas", "betas", "t", "c")}


class InputError(HolorecError):
    """Bad command-line input."""


class IntegralityError(HolorecError):
    """A scaled EGF term is not an integer."""


def _rational_list(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(as_fraction(part.strip()) for part in text.split(","))


def _class_from_flags(args):
    cls_type = CLASSES.get(args.cls)
    if cls_type is None:
        raise InputError(f"unknown class {args.cls!r}; choose from {', '.join(sorted(CLASSES))}")
    kwargs = {}
    for f in fields(cls_type):
        raw = getattr(args, f.name, None)
        if raw is None:
            raise InputError(f"class {args.cls} needs --{f.name}")
        try:
            if f.type in (Poly, "Poly"):
                kwargs[f.name] = parse_poly(raw)
            elif f.type in (tuple, "tuple"):
                kwargs[f.name] = _rational_list(raw)
            elif f.type in (Fraction, "Fraction"):
                kwargs[f.name] = as_fraction(raw)
            else:
                kwargs[f.name] = int(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--{f.name}: {exc}") from None
    return cls_type(**kwargs).validate()


def _resolve_class(args):
    if args.expr is not None and args.cls is not None:
        raise InputError("give either --expr or --class, not both")
    if args.expr is not None:
        return classify_text(args.expr)
    if args.cls is not None:
        return _class_from_flags(args)
    raise InputError("an input is required: --expr or --class")


def _mode(args):
    if args.egf and args.lgf:
        raise InputError("--egf and --lgf are exclusive")
    return "egf" if args.egf else "lgf" if args.lgf else "ogf"


def _fmt(q):
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _checked_terms(stream, args, mode):
    for n, t in enumerate(stream):
        if mode == "egf" and t.denominator != 1 and not args.allow_rational:
            raise IntegralityError(
                f"n! g_n is not an integer at n = {n} ({_fmt(t)}); pass --allow-rational")
        yield n, t


# --- commands ----------------------------------------------------------------

def cmd_derive(args, out):
    cls = _resolve_class(args)
    mode = _mode(args)
    d = derive(cls, args.guard)
    short = shortened_recurrence(d, args.guard) if args.shorten else None
    scaled = transformed_recurrence(d, mode, args.guard) if mode != "ogf" else None
    if args.json:
        data = derivation_to_dict(d, short)
        if scaled is not None:
            data[f"{mode}_recurrence"] = recurrence_to_dict(scaled)
        out.write(dumps(data))
        return EXIT_OK
    out.write(f"class: {cls.describe()}\n")
    if d.ode is None:
        out.write("ode: none (recurrence from the term ratio)\n")
    else:
        out.write(f"ode (order {d.ode.order}): {d.ode}\n")
    _write_rec(out, "recurrence", d.recurrence)
    if scaled is not None:
        _write_rec(out, f"{mode} recurrence", scaled)
    if short is not None:
        _write_rec(out, "shortened", short)
    return EXIT_OK


def _write_rec(out, title, rec):
    out.write(f"{title} (span {rec.span}): {rec}\n")
    out.write(f"  initial: {', '.join(_fmt(t) for t in rec.initial) or '(none)'}\n")


def cmd_gen(args, out):
    cls = _resolve_class(args)
    mode = _mode(args)
    if args.n < 0:
        raise InputError("-n must be nonnegative")
    d = derive(cls, args.guard)
    first = 1 if mode == "lgf" else 0
    rows = []
    for n, t in _checked_terms(term_stream(d, mode), args, mode):
        if n > args.n:
            break
        if n < first:
            continue
        if args.format == "lines":
            out.write(f"{_fmt(t)}\n")
        elif args.format == "bfile":
            out.write(f"{n} {_fmt(t)}\n")
        else:
            rows.append(_fmt(t))
    if args.format == "csv":
        out.write(",".join(rows) + "\n")
    elif args.format == "json":
        out.write(json.dumps({"start": first, "terms": rows}) + "\n")
    return EXIT_OK


def cmd_check(args, out):
    bf = read_bfile(args.bfile)
    entries = bf.entries[: args.limit] if args.limit is not None else bf.entries
    cls = _resolve_class(args)
    mode = _mode(args)
    d = derive(cls, args.guard)
    wanted = [idx - args.offset for idx, _ in entries if idx - args.offset >= 0]
    top = max(wanted, default=-1)
    values = []
    if top >= 0:
        for n, t in _checked_terms(term_stream(d, mode), args, mode):
            values.append(t)
            if n >= top:
                break
    mismatch, count = compare(type(bf)(tuple(entries)), values, args.offset)
    if mismatch is not None:
        idx, expected, got = mismatch
        out.write(f"MISMATCH at index {idx}: b-file {expected}, derived {_fmt(got)}\n")
        return EXIT_MISMATCH
    out.write(f"OK {count} terms\n")
    return EXIT_OK


def cmd_fixtures(args, out):
    from .fixtures import FIXTURES, run_fixture_suite
    chosen = FIXTURES
    if args.only:
        keep = set(args.only)
        chosen = tuple(f for f in FIXTURES if f.oeis_id in keep)
        missing = keep - {f.oeis_id for f in chosen}
        if missing:
            raise InputError(f"unknown fixture(s): {', '.join(sorted(missing))}")
    passed, failed, results = run_fixture_suite(chosen, args.terms, args.guard)
    for r in results:
        status = "pass" if r.ok else "FAIL"
        out.write(f"{status} {r.fixture.oeis_id:8} {r.fixture.interpretation} "
                  f"{r.fixture.label:20} {r.seconds * 1000:7.1f} ms  {r.message}\n")
    out.write(f"{passed} passed, {failed} failed\n")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


# --- argument parsing ----------------------------------------------------------

def _add_input(p):
    g = p.add_argument_group("input")
    g.add_argument("--expr", help="generating function, e.g. \"1/sqrt(1-4*x)\"")
    g.add_argument("--class", dest="cls", metavar="NAME",
                   help=f"class name ({', '.join(sorted(CLASSES))})")
    for name in _POLY_FLAGS:
        g.add_argument(f"--{name}", metavar="POLY", help=f"polynomial {name}(x)")
    g.add_argument("--r", metavar="RAT", help="root index (hypergeometric: integer stride)")
    g.add_argument("--sign", metavar="INT", help="+1 or -1 in front of the root (exp-poly-sqrt)")
    g.add_argument("--alphas", metavar="LIST", help="comma-separated upper parameters")
    g.add_argument("--betas", metavar="LIST", help="comma-separated lower parameters")
    g.add_argument("--t", metavar="INT", help="index offset (hypergeometric)")
    g.add_argument("--c", metavar="RAT", help="argument scale (hypergeometric)")
    p.add_argument("--guard", type=int, default=10, help="certification window (default 10)")
    p.add_argument("--egf", action="store_true", help="treat as EGF: emit n! g_n")
    p.add_argument("--lgf", action="store_true", help="treat as LGF: emit n g_n")
    p.add_argument("--allow-rational", action="store_true",
                   help="accept non-integer n! g_n under --egf")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="holorec", description="P-recurrences for algebraic and exponential generating functions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="classify, derive ODE and recurrence")
    _add_input(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--shorten", action="store_true", help="also eliminate one recurrence term")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("gen", help="generate terms")
    _add_input(p)
    p.add_argument("-n", type=int, default=20, help="last index (default 20)")
    p.add_argument("--format", choices=("lines", "csv", "bfile", "json"), default="lines")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="compare with an OEIS b-file")
    _add_input(p)
    p.add_argument("--bfile", required=True)
    p.add_argument("--offset", type=int, default=0, help="b-file index of g_0")
    p.add_argument("--limit", type=int, help="check at most this many b-file entries")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fixtures", help="run the embedded OEIS fixture suite")
    p.add_argument("--terms", type=int, default=100)
    p.add_argument("--guard", type=int, default=10)
    p.add_argument("only", nargs="*", metavar="AXXXXXX")
    p.set_defaults(func=cmd_fixtures)
    return parser


def _glue_values(argv):
    # "--v -1+x" would read -1+x as an option; bind such values explicitly
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(_glue_values(argv))
    try:
        return args.func(args, out)
    except (InputError, ParseError, UnsupportedShape, BFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DerivationError, RecurrenceError, VerificationError, IntegralityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DERIVE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
