"""Command-line front end.

Exit status: 0 success, 1 mathematical failure, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from gmpy2 import mpq

from . import database, schema
from .algebra import ParseError, parse_rational
from .database import TheoremEntry
from .oracle import EmptyRegionError, PrecisionConfig, check_theorem_numeric
from .prover import choose_shift, extend_domain, prove, replay
from .schema import SchemaError
from .telescope import verify_certificate

OK, FAILED, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return schema.loads(fh.read())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except SchemaError as e:
        raise InputError(f"{path}: {e}") from None


def _entry_from_file(path: str) -> tuple[TheoremEntry, dict]:
    raw = _read_json(path)
    try:
        spec = schema.spec_from_json(raw)
        shift = raw.get("shift")
        if shift is not None:
            param, step = shift
            if param not in spec.parameters or int(step) <= 0:
                raise SchemaError(f"bad shift {shift!r}")
            shift = (str(param), int(step))
        ext = tuple((str(p), int(t)) for p, t in raw.get("extensions", ()))
    except SchemaError as e:
        raise InputError(f"{path}: {e}") from None
    except (TypeError, ValueError) as e:
        raise InputError(f"{path}: malformed field ({e})") from None
    return TheoremEntry(spec, shift=shift, extensions=ext), raw


def resolve(target: str) -> TheoremEntry:
    """Database name or path to a spec file."""
    if os.path.isfile(target):
        return _entry_from_file(target)[0]
    try:
        return database.get(target)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None


def _config(args) -> PrecisionConfig:
    try:
        return PrecisionConfig(bits=args.bits)
    except ValueError as e:
        raise InputError(str(e)) from None


def _parse_point(text: str) -> dict:
    point = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        if not sep:
            raise InputError(f"bad point {text!r}; expected name=value,...")
        try:
            v = parse_rational(value.strip())
        except (ParseError, ValueError, ZeroDivisionError):
            raise InputError(f"bad value in point {text!r}") from None
        if not v.is_constant():
            raise InputError(f"point values must be numbers: {text!r}")
        point[name.strip()] = mpq(v.constant_value())
    return point


def _write(path: str | None, obj) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(schema.dumps(obj))


# -- commands -------------------------------------------------------------------------------------


def cmd_prove(args) -> int:
    entry = resolve(args.target)
    spec = entry.spec
    cfg = _config(args)
    if entry.numeric_only:
        print(f"{spec.name}: symbolic proof disabled ({entry.numeric_only}); numeric check only")
        return _numeric(spec, args.samples or 5, cfg, None, args.out)
    transcript = prove(spec, shift=entry.shift)
    if transcript.proved and not args.no_extend:
        for param, times in entry.extensions:
            transcript = extend_domain(spec, transcript, param, times, max_order=args.max_order)
            if not transcript.proved:
                break
    print(transcript.text())
    out = schema.transcript_to_json(transcript)
    if not transcript.proved:
        _write(args.out, out)
        return FAILED
    status = OK
    if args.samples > 0:
        F = transcript.step("shift").F
        C = transcript.step("wz").certificate
        try:
            report = check_theorem_numeric(spec, args.samples, cfg, certificate=(F, C))
        except EmptyRegionError as e:
            print(f"numeric cross-check: {e}", file=sys.stderr)
            _write(args.out, out)
            return USAGE
        print(report)
        out["numeric"] = report.to_json()
        if not report.passed:
            print("numeric cross-check failed: the proof and the closed form disagree")
            status = FAILED
    _write(args.out, out)
    return status


def _numeric(spec, samples, cfg, points, out_path) -> int:
    try:
        report = check_theorem_numeric(spec, samples, cfg, points=points)
    except EmptyRegionError as e:
        print(str(e), file=sys.stderr)
        return USAGE
    print(report)
    _write(out_path, report.to_json())
    return OK if report.passed else FAILED


def cmd_check(args) -> int:
    entry = resolve(args.target)
    points = [_parse_point(p) for p in args.point] or None
    if points:
        known = set(entry.spec.parameters)
        for p in points:
            if set(p) != known:
                raise InputError(f"point must assign exactly {sorted(known)}")
    return _numeric(entry.spec, args.samples, _config(args), points, args.out)


def cmd_verify(args) -> int:
    raw = _read_json(args.file)
    try:
        spec = schema.spec_from_json(raw)
        if "certificate" not in raw:
            raise SchemaError("no certificate field")
        C = parse_rational(str(raw["certificate"]))
        if "term" in raw:
            F = schema.term_from_json(raw["term"])
        else:
            param, step = raw.get("shift") or choose_shift(spec)
            F = spec.lhs.substitute_shift(param, int(step)) / spec.rhs.substitute_shift(param, int(step))
    except (SchemaError, ParseError, ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"{args.file}: {e}") from None
    ok = verify_certificate(F, C)
    print(f"{spec.name}: certificate {'verified' if ok else 'REJECTED'}")
    return OK if ok else FAILED


def cmd_replay(args) -> int:
    entry = resolve(args.target)
    raw = _read_json(args.transcript)
    try:
        transcript = schema.transcript_from_json(raw)
    except (SchemaError, KeyError, TypeError, ValueError) as e:
        raise InputError(f"{args.transcript}: {e}") from None
    report = replay(entry.spec, transcript)
    print(report)
    print("accepted" if report.accepted else "rejected")
    return OK if report.accepted else FAILED


def cmd_list(args) -> int:
    if args.json:
        print(json.dumps({"theorems": [database.to_json(e) for e in database.ENTRIES]}, indent=2))
        return OK
    for e in database.ENTRIES:
        s = e.spec
        conds = "; ".join(str(c) for c in s.stated_conditions) or "none"
        print(f"{e.name:10} {s.shape:4} parameters {', '.join(s.parameters)}")
        print(f"    {s.lhs.pochhammer_str()}")
        print(f"    = {s.rhs}")
        print(f"    conditions: {conds}")
    return OK


# -- parser ---------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wzproof", description="WZ proofs of hypergeometric summation identities")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("prove", help="prove a database identity or a spec file")
    pr.add_argument("target")
    pr.add_argument("--out", help="write the transcript as JSON")
    pr.add_argument("--samples", type=int, default=3, help="numeric cross-check points (0 skips)")
    pr.add_argument("--bits", type=int, default=128)
    pr.add_argument("--max-order", type=int, default=2, help="largest recurrence order tried when extending")
    pr.add_argument("--no-extend", action="store_true", help="skip the configured domain extensions")
    pr.set_defaults(func=cmd_prove)

    ve = sub.add_parser("verify", help="check a certificate given in a spec file")
    ve.add_argument("file")
    ve.set_defaults(func=cmd_verify)

    re_ = sub.add_parser("replay", help="re-check a saved transcript")
    re_.add_argument("target")
    re_.add_argument("transcript")
    re_.set_defaults(func=cmd_replay)

    ch = sub.add_parser("check", help="numeric comparison of both sides")
    ch.add_argument("target")
    ch.add_argument("--samples", type=int, default=5)
    ch.add_argument("--bits", type=int, default=128)
    ch.add_argument("--point", action="append", default=[], help="explicit point, e.g. a=1,b=1/2")
    ch.add_argument("--out", help="write the report as JSON")
    ch.set_defaults(func=cmd_check)

    ls = sub.add_parser("list", help="show the built-in identities")
    ls.add_argument("--json", action="store_true")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if getattr(args, "samples", 0) < 0:
        parser.error("--samples must be nonnegative")
    if getattr(args, "max_order", 1) < 1:
        parser.error("--max-order must be at least 1")
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
