"""Command-line interface.

Exit status: 0 success, 1 negative verification/equivalence result, 2 usage
error, 3 a search stopped at a limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import catalog, equivalence, repro, search, series
from .catalog import CatalogError, FixtureRecord
from .correlation import (
    DFVerificationError,
    DifferenceFamily,
    df_type,
    is_legendre_pair,
    is_skew,
    is_symmetric,
    verify_df,
)
from .zmod import subgroup_generated, subgroups_of_order

OK, NEGATIVE, USAGE, LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _records(arg: str) -> list[FixtureRecord]:
    """A builtin label, or every record of a catalog file (not validated)."""
    path = Path(arg)
    if path.is_file():
        try:
            return list(catalog.load(path, validate_records=False).records)
        except CatalogError as exc:
            raise UsageError(str(exc)) from exc
    try:
        return [catalog.builtin_catalog().get(arg)]
    except KeyError:
        raise UsageError(f"{arg!r} is neither a fixture label nor a catalog file") from None


def _family(arg: str) -> tuple[FixtureRecord, DifferenceFamily]:
    recs = _records(arg)
    if len(recs) != 1:
        raise UsageError(f"{arg} holds {len(recs)} records; expected exactly one")
    try:
        return recs[0], catalog.expand_record(recs[0])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit_records(records: Sequence[FixtureRecord]) -> None:
    sys.stdout.write(catalog.dumps(catalog.CatalogFile(tuple(records))))


def _structure_flags(df: DifferenceFamily) -> str:
    flags = []
    for name, b in (("X", df.X), ("Y", df.Y)):
        if is_skew(b):
            flags.append(f"{name} skew")
        elif is_symmetric(b):
            flags.append(f"{name} symmetric")
    return ", ".join(flags)


def cmd_verify(args) -> int:
    status = OK
    verified = []
    for r in _records(args.target):
        try:
            df = catalog.expand_record(r, strict=False)
        except ValueError as exc:
            print(f"{r.label}: {exc}")
            status = NEGATIVE
            continue
        verdict = is_legendre_pair(df.X, df.Y)
        try:
            params = verify_df(df.X, df.Y)
        except DFVerificationError as exc:
            params, df_error = None, exc
        if not verdict or params is None:
            status = NEGATIVE
            shifts = ", ".join(f"s={f.shift} (sum {f.total})" for f in verdict.failures)
            print(f"{r.label}: NOT a Legendre pair; failing shifts: {shifts}")
            if params is None:
                bad = ", ".join(f"d={f.d} ({f.total})" for f in df_error.failures)
                print(f"{r.label}: difference counts off lambda={df_error.lam} at {bad}")
            continue
        if params != r.declared:
            status = NEGATIVE
            print(f"{r.label}: verifies as {params} but declares {r.declared}")
            continue
        verified.append(r)
        if args.format == "text":
            flags = _structure_flags(df)
            print(f"{r.label}: {params} {df_type(df.X, df.Y)}" + (f" {flags}" if flags else ""))
    if args.format == "records" and verified:
        _emit_records(verified)
    return status


def cmd_expand(args) -> int:
    r, df = _family(args.target)
    if args.format == "records":
        _emit_records([FixtureRecord(r.v, r.label, r.source, None, df.X.members, df.Y.members, r.declared)])
    else:
        print(f"{r.label}: v={r.v} |X|={len(df.X)} |Y|={len(df.Y)}")
        print("X =", list(df.X.members))
        print("Y =", list(df.Y.members))
    return OK


def cmd_catalog(args) -> int:
    c = catalog.builtin_catalog()
    if args.action == "list":
        if args.format == "text":
            for r in c.records:
                print(f"{r.label:8s} {str(r.declared):18s} {r.source}")
        else:
            _emit_records(c.records)
        return OK
    if not args.label:
        raise UsageError("catalog get needs a label")
    try:
        _emit_records([c.get(args.label)])
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    return OK


def cmd_equiv(args) -> int:
    (ra, a), (rb, b) = _family(args.a), _family(args.b)
    if a.v != b.v:
        print(f"NOT equivalent ({ra.label} has v={a.v}, {rb.label} has v={b.v})")
        return NEGATIVE
    if equivalence.equivalent(a, b):
        print(f"{ra.label} and {rb.label} are equivalent")
        return OK
    print(f"{ra.label} and {rb.label} are NOT equivalent")
    return NEGATIVE


def cmd_canonical(args) -> int:
    _, df = _family(args.target)
    print(equivalence.canonical_form(df).hex())
    return OK


def cmd_fingerprint(args) -> int:
    _, df = _family(args.target)
    fp = equivalence.fingerprint(df)
    print("sizes:", fp.sizes)
    for i, p in enumerate(fp.pafs):
        print(f"paf multiset {i}:", list(p))
    return OK


def cmd_series(args) -> int:
    if args.action == "undecided":
        if args.lo is None or args.hi is None:
            raise UsageError("series undecided needs --lo and --hi")
        for v in series.undecided_lengths(args.lo, args.hi):
            print(v)
        return OK
    if args.kind is None or args.v is None:
        raise UsageError("series gen needs --kind and --v")
    try:
        df = series.generate(args.kind, args.v)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rec = catalog.record_from_family(df, f"{args.kind}-{args.v}", f"{args.kind} series")
    if args.format == "text":
        print(f"{rec.label}: {rec.declared} {df_type(df.X, df.Y)}")
        print("X =", list(df.X.members))
        print("Y =", list(df.Y.members))
    else:
        _emit_records([rec])
    return OK


def cmd_search(args) -> int:
    v = args.v
    try:
        if args.h_gens:
            gens = [int(x) for x in args.h_gens.split(",") if x]
            groups = [subgroup_generated(v, gens)]
            if args.h_order is not None and groups[0].order != args.h_order:
                raise UsageError(f"generators give a subgroup of order {groups[0].order}, not {args.h_order}")
        else:
            groups = subgroups_of_order(v, args.h_order or 1)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not groups:
        raise UsageError(f"no subgroup of order {args.h_order} in the units mod {v}")
    records = []
    status = OK
    for gi, H in enumerate(groups, start=1):
        try:
            cfg = search.SearchConfig(
                v, H, max_candidates=args.max_candidates, max_results=args.limit,
                deadline=args.deadline, dedupe=args.dedupe, allow_open=args.allow_open,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        ckpt = args.checkpoint
        if ckpt is not None and len(groups) > 1:
            ckpt = f"{ckpt}.{gi}"
        res = search.match_complements(cfg, checkpoint=ckpt)
        print(
            f"# H={list(H.elements)}: {res.candidates} candidates, "
            f"{len(res.families)} families, status {res.status}",
            file=sys.stderr,
        )
        for i, df in enumerate(res.families, start=1):
            records.append(catalog.record_from_family(df, f"{v}-H{gi}-{i}", "search", H))
        if res.exhausted_limit:
            status = LIMIT
    if args.format == "text":
        for r in records:
            print(f"{r.label}: {r.declared} X=H{list(r.X_spec)} Y=H{list(r.Y_spec)}")
    else:
        _emit_records(records)
    return status


def cmd_repro(args) -> int:
    results = []
    for n, fn in repro.CRITERIA.items():
        res = fn(samples=args.samples) if n == 9 else fn()
        results.append(res)
        print(res.line(), flush=True)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return OK if passed == len(results) else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS,
                        help="output style (default: text, or records for 'catalog')")
    p = argparse.ArgumentParser(prog="legendre-pairs", description="Cyclic Legendre pairs toolkit",
                                parents=[common])
    p.set_defaults(format=None)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("verify", help="verify a fixture label or a catalog file")
    s.add_argument("target")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("expand", help="print the explicit blocks of a fixture")
    s.add_argument("target")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("catalog", help="list or fetch builtin fixtures")
    s.add_argument("action", choices=("list", "get"))
    s.add_argument("label", nargs="?")
    s.set_defaults(func=cmd_catalog, default_format="records")

    s = sub.add_parser("equiv", help="decide equivalence of two families")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("canonical", help="canonical key as hex")
    s.add_argument("target")
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("fingerprint", help="equivalence-invariant fingerprint")
    s.add_argument("target")
    s.set_defaults(func=cmd_fingerprint)

    s = sub.add_parser("series", help="known series generators and undecided lengths")
    s.add_argument("action", choices=("gen", "undecided"))
    s.add_argument("--kind", choices=("classical", "twinprime", "galois"))
    s.add_argument("--v", type=int)
    s.add_argument("--lo", type=int)
    s.add_argument("--hi", type=int)
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("search", help="search for H-invariant Legendre DFs")
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--h-order", type=int)
    s.add_argument("--h-gens", help="comma-separated generators of H")
    s.add_argument("--limit", type=int, help="stop after this many families")
    s.add_argument("--max-candidates", type=int, default=1_000_000)
    s.add_argument("--deadline", type=float, help="wall-clock budget in seconds")
    s.add_argument("--dedupe", action="store_true", help="keep one family per equivalence class")
    s.add_argument("--checkpoint", help="resume file for long searches")
    s.add_argument("--allow-open", action="store_true", help="permit still-open lengths such as 77")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("repro", help="run every acceptance check and print a table")
    s.add_argument("--samples", type=int, default=1000, help="random transforms per fixture")
    s.set_defaults(func=cmd_repro)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "text")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
