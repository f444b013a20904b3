"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage, 3 capability, 4 I/O.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arith import decimal_render, scientific_render
from .constants import claimed_digits, correlation_estimate, ratio_to_e
from .hull import build_hull, grow
from .metrics import (CapabilityError, MetricsRecord, enum_dim_limit, euclidean_volume,
                      f_vector, h_star, record_from_polytope)
from .numsys import KINDS, DomainError, SubsetSpec, member_points
from .refdata import compare_many, load_reference

log = logging.getLogger("natpoly")

CSV_HEADER = "N,diameter,dim,Vol,n_vertices,n_edges,n_facets,facet_width,vol_fraction"
FACE_DIM_ENV = "NATPOLY_FACE_DIM_LIMIT"
DEFAULT_FACE_DIM_LIMIT = 15

EXIT_MISMATCH, EXIT_USAGE, EXIT_CAPABILITY, EXIT_IO = 1, 2, 3, 4


class UsageError(Exception):
    pass


def face_dim_limit() -> int:
    return int(os.environ.get(FACE_DIM_ENV, DEFAULT_FACE_DIM_LIMIT))


def _fmt(v) -> str:
    return "" if v is None else str(v)


def csv_row(r: MetricsRecord) -> str:
    cells = [r.N, r.diameter, r.dim, r.Vol, r.n_vertices, r.n_edges, r.n_facets,
             r.facet_width, r.vol]
    return ",".join(_fmt(c) for c in cells)


def _subset(args) -> SubsetSpec:
    if getattr(args, "list_file", None):
        return SubsetSpec.from_file(args.list_file)
    return SubsetSpec(args.subset)


def _polytope(subset: SubsetSpec, N: int):
    return build_hull(member_points(subset, N))


# props / hstar / fvector ---------------------------------------------------------

def cmd_props(args) -> int:
    subset = _subset(args)
    if args.N < 1:
        raise UsageError("N must be >= 1")
    p = _polytope(subset, args.N)
    if args.hstar and p.dim > enum_dim_limit():
        raise CapabilityError(f"h* requested but dimension {p.dim} exceeds the limit "
                              f"{enum_dim_limit()}")
    json_out = args.format == "json"
    rec = record_from_polytope(p, args.N, subset.kind,
                               with_h_star=True if args.hstar else (None if json_out else False),
                               with_vertices=json_out)
    if args.format == "json":
        print(json.dumps(rec.to_dict(), sort_keys=True))
    else:
        if args.header:
            print(CSV_HEADER)
        print(csv_row(rec))
    return 0


def _trimmed(h: list[int]) -> list[int]:
    h = list(h)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return h


def cmd_hstar(args) -> int:
    p = _polytope(_subset(args), args.N)
    print(" ".join(str(x) for x in _trimmed(h_star(p))))
    return 0


def cmd_fvector(args) -> int:
    p = _polytope(_subset(args), args.N)
    if p.dim > face_dim_limit():
        raise CapabilityError(f"face enumeration limited to dimension {face_dim_limit()} "
                              f"(raise it with {FACE_DIM_ENV})")
    print(" ".join(str(x) for x in f_vector(p)))
    return 0


# sweep ----------------------------------------------------------------------

def _checkpoint_records(path: Path | None, subset: str) -> dict[int, MetricsRecord]:
    out: dict[int, MetricsRecord] = {}
    if path is None or not path.exists():
        return out
    for line in path.read_text().splitlines():
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            log.warning("ignoring truncated checkpoint line")
            continue
        if obj.get("version") != __version__ or obj.get("subset") != subset:
            continue
        rec = MetricsRecord.from_dict(obj["record"])
        out[rec.N] = rec
    return out


def _one_record(job: tuple[SubsetSpec, int]) -> MetricsRecord:
    subset, N = job
    return record_from_polytope(_polytope(subset, N), N, subset.kind, with_h_star=False)


def sweep_records(subset: SubsetSpec, lo: int, hi: int, jobs: int = 1,
                  checkpoint: Path | None = None) -> list[MetricsRecord]:
    """Metrics for every member in [lo, hi], resuming from ``checkpoint``."""
    done = _checkpoint_records(checkpoint, subset.kind)
    wanted = [M for M in subset.members_upto(hi) if M >= lo]
    todo = [M for M in wanted if M not in done]
    sink = checkpoint.open("a") if checkpoint else None

    def keep(rec: MetricsRecord) -> None:
        done[rec.N] = rec
        if sink:
            sink.write(json.dumps({"version": __version__, "subset": subset.kind,
                                   "record": rec.to_dict()}, sort_keys=True) + "\n")
            sink.flush()

    try:
        if todo and jobs <= 1:
            need = set(todo)
            for M, p in grow(subset, max(todo)):
                if M in need:
                    keep(record_from_polytope(p, M, subset.kind, with_h_star=False))
                    log.info("N=%d done", M)
        elif todo:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for rec in pool.map(_one_record, [(subset, M) for M in todo]):
                    keep(rec)
                    log.info("N=%d done", rec.N)
    finally:
        if sink:
            sink.close()
    return [done[M] for M in wanted]


def cmd_sweep(args) -> int:
    if not 1 <= args.from_ <= args.to:
        raise UsageError("need 1 <= from <= to")
    subset = _subset(args)
    ckpt = Path(args.checkpoint) if args.checkpoint else None
    records = sweep_records(subset, args.from_, args.to, args.jobs, ckpt)
    text = CSV_HEADER + "\n" + "".join(csv_row(r) + "\n" for r in records)
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# sum ------------------------------------------------------------------------

def cmd_sum(args) -> int:
    if args.upto < 1 or args.digits < 1:
        raise UsageError("upto and digits must be >= 1")
    subset = _subset(args)
    s, stable = claimed_digits(subset, args.upto)
    print(f"subset: {subset.kind}")
    print(f"upto: {args.upto}")
    print(f"terms: {s.terms}")
    print(f"fraction: {s.value}")
    print(f"decimal: {decimal_render(s.value, args.digits)}")
    print(f"stable_digits: {stable} (heuristic: unchanged when the sum runs to "
          f"{-(-5 * args.upto // 4)}; partial sum, limit is larger)")
    if args.ratio_e:
        print(f"ratio_e: {ratio_to_e(s, args.digits)}")
    return 0


# verify ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    tables = [t.strip() for t in args.tables.split(",") if t.strip()]
    for t in tables:
        if t not in ("appendixA", "table1_1", "table3_1", "appendixB"):
            raise UsageError(f"cannot verify against {t!r}")
    subset = SubsetSpec("naturals")
    limit = {"appendixA": 448, "table1_1": 16, "table3_1": 66, "appendixB": 69}
    hi = min(args.to, max(limit[t] for t in tables))
    if not 1 <= args.from_ <= hi:
        raise UsageError("range outside the available reference rows")
    want_h = "table3_1" in tables
    want_f = "appendixB" in tables
    want_v = "table1_1" in tables
    ckpt = _checkpoint_records(Path(args.checkpoint), subset.kind) if args.checkpoint else {}
    records = []
    for M, p in grow(subset, hi):
        if M < args.from_:
            continue
        if M in ckpt and not (want_h or want_f or want_v):
            records.append(ckpt[M])
            continue
        rec = record_from_polytope(
            p, M, with_h_star=want_h and p.dim <= enum_dim_limit(),
            with_faces=want_f and p.dim <= face_dim_limit(), with_vertices=want_v)
        if M in ckpt:
            old = ckpt[M]
            for f in ("diameter", "dim", "Vol", "n_vertices", "n_edges", "n_facets", "facet_width"):
                setattr(rec, f, getattr(old, f))
        records.append(rec)
    clean = True
    for t in tables:
        table = load_reference(t)
        rep = compare_many([r for r in records if r.N <= limit[t]], table)
        print(rep.to_text())
        print(rep.to_json())
        clean &= rep.ok
    return 0 if clean else EXIT_MISMATCH


# plotdata -----------------------------------------------------------------------

def cmd_plotdata(args) -> int:
    lines = []
    if args.kind == "vertex-ratio":
        lines.append("N\tn_vertices\tratio")
    elif args.kind == "volume":
        lines.append("N\tvol\tvol_scientific")
    else:
        lines.append("N\tVol\testimate")
    for M, p in grow("naturals", args.to):
        if M < args.from_:
            continue
        if args.kind == "vertex-ratio":
            lines.append(f"{M}\t{p.n_vertices}\t{decimal_render(Fraction(p.n_vertices, M), 6)}")
        elif args.kind == "volume":
            v = euclidean_volume(p)
            lines.append(f"{M}\t{v}\t{scientific_render(v, 12)}")
        else:
            est = repr(correlation_estimate(p.n_vertices, p.dim)) if p.dim else ""
            lines.append(f"{M}\t{p.normalized_volume}\t{est}")
    text = "\n".join(lines) + "\n"
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# wiring -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="natpoly", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def subset_opts(p):
        p.add_argument("--subset", choices=[k for k in KINDS if k != "explicit-list"],
                       default="naturals")
        p.add_argument("--list-file", help="explicit member list, one natural per line")

    p = sub.add_parser("props", help="invariants of one polytope")
    p.add_argument("N", type=int)
    subset_opts(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--header", action="store_true")
    p.add_argument("--hstar", action="store_true", help="require the h*-vector")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("sweep", help="CSV of invariants over a range")
    p.add_argument("--from", dest="from_", type=int, default=1)
    p.add_argument("--to", type=int, required=True)
    subset_opts(p)
    p.add_argument("--out", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--checkpoint")
    p.set_defaults(func=cmd_sweep)

    for name, fn in (("hstar", cmd_hstar), ("fvector", cmd_fvector)):
        p = sub.add_parser(name)
        p.add_argument("N", type=int)
        subset_opts(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("sum", help="partial volume sum over a subset")
    subset_opts(p)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--digits", type=int, default=20)
    p.add_argument("--ratio-e", action="store_true")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("verify", help="compare against the published tables")
    p.add_argument("--from", dest="from_", type=int, default=1)
    p.add_argument("--to", type=int, default=50)
    p.add_argument("--tables", default="appendixA")
    p.add_argument("--checkpoint")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plotdata", help="TSV series for plotting")
    p.add_argument("kind", choices=("vertex-ratio", "volume", "correlation"))
    p.add_argument("--from", dest="from_", type=int, default=1)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_plotdata)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"natpoly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapabilityError as exc:
        print(f"natpoly: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except OSError as exc:
        print(f"natpoly: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
