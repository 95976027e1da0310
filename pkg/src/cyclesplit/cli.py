"""Command-line interface.

Exit codes: 0 success, 1 an asserted property failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import CycleSplitError, InputError, InternalExhaustion
from .etale import class_pattern_table, cycle_split_density, is_combinatorially_cycle_split
from .hasse import fks_witness, subgroup_family
from .loaders import load_fibre, load_group, load_scan_spec
from .scan import CSV_COLUMNS, DEFAULT_TOLERANCE, cross_validate, scan

log = logging.getLogger("cyclesplit")

EXIT_OK, EXIT_ASSERT, EXIT_INPUT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    r: int | None = None
    bound: int | None = None
    tolerance: float | None = None
    fmt: str | None = None
    out: str | None = None
    assert_split: bool = False
    assert_density: tuple[Fraction, Fraction | None] | None = None

    def __post_init__(self):
        if self.r is not None and self.r < 1:
            raise InputError("--r must be a positive integer")
        if self.bound is not None and self.bound < 2:
            raise InputError("--primes-up-to must be at least 2")
        if self.tolerance is not None and not 0 < self.tolerance < 1:
            raise InputError("--tolerance must lie in (0, 1)")


_DENSITY_RE = re.compile(r"^\s*([0-9./]+)\s*(?:(?:±|\+-|\+/-)\s*([0-9.eE-]+))?\s*$")


def parse_density_assertion(text: str) -> tuple[Fraction, Fraction | None]:
    """``"1/3"``, ``"1/3±0.01"`` or ``"0.25+-0.02"`` -> (target, tolerance)."""
    m = _DENSITY_RE.match(text)
    if not m:
        raise InputError(f"bad --assert-density value {text!r}")
    try:
        target = Fraction(m.group(1))
        tol = Fraction(m.group(2)) if m.group(2) else None
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad --assert-density value {text!r}") from None
    return target, tol


def _density_ok(value: Fraction | float, target: Fraction, tol: Fraction | float) -> bool:
    return abs(Fraction(value) - target) <= Fraction(tol)


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _config(args) -> RunConfig:
    assert_density = None
    if getattr(args, "assert_density", None):
        assert_density = parse_density_assertion(args.assert_density)
    return RunConfig(
        command=args.command,
        inputs=tuple(x for x in (getattr(args, "input", None),) if x),
        r=args.r,
        bound=getattr(args, "primes_up_to", None),
        tolerance=getattr(args, "tolerance", None),
        fmt=args.format,
        out=args.out,
        assert_split=getattr(args, "assert_split", False),
        assert_density=assert_density,
    )


def cmd_group_analyze(args) -> int:
    cfg = _config(args)
    r = cfg.r or 1
    F = load_fibre(args.input)
    report = is_combinatorially_cycle_split(F, r)
    density = cycle_split_density(F, r)
    patterns = {row.class_id: row.to_dict()["pattern"] for row in class_pattern_table(F)}
    data = report.to_dict()
    data["density"] = str(density)
    for row in data["classes"]:
        row["pattern"] = patterns[row["class"]]
    fmt = cfg.fmt or "json"
    if fmt == "json":
        _emit(_json(data), cfg.out)
    elif fmt == "csv":
        _emit(_csv(["class", "representative", "size", "pattern", "index", "divides_r"],
                   [[c["class"], c["representative"], c["size"], c["pattern"], c["index"],
                     str(c["divides_r"]).lower()] for c in data["classes"]]), cfg.out)
    else:
        lines = [f"{'class':>5}  {'size':>5}  {'index':>5}  {'ok':>3}  pattern  [representative]"]
        for c in data["classes"]:
            lines.append(f"{c['class']:>5}  {c['size']:>5}  {c['index']:>5}  "
                         f"{'yes' if c['divides_r'] else 'no':>3}  {c['pattern']}  [{c['representative']}]")
        lines.append(f"r = {r}: {data['verdict']}; density {density}")
        if report.witness:
            lines.append(f"witness class {report.witness.class_id} "
                         f"({report.witness.representative}) has index {report.witness.index}")
        _emit("\n".join(lines), cfg.out)
    status = EXIT_OK
    if cfg.assert_split and not report.verdict:
        status = EXIT_ASSERT
    if cfg.assert_density:
        target, tol = cfg.assert_density
        if not _density_ok(density, target, tol or 0):
            status = EXIT_ASSERT
    return status


def cmd_density(args) -> int:
    cfg = _config(args)
    r = cfg.r or 1
    density = cycle_split_density(load_fibre(args.input), r)
    fmt = cfg.fmt or "text"
    if fmt == "json":
        _emit(_json({"r": r, "density": str(density)}), cfg.out)
    elif fmt == "csv":
        _emit(_csv(["r", "density"], [[r, str(density)]]), cfg.out)
    else:
        _emit(str(density), cfg.out)
    if cfg.assert_density:
        target, tol = cfg.assert_density
        if not _density_ok(density, target, tol or 0):
            return EXIT_ASSERT
    if cfg.assert_split and density != 1:
        return EXIT_ASSERT
    return EXIT_OK


def _load_scan(args, cfg: RunConfig):
    return load_scan_spec(args.input, r=cfg.r, bound=cfg.bound, tolerance=cfg.tolerance,
                          model=getattr(args, "model", None))


def cmd_scan(args) -> int:
    cfg = _config(args)
    spec = _load_scan(args, cfg)
    log.info("scanning primes up to %d", spec.bound)
    records, summary = scan(spec, workers=args.workers)
    csv_text = _csv(CSV_COLUMNS, (rec.csv_row() for rec in records))
    if args.csv_log:
        Path(args.csv_log).write_text(csv_text)
    fmt = cfg.fmt or "json"
    if fmt == "csv":
        _emit(csv_text, cfg.out)
    else:
        _emit(_json(summary.to_dict()), cfg.out)
    status = EXIT_OK
    if cfg.assert_split and not summary.all_split:
        log.warning("%d unramified primes are not split", len(summary.nonsplit_primes))
        status = EXIT_ASSERT
    if cfg.assert_density:
        target, tol = cfg.assert_density
        if not _density_ok(summary.split_density, target, tol if tol is not None else spec.tolerance):
            status = EXIT_ASSERT
    if summary.cross_validation is not None and not summary.cross_validation.passed:
        status = EXIT_ASSERT
    return status


def cmd_cross_validate(args) -> int:
    cfg = _config(args)
    spec = _load_scan(args, cfg)
    if spec.model is None:
        raise InputError("cross-validate needs a model (--model or 'model' in the scan spec)")
    records, _ = scan(spec, workers=args.workers)
    report = cross_validate(records, spec.model, spec.tolerance, spec.r)
    fmt = cfg.fmt or "json"
    if fmt == "csv":
        rows = [[row.key, " ".join(map(str, row.classes)), row.predicted, row.count,
                 f"{row.empirical:.6f}", str(row.member).lower(), str(row.ok).lower()]
                for row in report.rows]
        _emit(_csv(["pattern", "classes", "predicted", "count", "empirical", "member", "ok"], rows), cfg.out)
    else:
        _emit(_json(report.to_dict()), cfg.out)
    return EXIT_OK if report.passed else EXIT_ASSERT


def cmd_hasse(args) -> int:
    cfg = _config(args)
    data = load_group(args.input)
    G = data.group
    group_name = data.name or args.input
    if args.family:
        targets = [(None, H) for H in subgroup_family(G) if H.is_proper()]
    elif args.subgroup:
        targets = [(name, data.subgroup(name)) for name in args.subgroup]
    else:
        targets = [(name, H) for name, H in data.subgroups.items() if H.is_proper()]
        if not targets:
            raise InputError("group file names no proper subgroups; use --subgroup or --family")
    certs = [fks_witness(G, H).to_dict(group_name, name) for name, H in targets]
    payload = certs[0] if len(certs) == 1 and not args.family else certs
    fmt = cfg.fmt or "json"
    if fmt == "csv":
        _emit(_csv(["subgroup", "witness", "prime", "certified_index"],
                   [[json.dumps(c["subgroup"]) if isinstance(c["subgroup"], dict) else c["subgroup"],
                     c["witness"], c["prime"], c["certified_index"]] for c in certs]), cfg.out)
    else:
        _emit(_json(payload), cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, default=None, help="target cycle degree (default 1)")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    asserts = argparse.ArgumentParser(add_help=False)
    asserts.add_argument("--assert-split", action="store_true",
                         help="exit 1 unless the verdict is split")
    asserts.add_argument("--assert-density", metavar="Q[±TOL]",
                         help="exit 1 unless the density matches, e.g. 1/3 or 0.33+-0.02")

    scanning = argparse.ArgumentParser(add_help=False)
    scanning.add_argument("--primes-up-to", type=int, default=None)
    scanning.add_argument("--tolerance", type=float, default=None,
                          help=f"absolute frequency tolerance (default {DEFAULT_TOLERANCE})")
    scanning.add_argument("--model", help="fibre spec to cross-validate against")
    scanning.add_argument("--workers", type=int, default=None,
                          help="parallel workers (default $CYCLESPLIT_THREADS or 1; capped by it when set)")

    parser = argparse.ArgumentParser(prog="cyclesplit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-analyze", parents=[common, asserts],
                       help="per-class combinatorial index and split verdict of a fibre spec")
    p.add_argument("input", help="fibre spec JSON (path or bundled name)")
    p.set_defaults(func=cmd_group_analyze)

    p = sub.add_parser("density", parents=[common, asserts],
                       help="exact density of r-cycle-split Frobenius classes")
    p.add_argument("input", help="fibre spec JSON")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("scan", parents=[common, asserts, scanning],
                       help="factor the defining polynomials modulo every prime up to a bound")
    p.add_argument("input", help="scan spec JSON")
    p.add_argument("--csv-log", help="also write the per-prime CSV log here")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("cross-validate", parents=[common, scanning],
                       help="compare empirical Frobenius patterns with a group model")
    p.add_argument("input", help="scan spec JSON")
    p.set_defaults(func=cmd_cross_validate)

    p = sub.add_parser("hasse", parents=[common],
                       help="prime-power witness that a connected algebra is not locally split")
    p.add_argument("input", help="group JSON")
    p.add_argument("--subgroup", action="append", help="named subgroup (repeatable)")
    p.add_argument("--family", action="store_true",
                   help="certify every proper subgroup")
    p.set_defaults(func=cmd_hasse)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InternalExhaustion:
        raise
    except CycleSplitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
