"""Command-line front end: dominance checks, certificates, Lorenz data, batch reports.

Timeline CSV schema: first column is an entity id, the remaining N columns
are period values with the most recent period first.  A header row is
auto-detected when any cell after the first in the first row is non-numeric.

Inline array literals are comma-separated decimals with no brackets, e.g.
``4,4,4,4``.  Where a command takes an array, an entity id from ``--input``
may be given instead.

The environment variable ``MAJORIZE_EPS`` overrides the default comparison
tolerance; ``--eps`` overrides both.

Exit codes: 0 success (dominated/equal, valid certificate), 1 negative
result (not dominated, invalid certificate, undefined curve), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    DEFAULT_EPS,
    Array,
    DominanceOutcome,
    MajorizeError,
    Tolerance,
    generalized_compare,
    make_array,
)
from .decompose import (
    Certificate,
    MalformedCertificate,
    NotDominated,
    SumsNotEqual,
    TargetNotDecreasing,
    decompose_decreasing,
    decompose_general,
    decompose_transfers,
    random_dominated_pair,
    verify_certificate,
)
from .lorenz import ZeroTotal, classical_majorizes, gini, lorenz_points

_OUTCOME_SYMBOL = {
    DominanceOutcome.EQUAL: "=",
    DominanceOutcome.LEFT_STRICTLY_BELOW: "≺",   # ≺
    DominanceOutcome.RIGHT_STRICTLY_BELOW: "≻",  # ≻
    DominanceOutcome.INCOMPARABLE: "∥",          # ∥
}


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------

def fmt_number(v: float) -> str:
    """Display form: 12 significant digits, integral values without a point."""
    return str(int(v)) if float(v).is_integer() else f"{float(v):.12g}"


def fmt_number_exact(v: float) -> str:
    """Lossless form for files and regeneratable output."""
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _fmt_chain_array(arr: Array) -> str:
    return "(" + ",".join(fmt_number(v) for v in arr) + ")"


def _fmt_literal(arr: Array) -> str:
    return ",".join(fmt_number_exact(v) for v in arr)


# ---------------------------------------------------------------------------
# Timeline tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimelineTable:
    """Entities with equal-length value rows; column 1 is the most recent period."""

    entities: tuple[tuple[str, Array], ...]
    period_labels: Optional[tuple[str, ...]] = None

    def get(self, entity_id: str) -> Optional[Array]:
        for eid, arr in self.entities:
            if eid == entity_id:
                return arr
        return None


def parse_timeline_csv(text: str) -> TimelineTable:
    rows = [(num, row) for num, row in enumerate(csv.reader(io.StringIO(text)), start=1)
            if any(cell.strip() for cell in row)]
    if not rows:
        raise MajorizeError("empty timeline CSV")

    labels: Optional[tuple[str, ...]] = None
    first_num, first_row = rows[0]
    # a header is marked by the conventional "id" corner cell or by any
    # non-numeric cell after it (period labels may themselves look numeric)
    is_header = len(first_row) >= 2 and (
        first_row[0].strip().lower() == "id" or any(not _is_number(c) for c in first_row[1:])
    )
    if is_header:
        labels = tuple(c.strip() for c in first_row[1:])
        rows = rows[1:]
        if not rows:
            raise MajorizeError("timeline CSV has a header but no data rows")

    entities: list[tuple[str, Array]] = []
    seen: set[str] = set()
    width: Optional[int] = None
    for num, row in rows:
        if len(row) < 2:
            raise MajorizeError(f"row {num}: expected an id and at least one value")
        eid = row[0].strip()
        if eid in seen:
            raise MajorizeError(f"row {num}: duplicate id {eid!r}")
        seen.add(eid)
        if width is None:
            width = len(row) - 1
            if labels is not None and len(labels) != width:
                raise MajorizeError(f"row {num}: {len(row) - 1} values but {len(labels)} period labels")
        elif len(row) - 1 != width:
            raise MajorizeError(f"row {num}: {len(row) - 1} values, expected {width}")
        try:
            values = [float(c) for c in row[1:]]
        except ValueError as exc:
            raise MajorizeError(f"row {num}: {exc}") from exc
        try:
            entities.append((eid, make_array(values)))
        except MajorizeError as exc:
            raise MajorizeError(f"row {num}: {exc}") from exc
    return TimelineTable(tuple(entities), labels)


def serialize_timeline_csv(table: TimelineTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if table.period_labels is not None:
        writer.writerow(["id", *table.period_labels])
    for eid, arr in table.entities:
        writer.writerow([eid, *(fmt_number_exact(v) for v in arr)])
    return buf.getvalue()


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# Operand handling
# ---------------------------------------------------------------------------

def parse_array_literal(token: str) -> Array:
    try:
        return make_array(float(part) for part in token.split(","))
    except MajorizeError:
        raise
    except ValueError as exc:
        raise MajorizeError(f"cannot parse array literal {token!r}: {exc}") from exc


def _resolve_operand(token: str, table: Optional[TimelineTable]) -> Array:
    if table is not None:
        arr = table.get(token)
        if arr is not None:
            return arr
    try:
        return parse_array_literal(token)
    except MajorizeError as exc:
        if table is not None:
            raise MajorizeError(f"{token!r} is neither an entity id nor an array literal: {exc}")
        raise


def _load_table(args) -> Optional[TimelineTable]:
    if getattr(args, "input", None) is None:
        return None
    try:
        text = open(args.input, encoding="utf-8").read()
    except OSError as exc:
        raise _CliError(2, f"cannot read {args.input}: {exc}")
    try:
        return parse_timeline_csv(text)
    except MajorizeError as exc:
        raise _CliError(2, f"{args.input}: {exc}")


def _operands(args, table: Optional[TimelineTable]) -> tuple[Array, Array]:
    try:
        left = _resolve_operand(args.left, table)
        right = _resolve_operand(args.right, table)
    except MajorizeError as exc:
        raise _CliError(2, str(exc))
    if len(left) != len(right):
        raise _CliError(2, f"arrays have different lengths: {len(left)} vs {len(right)}")
    return left, right


def _tolerance(args) -> Tolerance:
    if args.eps is not None:
        eps = args.eps
    else:
        raw = os.environ.get("MAJORIZE_EPS")
        if raw is None:
            eps = DEFAULT_EPS
        else:
            try:
                eps = float(raw)
            except ValueError:
                raise _CliError(2, f"MAJORIZE_EPS is not a number: {raw!r}")
    try:
        return Tolerance(eps)
    except MajorizeError as exc:
        raise _CliError(2, str(exc))


def _write_file(path: str, content: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)
    except OSError as exc:
        raise _CliError(2, f"cannot write {path}: {exc}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_check(args) -> int:
    tol = _tolerance(args)
    left, right = _operands(args, _load_table(args))
    if args.mode == "classical":
        verdict = classical_majorizes(left, right, tol)
        below = verdict
        text = "true" if verdict else "false"
    else:
        outcome = generalized_compare(left, right, tol)
        below = outcome in (DominanceOutcome.EQUAL, DominanceOutcome.LEFT_STRICTLY_BELOW)
        text = outcome.value
    if args.json:
        print(json.dumps({"mode": args.mode, "verdict": text if args.mode != "classical" else verdict}))
    else:
        print(text)
    return 0 if below else 1


def _cmd_decompose(args) -> int:
    tol = _tolerance(args)
    left, right = _operands(args, _load_table(args))
    produce = {
        "general": decompose_general,
        "decreasing": decompose_decreasing,
        "transfers": decompose_transfers,
    }[args.mode]
    try:
        cert = produce(left, right, tol)
    except (NotDominated, TargetNotDecreasing, SumsNotEqual) as exc:
        raise _CliError(1, str(exc))
    if cert.steps:
        chain = [_fmt_chain_array(cert.source)] + [_fmt_chain_array(z) for z in cert.intermediates]
        print(" ≺ ".join(chain))
    else:
        print("already equal")
    if args.out:
        _write_file(args.out, cert.to_json(indent=2) + "\n")
    return 0


def _cmd_verify(args) -> int:
    tol = _tolerance(args)
    try:
        text = open(args.cert, encoding="utf-8").read()
    except OSError as exc:
        raise _CliError(2, f"cannot read {args.cert}: {exc}")
    try:
        cert = Certificate.from_json(text)
    except MalformedCertificate as exc:
        raise _CliError(2, f"{args.cert}: {exc}")
    report = verify_certificate(cert, tol)
    if report.ok:
        print(f"certificate OK ({report.checked_steps} steps checked)")
        return 0
    f = report.failure
    where = "certificate" if f.step_index is None else f"step {f.step_index}"
    print(f"certificate INVALID: {f.reason.value} at {where}: {f.detail}")
    return 1


def _cmd_lorenz(args) -> int:
    _tolerance(args)  # validate --eps/MAJORIZE_EPS even though the curve is tolerance-free
    try:
        arr = _resolve_operand(args.array, None)
    except MajorizeError as exc:
        raise _CliError(2, str(exc))
    try:
        curve = lorenz_points(arr)
        g = gini(arr)
    except ZeroTotal as exc:
        raise _CliError(1, str(exc))
    if args.format == "json":
        payload = json.dumps({"points": [[a, o] for a, o in curve], "gini": g}) + "\n"
    else:
        payload = curve.to_csv()
    if args.out:
        _write_file(args.out, payload)
    else:
        sys.stdout.write(payload)
    print(f"gini = {fmt_number(g)}")
    return 0


def _cmd_batch(args) -> int:
    tol = _tolerance(args)
    table = _load_table(args)
    if table is None:
        raise _CliError(2, "batch mode requires --input")
    ids = [eid for eid, _ in table.entities]
    arrays = [arr for _, arr in table.entities]
    matrix: list[list[str]] = []
    for x in arrays:
        row = []
        for y in arrays:
            if args.mode == "classical":
                below = classical_majorizes(x, y, tol)
                above = classical_majorizes(y, x, tol)
                if below and above:
                    sym = "="
                elif below:
                    sym = "≺"
                elif above:
                    sym = "≻"
                else:
                    sym = "∥"
            else:
                sym = _OUTCOME_SYMBOL[generalized_compare(x, y, tol)]
            row.append(sym)
        matrix.append(row)
    print("\t".join(["id", *ids]))
    for eid, row in zip(ids, matrix):
        print("\t".join([eid, *row]))
    if args.out:
        report = {"mode": args.mode, "eps": tol.eps, "ids": ids, "matrix": matrix}
        _write_file(args.out, json.dumps(report, ensure_ascii=False, indent=2) + "\n")
    return 0


def _cmd_gen(args) -> int:
    if args.n < 1:
        raise _CliError(2, f"--n must be >= 1, got {args.n}")
    if args.k < 0 or args.count < 1:
        raise _CliError(2, "--k must be >= 0 and --count >= 1")
    lines = []
    for idx in range(args.count):
        x, y = random_dominated_pair(
            args.seed + idx, args.n, args.k,
            integer_mode=not args.float,
            transfers_only=args.transfers_only,
        )
        lines.append(f"{_fmt_literal(x)} {_fmt_literal(y)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_file(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="majorize",
        description="Dominance checks, step certificates, and Lorenz/Gini data "
                    "for non-negative arrays and timelines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_eps(p):
        p.add_argument("--eps", type=float, default=None,
                       help="absolute comparison tolerance (default: MAJORIZE_EPS or 1e-9)")

    p = sub.add_parser("check", help="compare two arrays")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--mode", choices=["general", "classical"], default="general")
    p.add_argument("--input", help="timeline CSV for entity-id operands")
    p.add_argument("--json", action="store_true", help="emit the verdict as JSON")
    add_eps(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decompose", help="produce a step certificate for a dominated pair")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--mode", choices=["general", "decreasing", "transfers"], default="general")
    p.add_argument("--input", help="timeline CSV for entity-id operands")
    p.add_argument("--out", help="write the certificate JSON to this file")
    add_eps(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="verify a certificate file")
    p.add_argument("--cert", required=True, help="certificate JSON file")
    add_eps(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lorenz", help="emit Lorenz curve points and the Gini index")
    p.add_argument("array")
    p.add_argument("--out", help="write curve points to this file")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    add_eps(p)
    p.set_defaults(func=_cmd_lorenz)

    p = sub.add_parser("batch", help="pairwise dominance matrix for a timeline CSV")
    p.add_argument("--input", required=True, help="timeline CSV")
    p.add_argument("--mode", choices=["general", "classical"], default="general")
    p.add_argument("--out", help="write a JSON report to this file")
    add_eps(p)
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("gen", help="emit random dominated pairs")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="array length")
    p.add_argument("--k", type=int, default=0, help="number of inverse moves")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--float", action="store_true", help="draw float entries instead of integers")
    p.add_argument("--transfers-only", action="store_true",
                   help="restrict inverse moves to transfers (equal totals)")
    p.add_argument("--out", help="write pairs to this file")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except MajorizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
