"""Command-line front end.

Every subcommand emits one record per result line in ``text``, ``json`` (one
object per line, keys sorted) or ``csv`` (header from the first record,
nested values JSON-encoded).  Exit status: 0 success, 1 domain error, 2 usage
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Optional, TextIO

from . import davenport as dav
from .effective_bounds import crossover_report, deng_zeng_gate, jacobsthal, rho_upper_bound
from .errors import DomainError
from .ordering import order_for, verify_window
from .record_search import exists_partner, min_partner
from .rho_chi import Interval, chi, rho
from .zsseq import extremal_construct, parse_seq


@dataclass
class OutputRecord:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    provenance: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        return {"command": self.command, "inputs": self.inputs,
                "results": self.results, "provenance": self.provenance}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def flat(self) -> dict[str, Any]:
        row: dict[str, Any] = {"command": self.command}
        for prefix, part in (("in", self.inputs), ("out", self.results)):
            for key in sorted(part):
                value = part[key]
                if isinstance(value, (list, dict)):
                    value = json.dumps(value, sort_keys=True)
                elif value is None:
                    value = ""
                row[f"{prefix}.{key}"] = value
        row["provenance"] = ";".join(self.provenance)
        return row


class Emitter:
    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream
        self._csv: Optional[csv.DictWriter] = None

    def emit(self, record: OutputRecord) -> None:
        if self.fmt == "json":
            self.stream.write(record.to_json() + "\n")
        elif self.fmt == "csv":
            row = record.flat()
            if self._csv is None or list(row) != self._csv.fieldnames:
                # a record of a different shape opens a new header block
                if self._csv is not None:
                    self.stream.write("\n")
                self._csv = csv.DictWriter(self.stream, fieldnames=list(row), lineterminator="\n")
                self._csv.writeheader()
            self._csv.writerow(row)
        else:
            parts = [f"{k}={_text(v)}" for k, v in sorted(record.inputs.items())]
            parts += [f"{k}={_text(v)}" for k, v in sorted(record.results.items())]
            self.stream.write(f"{record.command}: " + " ".join(parts) + "\n")
        self.stream.flush()


def _text(value: Any) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def _finite(x: Optional[float]) -> Any:
    if x is None or math.isinf(x):
        return None if x is None else "inf"
    return x


# record builders; module-level so worker processes can pickle them

def rho_record(m: int, M: int) -> OutputRecord:
    w = rho(Interval(m, M))
    return OutputRecord("rho", {"m": m, "M": M},
                        {"t": w.t, "t_prime": w.t_prime, "t_second": w.t_second},
                        ["rho:definition"])


def chi_record(m: int, M: int) -> OutputRecord:
    iv = Interval(m, M)
    value = chi(iv)
    t = rho(iv).t
    return OutputRecord("chi", {"m": m, "M": M},
                        {"chi": value, "m_plus_M_minus_rho": m + M - t,
                         "agrees": value == m + M - t},
                        ["chi:definition", "chi:reformulation"])


def davenport_record(m: int, M: int, oracle: bool, extremal: bool, budget: int,
                     desk_limit: int) -> OutputRecord:
    iv = Interval(m, M)
    results: dict[str, Any] = {"formula": dav.davenport_formula(iv),
                               "lower_bound_sequence": str(extremal_construct(iv))}
    prov = ["davenport:closed-formula", "davenport:lower-bound-construction"]
    if oracle or extremal:
        if m + M > desk_limit:
            results["oracle"] = None
            results["oracle_refused"] = f"m + M > desk limit {desk_limit}"
        else:
            report = dav.davenport_report(iv, oracle=True, extremal=extremal,
                                          budget=budget, desk_limit=desk_limit)
            results["oracle"] = report.oracle_value
            results["agrees"] = report.agrees
            prov.append("davenport:exhaustive-oracle")
            if extremal:
                seqs = dav.enumerate_extremal(iv, budget, desk_limit)
                results["extremal_count"] = len(seqs)
                results["extremal"] = [str(s) for s in seqs]
                prov.append("davenport:inverse-structure")
    return OutputRecord("davenport", {"m": m, "M": M}, results, prov)


def verify_record(m: int, M: int, budget: int, desk_limit: int) -> OutputRecord:
    iv = Interval(m, M)
    formula = dav.davenport_formula(iv)
    oracle = dav.davenport_oracle(iv, budget, desk_limit)
    return OutputRecord("verify", {"m": m, "M": M},
                        {"formula": formula, "oracle": oracle, "agrees": formula == oracle},
                        ["davenport:closed-formula", "davenport:exhaustive-oracle"])


def search_record(m: int, r: int, want_min: bool) -> Optional[OutputRecord]:
    table = exists_partner(m, r)
    if table is None:
        return None
    results: dict[str, Any] = {"exists": True, "table": table.rows()}
    if want_min:
        M, best = min_partner(m, r)
        results["M"] = M
        results["rho"] = rho(Interval(m, M)).t
        results["table"] = best.rows()
    return OutputRecord("search", {"m": m, "r": r}, results,
                        ["record:prime-table", "record:crt-witness"])


def _parallel_map(fn: Callable, items: list, jobs: int) -> Iterator:
    if jobs <= 1 or len(items) < 2:
        for item in items:
            yield fn(*item)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(items) // (jobs * 8))
        yield from pool.map(_star, [(fn, item) for item in items], chunksize=chunk)


def _star(job):
    fn, args = job
    return fn(*args)


def _cmd_rho(args, out: Emitter) -> int:
    out.emit(rho_record(args.m, args.M))
    return 0


def _cmd_chi(args, out: Emitter) -> int:
    out.emit(chi_record(args.m, args.M))
    return 0


def _cmd_davenport(args, out: Emitter) -> int:
    rec = davenport_record(args.m, args.M, args.oracle, args.extremal, args.budget, args.desk_limit)
    if "oracle_refused" in rec.results:
        print(f"warning: oracle refused ({rec.results['oracle_refused']}); formula only",
              file=sys.stderr)
    out.emit(rec)
    return 0


def _cmd_order(args, out: Emitter) -> int:
    seq = parse_seq(args.seq)
    if args.interval:
        iv = Interval(*args.interval)
    else:
        iv = Interval(max(1, -seq.items[0][0]), max(1, seq.items[-1][0]))
    res = order_for(args.lemma, seq, iv)
    out.emit(OutputRecord(
        "order", {"lemma": args.lemma, "seq": str(seq), "m": iv.m, "M": iv.M},
        {"order": res.values, "occurrences": [i for _, i in res.order],
         "prefix_sums": res.prefix_sums, "window_lo": res.window_lo,
         "window_hi": res.window_hi, "case_label": res.case_label,
         "valid": verify_window(seq, res)},
        [f"ordering:lemma{args.lemma}"]))
    return 0


def _cmd_jacobsthal(args, out: Emitter) -> int:
    for n in args.n:
        rep = jacobsthal(n)
        out.emit(OutputRecord(
            "jacobsthal", {"n": n},
            {"g": rep.g, "omega": rep.omega, "kanold_bound": rep.kanold_bound,
             "stevens_bound": _finite(rep.stevens_bound),
             "robin_omega_bound": _finite(rep.robin_omega_bound),
             "kanold_holds": rep.kanold_holds, "robin_holds": rep.robin_holds},
            ["jacobsthal:definition", "jacobsthal:kanold", "jacobsthal:stevens", "omega:robin"]))
    return 0


def _cmd_gate(args, out: Emitter) -> int:
    iv = Interval(args.m, args.M)
    t = rho(iv).t
    bound = rho_upper_bound(iv)
    x = min(args.m, args.M)
    out.emit(OutputRecord(
        "bounds-gate", {"m": args.m, "M": args.M},
        {"rho": t, "threshold": math.sqrt(x + 5) - 3, "gate": deng_zeng_gate(iv, t),
         "jacobsthal_bound": bound.sharp, "small_min_bound": bound.small_min_bound,
         "large_min_bound": _finite(bound.large_min_bound)},
        ["gate:deng-zeng-hypothesis", "rho:jacobsthal-bound"]))
    return 0


def _cmd_search(args, out: Emitter) -> int:
    r = args.rho_at_least
    ms = [args.m] if args.m else list(range(2, args.m_max + 1))
    jobs = [(m, r, args.min_partner) for m in ms]
    found = 0
    for rec in _parallel_map(search_record, jobs, args.jobs):
        if rec is None:
            continue
        found += 1
        out.emit(rec)
        if args.tables_dir:
            _write_table(Path(args.tables_dir), rec)
    if not found:
        out.emit(OutputRecord("search", {"r": r, "m_max": max(ms)},
                              {"exists": False, "count": 0}, ["record:prime-table"]))
    return 0


def _write_table(folder: Path, rec: OutputRecord) -> None:
    from .record_search import PrimeTable

    m, r = rec.inputs["m"], rec.inputs["r"]
    rows = rec.results["table"]
    cells = tuple(((tp, ts), p) for tp, row in enumerate(rows) for ts, p in enumerate(row)
                  if p is not None)
    folder.mkdir(parents=True, exist_ok=True)
    (folder / f"table_m{m}_r{r}.csv").write_text(PrimeTable(m, r, cells).to_csv())


def _cmd_verify(args, out: Emitter) -> int:
    pairs = [(m, M, args.budget, args.desk_limit)
             for m in range(1, args.m_max + 1) for M in range(1, args.M_max + 1)]
    mismatches = 0
    for rec in _parallel_map(verify_record, pairs, args.jobs):
        mismatches += not rec.results["agrees"]
        out.emit(rec)
    out.emit(OutputRecord("verify-summary", {"m_max": args.m_max, "M_max": args.M_max},
                          {"pairs": len(pairs), "mismatches": mismatches},
                          ["davenport:closed-formula", "davenport:exhaustive-oracle"]))
    return 0 if mismatches == 0 else 1


def _cmd_crossover(args, out: Emitter) -> int:
    rep = crossover_report()
    out.emit(OutputRecord("crossover-check", {},
                          {"constant_range_ok": rep.constant_range_ok,
                           "constant_boundary": rep.constant_boundary,
                           "below_boundary_fails": rep.below_boundary_fails,
                           "at_1150_ok": rep.at_1150_ok, "grid_ok": rep.grid_ok,
                           "monotone": rep.monotone, "grid_points": rep.grid_points,
                           "min_margin": rep.min_margin, "passed": rep.passed},
                          ["gate:constant-crossover", "gate:exponential-crossover"]))
    return 0 if rep.passed else 1


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    def shared(with_defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the flags without defaults so they cannot mask earlier ones
        def d(value):
            return value if with_defaults else argparse.SUPPRESS

        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--format", choices=("text", "json", "csv"), default=d("text"))
        p.add_argument("--jobs", type=_positive, default=d(os.cpu_count() or 1),
                       help="worker processes for scans (output order is fixed)")
        p.add_argument("--budget", type=_positive, default=d(dav.NODE_BUDGET),
                       help="node limit for exhaustive searches")
        p.add_argument("--desk-limit", type=_positive, default=d(dav.DESK_LIMIT),
                       help="largest m + M the exhaustive oracle accepts")
        return p

    common = shared(False)
    parser = argparse.ArgumentParser(prog="zsinterval", parents=[shared(True)],
                                     description="Zero-sum sequences over integer intervals.")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair(name: str, help_: str, fn) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("m", type=_positive)
        p.add_argument("M", type=_positive)
        p.set_defaults(fn=fn)
        return p

    pair("rho", "minimal coprime split defect", _cmd_rho)
    pair("chi", "supremum of (|x|+|y|)/gcd over opposite-sign pairs", _cmd_chi)
    p = pair("davenport", "Davenport constant by formula and optionally by oracle", _cmd_davenport)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--extremal", action="store_true", help="list all extremal sequences")
    pair("bounds-gate", "Deng-Zeng hypothesis check and rho upper bounds", _cmd_gate)

    p = sub.add_parser("order", parents=[common], help="ordering constructions")
    p.add_argument("--lemma", type=int, choices=(2, 3, 4), required=True)
    p.add_argument("--seq", required=True, help='sequence text, e.g. "1,2,-3" or "5^4,-4^5"')
    p.add_argument("--interval", type=_positive, nargs=2, metavar=("m", "M"),
                   help="defaults to the sequence's own extent")
    p.set_defaults(fn=_cmd_order)

    p = sub.add_parser("jacobsthal", parents=[common], help="Jacobsthal function report")
    p.add_argument("n", type=_positive, nargs="+")
    p.set_defaults(fn=_cmd_jacobsthal)

    p = sub.add_parser("search", parents=[common], help="prime-table partner search")
    p.add_argument("--rho-at-least", type=_positive, required=True, metavar="R")
    p.add_argument("--m-max", type=_positive, default=319)
    p.add_argument("--m", type=_positive, help="search a single m instead of 2..m-max")
    p.add_argument("--min-partner", action="store_true", help="also report the least partner M")
    p.add_argument("--tables-dir", help="write each table as CSV into this folder")
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("verify", parents=[common], help="oracle versus formula on a grid")
    p.add_argument("--m-max", type=_positive, default=7)
    p.add_argument("--M-max", type=_positive, default=7)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("crossover-check", parents=[common], help="gate threshold crossovers")
    p.set_defaults(fn=_cmd_crossover)
    return parser


def run(argv: Iterable[str], stream: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Emitter(args.format, stream or sys.stdout)
    try:
        return args.fn(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Optional[list[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
