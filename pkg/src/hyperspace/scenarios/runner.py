"""Run scenarios and render their reports as a table, CSV or JSON."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass

from .model import Binder, CheckSpec, Scenario
from .ops import OPS, OpResult

#: Fixed CSV column order.
CSV_COLUMNS = ("scenario", "check_id", "outcome", "lo", "hi", "witness", "ms")


@dataclass(frozen=True)
class Row:
    check_id: str
    op: str
    outcome: str
    expected: str
    met: bool
    lo: float | None
    hi: float | None
    witness: str
    ms: float | None


@dataclass(frozen=True)
class Report:
    scenario: str
    rows: tuple[Row, ...]

    @property
    def all_expected_met(self) -> bool:
        return all(r.met for r in self.rows)

    def render(self, fmt: str = "table") -> str:
        if fmt == "table":
            return self.to_table()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")

    def to_table(self) -> str:
        head = ("check", "op", "outcome", "expected", "met", "lo", "hi", "ms", "witness")
        body = [(r.check_id, r.op, r.outcome, r.expected, "yes" if r.met else "NO",
                 _num(r.lo), _num(r.hi), _ms(r.ms), r.witness) for r in self.rows]
        widths = [max(len(str(x)) for x in col) for col in zip(head, *body)]
        widths[-1] = 0  # the witness column is left ragged
        lines = [f"scenario {self.scenario}"]
        for row in (head, *body):
            lines.append("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip())
        lines.append(f"all expected met: {'yes' if self.all_expected_met else 'no'}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow((self.scenario, r.check_id, r.outcome, _num(r.lo), _num(r.hi), r.witness, _ms(r.ms)))
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for r in self.rows:
            d = asdict(r)
            rows.append({"scenario": self.scenario, **{k: d[k] for k in CSV_COLUMNS[1:]},
                         "op": r.op, "expected": r.expected, "met": r.met})
        return json.dumps({"scenario": self.scenario, "rows": rows,
                           "all_expected_met": self.all_expected_met}, indent=2) + "\n"


def _num(v) -> str:
    return "" if v is None else repr(float(v))


def _ms(v) -> str:
    return "" if v is None else f"{v:.1f}"


def expectation_met(check: CheckSpec, result: OpResult) -> bool:
    if result.outcome == "error":
        return False
    if check.expect == "unchecked":
        return True
    if check.expect in ("pass", "fail"):
        return result.outcome == check.expect
    if result.lo is None:
        return False
    if check.bounds is not None and not (check.bounds[0] <= result.lo and result.hi <= check.bounds[1]):
        return False
    if check.contains is not None and not (result.lo <= check.contains <= result.hi):
        return False
    return True


def run_check(binder: Binder, check: CheckSpec) -> OpResult:
    op = OPS.get(check.op)
    if op is None:
        return OpResult("error", witness=f"unknown op {check.op!r}")
    try:
        return op(binder, dict(check.args))
    except (ValueError, TypeError, KeyError, IndexError, ArithmeticError) as exc:
        return OpResult("error", witness=f"{type(exc).__name__}: {exc}")


def run_scenario(scenario: Scenario, timing: bool = True) -> Report:
    """Execute the checks in order; errors are reported per row.

    With ``timing=False`` the ``ms`` column is left empty, which makes the
    rendered report byte-identical across runs with the same seed.
    """
    binder = Binder(scenario)
    rows = []
    for check in scenario.checks:
        t0 = time.perf_counter()
        result = run_check(binder, check)
        ms = (time.perf_counter() - t0) * 1000.0 if timing else None
        rows.append(Row(check.id, check.op, result.outcome, check.expect, expectation_met(check, result),
                        result.lo, result.hi, result.witness, ms))
    return Report(scenario.name, tuple(rows))
