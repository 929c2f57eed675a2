"""Command reports in a versioned machine format (``report-v1``) and as plain text."""
import json
from dataclasses import dataclass, field

from .checks import CheckReport

SCHEMA = "report-v1"
EXIT_PASS, EXIT_LAW, EXIT_STRUCTURAL = 0, 1, 2


@dataclass
class Report:
    command: str
    args: list = field(default_factory=list)
    checks: CheckReport = field(default_factory=CheckReport)
    data: dict = field(default_factory=dict)
    error: dict | None = None

    @property
    def exit_code(self):
        if self.error is not None:
            return EXIT_STRUCTURAL if self.error.get("kind") == "structural" else EXIT_LAW
        return EXIT_PASS if self.checks.ok else EXIT_LAW

    @property
    def status(self):
        return {EXIT_PASS: "pass", EXIT_LAW: "fail", EXIT_STRUCTURAL: "error"}[self.exit_code]

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "command": self.command,
            "args": list(self.args),
            "status": self.status,
            "exit_code": self.exit_code,
            "checks": self.checks.to_dict()["entries"],
            "data": self.data,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["command"], list(d["args"]), CheckReport.from_dict({"entries": d["checks"]}),
                   d["data"], d["error"])

    def __eq__(self, other):
        return isinstance(other, Report) and _jsonable(self.to_dict()) == _jsonable(other.to_dict())


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if hasattr(x, "item"):
        return x.item()
    return x


def emit_machine(report):
    return json.dumps(_jsonable(report.to_dict()), indent=2, sort_keys=True,
                      ensure_ascii=False) + "\n"


def parse_report(text):
    return Report.from_dict(json.loads(text))


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _grid_table(grid):
    labels = grid["labels"]
    rows = grid["rows"]
    w = max(len(s) for s in labels) + 1
    head = "α\\β".ljust(w) + " ".join(s.rjust(w) for s in labels)
    lines = [head]
    for a, row in zip(labels, rows):
        lines.append(a.ljust(w) + " ".join(("yes" if v else "no").rjust(w) for v in row))
    return lines


def _emit_data(data, prefix, lines):
    for key in sorted(data):
        val = data[key]
        name = prefix + str(key)
        if isinstance(val, dict) and "rows" in val and "labels" in val:
            lines.append(f"{name}:")
            lines.extend("  " + s for s in _grid_table(val))
        elif isinstance(val, dict):
            _emit_data(val, name + ".", lines)
        elif isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{name}:")
            lines.extend(f"  {_fmt(r)}" for r in val)
        else:
            lines.append(f"{name}: {_fmt(val)}")


def emit_text(report):
    lines = [f"fuzztop {SCHEMA}: {report.command} {' '.join(report.args)}".rstrip(),
             f"status: {report.status} (exit {report.exit_code})"]
    if report.error is not None:
        lines.append(f"error: {report.error['type']}: {report.error['message']}")
        if report.error.get("witness") is not None:
            lines.append(f"  witness: {_fmt(report.error['witness'])}")
    if len(report.checks):
        lines.append("checks:")
        for e in report.checks:
            mark = "PASS" if e.passed else "FAIL"
            tag = "" if e.kind == "law" else f" [{e.kind}]"
            line = f"  [{mark}] {e.law}{tag}"
            if e.witness is not None:
                line += f"  witness={_fmt(e.witness)}"
            if e.detail:
                line += f"  ({e.detail})"
            lines.append(line)
    _emit_data(report.data, "", lines)
    return "\n".join(lines) + "\n"


def emit_report(report, fmt="text"):
    if fmt == "machine":
        return emit_machine(report)
    if fmt == "text":
        return emit_text(report)
    raise ValueError(f"unknown format {fmt!r}")
