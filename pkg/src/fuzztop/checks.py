"""Verdict containers shared by every law audit."""
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Pass flag plus the witness that refutes it; truthy iff passed."""
    passed: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


@dataclass
class CheckEntry:
    law: str
    passed: bool
    witness: tuple | None = None
    # "law" entries decide CheckReport.ok; "condition" and "info" entries are
    # recorded verdicts (e.g. "F is continuous") that may legitimately be false.
    kind: str = "law"
    detail: str = ""

    def to_dict(self):
        return {
            "law": self.law,
            "passed": self.passed,
            "witness": None if self.witness is None else list(self.witness),
            "kind": self.kind,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, d):
        w = d.get("witness")
        return cls(d["law"], bool(d["passed"]), None if w is None else _tuplify(w),
                   d.get("kind", "law"), d.get("detail", ""))


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


@dataclass
class CheckReport:
    entries: list = field(default_factory=list)

    def add(self, law, passed, witness=None, kind="law", detail=""):
        passed = bool(passed)
        if not passed and witness is None and kind != "info":
            raise ValueError(f"failed entry {law!r} needs a witness")
        self.entries.append(CheckEntry(law, passed, witness, kind, detail))
        return passed

    def extend(self, other, prefix=""):
        for e in other.entries:
            self.entries.append(CheckEntry(prefix + e.law, e.passed, e.witness, e.kind, e.detail))

    @property
    def ok(self):
        return all(e.passed for e in self.entries if e.kind == "law")

    @property
    def failures(self):
        return [e for e in self.entries if e.kind == "law" and not e.passed]

    def __getitem__(self, law):
        for e in self.entries:
            if e.law == law:
                return e
        raise KeyError(law)

    def __contains__(self, law):
        return any(e.law == law for e in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_dict(self):
        return {"entries": [e.to_dict() for e in self.entries]}

    @classmethod
    def from_dict(cls, d):
        return cls([CheckEntry.from_dict(e) for e in d["entries"]])
