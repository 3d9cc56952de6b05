from dataclasses import dataclass, field


@dataclass
class Violation:
    items: tuple
    defect: object
    note: str = ""


@dataclass
class Report:
    """Outcome of a verifier: how many instances were examined and which failed."""

    check: str
    checked: int = 0
    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def add(self, items, defect, note=""):
        self.violations.append(Violation(tuple(items), defect, note))

    def merge(self, other):
        self.checked += other.checked
        self.violations.extend(other.violations)
        return self

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"<Report {self.check}: {self.checked} checked, {state}>"
