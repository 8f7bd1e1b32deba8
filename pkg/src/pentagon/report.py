"""Verdict objects: named identities with the first failing witness (or None)."""
from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    checks: dict = field(default_factory=dict)
    facts: dict = field(default_factory=dict)

    def record(self, name, witness=None):
        # keep the first witness seen for a name
        if self.checks.get(name) is None:
            self.checks[name] = None if witness is None else tuple(int(v) for v in witness)

    def check_all(self, name, cases):
        """Run ``cases`` (iterable of (ok, witness)) and record the first failure."""
        self.checks.setdefault(name, None)
        for ok, witness in cases:
            if not ok:
                self.record(name, witness)
                break

    @property
    def ok(self):
        return all(w is None for w in self.checks.values())

    def failures(self):
        return {k: w for k, w in self.checks.items() if w is not None}

    def as_dict(self):
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {"identity": k, "holds": w is None, "witness": None if w is None else list(w)}
                for k, w in self.checks.items()
            ],
            "facts": self.facts,
        }
