"""Deterministic per-phase scalar-operation accounting.

The ledger is the library's stand-in for asymptotic cost: every linear
algebra routine reports exactly the scalar multiplies, additions (including
subtractions), divisions (including square roots) and comparisons it
performs, keyed by the pruning phase that asked for the work.  Counters are
plain integers, so totals are bitwise-reproducible for identical inputs,
backend and dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Canonical phases of one pruning run, in execution order.
PHASES = ("hessian", "mask", "error", "inner", "outer", "finalize")


@dataclass
class OpCounts:
    """Scalar-operation counters for one phase."""

    mul: int = 0
    add: int = 0
    div: int = 0
    compare: int = 0

    def total(self) -> int:
        return self.mul + self.add + self.div + self.compare

    def merged(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(
            self.mul + other.mul,
            self.add + other.add,
            self.div + other.div,
            self.compare + other.compare,
        )

    def as_dict(self) -> dict:
        return {"mul": self.mul, "add": self.add, "div": self.div, "compare": self.compare}


@dataclass
class FlopLedger:
    """Phase-labelled operation counters for one run.

    Counters only ever increase; `charge` rejects negative increments so a
    ledger is monotone within a run by construction.
    """

    phases: dict = field(default_factory=lambda: {p: OpCounts() for p in PHASES})

    def charge(self, phase: str, mul: int = 0, add: int = 0, div: int = 0, compare: int = 0) -> None:
        if min(mul, add, div, compare) < 0:
            raise ValueError("ledger increments must be non-negative")
        counts = self.phases.setdefault(phase, OpCounts())
        counts.mul += mul
        counts.add += add
        counts.div += div
        counts.compare += compare

    def charge_counts(self, phase: str, counts: OpCounts) -> None:
        self.charge(phase, counts.mul, counts.add, counts.div, counts.compare)

    def __getitem__(self, phase: str) -> OpCounts:
        return self.phases.setdefault(phase, OpCounts())

    def total(self, phase: str | None = None) -> int:
        if phase is not None:
            return self[phase].total()
        return sum(c.total() for c in self.phases.values())

    def snapshot(self) -> dict:
        """Plain-dict copy, e.g. for JSON stats output."""
        return {p: c.as_dict() for p, c in self.phases.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlopLedger):
            return NotImplemented
        return self.snapshot() == other.snapshot()
