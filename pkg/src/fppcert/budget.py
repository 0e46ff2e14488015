"""Wall-time and S-pair budgets for the heavyweight certificate stages.

A budget is cooperative: long-running loops call ``check_time`` (and
``spend_pair`` where S-pairs are consumed) and the budget raises
``BudgetExceeded`` once a cap is crossed.  The exception can carry whatever
partial report the caller assembled before running out, so a skipped check
still documents how far it got.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field


class BudgetExceeded(RuntimeError):
    """A configured wall-time or S-pair cap was crossed."""

    def __init__(self, reason: str, partial: dict | None = None):
        super().__init__(reason)
        self.reason = reason
        self.partial = partial or {}


@dataclass
class Budget:
    deadline: float | None = None
    pair_cap: int | None = None
    pairs_used: int = field(default=0, compare=False)

    @classmethod
    def start(
        cls, seconds: float | None = None, pairs: int | None = None
    ) -> "Budget | None":
        """A running budget, or None when no cap is configured."""
        if seconds is None and pairs is None:
            return None
        deadline = None if seconds is None else time.monotonic() + seconds
        return cls(deadline=deadline, pair_cap=pairs)

    def check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("wall-time budget exhausted")

    def spend_pair(self, n: int = 1) -> None:
        self.pairs_used += n
        if self.pair_cap is not None and self.pairs_used > self.pair_cap:
            raise BudgetExceeded(f"S-pair budget {self.pair_cap} exhausted")
