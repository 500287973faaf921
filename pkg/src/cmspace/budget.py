"""Step budgets for semi-decision searches.

Searches that are only guaranteed to terminate on a promise domain charge
work to the active :class:`StepBudget`.  Running out raises
:class:`BudgetExhausted`, which carries a label for the offending operation.
A budget is made active with ``with budget:``; nesting is allowed and the
innermost one is charged.
"""

from __future__ import annotations

import contextvars

DEFAULT_STEPS = 10**6

_active: contextvars.ContextVar["StepBudget | None"] = contextvars.ContextVar(
    "cmspace_budget", default=None
)


class BudgetExhausted(RuntimeError):
    def __init__(self, where: str, limit: int):
        super().__init__(f"step budget of {limit} exhausted in {where}")
        self.where = where
        self.limit = limit


class StepBudget:
    """Per-term allowance of search work.

    One unit is charged per probed candidate index plus one per ring-set
    component the probe touches.  The allowance is per term: ``reset`` is
    called before each term's search.
    """

    def __init__(self, limit: int = DEFAULT_STEPS):
        if limit < 1:
            raise ValueError("budget must be positive")
        self.limit = limit
        self.used = 0
        self._tokens: list = []

    def reset(self):
        self.used = 0

    def charge(self, units: int, where: str):
        self.used += units
        if self.used > self.limit:
            raise BudgetExhausted(where, self.limit)

    def __enter__(self):
        self._tokens.append(_active.set(self))
        return self

    def __exit__(self, *exc):
        _active.reset(self._tokens.pop())
        return False


def active() -> StepBudget | None:
    return _active.get()


def charge(units: int, where: str):
    """Charge the active budget, if any."""
    b = _active.get()
    if b is not None:
        b.charge(units, where)
