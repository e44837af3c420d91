"""Search budgets.

Every search in this package is capped: a run that hits its caps reports
exhaustion, which is a declared non-answer and never conflated with a
definitive negative result.  A ``Budget`` carries the caps together with the
running consumption, so a single instance can be threaded through several
stages of a computation and exhausts globally.
"""

from __future__ import annotations

from dataclasses import dataclass


class BudgetExhausted(RuntimeError):
    """A search ran out of budget before reaching a definitive answer."""

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = dict(detail)


@dataclass
class Budget:
    """Caps on colorings examined, subsets enumerated, and recursion depth.

    Mutable on purpose: the used_* counters accumulate across every search
    the instance is passed to.
    """

    max_colorings: int
    max_subsets: int
    max_depth: int
    used_colorings: int = 0
    used_subsets: int = 0

    def __post_init__(self):
        if self.max_colorings < 1 or self.max_subsets < 1 or self.max_depth < 1:
            raise ValueError("budget caps must be positive")

    def charge_colorings(self, amount: int = 1) -> None:
        self.used_colorings += amount
        if self.used_colorings > self.max_colorings:
            raise BudgetExhausted(
                "coloring budget exhausted", cap=self.max_colorings
            )

    def charge_subsets(self, amount: int = 1) -> None:
        self.used_subsets += amount
        if self.used_subsets > self.max_subsets:
            raise BudgetExhausted("subset budget exhausted", cap=self.max_subsets)

    def require_depth(self, depth: int) -> None:
        if depth > self.max_depth:
            raise BudgetExhausted(
                "required depth exceeds budget", depth=depth, cap=self.max_depth
            )


#: Named presets exposed by the CLI.  (colorings, subsets, depth)
PRESETS: dict[str, tuple[int, int, int]] = {
    "tiny": (400, 10_000, 48),
    "default": (1_000_000, 5_000_000, 4096),
    "large": (50_000_000, 200_000_000, 16384),
}


def budget_preset(name: str) -> Budget:
    try:
        caps = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown budget preset {name!r}") from None
    return Budget(*caps)


def default_budget() -> Budget:
    return budget_preset("default")
