"""Global knobs and the CLI configuration record."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError

# Colour cap bounds enumeration memory: Catalan(10) = 16796 diagrams.
COLOUR_CAP = 10

# Tolerance for all float-mode comparisons and PSD eigenvalue cutoffs.
FLOAT_TOL = 1e-9

DEFAULT_SEED = 42

POSITIVITY_SUITES = frozenset({"positivity", "estimates", "all"})


def set_colour_cap(cap: int) -> None:
    global COLOUR_CAP
    if cap < 0:
        raise PreconditionError("colour cap must be non-negative")
    COLOUR_CAP = cap


@dataclass
class Config:
    """Run configuration for the `pa` command line tool."""

    delta: str = "sym"          # "sym", a rational "p/q", or a float literal
    level: int = 2              # max level k exercised by suites
    max_colour: int | None = None   # defaults to level + 3
    seed: int = DEFAULT_SEED
    suites: tuple[str, ...] = ()
    out: str | None = None
    json_output: bool = False
    jobs: int = 1
    trials: int = 20

    def resolved_max_colour(self) -> int:
        return self.max_colour if self.max_colour is not None else self.level + 3

    def delta_value(self):
        """Parsed delta: None for symbolic, Fraction or float otherwise."""
        if self.delta in ("sym", "symbolic"):
            return None
        if "/" in self.delta or "." not in self.delta:
            return Fraction(self.delta)
        return float(self.delta)

    def validate(self) -> None:
        if self.level < 0:
            raise PreconditionError("level must be non-negative")
        if self.resolved_max_colour() > COLOUR_CAP:
            raise PreconditionError(
                f"max colour {self.resolved_max_colour()} exceeds cap {COLOUR_CAP}")
        if any(s in POSITIVITY_SUITES for s in self.suites):
            value = self.delta_value()
            if value is not None and value < 2:
                raise PreconditionError(
                    "positivity suites require delta >= 2 in rational/float mode")
