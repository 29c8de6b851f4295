"""
Motzkin paths over the step alphabet {U, D, H}.

Positions are 1-based. A path is drawn from (0, 0); U, H and D move by
(1, 1), (1, 0) and (1, -1) and the path never drops below the x-axis and
ends on it.
"""

from __future__ import annotations

import enum
from collections.abc import Iterator
from dataclasses import dataclass
from math import prod

from .errors import CeilingError, PathError

__all__ = [
    "PATH_ENUMERATION_CEILING",
    "Step",
    "MotzkinPath",
    "parse_path",
    "area",
    "geometric_area",
    "heights",
    "step_weights",
    "weight",
    "enumerate_paths",
]

# Motzkin numbers grow like 3^n; M_20 is about 5.1e7
PATH_ENUMERATION_CEILING = 20


class Step(str, enum.Enum):
    U = "U"
    D = "D"
    H = "H"

    def __str__(self) -> str:
        return self.value


# enumeration order
_ORDER = (Step.U, Step.H, Step.D)


def _check_balance(steps: tuple[Step, ...]) -> None:
    level = 0
    for pos, step in enumerate(steps, start=1):
        if step is Step.U:
            level += 1
        elif step is Step.D:
            level -= 1
            if level < 0:
                raise PathError(
                    f"prefix balance violated at position {pos}: more D than U",
                    position=pos,
                )
    if level != 0:
        raise PathError(
            f"path ends at height {level}; every U needs a matching D",
            position=len(steps),
        )


@dataclass(frozen=True)
class MotzkinPath:
    steps: tuple[Step, ...]

    def __post_init__(self):
        steps = tuple(Step(s) for s in self.steps)
        object.__setattr__(self, "steps", steps)
        _check_balance(steps)

    @classmethod
    def _trusted(cls, steps: tuple[Step, ...]) -> MotzkinPath:
        p = object.__new__(cls)
        object.__setattr__(p, "steps", steps)
        return p

    @classmethod
    def flat(cls, n: int) -> MotzkinPath:
        return cls._trusted((Step.H,) * n)

    @classmethod
    def peak(cls, n: int) -> MotzkinPath:
        """The path of maximal area: U^k D^k or U^k H D^k."""
        k, odd = divmod(n, 2)
        return cls._trusted((Step.U,) * k + (Step.H,) * odd + (Step.D,) * k)

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return "".join(s.value for s in self.steps)


def parse_path(text: str) -> MotzkinPath:
    """Parse a word over U, D, H (any case); errors carry a 1-based position."""
    steps = []
    for pos, ch in enumerate(text.strip(), start=1):
        try:
            steps.append(Step(ch.upper()))
        except ValueError:
            raise PathError(
                f"illegal character {ch!r} at position {pos}", position=pos
            ) from None
    return MotzkinPath(tuple(steps))


def area(p: MotzkinPath) -> int:
    """Sum of D positions minus sum of U positions."""
    total = 0
    for pos, step in enumerate(p.steps, start=1):
        if step is Step.D:
            total += pos
        elif step is Step.U:
            total -= pos
    return total


def geometric_area(p: MotzkinPath) -> int:
    """
    Area under the path summed strip by strip.

    Each unit-width vertical strip under a U or D step ending or starting at
    height h is a trapezoid of area h - 1/2; under an H step at height h it
    is a rectangle of area h. Doubled values keep everything integral.
    """
    doubled = 0
    level = 0
    for step in p.steps:
        if step is Step.U:
            doubled += 2 * level + 1
            level += 1
        elif step is Step.D:
            level -= 1
            doubled += 2 * level + 1
        else:
            doubled += 2 * level
    assert doubled % 2 == 0
    return doubled // 2


def heights(p: MotzkinPath) -> tuple[int, ...]:
    """Highest level touched by each step."""
    out = []
    level = 0
    for step in p.steps:
        if step is Step.U:
            level += 1
            out.append(level)
        elif step is Step.D:
            out.append(level)
            level -= 1
        else:
            out.append(level)
    return tuple(out)


def step_weights(p: MotzkinPath) -> tuple[int, ...]:
    return tuple(
        2 * h + 1 if step is Step.H else h for step, h in zip(p.steps, heights(p))
    )


def weight(p: MotzkinPath) -> int:
    """Product of the step weights; 1 for the empty path."""
    return prod(step_weights(p))


def enumerate_paths(
    n: int, *, first: Step | str | None = None, force: bool = False
) -> Iterator[MotzkinPath]:
    """
    Yield every Motzkin path of length n, lexicographically with U < H < D.

    ``first`` keeps only paths starting with that step (U or H for n > 0),
    splitting the stream into disjoint blocks.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > PATH_ENUMERATION_CEILING and not force:
        raise CeilingError(
            f"refusing to enumerate Motzkin paths of length {n}; ceiling is "
            f"n = {PATH_ENUMERATION_CEILING}, pass force=True to override"
        )
    first_step = Step(first.upper() if isinstance(first, str) else first) if first else None
    steps: list[Step] = []

    def extend(level: int) -> Iterator[MotzkinPath]:
        pos = len(steps)
        if pos == n:
            yield MotzkinPath._trusted(tuple(steps))
            return
        remaining = n - pos - 1
        choices = _ORDER if pos or first_step is None else (first_step,)
        for step in choices:
            if step is Step.U:
                nxt = level + 1
            elif step is Step.D:
                nxt = level - 1
            else:
                nxt = level
            # must be able to return to 0 in the remaining steps
            if nxt < 0 or nxt > remaining:
                continue
            steps.append(step)
            yield from extend(nxt)
            steps.pop()

    yield from extend(0)
