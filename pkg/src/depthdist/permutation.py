"""
Permutations in one-line notation and the depth statistic.

Values are 1-based everywhere outside this module's internals: the tuple
``Permutation((3, 7, 1, 5, 2, 4, 6)).image`` is w(1), ..., w(7).

>>> w = parse_permutation("3715246")
>>> depth(w), total_displacement(w)
(8, 16)
>>> str(inverse(w))
'3517462'
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterator
from dataclasses import dataclass

from .errors import CeilingError, PermutationError

__all__ = [
    "ENUMERATION_CEILING",
    "Permutation",
    "parse_permutation",
    "inverse",
    "depth",
    "total_displacement",
    "enumerate_sn",
]

# n! beyond this is too large to stream casually (13! > 6e9)
ENUMERATION_CEILING = 12

_SEPARATORS = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., n} stored in one-line notation."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        n = len(image)
        seen = [False] * (n + 1)
        for pos, value in enumerate(image, start=1):
            if isinstance(value, bool) or not isinstance(value, int):
                raise PermutationError(f"entry {pos} is not an integer: {value!r}")
            if not 1 <= value <= n:
                raise PermutationError(
                    f"entry {pos} is {value}, outside the range 1..{n}"
                )
            if seen[value]:
                raise PermutationError(f"repeated value {value} at entry {pos}")
            seen[value] = True

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def _trusted(cls, image: tuple[int, ...]) -> Permutation:
        # skips validation; callers guarantee a bijection
        w = object.__new__(cls)
        object.__setattr__(w, "image", image)
        return w

    @property
    def n(self) -> int:
        return len(self.image)

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        """w(i) with 1-based i."""
        if not 1 <= i <= len(self.image):
            raise IndexError(f"position {i} outside 1..{len(self.image)}")
        return self.image[i - 1]

    def __str__(self) -> str:
        if len(self.image) <= 9:
            return "".join(map(str, self.image))
        return ",".join(map(str, self.image))


def parse_permutation(text: str) -> Permutation:
    """
    Parse one-line notation.

    Accepts whitespace- or comma-separated integers (``"3 7 1"``,
    ``"3,7,1"``) or a bare digit string (``"371"``). A bare digit string is
    read one digit per entry, so it is rejected when it would describe a
    permutation of more than 9 elements.
    """
    stripped = text.strip()
    if not stripped:
        return Permutation(())
    tokens = [tok for tok in _SEPARATORS.split(stripped) if tok]
    if len(tokens) == 1 and len(tokens[0]) > 1:
        digits = tokens[0]
        if not digits.isdigit():
            raise PermutationError(f"not an integer: {digits!r}")
        if len(digits) > 9:
            raise PermutationError(
                f"digit string {digits!r} is ambiguous for n > 9; "
                "separate entries with commas or spaces"
            )
        tokens = list(digits)
    values = []
    for tok in tokens:
        if not re.fullmatch(r"[+]?\d+", tok):
            raise PermutationError(f"not an integer: {tok!r}")
        values.append(int(tok))
    return Permutation(tuple(values))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * len(w.image)
    for i, value in enumerate(w.image, start=1):
        inv[value - 1] = i
    return Permutation._trusted(tuple(inv))


def depth(w: Permutation) -> int:
    """Sum of w(i) - i over the excedances of w."""
    return sum(v - i for i, v in enumerate(w.image, start=1) if v > i)


def total_displacement(w: Permutation) -> int:
    return sum(abs(v - i) for i, v in enumerate(w.image, start=1))


def enumerate_sn(
    n: int, *, first: int | None = None, force: bool = False
) -> Iterator[Permutation]:
    """
    Yield every permutation of {1, ..., n} in lexicographic order.

    ``first`` restricts the stream to permutations with w(1) == first, which
    partitions S_n into n disjoint lexicographic blocks for parallel scans.
    Refuses n > ENUMERATION_CEILING unless ``force`` is set.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > ENUMERATION_CEILING and not force:
        raise CeilingError(
            f"refusing to enumerate S_{n} ({n}! elements); "
            f"ceiling is n = {ENUMERATION_CEILING}, pass force=True to override"
        )
    if first is None:
        for image in itertools.permutations(range(1, n + 1)):
            yield Permutation._trusted(image)
        return
    if not 1 <= first <= n:
        raise ValueError(f"first entry {first} outside 1..{n}")
    rest = [v for v in range(1, n + 1) if v != first]
    for tail in itertools.permutations(rest):
        yield Permutation._trusted((first,) + tail)
