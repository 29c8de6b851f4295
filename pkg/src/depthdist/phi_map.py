"""
The map from permutations to Motzkin paths and its fibers.

Position i of w becomes U when i starts a run of excedance arrows
(w^-1(i) > i < w(i)), D when it ends one (w^-1(i) < i > w(i)), and H
otherwise. The fiber over a path p has exactly ``weight(p)`` elements, and
``enumerate_preimage`` builds them all by gluing arrow strings.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .errors import CeilingError, VerificationError
from .motzkin import MotzkinPath, Step, area, heights, weight
from .permutation import Permutation, inverse

__all__ = [
    "PREIMAGE_CEILING",
    "ArrowDiagram",
    "phi",
    "diagram",
    "depth_via_path",
    "preimage_count",
    "choice_ranges",
    "diagram_from_choices",
    "enumerate_preimage",
]

PREIMAGE_CEILING = 10**6


@dataclass(frozen=True)
class ArrowDiagram:
    """
    A permutation split into arrow strings.

    ``above`` holds increasing chains i -> w(i) -> ... of excedance arrows,
    ``below`` holds decreasing chains of arrows pointing left. Every
    non-fixed position lies on exactly one above-string and one
    below-string, as an endpoint of both (U or D positions) or as an
    interior point of one of them (H positions).
    """

    n: int
    above: tuple[tuple[int, ...], ...]
    below: tuple[tuple[int, ...], ...]
    fixed_points: frozenset[int]

    def to_permutation(self) -> Permutation:
        """Read w off the strings; raises VerificationError if they clash."""
        image = [0] * (self.n + 1)

        def put(src: int, dst: int) -> None:
            if not 1 <= src <= self.n or not 1 <= dst <= self.n:
                raise VerificationError(f"arrow {src}->{dst} leaves 1..{self.n}")
            if image[src]:
                raise VerificationError(f"position {src} has two outgoing arrows")
            image[src] = dst

        for chain in self.above:
            if len(chain) < 2 or any(a >= b for a, b in zip(chain, chain[1:])):
                raise VerificationError(f"bad above-string {chain}")
            for a, b in zip(chain, chain[1:]):
                put(a, b)
        for chain in self.below:
            if len(chain) < 2 or any(a <= b for a, b in zip(chain, chain[1:])):
                raise VerificationError(f"bad below-string {chain}")
            for a, b in zip(chain, chain[1:]):
                put(a, b)
        for i in self.fixed_points:
            put(i, i)
        values = image[1:]
        if sorted(values) != list(range(1, self.n + 1)):
            raise VerificationError(f"strings do not assemble to a bijection: {values}")
        return Permutation._trusted(tuple(values))


def phi(w: Permutation) -> MotzkinPath:
    inv = inverse(w).image
    steps = []
    for i, (out, into) in enumerate(zip(w.image, inv), start=1):
        if into > i < out:
            steps.append(Step.U)
        elif into < i > out:
            steps.append(Step.D)
        else:
            steps.append(Step.H)
    return MotzkinPath._trusted(tuple(steps))


def diagram(w: Permutation) -> ArrowDiagram:
    """Decompose w into maximal above-strings, below-strings and fixed points."""
    path = phi(w).steps
    above = []
    below = []
    for i, step in enumerate(path, start=1):
        if step is Step.U:
            chain = [i]
            while w(chain[-1]) > chain[-1]:
                chain.append(w(chain[-1]))
            above.append(tuple(chain))
        elif step is Step.D:
            chain = [i]
            while w(chain[-1]) < chain[-1]:
                chain.append(w(chain[-1]))
            below.append(tuple(chain))
    fixed = frozenset(i for i, v in enumerate(w.image, start=1) if v == i)
    return ArrowDiagram(w.n, tuple(above), tuple(below), fixed)


def depth_via_path(w: Permutation) -> int:
    return area(phi(w))


def preimage_count(p: MotzkinPath) -> int:
    """Size of the fiber over p, which is the path weight."""
    return weight(p)


def choice_ranges(p: MotzkinPath) -> tuple[int, ...]:
    """
    Number of options at each decision point of the fiber construction.

    Decision points come in a fixed order: D steps left to right (which
    open above-string ends here), U steps right to left (which open
    below-string ends here), then H steps left to right. The product of the
    entries is ``weight(p)``.
    """
    hs = heights(p)
    steps = p.steps
    d_opts = [h for s, h in zip(steps, hs) if s is Step.D]
    u_opts = [h for s, h in reversed(list(zip(steps, hs))) if s is Step.U]
    h_opts = [2 * h + 1 for s, h in zip(steps, hs) if s is Step.H]
    return tuple(d_opts + u_opts + h_opts)


def diagram_from_choices(p: MotzkinPath, choices: Sequence[int]) -> ArrowDiagram:
    """
    Build the arrow diagram selected by one choice vector.

    Open strings are always offered oldest first. An H option is 0 for a
    fixed point, 1..h to join the h open above-strings, h+1..2h to join the
    h open below-strings.
    """
    ranges = choice_ranges(p)
    if len(choices) != len(ranges) or any(
        not 0 <= c < r for c, r in zip(choices, ranges)
    ):
        raise ValueError(f"choice vector {tuple(choices)} does not fit {ranges}")
    steps = p.steps
    n = len(steps)
    it = iter(choices)

    # left to right: above-strings run from a U position to a D position
    above: list[list[int]] = []
    open_above: list[list[int]] = []
    above_over = {}
    for i, step in enumerate(steps, start=1):
        if step is Step.U:
            chain = [i]
            above.append(chain)
            open_above.append(chain)
        elif step is Step.D:
            open_above.pop(next(it)).append(i)
        else:
            above_over[i] = list(open_above)

    # right to left: below-strings run from a D position down to a U position
    below: list[list[int]] = []
    open_below: list[list[int]] = []
    below_over = {}
    for i in range(n, 0, -1):
        step = steps[i - 1]
        if step is Step.D:
            chain = [i]
            below.append(chain)
            open_below.append(chain)
        elif step is Step.U:
            open_below.pop(next(it)).append(i)
        else:
            below_over[i] = list(open_below)

    fixed = set()
    inner_above: dict[int, list[int]] = {}
    inner_below: dict[int, list[int]] = {}
    for i, step in enumerate(steps, start=1):
        if step is not Step.H:
            continue
        c = next(it)
        h = len(above_over[i])
        if c == 0:
            fixed.add(i)
        elif c <= h:
            inner_above.setdefault(id(above_over[i][c - 1]), []).append(i)
        else:
            inner_below.setdefault(id(below_over[i][c - h - 1]), []).append(i)

    def with_interior(chain: list[int], extra: list[int], descending: bool):
        start, end = chain
        return tuple([start] + sorted(extra, reverse=descending) + [end])

    return ArrowDiagram(
        n,
        tuple(with_interior(c, inner_above.get(id(c), []), False) for c in above),
        tuple(with_interior(c, inner_below.get(id(c), []), True) for c in below),
        frozenset(fixed),
    )


def enumerate_preimage(
    p: MotzkinPath, *, force: bool = False
) -> Iterator[Permutation]:
    """
    Yield every w with phi(w) == p, one per choice vector.

    Choice vectors run in lexicographic order over ``choice_ranges(p)``.
    Refuses fibers larger than PREIMAGE_CEILING unless ``force`` is set.
    """
    size = weight(p)
    if size > PREIMAGE_CEILING and not force:
        raise CeilingError(
            f"fiber over {p} has {size} elements; ceiling is "
            f"{PREIMAGE_CEILING}, pass force=True to override"
        )
    for choices in itertools.product(*(range(r) for r in choice_ranges(p))):
        yield diagram_from_choices(p, choices).to_permutation()
