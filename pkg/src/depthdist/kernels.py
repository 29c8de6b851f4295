"""
Tally kernels for the two enumeration-based depth tables.

Each kernel exists twice: a numba version that walks the objects one at a
time, and a numpy version that processes them in vectorized blocks. The
module-level ``brute_tally`` and ``motzkin_tally`` dispatch on
``_accel.USE_NUMBA`` (see ``DEPTHDIST_DISABLE_NUMBA``). Counts are int64,
which is exact while n! < 2**63, i.e. n <= 20.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import _accel

__all__ = [
    "INT64_MAX_N",
    "backend",
    "brute_tally",
    "brute_tally_numba",
    "brute_tally_numpy",
    "motzkin_tally",
    "motzkin_tally_numba",
    "motzkin_tally_numpy",
]

INT64_MAX_N = 20

_STEP_U, _STEP_H, _STEP_D = 0, 1, 2
_FIRST_STEP_CODES = {None: -1, "U": _STEP_U, "H": _STEP_H, "D": _STEP_D}


def backend() -> str:
    return "numba" if _accel.USE_NUMBA else "numpy"


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > INT64_MAX_N:
        raise OverflowError(f"int64 tallies are exact only up to n = {INT64_MAX_N}")


def _max_depth(n: int) -> int:
    return n * n // 4


# ---------------------------------------------------------------- brute force


@_accel.njit
def _brute_block_nb(n, first, out):
    perm = np.empty(n, dtype=np.int64)
    perm[0] = first
    j = 1
    for v in range(1, n + 1):
        if v != first:
            perm[j] = v
            j += 1
    while True:
        d = 0
        for i in range(n):
            if perm[i] > i + 1:
                d += perm[i] - i - 1
        out[d] += 1
        # next permutation of perm[1:] in lexicographic order
        i = n - 2
        while i >= 1 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 1:
            break
        k = n - 1
        while perm[k] <= perm[i]:
            k -= 1
        perm[i], perm[k] = perm[k], perm[i]
        lo = i + 1
        hi = n - 1
        while lo < hi:
            perm[lo], perm[hi] = perm[hi], perm[lo]
            lo += 1
            hi -= 1


def _brute_firsts(n: int, first: int | None) -> list[int]:
    if first is None:
        return list(range(1, n + 1))
    if not 1 <= first <= n:
        raise ValueError(f"first entry {first} outside 1..{n}")
    return [first]


def brute_tally_numba(n: int, first: int | None = None) -> np.ndarray:
    """Depth histogram of S_n (or of the block with w(1) == first)."""
    _check_n(n)
    out = np.zeros(_max_depth(n) + 1, dtype=np.int64)
    if n == 0:
        out[0] = 1
        return out
    for f in _brute_firsts(n, first):
        _brute_block_nb(n, f, out)
    return out


def brute_tally_numpy(
    n: int, first: int | None = None, block: int = 1 << 16
) -> np.ndarray:
    _check_n(n)
    out = np.zeros(_max_depth(n) + 1, dtype=np.int64)
    if n == 0:
        out[0] = 1
        return out
    positions = np.arange(2, n + 1, dtype=np.int64)
    for f in _brute_firsts(n, first):
        rest = [v for v in range(1, n + 1) if v != f]
        tails = itertools.permutations(rest)
        offset = f - 1
        while True:
            chunk = np.array(list(itertools.islice(tails, block)), dtype=np.int64)
            if chunk.shape[0] == 0:
                break
            depths = np.maximum(chunk - positions, 0).sum(axis=1) + offset
            out += np.bincount(depths, minlength=out.size)
    return out


# ------------------------------------------------------------- Motzkin paths


@_accel.njit
def _motzkin_walk_nb(n, first, out):
    # depth-first walk over prefixes; state[pos] describes the prefix of length pos
    choice = np.full(n + 1, -1, dtype=np.int64)
    level = np.zeros(n + 1, dtype=np.int64)
    areas = np.zeros(n + 1, dtype=np.int64)
    weights = np.ones(n + 1, dtype=np.int64)
    pos = 0
    while pos >= 0:
        if pos == n:
            out[areas[n]] += weights[n]
            pos -= 1
            continue
        h = level[pos]
        remaining = n - pos - 1
        c = choice[pos] + 1
        while c <= 2:
            if pos == 0 and first >= 0 and c != first:
                c += 1
                continue
            if c == 0 and h + 1 <= remaining:
                break
            if c == 1 and h <= remaining:
                break
            if c == 2 and h >= 1:
                break
            c += 1
        if c > 2:
            choice[pos] = -1
            pos -= 1
            continue
        choice[pos] = c
        i = pos + 1
        if c == 0:
            level[i] = h + 1
            areas[i] = areas[pos] - i
            weights[i] = weights[pos] * (h + 1)
        elif c == 1:
            level[i] = h
            areas[i] = areas[pos]
            weights[i] = weights[pos] * (2 * h + 1)
        else:
            level[i] = h - 1
            areas[i] = areas[pos] + i
            weights[i] = weights[pos] * h
        choice[i] = -1
        pos = i


def _first_code(first) -> int:
    key = str(first).upper() if first is not None else None
    if key not in _FIRST_STEP_CODES:
        raise ValueError(f"unknown first step {first!r}")
    return _FIRST_STEP_CODES[key]


def motzkin_tally_numba(n: int, first: str | None = None) -> np.ndarray:
    """Sum of weight(p) by area(p) over Motzkin paths of length n."""
    _check_n(n)
    out = np.zeros(_max_depth(n) + 1, dtype=np.int64)
    if n == 0:
        out[0] = 1
        return out
    _motzkin_walk_nb(n, _first_code(first), out)
    return out


def motzkin_tally_numpy(n: int, first: str | None = None) -> np.ndarray:
    _check_n(n)
    out = np.zeros(_max_depth(n) + 1, dtype=np.int64)
    code = _first_code(first)
    # one row per prefix: level, signed position sum, weight
    level = np.zeros(1, dtype=np.int64)
    areas = np.zeros(1, dtype=np.int64)
    weights = np.ones(1, dtype=np.int64)
    for pos in range(n):
        i = pos + 1
        remaining = n - i
        ups = level + 1 <= remaining
        flats = level <= remaining
        downs = level >= 1
        if pos == 0 and code >= 0:
            ups &= code == _STEP_U
            flats &= code == _STEP_H
            downs &= code == _STEP_D
        level, areas, weights = (
            np.concatenate((level[ups] + 1, level[flats], level[downs] - 1)),
            np.concatenate((areas[ups] - i, areas[flats], areas[downs] + i)),
            np.concatenate(
                (
                    weights[ups] * (level[ups] + 1),
                    weights[flats] * (2 * level[flats] + 1),
                    weights[downs] * level[downs],
                )
            ),
        )
    np.add.at(out, areas, weights)
    return out


def brute_tally(n: int, first: int | None = None) -> np.ndarray:
    if _accel.USE_NUMBA:
        return brute_tally_numba(n, first)
    return brute_tally_numpy(n, first)


def motzkin_tally(n: int, first: str | None = None) -> np.ndarray:
    if _accel.USE_NUMBA:
        return motzkin_tally_numba(n, first)
    return motzkin_tally_numpy(n, first)
