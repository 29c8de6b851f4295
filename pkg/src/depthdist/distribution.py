"""
The depth distribution H(n, k) = #{w in S_n : depth(w) = k}, four ways.

``table_brute`` counts permutations, ``table_motzkin`` sums path weights by
area, and ``table_jfrac`` / ``table_sfrac`` expand the two continued
fractions for F(t, z) = sum_n sum_{w in S_n} t^depth(w) z^n as truncated
series. They are independent routes to the same triangle.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from . import kernels
from .errors import CeilingError, VerificationError
from .series import TruncatedSeries, monomial

__all__ = [
    "METHODS",
    "BRUTE_CEILING",
    "MOTZKIN_CEILING",
    "DepthTable",
    "BinomialPolynomial",
    "table",
    "table_brute",
    "table_motzkin",
    "table_jfrac",
    "table_sfrac",
    "jfrac_series",
    "sfrac_series",
    "max_depth",
    "max_depth_count",
    "fixed_depth_polynomial",
    "first_divergence",
]

METHODS = ("brute", "motzkin", "jfrac", "sfrac")
BRUTE_CEILING = 9
MOTZKIN_CEILING = 16


def max_depth(n: int) -> int:
    """floor(n^2 / 4), the largest depth in S_n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return n * n // 4


def max_depth_count(n: int) -> int:
    """Number of w in S_n of maximal depth: (k!)^2 for n = 2k, n (k!)^2 for n = 2k+1."""
    if n < 1:
        raise ValueError(f"max_depth_count needs n >= 1, got {n}")
    k, odd = divmod(n, 2)
    return (n if odd else 1) * factorial(k) ** 2


@dataclass(frozen=True)
class DepthTable:
    """Rows H(n, 0), ..., H(n, floor(n^2/4)) for n = 0..N."""

    rows: tuple[tuple[int, ...], ...]
    method: str

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        for n, row in enumerate(rows):
            if len(row) != max_depth(n) + 1:
                raise VerificationError(
                    f"{self.method}: row n={n} has {len(row)} entries, "
                    f"expected {max_depth(n) + 1}"
                )

    @property
    def N(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, n: int) -> tuple[int, ...]:
        return self.rows[n]

    def __len__(self) -> int:
        return len(self.rows)

    def entry(self, n: int, k: int) -> int:
        """H(n, k), zero outside the triangle."""
        if 0 <= n < len(self.rows) and 0 <= k < len(self.rows[n]):
            return self.rows[n][k]
        return 0

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)

    def restrict(self, N: int) -> DepthTable:
        return DepthTable(self.rows[: N + 1], self.method)

    def problems(self) -> list[str]:
        """Invariant violations; empty when the table looks right."""
        found = []
        for n, row in enumerate(self.rows):
            if sum(row) != factorial(n):
                found.append(f"n={n}: row sum {sum(row)} != {n}! = {factorial(n)}")
            if row[0] != 1:
                found.append(f"n={n}: H(n,0) = {row[0]}, expected 1")
            if n >= 2 and row[1] != n - 1:
                found.append(f"n={n}: H(n,1) = {row[1]}, expected {n - 1}")
            if n >= 1 and row[-1] != max_depth_count(n):
                found.append(
                    f"n={n}: H(n,{max_depth(n)}) = {row[-1]}, "
                    f"expected {max_depth_count(n)}"
                )
            if any(x < 0 for x in row):
                found.append(f"n={n}: negative entries")
        return found

    def interior_zeros(self) -> list[tuple[int, int]]:
        """(n, k) with H(n, k) == 0 inside the triangle. None are known."""
        return [
            (n, k) for n, row in enumerate(self.rows) for k, x in enumerate(row) if x == 0
        ]


def _from_counts(counts: Sequence[Sequence[int]], method: str) -> DepthTable:
    rows = []
    for n, row in enumerate(counts):
        row = [int(x) for x in row][: max_depth(n) + 1]
        row += [0] * (max_depth(n) + 1 - len(row))
        rows.append(tuple(row))
    return DepthTable(tuple(rows), method)


def _tally_rows(tally, parts_for, N: int, jobs: int) -> list[list[int]]:
    rows = []
    for n in range(N + 1):
        parts = parts_for(n)
        if jobs > 1 and len(parts) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                blocks = list(pool.map(lambda part: tally(n, part), parts))
        else:
            blocks = [tally(n, part) for part in parts]
        # merge in Python ints so the sum never wraps
        total = [0] * (max_depth(n) + 1)
        for block in blocks:
            for k, x in enumerate(np.asarray(block).tolist()):
                total[k] += x
        rows.append(total)
    return rows


def table_brute(N: int, *, force: bool = False, jobs: int = 1) -> DepthTable:
    """Tally depth over every permutation of size at most N."""
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if N > BRUTE_CEILING and not force:
        raise CeilingError(
            f"brute force is limited to n <= {BRUTE_CEILING} ({BRUTE_CEILING}! "
            "permutations); pass force=True to override"
        )
    if N > kernels.INT64_MAX_N:
        raise CeilingError(f"brute force cannot go beyond n = {kernels.INT64_MAX_N}")
    rows = _tally_rows(
        kernels.brute_tally,
        lambda n: list(range(1, n + 1)) if n else [None],
        N,
        jobs,
    )
    return _from_counts(rows, "brute")


def table_motzkin(N: int, *, force: bool = False, jobs: int = 1) -> DepthTable:
    """Sum weight(p) over Motzkin paths p, grouped by length and area."""
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if N > MOTZKIN_CEILING and not force:
        raise CeilingError(
            f"path enumeration is limited to n <= {MOTZKIN_CEILING}; "
            "pass force=True to override"
        )
    if N > kernels.INT64_MAX_N:
        raise CeilingError(
            f"path enumeration cannot go beyond n = {kernels.INT64_MAX_N}"
        )
    rows = _tally_rows(
        kernels.motzkin_tally,
        lambda n: ["U", "H"] if n >= 2 else [None],
        N,
        jobs,
    )
    return _from_counts(rows, "motzkin")


def jfrac_series(N: int, t_cap: int | None = None) -> TruncatedSeries:
    """
    F(t, z) from the J-fraction, exact in the box (N, t_cap).

    Level m is F_m = 1 / (1 - (2m+1) t^m z - (m+1)^2 t^(2m+1) z^2 F_{m+1}).
    Since F_m reaches F_0 only through a factor t^(m^2) z^(2m), it is
    computed in the smaller box (N - 2m, t_cap - m^2); levels whose box is
    empty are dropped, so at most floor(N/2) + 1 levels are evaluated.
    """
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if t_cap is None:
        t_cap = max_depth(N)
    levels = []
    m = 0
    while N - 2 * m >= 0 and t_cap - m * m >= 0:
        levels.append(m)
        m += 1
    inner = None
    for m in reversed(levels):
        z_order, cap = N - 2 * m, t_cap - m * m
        denom = TruncatedSeries.one(z_order, cap) - monomial(
            2 * m + 1, m, 1, z_order, cap
        )
        if inner is not None:
            denom = denom - inner.times_monomial(
                (m + 1) ** 2, 2 * m + 1, 2, z_order, cap
            )
        inner = denom.reciprocal()
    return inner


def _sfrac_exponent(j: int) -> int:
    k, odd = divmod(j, 2)
    return k + 1 if odd else k


def sfrac_series(N: int, t_cap: int | None = None) -> TruncatedSeries:
    """
    F(t, z) from the S-fraction, exact in the box (N, t_cap).

    Term j is (k+1) t^k z for j = 2k and (k+1) t^(k+1) z for j = 2k+1; level
    j is G_j = 1 / (1 - c_j G_{j+1}) with F = G_0. G_j reaches F through the
    product c_0 ... c_(j-1), so it lives in the box (N - j, t_cap - e_j)
    where e_j is the t-degree of that product.
    """
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if t_cap is None:
        t_cap = max_depth(N)
    boxes = []
    j, shift = 0, 0
    while N - j >= 0 and t_cap - shift >= 0:
        boxes.append((j, N - j, t_cap - shift))
        shift += _sfrac_exponent(j)
        j += 1
    inner = None
    for j, z_order, cap in reversed(boxes):
        denom = TruncatedSeries.one(z_order, cap)
        if inner is not None:
            coefficient = j // 2 + 1
            denom = denom - inner.times_monomial(
                coefficient, _sfrac_exponent(j), 1, z_order, cap
            )
        inner = denom.reciprocal()
    return inner


def _from_series(series: TruncatedSeries, method: str) -> DepthTable:
    return _from_counts([series.row(n) for n in range(series.z_order + 1)], method)


def table_jfrac(N: int) -> DepthTable:
    return _from_series(jfrac_series(N), "jfrac")


def table_sfrac(N: int) -> DepthTable:
    return _from_series(sfrac_series(N), "sfrac")


def table(N: int, method: str = "jfrac", *, force: bool = False, jobs: int = 1) -> DepthTable:
    if method == "brute":
        return table_brute(N, force=force, jobs=jobs)
    if method == "motzkin":
        return table_motzkin(N, force=force, jobs=jobs)
    if method == "jfrac":
        return table_jfrac(N)
    if method == "sfrac":
        return table_sfrac(N)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")


def first_divergence(
    tables: Sequence[DepthTable],
) -> tuple[int, int, dict[str, int]] | None:
    """
    First (n, k) where the tables disagree, with every table's value there.

    Only rows present in all tables are compared.
    """
    if len(tables) < 2:
        return None
    common = min(t.N for t in tables)
    for n in range(common + 1):
        for k in range(max_depth(n) + 1):
            values = {t.method: t.entry(n, k) for t in tables}
            if len(set(values.values())) > 1:
                return n, k, values
    return None


@dataclass(frozen=True)
class BinomialPolynomial:
    """H(n, k) = sum_j coefficients[j] * C(n - k, j), valid for n >= k."""

    k: int
    coefficients: tuple[int, ...]
    verified_through: int

    def __post_init__(self):
        if len(self.coefficients) != self.k + 1:
            raise ValueError(
                f"depth {self.k} needs {self.k + 1} coefficients, "
                f"got {len(self.coefficients)}"
            )
        if self.coefficients[-1] != 1:
            raise VerificationError(
                f"leading coefficient for depth {self.k} is "
                f"{self.coefficients[-1]}, expected 1"
            )

    def __call__(self, n: int) -> int:
        if n < self.k:
            raise ValueError(f"formula for depth {self.k} holds only for n >= {self.k}")
        m = n - self.k
        return sum(a * comb(m, j) for j, a in enumerate(self.coefficients))

    def __str__(self) -> str:
        return " ".join(map(str, self.coefficients))


def fixed_depth_polynomial(k: int, n_max: int = 40) -> BinomialPolynomial:
    """
    Coefficients of H(n, k) in the basis C(n - k, j), j = 0..k.

    H(n, k) is read off the J-fraction modulo t^(k+1) for k <= n <= n_max.
    In this basis the coefficients are the forward differences of
    H(k, k), H(k+1, k), ... at the start. The fit uses k+1 values; the
    remaining ones up to n_max are checked against it.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if n_max < 2 * k + 3:
        raise ValueError(
            f"n_max = {n_max} is too small for depth {k}; need at least {2 * k + 3}"
        )
    series = jfrac_series(n_max, t_cap=k)
    values = [series.coeff(n, k) for n in range(k, n_max + 1)]
    coefficients = []
    diffs = list(values)
    for _ in range(k + 1):
        coefficients.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    poly = BinomialPolynomial(k, tuple(coefficients), n_max)
    for n, expected in enumerate(values, start=k):
        if poly(n) != expected:
            raise VerificationError(
                f"depth {k}: polynomial gives {poly(n)} at n={n}, "
                f"series gives {expected}"
            )
    return poly

