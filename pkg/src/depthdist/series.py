"""
Truncated bivariate power series with exact integer coefficients.

A series lives in a box: z-degree at most ``z_order`` and t-degree at most
``t_cap``. Everything outside the box is dropped after every operation,
which is exact because the dropped monomials form an ideal.

Row n of a series is the t-polynomial multiplying z^n. Rows are products of
long polynomials with huge coefficients, so row products go through
Kronecker substitution: each row is packed into one big integer and the
multiplication is left to GMP.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping

from .errors import SeriesError

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - pure-int fallback, much slower
    mpz = int

__all__ = [
    "TruncatedSeries",
    "monomial",
    "add",
    "mul",
    "reciprocal",
]

Row = tuple[int, ...]

# below this many coefficient products schoolbook beats packing
_SCHOOLBOOK_WORK = 256


def _trim(values: list[int]) -> Row:
    end = len(values)
    while end and values[end - 1] == 0:
        end -= 1
    return tuple(values[:end])


def _max_bits(row: Row) -> int:
    return max(abs(x).bit_length() for x in row)


def _pack(row: Row, nbytes: int):
    # slots must satisfy |x| < 2**(8*nbytes - 1)
    pos = b"".join((x if x > 0 else 0).to_bytes(nbytes, "little") for x in row)
    value = mpz(int.from_bytes(pos, "little"))
    if any(x < 0 for x in row):
        neg = b"".join((-x if x < 0 else 0).to_bytes(nbytes, "little") for x in row)
        value -= mpz(int.from_bytes(neg, "little"))
    return value


def _unpack(value, nbytes: int, length: int) -> list[int]:
    width = 8 * nbytes
    half = 1 << (width - 1)
    # adding half to every slot makes all digits nonnegative without borrows
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * length, "little")
    raw = int(value) + offset
    data = raw.to_bytes(nbytes * length + 1, "little")
    return [
        int.from_bytes(data[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(length)
    ]


def _dot(pairs: list[tuple[Row, Row]], cap: int) -> Row:
    """Sum of a*b over the pairs, as t-polynomials truncated to degree cap."""
    pairs = [(a[: cap + 1], b[: cap + 1]) for a, b in pairs if a and b]
    if not pairs:
        return ()
    length = min(cap + 1, max(len(a) + len(b) - 1 for a, b in pairs))
    work = sum(len(a) * len(b) for a, b in pairs)
    if work <= _SCHOOLBOOK_WORK:
        out = [0] * length
        for a, b in pairs:
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b[: length - i]):
                    out[i + j] += x * y
        return _trim(out)
    bits = max(
        _max_bits(a) + _max_bits(b) + min(len(a), len(b)).bit_length()
        for a, b in pairs
    )
    bits += len(pairs).bit_length() + 2
    nbytes = (bits + 7) // 8
    acc = mpz(0)
    for a, b in pairs:
        acc += _pack(a, nbytes) * _pack(b, nbytes)
    full = max(len(a) + len(b) - 1 for a, b in pairs)
    return _trim(_unpack(acc, nbytes, full)[:length])


def _add_rows(a: Row, b: Row, sign: int = 1) -> Row:
    if len(a) < len(b):
        out = list(a) + [0] * (len(b) - len(a))
    else:
        out = list(a)
    for i, y in enumerate(b):
        out[i] += sign * y
    return _trim(out)


class TruncatedSeries:
    """
    Series sum of c * t^k * z^n over the box 0 <= n <= z_order, 0 <= k <= t_cap.

    Immutable. ``t_cap`` defaults to floor(z_order**2 / 4), the largest
    depth that can occur among permutations of size z_order.
    """

    __slots__ = ("z_order", "t_cap", "_rows")

    def __init__(
        self,
        rows: Iterable[Iterable[int]] = (),
        z_order: int = 0,
        t_cap: int | None = None,
    ):
        if z_order < 0:
            raise SeriesError(f"z_order must be nonnegative, got {z_order}")
        if t_cap is None:
            t_cap = z_order * z_order // 4
        if t_cap < 0:
            raise SeriesError(f"t_cap must be nonnegative, got {t_cap}")
        rows = [_trim([int(c) for c in row][: t_cap + 1]) for row in rows]
        rows = rows[: z_order + 1]
        rows += [()] * (z_order + 1 - len(rows))
        object.__setattr__(self, "z_order", z_order)
        object.__setattr__(self, "t_cap", t_cap)
        object.__setattr__(self, "_rows", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def _from_trimmed(cls, rows: list[Row], z_order: int, t_cap: int):
        s = object.__new__(cls)
        object.__setattr__(s, "z_order", z_order)
        object.__setattr__(s, "t_cap", t_cap)
        object.__setattr__(s, "_rows", tuple(rows))
        return s

    @classmethod
    def from_terms(
        cls, terms: Mapping[tuple[int, int], int], z_order: int, t_cap: int | None = None
    ) -> TruncatedSeries:
        """Build from a mapping (z-degree n, t-degree k) -> coefficient."""
        if t_cap is None:
            t_cap = z_order * z_order // 4
        rows = [[0] * (t_cap + 1) for _ in range(z_order + 1)]
        for (n, k), c in terms.items():
            if n < 0 or k < 0:
                raise SeriesError(f"negative exponent in term {(n, k)}")
            if n <= z_order and k <= t_cap:
                rows[n][k] += c
        return cls(rows, z_order, t_cap)

    @classmethod
    def zero(cls, z_order: int, t_cap: int | None = None) -> TruncatedSeries:
        return cls((), z_order, t_cap)

    @classmethod
    def one(cls, z_order: int, t_cap: int | None = None) -> TruncatedSeries:
        return cls([[1]], z_order, t_cap)

    @property
    def box(self) -> tuple[int, int]:
        return (self.z_order, self.t_cap)

    def row(self, n: int) -> Row:
        """Coefficients of z^n as a t-polynomial, trailing zeros removed."""
        if 0 <= n <= self.z_order:
            return self._rows[n]
        return ()

    def rows(self) -> tuple[Row, ...]:
        return self._rows

    def coeff(self, n: int, k: int) -> int:
        row = self.row(n)
        return row[k] if 0 <= k < len(row) else 0

    def terms(self) -> Iterator[tuple[int, int, int]]:
        """Nonzero coefficients as (n, k, c), ordered by n then k."""
        for n, row in enumerate(self._rows):
            for k, c in enumerate(row):
                if c:
                    yield n, k, c

    def is_zero(self) -> bool:
        return not any(self._rows)

    def at_t_one(self) -> tuple[int, ...]:
        """Coefficients of z^n after substituting t = 1."""
        return tuple(sum(row) for row in self._rows)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.box == other.box and self._rows == other._rows

    __hash__ = None

    def __repr__(self) -> str:
        shown = []
        for n, k, c in self.terms():
            shown.append(f"{c}*t^{k}*z^{n}")
            if len(shown) == 8:
                shown.append("...")
                break
        body = " + ".join(shown) if shown else "0"
        return f"TruncatedSeries({body}; z<={self.z_order}, t<={self.t_cap})"

    def _check_box(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if self.box != other.box:
            raise SeriesError(f"box mismatch: {self.box} vs {other.box}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check_box(other)
        rows = [_add_rows(a, b) for a, b in zip(self._rows, other._rows)]
        return self._from_trimmed(rows, *self.box)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check_box(other)
        rows = [_add_rows(a, b, -1) for a, b in zip(self._rows, other._rows)]
        return self._from_trimmed(rows, *self.box)

    def __neg__(self) -> TruncatedSeries:
        rows = [tuple(-c for c in row) for row in self._rows]
        return self._from_trimmed(rows, *self.box)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check_box(other)
        a, b = self._rows, other._rows
        rows = [
            _dot([(a[i], b[n - i]) for i in range(n + 1)], self.t_cap)
            for n in range(self.z_order + 1)
        ]
        return self._from_trimmed(rows, *self.box)

    def reciprocal(self) -> TruncatedSeries:
        """
        Inverse within the box, for series whose constant term is 1.

        Row n of the inverse is solved from rows 0..n-1:
        r_n = -r_0 * sum_{j=1..n} a_j r_{n-j}, with r_0 = 1/a_0 in t.
        """
        a = self._rows
        a0 = a[0]
        if not a0 or a0[0] != 1:
            constant = a0[0] if a0 else 0
            raise SeriesError(f"constant term must be 1 to invert, got {constant}")
        cap = self.t_cap
        r0 = _invert_t_polynomial(a0, cap)
        out: list[Row] = [r0]
        for n in range(1, self.z_order + 1):
            s = _dot([(a[j], out[n - j]) for j in range(1, n + 1)], cap)
            if r0 != (1,):
                s = _dot([(r0, s)], cap)
            out.append(tuple(-c for c in s))
        return self._from_trimmed(out, *self.box)

    def truncate(self, z_order: int, t_cap: int) -> TruncatedSeries:
        """Project into a box no larger than the current one."""
        if z_order > self.z_order or t_cap > self.t_cap:
            raise SeriesError(
                f"cannot grow box {self.box} to {(z_order, t_cap)} by truncation"
            )
        rows = [row[: t_cap + 1] for row in self._rows[: z_order + 1]]
        return TruncatedSeries(rows, z_order, t_cap)

    def times_monomial(
        self, c: int, k: int, n: int, z_order: int, t_cap: int
    ) -> TruncatedSeries:
        """
        c * t^k * z^n * self, placed in the box (z_order, t_cap).

        Exact as long as z_order - n <= self.z_order and t_cap - k <=
        self.t_cap, so that no term of the product inside the new box depends
        on a coefficient this series has already dropped.
        """
        if k < 0 or n < 0:
            raise SeriesError("monomial exponents must be nonnegative")
        if z_order - n > self.z_order or t_cap - k > self.t_cap:
            raise SeriesError(
                f"t^{k} z^{n} times a series in box {self.box} is not determined "
                f"inside box {(z_order, t_cap)}"
            )
        rows: list[Row] = [()] * (z_order + 1)
        if c and t_cap >= k:
            pad = (0,) * k
            keep = t_cap + 1 - k
            for i in range(max(0, z_order + 1 - n)):
                row = self._rows[i]
                if row:
                    rows[i + n] = pad + tuple(c * x for x in row[:keep])
        return TruncatedSeries._from_trimmed([_trim(list(r)) for r in rows], z_order, t_cap)


def _invert_t_polynomial(a0: Row, cap: int) -> Row:
    if a0 == (1,):
        return (1,)
    inv = [1] + [0] * cap
    for k in range(1, cap + 1):
        inv[k] = -sum(a0[j] * inv[k - j] for j in range(1, min(k, len(a0) - 1) + 1))
    return _trim(inv)


def monomial(
    c: int, k: int, n: int, z_order: int, t_cap: int | None = None
) -> TruncatedSeries:
    """c * t^k * z^n, or the zero series when it falls outside the box."""
    if k < 0 or n < 0:
        raise SeriesError("monomial exponents must be nonnegative")
    if t_cap is None:
        t_cap = z_order * z_order // 4
    rows: list[Row] = [()] * (z_order + 1)
    if c and n <= z_order and k <= t_cap:
        rows[n] = (0,) * k + (c,)
    return TruncatedSeries._from_trimmed(rows, z_order, t_cap)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    return a.reciprocal()
