from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rings import RingTag


@dataclass(frozen=True)
class RingMatrix:
    """Dense immutable matrix over a tagged ring.  ``entries`` is a tuple of rows."""

    ring: RingTag
    rows: int
    cols: int
    entries: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(
                f"matrix data does not have shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, ring: RingTag, rows: Sequence[Sequence], cols: int | None = None) -> RingMatrix:
        data = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("column count is ambiguous for a matrix without rows")
            cols = len(data[0])
        return cls(ring, len(data), cols, data)

    @classmethod
    def zero(cls, ring: RingTag, rows: int, cols: int) -> RingMatrix:
        z = ring.zero()
        return cls(ring, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, ring: RingTag, n: int) -> RingMatrix:
        z, o = ring.zero(), ring.one()
        return cls(ring, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def is_zero(self) -> bool:
        return all(_is_zero(x) for r in self.entries for x in r)

    def transpose(self) -> RingMatrix:
        return RingMatrix(self.ring, self.cols, self.rows,
                          tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def __matmul__(self, other: RingMatrix) -> RingMatrix:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero()
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if not _is_zero(a) and not _is_zero(b):
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return RingMatrix(self.ring, self.rows, other.cols, tuple(out))

    def __add__(self, other: RingMatrix) -> RingMatrix:
        if self.shape != other.shape or self.ring != other.ring:
            raise ValueError("incompatible matrices")
        return RingMatrix(self.ring, self.rows, self.cols,
                          tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> RingMatrix:
        return RingMatrix(self.ring, self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def vstack(self, other: RingMatrix) -> RingMatrix:
        if self.cols != other.cols or self.ring != other.ring:
            raise ValueError("vstack needs matching column counts")
        return RingMatrix(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def block_diag(self, other: RingMatrix) -> RingMatrix:
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        z = self.ring.zero()
        top = tuple(r + (z,) * other.cols for r in self.entries)
        bottom = tuple((z,) * self.cols + r for r in other.entries)
        return RingMatrix(self.ring, self.rows + other.rows, self.cols + other.cols, top + bottom)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.entries) + "]"


def _is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()
