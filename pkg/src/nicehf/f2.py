"""Dense bit-packed linear algebra over the field with two elements.

Rows are Python ints used as bitsets (bit ``j`` of row ``i`` is entry
``(i, j)``).  Rank uses the compiled word-parallel kernel from
:mod:`nicehf._f2core` when it is importable and falls back to xor-basis
elimination on Python ints otherwise (or when ``NICEHF_F2_BACKEND=python``).
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

try:  # compiled kernel
    import numpy as np

    from nicehf import _f2core
except ImportError:  # pragma: no cover - depends on the build
    _f2core = None

# NICEHF_F2_BACKEND=python forces the fallback even when the kernel is built.
BACKEND = "cython" if _f2core is not None and os.environ.get("NICEHF_F2_BACKEND") != "python" else "python"


class F2Matrix:
    """A ``rows x cols`` matrix over F2; acts on column vectors."""

    __slots__ = ("rows", "cols", "bits")

    def __init__(self, rows: int, cols: int, bits: Sequence[int] | None = None):
        self.rows = rows
        self.cols = cols
        if bits is None:
            bits = [0] * rows
        bits = list(bits)
        if len(bits) != rows:
            raise ValueError(f"{len(bits)} packed rows for a {rows}-row matrix")
        mask = (1 << cols) - 1
        if any(b & ~mask for b in bits):
            raise ValueError("entries beyond the column count")
        self.bits = bits

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = len(dense[0]) if dense else 0
        bits = []
        for row in dense:
            v = 0
            for j, x in enumerate(row):
                if x & 1:
                    v |= 1 << j
            bits.append(v)
        return cls(len(dense), cols, bits)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "F2Matrix":
        """Entries listed with multiplicity; each occurrence toggles the bit."""
        bits = [0] * rows
        for i, j in entries:
            bits[i] ^= 1 << j
        return cls(rows, cols, bits)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.bits[i] >> j) & 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, F2Matrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.bits == other.bits
        )

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.rows, self.cols, [a ^ b for a, b in zip(self.bits, other.bits)])

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        out = []
        for row in self.bits:
            acc = 0
            while row:
                low = row & -row
                acc ^= other.bits[low.bit_length() - 1]
                row ^= low
            out.append(acc)
        return F2Matrix(self.rows, other.cols, out)

    def transpose(self) -> "F2Matrix":
        out = [0] * self.cols
        for i, row in enumerate(self.bits):
            while row:
                low = row & -row
                out[low.bit_length() - 1] |= 1 << i
                row ^= low
        return F2Matrix(self.cols, self.rows, out)

    def hstack(self, other: "F2Matrix") -> "F2Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return F2Matrix(self.rows, self.cols + other.cols,
                        [a | (b << self.cols) for a, b in zip(self.bits, other.bits)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "F2Matrix":
        out = []
        for i in rows:
            row = self.bits[i]
            v = 0
            for k, j in enumerate(cols):
                if (row >> j) & 1:
                    v |= 1 << k
            out.append(v)
        return F2Matrix(len(rows), len(cols), out)

    def is_zero(self) -> bool:
        return not any(self.bits)

    def nonzero(self) -> list[tuple[int, int]]:
        out = []
        for i, row in enumerate(self.bits):
            while row:
                low = row & -row
                out.append((i, low.bit_length() - 1))
                row ^= low
        return out

    def to_dense(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.cols)] for row in self.bits]

    def __repr__(self) -> str:
        return f"F2Matrix({self.rows}x{self.cols}, nnz={len(self.nonzero())})"


def _rank_python(bits: Sequence[int]) -> int:
    basis: dict[int, int] = {}
    for v in bits:
        while v:
            hb = v.bit_length() - 1
            b = basis.get(hb)
            if b is None:
                basis[hb] = v
                break
            v ^= b
    return len(basis)


def _pack_words(m: F2Matrix):
    nw = max(1, (m.cols + 63) // 64)
    arr = np.zeros((m.rows, nw), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, row in enumerate(m.bits):
        k = 0
        while row:
            arr[i, k] = row & mask
            row >>= 64
            k += 1
    return arr


def rank(m: F2Matrix, backend: str | None = None) -> int:
    """Rank over F2.  The input is never mutated."""
    backend = backend or BACKEND
    if m.rows == 0 or m.cols == 0:
        return 0
    if backend == "cython":
        if _f2core is None:
            raise RuntimeError("compiled F2 kernel not available")
        return int(_f2core.rank_words(_pack_words(m), m.cols))
    return _rank_python(m.bits)


def rank_naive(m: F2Matrix) -> int:
    """Reference eliminator: one bit at a time on a dense copy."""
    a = m.to_dense()
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(m.rows):
            if i != r and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def homology_rank(d_in: F2Matrix, d_out: F2Matrix, check: bool = True) -> int:
    """dim ker(d_out) - rank(d_in) for ``C' --d_in--> C --d_out--> C''``."""
    if d_in.rows != d_out.cols:
        raise ValueError("d_in and d_out are not composable")
    if check and not (d_out @ d_in).is_zero():
        raise ValueError("d_out o d_in is nonzero")
    n = d_out.cols
    return n - rank(d_out) - rank(d_in)
