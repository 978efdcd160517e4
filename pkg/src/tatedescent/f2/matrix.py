from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import _pykernel

if os.environ.get("TATEDESCENT_PURE"):
    _kernel = _pykernel
    BACKEND = "python"
else:
    try:
        from . import _bitkernel as _kernel  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:  # extension not built
        _kernel = _pykernel
        BACKEND = "python"


def popcount(v: int) -> int:
    return bin(v).count("1")


def bits(v: int):
    """Yield the set bit positions of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def set_kernel(name: str) -> None:
    """Switch backend at runtime ("python" or "cython"); used by benchmarks."""
    global _kernel, BACKEND
    if name == "python":
        _kernel, BACKEND = _pykernel, "python"
    else:
        from . import _bitkernel
        _kernel, BACKEND = _bitkernel, "cython"


@dataclass(frozen=True)
class BitMatrix:
    """Dense F2 matrix stored as one int per row.

    Bits at positions >= ``cols`` are always zero.
    """

    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        mask = (1 << self.ncols) - 1
        if any(r & ~mask for r in self.rows):
            raise ValueError("entries outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "BitMatrix":
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BitMatrix":
        ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum(1 << j for j, x in enumerate(row) if x & 1))
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def to_lists(self) -> list:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return BitMatrix(self.ncols, self.nrows, tuple(cols))

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            acc = 0
            for j in bits(r):
                acc ^= other.rows[j]
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def apply(self, x: int) -> int:
        """Return m . x as an int over the row index."""
        out = 0
        for i, r in enumerate(self.rows):
            if popcount(r & x) & 1:
                out |= 1 << i
        return out

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.nrows != other.nrows:
            raise ValueError("dimension mismatch")
        rows = tuple(a | (b << self.ncols) for a, b in zip(self.rows, other.rows))
        return BitMatrix(self.nrows, self.ncols + other.ncols, rows)

    def rank(self) -> int:
        return _kernel.rank_rows(list(self.rows), self.ncols)


def rref_vectors(vectors: Iterable[int], nbits: int) -> tuple[list[int], list[int]]:
    """Reduced echelon basis of the span of ``vectors``, with pivots."""
    vs = [v for v in vectors if v]
    if not vs:
        return [], []
    return _kernel.rref_rows(vs, nbits)


def rank_of(vectors: Iterable[int], nbits: int) -> int:
    vs = [v for v in vectors if v]
    if not vs:
        return 0
    return _kernel.rank_rows(vs, nbits)


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    reduced, pivots = rref_vectors(m.rows, m.ncols)
    rows = tuple(reduced) + (0,) * (m.nrows - len(reduced))
    return BitMatrix(m.nrows, m.ncols, rows), pivots


def rank(m: BitMatrix) -> int:
    return m.rank()


def kernel_of_columns(columns: Sequence[int], nrows: int) -> list[int]:
    """Canonical basis of {x : sum_i x_i columns[i] = 0}.

    ``columns[i]`` is the image of the i-th basis vector as an int over
    ``nrows`` coordinates.  Result rows are in reduced echelon form.
    """
    n = len(columns)
    if n == 0:
        return []
    aug = [c | (1 << (nrows + i)) for i, c in enumerate(columns)]
    _, dependent = _kernel.split_rows(aug, nrows)
    kernel = [v >> nrows for v in dependent]
    return rref_vectors(kernel, n)[0]


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Rows spanning the null space {v : m v^T = 0}."""
    basis = kernel_of_columns(m.transpose().rows, m.nrows)
    return BitMatrix(len(basis), m.ncols, tuple(basis))


def _transpose_vectors(vectors: Sequence[int], nbits: int) -> list[int]:
    out = [0] * nbits
    for i, v in enumerate(vectors):
        for j in bits(v):
            out[j] |= 1 << i
    return out


def solve_rows(rows: Sequence[int], ncols: int, b: int) -> Optional[int]:
    """Solve (row_i . x) = b_i for all i; free variables set to zero."""
    aug = [r | (((b >> i) & 1) << ncols) for i, r in enumerate(rows)]
    reduced, pivots = rref_vectors(aug, ncols + 1)
    x = 0
    for row, p in zip(reduced, pivots):
        if p == ncols:
            return None
        if (row >> ncols) & 1:
            x |= 1 << p
    return x


def solve_columns(columns: Sequence[int], nrows: int, b: int) -> Optional[int]:
    """Solve sum_i x_i columns[i] = b; free variables set to zero."""
    return solve_rows(_transpose_vectors(columns, nrows), len(columns), b)


def solve(m: BitMatrix, b) -> Optional[int]:
    """Return x with m x = b, or None.

    ``b`` may be an int over the row index or a 0/1 sequence of length rows.
    Among all solutions, the one with every non-pivot variable zero is
    returned, so the answer is independent of the backend.
    """
    if not isinstance(b, int):
        if len(b) != m.nrows:
            raise ValueError("length(b) must equal rows(m)")
        b = sum(1 << i for i, x in enumerate(b) if x & 1)
    elif b >> m.nrows:
        raise ValueError("b has bits beyond rows(m)")
    return solve_rows(m.rows, m.ncols, b)


class Reducer:
    """Incremental span with reduction, keyed by lowest set bit.

    ``add`` returns False when the vector was already in the span.  With
    ``track=True`` each stored vector remembers which inputs it combines, so
    ``express`` can write a vector in terms of the added ones.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[int, int] = {}
        self.combos: dict[int, int] = {}
        self.track = track
        self.count = 0

    def reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        while v:
            c = (v & -v).bit_length() - 1
            p = self.pivots.get(c)
            if p is None:
                break
            v ^= p
            if self.track:
                combo ^= self.combos[c]
        return v, combo

    def add(self, v: int) -> bool:
        idx = self.count
        self.count += 1
        r, combo = self.reduce(v)
        if not r:
            return False
        c = (r & -r).bit_length() - 1
        self.pivots[c] = r
        if self.track:
            self.combos[c] = combo ^ (1 << idx)
        return True

    def contains(self, v: int) -> bool:
        return not self.reduce(v)[0]

    def express(self, v: int) -> Optional[int]:
        r, combo = self.reduce(v)
        return None if r else combo

    def __len__(self) -> int:
        return len(self.pivots)
