"""Pure-Python elimination kernels on int-bitset rows (bit j = column j)."""

from __future__ import annotations


def rref_rows(rows, ncols):
    """Return (reduced rows, pivot columns) for a list of int rows.

    Zero rows are dropped from the result; pivots come out ascending.
    """
    mask = (1 << ncols) - 1
    pivot_of = {}
    for v in rows:
        v &= mask
        while v:
            c = (v & -v).bit_length() - 1
            p = pivot_of.get(c)
            if p is None:
                pivot_of[c] = v
                break
            v ^= p
    cols = sorted(pivot_of)
    reduced = {}
    for c in reversed(cols):
        v = pivot_of[c]
        rest = v >> (c + 1)
        if rest:
            for b in cols:
                if b > c and (v >> b) & 1:
                    v ^= reduced[b]
        reduced[c] = v
    return [reduced[c] for c in cols], cols


def rank_rows(rows, ncols):
    mask = (1 << ncols) - 1
    pivot_of = {}
    for v in rows:
        v &= mask
        while v:
            c = (v & -v).bit_length() - 1
            p = pivot_of.get(c)
            if p is None:
                pivot_of[c] = v
                break
            v ^= p
    return len(pivot_of)


def split_rows(rows, lowbits):
    """Eliminate on the low ``lowbits`` columns only.

    Returns (pivot rows, dependent rows): the second list holds the rows
    whose low part reduced to zero, with their high part carried along.
    Used for kernel computations with an identity block appended.
    """
    low = (1 << lowbits) - 1
    pivot_of = {}
    dependent = []
    for v in rows:
        while True:
            w = v & low
            if not w:
                dependent.append(v)
                break
            c = (w & -w).bit_length() - 1
            p = pivot_of.get(c)
            if p is None:
                pivot_of[c] = v
                break
            v ^= p
    return [pivot_of[c] for c in sorted(pivot_of)], dependent
