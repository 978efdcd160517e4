"""Exact linear algebra over F2 on bit-packed rows.

Vectors are Python ints (bit ``j`` is coordinate ``j``).  The elimination
kernels come from the compiled extension when it was built and from
:mod:`._pykernel` otherwise; set ``TATEDESCENT_PURE=1`` to force the
fallback.  Every public result is canonical (reduced echelon form), so both
backends give bit-identical answers.
"""

from .matrix import (
    BACKEND,
    BitMatrix,
    kernel_basis,
    kernel_of_columns,
    rank,
    rank_of,
    rref,
    rref_vectors,
    solve,
    solve_columns,
    Reducer,
    popcount,
    bits,
)

__all__ = [
    "BACKEND", "BitMatrix", "kernel_basis", "kernel_of_columns", "rank",
    "rank_of", "rref", "rref_vectors", "solve", "solve_columns", "Reducer",
    "popcount", "bits",
]
