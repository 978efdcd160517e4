# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Packed uint64 elimination kernels; same contracts as _pykernel."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()


cdef inline int _nwords(Py_ssize_t nbits):
    return <int>((nbits + 63) // 64) if nbits > 0 else 1


def _pack(rows, Py_ssize_t nbits):
    cdef int nw = _nwords(nbits)
    cdef Py_ssize_t n = len(rows)
    out = np.zeros((n, nw), dtype=np.uint64)
    nbytes = nw * 8
    mask = (1 << int(nbits)) - 1
    for i, v in enumerate(rows):
        out[i, :] = np.frombuffer((v & mask).to_bytes(nbytes, "little"), dtype=np.uint64)
    return out


def _unpack_row(cnp.ndarray[cnp.uint64_t, ndim=2] a, Py_ssize_t i):
    return int.from_bytes(a[i].tobytes(), "little")


cdef Py_ssize_t _eliminate(uint64_t[:, ::1] a, Py_ssize_t ncols, Py_ssize_t limit,
                           bint full, list pivots):
    cdef Py_ssize_t nrows = a.shape[0]
    cdef Py_ssize_t nw = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, w
    cdef uint64_t bit, tmp
    for c in range(limit):
        if r == nrows:
            break
        w = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        i = r
        while i < nrows and not (a[i, w] & bit):
            i += 1
        if i == nrows:
            continue
        if i != r:
            for k in range(nw):
                tmp = a[i, k]; a[i, k] = a[r, k]; a[r, k] = tmp
        for j in range(0 if full else r + 1, nrows):
            if j != r and (a[j, w] & bit):
                for k in range(w, nw):
                    a[j, k] ^= a[r, k]
        pivots.append(c)
        r += 1
    return r


def rref_rows(rows, Py_ssize_t ncols):
    if not rows or ncols == 0:
        return [], []
    a = _pack(rows, ncols)
    pivots = []
    r = _eliminate(a, ncols, ncols, True, pivots)
    return [_unpack_row(a, i) for i in range(r)], pivots


def rank_rows(rows, Py_ssize_t ncols):
    if not rows or ncols == 0:
        return 0
    a = _pack(rows, ncols)
    return _eliminate(a, ncols, ncols, False, [])


def split_rows(rows, Py_ssize_t lowbits):
    if not rows:
        return [], []
    nbits = max(max(v.bit_length() for v in rows), lowbits, 1)
    a = _pack(rows, nbits)
    pivots = []
    r = _eliminate(a, nbits, lowbits, True, pivots)
    return ([_unpack_row(a, i) for i in range(r)],
            [_unpack_row(a, i) for i in range(r, a.shape[0])])
