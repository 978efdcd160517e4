import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tatedescent.f2 import (
    BitMatrix, Reducer, kernel_of_columns, rank_of, rref_vectors, solve_columns,
)
from tatedescent.f2 import _pykernel
from tatedescent.f2 import matrix as fm


def brute_span(vectors):
    span = {0}
    for v in vectors:
        span |= {x ^ v for x in span}
    return span


def brute_kernel_size(columns):
    n = 0
    for combo in itertools.product((0, 1), repeat=len(columns)):
        acc = 0
        for c, x in zip(columns, combo):
            if c and x:
                acc ^= c
        n += acc == 0
    return n


vectors = st.lists(st.integers(min_value=0, max_value=(1 << 7) - 1), max_size=7)


@settings(max_examples=200, derandomize=True)
@given(vectors)
def test_rank_matches_span_size(vs):
    assert 1 << rank_of(vs, 7) == len(brute_span(vs))


@settings(max_examples=200, derandomize=True)
@given(vectors)
def test_rref_is_canonical(vs):
    rows, piv = rref_vectors(vs, 7)
    assert brute_span(rows) == brute_span(vs)
    # each pivot appears in exactly one row
    for r, p in zip(rows, piv):
        assert all(((o >> p) & 1) == (o is r) for o in rows)
    shuffled = list(reversed(vs))
    assert rref_vectors(shuffled, 7) == (rows, piv)


@settings(max_examples=200, derandomize=True)
@given(vectors)
def test_kernel_dimension(cols):
    ker = kernel_of_columns(cols, 7)
    assert 1 << len(ker) == brute_kernel_size(cols)
    for k in ker:
        acc = 0
        for i, c in enumerate(cols):
            if (k >> i) & 1:
                acc ^= c
        assert acc == 0


@settings(max_examples=200, derandomize=True)
@given(vectors, st.integers(min_value=0, max_value=127))
def test_solve_columns(cols, b):
    x = solve_columns(cols, 7, b)
    reachable = b in brute_span(cols)
    assert (x is not None) == reachable
    if x is not None:
        acc = 0
        for i, c in enumerate(cols):
            if (x >> i) & 1:
                acc ^= c
        assert acc == b


def test_reducer_tracks_combinations():
    red = Reducer(track=True)
    for v in (0b110, 0b011, 0b101):
        red.add(v)
    assert len(red) == 2
    e = red.express(0b101)
    assert e is not None
    assert red.express(0b111) is None


def test_bitmatrix_product_and_transpose():
    a = BitMatrix.from_lists([[1, 0, 1], [0, 1, 1]])
    b = BitMatrix.from_lists([[1, 1], [0, 1], [1, 0]])
    assert (a @ b).to_lists() == [[0, 1], [1, 1]]
    assert a.transpose().transpose() == a
    assert BitMatrix.identity(3).rank() == 3


@pytest.mark.skipif(not hasattr(fm, "set_kernel"), reason="no backend switch")
def test_backends_agree():
    try:
        from tatedescent.f2 import _bitkernel
    except ImportError:
        pytest.skip("compiled kernel not built")
    import random

    rng = random.Random(7)
    for n in (5, 40, 130):
        for _ in range(20):
            rows = [rng.getrandbits(n) for _ in range(rng.randint(0, n))]
            assert _pykernel.rref_rows(list(rows), n) == _bitkernel.rref_rows(list(rows), n)
            assert _pykernel.rank_rows(list(rows), n) == _bitkernel.rank_rows(list(rows), n)
