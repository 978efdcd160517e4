"""Randomized structural checks over small random modules."""

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_module
from tatedescent.algebra_objects import T_of
from tatedescent.hopf import builtin_A1, builtin_E1
from tatedescent.descent import e1_page
from tatedescent.modules import (
    coinduce, hom_space, induce, margolis_invariants, restrict, tensor, trivial_module,
)
from tatedescent.stable import ExtCalculator, YonedaProducts, complete_resolution, is_free

A1, INC = builtin_A1()
E1 = builtin_E1()
T = T_of(INC)
YO = YonedaProducts(A1, 6)

seeds = st.integers(min_value=0, max_value=10**6)
many = settings(max_examples=200, derandomize=True, deadline=None)


@many
@given(seeds)
def test_detection_by_quasi_elementary_restriction(seed):
    m = random_module(A1, seed)
    r = restrict(INC, m)
    margolis_zero = all(not v for v in margolis_invariants(r).values())
    assert is_free(m) == is_free(r) == margolis_zero


@many
@given(seeds)
def test_e1_detection_is_margolis(seed):
    m = random_module(E1, seed)
    assert is_free(m) == all(not v for v in margolis_invariants(m).values())


@many
@given(seeds, seeds)
def test_restriction_is_monoidal(s1, s2):
    m = random_module(A1, s1, max_gens=1)
    n = random_module(A1, s2, max_gens=1)
    lhs = restrict(INC, tensor(m, n))
    rhs = tensor(restrict(INC, m), restrict(INC, n))
    assert lhs.degrees == rhs.degrees
    assert lhs.actions == rhs.actions


@many
@given(seeds, seeds, st.integers(min_value=-1, max_value=1))
def test_induction_restriction_adjunction(s1, s2, t):
    n = random_module(E1, s1, max_gens=1)
    m = random_module(A1, s2, max_gens=1)
    assert len(hom_space(induce(INC, n), m, t)) == len(hom_space(n, restrict(INC, m), t))


@many
@given(seeds, seeds, st.integers(min_value=-1, max_value=1))
def test_restriction_coinduction_adjunction(s1, s2, t):
    m = random_module(A1, s1, max_gens=1)
    n = random_module(E1, s2, max_gens=1)
    assert len(hom_space(restrict(INC, m), n, t)) == len(hom_space(m, coinduce(INC, n), t))


@many
@given(seeds)
def test_coinduction_detects_freeness(seed):
    m = random_module(E1, seed)
    assert is_free(coinduce(INC, m)) == is_free(m)


@many
@given(seeds, st.sampled_from(["A1", "E1"]))
def test_complete_resolution_is_exact(seed, name):
    h = A1 if name == "A1" else E1
    m = random_module(h, seed)
    assert complete_resolution(m, (-2, 2)).check() == []


@many
@given(seeds)
def test_normalized_cochains_agree(seed):
    x = random_module(A1, seed, max_gens=1)
    data = e1_page(T, trivial_module(A1), x, 2, (-1, 1), tau=(-8, 8))
    assert data.d1_squared_zero()
    assert data.e2().dims == data.e2(normalized=False).dims


def _classes(cx, s, t):
    g = cx.group(s, t)
    return [1 << i for i in range(g.dim)]


@many
@given(seeds)
def test_v0_eta_and_eta_cubed_act_trivially(seed):
    x = random_module(A1, seed, max_gens=1)
    cx = ExtCalculator(trivial_module(A1), x, (0, 5))
    for s in (0, 1):
        for t in range(s - 4, s + 6):
            for c in _classes(cx, s, t):
                cv = YO.act(cx, s, t, c, 1, 1, 1)
                assert YO.act(cx, s + 1, t + 1, cv, 1, 2, 1) == 0
                ce = YO.act(cx, s, t, c, 1, 2, 1)
                ce = YO.act(cx, s + 1, t + 2, ce, 1, 2, 1)
                assert YO.act(cx, s + 2, t + 4, ce, 1, 2, 1) == 0


@pytest.mark.parametrize("s,t", [(1, 1), (1, 2), (2, 4)])
def test_relations_on_unit_generators(s, t):
    # sanity for the randomized test: the acting classes are nonzero
    assert YO.calc.group(s, t).dim == 1
