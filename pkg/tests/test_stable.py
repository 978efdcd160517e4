import pytest

from tatedescent.catalog import joker, module_M, module_N
from tatedescent.modules import direct_sum, free_module, shift, trivial_module
from tatedescent.stable import (
    ExtCalculator, YonedaProducts, complete_resolution, cosyzygy, is_free, poincare_check,
    reduce, stably_isomorphic, syzygy,
)


def polynomial_v0_v1(s, t):
    """dim of F[v0, v1] with |v0| = (1, 1), |v1| = (1, 3) in degree (s, t)."""
    return sum(1 for b in range(s + 1) if (s - b) + 3 * b == t)


def test_ext_e1_unit_is_polynomial(e1):
    one = trivial_module(e1)
    dims = ExtCalculator(one, one, (0, 6)).dims()
    for s in range(0, 7):
        for t in range(0, 20):
            assert dims.get((s, t), 0) == polynomial_v0_v1(s, t), (s, t)


def test_ext_e1_unit_negative_side(e1):
    one = trivial_module(e1)
    dims = ExtCalculator(one, one, (-4, -1)).dims()
    # Tate duality (s, t) <-> (-1-s, -4-t)
    for (s, t), d in dims.items():
        assert polynomial_v0_v1(-1 - s, -4 - t) == d


def test_ext_a1_low_degrees(a1):
    one = trivial_module(a1)
    dims = ExtCalculator(one, one, (0, 3)).dims((0, 12))
    # 1, v0, eta, v0^2, eta^2, v0^3, alpha at (3, 7); eta^3 = 0
    expected = {(0, 0): 1, (1, 1): 1, (1, 2): 1, (2, 2): 1, (2, 4): 1, (3, 3): 1,
                (3, 7): 1}
    assert dims == expected


@pytest.mark.parametrize("name", ["A1", "E1"])
def test_poincare_duality(name):
    from tatedescent.hopf import builtin

    assert poincare_check(builtin(name), (-3, 2)) == []


def test_complete_resolution_checks(a1):
    res = complete_resolution(joker(), (-3, 3))
    assert res.check() == []
    # the joker is cyclic on its bottom class
    assert res.ranks()[0] == 1


def test_resolution_of_free_summand_passes_check(a1):
    m = direct_sum([joker(), free_module(a1, [1])])
    assert complete_resolution(m, (-2, 2)).check() == []


def test_free_module_has_zero_tate_ext(a1):
    f = free_module(a1, [0])
    one = trivial_module(a1)
    assert ExtCalculator(f, one, (-2, 2)).dims() == {}


def test_syzygy_of_M_is_shift(e1):
    m = module_M()
    assert stably_isomorphic(cosyzygy(m), shift(m, -1)).answer == "yes"


def test_syzygy_of_N_is_shift(e1):
    n = module_N()
    assert stably_isomorphic(cosyzygy(n), shift(n, -3)).answer == "yes"


def test_syzygy_cosyzygy_inverse(a1):
    j = joker()
    assert stably_isomorphic(syzygy(cosyzygy(j)), j).answer == "yes"


def test_reduce_strips_free_summands(a1):
    m = direct_sum([joker(), free_module(a1, [0, 3])])
    r, k = reduce(m)
    assert k == 2 and r.dim == 5
    assert is_free(free_module(a1, [2]))
    assert not is_free(joker())


def test_ext_e1_unit_M_three_towers(e1):
    one = trivial_module(e1)
    dims = ExtCalculator(one, module_M(), (0, 5)).dims()
    for s in range(6):
        assert sorted(t - s for (ss, t) in dims if ss == s) == [-7, -5, -3]


def test_yoneda_relations(a1):
    yo = YonedaProducts(a1, 6)
    v0, eta = (1, 1, 1), (1, 2, 1)
    assert yo.product(*v0, *eta) == 0
    assert yo.product(*eta, *eta) == 1
    eta2 = (2, 4, 1)
    assert yo.product(*eta, *eta2) == 0


def test_ext_rejects_mixed_algebras(a1, e1):
    with pytest.raises(ValueError):
        ExtCalculator(trivial_module(a1), trivial_module(e1), (0, 1))
