import pytest

from tatedescent.catalog import joker, module_M, module_N, unit
from tatedescent.modules import (
    AModule, coinduce, dual, free_module, hom_space, induce, is_module_iso, margolis_homology,
    margolis_invariants, restrict, shift, tensor, trivial_module, validate_module,
)


def test_catalog_modules_validate():
    for m in (joker(), module_M(), module_N(), unit("A1"), unit("E1")):
        assert validate_module(m) == []


def test_joker_shape():
    j = joker()
    assert sorted(j.degrees) == [-2, -1, 0, 1, 2]
    assert {k: sorted(v) for k, v in margolis_invariants(j).items()} == {
        "Sq1": [0], "Sq1Sq2+Sq2Sq1": [0]}


def test_margolis_homology_of_M_by_hand():
    m = module_M()
    q0, q1 = m.algebra.element("Q0"), m.algebra.element("Q1")
    # Q0: m2 -> m3, m4 -> m5 leaves m0 and m7
    assert margolis_homology(m, q0) == {0: 1, 7: 1}
    # Q1 pairs m0-m3, m2-m5, m4-m7
    assert margolis_homology(m, q1) == {}


def test_margolis_homology_of_N_by_hand():
    n = module_N()
    assert margolis_homology(n, n.algebra.element("Q0")) == {}
    assert margolis_homology(n, n.algebra.element("Q1")) == {0: 1, 1: 1}


def test_bad_action_rejected(e1):
    # Q0 twice nonzero violates Q0^2 = 0
    m = AModule(e1, ["a", "b", "c"], [0, 1, 2], [[0b010, 0b100, 0], [0, 0, 0]], "bad")
    assert validate_module(m) != []


def test_tensor_and_dual_dimensions():
    m, n = module_M(), module_N()
    t = tensor(m, n)
    assert t.dim == 24 and validate_module(t) == []
    d = dual(m)
    assert sorted(d.degrees) == sorted(-x for x in m.degrees)
    assert validate_module(tensor(d, m)) == []


def test_tensor_unit_is_identity():
    m = module_N()
    one = trivial_module(m.algebra)
    assert is_module_iso(tensor(one, m), m)


def test_restriction_of_free_is_free(a1, inc):
    f = free_module(a1, [0])
    r = restrict(inc, f)
    assert r.dim == 8
    # E(1) free of rank 2: Margolis homology vanishes
    assert all(not v for v in margolis_invariants(r).values())


def test_induce_and_coinduce_dimensions(inc):
    m = module_M()
    assert induce(inc, m).dim == 2 * m.dim
    assert coinduce(inc, m).dim == 2 * m.dim
    assert validate_module(induce(inc, m)) == []
    assert validate_module(coinduce(inc, m)) == []


def test_restriction_of_induced_unit(inc):
    # Ind(1) = A(1)//E(1) restricted to E(1): classes in degrees 0 and 2
    r = restrict(inc, induce(inc, trivial_module(inc.sub)))
    assert sorted(r.degrees) == [0, 2]


def test_hom_space_of_unit_into_M():
    one = trivial_module(module_M().algebra)
    # maps 1 -> M in degree shift -3 pick out the socle class m3
    maps = hom_space(one, module_M(), -3)
    assert len(maps) == 1


def test_shift_moves_degrees():
    m = shift(module_N(), 3)
    assert sorted(m.degrees) == [2, 3, 4, 5]


def test_iso_detects_difference():
    res = is_module_iso(module_N(), shift(module_N(), 1))
    assert not res


@pytest.mark.parametrize("factory", [joker, module_M, module_N])
def test_double_dual(factory):
    m = factory()
    assert is_module_iso(dual(dual(m)), m)
