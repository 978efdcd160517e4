import pytest

from tatedescent.algebra_objects import T_of, quotient_coalgebra
from tatedescent.catalog import joker, module_M, module_N
from tatedescent.charts import BigradedChart, SSPage
from tatedescent.descent import (
    InputError, amitsur, compare_page, detect_period, diagonal_classes, e1_end,
    from_reference_coords, n_presentation, periodic_extension, pic_page_from_end,
    presentation_dims, reconcile, solve_theta, theta_variants, to_reference_coords,
    variant_links, CosimplicialError,
)
from tatedescent.modules import dual, tensor, trivial_module


@pytest.fixture(scope="module")
def T(inc):
    return T_of(inc)


@pytest.fixture(scope="module")
def unit_page(inc, T):
    return e1_end(T, trivial_module(inc.ambient), 4, (-5, 1), tau=(-14, 4))


def test_quotient_coalgebra_dims(inc):
    qc = quotient_coalgebra(inc)
    assert sorted(qc.module.degrees) == [0, 2]


def test_T_is_exterior_in_degree_minus_two(T):
    assert sorted(T.module.degrees) == [-2, 0]
    top = next(1 << i for i, d in enumerate(T.module.degrees) if d == -2)
    assert T.product(top, top) == 0
    assert T.validate() == []


def test_cosimplicial_identities(T):
    cx = amitsur(T, 4, joker())
    assert cx.identity_report() == []
    assert [layer.dim for layer in cx.layers][:3] == [10, 20, 40]


def test_unit_page_d1_squared_and_normalization(unit_page):
    assert unit_page.d1_squared_zero()
    assert unit_page.e2().dims == unit_page.e2(normalized=False).dims


def test_unit_page_counting_diagonal(unit_page):
    e2 = unit_page.e2()
    cls = diagonal_classes(e2, 1, (1, 4))
    assert cls == [((2, -1, 0), 1)]


def test_reference_translation_roundtrip():
    for key in [(0, 0, 0), (2, -1, 0), (5, -3, -7)]:
        assert from_reference_coords(to_reference_coords(key)) == key
    assert to_reference_coords((2, -1, 0)) == (1, 0, 2)


def test_no_leibniz_theta_for_M():
    x = tensor(dual(module_M()), module_M())
    with pytest.raises(CosimplicialError):
        solve_theta(x, 5)
    assert theta_variants(x, 5) == []


def test_v0_linear_theta_for_M_exists():
    x = tensor(dual(module_M()), module_M())
    assert theta_variants(x, 5, derivation=False)


def test_theta_variants_for_N():
    x = tensor(dual(module_N()), module_N())
    vs = theta_variants(x, 6)
    assert len(vs) == 4
    assert sorted(sorted(variant_links(v)) for v in vs) == [
        [], [(0, -2)], [(0, -2), (1, -1)], [(1, -1)]]
    for v in vs:
        assert v.squares_to_zero


def test_presentation_dims_small_window():
    w = {"sigma": (-1, 0), "tau": (-6, 2), "n": (0, 1)}
    d = presentation_dims(n_presentation(), w)
    # x_k at (n, s, t) = (0, 0, k); v1^-1 moves to (0, -1, k - 3)
    for k in (-2, -1, 0, 1):
        assert d[(0, 0, k)] == 1
        assert d[(0, -1, k - 3)] == 1
    # eta at (0, 2, 1) in reference coordinates raises t by 2 and n by 1
    assert d[(1, 0, 0)] == 1


def test_compare_page_reports_mismatch():
    page = SSPage(2, {(0, 0, 0): 1, (1, 0, 2): 1})
    w = {"sigma": (0, 0), "tau": (0, 4), "n": (0, 1)}
    cmp = compare_page(page, {(0, 0, 0): 1}, w)
    assert not cmp.ok and cmp.mismatches == [((1, 0, 2), 1, 0)]


def test_periodic_extension_and_detection():
    base = SSPage(2, {(0, s, s): 1 for s in range(0, 4)})
    assert detect_period(base, (0, 3)) == (1, 1)
    ext = periodic_extension(base, (1, 1), (-3, 3), (0, 3))
    assert ext.dim(0, -2, -2) == 1 and ext.total() == 7


def test_pic_page_needs_row():
    page = SSPage(2, {(2, -1, 0): 1})
    with pytest.raises(InputError):
        pic_page_from_end(page)
    assert pic_page_from_end(page, {0: "Z+Z"}) == {(0, 0): "Z+Z", (2, 2): "F2"}


def test_reconcile_verdicts():
    e2 = SSPage(2, {(0, 0, 0): 1, (1, 0, 2): 1, (0, 1, 1): 1})
    abut = BigradedChart({(0, 0): 1, (1, 2): 1})
    rows = {(r[0], r[1]): r[4] for r in reconcile(e2, abut).rows}
    assert rows[(0, 0)].startswith("consistent")
    assert rows[(1, 1)].startswith("differentials")
    assert not reconcile(e2, abut).contradictions
    assert reconcile(SSPage(2, {}), abut).contradictions
