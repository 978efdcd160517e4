from tatedescent.catalog import joker, module_M, module_N
from tatedescent.modules import restrict, shift, trivial_module, validate_module
from tatedescent.piclift import (
    brute_force_lifts, is_invertible, lift_bound, lift_obstruction_report, pic_element,
    pic_report,
)
from tatedescent.stable import stably_isomorphic, syzygy


def test_joker_is_invertible(a1):
    cert = is_invertible(joker())
    assert cert is not None and cert.check()


def test_M_and_N_are_not_invertible():
    # M* (x) M and N* (x) N carry more than one stable summand
    assert is_invertible(module_M()) is None
    assert is_invertible(module_N()) is None


def test_pic_element_shapes(a1):
    assert pic_element(a1, 0, 0, 1).dim == 5
    assert stably_isomorphic(pic_element(a1, 1, 0), syzygy(trivial_module(a1))).answer == "yes"


def test_exact_lifts_of_N_restrict_to_N(inc):
    census = brute_force_lifts(inc, module_N())
    assert census.exhaustive and census.count == 2
    for m in census.lifts:
        assert validate_module(m) == []
        assert restrict(inc, m).actions == module_N().actions


def test_stable_census_of_N_is_8(inc):
    assert brute_force_lifts(inc, module_N(), stable=True).count == 8


def test_no_lifts_of_M(inc):
    assert brute_force_lifts(inc, module_M()).count == 0
    assert brute_force_lifts(inc, module_M(), stable=True).count == 0


def test_stable_lifts_of_unit_are_unit_and_joker(inc, a1):
    census = brute_force_lifts(inc, trivial_module(inc.sub), stable=True)
    assert census.count == 2
    dims = sorted(m.dim for m in census.lifts)
    assert dims[0] == 1


def test_lift_bounds(inc, a1):
    assert lift_bound(inc, module_N()).bound == 8
    assert lift_bound(inc, module_M()).bound == 0
    unit_b = lift_bound(inc, trivial_module(inc.sub), lift=trivial_module(a1))
    assert unit_b.bound == 2 and unit_b.classes == [((2, -1, 0), 1)]


def test_obstruction_report_M_nonempty(inc):
    rep = lift_obstruction_report(inc, module_M())
    assert rep.leibniz_certificate and not rep.empty
    links = {(-3, -5), (4, 2)}
    linked = lift_obstruction_report(inc, module_M(), links=links)
    assert [key for key, _ in linked.classes] == [(5, -3, 0)]


def test_pic_report_a1(inc, a1):
    rep = pic_report(inc, a1)
    assert rep.status == "determined"
    assert rep.group == "Z ⊕ Z ⊕ Z/2"
    assert rep.generators == ["[1]-shift", "Ω", "joker"]
    assert all(rep.certificates.values())
    assert len(rep.diagonal) == 1


def test_pic_report_e1_passthrough(e1):
    rep = pic_report(None, e1)
    assert rep.group == "Z ⊕ Z" and rep.status == "determined"


def test_shift_is_invertible(a1):
    assert is_invertible(shift(trivial_module(a1), 3)) is not None
