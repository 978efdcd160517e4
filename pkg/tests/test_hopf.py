import pytest

from tatedescent.hopf import (
    A1_PRESENTATION, E1_PRESENTATION, PresentationError, builtin, builtin_A1, builtin_E1,
    from_presentation, quasi_elementary_inclusions, to_table, validate_hopf,
)


def graded(h):
    out = {}
    for d in h.degrees:
        out[d] = out.get(d, 0) + 1
    return out


def test_a1_graded_dimensions(a1):
    assert a1.dim == 8
    assert graded(a1) == {0: 1, 1: 1, 2: 1, 3: 2, 4: 1, 5: 1, 6: 1}
    assert a1.top_degree == 6


def test_e1_graded_dimensions(e1):
    assert graded(e1) == {0: 1, 1: 1, 3: 1, 4: 1}
    assert e1.top_degree == 4


@pytest.mark.parametrize("name", ["A1", "E1"])
def test_builtins_validate(name):
    assert validate_hopf(builtin(name)) == []


def test_presentations_close_to_builtin_tables(a1, e1):
    assert to_table(from_presentation(**A1_PRESENTATION)) == to_table(a1)
    assert to_table(from_presentation(**E1_PRESENTATION)) == to_table(e1)


def test_adem_relation(a1):
    # Sq2 Sq2 = Sq1 Sq2 Sq1
    assert a1.element("Sq2Sq2") == a1.element("Sq1Sq2Sq1")
    assert a1.element("Sq1Sq1") == 0


def test_coproduct_of_composite(a1):
    d = a1.delta(a1.element("Sq2Sq1"))
    named = sorted((a1.names[p], a1.names[q]) for p, q in d)
    assert named == sorted([("Sq2Sq1", "1"), ("Sq2", "Sq1"), ("Sq1", "Sq2"), ("1", "Sq2Sq1")])


def test_antipode_reverses_words(a1):
    assert a1.S(a1.element("Sq1Sq2")) == a1.element("Sq2Sq1")
    assert a1.S(a1.element("Sq2")) == a1.element("Sq2")


def test_margolis_elements_square_to_zero(a1):
    els = a1.margolis_elements()
    assert len(els) == 2
    for _, q in els:
        assert q and a1.mul(q, q) == 0


def test_e1_inclusion(a1, inc):
    assert inc.sub is builtin_E1()
    assert inc.validate() == []
    q1 = inc.embedding[2]
    assert q1 == a1.element("Sq1Sq2+Sq2Sq1")
    incs = quasi_elementary_inclusions(a1)
    assert [i.sub.name for i in incs] == ["E(1)"]


def test_exterior_presentation_is_hopf():
    h = from_presentation([("x", 1)], ["x^2"], name="ext")
    assert h.dim == 2 and validate_hopf(h) == []


def test_infinite_presentation_rejected():
    with pytest.raises(PresentationError):
        from_presentation([("x", 1)], [], degree_bound=8, name="poly")


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin("A2")


def test_builtin_a1_is_memoized():
    assert builtin_A1()[0] is builtin_A1()[0]
