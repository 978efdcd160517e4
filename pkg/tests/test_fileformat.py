import pytest

from tatedescent.catalog import joker, module_M, module_N
from tatedescent.fileformat import (
    FormatError, dump_algebra, dump_module, parse_algebra, parse_module, resolve_algebra,
    resolve_module,
)
from tatedescent.hopf import to_table


def test_algebra_roundtrip(a1, e1):
    for h in (a1, e1):
        assert to_table(parse_algebra(dump_algebra(h))) == to_table(h)


@pytest.mark.parametrize("factory", [joker, module_M, module_N])
def test_module_roundtrip(factory):
    m = factory()
    back = parse_module(dump_module(m))
    assert back.actions == m.actions and back.degrees == m.degrees and back.names == m.names
    assert back.algebra is m.algebra


def test_presentation_form(a1):
    text = """
    # A(1) from generators
    [algebra]
    name: A(1)
    generator: Sq1 1
    generator: Sq2 2
    relation: Sq1^2
    relation: Sq2^2 + Sq1Sq2Sq1
    coproduct: Sq2 = Sq2|1 + Sq1|Sq1 + 1|Sq2
    quasi_elementary: E(1) | Sq1 | Sq1Sq2+Sq2Sq1
    """
    assert to_table(parse_algebra(text)) == to_table(a1)


def test_integer_indices_and_arrow_forms(e1):
    text = """[module]
name: N
algebra: E1
basis: n-1 -1
basis: n0 0
basis: n1 1
basis: n2 2
[action]
Q0: 0 -> 1
Q0: n1 → n2
Q1: n-1 -> 3
"""
    assert parse_module(text).actions == module_N().actions


def test_builtin_names_resolve(a1, e1):
    assert resolve_algebra("A1") is a1
    assert resolve_module("Mpaper", e1).actions == module_M().actions
    assert resolve_module("unit", a1).dim == 1
    assert resolve_module("joker", a1).dim == 5


def test_module_over_wrong_algebra_rejected(a1):
    with pytest.raises(FormatError):
        resolve_module("Npaper", a1)


@pytest.mark.parametrize("text, line, fragment", [
    ("stray: 1\n", 1, "before the first section"),
    ("[module]\nname: x\nalgebra: E1\nbasis: a\n", 4, "basis: name degree"),
    ("[module]\nalgebra: E1\nbasis: a 0\n[action]\nQ7: a -> a\n", 5, "not a generator"),
    ("[module]\nalgebra: E1\nbasis: a 0\n[action]\nQ0: a -> b\n", 5, "unknown basis element"),
    ("[module]\nalgebra: E1\nbasis: a 0\nbasis: a 1\n", 4, "repeated"),
    ("[bogus]\n", 1, "unknown section"),
    ("[algebra]\nname: x\nbasis: 0 1 0\nmult: 0 0 9\n", 4, "out of range"),
])
def test_diagnostics_carry_line_numbers(text, line, fragment):
    with pytest.raises(FormatError) as exc:
        if text.startswith("[algebra]"):
            parse_algebra(text, "f.txt")
        else:
            parse_module(text, "f.txt")
    assert exc.value.line == line
    assert fragment in str(exc.value)


def test_invalid_module_rejected():
    text = "[module]\nalgebra: E1\nbasis: a 0\nbasis: b 1\nbasis: c 2\n[action]\nQ0: a -> b\nQ0: b -> c\n"
    with pytest.raises(FormatError, match="not a module"):
        parse_module(text, "f.txt")


def test_comments_ignored(e1):
    text = "# header\n[module]  # trailing\nalgebra: E1 # ref\nbasis: a 0\n"
    assert parse_module(text).dim == 1
