"""Concrete modules used throughout: the joker and the two E(1)-modules M, N."""

from __future__ import annotations

from .hopf import builtin_A1, builtin_E1
from .modules import AModule, module_from_arrows, shift, trivial_module


def joker(center: int = 0) -> AModule:
    """Five-dimensional A(1)-module, one class in each degree center-2 .. center+2.

    Sq1 joins the bottom pair and the top pair; Sq2 runs 0->2, 1->3, 2->4
    (counting from the bottom class).
    """
    a, _ = builtin_A1()
    names = [f"j{k}" for k in range(5)]
    m = module_from_arrows(
        a,
        [(nm, k - 2) for k, nm in enumerate(names)],
        {
            "Sq1": {"j0": ["j1"], "j3": ["j4"]},
            "Sq2": {"j0": ["j2"], "j1": ["j3"], "j2": ["j4"]},
        },
        "J",
    )
    return shift(m, center) if center else m


def module_M() -> AModule:
    """The six-dimensional E(1)-module with classes m0, m2, m3, m4, m5, m7."""
    e = builtin_E1()
    basis = [(f"m{k}", k) for k in (0, 2, 3, 4, 5, 7)]
    return module_from_arrows(
        e, basis,
        {
            "Q0": {"m2": ["m3"], "m4": ["m5"]},
            "Q1": {"m0": ["m3"], "m2": ["m5"], "m4": ["m7"]},
        },
        "M",
    )


def module_N() -> AModule:
    """The four-dimensional E(1)-module with classes n-1, n0, n1, n2."""
    e = builtin_E1()
    basis = [("n-1", -1), ("n0", 0), ("n1", 1), ("n2", 2)]
    return module_from_arrows(
        e, basis,
        {"Q0": {"n-1": ["n0"], "n1": ["n2"]}, "Q1": {"n-1": ["n2"]}},
        "N",
    )


def unit(algebra_name: str = "A1") -> AModule:
    if algebra_name.upper().replace("(", "").replace(")", "") == "E1":
        return trivial_module(builtin_E1())
    return trivial_module(builtin_A1()[0])
