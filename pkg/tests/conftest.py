import random
import sys

import pytest

from tatedescent.hopf import builtin_A1, builtin_E1
from tatedescent.modules import AModule, Quotient, direct_sum, free_module, shift
from tatedescent.catalog import joker


def _homogeneous_vector(m: AModule, rng: random.Random) -> int:
    d = rng.choice(sorted(set(m.degrees)))
    idx = m.basis_in_degree(d)
    v = 0
    while not v:
        v = sum(1 << i for i in idx if rng.random() < 0.5)
    return v


def random_module(h, seed: int, max_gens: int = 2, max_rels: int = 3) -> AModule:
    """Quotient of a small free module by the submodule generated by a few
    random homogeneous vectors; occasionally summed with a joker."""
    rng = random.Random(seed)
    degs = [rng.randint(-2, 2) for _ in range(rng.randint(1, max_gens))]
    f = free_module(h, degs)
    full = f.full_actions()
    span = []
    for _ in range(rng.randint(0, max_rels)):
        v = _homogeneous_vector(f, rng)
        for cols in full:
            w = 0
            for i in range(f.dim):
                if (v >> i) & 1:
                    w ^= cols[i]
            if w:
                span.append(w)
    m = Quotient(f, span, f"R{seed}").module
    if h.name == "A(1)" and rng.random() < 0.15:
        m = direct_sum([m, shift(joker(), rng.randint(-2, 2))], f"R{seed}+J")
    return m


@pytest.fixture(scope="session")
def a1():
    return builtin_A1()[0]


@pytest.fixture(scope="session")
def inc():
    return builtin_A1()[1]


@pytest.fixture(scope="session")
def e1():
    return builtin_E1()


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[k])
