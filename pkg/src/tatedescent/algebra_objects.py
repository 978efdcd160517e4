"""Quotient coalgebras A//B and the descent algebras T_B = (A//B)^*."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .f2 import bits
from .hopf import SubHopfInclusion
from .modules import (
    AModule,
    ModuleMap,
    Quotient,
    compose_cols,
    direct_sum,
    dual,
    free_module,
    tensor,
    trivial_module,
)


class ConsistencyError(RuntimeError):
    """An internal identity failed (signals a bad inclusion or algebra object)."""


@dataclass
class QuotientCoalgebra:
    """A//B = A / A·I(B) with residual A-action and induced comultiplication.

    ``comult[k]`` is the set of pairs (i, j) of quotient basis indices with
    Δ(x_k) = Σ x_i ⊗ x_j.
    """

    module: AModule
    comult: list[frozenset]
    unit: int

    @property
    def dim(self) -> int:
        return self.module.dim


def quotient_coalgebra(inc: SubHopfInclusion) -> QuotientCoalgebra:
    a, b = inc.ambient, inc.sub
    if a.dim % b.dim:
        raise ConsistencyError(f"dim {a.name} = {a.dim} not divisible by dim {b.name} = {b.dim}")
    free = free_module(a, [0], a.name)
    ideal = []
    for i in range(b.dim):
        if i == b.unit:
            continue
        y = inc.embedding[i]
        for x in range(a.dim):
            ideal.append(a.mul(1 << x, y))
    q = Quotient(free, ideal, f"{a.name}//{b.name}")
    if q.module.dim * b.dim != a.dim:
        raise ConsistencyError("A//B has the wrong dimension")
    comult = []
    for k in q.keep:
        out: dict = {}
        for (i, j) in a.comult[k]:
            for p in bits(q.project(1 << i)):
                for r in bits(q.project(1 << j)):
                    out[(p, r)] = out.get((p, r), 0) ^ 1
        comult.append(frozenset(key for key, v in out.items() if v))
    unit = q.project(1 << a.unit)
    return QuotientCoalgebra(q.module, comult, (unit & -unit).bit_length() - 1)


@dataclass
class AlgebraObject:
    """A commutative unital algebra in A-modules: mult T⊗T -> T, unit 1 -> T."""

    module: AModule
    tensor_square: AModule
    mult: ModuleMap
    unit: int  # vector in module
    label: str = "T"

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def algebra(self):
        return self.module.algebra

    def product(self, x: int, y: int) -> int:
        n = self.dim
        out = 0
        for i in bits(x):
            for j in bits(y):
                out ^= self.mult.cols[i * n + j]
        return out

    def unit_map(self) -> ModuleMap:
        return ModuleMap(trivial_module(self.algebra), self.module, [self.unit], 0)

    def validate(self) -> list[str]:
        report = []
        n = self.dim
        report += [f"multiplication: {r}" for r in self.mult.check()]
        report += [f"unit: {r}" for r in self.unit_map().check()]
        for i in range(n):
            x = 1 << i
            if self.product(self.unit, x) != x or self.product(x, self.unit) != x:
                report.append(f"unit law fails at {self.module.names[i]}")
            for j in range(n):
                y = 1 << j
                if self.product(x, y) != self.product(y, x):
                    report.append(f"not commutative at ({i}, {j})")
                for k in range(n):
                    z = 1 << k
                    if self.product(self.product(x, y), z) != self.product(x, self.product(y, z)):
                        report.append(f"not associative at ({i}, {j}, {k})")
        return report


def T_of(inc: SubHopfInclusion) -> AlgebraObject:
    """The dual algebra (A//B)^*: multiplication dual to the comultiplication."""
    qc = quotient_coalgebra(inc)
    t = dual(qc.module, f"T_{inc.sub.name}")
    n = qc.dim
    sq = tensor(t, t)
    cols = [0] * (n * n)
    for k, pairs in enumerate(qc.comult):
        for (i, j) in pairs:
            cols[i * n + j] ^= 1 << k
    obj = AlgebraObject(t, sq, ModuleMap(sq, t, cols, 0), 1 << qc.unit, t.label)
    report = obj.validate()
    if report:
        raise ConsistencyError("; ".join(report[:5]))
    return obj


def T_product(ts: Sequence[AlgebraObject]) -> AlgebraObject:
    """Direct product of algebra objects: componentwise multiplication, diagonal unit."""
    if not ts:
        raise ValueError("T_product needs at least one algebra object")
    if len(ts) == 1:
        return ts[0]
    mod = direct_sum([t.module for t in ts], "×".join(t.label for t in ts))
    offs = []
    o = 0
    for t in ts:
        offs.append(o)
        o += t.dim
    n = mod.dim
    sq = tensor(mod, mod)
    cols = [0] * (n * n)
    unit = 0
    for t, off in zip(ts, offs):
        m = t.dim
        unit |= t.unit << off
        for i in range(m):
            for j in range(m):
                cols[(off + i) * n + off + j] = t.mult.cols[i * m + j] << off
    obj = AlgebraObject(mod, sq, ModuleMap(sq, mod, cols, 0), unit, mod.label)
    report = obj.validate()
    if report:
        raise ConsistencyError("; ".join(report[:5]))
    return obj


def unit_algebra(h) -> AlgebraObject:
    """T = 1 (the degenerate descent algebra for B = A)."""
    one = trivial_module(h)
    sq = tensor(one, one)
    return AlgebraObject(one, sq, ModuleMap(sq, one, [1], 0), 1, "1")


def tensor_power(t: AlgebraObject, k: int) -> AModule:
    """T^{⊗k}; basis index = base-dim(T) digits, first factor most significant."""
    out = trivial_module(t.algebra)
    for _ in range(k):
        out = tensor(out, t.module)
    return out


def unit_compose(t: AlgebraObject) -> list[int]:
    return compose_cols(t.mult.cols, [t.unit])
