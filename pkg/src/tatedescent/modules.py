"""Graded modules over a Hopf algebra and the maps between them.

A module stores, for each algebra generator, the list of column images of
its action (``actions[g][i]`` is the image of basis vector ``i`` as an int).
Actions of every algebra basis element are derived lazily from the
generator expressions.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .f2 import Reducer, bits, kernel_of_columns, rank_of, rref_vectors
from .hopf import HopfAlgebra, SubHopfInclusion


def apply_cols(cols: Sequence[int], v: int) -> int:
    out = 0
    for i in bits(v):
        out ^= cols[i]
    return out


def compose_cols(outer: Sequence[int], inner: Sequence[int]) -> list[int]:
    return [apply_cols(outer, c) for c in inner]


def kron(u: int, v: int, width: int) -> int:
    out = 0
    for p in bits(u):
        out |= v << (p * width)
    return out


class AModule:
    def __init__(self, algebra: HopfAlgebra, names: Sequence[str], degrees: Sequence[int],
                 actions: Sequence[Sequence[int]], label: str = ""):
        self.algebra = algebra
        self.names = list(names)
        self.degrees = list(degrees)
        self.actions = [list(a) for a in actions]
        self.label = label
        self._full: Optional[list[list[int]]] = None
        if len(self.actions) != len(algebra.generators):
            raise ValueError("one action per algebra generator required")
        for a in self.actions:
            if len(a) != len(self.names):
                raise ValueError("action size mismatch")

    def __repr__(self):
        dims = self.graded_dims()
        body = ", ".join(f"{d}:{n}" for d, n in sorted(dims.items()))
        return f"AModule({self.label or '?'} over {self.algebra.name}; {{{body}}})"

    @property
    def dim(self) -> int:
        return len(self.names)

    def graded_dims(self) -> dict[int, int]:
        return dict(Counter(self.degrees))

    def basis_in_degree(self, d: int) -> list[int]:
        return [i for i, e in enumerate(self.degrees) if e == d]

    def degree_mask(self, d: int) -> int:
        m = 0
        for i, e in enumerate(self.degrees):
            if e == d:
                m |= 1 << i
        return m

    def full_actions(self) -> list[list[int]]:
        """Column images for every algebra basis element."""
        if self._full is None:
            h = self.algebra
            n = self.dim
            ident = [1 << i for i in range(n)]
            cache: dict[tuple, list[int]] = {(): ident}

            def word_cols(w):
                if w not in cache:
                    head = self.actions[w[0]]
                    cache[w] = compose_cols(head, word_cols(w[1:]))
                return cache[w]

            full = []
            for b in range(h.dim):
                acc = [0] * n
                for w in h.expressions[b]:
                    acc = [x ^ y for x, y in zip(acc, word_cols(tuple(w)))]
                full.append(acc)
            self._full = full
        return self._full

    def act(self, a: int, v: int) -> int:
        """Action of the algebra element ``a`` (int over the algebra basis)."""
        full = self.full_actions()
        out = 0
        for b in bits(a):
            out ^= apply_cols(full[b], v)
        return out

    def element_cols(self, a: int) -> list[int]:
        full = self.full_actions()
        out = [0] * self.dim
        for b in bits(a):
            out = [x ^ y for x, y in zip(out, full[b])]
        return out

    def vector_name(self, v: int) -> str:
        if not v:
            return "0"
        return "+".join(self.names[i] for i in bits(v))

    def renamed(self, label: str) -> "AModule":
        m = AModule(self.algebra, self.names, self.degrees, self.actions, label)
        m._full = self._full
        return m


@dataclass
class ModuleMap:
    """Homogeneous module map; ``cols[i]`` is the image of source basis ``i``.

    Degree convention: target degree = source degree + ``shift``.
    """

    source: AModule
    target: AModule
    cols: list[int]
    shift: int = 0

    def __call__(self, v: int) -> int:
        return apply_cols(self.cols, v)

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        return ModuleMap(inner.source, self.target, compose_cols(self.cols, inner.cols),
                         self.shift + inner.shift)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a ^ b for a, b in zip(self.cols, other.cols)], self.shift)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def rank(self) -> int:
        return rank_of(self.cols, self.target.dim)

    def is_iso(self) -> bool:
        return (self.source.dim == self.target.dim and self.shift == 0
                and self.rank() == self.source.dim)

    def component(self, d: int):
        """Matrix of the degree-``d`` component (rows = target basis in degree d+shift)."""
        from .f2 import BitMatrix

        src = self.source.basis_in_degree(d)
        tgt = self.target.basis_in_degree(d + self.shift)
        pos = {j: k for k, j in enumerate(tgt)}
        rows = [0] * len(tgt)
        for c, i in enumerate(src):
            for j in bits(self.cols[i]):
                rows[pos[j]] |= 1 << c
        return BitMatrix(len(tgt), len(src), tuple(rows))

    def check(self) -> list[str]:
        """Degree and equivariance violations."""
        report = []
        s, t = self.source, self.target
        for i, c in enumerate(self.cols):
            for j in bits(c):
                if t.degrees[j] != s.degrees[i] + self.shift:
                    report.append(f"degree mismatch at {s.names[i]}")
                    break
        for g in range(len(s.algebra.generators)):
            lhs = compose_cols(t.actions[g], self.cols)
            rhs = compose_cols(self.cols, s.actions[g])
            if lhs != rhs:
                report.append(f"does not commute with {s.algebra.names[s.algebra.generators[g]]}")
        return report

    def inverse(self) -> "ModuleMap":
        n = self.source.dim
        red = Reducer(track=True)
        for c in self.cols:
            red.add(c)
        inv = []
        for j in range(n):
            x = red.express(1 << j)
            if x is None:
                raise ValueError("map is not invertible")
            inv.append(x)
        return ModuleMap(self.target, self.source, inv, -self.shift)


def identity_map(m: AModule) -> ModuleMap:
    return ModuleMap(m, m, [1 << i for i in range(m.dim)], 0)


def zero_map(m: AModule, n: AModule, shift: int = 0) -> ModuleMap:
    return ModuleMap(m, n, [0] * m.dim, shift)


# -- constructions -------------------------------------------------------------


def trivial_module(h: HopfAlgebra, degree: int = 0) -> AModule:
    return AModule(h, ["1"], [degree], [[0] for _ in h.generators], "1")


def zero_module(h: HopfAlgebra) -> AModule:
    return AModule(h, [], [], [[] for _ in h.generators], "0")


def module_from_arrows(h: HopfAlgebra, basis: Sequence[tuple[str, int]],
                       arrows: dict, label: str = "") -> AModule:
    """``arrows`` maps a generator name to {source name: [target names]}."""
    names = [b for b, _ in basis]
    idx = {b: i for i, b in enumerate(names)}
    actions = []
    for gname in h.gen_names():
        cols = [0] * len(names)
        for src, tgts in arrows.get(gname, {}).items():
            for t in tgts:
                cols[idx[src]] ^= 1 << idx[t]
        actions.append(cols)
    return AModule(h, names, [d for _, d in basis], actions, label)


def free_module(h: HopfAlgebra, degrees: Sequence[int], label: str = "") -> AModule:
    names, degs = [], []
    n = h.dim
    for k, d in enumerate(degrees):
        for i in range(n):
            names.append(f"{h.names[i]}.g{k}" if len(degrees) > 1 else f"{h.names[i]}")
            degs.append(d + h.degrees[i])
    actions = []
    for g in h.generators:
        cols = []
        for k in range(len(degrees)):
            for i in range(n):
                cols.append(h.mult[g][i] << (k * n))
        actions.append(cols)
    m = AModule(h, names, degs, actions, label or f"free{list(degrees)}")
    m.free_degrees = list(degrees)
    return m


def shift(m: AModule, t: int) -> AModule:
    out = AModule(m.algebra, m.names, [d + t for d in m.degrees], m.actions,
                  f"{m.label}[{t}]" if t else m.label)
    out._full = m._full
    return out


def direct_sum(mods: Sequence[AModule], label: str = "") -> AModule:
    h = mods[0].algebra
    names, degs = [], []
    actions = [[] for _ in h.generators]
    off = 0
    for k, m in enumerate(mods):
        names.extend(f"{nm}#{k}" for nm in m.names)
        degs.extend(m.degrees)
        for g in range(len(h.generators)):
            actions[g].extend(c << off for c in m.actions[g])
        off += m.dim
    return AModule(h, names, degs, actions, label or "+".join(m.label for m in mods))


def sum_inclusions(mods: Sequence[AModule], total: AModule) -> list[ModuleMap]:
    out, off = [], 0
    for m in mods:
        out.append(ModuleMap(m, total, [1 << (off + i) for i in range(m.dim)]))
        off += m.dim
    return out


def tensor(m: AModule, n: AModule, label: str = "") -> AModule:
    h = m.algebra
    if n.algebra is not h:
        raise ValueError("modules over different algebras")
    fm, fn = m.full_actions(), n.full_actions()
    w = n.dim
    names = [f"{a}⊗{b}" for a in m.names for b in n.names]
    degs = [a + b for a in m.degrees for b in n.degrees]
    actions = []
    for g in h.generators:
        terms = sorted(h.comult[g])
        cols = []
        for i in range(m.dim):
            for j in range(n.dim):
                v = 0
                for (p, q) in terms:
                    v ^= kron(fm[p][i], fn[q][j], w)
                cols.append(v)
        actions.append(cols)
    return AModule(h, names, degs, actions, label or f"({m.label}⊗{n.label})")


def tensor_maps(f: ModuleMap, g: ModuleMap, source: AModule = None, target: AModule = None) -> ModuleMap:
    src = source or tensor(f.source, g.source)
    tgt = target or tensor(f.target, g.target)
    w = g.target.dim
    cols = [kron(f.cols[i], g.cols[j], w) for i in range(f.source.dim) for j in range(g.source.dim)]
    return ModuleMap(src, tgt, cols, f.shift + g.shift)


def _transpose(cols: Sequence[int], nrows: int) -> list[int]:
    out = [0] * nrows
    for i, c in enumerate(cols):
        for j in bits(c):
            out[j] |= 1 << i
    return out


def dual(m: AModule, label: str = "") -> AModule:
    """Linear dual with (a.f)(x) = f(S(a) x); degrees negate."""
    h = m.algebra
    actions = []
    for g in h.generators:
        cols = m.element_cols(h.antipode[g])
        actions.append(_transpose(cols, m.dim))
    names = [f"{nm}*" for nm in m.names]
    return AModule(h, names, [-d for d in m.degrees], actions, label or f"{m.label}*")


def dual_map(f: ModuleMap, source: AModule = None, target: AModule = None) -> ModuleMap:
    src = source or dual(f.target)
    tgt = target or dual(f.source)
    return ModuleMap(src, tgt, _transpose(f.cols, f.target.dim), f.shift)


def internal_hom(m: AModule, n: AModule) -> AModule:
    return tensor(dual(m), n, f"hom({m.label},{n.label})")


def evaluation(m: AModule, unit: AModule = None) -> ModuleMap:
    """The pairing m (x) m* -> 1, x (x) f -> f(x)."""
    src = tensor(m, dual(m))
    one = unit or trivial_module(m.algebra)
    n = m.dim
    cols = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return ModuleMap(src, one, cols, 0)


def restrict(inc: SubHopfInclusion, m: AModule) -> AModule:
    b = inc.sub
    actions = [m.element_cols(inc.embedding[g]) for g in b.generators]
    return AModule(b, m.names, m.degrees, actions, f"U({m.label})")


# -- sub- and quotient modules --------------------------------------------------


def submodule(x: AModule, vectors: Sequence[int], label: str = "") -> tuple[AModule, ModuleMap]:
    """Module on the span of homogeneous ``vectors`` (must be action-closed).

    Returns the submodule (basis = reduced echelon basis of the span, sorted by
    degree) and its inclusion into ``x``.
    """
    basis, _ = rref_vectors(vectors, x.dim)
    degs = []
    for v in basis:
        ds = {x.degrees[i] for i in bits(v)}
        if len(ds) != 1:
            raise ValueError("submodule basis not homogeneous")
        degs.append(ds.pop())
    order = sorted(range(len(basis)), key=lambda k: (degs[k], k))
    basis = [basis[k] for k in order]
    degs = [degs[k] for k in order]
    red = Reducer(track=True)
    for v in basis:
        red.add(v)
    actions = []
    for g in range(len(x.algebra.generators)):
        cols = []
        for v in basis:
            img = apply_cols(x.actions[g], v)
            c = red.express(img)
            if c is None:
                raise ValueError("span is not closed under the action")
            cols.append(c)
        actions.append(cols)
    names = [x.vector_name(v) if len(list(bits(v))) == 1 else f"[{x.vector_name(v)}]" for v in basis]
    sub = AModule(x.algebra, names, degs, actions, label or f"sub({x.label})")
    return sub, ModuleMap(sub, x, list(basis), 0)


class Quotient:
    """Quotient x / span(vectors) with projection data."""

    def __init__(self, x: AModule, vectors: Sequence[int], label: str = ""):
        rows, pivots = rref_vectors(vectors, x.dim)
        self.rows, self.pivots = rows, pivots
        pivset = set(pivots)
        keep = [i for i in range(x.dim) if i not in pivset]
        self.keep = keep
        self.pos = {i: k for k, i in enumerate(keep)}
        self.x = x
        actions = []
        for g in range(len(x.algebra.generators)):
            actions.append([self.project(x.actions[g][i]) for i in keep])
        self.module = AModule(x.algebra, [x.names[i] for i in keep],
                              [x.degrees[i] for i in keep], actions, label or f"quot({x.label})")

    def project(self, v: int) -> int:
        for row, p in zip(self.rows, self.pivots):
            if (v >> p) & 1:
                v ^= row
        out = 0
        for i in bits(v):
            out |= 1 << self.pos[i]
        return out

    def projection(self) -> ModuleMap:
        return ModuleMap(self.x, self.module, [self.project(1 << i) for i in range(self.x.dim)])

    def section(self, v: int) -> int:
        """Lift a quotient vector to the canonical representative in x."""
        out = 0
        for k in bits(v):
            out |= 1 << self.keep[k]
        return out


def kernel(f: ModuleMap, label: str = "") -> tuple[AModule, ModuleMap]:
    vecs = []
    s = f.source
    for d in sorted(set(s.degrees)):
        idx = s.basis_in_degree(d)
        ker = kernel_of_columns([f.cols[i] for i in idx], f.target.dim)
        for kv in ker:
            v = 0
            for c in bits(kv):
                v |= 1 << idx[c]
            vecs.append(v)
    return submodule(s, vecs, label or "ker")


def image_vectors(f: ModuleMap) -> list[int]:
    return rref_vectors(f.cols, f.target.dim)[0]


def cokernel(f: ModuleMap, label: str = "") -> Quotient:
    return Quotient(f.target, f.cols, label or "coker")


# -- induction / coinduction ----------------------------------------------------


def induce(inc: SubHopfInclusion, m: AModule) -> AModule:
    """A (x)_B m as the quotient of A (x) m by a.b (x) x - a (x) b.x."""
    a, b = inc.ambient, inc.sub
    n = m.dim
    names = [f"{a.names[i]}⊗{m.names[j]}" for i in range(a.dim) for j in range(n)]
    degs = [a.degrees[i] + m.degrees[j] for i in range(a.dim) for j in range(n)]
    actions = [[kron(a.mult[g][i], 1 << j, n) for i in range(a.dim) for j in range(n)]
               for g in a.generators]
    big = AModule(a, names, degs, actions, "A⊗m")
    mfull = m.full_actions()
    rels = []
    for i in range(a.dim):
        for bb in range(b.dim):
            ab = a.mul(1 << i, inc.embedding[bb])
            for j in range(n):
                v = kron(ab, 1 << j, n) ^ kron(1 << i, mfull[bb][j], n)
                if v:
                    rels.append(v)
    return Quotient(big, rels, f"Ind({m.label})").module


def coinduce(inc: SubHopfInclusion, m: AModule) -> AModule:
    """hom_B(A, m) with (a0.f)(a) = f(a a0).

    Coordinates: f_(i,j) sends a_i to m_j and the other basis elements to 0.
    """
    a, b = inc.ambient, inc.sub
    n = m.dim
    mfull = m.full_actions()
    var_deg = [m.degrees[j] - a.degrees[i] for i in range(a.dim) for j in range(n)]
    # equations indexed (h, i, j'): coefficient of m_j' in f(h a_i) - h f(a_i)
    nrows = len(b.generators) * a.dim * n
    left = [[a.mul(inc.embedding[g], 1 << i) for i in range(a.dim)] for g in b.generators]
    vecs = []
    for d in sorted(set(var_deg)):
        vars_d = [k for k, e in enumerate(var_deg) if e == d]
        cols = []
        for k in vars_d:
            ip, j = divmod(k, n)
            col = 0
            for hi, g in enumerate(b.generators):
                blk = hi * a.dim
                for i in range(a.dim):
                    if (left[hi][i] >> ip) & 1:
                        col ^= 1 << ((blk + i) * n + j)
                col ^= mfull[g][j] << ((blk + ip) * n)
            cols.append(col)
        for kv in kernel_of_columns(cols, nrows):
            v = 0
            for c in bits(kv):
                v |= 1 << vars_d[c]
            vecs.append(v)
    names = [f"{a.names[i]}^{m.names[j]}" for i in range(a.dim) for j in range(n)]
    actions = []
    for g in a.generators:
        cols = []
        for i in range(a.dim):
            for j in range(n):
                v = 0
                for k in range(a.dim):
                    if (a.mult[k][g] >> i) & 1:
                        v |= 1 << (k * n + j)
                cols.append(v)
        actions.append(cols)
    big = AModule(a, names, var_deg, actions, "Hom(A,m)")
    return submodule(big, vecs, f"Coind({m.label})")[0]


# -- validation, hom spaces, isomorphism ----------------------------------------


def _word_cols(m: AModule, word) -> list[int]:
    cols = [1 << i for i in range(m.dim)]
    for g in reversed(word):
        cols = compose_cols(m.actions[g], cols)
    return cols


def validate_module(m: AModule) -> list[str]:
    """List degree mismatches and violated relations; empty iff ``m`` is a module."""
    h = m.algebra
    report = []
    for gi, g in enumerate(h.generators):
        for i, c in enumerate(m.actions[gi]):
            for j in bits(c):
                if m.degrees[j] != m.degrees[i] + h.degrees[g]:
                    report.append(f"{h.names[g]} on {m.names[i]} hits {m.names[j]} "
                                  f"in the wrong degree")
    for label, words in h.relations:
        acc = [0] * m.dim
        for w in words:
            acc = [x ^ y for x, y in zip(acc, _word_cols(m, w))]
        if any(acc):
            bad = [m.names[i] for i, c in enumerate(acc) if c]
            report.append(f"relation {label} fails on {', '.join(bad)}")
    if not h.relations:
        # table-defined algebra: check g.(b.x) = (g b).x for generators g
        full = m.full_actions()
        for gi, g in enumerate(h.generators):
            for b in range(h.dim):
                lhs = compose_cols(m.actions[gi], full[b])
                rhs = m.element_cols(h.mult[g][b])
                if lhs != rhs:
                    report.append(f"action not associative at ({h.names[g]}, {h.names[b]})")
    return report


def hom_space(m: AModule, n: AModule, t: int = 0) -> list[ModuleMap]:
    """Basis of the module maps m -> n[t], i.e. m_k -> n_(k-t)."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    h = m.algebra
    variables = [(i, j) for i in range(m.dim) for j in n.basis_in_degree(m.degrees[i] - t)]
    if not variables:
        return []
    eq_index: dict = {}

    def eq(g, i, j):
        key = (g, i, j)
        k = eq_index.get(key)
        if k is None:
            k = eq_index[key] = len(eq_index)
        return k

    # transposed source actions: which i have i' in g.e_i
    src_hits = []
    for gi in range(len(h.generators)):
        hits = [[] for _ in range(m.dim)]
        for i, c in enumerate(m.actions[gi]):
            for ip in bits(c):
                hits[ip].append(i)
        src_hits.append(hits)
    cols = []
    for (i, j) in variables:
        col = 0
        for gi in range(len(h.generators)):
            for jp in bits(n.actions[gi][j]):
                col ^= 1 << eq(gi, i, jp)
            for i2 in src_hits[gi][i]:
                col ^= 1 << eq(gi, i2, j)
        cols.append(col)
    maps = []
    for kv in kernel_of_columns(cols, len(eq_index)):
        fcols = [0] * m.dim
        for c in bits(kv):
            i, j = variables[c]
            fcols[i] |= 1 << j
        maps.append(ModuleMap(m, n, fcols, -t))
    return maps


def margolis_homology(m: AModule, q: int) -> dict[int, int]:
    """Graded dimensions of ker q / im q for a square-zero algebra element ``q``."""
    cols = m.element_cols(q)
    if any(apply_cols(cols, c) for c in cols):
        raise ValueError("q does not square to zero on this module")
    out = {}
    for d in sorted(set(m.degrees)):
        idx = m.basis_in_degree(d)
        ker = len(kernel_of_columns([cols[i] for i in idx], m.dim))
        qdeg = m.algebra.degree_of(q)
        src = m.basis_in_degree(d - qdeg)
        im = rank_of([cols[i] for i in src], m.dim)
        if ker - im:
            out[d] = ker - im
    return out


def margolis_invariants(m: AModule) -> dict[str, dict[int, int]]:
    return {name: margolis_homology(m, q) for name, q in m.algebra.margolis_elements()}


@dataclass
class IsoResult:
    witness: Optional[ModuleMap]
    status: str  # "isomorphic", "non-isomorphic", "budget exhausted"
    reason: str = ""

    def __bool__(self):
        return self.witness is not None


def is_module_iso(m: AModule, n: AModule, exhaustive_limit: int = 16,
                  random_trials: int = 512, seed: int = 0) -> IsoResult:
    """Search for a degree-0 isomorphism m -> n.

    Invariants (graded dimensions, Margolis homology) are compared first;
    then the degree-0 hom space is searched greedily, by seeded random
    combinations, and exhaustively when its dimension is at most
    ``exhaustive_limit``.
    """
    if m.graded_dims() != n.graded_dims():
        return IsoResult(None, "non-isomorphic", "graded dimensions differ")
    if margolis_invariants(m) != margolis_invariants(n):
        return IsoResult(None, "non-isomorphic", "Margolis homology differs")
    if m.dim == 0:
        return IsoResult(ModuleMap(m, n, [], 0), "isomorphic")
    basis = hom_space(m, n, 0)
    full = m.dim

    def rk(cols):
        return rank_of(cols, n.dim)

    # every iso must reach full rank on the span of all maps' images in each degree
    span_rank = rank_of([c for b in basis for c in b.cols], n.dim) if basis else 0
    if span_rank < full:
        return IsoResult(None, "non-isomorphic", "hom space images do not span the target")
    cur = [0] * full
    cur_rank = 0
    for b in basis:
        trial = [x ^ y for x, y in zip(cur, b.cols)]
        r = rk(trial)
        if r > cur_rank:
            cur, cur_rank = trial, r
        if cur_rank == full:
            return IsoResult(ModuleMap(m, n, cur, 0), "isomorphic")
    rng = random.Random(seed)
    k = len(basis)
    for _ in range(random_trials):
        mask = rng.getrandbits(k)
        cols = [0] * full
        for c in bits(mask):
            cols = [x ^ y for x, y in zip(cols, basis[c].cols)]
        if rk(cols) == full:
            return IsoResult(ModuleMap(m, n, cols, 0), "isomorphic")
    if k <= exhaustive_limit:
        # Gray-code walk over all combinations
        cols = [0] * full
        for step in range(1, 1 << k):
            flip = (step & -step).bit_length() - 1
            cols = [x ^ y for x, y in zip(cols, basis[flip].cols)]
            if rk(cols) == full:
                return IsoResult(ModuleMap(m, n, cols, 0), "isomorphic")
        return IsoResult(None, "non-isomorphic", "exhaustive search over the hom space")
    return IsoResult(None, "budget exhausted", f"hom space dimension {k}")
