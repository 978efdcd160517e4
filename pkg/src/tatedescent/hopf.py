"""Finite-dimensional graded connected cocommutative Hopf algebras over F2.

Elements are ints over the basis index (bit ``i`` = basis element ``i``).
Tensors in ``A (x) A`` are frozensets of index pairs, combined with ``^``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .f2 import Reducer, bits, popcount, rref_vectors


class PresentationError(ValueError):
    pass


@dataclass
class HopfAlgebra:
    name: str
    names: list[str]
    degrees: list[int]
    mult: list[list[int]]
    comult: list[frozenset]
    antipode: list[int]
    generators: list[int]
    # each basis element as a sum of generator words (tuples of positions in ``generators``)
    expressions: list[list[tuple]]
    relations: list[tuple[str, list[tuple]]] = field(default_factory=list)
    # (label, elements) pairs; elements are ints over the basis
    quasi_elementary: list[tuple[str, list[int]]] = field(default_factory=list)
    unit: int = 0

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def top_degree(self) -> int:
        return max(self.degrees)

    def gen_names(self) -> list[str]:
        return [self.names[g] for g in self.generators]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def mul(self, x: int, y: int) -> int:
        out = 0
        for i in bits(x):
            row = self.mult[i]
            for j in bits(y):
                out ^= row[j]
        return out

    def word_element(self, word: Sequence[int]) -> int:
        x = 1 << self.unit
        for g in word:
            x = self.mul(x, 1 << self.generators[g])
        return x

    def counit(self, x: int) -> int:
        return (x >> self.unit) & 1

    def S(self, x: int) -> int:
        out = 0
        for i in bits(x):
            out ^= self.antipode[i]
        return out

    def delta(self, x: int) -> frozenset:
        out = frozenset()
        for i in bits(x):
            out ^= self.comult[i]
        return out

    def tensor_mul(self, s: frozenset, t: frozenset) -> frozenset:
        out: dict = {}
        for (a, b) in s:
            for (c, d) in t:
                for p in bits(self.mult[a][c]):
                    for q in bits(self.mult[b][d]):
                        out[(p, q)] = out.get((p, q), 0) ^ 1
        return frozenset(k for k, v in out.items() if v)

    def element(self, text: str) -> int:
        """Parse a sum of generator words such as ``"Sq1Sq2+Sq2Sq1"``."""
        return sum_words(self, parse_polynomial(text, self.gen_names()))

    def element_name(self, x: int) -> str:
        if not x:
            return "0"
        return "+".join(self.names[i] for i in bits(x))

    def degree_of(self, x: int) -> int:
        ds = {self.degrees[i] for i in bits(x)}
        if len(ds) != 1:
            raise ValueError("element is not homogeneous")
        return ds.pop()

    def basis_in_degree(self, d: int) -> list[int]:
        return [i for i, e in enumerate(self.degrees) if e == d]

    def margolis_elements(self) -> list[tuple[str, int]]:
        """Square-zero elements drawn from the configured quasi-elementary data."""
        seen = []
        for label, elems in self.quasi_elementary:
            for k, x in enumerate(elems):
                if x and not self.mul(x, x) and all(x != y for _, y in seen):
                    seen.append((self.element_name(x), x))
        return seen


def sum_words(h: HopfAlgebra, words) -> int:
    out = 0
    for w in words:
        out ^= h.word_element(w)
    return out


_TOKEN_SPLIT = re.compile(r"\s*\+\s*")


def parse_word(text: str, gen_names: Sequence[str]) -> tuple:
    """Split a word like ``Sq1Sq2`` or ``Sq1*Sq2`` or ``Sq1^2`` into generator positions."""
    text = text.replace("*", " ").strip()
    if text in ("1", ""):
        return ()
    out = []
    order = sorted(range(len(gen_names)), key=lambda i: -len(gen_names[i]))
    pos = 0
    while pos < len(text):
        if text[pos] == " ":
            pos += 1
            continue
        for i in order:
            g = gen_names[i]
            if text.startswith(g, pos):
                pos += len(g)
                power = 1
                m = re.match(r"\^(\d+)", text[pos:])
                if m:
                    power = int(m.group(1))
                    pos += m.end()
                out.extend([i] * power)
                break
        else:
            raise PresentationError(f"cannot parse word {text!r} at offset {pos}")
    return tuple(out)


def parse_polynomial(text: str, gen_names: Sequence[str]) -> list[tuple]:
    words: dict = {}
    for part in _TOKEN_SPLIT.split(text.strip()):
        if part == "0":
            continue
        w = parse_word(part.strip("() "), gen_names)
        words[w] = words.get(w, 0) ^ 1
    return [w for w, c in words.items() if c]


def _word_name(word: tuple, gen_names: Sequence[str]) -> str:
    if not word:
        return "1"
    return "".join(gen_names[g] for g in word)


def from_presentation(
    generators: Sequence[tuple[str, int]],
    relations: Sequence,
    degree_bound: int = 64,
    *,
    name: str = "A",
    coproducts: Optional[dict] = None,
    quasi_elementary: Sequence[tuple[str, Sequence[str]]] = (),
) -> HopfAlgebra:
    """Build a Hopf algebra from generators and homogeneous relations.

    ``relations`` are strings (``"Sq2^2+Sq1Sq2Sq1"``) or lists of words.
    ``coproducts`` maps a generator name to a list of ``(left, right)`` word
    strings; unlisted generators are primitive.  The monomial basis is the set
    of words that are not leading terms of the ideal, in degree-then-lex
    order (generators ordered as given, larger word = leading).
    """
    gen_names = [g for g, _ in generators]
    gen_deg = [d for _, d in generators]
    if any(d <= 0 for d in gen_deg):
        raise PresentationError("generators must have positive degree")
    rels = []
    labels = []
    for r in relations:
        if isinstance(r, str):
            rels.append(parse_polynomial(r, gen_names))
            labels.append(r.replace(" ", ""))
        else:
            rels.append([tuple(w) for w in r])
            labels.append("+".join(_word_name(w, gen_names) for w in r))
    for r in rels:
        if len({sum(gen_deg[g] for g in w) for w in r}) > 1:
            raise PresentationError("relation is not homogeneous")

    def wdeg(w):
        return sum(gen_deg[g] for g in w)

    words_by_deg: dict[int, list[tuple]] = {0: [()]}
    maxg = max(gen_deg)
    standard: dict[int, list[tuple]] = {0: [()]}
    reducers: dict[int, tuple] = {}
    zero_run = 0
    d = 0
    while True:
        d += 1
        if d > degree_bound:
            raise PresentationError("presentation not finite within bound")
        ws = []
        for g, gd in enumerate(gen_deg):
            if d - gd >= 0:
                ws.extend(w + (g,) for w in words_by_deg.get(d - gd, []))
        # descending lex order: leading (largest) words get the low columns
        ws = sorted(set(ws), reverse=True)
        words_by_deg[d] = ws
        col = {w: i for i, w in enumerate(ws)}
        ideal = []
        for r in rels:
            rd = wdeg(r[0]) if r else 0
            if not r or rd > d:
                continue
            for ld in range(0, d - rd + 1):
                for u in words_by_deg.get(ld, []):
                    for v in words_by_deg.get(d - rd - ld, []):
                        vec = 0
                        for w in r:
                            vec ^= 1 << col[u + w + v]
                        if vec:
                            ideal.append(vec)
        rows, pivots = rref_vectors(ideal, len(ws))
        pivset = set(pivots)
        std = [w for w in ws if col[w] not in pivset]
        standard[d] = sorted(std)
        reducers[d] = (col, rows, pivots)
        if std:
            zero_run = 0
        else:
            zero_run += 1
            if zero_run >= maxg:
                break

    basis: list[tuple] = []
    for e in sorted(standard):
        basis.extend(standard[e])
    index = {w: i for i, w in enumerate(basis)}

    def normal_form(word: tuple) -> int:
        e = wdeg(word)
        if e == 0:
            return 1
        if e not in reducers:
            return 0
        col, rows, pivots = reducers[e]
        vec = 1 << col[word]
        for row, p in zip(rows, pivots):
            if (vec >> p) & 1:
                vec ^= row
        ws = words_by_deg[e]
        out = 0
        for c in bits(vec):
            out |= 1 << index[ws[c]]
        return out

    n = len(basis)
    mult = [[normal_form(basis[i] + basis[j]) for j in range(n)] for i in range(n)]
    names = [_word_name(w, gen_names) for w in basis]
    degrees = [wdeg(w) for w in basis]
    gen_index = []
    for g in range(len(gen_names)):
        nf = normal_form((g,))
        if popcount(nf) != 1:
            raise PresentationError(f"generator {gen_names[g]} is not a basis element")
        gen_index.append(nf.bit_length() - 1)

    h = HopfAlgebra(
        name=name,
        names=names,
        degrees=degrees,
        mult=mult,
        comult=[frozenset()] * n,
        antipode=[0] * n,
        generators=gen_index,
        expressions=[[w] for w in basis],
        relations=list(zip(labels, rels)),
        unit=index[()],
    )

    # comultiplication, extended multiplicatively from the generators
    gen_delta = []
    coproducts = coproducts or {}
    for g, gname in enumerate(gen_names):
        if gname in coproducts:
            t = frozenset()
            for left, right in coproducts[gname]:
                a = sum_words(h, parse_polynomial(left, gen_names))
                b = sum_words(h, parse_polynomial(right, gen_names))
                for i in bits(a):
                    for j in bits(b):
                        t ^= frozenset([(i, j)])
            gen_delta.append(t)
        else:
            gi = gen_index[g]
            gen_delta.append(frozenset([(gi, h.unit), (h.unit, gi)]))
    unit_t = frozenset([(h.unit, h.unit)])

    def word_delta(w):
        t = unit_t
        for g in w:
            t = h.tensor_mul(t, gen_delta[g])
        return t

    for label, r in h.relations:
        t = frozenset()
        for w in r:
            t ^= word_delta(w)
        if t:
            raise PresentationError(f"coproduct does not respect relation {label}")
    h.comult = [word_delta(w) for w in basis]
    h.antipode = derive_antipode(h)
    h.quasi_elementary = [
        (label, [h.element(e) for e in elems]) for label, elems in quasi_elementary
    ]
    return h


def derive_antipode(h: HopfAlgebra) -> list[int]:
    """Solve m(S (x) id)Delta = unit.counit degree by degree."""
    S = [0] * h.dim
    S[h.unit] = 1 << h.unit
    for x in sorted(range(h.dim), key=lambda i: h.degrees[i]):
        if x == h.unit:
            continue
        acc = 0
        found = False
        for (a, b) in h.comult[x]:
            if a == x and b == h.unit:
                found = True
                continue
            if h.degrees[a] >= h.degrees[x]:
                raise PresentationError("algebra is not connected")
            acc ^= h.mul(S[a], 1 << b)
        if not found:
            raise PresentationError(f"coproduct of {h.names[x]} lacks the x(x)1 term")
        S[x] = acc
    return S


def _pairs_name(h, t):
    return " + ".join(f"{h.names[a]}(x){h.names[b]}" for a, b in sorted(t)) or "0"


def validate_hopf(h: HopfAlgebra) -> list[str]:
    """Return a list of violated axioms; empty iff ``h`` is a valid Hopf algebra."""
    report = []
    n = h.dim
    deg0 = h.basis_in_degree(0)
    if deg0 != [h.unit]:
        report.append(f"connectedness: degree 0 has dimension {len(deg0)}")
    if any(d < 0 for d in h.degrees):
        report.append("degrees must be non-negative")
    u = 1 << h.unit
    for i in range(n):
        if h.mult[h.unit][i] != 1 << i or h.mult[i][h.unit] != 1 << i:
            report.append(f"unit: 1*{h.names[i]} or {h.names[i]}*1 wrong")
    for i in range(n):
        for j in range(n):
            p = h.mult[i][j]
            for k in bits(p):
                if h.degrees[k] != h.degrees[i] + h.degrees[j]:
                    report.append(f"grading: {h.names[i]}*{h.names[j]} not homogeneous")
                    break
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = h.mul(h.mult[i][j], 1 << k)
                right = h.mul(1 << i, h.mult[j][k])
                if left != right:
                    report.append(
                        f"associativity fails at ({h.names[i]}, {h.names[j]}, {h.names[k]})"
                    )
    for i in range(n):
        t = h.comult[i]
        for (a, b) in t:
            if h.degrees[a] + h.degrees[b] != h.degrees[i]:
                report.append(f"grading: Delta({h.names[i]}) not homogeneous")
                break
        if frozenset((b, a) for a, b in t) != t:
            report.append(f"cocommutativity fails at {h.names[i]}")
        # counit
        left = 0
        right = 0
        for (a, b) in t:
            if a == h.unit:
                left ^= 1 << b
            if b == h.unit:
                right ^= 1 << a
        if left != 1 << i or right != 1 << i:
            report.append(f"counit fails at {h.names[i]}")
        # coassociativity
        l3: dict = {}
        r3: dict = {}
        for (a, b) in t:
            for (c, d) in h.comult[a]:
                l3[(c, d, b)] = l3.get((c, d, b), 0) ^ 1
            for (c, d) in h.comult[b]:
                r3[(a, c, d)] = r3.get((a, c, d), 0) ^ 1
        if {k for k, v in l3.items() if v} != {k for k, v in r3.items() if v}:
            report.append(f"coassociativity fails at {h.names[i]}")
        # antipode
        acc_l = 0
        acc_r = 0
        for (a, b) in t:
            acc_l ^= h.mul(h.antipode[a], 1 << b)
            acc_r ^= h.mul(1 << a, h.antipode[b])
        want = u if i == h.unit else 0
        if acc_l != want or acc_r != want:
            report.append(f"antipode fails at {h.names[i]}")
    for i in range(n):
        for j in range(n):
            lhs = h.delta(h.mult[i][j])
            rhs = h.tensor_mul(h.comult[i], h.comult[j])
            if lhs != rhs:
                report.append(
                    f"compatibility Delta(ab)=Delta(a)Delta(b) fails at ({h.names[i]}, {h.names[j]})"
                )
    # generators generate
    for i in range(n):
        ex = sum_words(h, h.expressions[i])
        if ex != 1 << i:
            report.append(f"expression for {h.names[i]} does not evaluate to it")
    return report


@dataclass
class SubHopfInclusion:
    """Inclusion of Hopf algebras; ``embedding[i]`` is the image of sub basis ``i``."""

    sub: HopfAlgebra
    ambient: HopfAlgebra
    embedding: list[int]

    def image(self, x: int) -> int:
        out = 0
        for i in bits(x):
            out ^= self.embedding[i]
        return out

    def validate(self) -> list[str]:
        a, b, e = self.ambient, self.sub, self.embedding
        report = []
        red = Reducer()
        for i in range(b.dim):
            if not red.add(e[i]):
                report.append("embedding is not injective")
                break
            try:
                if a.degree_of(e[i]) != b.degrees[i]:
                    report.append(f"degree mismatch at {b.names[i]}")
            except ValueError:
                report.append(f"image of {b.names[i]} not homogeneous")
        for i in range(b.dim):
            for j in range(b.dim):
                if self.image(b.mult[i][j]) != a.mul(e[i], e[j]):
                    report.append(f"not multiplicative at ({b.names[i]}, {b.names[j]})")
            lhs = frozenset()
            for (p, q) in b.comult[i]:
                for x in bits(e[p]):
                    for y in bits(e[q]):
                        lhs ^= frozenset([(x, y)])
            if lhs != a.delta(e[i]):
                report.append(f"not comultiplicative at {b.names[i]}")
        return report


def sub_hopf_from_generators(
    ambient: HopfAlgebra, label: str, sub: HopfAlgebra, images: Sequence[int]
) -> SubHopfInclusion:
    """Extend generator images to the sub basis via its generator expressions."""
    emb = []
    for i in range(sub.dim):
        x = 0
        for w in sub.expressions[i]:
            y = 1 << ambient.unit
            for g in w:
                y = ambient.mul(y, images[g])
            x ^= y
        emb.append(x)
    return SubHopfInclusion(sub, ambient, emb)


def trivial_hopf() -> HopfAlgebra:
    """The ground field F2 as a Hopf algebra."""
    return HopfAlgebra(
        name="F2", names=["1"], degrees=[0], mult=[[1]], comult=[frozenset([(0, 0)])],
        antipode=[1], generators=[], expressions=[[()]], relations=[],
    )


def identity_inclusion(h: HopfAlgebra) -> SubHopfInclusion:
    return SubHopfInclusion(h, h, [1 << i for i in range(h.dim)])


def unit_inclusion(h: HopfAlgebra) -> SubHopfInclusion:
    return SubHopfInclusion(trivial_hopf(), h, [1 << h.unit])


def top_degree(h: HopfAlgebra) -> int:
    return h.top_degree


E1_PRESENTATION = dict(
    generators=[("Q0", 1), ("Q1", 3)],
    relations=["Q0^2", "Q1^2", "Q0Q1+Q1Q0"],
    name="E(1)",
    quasi_elementary=[("E(1)", ["Q0", "Q1"])],
)

A1_PRESENTATION = dict(
    generators=[("Sq1", 1), ("Sq2", 2)],
    relations=["Sq1^2", "Sq2^2+Sq1Sq2Sq1"],
    name="A(1)",
    coproducts={"Sq2": [("Sq2", "1"), ("Sq1", "Sq1"), ("1", "Sq2")]},
    quasi_elementary=[("E(1)", ["Sq1", "Sq1Sq2+Sq2Sq1"])],
)


def _from_table(t: dict) -> HopfAlgebra:
    return HopfAlgebra(
        name=t["name"],
        names=list(t["names"]),
        degrees=list(t["degrees"]),
        mult=[list(r) for r in t["mult"]],
        comult=[frozenset(tuple(p) for p in c) for c in t["comult"]],
        antipode=list(t["antipode"]),
        generators=list(t["generators"]),
        expressions=[[tuple(w) for w in e] for e in t["expressions"]],
        relations=[(lab, [tuple(w) for w in ws]) for lab, ws in t["relations"]],
        quasi_elementary=[(lab, list(el)) for lab, el in t["quasi_elementary"]],
        unit=t["unit"],
    )


def to_table(h: HopfAlgebra) -> dict:
    return dict(
        name=h.name,
        names=tuple(h.names),
        degrees=tuple(h.degrees),
        mult=tuple(tuple(r) for r in h.mult),
        comult=tuple(tuple(sorted(c)) for c in h.comult),
        antipode=tuple(h.antipode),
        generators=tuple(h.generators),
        expressions=tuple(tuple(e) for e in h.expressions),
        relations=tuple((lab, tuple(ws)) for lab, ws in h.relations),
        quasi_elementary=tuple((lab, tuple(el)) for lab, el in h.quasi_elementary),
        unit=h.unit,
    )


_CACHE: dict = {}


def builtin_E1() -> HopfAlgebra:
    if "E1" not in _CACHE:
        from ._tables import E1_TABLE

        _CACHE["E1"] = _from_table(E1_TABLE)
    return _CACHE["E1"]


def builtin_A1() -> tuple[HopfAlgebra, SubHopfInclusion]:
    if "A1" not in _CACHE:
        from ._tables import A1_TABLE

        a = _from_table(A1_TABLE)
        e = builtin_E1()
        q0, q1 = a.quasi_elementary[0][1]
        _CACHE["A1"] = (a, sub_hopf_from_generators(a, "E(1)", e, [q0, q1]))
    return _CACHE["A1"]


def builtin(name: str) -> HopfAlgebra:
    key = name.replace("(", "").replace(")", "").upper()
    if key == "E1":
        return builtin_E1()
    if key == "A1":
        return builtin_A1()[0]
    if key in ("F2", "F"):
        return trivial_hopf()
    raise KeyError(name)


def quasi_elementary_inclusions(h: HopfAlgebra) -> list[SubHopfInclusion]:
    """Inclusions for the configured quasi-elementary subalgebras.

    Only sub-algebras isomorphic to a built-in are recognized (here E(1), or
    the algebra itself when it is its own quasi-elementary).
    """
    out = []
    for label, elems in h.quasi_elementary:
        if len(elems) == h.dim or (label == h.name):
            out.append(identity_inclusion(h))
        elif label == "E(1)" and len(elems) == 2:
            out.append(sub_hopf_from_generators(h, label, builtin_E1(), elems))
        else:
            raise NotImplementedError(f"no sub-algebra model for {label}")
    return out
