"""Invertible modules, the Picard group of A(1), and the lifting problem.

The brute-force lift enumerator is an independent oracle: it never looks at
spectral sequences, only at action matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .catalog import joker
from .f2 import bits, kernel_of_columns, solve_columns
from .hopf import HopfAlgebra, SubHopfInclusion
from .modules import (
    AModule,
    ModuleMap,
    direct_sum,
    dual,
    evaluation,
    free_module,
    is_module_iso,
    restrict,
    shift,
    tensor,
    trivial_module,
    validate_module,
)
from .stable import is_stable_equiv, reduce, stably_isomorphic, syzygy, cosyzygy

DEFAULT_BUDGET = 1 << 16


# -- invertibility ---------------------------------------------------------------


@dataclass
class PicCertificate:
    module: AModule
    inverse: AModule
    witness: ModuleMap

    def check(self) -> bool:
        return is_stable_equiv(self.witness)


def is_invertible(m: AModule) -> Optional[PicCertificate]:
    """Certificate that m ⊗ m* -> 1 is a stable equivalence, or None."""
    ev = evaluation(m)
    if is_stable_equiv(ev):
        return PicCertificate(m, dual(m), ev)
    return None


def omega_power(m: AModule, a: int) -> AModule:
    out = m
    for _ in range(abs(a)):
        out = syzygy(out) if a > 0 else cosyzygy(out)
    return out


def pic_element(h: HopfAlgebra, a: int, b: int, c: int = 0) -> AModule:
    """The representative Ω^a J^c [b] (c only meaningful for A(1))."""
    base = joker() if c % 2 else trivial_module(h)
    return shift(omega_power(base, a), b)


# -- lifting census ----------------------------------------------------------------


@dataclass
class LiftCensus:
    base: AModule
    lifts: list[AModule]
    candidates: int
    solutions: int
    exhaustive: bool
    stable: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.lifts)


class _Linearized:
    """Affine-linear constraints on the entries of unknown generator actions."""

    def __init__(self, inc: SubHopfInclusion, base: AModule):
        a, b = inc.ambient, inc.sub
        self.a, self.inc, self.base = a, inc, base
        n = base.dim
        self.n = n
        self.known: dict[int, list[int]] = {}
        for q, bg in enumerate(b.generators):
            img = inc.embedding[bg]
            for pos, g in enumerate(a.generators):
                if img == 1 << g:
                    self.known[pos] = base.actions[q]
        self.unknown = [pos for pos in range(len(a.generators)) if pos not in self.known]
        self.vars: list[tuple[int, int, int]] = []
        for pos in self.unknown:
            dg = a.degrees[a.generators[pos]]
            for i in range(n):
                for j in range(n):
                    if base.degrees[j] == base.degrees[i] + dg:
                        self.vars.append((pos, i, j))
        # equations: (words, target cols); target None means zero
        self.equations: list[tuple[list[tuple], list[int]]] = []
        for q, bg in enumerate(b.generators):
            img = inc.embedding[bg]
            if any(img == 1 << g for g in a.generators):
                continue
            words = []
            for i in bits(img):
                words.extend(a.expressions[i])
            self.equations.append((_cancel(words), list(base.actions[q])))
        for _label, words in a.relations:
            self.equations.append((_cancel(words), [0] * n))

    def act_known(self, word: Sequence[int]) -> list[int]:
        cols = [1 << i for i in range(self.n)]
        for pos in reversed(word):
            gc = self.known[pos]
            cols = [_apply(gc, c) for c in cols]
        return cols

    def linear_equation(self, words: list[tuple], target: list[int]):
        """(columns per variable, rhs) for one equation, or None if nonlinear."""
        n = self.n
        deg = [sum(1 for g in w if g in self.unknown) for w in words]
        if max(deg, default=0) >= 2:
            return None
        cols = [0] * len(self.vars)
        rhs = _flatten(target, n)
        for w, d in zip(words, deg):
            if d == 0:
                rhs ^= _flatten(self.act_known(w), n)
                continue
            k = next(p for p, g in enumerate(w) if g in self.unknown)
            lpre = self.act_known(w[:k])
            lsuf = self.act_known(w[k + 1:])
            for v, (pos, i, j) in enumerate(self.vars):
                if pos != w[k]:
                    continue
                for c in range(n):
                    if (lsuf[c] >> i) & 1:
                        cols[v] ^= lpre[j] << (c * n)
        return cols, rhs

    def module(self, x: int) -> AModule:
        actions = []
        for pos in range(len(self.a.generators)):
            if pos in self.known:
                actions.append(list(self.known[pos]))
            else:
                cols = [0] * self.n
                for v, (p, i, j) in enumerate(self.vars):
                    if p == pos and (x >> v) & 1:
                        cols[i] |= 1 << j
                actions.append(cols)
        return AModule(self.a, self.base.names, self.base.degrees, actions,
                       f"lift({self.base.label})")


def _cancel(words: list[tuple]) -> list[tuple]:
    out: dict = {}
    for w in words:
        out[tuple(w)] = out.get(tuple(w), 0) ^ 1
    return [w for w, v in out.items() if v]


def _apply(cols: Sequence[int], v: int) -> int:
    out = 0
    for i in bits(v):
        out ^= cols[i]
    return out


def _flatten(cols: Sequence[int], n: int) -> int:
    v = 0
    for c, x in enumerate(cols):
        v |= x << (c * n)
    return v


def exact_lifts(inc: SubHopfInclusion, base: AModule, budget: int = DEFAULT_BUDGET):
    """All ambient actions restricting exactly to ``base``.

    Returns (modules, number of candidates examined, exhaustive flag).
    """
    lin = _Linearized(inc, base)
    n = base.dim
    # stack the linear equations; nonlinear ones are checked per candidate
    cols = [0] * len(lin.vars)
    rhs = 0
    block = 0
    for words, target in lin.equations:
        eq = lin.linear_equation(words, target)
        if eq is None:
            continue
        c, r = eq
        off = block * n * n
        for v in range(len(cols)):
            cols[v] |= c[v] << off
        rhs |= r << off
        block += 1
    nrows = block * n * n
    part = solve_columns(cols, nrows, rhs) if cols else (0 if rhs == 0 else None)
    if part is None:
        return [], 0, True
    kern = kernel_of_columns(cols, nrows) if cols else []
    total = 1 << len(kern)
    exhaustive = total <= budget
    found = []
    examined = 0
    for combo in range(min(total, budget)):
        # Gray-code order keeps enumeration deterministic and cheap
        g = combo ^ (combo >> 1)
        x = part
        for k in bits(g):
            x ^= kern[k]
        examined += 1
        mod = lin.module(x)
        if validate_module(mod):
            continue
        found.append(mod)
    return found, examined, exhaustive


def _classify(mods: list[AModule], stable: bool) -> tuple[list[AModule], list[str]]:
    reps: list[AModule] = []
    keys: list = []
    notes = []
    for m in mods:
        key = reduce(m)[0] if stable else m
        new = True
        for r in keys:
            if stable:
                v = stably_isomorphic(key, r)
                if v.answer == "unknown":
                    notes.append(f"undecided stable comparison: {v.reason}")
                if v.answer == "yes":
                    new = False
                    break
            else:
                res = is_module_iso(key, r)
                if res.status == "budget":
                    notes.append(f"undecided isomorphism: {res.reason}")
                if res.witness is not None:
                    new = False
                    break
        if new:
            reps.append(m)
            keys.append(key)
    return reps, notes


def default_free_shifts(inc: SubHopfInclusion, base: AModule) -> range:
    """Shifts d for free summands B[d] that can interact with ``base`` via the
    missing generators: the free summand must overlap base's degree span."""
    top = inc.sub.top_degree
    lo = min(base.degrees) - top - 1
    hi = max(base.degrees) + 1
    return range(lo, hi + 1)


def brute_force_lifts(inc: SubHopfInclusion, base: AModule, budget: int = DEFAULT_BUDGET,
                      stable: bool = False, free_shifts: Optional[Sequence[int]] = None,
                      max_free: int = 2) -> LiftCensus:
    """Census of ambient modules restricting to ``base``.

    Exact mode enumerates actions whose restriction equals ``base`` on the nose
    and classifies them up to isomorphism.  Stable mode enumerates modules
    restricting on the nose to ``base`` plus up to ``max_free`` free summands
    of the subalgebra (shifts from ``free_shifts``), and classifies up to
    stable isomorphism; these are the lifts in the stable category.
    """
    bases = [base]
    if stable:
        shifts = list(free_shifts) if free_shifts is not None else list(default_free_shifts(inc, base))
        for k in range(1, max_free + 1):
            for combo in itertools.combinations_with_replacement(shifts, k):
                frees = [free_module(inc.sub, [d]) for d in combo]
                label = base.label + "".join(f"+F[{d}]" for d in combo)
                bases.append(direct_sum([base] + frees, label))
    mods = []
    examined = 0
    exhaustive = True
    for bb in bases:
        found, ex, full = exact_lifts(inc, bb, budget)
        mods.extend(found)
        examined += ex
        exhaustive = exhaustive and full
    solutions = len(mods)
    reps, notes = _classify(mods, stable)
    if not exhaustive:
        notes.append("budget exhausted; census is partial")
    if stable and shifts:
        notes.append(f"free summands: up to {max_free}, shifts {shifts[0]}..{shifts[-1]}")
    return LiftCensus(base, reps, examined, solutions, exhaustive, stable, notes)


# -- spectral-sequence drivers ---------------------------------------------------------


DIAGONAL_RANGE = (1, 6)


@dataclass
class LiftBound:
    base: AModule
    bound: int
    k: int
    classes: list
    method: str
    caveat: str
    per_variant: list = field(default_factory=list)


def _descent_setup(inc: SubHopfInclusion):
    from .algebra_objects import T_of

    return T_of(inc)


def _ambient_page(inc: SubHopfInclusion, lift: AModule, s_range: tuple[int, int], offset: int):
    from .descent import e1_end

    t = _descent_setup(inc)
    n_max = s_range[1] + offset
    page = e1_end(t, lift, n_max, (-s_range[1], 0), tau=(-1, 1)).e2()
    return page


def lift_bound(inc: SubHopfInclusion, base: AModule, s_range: tuple[int, int] = DIAGONAL_RANGE,
               lift: Optional[AModule] = None) -> LiftBound:
    """2^k, k = number of E2 classes on the counting diagonal (s', 0, s'+1).

    With ``lift`` (an ambient module restricting to ``base``) the End page is
    computed over the ambient algebra; otherwise every θ satisfying the Leibniz
    rule is tried and the largest count is used, so the bound holds whichever
    lift exists.  No admissible θ means no lift (bound 0).
    """
    from .descent import diagonal_classes, end_page_theta

    caveat = f"counting diagonal inspected for s' in {s_range[0]}..{s_range[1]} only"
    if lift is not None:
        page = _ambient_page(inc, lift, s_range, 1)
        cls = diagonal_classes(page, 1, s_range)
        k = sum(d for _, d in cls)
        return LiftBound(base, 1 << k, k, cls, "ambient End page", caveat)
    pages = end_page_theta(base, s_range[1] + 1, (-s_range[1], 0), (-1, 1))
    if not pages:
        return LiftBound(base, 0, 0, [], "theta",
                         "no operator θ on Ext(1, End(base)) obeys the Leibniz rule: no lift exists")
    per = []
    for th, page in pages:
        from .descent import variant_links

        cls = diagonal_classes(page, 1, s_range)
        per.append((sorted(variant_links(th)), cls))
    best = max(per, key=lambda p: sum(d for _, d in p[1]))
    k = sum(d for _, d in best[1])
    return LiftBound(base, 1 << k, k, best[1], "theta (max over admissible variants)", caveat, per)


@dataclass
class ObstructionReport:
    base: AModule
    leibniz_certificate: bool
    classes: list
    method: str
    notes: list = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.classes and not self.leibniz_certificate

    def to_text(self) -> str:
        lines = [f"base: {self.base.label}", f"method: {self.method}"]
        if self.leibniz_certificate:
            lines.append("no operator θ obeys the Leibniz rule over Ext(1,1): "
                         "the E1-level descent datum does not exist")
        if self.classes:
            lines.append("obstruction-diagonal classes (n, s, t) -> (s', t', n):")
            from .descent import to_reference_coords

            for key, d in self.classes:
                lines.append(f"  {key} -> {to_reference_coords(key)} dim {d}")
        elif not self.leibniz_certificate:
            lines.append("no obstruction classes in the window")
        lines.extend(self.notes)
        return "\n".join(lines) + "\n"


def lift_obstruction_report(inc: SubHopfInclusion, base: AModule,
                            s_range: tuple[int, int] = (1, 5), lift: Optional[AModule] = None,
                            links: Optional[set] = None) -> ObstructionReport:
    """E2 classes at reference (s', 0, s'+2) for End(base).

    If no Leibniz θ exists, the report carries that certificate and the page is
    built from the v0-linear θ with s = 0 components ``links`` (if given).
    """
    from .descent import diagonal_classes, end_page_theta, variant_links

    if lift is not None:
        page = _ambient_page(inc, lift, s_range, 2)
        cls = diagonal_classes(page, 2, s_range)
        notes = ["a lift is known; any class listed must be removed by a higher differential"] if cls else []
        return ObstructionReport(base, False, cls, "ambient End page", notes)
    pages = end_page_theta(base, s_range[1] + 2, (-s_range[1], 0), (-1, 1))
    if pages:
        out = []
        notes = []
        for th, page in pages:
            cls = diagonal_classes(page, 2, s_range)
            notes.append(f"variant {sorted(variant_links(th))}: {len(cls)} class(es)")
            for c in cls:
                if c not in out:
                    out.append(c)
        return ObstructionReport(base, False, out, "theta (union over Leibniz variants)", notes)
    notes = []
    cls = []
    if links is not None:
        found = end_page_theta(base, s_range[1] + 2, (-s_range[1], 0), (-1, 1),
                               derivation=False, links=links)
        if not found:
            notes.append(f"no v0-linear θ with components {sorted(links)}")
        for _th, page in found:
            cls = diagonal_classes(page, 2, s_range)
        notes.append(f"page from the v0-linear θ with components {sorted(links)}")
    return ObstructionReport(base, True, cls, "theta (v0-linear)", notes)


# -- Picard group ------------------------------------------------------------------------


@dataclass
class PicReport:
    algebra: str
    status: str  # "determined" or "undetermined"
    group: str
    generators: list[str]
    certificates: dict
    bound: str
    diagonal: list
    notes: list = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"algebra: {self.algebra}", f"status: {self.status}", f"group: {self.group}",
                 f"generators: {', '.join(self.generators)}", f"upper bound: {self.bound}"]
        for name, ok in self.certificates.items():
            lines.append(f"certificate {name}: {'ok' if ok else 'FAILED'}")
        for key, d in self.diagonal:
            lines.append(f"diagonal class {key} dim {d}")
        lines.extend(self.notes)
        return "\n".join(lines) + "\n"


def pic_report(inc: Optional[SubHopfInclusion], h: HopfAlgebra, pic0: str = "Z ⊕ Z",
               s_range: tuple[int, int] = DIAGONAL_RANGE) -> PicReport:
    """Pic of the stable category of ``h`` from descent along ``inc``.

    pic0 is the Picard group of the subalgebra (rank-2 free: shift and Ω).
    The kernel of restriction has order at most 2^k, k the counting-diagonal
    count of the End(1) page; certificates for shift, Ω and (for A(1)) the
    joker supply the lower bound.  Without ``inc`` the descent is degenerate
    and pic0 is returned.
    """
    if inc is None:
        one = trivial_module(h)
        certs = {"shift": is_invertible(shift(one, 1)) is not None,
                 "syzygy": is_invertible(syzygy(one)) is not None}
        status = "determined" if all(certs.values()) else "undetermined"
        return PicReport(h.name, status, pic0, ["[1]-shift", "Ω"], certs, pic0, [],
                         ["degenerate descent: Pic equals the configured base group"])
    one = trivial_module(h)
    lb = lift_bound(inc, trivial_module(inc.sub), s_range, lift=one)
    certs = {
        "shift": is_invertible(shift(one, 1)) is not None,
        "syzygy": is_invertible(syzygy(one)) is not None,
    }
    gens = ["[1]-shift", "Ω"]
    notes = [f"kernel of restriction to {inc.sub.name} has order <= 2^{lb.k}"]
    kernel_lower = 1
    if h.name.upper().replace("(", "").replace(")", "") == "A1":
        j = joker()
        inv = is_invertible(j)
        certs["joker"] = inv is not None
        res_unit = stably_isomorphic(restrict(inc, j), trivial_module(inc.sub)).answer == "yes"
        nontrivial = stably_isomorphic(j, one).answer == "no"
        square = stably_isomorphic(reduce(tensor(j, j))[0], one).answer == "yes"
        certs["joker restricts to 1"] = res_unit
        certs["joker nontrivial"] = nontrivial
        certs["joker squared is 1"] = square
        if inv is not None and res_unit and nontrivial and square:
            kernel_lower = 2
            gens.append("joker")
    upper = 1 << lb.k
    if not (certs["shift"] and certs["syzygy"]):
        status, group = "undetermined", f"undetermined between 0 and {pic0} ⊕ (order <= {upper})"
    elif kernel_lower == upper == 1:
        status, group = "determined", pic0
    elif kernel_lower == upper == 2:
        status, group = "determined", f"{pic0} ⊕ Z/2"
    else:
        status = "undetermined"
        group = f"undetermined between {pic0} ⊕ (order {kernel_lower}) and {pic0} ⊕ (order {upper})"
    bound = f"subquotient of {pic0} ⊕ (F2)^{lb.k}"
    notes.append("restriction maps shift and Ω onto the free generators of the base group, "
                 "so the extension splits")
    return PicReport(h.name, status, group, gens, certs, bound, lb.classes, notes)
