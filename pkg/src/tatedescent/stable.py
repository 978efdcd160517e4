"""Stable-category algorithms over a finite connected Hopf algebra.

Projective, injective and free modules coincide here, so freeness is a
dimension count against the minimal cover, and complete (Tate) resolutions
splice a minimal free resolution of ``m`` with the dual of one for ``m*``.

Ext indexing: ``Ext^{s,t}(m, n)`` is the cohomology of
``Hom_A(P_s, n)`` restricted to maps sending a generator of degree ``d`` to
``n_{d-t}``; for ``s >= 1`` this is classical Ext, and ``s <= 0`` is Tate.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .charts import BigradedChart
from .f2 import Reducer, bits, solve_columns, kernel_of_columns, rank_of, rref_vectors
from .hopf import HopfAlgebra
from .modules import (
    AModule,
    ModuleMap,
    Quotient,
    apply_cols,
    compose_cols,
    dual,
    dual_map,
    free_module,
    is_module_iso,
    kernel,
    margolis_invariants,
    trivial_module,
    zero_module,
)

DEFAULT_SIGMA = (-12, 12)
DEFAULT_TAU = (-40, 40)


class WindowError(ValueError):
    """An answer would need a larger resolution window."""


def augmentation_image(m: AModule) -> list[int]:
    """Spanning vectors of I(A) m."""
    return [c for cols in m.actions for c in cols if c]


def free_map(f: AModule, x: AModule, gen_images: Sequence[int], shift: int = 0) -> ModuleMap:
    """The A-linear map from a standard free module sending generator k to gen_images[k]."""
    h = f.algebra
    full = x.full_actions()
    cols = []
    for u in gen_images:
        for i in range(h.dim):
            cols.append(apply_cols(full[i], u))
    return ModuleMap(f, x, cols, shift)


def minimal_cover(m: AModule) -> ModuleMap:
    """Minimal free cover F -> m; generators = complement of I(A)m."""
    q = Quotient(m, augmentation_image(m))
    gens = q.keep
    f = free_module(m.algebra, [m.degrees[i] for i in gens], f"F({m.label})")
    return free_map(f, m, [1 << i for i in gens])


def cover_rank(m: AModule) -> int:
    return m.dim - rank_of(augmentation_image(m), m.dim)


def is_free(m: AModule) -> bool:
    return m.dim == m.algebra.dim * cover_rank(m)


def standardize_free(x: AModule) -> ModuleMap:
    """Isomorphism from a standard free module onto the free module ``x``."""
    p = minimal_cover(x)
    if not p.is_iso():
        raise ValueError("module is not free")
    return p


def syzygy(m: AModule) -> AModule:
    """Kernel of the minimal free cover."""
    k, _ = kernel(minimal_cover(m), f"Ω({m.label})")
    return k


def injective_hull(m: AModule) -> ModuleMap:
    """Minimal embedding m -> I with I free: the dual of the cover of m*."""
    p = minimal_cover(dual(m))
    return dual_map(p, source=m, target=dual(p.source))


def cosyzygy(m: AModule) -> AModule:
    j = injective_hull(m)
    return Quotient(j.target, j.cols, f"Ω⁻¹({m.label})").module


def reduce(m: AModule) -> tuple[AModule, int]:
    """Strip free summands: returns (reduced, free rank) with m ≅ reduced ⊕ free."""
    if m.dim == 0:
        return m, 0
    if is_free(m):
        return zero_module(m.algebra), m.dim // m.algebra.dim
    r = syzygy(cosyzygy(m)).renamed(f"red({m.label})")
    rank = (m.dim - r.dim) // m.algebra.dim
    if rank * m.algebra.dim != m.dim - r.dim:
        raise AssertionError("free part is not a multiple of dim A")
    return r, rank


def is_stable_equiv(f: ModuleMap) -> bool:
    k, _ = kernel(f)
    c = Quotient(f.target, f.cols).module
    return is_free(k) and is_free(c)


@dataclass
class StableVerdict:
    answer: str  # "yes", "no", "unknown"
    witness: Optional[ModuleMap] = None
    reason: str = ""

    def __bool__(self):
        return self.answer == "yes"


def stably_isomorphic(m: AModule, n: AModule) -> StableVerdict:
    rm, _ = reduce(m)
    rn, _ = reduce(n)
    if rm.graded_dims() != rn.graded_dims():
        return StableVerdict("no", reason="reduced graded dimensions differ")
    if margolis_invariants(m) != margolis_invariants(n):
        return StableVerdict("no", reason="Margolis homology differs")
    res = is_module_iso(rm, rn)
    if res.witness is not None:
        return StableVerdict("yes", res.witness)
    if res.status == "non-isomorphic":
        return StableVerdict("no", reason=f"reductions not isomorphic: {res.reason}")
    return StableVerdict("unknown", reason=res.reason)


# -- complete resolutions ---------------------------------------------------------


@dataclass
class FreeTerm:
    module: AModule
    gen_degrees: list[int]

    @property
    def rank(self) -> int:
        return len(self.gen_degrees)


@dataclass
class CompleteResolution:
    """Window of a minimal complete resolution.

    ``terms[s]`` is the standard free module P_s; ``coeffs[s][k][l]`` is the
    algebra element a with d_s(x_k) = sum_l a x_l (x = generators).
    """

    module: AModule
    lo: int
    hi: int
    terms: dict[int, FreeTerm]
    coeffs: dict[int, list[list[int]]]
    maps: dict[int, ModuleMap]
    augmentation: ModuleMap
    coaugmentation: ModuleMap

    def rank(self, s: int) -> int:
        return self.terms[s].rank

    def ranks(self) -> dict[int, int]:
        return {s: t.rank for s, t in sorted(self.terms.items())}

    def d(self, s: int) -> ModuleMap:
        return self.maps[s]

    def check(self) -> list[str]:
        """d∘d = 0, exactness at interior terms, and minimality."""
        report = []
        h = self.module.algebra
        for s in range(self.lo + 2, self.hi + 1):
            if any(compose_cols(self.maps[s - 1].cols, self.maps[s].cols)):
                report.append(f"d∘d != 0 at {s}")
        for s in range(self.lo + 1, self.hi):
            # ker d_s = im d_{s+1}
            src = self.terms[s].module
            ker = 0
            for d in set(src.degrees):
                idx = src.basis_in_degree(d)
                ker += len(kernel_of_columns([self.maps[s].cols[i] for i in idx],
                                             self.maps[s].target.dim))
            im = self.maps[s + 1].rank()
            if ker != im:
                report.append(f"not exact at {s}: ker {ker}, im {im}")
        for s, rows in self.coeffs.items():
            if s == 0:
                # the splice d0 carries a unit exactly on free summands of the module
                continue
            for row in rows:
                for a in row:
                    if (a >> h.unit) & 1:
                        report.append(f"non-minimal differential at {s}")
                        break
        # splice at 0: d_0 = coaugmentation ∘ augmentation
        if self.lo < 0 <= self.hi:
            comp = compose_cols(self.coaugmentation.cols, self.augmentation.cols)
            if comp != self.maps[0].cols:
                report.append("splice at 0 inconsistent")
        return report


def _coeff_matrix(d: ModuleMap, src: FreeTerm, tgt: FreeTerm) -> list[list[int]]:
    n = d.source.algebra.dim
    mask = (1 << n) - 1
    out = []
    for k in range(src.rank):
        v = d.cols[k * n + d.source.algebra.unit]
        out.append([(v >> (l * n)) & mask for l in range(tgt.rank)])
    return out


class _Resolver:
    """Incrementally extended minimal resolution of one module (both sides)."""

    def __init__(self, m: AModule):
        self.m = m
        self.lock = threading.Lock()
        # positive side
        eps = minimal_cover(m)
        self.pos_terms = [FreeTerm(eps.source, [m.degrees[i] for i in _gens_of(eps)])]
        self.pos_maps: list[ModuleMap] = []  # pos_maps[s-1] = d_s : P_s -> P_{s-1}
        self.augmentation = eps
        self._pos_kernel = kernel(eps)
        # negative side via the resolution of m*
        md = dual(m)
        epsq = minimal_cover(md)
        self.q_terms = [epsq.source]
        self.q_maps: list[ModuleMap] = []
        self._neg_kernel = kernel(epsq)
        self.neg_terms: list[FreeTerm] = []  # neg_terms[k] = P_{-k-1}
        self.neg_isos: list[ModuleMap] = []
        self.neg_maps: list[ModuleMap] = []  # neg_maps[k] = d_{-k}: P_{-k} -> P_{-k-1}, k>=1
        iso0 = standardize_free(dual(epsq.source))
        self.neg_terms.append(FreeTerm(iso0.source, _free_degrees(iso0.source)))
        self.neg_isos.append(iso0)
        co = dual_map(epsq, source=m, target=iso0.target)
        self.coaugmentation = ModuleMap(m, iso0.source,
                                        compose_cols(iso0.inverse().cols, co.cols), 0)
        self.d0 = ModuleMap(eps.source, iso0.source,
                            compose_cols(self.coaugmentation.cols, eps.cols), 0)

    def extend_pos(self, s: int):
        while len(self.pos_terms) <= s:
            kmod, incl = self._pos_kernel
            p = minimal_cover(kmod)
            d = ModuleMap(p.source, incl.target, compose_cols(incl.cols, p.cols), 0)
            self.pos_terms.append(FreeTerm(p.source, _free_degrees(p.source)))
            self.pos_maps.append(d)
            self._pos_kernel = kernel(d)

    def extend_neg(self, k: int):
        """Ensure P_{-k} exists (k >= 1)."""
        while len(self.neg_terms) < k:
            kmod, incl = self._neg_kernel
            p = minimal_cover(kmod)
            dq = ModuleMap(p.source, incl.target, compose_cols(incl.cols, p.cols), 0)
            self.q_terms.append(p.source)
            self.q_maps.append(dq)
            self._neg_kernel = kernel(dq)
            j = len(self.neg_terms)  # building P_{-j-1} = Q_j^*
            iso = standardize_free(dual(p.source))
            prev_iso = self.neg_isos[j - 1]
            dd = dual_map(dq, source=prev_iso.target, target=iso.target)
            cols = compose_cols(iso.inverse().cols, compose_cols(dd.cols, prev_iso.cols))
            self.neg_terms.append(FreeTerm(iso.source, _free_degrees(iso.source)))
            self.neg_isos.append(iso)
            self.neg_maps.append(ModuleMap(prev_iso.source, iso.source, cols, 0))

    def term(self, s: int) -> FreeTerm:
        if s >= 0:
            self.extend_pos(s)
            return self.pos_terms[s]
        self.extend_neg(-s)
        return self.neg_terms[-s - 1]

    def dmap(self, s: int) -> ModuleMap:
        """d_s: P_s -> P_{s-1}."""
        if s >= 1:
            self.extend_pos(s)
            return self.pos_maps[s - 1]
        if s == 0:
            return self.d0
        self.extend_neg(-s + 1)
        return self.neg_maps[-s - 1]


def _gens_of(cover: ModuleMap) -> list[int]:
    n = cover.source.algebra.dim
    out = []
    for k in range(cover.source.dim // n):
        v = cover.cols[k * n + cover.source.algebra.unit]
        out.append((v & -v).bit_length() - 1)
    return out


def _free_degrees(f: AModule) -> list[int]:
    return list(f.free_degrees)


def module_fingerprint(m: AModule) -> str:
    h = hashlib.sha256()
    h.update(m.algebra.name.encode())
    h.update(repr((m.degrees, m.actions)).encode())
    return h.hexdigest()


_RESOLVERS: dict[str, _Resolver] = {}
_RESOLVERS_LOCK = threading.Lock()


def _resolver(m: AModule) -> _Resolver:
    key = module_fingerprint(m)
    r = _RESOLVERS.get(key)
    if r is None:
        with _RESOLVERS_LOCK:
            r = _RESOLVERS.get(key)
            if r is None:
                r = _Resolver(m)
                _RESOLVERS[key] = r
    return r


_PREBUILT: dict[str, CompleteResolution] = {}


def register_resolution(res: CompleteResolution) -> None:
    """Publish an externally built (e.g. cached) window for reuse."""
    key = module_fingerprint(res.module)
    with _RESOLVERS_LOCK:
        old = _PREBUILT.get(key)
        if old is None or (res.hi - res.lo) > (old.hi - old.lo):
            _PREBUILT[key] = res


def _slice(res: CompleteResolution, lo: int, hi: int) -> CompleteResolution:
    return CompleteResolution(
        res.module, lo, hi,
        {s: res.terms[s] for s in range(lo, hi + 1)},
        {s: res.coeffs[s] for s in range(lo + 1, hi + 1)},
        {s: res.maps[s] for s in range(lo + 1, hi + 1)},
        res.augmentation, res.coaugmentation,
    )


def complete_resolution(m: AModule, window: tuple[int, int] = DEFAULT_SIGMA) -> CompleteResolution:
    lo, hi = window
    pre = _PREBUILT.get(module_fingerprint(m))
    if pre is not None and pre.lo <= lo and hi <= pre.hi:
        return _slice(pre, lo, hi)
    r = _resolver(m)
    with r.lock:
        terms = {s: r.term(s) for s in range(lo, hi + 1)}
        maps = {s: r.dmap(s) for s in range(lo + 1, hi + 1)}
        coeffs = {s: _coeff_matrix(maps[s], terms[s], terms[s - 1]) for s in maps}
        return CompleteResolution(m, lo, hi, terms, coeffs, maps, r.augmentation,
                                  r.coaugmentation)


# -- Ext -------------------------------------------------------------------------


class CochainDegree:
    """Hom_A(P_s, n) in internal degree t: one copy of n_{d_k - t} per generator."""

    def __init__(self, term: FreeTerm, n: AModule, t: int):
        self.coords = []
        self.offset = {}
        for k, d in enumerate(term.gen_degrees):
            for j in n.basis_in_degree(d - t):
                self.offset[(k, j)] = len(self.coords)
                self.coords.append((k, j))

    def __len__(self):
        return len(self.coords)

    def value(self, v: int, k: int) -> int:
        """The image of generator k (an int over n's basis) for cochain v."""
        out = 0
        for c in bits(v):
            kk, j = self.coords[c]
            if kk == k:
                out |= 1 << j
        return out

    def from_values(self, values: Sequence[int]) -> int:
        v = 0
        for k, u in enumerate(values):
            for j in bits(u):
                v |= 1 << self.offset[(k, j)]
        return v


def coboundary(coeffs: list[list[int]], src: CochainDegree, tgt: CochainDegree,
               n: AModule) -> list[int]:
    """Columns of δ: Hom(P_s, n)_t -> Hom(P_{s+1}, n)_t, (δf)(y) = f(d y)."""
    full = n.full_actions()
    cols = []
    for (k, j) in src.coords:
        v = 0
        for kp, row in enumerate(coeffs):
            a = row[k]
            if not a:
                continue
            img = 0
            for b in bits(a):
                img ^= full[b][j]
            for jj in bits(img):
                v ^= 1 << tgt.offset[(kp, jj)]
        cols.append(v)
    return cols


@dataclass
class ExtGroup:
    """Ext^{s,t}(m, n) with cocycle representatives and a reduction map."""

    s: int
    t: int
    cochains: CochainDegree
    reps: list[int]
    _red: Reducer = field(repr=False)
    _nbound: int = 0

    @property
    def dim(self) -> int:
        return len(self.reps)

    def classify(self, cocycle: int) -> int:
        """Coordinates (int over reps) of the class of a cocycle."""
        combo = self._red.express(cocycle)
        if combo is None:
            raise ValueError("not a cocycle")
        return combo >> self._nbound


def _ext_group(res: CompleteResolution, n: AModule, s: int, t: int) -> ExtGroup:
    c_prev = CochainDegree(res.terms[s - 1], n, t)
    c_here = CochainDegree(res.terms[s], n, t)
    c_next = CochainDegree(res.terms[s + 1], n, t)
    d_in = coboundary(res.coeffs[s], c_prev, c_here, n)
    d_out = coboundary(res.coeffs[s + 1], c_here, c_next, n)
    z = kernel_of_columns(d_out, len(c_next))
    cycles = []
    for kv in z:
        v = 0
        for c in bits(kv):
            v ^= 1 << c
        cycles.append(v)
    bnd = [apply_cols(d_in, 1 << i) for i in range(len(c_prev))]
    bnd = rref_vectors(bnd, len(c_here))[0]
    red = Reducer()
    for b in bnd:
        red.add(b)
    reps = []
    red2 = Reducer(track=True)
    for b in bnd:
        red2.add(b)
    for zv in cycles:
        if red.add(zv):
            reps.append(zv)
    # rebuild a tracking reducer whose combo bits above nb index reps in order
    for r in reps:
        red2.add(r)
    return ExtGroup(s, t, c_here, reps, red2, len(bnd))


def ext_internal_range(res: CompleteResolution, n: AModule, s: int) -> range:
    degs = res.terms[s].gen_degrees
    if not degs or not n.degrees:
        return range(0)
    lo = min(degs) - max(n.degrees)
    hi = max(degs) - min(n.degrees)
    return range(lo, hi + 1)


class ExtCalculator:
    """Ext^{*,*}(m, n) over a sigma window, with representatives."""

    def __init__(self, m: AModule, n: AModule, window: tuple[int, int]):
        if m.algebra is not n.algebra:
            raise ValueError("modules over different algebras")
        self.m, self.n = m, n
        self.window = window
        self.res = complete_resolution(m, (window[0] - 1, window[1] + 1))
        self._groups: dict[tuple[int, int], ExtGroup] = {}

    def group(self, s: int, t: int) -> ExtGroup:
        if not (self.window[0] <= s <= self.window[1]):
            raise WindowError(f"s={s} outside window {self.window}")
        key = (s, t)
        if key not in self._groups:
            self._groups[key] = _ext_group(self.res, self.n, s, t)
        return self._groups[key]

    def dims(self, tau: Optional[tuple[int, int]] = None) -> dict[tuple[int, int], int]:
        out = {}
        for s in range(self.window[0], self.window[1] + 1):
            for t in ext_internal_range(self.res, self.n, s):
                if tau and not (tau[0] <= t <= tau[1]):
                    continue
                d = self.group(s, t).dim
                if d:
                    out[(s, t)] = d
        return out

    def chart(self, tau: Optional[tuple[int, int]] = None, title: str = "") -> BigradedChart:
        dims = self.dims(tau)
        return BigradedChart(dims, sigma=self.window, tau=tau, title=title)


def ext(m: AModule, n: AModule, window: tuple[int, int] = (0, 10),
        tau: Optional[tuple[int, int]] = None) -> BigradedChart:
    """Bigraded (Tate) Ext chart of (m, n)."""
    label = f"Ext_{m.algebra.name}({m.label}, {n.label})"
    return ExtCalculator(m, n, window).chart(tau, label)


def poincare_check(a: HopfAlgebra, window: tuple[int, int] = (-6, 5)) -> list[str]:
    """Compare dim Ext^{s,t}(1,1) with dim Ext^{-1-s,-|A|-t}(1,1); returns mismatches.

    With internal degrees placed as in this module (Ext^{1,1} holds v0), the
    dual of a free generator in degree 0 sits in degree -|A|, so the partner
    of (s, t) is (-1-s, -|A|-t).
    """
    one = trivial_module(a)
    lo, hi = window
    calc = ExtCalculator(one, one, (min(lo, -1 - hi), max(hi, -1 - lo)))
    top = a.top_degree
    dims = calc.dims()
    report = []
    for s in range(lo, hi + 1):
        ts = {t for (ss, t) in dims if ss == s} | {-top - t for (ss, t) in dims if ss == -1 - s}
        for t in sorted(ts):
            x = dims.get((s, t), 0)
            y = dims.get((-1 - s, -top - t), 0)
            if x != y:
                report.append(f"Ext^({s},{t}) = {x} but Ext^({-1 - s},{-top - t}) = {y}")
    return report


def end_homotopy(a: HopfAlgebra, window: tuple[int, int] = (-6, 6)) -> dict:
    """Homotopy of End(1) and pic(A) read off from Ext(1,1) by duality.

    pi_{s,t}(End) has the dimension of Ext^{s-1,|A|-t}; pi_i(pic) for i >= 2 has
    the dimension of Ext^{i-2,|A|}; pi_1(pic) is trivial.
    """
    one = trivial_module(a)
    lo, hi = window
    calc = ExtCalculator(one, one, (lo - 1, hi))
    top = a.top_degree
    dims = calc.dims()
    end = {}
    for (s, t), d in dims.items():
        end[(s + 1, top - t)] = d
    pic = {1: 0}
    for i in range(2, hi + 3):
        if lo - 1 <= i - 2 <= hi:
            pic[i] = dims.get((i - 2, top), 0)
    return {
        "end": BigradedChart({k: v for k, v in end.items() if lo <= k[0] <= hi},
                             sigma=window, title=f"pi_*,*End_{a.name}(1)"),
        "pic": pic,
    }


# -- functoriality and products --------------------------------------------------------


def ext_map_matrix(cx: ExtCalculator, cy: ExtCalculator, f: ModuleMap, s: int, t: int) -> list[int]:
    """Columns of f_*: Ext^{s,t}(m, X) -> Ext^{s,t-shift}(m, Y) in class coordinates."""
    gx = cx.group(s, t)
    if not gx.dim:
        return []
    gy = cy.group(s, t - f.shift)
    rank = cx.res.terms[s].rank
    cols = []
    for rep in gx.reps:
        vals = [f(gx.cochains.value(rep, k)) for k in range(rank)]
        cols.append(gy.classify(gy.cochains.from_values(vals)) if gy.dim else 0)
    return cols


def induced_map_on_ext(f: ModuleMap, m: AModule, window: tuple[int, int],
                       tau: Optional[tuple[int, int]] = None) -> dict[tuple[int, int], list[int]]:
    """Matrices of Ext(m, X) -> Ext(m, Y) per bidegree (columns = images of basis classes)."""
    cx = ExtCalculator(m, f.source, window)
    cy = ExtCalculator(m, f.target, window)
    out = {}
    for s in range(window[0], window[1] + 1):
        for t in ext_internal_range(cx.res, f.source, s):
            if tau and not (tau[0] <= t <= tau[1]):
                continue
            cols = ext_map_matrix(cx, cy, f, s, t)
            if cols:
                out[(s, t)] = cols
    return out


class YonedaProducts:
    """Yoneda composition on Ext_A(1, 1) for s >= 0 via chain-map lifting."""

    def __init__(self, a: HopfAlgebra, smax: int):
        self.a = a
        self.one = trivial_module(a)
        self.calc = ExtCalculator(self.one, self.one, (0, smax))
        self.res = self.calc.res
        self.smax = smax

    def lift(self, s: int, t: int, values: Sequence[int], length: int) -> list[list[int]]:
        """Chain map P_{s+k} -> P_k (k <= length) lifting the cocycle P_s -> 1.

        Returns per k the generator images (ints over P_k's basis).
        """
        if s + length > self.smax + 1:
            raise WindowError("insufficient resolution window")
        a = self.a
        res = self.res
        # k = 0: lift 1 -> P_0 = A by sending the value to the unit generator
        first = []
        for u in values:
            first.append((1 << a.unit) if u else 0)
        chain = [first]
        for k in range(1, length + 1):
            src = res.terms[s + k]
            tgt = res.terms[k]
            prev = res.terms[s + k - 1]
            prev_map = free_map(prev.module, res.terms[k - 1].module, chain[k - 1])
            dk = res.maps[k]
            images = []
            for gidx in range(src.rank):
                # need phi_k(y) with d_k phi_k(y) = phi_{k-1}(d y)
                dy = res.maps[s + k].cols[gidx * a.dim + a.unit]
                target = prev_map(dy)
                deg = src.gen_degrees[gidx] - t
                cand = [i for i in range(tgt.module.dim) if tgt.module.degrees[i] == deg]
                cols = [dk.cols[i] for i in cand]
                x = solve_columns(cols, res.terms[k - 1].module.dim, target)
                if x is None:
                    raise AssertionError("chain map lifting failed")
                v = 0
                for c in bits(x):
                    v |= 1 << cand[c]
                images.append(v)
            chain.append(images)
        return chain

    def product(self, s1: int, t1: int, x: int, s2: int, t2: int, y: int) -> int:
        """Class of x·y (x in Ext^{s1,t1}, y in Ext^{s2,t2}) as coordinates."""
        gx = self.calc.group(s1, t1)
        gy = self.calc.group(s2, t2)
        gz = self.calc.group(s1 + s2, t1 + t2)
        if not gx.dim or not gy.dim or not gz.dim:
            return 0
        xr = _combine(gx.reps, x)
        yr = _combine(gy.reps, y)
        yvals = [gy.cochains.value(yr, k) for k in range(self.res.terms[s2].rank)]
        chain = self.lift(s2, t2, yvals, s1)
        phi = chain[s1]
        xvals = [gx.cochains.value(xr, k) for k in range(self.res.terms[s1].rank)]
        # x ∘ phi on generators of P_{s1+s2}: evaluate x on phi(y) in P_{s1}
        xmap = free_map(self.res.terms[s1].module, self.one, xvals)
        zvals = [xmap(v) for v in phi]
        return gz.classify(gz.cochains.from_values(zvals))


    def act(self, cx: ExtCalculator, s1: int, t1: int, x: int, s2: int, t2: int, y: int) -> int:
        """Class of x·y for x in Ext^{s1,t1}(1, X) (calculator cx) and y in Ext^{s2,t2}(1, 1)."""
        gx = cx.group(s1, t1)
        gy = self.calc.group(s2, t2)
        gz = cx.group(s1 + s2, t1 + t2)
        if not gx.dim or not gy.dim or not gz.dim:
            return 0
        xr = _combine(gx.reps, x)
        yr = _combine(gy.reps, y)
        yvals = [gy.cochains.value(yr, k) for k in range(self.res.terms[s2].rank)]
        phi = self.lift(s2, t2, yvals, s1)[s1]
        xvals = [gx.cochains.value(xr, k) for k in range(self.res.terms[s1].rank)]
        xmap = free_map(self.res.terms[s1].module, cx.n, xvals)
        return gz.classify(gz.cochains.from_values([xmap(v) for v in phi]))


def _combine(reps: Sequence[int], coords: int) -> int:
    v = 0
    for c in bits(coords):
        v ^= reps[c]
    return v
