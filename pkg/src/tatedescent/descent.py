"""Amitsur complexes of a descent algebra and the resulting spectral-sequence pages.

Level convention: level n of a page is built from the layer T^{⊗(n+1)} ⊗ X
(n >= 0).  ``level_offset=1`` re-labels level n as n+1 for comparison with
displays that index layers by T^{⊗n}.

Page keys are (n, s, t) with (s, t) the Ext bidegree of this package
(Ext^{1,1}(1,1) holds v0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra_objects import AlgebraObject, tensor_power
from .charts import BigradedChart, SSPage
from .f2 import Reducer, bits, kernel_of_columns, rank_of, rref_vectors
from .hopf import SubHopfInclusion
from .modules import (
    AModule,
    ModuleMap,
    compose_cols,
    dual,
    restrict,
    tensor,
    trivial_module,
)
from .stable import ExtCalculator, ext_internal_range, ext_map_matrix


class CosimplicialError(RuntimeError):
    pass


def _digits(idx: int, k: int, base: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(idx % base)
        idx //= base
    return out[::-1]


def _undigits(ds: Sequence[int], base: int) -> int:
    v = 0
    for d in ds:
        v = v * base + d
    return v


@dataclass
class AmitsurComplex:
    """Layers T^{⊗(n+1)} ⊗ X with cofaces and codegeneracies as module maps.

    ``cofaces[n][i]``: layer n-1 -> layer n (insert the unit at slot i, 0 <= i <= n).
    ``codegeneracies[n][i]``: layer n+1 -> layer n (multiply slots i, i+1, 0 <= i <= n).
    """

    t: AlgebraObject
    coefficient: AModule
    n_max: int
    layers: list[AModule]
    cofaces: dict[int, list[ModuleMap]]
    codegeneracies: dict[int, list[ModuleMap]]

    def identity_report(self) -> list[str]:
        """Check the cosimplicial identities on every computed layer."""
        rep = []
        d, s = self.cofaces, self.codegeneracies
        for n in range(2, self.n_max + 1):
            # d^j d^i = d^i d^{j-1} for i < j
            for j in range(n + 1):
                for i in range(j):
                    if compose_cols(d[n][j].cols, d[n - 1][i].cols) != \
                            compose_cols(d[n][i].cols, d[n - 1][j - 1].cols):
                        rep.append(f"d^{j} d^{i} != d^{i} d^{j - 1} into layer {n}")
        for n in range(0, self.n_max - 1):
            # s^j s^i = s^i s^{j+1} for i <= j (layer n+2 -> n)
            for j in range(n + 1):
                for i in range(j + 1):
                    if compose_cols(s[n][j].cols, s[n + 1][i].cols) != \
                            compose_cols(s[n][i].cols, s[n + 1][j + 1].cols):
                        rep.append(f"s^{j} s^{i} != s^{i} s^{j + 1} from layer {n + 2}")
        for n in range(1, self.n_max):
            # s^j d^i on layer n -> layer n+1 -> layer n
            size = self.layers[n].dim
            ident = [1 << k for k in range(size)]
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = compose_cols(s[n][j].cols, d[n + 1][i].cols)
                    if i == j or i == j + 1:
                        ok = lhs == ident
                    elif i < j:
                        ok = lhs == compose_cols(d[n][i].cols, s[n - 1][j - 1].cols)
                    else:
                        ok = lhs == compose_cols(d[n][i - 1].cols, s[n - 1][j].cols)
                    if not ok:
                        rep.append(f"s^{j} d^{i} identity fails at layer {n}")
        return rep


def amitsur(t: AlgebraObject, n_max: int, coefficient: Optional[AModule] = None) -> AmitsurComplex:
    h = t.algebra
    x = coefficient if coefficient is not None else trivial_module(h)
    k = t.dim
    layers = [tensor(tensor_power(t, n + 1), x, f"T^{n + 1}⊗{x.label}") for n in range(n_max + 1)]
    dx = x.dim
    unit = list(bits(t.unit))

    def coface(n: int, i: int) -> ModuleMap:
        src, tgt = layers[n - 1], layers[n]
        cols = []
        for idx in range(src.dim):
            tpart, xpart = divmod(idx, dx)
            ds = _digits(tpart, n, k)
            v = 0
            for u in unit:
                nd = ds[:i] + [u] + ds[i:]
                v ^= 1 << (_undigits(nd, k) * dx + xpart)
            cols.append(v)
        return ModuleMap(src, tgt, cols, 0)

    def codegeneracy(n: int, i: int) -> ModuleMap:
        src, tgt = layers[n + 1], layers[n]
        cols = []
        for idx in range(src.dim):
            tpart, xpart = divmod(idx, dx)
            ds = _digits(tpart, n + 2, k)
            prod = t.mult.cols[ds[i] * k + ds[i + 1]]
            v = 0
            for c in bits(prod):
                nd = ds[:i] + [c] + ds[i + 2:]
                v ^= 1 << (_undigits(nd, k) * dx + xpart)
            cols.append(v)
        return ModuleMap(src, tgt, cols, 0)

    cofaces = {n: [coface(n, i) for i in range(n + 1)] for n in range(1, n_max + 1)}
    codeg = {n: [codegeneracy(n, i) for i in range(n + 1)] for n in range(0, n_max)}
    cx = AmitsurComplex(t, x, n_max, layers, cofaces, codeg)
    return cx


@dataclass
class E1Data:
    """Level groups with normalized bases and d1 matrices, per (n, s, t)."""

    complex: AmitsurComplex
    source: AModule
    window: tuple[int, int]
    tau: Optional[tuple[int, int]]
    level_offset: int
    full_dims: dict[tuple[int, int, int], int]
    # normalized basis (class coordinates in the unnormalized group) per key
    normalized: dict[tuple[int, int, int], list[int]]
    # d1 on unnormalized coordinates: key -> columns into level n+1
    d1_full: dict[tuple[int, int, int], list[int]]
    label: str = ""

    def normalized_dims(self) -> dict[tuple[int, int, int], int]:
        top = self.complex.n_max - 1
        return {k: len(v) for k, v in self.normalized.items() if v and k[0] <= top}

    def page(self) -> SSPage:
        off = self.level_offset
        return SSPage(1, {(n + off, s, t): d for (n, s, t), d in self.normalized_dims().items()},
                      f"E1 {self.label}")

    def _restricted_d1(self, key):
        """Matrix of d1 on the normalized subspace at key, in normalized coordinates of n+1."""
        n, s, t = key
        src = self.normalized.get(key, [])
        tgt_key = (n + 1, s, t)
        cols = self.d1_full.get(key)
        if cols is None:
            return None
        tgt = self.normalized.get(tgt_key, [])
        red = Reducer(track=True)
        for v in tgt:
            red.add(v)
        out = []
        for v in src:
            img = 0
            for c in bits(v):
                img ^= cols[c]
            e = red.express(img)
            if e is None:
                raise CosimplicialError(f"d1 leaves the normalized complex at {key}")
            out.append(e)
        return out

    def d1_matrices(self) -> dict[tuple[int, int, int], list[int]]:
        out = {}
        for key in self.normalized:
            if key[0] >= self.complex.n_max:
                continue
            m = self._restricted_d1(key)
            if m is not None:
                out[key] = m
        return out

    def d1_squared_zero(self) -> bool:
        mats = self.d1_matrices()
        for (n, s, t), m in mats.items():
            nxt = mats.get((n + 1, s, t))
            if nxt is None:
                continue
            for v in m:
                img = 0
                for c in bits(v):
                    img ^= nxt[c]
                if img:
                    return False
        return True

    def e2(self, normalized: bool = True) -> SSPage:
        """Homology of d1 on levels 0..n_max."""
        n_max = self.complex.n_max - 1
        dims = {}
        if normalized:
            mats = self.d1_matrices()
            sizes = {k: len(v) for k, v in self.normalized.items()}
        else:
            mats = self.d1_full
            sizes = dict(self.full_dims)
        for (n, s, t), size in sizes.items():
            if n > n_max or not size:
                continue
            out = mats.get((n, s, t), [])
            tgt = sizes.get((n + 1, s, t), 0)
            r_out = rank_of(out, tgt) if out else 0
            if n == 0:
                r_in = 0
            else:
                inc = mats.get((n - 1, s, t), [])
                r_in = rank_of(inc, size) if inc else 0
            d = size - r_out - r_in
            if d:
                dims[(n + self.level_offset, s, t)] = d
        return SSPage(2, dims, f"E2 {self.label}")


def _t_window(calc: ExtCalculator, x: AModule, s: int, tau):
    ts = ext_internal_range(calc.res, x, s)
    if tau:
        ts = [t for t in ts if tau[0] <= t <= tau[1]]
    return ts


def e1_page(t: AlgebraObject, source: AModule, coefficient: AModule, n_max: int,
            window: tuple[int, int], tau: Optional[tuple[int, int]] = None,
            level_offset: int = 0, label: str = "") -> E1Data:
    """Levels Ext_A(source, T^{⊗(n+1)} ⊗ coefficient) for 0 <= n <= n_max."""
    cx = amitsur(t, n_max + 1, coefficient)
    rep = cx.identity_report()
    if rep:
        raise CosimplicialError("; ".join(rep[:5]))
    calcs = [ExtCalculator(source, layer, window) for layer in cx.layers]
    full_dims = {}
    normalized = {}
    d1_full = {}
    for n in range(n_max + 2):
        layer = cx.layers[n]
        for s in range(window[0], window[1] + 1):
            for tt in _t_window(calcs[n], layer, s, tau):
                g = calcs[n].group(s, tt)
                if not g.dim:
                    continue
                key = (n, s, tt)
                full_dims[key] = g.dim
                # normalization: kernels of s^i for 0 <= i <= n-1
                if n == 0:
                    normalized[key] = [1 << i for i in range(g.dim)]
                else:
                    stacked = [0] * g.dim
                    off = 0
                    for i in range(n):
                        cols = ext_map_matrix(calcs[n], calcs[n - 1], cx.codegeneracies[n - 1][i], s, tt)
                        gd = calcs[n - 1].group(s, tt).dim
                        for c in range(g.dim):
                            stacked[c] |= cols[c] << off
                        off += gd
                    ker = kernel_of_columns(stacked, off) if off else [1 << i for i in range(g.dim)]
                    normalized[key] = ker
                if n > n_max:
                    continue
                # d1 = sum of coface-induced maps into level n+1
                cols = [0] * g.dim
                for i in range(n + 2):
                    m = ext_map_matrix(calcs[n], calcs[n + 1], cx.cofaces[n + 1][i], s, tt)
                    for c in range(g.dim):
                        cols[c] ^= m[c]
                d1_full[key] = cols
    # make sure target keys for d1 exist in the normalized table (possibly empty)
    for (n, s, tt) in list(d1_full):
        if n + 1 <= n_max + 1:
            nk = (n + 1, s, tt)
            normalized.setdefault(nk, [])
            full_dims.setdefault(nk, 0)
    return E1Data(cx, source, window, tau, level_offset, full_dims, normalized, d1_full,
                  label or f"End({coefficient.label})")


def e1_end(t: AlgebraObject, m: AModule, n_max: int, window: tuple[int, int],
           tau: Optional[tuple[int, int]] = None, level_offset: int = 0) -> E1Data:
    """End page of m: levels N^n Ext_A(m, T^{⊗(n+1)} ⊗ m)."""
    return e1_page(t, m, m, n_max, window, tau, level_offset, f"End({m.label})")


def e2(data: E1Data) -> SSPage:
    return data.e2()


# -- cross-check over the subalgebra ---------------------------------------------


def e1_via_subalgebra(inc: SubHopfInclusion, t: AlgebraObject, coefficient: AModule,
                      n_max: int, window: tuple[int, int],
                      tau: Optional[tuple[int, int]] = None) -> dict[tuple[int, int, int], int]:
    """Unnormalized level dims via shearing: Ext_B(1, U(T^{⊗n} ⊗ X))."""
    b = inc.sub
    one = trivial_module(b)
    out = {}
    for n in range(n_max + 1):
        y = restrict(inc, tensor(tensor_power(t, n), coefficient))
        calc = ExtCalculator(one, y, window)
        for s in range(window[0], window[1] + 1):
            for tt in _t_window(calc, y, s, tau):
                d = calc.group(s, tt).dim
                if d:
                    out[(n, s, tt)] = d
    return out


def reduced_layer_dims(inc: SubHopfInclusion, t: AlgebraObject, x_sub: AModule, n_max: int,
                       window: tuple[int, int], tau=None) -> dict[tuple[int, int, int], int]:
    """Normalized level dims via the subalgebra: Ext_B(1, Tbar^{⊗n} ⊗ x_sub).

    ``Tbar`` is T modulo its unit, restricted to B; ``x_sub`` is a B-module.
    """
    from .modules import Quotient

    b = inc.sub
    tbar = Quotient(restrict(inc, t.module), [t.unit], "Tbar").module
    one = trivial_module(b)
    out = {}
    y = x_sub
    for n in range(n_max + 1):
        calc = ExtCalculator(one, y, window)
        for s in range(window[0], window[1] + 1):
            for tt in _t_window(calc, y, s, tau):
                d = calc.group(s, tt).dim
                if d:
                    out[(n, s, tt)] = d
        y = tensor(tbar, y)
    return out


# -- pages from a derivation on Ext over the subalgebra ------------------------------


@dataclass
class ThetaSolution:
    """The operator θ: Ext^{s,t}(1, X) -> Ext^{s,t-2}(1, X) over the subalgebra.

    θ is the action of the primitive dual to T's positive generator.  It is
    pinned down by θ(v0) = 0, θ(v1) = v0 and the Leibniz rule for the action
    of Ext(1, 1); ``freedom`` counts the solutions of the homogeneous system
    whose support meets the interior window (zero means θ is unique there).
    """

    calc: ExtCalculator
    window: tuple[int, int]
    matrices: dict[tuple[int, int], list[int]]
    freedom: int
    squares_to_zero: bool
    _space: tuple = field(default=(), repr=False)

    def variants(self, limit: int = 256) -> list["ThetaSolution"]:
        """Every solution of the linear system (up to ``limit``), θ² = 0 or not."""
        var, dims, sol, kern = self._space
        out = []
        for combo in range(min(1 << len(kern), limit)):
            x = sol
            for k in bits(combo):
                x ^= kern[k]
            out.append(_theta_from_vector(self.calc, self.window, var, dims, x, self.freedom, self._space))
        return out

    def apply(self, s: int, t: int, x: int) -> int:
        cols = self.matrices.get((s, t))
        if not cols:
            return 0
        out = 0
        for c in bits(x):
            out ^= cols[c]
        return out

    def rank(self, s: int, t: int) -> int:
        cols = self.matrices.get((s, t), [])
        tgt = self.calc.group(s, t - 2).dim if cols else 0
        return rank_of(cols, tgt) if cols and tgt else 0


def _group_dims(calc: ExtCalculator, window: tuple[int, int]) -> dict[tuple[int, int], int]:
    out = {}
    for s in range(window[0], window[1] + 1):
        for t in ext_internal_range(calc.res, calc.n, s):
            d = calc.group(s, t).dim
            if d:
                out[(s, t)] = d
    return out


def solve_theta(x: AModule, smax: int, v1_rule: bool = True) -> ThetaSolution:
    """Solve for θ on Ext^{s,*}(1, x), 0 <= s <= smax, x a module over E(1).

    Equations, for every basis class c in degree (s, t) with s < smax:
    θ(v0 c) + v0 θ(c) = 0 and θ(v1 c) + v1 θ(c) = v0 c.
    The interior s <= smax - 1 is where θ is constrained from both sides.
    With ``v1_rule=False`` only v0-linearity is imposed (the particular
    solution is then zero and ``variants`` lists the v0-linear operators).
    """
    from .stable import YonedaProducts

    h = x.algebra
    one = trivial_module(h)
    yo = YonedaProducts(h, smax)
    v0 = _named_class(yo, 1, 1)
    v1 = _named_class(yo, 1, 3)
    calc = ExtCalculator(one, x, (0, smax))
    dims = _group_dims(calc, (0, smax))
    # variables: entry (row j of target (s, t-2), column i of source (s, t))
    var = {}
    for (s, t), d in dims.items():
        e = dims.get((s, t - 2), 0)
        for i in range(d):
            for j in range(e):
                var[(s, t, i, j)] = len(var)
    rows = []  # (bitmask over variables, rhs bit)

    def theta_terms(s, t, vec):
        """Variables contributing to coordinate j of θ(vec), as {j: mask}."""
        out: dict[int, int] = {}
        for i in bits(vec):
            for j in range(dims.get((s, t - 2), 0)):
                out[j] = out.get(j, 0) ^ (1 << var[(s, t, i, j)])
        return out

    for (s, t), d in dims.items():
        if s >= smax:
            continue
        for i in range(d):
            c = 1 << i
            rules = ((v0, 1, False), (v1, 3, True)) if v1_rule else ((v0, 1, False),)
            for (y, ty, rhs_is_v0) in rules:
                # θ(y c) lives in (s+1, t+ty-2); y θ(c) as well
                tgt = (s + 1, t + ty - 2)
                ntgt = dims.get(tgt, 0)
                if not ntgt:
                    continue
                acc = [0] * ntgt
                yc = yo.act(calc, s, t, c, 1, ty, y)
                for j, mask in theta_terms(s + 1, t + ty, yc).items():
                    acc[j] ^= mask
                # y θ(c): θ(c) = Σ_j var(s,t,i,j) e_j, then multiply each e_j
                for j in range(dims.get((s, t - 2), 0)):
                    img = yo.act(calc, s, t - 2, 1 << j, 1, ty, y)
                    for k in bits(img):
                        acc[k] ^= 1 << var[(s, t, i, j)]
                rhs = yo.act(calc, s, t, c, 1, 1, v0) if rhs_is_v0 else 0
                for k in range(ntgt):
                    rows.append((acc[k], (rhs >> k) & 1))
    nvar = len(var)
    # solve rows · θ = rhs (rows as bitmasks over variables)
    cols = [0] * nvar
    rhs = 0
    for r, (mask, b) in enumerate(rows):
        for v in bits(mask):
            cols[v] |= 1 << r
        rhs |= b << r
    from .f2 import solve_columns

    sol = solve_columns(cols, len(rows), rhs) if nvar else 0
    if sol is None:
        raise CosimplicialError("no derivation θ extends θ(v1) = v0 on this module")
    kern = kernel_of_columns(cols, len(rows)) if nvar else []
    interior = 0
    for (s, t, i, j), v in var.items():
        if s < smax:
            interior |= 1 << v
    freedom = len(rref_vectors([k & interior for k in kern if k & interior], nvar)[0])
    # keep only kernel directions that move the interior
    kern = rref_vectors([k & interior for k in kern if k & interior], nvar)[0]
    return _theta_from_vector(calc, (0, smax), var, dims, sol & interior, freedom,
                              (var, dims, sol & interior, kern))


def _theta_from_vector(calc, window, var, dims, x, freedom, space) -> ThetaSolution:
    mats = {}
    for (s, t), d in dims.items():
        e = dims.get((s, t - 2), 0)
        if not e:
            continue
        mats[(s, t)] = [sum(((x >> var[(s, t, i, j)]) & 1) << j for j in range(e))
                        for i in range(d)]
    th = ThetaSolution(calc, window, mats, freedom, True, space)
    for (s, t), m in mats.items():
        if s >= window[1]:
            continue
        for v in m:
            if th.apply(s, t - 2, v):
                th.squares_to_zero = False
    return th


def _named_class(yo, s: int, t: int) -> int:
    g = yo.calc.group(s, t)
    if g.dim != 1:
        raise CosimplicialError(f"expected a single class in Ext^({s},{t})(1,1), found {g.dim}")
    return 1


def e2_from_theta(th: ThetaSolution, n_max: int, tbar_degree: int = -2,
                  label: str = "") -> SSPage:
    """E2 of the complex Ext(1, X) ⊗ Tbar^{⊗n} with d1 = θ at every level.

    Level n sits at (n, s, t + 2n) for a class of degree (s, t); the interior
    s <= smax - 1 is reported.
    """
    smax = th.window[1]
    dims = _group_dims(th.calc, (0, smax - 1))
    out = {}
    for (s, t), d in dims.items():
        k = d - th.rank(s, t)
        if k:
            out[(0, s, t)] = k
        for n in range(1, n_max + 1):
            e = k - th.rank(s, t + 2)
            if e:
                out[(n, s, t - tbar_degree * n)] = e
    return SSPage(2, out, f"E2 {label}".rstrip())


def e1_from_theta(th: ThetaSolution, n_max: int, tbar_degree: int = -2,
                  label: str = "") -> SSPage:
    """E1 of the same complex: every level is a copy of Ext(1, X), shifted."""
    smax = th.window[1]
    out = {}
    for (s, t), d in _group_dims(th.calc, (0, smax - 1)).items():
        for n in range(n_max + 1):
            out[(n, s, t - tbar_degree * n)] = d
    return SSPage(1, out, f"E1 {label}".rstrip())


def theta_variants(x: AModule, smax: int, derivation: bool = True) -> list[ThetaSolution]:
    """All admissible θ on Ext^{s>=0}(1, x): the linear solutions with θ² = 0."""
    try:
        base = solve_theta(x, smax, v1_rule=derivation)
    except CosimplicialError:
        return []
    return [v for v in base.variants() if v.squares_to_zero]


def periodic_extension(page: SSPage, step: tuple[int, int], sigma: tuple[int, int],
                       known: tuple[int, int], tau: Optional[tuple[int, int]] = None) -> SSPage:
    """Extend a page computed for s in ``known`` to ``sigma`` using a periodicity
    (s, t) -> (s + p, t + q) of every level.  Raises if ``known`` is not itself
    periodic on its overlap.
    """
    p, q = step
    lo, hi = known
    if hi - lo + 1 < 2 * p:
        raise ValueError("known range shorter than two periods")
    for (n, s, t), d in page.dims.items():
        if lo <= s + p <= hi and page.dim(n, s + p, t + q) != d:
            raise CosimplicialError(f"page not periodic under {step} at {(n, s, t)}")
    out = {}
    base = {k: v for k, v in page.dims.items() if lo <= k[1] < lo + p}
    for (n, s, t), d in base.items():
        for m in range((sigma[0] - s) // p - 1, (sigma[1] - s) // p + 2):
            ss, tt = s + m * p, t + m * q
            if sigma[0] <= ss <= sigma[1] and (tau is None or tau[0] <= tt <= tau[1]):
                out[(n, ss, tt)] = d
    return SSPage(page.r, out, page.title, {"sigma": sigma, "tau": tau})


# -- comparison with closed-form presentations -------------------------------------------


def to_reference_coords(key: tuple[int, int, int]) -> tuple[int, int, int]:
    """(n, s, t) of this package -> (s', t', n) with s' = -s, t' = t.

    The reference coordinates index homotopy degree by s' = -s.  This is the
    single translation used for every comparison and diagonal.
    """
    n, s, t = key
    return (-s, t, n)


def from_reference_coords(key: tuple[int, int, int]) -> tuple[int, int, int]:
    s, t, n = key
    return (n, -s, t)


@dataclass
class Presentation:
    """Dimensions of a free module over a polynomial ring, trigraded.

    ``polys`` and ``gens`` are (name, (s', t', n)) in reference coordinates.
    """

    polys: list[tuple[str, tuple[int, int, int]]]
    gens: list[tuple[str, tuple[int, int, int]]]
    label: str = ""

    def dims(self, window: dict, bound: int = 40) -> dict[tuple[int, int, int], int]:
        """Dims in package coordinates (n, s, t) over a window given as
        {'sigma': (lo, hi), 'tau': (lo, hi), 'n': (lo, hi)} in package coordinates."""
        out: dict = {}
        sig, tau, nw = window["sigma"], window["tau"], window["n"]

        def rec(i, deg):
            if i == len(self.polys):
                for _g, gd in self.gens:
                    s, t, n = (deg[0] + gd[0], deg[1] + gd[1], deg[2] + gd[2])
                    key = from_reference_coords((s, t, n))
                    if (sig[0] <= key[1] <= sig[1] and tau[0] <= key[2] <= tau[1]
                            and nw[0] <= key[0] <= nw[1]):
                        out[key] = out.get(key, 0) + 1
                return
            _p, pd = self.polys[i]
            for e in range(bound + 1):
                rec(i + 1, (deg[0] + e * pd[0], deg[1] + e * pd[1], deg[2] + e * pd[2]))

        rec(0, (0, 0, 0))
        return out


def unit_presentation_a1() -> list[Presentation]:
    """Expected E2 of End(1) over A(1), two summands."""
    return [
        Presentation([("v1^-2", (2, -6, 0)), ("eta", (0, -2, 1))], [("1", (0, 0, 0))],
                     "F[v1^-2, eta]"),
        Presentation([("v0^-1", (1, -1, 0)), ("v1^-2", (2, -6, 0))], [("s", (-1, -4, 0))],
                     "S^(-1,-4) F[v0^-1, v1^-2]"),
    ]


def m_presentation() -> list[Presentation]:
    """Expected E2 for the six-dimensional module: F[v0^-1, eta]{x_-7, x_0}."""
    return [Presentation([("v0^-1", (1, -1, 0)), ("eta", (0, 2, 1))],
                         [("x-7", (0, -7, 0)), ("x0", (0, 0, 0))], "F[v0^-1, eta]{x-7, x0}")]


def n_presentation() -> list[Presentation]:
    """Expected E2 for the four-dimensional module: F[v1^-1, eta]{x_-2..x_1}."""
    return [Presentation([("v1^-1", (1, -3, 0)), ("eta", (0, 2, 1))],
                         [(f"x{k}", (0, k, 0)) for k in (-2, -1, 0, 1)],
                         "F[v1^-1, eta]{x-2, x-1, x0, x1}")]


def presentation_dims(pres: Sequence[Presentation], window: dict) -> dict:
    out: dict = {}
    for p in pres:
        for k, v in p.dims(window).items():
            out[k] = out.get(k, 0) + v
    return out


@dataclass
class PageComparison:
    window: dict
    computed: dict
    expected: dict
    mismatches: list[tuple[tuple[int, int, int], int, int]]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        keys = set(self.computed) | set(self.expected)
        lines = [f"tridegrees compared: {len(keys)}; mismatched: {len(self.mismatches)}"]
        for (k, c, e) in self.mismatches[:12]:
            lines.append(f"  (n,s,t)={k} ref(s',t',n)={to_reference_coords(k)}: computed {c}, expected {e}")
        return "\n".join(lines)


def compare_page(page: SSPage, expected: dict, window: dict) -> PageComparison:
    sig, tau, nw = window["sigma"], window["tau"], window["n"]

    def inside(k):
        n, s, t = k
        return sig[0] <= s <= sig[1] and tau[0] <= t <= tau[1] and nw[0] <= n <= nw[1]

    comp = {k: v for k, v in page.dims.items() if inside(k)}
    exp = {k: v for k, v in expected.items() if inside(k) and v}
    bad = []
    for k in sorted(set(comp) | set(exp)):
        if comp.get(k, 0) != exp.get(k, 0):
            bad.append((k, comp.get(k, 0), exp.get(k, 0)))
    return PageComparison(window, comp, exp, bad)


# -- diagonals, pic page, reconciliation -------------------------------------------------


def diagonal_classes(page: SSPage, offset: int, s_range: tuple[int, int]) -> list[tuple]:
    """Classes at reference (s', 0, s' + offset) for s' in s_range, as package keys.

    offset 1 is the counting diagonal, offset 2 the obstruction diagonal.
    """
    out = []
    for sp in range(s_range[0], s_range[1] + 1):
        key = from_reference_coords((sp, 0, sp + offset))
        d = page.dim(*key)
        if d:
            out.append((key, d))
    return out


class InputError(ValueError):
    """Missing or malformed user-supplied configuration."""


def pic_page_from_end(end_page: SSPage, pic0_row: Optional[dict] = None) -> dict:
    """Reindex the t' = 0 column of an End page as a pic page.

    Returns {(s, n): description}: entries with s >= 2 copy End at reference
    (s - 1, 0, n) (as F2 dimensions), the s = 1 row is trivial, and the s = 0
    row is taken from ``pic0_row`` ({n: group string}).
    """
    if pic0_row is None:
        raise InputError("pic0_row is required: the s = 0 row (Picard groups of the layers) "
                         "cannot be computed here; e.g. {0: 'Z+Z'} for E(1)")
    out: dict = {}
    for key, d in end_page.dims.items():
        sp, tp, n = to_reference_coords(key)
        if tp != 0 or sp < 1:
            continue
        out[(sp + 1, n)] = f"F2^{d}" if d > 1 else "F2"
    for n, g in pic0_row.items():
        out[(0, n)] = g
    return dict(sorted(out.items()))


@dataclass
class Reconciliation:
    rows: list[tuple[int, int, int, int, str]]  # (total, t, e2, abutment, verdict)

    @property
    def contradictions(self) -> list:
        return [r for r in self.rows if r[4] == "contradiction"]

    def to_text(self) -> str:
        lines = ["total t E2 abutment verdict"]
        for r in self.rows:
            lines.append(" ".join(str(x) for x in r))
        return "\n".join(lines) + "\n"


def reconcile(e2_page: SSPage, abutment: BigradedChart, totals: Optional[tuple[int, int]] = None
              ) -> Reconciliation:
    """Compare E2 totals (sum over n at total degree s + n) with the abutment.

    Differentials d_r (r >= 2) change total degree by one and remove classes in
    pairs, so E2 < abutment is a contradiction and E2 > abutment requires
    differentials touching at least the deficit.
    """
    tot: dict = {}
    for (n, s, t), d in e2_page.dims.items():
        tot[(s + n, t)] = tot.get((s + n, t), 0) + d
    keys = set(tot) | set(abutment.dims)
    rows = []
    for (S, t) in sorted(keys):
        if totals and not (totals[0] <= S <= totals[1]):
            continue
        e, a = tot.get((S, t), 0), abutment.dim(S, t)
        if e == a:
            verdict = "consistent with E2 = Einf"
        elif e > a:
            verdict = f"differentials of total rank >= {e - a} needed"
        else:
            verdict = "contradiction"
        rows.append((S, t, e, a, verdict))
    return Reconciliation(rows)


# -- pairing on the subalgebra model --------------------------------------------------


def pairing_on_e1(unit_th: ThetaSolution, x_th: ThetaSolution,
                  a: tuple[int, int, int, int], x: tuple[int, int, int, int]):
    """Product of a = (n, s, t, coords) in the unit page with x in the X page.

    Both pages are modelled as Ext(1, -) ⊗ Tbar^{⊗n}; the product multiplies
    the Ext parts (Yoneda action of Ext(1, 1) on Ext(1, X)) and concatenates
    the Tbar factors.  Returns (n, s, t, coords) in the X page.
    """
    from .stable import YonedaProducts

    na, sa, ta, ca = a
    nx, sx, tx, cx = x
    h = x_th.calc.n.algebra
    yo = YonedaProducts(h, x_th.window[1])
    # undo the level shift t = t_ext + 2n
    ea, ex = ta - 2 * na, tx - 2 * nx
    v = yo.act(x_th.calc, sx, ex, cx, sa, ea, ca)
    return (na + nx, sa + sx, ea + ex + 2 * (na + nx), v)


def leibniz_defect(unit_th: ThetaSolution, x_th: ThetaSolution, smax: int) -> list[tuple]:
    """Degrees where θ(y·c) ≠ θ(y)·c + y·θ(c) for y in {v0, v1} and basis classes c.

    Empty exactly when θ is a derivation over Ext(1, 1) in the window.
    """
    from .stable import YonedaProducts

    h = x_th.calc.n.algebra
    yo = YonedaProducts(h, x_th.window[1])
    bad = []
    dims = _group_dims(x_th.calc, (0, smax - 1))
    for (s, t), d in sorted(dims.items()):
        for i in range(d):
            c = 1 << i
            for (ys, yt) in ((1, 1), (1, 3)):
                lhs = x_th.apply(s + ys, t + yt, yo.act(x_th.calc, s, t, c, ys, yt, 1))
                ty = unit_th.apply(ys, yt, 1)
                r1 = yo.act(x_th.calc, s, t, c, ys, yt - 2, ty) if ty else 0
                r2 = 0
                tc = x_th.apply(s, t, c)
                if tc:
                    r2 = yo.act(x_th.calc, s, t - 2, tc, ys, yt, 1)
                if lhs != r1 ^ r2:
                    bad.append((s, t, i, (ys, yt)))
    return bad


def detect_period(page: SSPage, known: tuple[int, int], max_p: int = 3) -> tuple[int, int]:
    """Smallest (p, q) with page(n, s + p, t + q) = page(n, s, t) on ``known``."""
    lo, hi = known
    for p in range(1, max_p + 1):
        if hi - lo + 1 < 2 * p:
            break
        a = sorted((n, t) for (n, s, t) in page.dims if s == lo)
        b = sorted((n, t) for (n, s, t) in page.dims if s == lo + p)
        if not a or len(a) != len(b):
            continue
        q = b[0][1] - a[0][1]
        ok = all(page.dim(n, s + p, t + q) == d
                 for (n, s, t), d in page.dims.items() if lo <= s and s + p <= hi)
        ok = ok and all(page.dim(n, s - p, t - q) == d
                        for (n, s, t), d in page.dims.items() if lo <= s - p and s <= hi)
        if ok:
            return (p, q)
    raise CosimplicialError("no periodicity detected; enlarge the window")


def variant_links(th: ThetaSolution) -> set[tuple[int, int]]:
    """Nonzero components of θ at s = 0 as (t_from, t_to) pairs."""
    return {(t, t - 2) for (s, t), m in th.matrices.items() if s == 0 and any(m)}


def end_page_theta(base: AModule, n_max: int, sigma: tuple[int, int],
                   tau: Optional[tuple[int, int]] = None, smax: int = 7,
                   links: Optional[set] = None, derivation: bool = True) -> list[tuple[ThetaSolution, SSPage]]:
    """E2 pages of End(base) from θ on Ext(1, base* ⊗ base), over a Tate window.

    With ``derivation`` every θ satisfying the Leibniz rule and θ² = 0 is
    returned; otherwise the v0-linear θ with θ² = 0, optionally filtered to
    those whose s = 0 components are exactly ``links``.  Negative s is reached
    by the periodicity detected on 0 <= s < smax, cross-checked against the
    Tate Ext dimensions.
    """
    x = tensor(dual(base), base)
    out = []
    for th in theta_variants(x, smax, derivation):
        if links is not None and variant_links(th) != set(links):
            continue
        pos = e2_from_theta(th, n_max, label=f"End({base.label})")
        known = (0, smax - 1)
        step = detect_period(pos, known)
        page = periodic_extension(pos, step, sigma, known, tau)
        _check_tate_period(x, step, sigma)
        out.append((th, page))
    return out


def _check_tate_period(x: AModule, step: tuple[int, int], sigma: tuple[int, int]) -> None:
    one = trivial_module(x.algebra)
    lo = min(sigma[0], 0)
    calc = ExtCalculator(one, x, (lo, max(sigma[1], 0) + step[0]))
    dims = calc.dims()
    p, q = step
    for (s, t), d in dims.items():
        if s + p <= calc.window[1] and dims.get((s + p, t + q), 0) != d:
            raise CosimplicialError(f"Tate Ext of {x.label} not periodic under {step} at {(s, t)}")
