"""Line-oriented text format for algebras and modules.

An algebra file has one ``[algebra]`` section.  It either gives integer
indexed tables::

    [algebra]
    name: E(1)
    basis: 0 1 0          # index, name, degree
    basis: 1 Q0 1
    generators: 1 2
    word: 3 Q0Q1          # generator word for a non-generator basis element
    mult: 1 2 3           # e1 * e2 has coefficient 1 on e3
    comult: 1 0 1         # Delta(e1) has coefficient 1 on e0 (x) e1
    antipode: 1 1
    relation: Q0^2
    quasi_elementary: E(1) | Q0 | Q1

or a presentation (``generator:``, ``relation:``, ``coproduct:`` lines)
that is closed up by :func:`hopf.from_presentation`.

A module file has a ``[module]`` section (``name``, ``algebra``, ``basis``
lines) and an ``[action]`` section of lines ``Q0: m2 -> m3 + m5``.  Basis
entries may be referred to by name or by integer index.  ``#`` starts a
comment everywhere.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .hopf import (
    HopfAlgebra, PresentationError, SubHopfInclusion, _word_name, builtin, builtin_A1,
    from_presentation, parse_polynomial, sum_words, validate_hopf,
)
from .modules import AModule, trivial_module, validate_module


class FormatError(ValueError):
    """Parse or validation failure tagged with a file location."""

    def __init__(self, path: str, line: Optional[int], msg: str):
        self.path, self.line, self.msg = path, line, msg
        loc = f"{path}:{line}" if line else path
        super().__init__(f"{loc}: {msg}")


@dataclass
class _Section:
    name: str
    line: int
    entries: list[tuple[int, str, str]] = field(default_factory=list)

    def get(self, key: str) -> list[tuple[int, str]]:
        return [(ln, v) for ln, k, v in self.entries if k == key]

    def one(self, key: str, path: str, default: Optional[str] = None) -> str:
        vals = self.get(key)
        if not vals:
            if default is not None:
                return default
            raise FormatError(path, self.line, f"[{self.name}] is missing '{key}'")
        if len(vals) > 1:
            raise FormatError(path, vals[1][0], f"duplicate '{key}'")
        return vals[0][1]


_SECTION = re.compile(r"^\[(\w+)\]$")


def parse_sections(text: str, path: str = "<string>") -> dict[str, _Section]:
    sections: dict[str, _Section] = {}
    cur: Optional[_Section] = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION.match(line)
        if m:
            name = m.group(1).lower()
            if name not in ("algebra", "module", "action"):
                raise FormatError(path, ln, f"unknown section [{name}]")
            if name in sections:
                raise FormatError(path, ln, f"section [{name}] repeated")
            cur = sections[name] = _Section(name, ln)
            continue
        if cur is None:
            raise FormatError(path, ln, "content before the first section header")
        if ":" not in line:
            raise FormatError(path, ln, "expected 'key: value'")
        key, val = line.split(":", 1)
        cur.entries.append((ln, key.strip().lower(), val.strip()))
    return sections


def _ints(path, ln, text, n=None) -> list[int]:
    try:
        vals = [int(x) for x in text.split()]
    except ValueError:
        raise FormatError(path, ln, f"expected integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise FormatError(path, ln, f"expected {n} integers, got {len(vals)}")
    return vals


# -- algebras -----------------------------------------------------------------


def _quasi_elementary(sec: _Section, path: str) -> list[tuple[str, list[str]]]:
    out = []
    for ln, v in sec.get("quasi_elementary"):
        parts = [p.strip() for p in v.split("|")]
        if len(parts) < 2 or not parts[0]:
            raise FormatError(path, ln, "expected 'label | elem | elem ...'")
        out.append((parts[0], parts[1:]))
    return out


def _algebra_from_presentation(sec: _Section, path: str) -> HopfAlgebra:
    gens = []
    for ln, v in sec.get("generator"):
        parts = v.split()
        if len(parts) != 2:
            raise FormatError(path, ln, "expected 'generator: name degree'")
        try:
            gens.append((parts[0], int(parts[1])))
        except ValueError:
            raise FormatError(path, ln, f"bad degree {parts[1]!r}") from None
    coproducts = {}
    for ln, v in sec.get("coproduct"):
        if "=" not in v:
            raise FormatError(path, ln, "expected 'coproduct: g = a|b + c|d'")
        g, rhs = (x.strip() for x in v.split("=", 1))
        terms = []
        for t in rhs.split("+"):
            if "|" not in t:
                raise FormatError(path, ln, f"term {t.strip()!r} lacks '|'")
            a, b = (x.strip() for x in t.split("|", 1))
            terms.append((a, b))
        coproducts[g] = terms
    rels = [v for _, v in sec.get("relation")]
    try:
        return from_presentation(
            gens, rels, name=sec.one("name", path, "A"),
            coproducts=coproducts or None,
            quasi_elementary=_quasi_elementary(sec, path),
        )
    except (PresentationError, ValueError, KeyError) as exc:
        raise FormatError(path, sec.line, f"presentation rejected: {exc}") from None


def _algebra_from_tables(sec: _Section, path: str) -> HopfAlgebra:
    basis = {}
    for ln, v in sec.get("basis"):
        parts = v.split()
        if len(parts) != 3:
            raise FormatError(path, ln, "expected 'basis: index name degree'")
        i, d = _ints(path, ln, parts[0], 1)[0], _ints(path, ln, parts[2], 1)[0]
        if i in basis:
            raise FormatError(path, ln, f"basis index {i} repeated")
        basis[i] = (parts[1], d)
    n = len(basis)
    if sorted(basis) != list(range(n)):
        raise FormatError(path, sec.line, "basis indices must be 0 .. dim-1")

    def check(ln, *idx):
        for i in idx:
            if not 0 <= i < n:
                raise FormatError(path, ln, f"index {i} out of range")

    names = [basis[i][0] for i in range(n)]
    degrees = [basis[i][1] for i in range(n)]
    gln, gtext = sec.get("generators")[0] if sec.get("generators") else (sec.line, "")
    generators = _ints(path, gln, gtext)
    check(gln, *generators)
    mult = [[0] * n for _ in range(n)]
    for ln, v in sec.get("mult"):
        i, j, k = _ints(path, ln, v, 3)
        check(ln, i, j, k)
        mult[i][j] ^= 1 << k
    comult: list[frozenset] = [frozenset() for _ in range(n)]
    for ln, v in sec.get("comult"):
        i, j, k = _ints(path, ln, v, 3)
        check(ln, i, j, k)
        comult[i] ^= frozenset([(j, k)])
    antipode = [0] * n
    for ln, v in sec.get("antipode"):
        i, j = _ints(path, ln, v, 2)
        check(ln, i, j)
        antipode[i] ^= 1 << j
    unit = _ints(path, sec.line, sec.one("unit", path, "0"), 1)[0]
    gen_names = [names[g] for g in generators]
    expressions: list[list[tuple]] = [[] for _ in range(n)]
    expressions[unit] = [()]
    for k, g in enumerate(generators):
        expressions[g] = [(k,)]
    for ln, v in sec.get("word"):
        parts = v.split(None, 1)
        if len(parts) != 2:
            raise FormatError(path, ln, "expected 'word: index polynomial'")
        i = _ints(path, ln, parts[0], 1)[0]
        check(ln, i)
        try:
            expressions[i] = parse_polynomial(parts[1], gen_names)
        except PresentationError as exc:
            raise FormatError(path, ln, str(exc)) from None
    for i, e in enumerate(expressions):
        if not e:
            raise FormatError(path, sec.line, f"basis element {names[i]} has no word")
    try:
        relations = [(v.replace(" ", ""), parse_polynomial(v, gen_names))
                     for _, v in sec.get("relation")]
    except PresentationError as exc:
        raise FormatError(path, sec.line, str(exc)) from None
    h = HopfAlgebra(
        name=sec.one("name", path), names=names, degrees=degrees, mult=mult,
        comult=comult, antipode=antipode, generators=generators,
        expressions=expressions, relations=relations, unit=unit,
    )
    for lab, elems in _quasi_elementary(sec, path):
        try:
            h.quasi_elementary.append((lab, [h.element(x) for x in elems]))
        except PresentationError as exc:
            raise FormatError(path, sec.line, str(exc)) from None
    for i, e in enumerate(expressions):
        if sum_words(h, e) != 1 << i:
            raise FormatError(path, sec.line, f"word for {names[i]} does not evaluate to it")
    return h


def parse_algebra(text: str, path: str = "<string>", validate: bool = True) -> HopfAlgebra:
    secs = parse_sections(text, path)
    if "algebra" not in secs:
        raise FormatError(path, None, "no [algebra] section")
    sec = secs["algebra"]
    if sec.get("generator"):
        h = _algebra_from_presentation(sec, path)
    else:
        h = _algebra_from_tables(sec, path)
    if validate:
        problems = validate_hopf(h)
        if problems:
            raise FormatError(path, sec.line, "not a Hopf algebra: " + "; ".join(problems))
    return h


def dump_algebra(h: HopfAlgebra) -> str:
    """Table form; parses back to an equal algebra."""
    gn = h.gen_names()
    out = ["[algebra]", f"name: {h.name}", f"unit: {h.unit}"]
    out += [f"basis: {i} {nm} {d}" for i, (nm, d) in enumerate(zip(h.names, h.degrees))]
    out.append("generators: " + " ".join(str(g) for g in h.generators))
    fixed = {h.unit, *h.generators}
    for i, e in enumerate(h.expressions):
        if i not in fixed:
            out.append(f"word: {i} " + "+".join(_word_name(w, gn) for w in e))
    for i in range(h.dim):
        for j in range(h.dim):
            out += [f"mult: {i} {j} {k}" for k in range(h.dim) if (h.mult[i][j] >> k) & 1]
    for i in range(h.dim):
        out += [f"comult: {i} {p} {q}" for p, q in sorted(h.comult[i])]
    for i in range(h.dim):
        out += [f"antipode: {i} {k}" for k in range(h.dim) if (h.antipode[i] >> k) & 1]
    out += [f"relation: {lab}" for lab, _ in h.relations]
    for lab, elems in h.quasi_elementary:
        out.append(f"quasi_elementary: {lab} | " + " | ".join(h.element_name(x) for x in elems))
    return "\n".join(out) + "\n"


# -- modules ------------------------------------------------------------------


_ARROW = re.compile(r"\s*(?:->|→)\s*")


def parse_module(text: str, path: str = "<string>", algebra: Optional[HopfAlgebra] = None,
                 validate: bool = True) -> AModule:
    secs = parse_sections(text, path)
    if "module" not in secs:
        raise FormatError(path, None, "no [module] section")
    sec = secs["module"]
    if algebra is None:
        ref = sec.one("algebra", path)
        base = os.path.dirname(path) if os.path.exists(path) else None
        try:
            algebra = resolve_algebra(ref, base)
        except (KeyError, OSError):
            raise FormatError(path, sec.get("algebra")[0][0],
                              f"unknown algebra {ref!r}") from None
    names, degrees = [], []
    for ln, v in sec.get("basis"):
        parts = v.split()
        if len(parts) != 2:
            raise FormatError(path, ln, "expected 'basis: name degree'")
        if parts[0] in names:
            raise FormatError(path, ln, f"basis name {parts[0]!r} repeated")
        names.append(parts[0])
        degrees.append(_ints(path, ln, parts[1], 1)[0])
    idx = {nm: i for i, nm in enumerate(names)}

    def lookup(ln, token):
        if token in idx:
            return idx[token]
        try:
            i = int(token)
        except ValueError:
            raise FormatError(path, ln, f"unknown basis element {token!r}") from None
        if not 0 <= i < len(names):
            raise FormatError(path, ln, f"basis index {i} out of range")
        return i

    gen_names = algebra.gen_names()
    actions = [[0] * len(names) for _ in gen_names]
    act = secs.get("action")
    for ln, g, v in act.entries if act else []:
        gi = next((k for k, nm in enumerate(gen_names) if nm.lower() == g), None)
        if gi is None:
            raise FormatError(path, ln, f"{g!r} is not a generator of {algebra.name}")
        parts = _ARROW.split(v)
        if len(parts) != 2:
            raise FormatError(path, ln, "expected 'gen: source -> target + ...'")
        src = lookup(ln, parts[0].strip())
        for t in parts[1].split("+"):
            t = t.strip()
            if t and t != "0":
                actions[gi][src] ^= 1 << lookup(ln, t)
    m = AModule(algebra, names, degrees, actions, sec.one("name", path, ""))
    if validate:
        problems = validate_module(m)
        if problems:
            raise FormatError(path, sec.line, "not a module: " + "; ".join(problems))
    return m


def dump_module(m: AModule, algebra_ref: Optional[str] = None) -> str:
    ref = algebra_ref or m.algebra.name.replace("(", "").replace(")", "")
    out = ["[module]", f"name: {m.label or 'M'}", f"algebra: {ref}"]
    out += [f"basis: {nm} {d}" for nm, d in zip(m.names, m.degrees)]
    out.append("[action]")
    for g, cols in zip(m.algebra.gen_names(), m.actions):
        for i, c in enumerate(cols):
            if c:
                tg = " + ".join(m.names[k] for k in range(m.dim) if (c >> k) & 1)
                out.append(f"{g}: {m.names[i]} -> {tg}")
    return "\n".join(out) + "\n"


# -- name resolution ------------------------------------------------------------


def _data_text(name: str) -> Optional[str]:
    try:
        f = resources.files("tatedescent") / "data" / f"{name}.txt"
        return f.read_text() if f.is_file() else None
    except (FileNotFoundError, ModuleNotFoundError):
        return None


def _read(ref: str, base: Optional[str]) -> Optional[tuple[str, str]]:
    for cand in ([os.path.join(base, ref)] if base else []) + [ref]:
        if os.path.isfile(cand):
            with open(cand, encoding="utf-8") as fh:
                return fh.read(), cand
    return None


def resolve_algebra(ref: str, base: Optional[str] = None) -> HopfAlgebra:
    """A built-in name (A1, E1) or a path to an algebra file."""
    found = _read(ref, base)
    if found:
        return parse_algebra(found[0], found[1])
    return builtin(ref)


def algebra_key(ref: str) -> str:
    return ref.replace("(", "").replace(")", "").upper()


def resolve_inclusion(h: HopfAlgebra) -> Optional[SubHopfInclusion]:
    """The E(1) inclusion for the built-in A(1); None for other algebras."""
    a, inc = builtin_A1()
    return inc if h is a else None


def resolve_module(ref: str, h: HopfAlgebra, base: Optional[str] = None,
                   strict: bool = True) -> AModule:
    """``unit``, a packaged example (Mpaper, Npaper, joker) or a module file.

    With ``strict=False`` a module over a different algebra is returned as is.
    """
    if ref.lower() in ("unit", "1", "f2"):
        return trivial_module(h, 0)
    found = _read(ref, base)
    if found:
        text, path = found
    else:
        text = _data_text(ref)
        path = f"<builtin {ref}>"
        if text is None:
            raise FormatError(ref, None, "no such module file or built-in module")
    m = parse_module(text, path)
    if not strict:
        return m
    if m.algebra is not h and m.algebra.name != h.name:
        raise FormatError(path, None, f"module is over {m.algebra.name}, expected {h.name}")
    if m.algebra is not h:
        m = AModule(h, m.names, m.degrees, m.actions, m.label)
    return m
