"""Command-line driver.

Exit codes: 0 success (including "undetermined" answers), 1 input error,
2 internal consistency failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from .algebra_objects import ConsistencyError, T_of
from .cache import ResolutionCache
from .charts import BigradedChart, SSPage, render_svg
from .descent import (
    CosimplicialError, detect_period, e1_end, e1_from_theta, end_page_theta,
    periodic_extension, reconcile, to_reference_coords, variant_links,
)
from .fileformat import (
    FormatError, dump_module, parse_algebra, parse_module, parse_sections,
    resolve_algebra, resolve_inclusion, resolve_module,
)
from .hopf import HopfAlgebra, validate_hopf
from .modules import AModule, restrict, tensor, trivial_module, validate_module
from .piclift import brute_force_lifts, lift_bound, lift_obstruction_report, pic_report
from .stable import ExtCalculator, complete_resolution, reduce

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InputProblem(Exception):
    pass


class InternalProblem(Exception):
    pass


@dataclass
class WorkspaceConfig:
    cache_dir: Optional[str] = None
    sigma: tuple[int, int] = (0, 10)
    tau: Optional[tuple[int, int]] = None
    n: tuple[int, int] = (0, 6)
    fmt: str = "text"
    labels: bool = False
    search_path: list[str] = field(default_factory=lambda: [os.getcwd()])

    def cache(self) -> Optional[ResolutionCache]:
        if not self.cache_dir:
            return None
        try:
            return ResolutionCache(self.cache_dir)
        except OSError as exc:
            raise InputProblem(f"cache directory {self.cache_dir!r} not writable: {exc}")


# -- argument helpers -----------------------------------------------------------------


def _range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError:
        raise InputProblem(f"bad range {text!r}; expected lo:hi") from None
    if lo > hi:
        raise InputProblem(f"empty range {text!r}")
    return lo, hi


def parse_window(text: str, default: WorkspaceConfig) -> tuple:
    """``s0:s1[,t0:t1[,n0:n1]]``; an empty or ``*`` part keeps the default."""
    parts = text.split(",")
    if len(parts) > 3:
        raise InputProblem(f"bad window {text!r}")
    vals = [default.sigma, default.tau, default.n]
    for i, p in enumerate(parts):
        p = p.strip()
        if p and p != "*":
            vals[i] = _range(p)
    return tuple(vals)


def _algebra(ref: str) -> HopfAlgebra:
    try:
        return resolve_algebra(ref)
    except KeyError:
        raise InputProblem(f"{ref}: unknown algebra (built-ins: A1, E1) and no such file") from None


def _module(ref: str, h: HopfAlgebra, strict: bool = True) -> AModule:
    return resolve_module(ref, h, strict=strict)


def _inclusion(h: HopfAlgebra):
    inc = resolve_inclusion(h)
    if inc is None:
        raise InputProblem(f"no descent data configured for {h.name}; use A1")
    return inc


# -- output ------------------------------------------------------------------------------


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        d = os.path.dirname(out)
        if d:
            os.makedirs(d, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def chart_document(chart: BigradedChart, fmt: str, labels: bool) -> str:
    if fmt == "svg":
        return chart.to_svg(labels)
    if fmt == "records":
        return f"# chart {chart.title}\n" + "".join(r + "\n" for r in chart.to_records())
    return chart.to_text()


def _page_labels(page: SSPage, n: int) -> dict:
    out = {}
    for (nn, s, t) in page.dims:
        if nn == n:
            sp, tp, _ = to_reference_coords((nn, s, t))
            out[(t - s, s)] = [f"({sp},{tp},{n})"]
    return out


def page_documents(page: SSPage, fmt: str, labels: bool) -> dict[str, str]:
    """One document for text/records; one SVG per filtration otherwise."""
    if fmt == "svg":
        docs = {}
        for n in page.filtrations():
            grid = page.sheet(n).stems()
            lab = _page_labels(page, n) if labels else None
            docs[f"E{page.r}_n{n}.svg"] = render_svg(grid, f"E{page.r} {page.title} n={n}", lab)
        return docs
    if fmt == "records":
        body = "".join(r + "\n" for r in page.to_records())
        return {f"E{page.r}.txt": f"# page {page.r} {page.title}\n" + body}
    return {f"E{page.r}.txt": page.to_text()}


def _emit_pages(pages: list[SSPage], args, extra: str = "") -> None:
    docs: dict[str, str] = {}
    for p in pages:
        docs.update(page_documents(p, args.format, args.labels))
    if args.format == "svg":
        if not args.out:
            raise InputProblem("--format svg for pages needs --out DIRECTORY")
        os.makedirs(args.out, exist_ok=True)
        for name, doc in sorted(docs.items()):
            _emit(doc, os.path.join(args.out, name))
        if extra:
            _emit(extra, os.path.join(args.out, "report.txt"))
        return
    _emit("".join(docs[k] for k in sorted(docs)) + extra, args.out)


# -- commands ---------------------------------------------------------------------------------


def cmd_validate(args, cfg: WorkspaceConfig) -> int:
    path = args.file
    if not os.path.isfile(path):
        raise InputProblem(f"{path}: no such file")
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    secs = parse_sections(text, path)
    if "algebra" in secs:
        h = parse_algebra(text, path, validate=False)
        problems = validate_hopf(h)
        kind = f"algebra {h.name} (dim {h.dim})"
    elif "module" in secs:
        m = parse_module(text, path, validate=False)
        problems = validate_module(m)
        kind = f"module {m.label} over {m.algebra.name} (dim {m.dim})"
    else:
        raise FormatError(path, None, "neither [algebra] nor [module] section present")
    if problems:
        for p in problems:
            sys.stderr.write(f"{path}: {p}\n")
        return EXIT_INPUT
    _emit(f"ok: {kind}\n", args.out)
    return EXIT_OK


def _resolution(m: AModule, window: tuple[int, int], cfg: WorkspaceConfig):
    cache = cfg.cache()
    if cache is not None:
        return cache.resolution(m, window)
    return complete_resolution(m, window)


def cmd_ext(args, cfg: WorkspaceConfig) -> int:
    h = _algebra(args.algebra)
    m, n = _module(args.m, h), _module(args.n, h)
    sigma, tau, _ = parse_window(args.window, cfg) if args.window else (cfg.sigma, cfg.tau, cfg.n)
    if args.smax is not None:
        sigma = (sigma[0], args.smax)
    if args.tmax is not None:
        tau = (tau[0] if tau else 0, args.tmax)
    _resolution(m, (sigma[0] - 1, sigma[1] + 1), cfg)
    calc = ExtCalculator(m, n, sigma)
    chart = calc.chart(tau, f"Ext_{h.name}({m.label or args.m}, {n.label or args.n})")
    if args.labels:
        chart.labels = {k: [f"{k[0]},{k[1]}"] for k in chart.dims}
    _emit(chart_document(chart, args.format, args.labels), args.out)
    return EXIT_OK


def cmd_resolve(args, cfg: WorkspaceConfig) -> int:
    h = _algebra(args.algebra)
    m = _module(args.m, h)
    sigma = parse_window(args.window, cfg)[0] if args.window else (-4, 4)
    res = _resolution(m, sigma, cfg)
    problems = res.check()
    lines = [f"# complete resolution of {m.label or args.m} over {h.name}, s in {sigma[0]}..{sigma[1]}"]
    for s, term in sorted(res.terms.items()):
        degs = " ".join(str(d) for d in term.gen_degrees)
        lines.append(f"P_{s}: rank {term.rank}; generators in degrees {degs}".rstrip())
    lines.append("check: " + ("ok" if not problems else "; ".join(problems)))
    _emit("\n".join(lines) + "\n", args.out)
    if problems:
        raise InternalProblem("resolution failed its own check")
    return EXIT_OK


def cmd_reduce(args, cfg: WorkspaceConfig) -> int:
    h = _algebra(args.algebra)
    m = _module(args.m, h)
    r, k = reduce(m)
    _emit(f"# stripped {k} free summand(s)\n" + dump_module(r), args.out)
    return EXIT_OK


def cmd_tensor(args, cfg: WorkspaceConfig) -> int:
    h = _algebra(args.algebra)
    m, n = _module(args.m, h), _module(args.n, h)
    t = tensor(m, n, f"{m.label}x{n.label}")
    _emit(dump_module(t), args.out)
    return EXIT_OK


def cmd_restrict(args, cfg: WorkspaceConfig) -> int:
    h = _algebra(args.algebra)
    inc = _inclusion(h)
    m = _module(args.m, h)
    r = restrict(inc, m)
    _emit(dump_module(r, inc.sub.name.replace("(", "").replace(")", "")), args.out)
    return EXIT_OK


def _theta_pages(base: AModule, n_max: int, sigma, tau, smax: int = 7):
    """(links, E1, E2) per admissible θ; E1 extended with the E2 period."""
    out = []
    for th, e2p in end_page_theta(base, n_max, sigma, tau, smax):
        pos = e1_from_theta(th, n_max, label=f"End({base.label})")
        known = (0, smax - 1)
        e1p = periodic_extension(pos, detect_period(pos, known), sigma, known, tau)
        e1p.r = 1
        out.append((sorted(variant_links(th)), e1p, e2p))
    return out


def cmd_descent(args, cfg: WorkspaceConfig) -> int:
    h = _algebra(args.algebra)
    inc = _inclusion(h)
    x = _module(args.coefficients, h, strict=False)
    sigma, tau, nw = parse_window(args.window, cfg) if args.window else ((-8, 2), (-24, 8), (0, 6))
    n_max = nw[1]
    report = ""
    if x.algebra is h:
        data = e1_end(T_of(inc), x, n_max, sigma, tau)
        if not data.d1_squared_zero():
            raise InternalProblem("d1 ∘ d1 != 0 on the normalized complex")
        pages = [data.page()]
        if args.r >= 2:
            e2p = data.e2()
            pages.append(e2p)
            if data.e2(normalized=False).dims != e2p.dims:
                raise InternalProblem("normalized and unnormalized E2 differ")
        if args.abutment:
            abut = ExtCalculator(x, x, (sigma[0], sigma[1] + n_max)).chart(tau)
            rec = reconcile(data.e2(), abut, (sigma[0] + n_max, sigma[1]))
            report = "# reconciliation with Ext over " + h.name + "\n" + rec.to_text()
            if rec.contradictions:
                _emit_pages(pages, args, report)
                raise InternalProblem("E2 smaller than the abutment")
    elif x.algebra is inc.sub:
        variants = _theta_pages(x, n_max, sigma, tau)
        if not variants:
            _emit(f"status: undetermined\nno operator θ on Ext_{inc.sub.name}(1, End({x.label})) "
                  "satisfies the Leibniz rule; the descent datum does not exist, "
                  f"so {x.label} has no lift to {h.name}\n", args.out)
            return EXIT_OK
        pages = []
        lines = []
        for i, (links, e1p, e2p) in enumerate(variants):
            e1p.title = f"{e1p.title} variant {i}"
            e2p.title = f"{e2p.title} variant {i}"
            lines.append(f"variant {i}: θ at s=0 links {links}")
            pages.extend([e1p] + ([e2p] if args.r >= 2 else []))
        report = "# pages computed from θ on Ext over " + inc.sub.name + "\n" + "\n".join(lines) + "\n"
        if args.abutment:
            report += "abutment: not available without a lift\n"
        if len(variants) > 1 or args.format == "svg":
            return _emit_variant_pages(pages, args, report)
    else:
        raise InputProblem(f"{args.coefficients}: module is over {x.algebra.name}, "
                           f"expected {h.name} or {inc.sub.name}")
    _emit_pages(pages, args, report)
    return EXIT_OK


def _emit_variant_pages(pages, args, report) -> int:
    if args.format == "svg":
        if not args.out:
            raise InputProblem("--format svg for pages needs --out DIRECTORY")
        for i in range(0, len(pages)):
            for name, doc in page_documents(pages[i], "svg", args.labels).items():
                tag = pages[i].title.rsplit(" ", 1)[-1]
                _emit(doc, os.path.join(args.out, f"v{tag}_{name}"))
        _emit(report, os.path.join(args.out, "report.txt"))
        return EXIT_OK
    text = "".join(p.to_text() if args.format == "text" else
                   "".join(page_documents(p, "records", False).values()) for p in pages)
    _emit(text + report, args.out)
    return EXIT_OK


def cmd_pic(args, cfg: WorkspaceConfig) -> int:
    h = _algebra(args.algebra)
    inc = resolve_inclusion(h)
    rep = pic_report(inc, h)
    head = f"{rep.group}; generators {', '.join(rep.generators)}\n"
    _emit(head + rep.to_text(), args.out)
    if any(not ok for k, ok in rep.certificates.items() if k in ("shift", "syzygy")):
        raise InternalProblem("shift or syzygy failed to be invertible")
    return EXIT_OK


def cmd_lift(args, cfg: WorkspaceConfig) -> int:
    h = _algebra(args.algebra)
    inc = _inclusion(h)
    base = _module(args.base, inc.sub, strict=False)
    if base.algebra is not inc.sub:
        raise InputProblem(f"{args.base}: lift base must be a module over {inc.sub.name}")
    is_unit = base.dim == 1
    known_lift = trivial_module(h, base.degrees[0]) if is_unit else None
    if args.mode == "obstruction":
        rep = lift_obstruction_report(inc, base, lift=known_lift)
        status = "nonempty" if not rep.empty else "empty"
        _emit(f"obstruction: {status}\n" + rep.to_text(), args.out)
    elif args.mode == "bound":
        lb = lift_bound(inc, base, lift=known_lift)
        lines = [f"bound: {lb.bound}", f"k: {lb.k}", f"method: {lb.method}", f"caveat: {lb.caveat}"]
        lines += [f"diagonal class {key} -> {to_reference_coords(key)} dim {d}" for key, d in lb.classes]
        for links, cls in lb.per_variant:
            lines.append(f"variant {links}: {sum(d for _, d in cls)} class(es)")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        census = brute_force_lifts(inc, base, stable=not args.exact)
        exact = census if args.exact else brute_force_lifts(inc, base)
        kind = "exact" if args.exact else "stable"
        lines = [f"census: {census.count}", f"mode: {kind}", f"exact lifts: {exact.count}",
                 f"candidates examined: {census.candidates}", f"solutions: {census.solutions}",
                 f"exhaustive: {'yes' if census.exhaustive else 'no'}"]
        lines += census.notes
        for i, mod in enumerate(census.lifts):
            dims = " ".join(f"{d}:{k}" for d, k in sorted(mod.graded_dims().items()))
            lines.append(f"lift {i}: dim {mod.dim}; degrees {dims}")
        _emit("\n".join(lines) + "\n", args.out)
        if args.save:
            os.makedirs(args.save, exist_ok=True)
            for i, mod in enumerate(census.lifts):
                mod.label = f"{base.label}_lift{i}"
                _emit(dump_module(mod, args.algebra), os.path.join(args.save, f"lift{i}.txt"))
    return EXIT_OK


def _read_records(path: str):
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("# "):
        raise FormatError(path, 1, "expected a '# chart' or '# page' header")
    head = lines[0][2:].split(" ", 2)
    body = []
    for ln, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        parts = line.split()
        try:
            body.append([int(p) for p in parts[:4 if head[0] == "page" else 3]])
        except ValueError:
            raise FormatError(path, ln, f"bad record {line!r}") from None
    if head[0] == "chart":
        title = " ".join(head[1:])
        return BigradedChart({(s, t): d for s, t, d in body}, title=title)
    if head[0] == "page":
        if len(head) < 2:
            raise FormatError(path, 1, "page header needs r")
        return SSPage(int(head[1]), {(n, s, t): d for n, s, t, d in body},
                      head[2] if len(head) > 2 else "")
    raise FormatError(path, 1, f"unknown record kind {head[0]!r}")


def cmd_chart(args, cfg: WorkspaceConfig) -> int:
    if not os.path.isfile(args.records):
        raise InputProblem(f"{args.records}: no such file")
    obj = _read_records(args.records)
    if isinstance(obj, BigradedChart):
        _emit(chart_document(obj, args.format, args.labels), args.out)
    else:
        _emit_pages([obj], args)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", help="s0:s1[,t0:t1[,n0:n1]]")
    common.add_argument("--out", help="output file (directory for multi-sheet SVG)")
    common.add_argument("--format", choices=("text", "svg", "records"), default="text")
    common.add_argument("--cache-dir", help="directory for cached resolutions")
    common.add_argument("--labels", action="store_true", help="label classes in charts")

    p = argparse.ArgumentParser(prog="tatedescent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("validate", parents=[common], help="check an algebra or module file")
    q.add_argument("file")
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("ext", parents=[common], help="Tate Ext chart")
    q.add_argument("algebra")
    q.add_argument("m")
    q.add_argument("n")
    q.add_argument("--smax", type=int)
    q.add_argument("--tmax", type=int)
    q.set_defaults(func=cmd_ext)

    q = sub.add_parser("resolve", parents=[common], help="complete resolution ranks")
    q.add_argument("algebra")
    q.add_argument("m")
    q.set_defaults(func=cmd_resolve)

    for name, func, nargs in (("reduce", cmd_reduce, 1), ("tensor", cmd_tensor, 2),
                              ("restrict", cmd_restrict, 1)):
        q = sub.add_parser(name, parents=[common])
        q.add_argument("algebra")
        q.add_argument("m")
        if nargs == 2:
            q.add_argument("n")
        q.set_defaults(func=func)

    q = sub.add_parser("descent", parents=[common], help="descent spectral sequence pages")
    q.add_argument("algebra")
    q.add_argument("coefficients")
    q.add_argument("--r", type=int, choices=(1, 2), default=2)
    q.add_argument("--abutment", action="store_true", help="reconcile E2 with the abutment")
    q.set_defaults(func=cmd_descent)

    q = sub.add_parser("pic", parents=[common], help="Picard group report")
    q.add_argument("algebra")
    q.set_defaults(func=cmd_pic)

    q = sub.add_parser("lift", parents=[common], help="lifting problem along the descent inclusion")
    q.add_argument("algebra")
    q.add_argument("base")
    q.add_argument("mode", choices=("obstruction", "bound", "census"))
    q.add_argument("--exact", action="store_true", help="census of on-the-nose lifts only")
    q.add_argument("--save", help="directory for one module file per lift")
    q.set_defaults(func=cmd_lift)

    q = sub.add_parser("chart", parents=[common], help="render a records file")
    q.add_argument("records")
    q.set_defaults(func=cmd_chart)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    cfg = WorkspaceConfig(cache_dir=getattr(args, "cache_dir", None), fmt=args.format,
                          labels=args.labels)
    try:
        return args.func(args, cfg)
    except (InputProblem, FormatError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (InternalProblem, ConsistencyError, CosimplicialError, AssertionError) as exc:
        sys.stderr.write(f"internal consistency failure: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
