"""Command-line interface.

    qcmodel [-f FILE ...] COMMAND ARGS... [--window LO..HI] [--budget N]
            [--universe NAME,...] [--report PATH] [--poset NAME] [--triple SPEC]
            [--pair SPEC] [--cover a,b] [--twists n,...] [--kind K] [--degree N]

Object names resolve against the loaded workspace first, then against the
built-ins ``O(n)`` (twists on the projective line), ``S<i>``, ``P<i>``,
``I<i>`` (simple, projective and injective representations of the poset
given by ``--poset``; ``A<n>`` is the chain with n elements) and
``S<n>(X)``, ``D<n>(X)`` (sphere and disc complexes in the ``--window`` grid).

Exit status: 0 on success, 1 on a mathematical negative, 2 on an error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from qcmodel import cech
from qcmodel import complexes as cx
from qcmodel import diagram as dg
from qcmodel import homotopy_algebra as ha
from qcmodel import model_structures as ms
from qcmodel import reps
from qcmodel.errors import ParseError, QCError
from qcmodel.workspace import ComplexDef, TripleSpec, Workspace, parse_file, to_rep, to_repmap

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

COMMANDS = (
    "validate", "qcheck", "hom", "ext", "lift", "factorize", "approx", "pair-check",
    "triple-verify", "classify", "homotopic", "ho-hom", "cech", "cohomology", "tensor",
    "pushout-product", "bundle-check",
)

VALUE_FLAGS = ("--window", "--budget", "--universe", "--report", "--poset", "--triple", "--pair", "--cover", "--twists", "--kind", "--degree", "--file", "-f")


class CommandError(QCError):
    """Bad arguments for a command."""


# -- reports ------------------------------------------------------------------------------------------


@dataclass
class Report:
    command: str
    status: str = "ok"
    result: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    timing: float | None = None

    def render(self) -> str:
        lines = [f"command: {self.command}", f"status: {self.status}", "result:"]
        lines.extend(_render_value(self.result, 1))
        if self.warnings:
            lines.append("warnings:")
            lines.extend(f"  - {w}" for w in self.warnings)
        else:
            lines.append("warnings: none")
        if self.timing is not None:
            lines.append(f"timing: {self.timing:.3f}s")
        return "\n".join(lines) + "\n"


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "none"
    return str(v)


def _render_value(v, depth: int) -> list[str]:
    pad = "  " * depth
    out = []
    if isinstance(v, dict):
        if not v:
            out.append(f"{pad}(empty)")
        for k, x in v.items():
            if isinstance(x, (dict, list)) and x:
                out.append(f"{pad}{k}:")
                out.extend(_render_value(x, depth + 1))
            elif isinstance(x, (dict, list)):
                out.append(f"{pad}{k}: (empty)")
            else:
                out.append(f"{pad}{k}: {_scalar(x)}")
    elif isinstance(v, list):
        for x in v:
            if isinstance(x, dict):
                out.append(f"{pad}-")
                out.extend(_render_value(x, depth + 1))
            else:
                out.append(f"{pad}- {_scalar(x)}")
    else:
        out.append(f"{pad}{_scalar(v)}")
    return out


# -- context and name resolution -------------------------------------------------------------------------


@dataclass
class Context:
    ws: Workspace
    opts: argparse.Namespace

    def window(self, default=None) -> tuple[int, int] | None:
        w = self.opts.window
        if w is None:
            return default
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", w)
        if not m:
            raise CommandError(f"bad window {w!r}; expected LO..HI")
        lo, hi = int(m.group(1)), int(m.group(2))
        if hi < lo:
            raise CommandError("empty window")
        return lo, hi

    def budget(self) -> int | None:
        return self.opts.budget

    def poset(self) -> dg.FinitePoset:
        name = self.opts.poset
        if name is None:
            raise CommandError("this command needs --poset")
        return resolve_poset(name, self.ws)

    def grid(self) -> reps.ComplexQuiver:
        w = self.window()
        if w is None:
            raise CommandError("complexes need a --window")
        return cx.grid(self.poset(), *w)


def resolve_poset(name: str, ws: Workspace) -> dg.FinitePoset:
    if name in ws:
        return ws.value(name, "poset")
    m = re.fullmatch(r"A(\d+)", name)
    if m and int(m.group(1)) > 0:
        return dg.FinitePoset.chain(int(m.group(1)))
    raise CommandError(f"unknown poset {name!r}")


BUILTIN_REP = re.compile(r"([SPI])(\w+)")
BUILTIN_CPX = re.compile(r"([SD])(-?\d+)\((.+)\)")
TWIST = re.compile(r"O\((-?\d+)\)")


def resolve(name: str, ctx: Context):
    """A module, representation, complex or morphism by name."""
    ws = ctx.ws
    if name in ws:
        d = ws.get(name)
        if d.kind == "complex":
            return d.value.rep
        return d.value
    m = TWIST.fullmatch(name)
    if m:
        rep = ws.value("P1", "ringrep") if "P1" in ws else dg.p1_ringrep()
        return dg.p1_twist(int(m.group(1)), rep)
    m = BUILTIN_CPX.fullmatch(name)
    if m:
        kind, n, inner = m.group(1), int(m.group(2)), m.group(3)
        X = as_rep(resolve(inner, ctx))
        G = ctx.grid()
        return cx.sphere(X, n, G) if kind == "S" else cx.disc(X, n, G)
    m = BUILTIN_REP.fullmatch(name)
    if m and ctx.opts.poset is not None:
        kind, v = m.groups()
        P = ctx.poset()
        if v not in P.labels:
            raise CommandError(f"{v!r} is not an element of {ctx.opts.poset}")
        Q = cx.poset_quiver(P)
        X = {"S": reps.simple, "P": reps.projective, "I": reps.injective}[kind](Q, v)
        return X.renamed(name)
    raise CommandError(f"unknown object {name!r}")


def as_rep(obj) -> reps.Rep:
    if isinstance(obj, reps.Rep):
        return obj
    if isinstance(obj, dg.DiagModule):
        return to_rep(obj)
    raise CommandError(f"expected a representation, got {type(obj).__name__}")


def as_repmap(obj) -> reps.RepMap:
    if isinstance(obj, reps.RepMap):
        return obj
    if isinstance(obj, dg.DiagMorphism):
        return to_repmap(obj)
    raise CommandError(f"expected a morphism of representations, got {type(obj).__name__}")


def as_module(obj) -> dg.DiagModule:
    if isinstance(obj, dg.DiagModule):
        return obj
    raise CommandError(f"expected a module over a ring representation, got {type(obj).__name__}")


def resolve_triple(ctx: Context) -> ms.HoveyTriple:
    spec = ctx.opts.triple
    if spec is None:
        raise CommandError("this command needs --triple")
    if spec in ctx.ws:
        ts = ctx.ws.value(spec, "triple")
    else:
        ts = TripleSpec(spec, ())
    return build_triple(ts, ctx)


def build_triple(ts: TripleSpec, ctx: Context) -> ms.HoveyTriple:
    args = list(ts.args)
    if ts.kind == "even-dimension":
        t = ms.even_dimension_triple()
    elif ts.kind in ("projective", "injective"):
        P = resolve_poset(args[0], ctx.ws) if args else ctx.poset()
        Q = cx.poset_quiver(P)
        t = ms.projective_triple(Q) if ts.kind == "projective" else ms.injective_triple(Q)
    elif ts.kind == "injective-model":
        P = resolve_poset(args[0], ctx.ws) if args else ctx.poset()
        if len(args) > 1:
            lo, hi = (int(x) for x in re.fullmatch(r"(-?\d+)\.\.(-?\d+)", args[1]).groups())
        else:
            w = ctx.window()
            if w is None:
                raise CommandError("injective-model needs a window")
            lo, hi = w
        t = ms.injective_complex_model(cx.grid(P, lo, hi))
    else:
        raise CommandError(f"unknown triple {ts.kind!r}")
    t.budget = ctx.budget()
    return t


def resolve_pair(ctx: Context) -> ha.CotorsionPair:
    spec = ctx.opts.pair
    if spec is None:
        raise CommandError("this command needs --pair")
    if spec in ("projective", "injective"):
        Q = cx.poset_quiver(ctx.poset())
        return ha.projective_pair(Q) if spec == "projective" else ha.injective_pair(Q)
    m = re.fullmatch(r"(cof|tcof):(.+)", spec)
    if m:
        ctx.opts.triple = m.group(2)
        t = resolve_triple(ctx)
        pair = t.cof_pair if m.group(1) == "cof" else t.tcof_pair
        if pair is None:
            raise CommandError(f"triple {m.group(2)} has no {m.group(1)} pair")
        return pair
    raise CommandError(f"unknown pair {spec!r}; use projective, injective, cof:TRIPLE or tcof:TRIPLE")


def universe(ctx: Context) -> list[reps.Rep]:
    if not ctx.opts.universe:
        raise CommandError("this command needs --universe")
    return [as_rep(resolve(n.strip(), ctx)) for n in ctx.opts.universe.split(",") if n.strip()]


def dims_of(X: reps.Rep) -> str:
    return ",".join(str(X.dims[v]) for v in X.quiver.vertices)


def _need(args: list[str], n: int, usage: str) -> None:
    if len(args) != n:
        raise CommandError(f"usage: {usage}")


# -- commands ---------------------------------------------------------------------------------------------


def cmd_validate(args, ctx, rep: Report) -> int:
    names = args or [d.name for d in ctx.ws]
    out = {}
    for n in names:
        obj = resolve(n, ctx)
        if isinstance(obj, dg.DiagModule):
            ok = dg.validate(obj).ok
        elif isinstance(obj, dg.DiagMorphism):
            ok = obj.validate().ok
        elif isinstance(obj, reps.Rep):
            ok = not obj.relation_defects()
        else:
            ok = True
        kind = ctx.ws.get(n).kind if n in ctx.ws else "builtin"
        out[n] = {"kind": kind, "valid": ok}
    rep.result["definitions"] = out
    return EXIT_OK if all(v["valid"] for v in out.values()) else EXIT_NEGATIVE


def cmd_qcheck(args, ctx, rep) -> int:
    _need(args, 1, "qcheck MODULE")
    M = as_module(resolve(args[0], ctx))
    q = dg.is_quasicoherent(M)
    rep.result["quasicoherent"] = q.quasicoherent
    if not q:
        rep.result["failing_edge"] = " -> ".join(q.failing_edge)
        rep.result["reason"] = q.reason
    return EXIT_OK if q else EXIT_NEGATIVE


def cmd_hom(args, ctx, rep) -> int:
    _need(args, 2, "hom X Y")
    X, Y = resolve(args[0], ctx), resolve(args[1], ctx)
    if isinstance(X, dg.DiagModule) and isinstance(Y, dg.DiagModule) and not all(X.ring(v).is_field for v in X.poset.labels):
        w = ctx.window()
        rep.result["window"] = f"{w[0]}..{w[1]}" if w else None
        rep.result["dim"] = len(dg.hom_space(X, Y, w))
    else:
        rep.result["dim"] = reps.hom_dim(as_rep(X), as_rep(Y))
    return EXIT_OK


def cmd_ext(args, ctx, rep) -> int:
    _need(args, 2, "ext X Y")
    X, Y = as_rep(resolve(args[0], ctx)), as_rep(resolve(args[1], ctx))
    n = ctx.opts.degree or 1
    rep.result[f"ext{n}"] = ha.ext1_dim(X, Y) if n == 1 else ha.extn(X, Y, n)
    return EXIT_OK


def cmd_lift(args, ctx, rep) -> int:
    _need(args, 2, "lift I G")
    i, g = as_repmap(resolve(args[0], ctx)), as_repmap(resolve(args[1], ctx))
    sp = ha.square_space(i, g)
    ok = ha.has_rlp(i, g)
    rep.result["squares"] = len(sp.squares)
    rep.result["fillable_rank"] = sp.fillable_rank
    rep.result["obstructions"] = len(sp.obstructions)
    rep.result["lifting_property"] = ok
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_factorize(args, ctx, rep) -> int:
    _need(args, 1, "factorize H --triple T [--kind cof-tfib|tcof-fib]")
    h = as_repmap(resolve(args[0], ctx))
    t = resolve_triple(ctx)
    kind = ctx.opts.kind or "cof-tfib"
    fac = ms.factorize(h, t, kind)
    ok = reps.compose(fac.g, fac.f) == h
    rep.result["kind"] = kind
    rep.result["middle"] = dims_of(fac.middle)
    rep.result["f_cokernel"] = dims_of(reps.cokernel(fac.f)[0])
    rep.result["g_kernel"] = dims_of(reps.kernel(fac.g)[0])
    rep.result["composite_ok"] = ok
    return EXIT_OK if ok else EXIT_NEGATIVE


def _conf(c: ha.Conflation) -> dict:
    return {"left": dims_of(c.left), "middle": dims_of(c.middle), "right": dims_of(c.right), "valid": c.is_valid()}


def cmd_approx(args, ctx, rep) -> int:
    _need(args, 1, "approx X --pair P")
    X = as_rep(resolve(args[0], ctx))
    pair = resolve_pair(ctx)
    first = pair.preenvelope(X, ctx.budget())
    second = pair.precover(X, ctx.budget())
    rep.result["preenvelope"] = _conf(first)
    rep.result["precover"] = _conf(second)
    ok = first.is_valid() and second.is_valid() and pair.in_right(first.middle) and pair.in_left(second.middle)
    rep.result["in_classes"] = ok
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_pair_check(args, ctx, rep) -> int:
    pair = resolve_pair(ctx)
    U = universe(ctx)
    pr = ha.is_cotorsion_pair(pair.in_left, pair.in_right, U)
    rep.result["universe_size"] = len(U)
    rep.result["orthogonal"] = pr.orthogonal
    rep.result["left_maximal"] = pr.left_maximal
    rep.result["right_maximal"] = pr.right_maximal
    rep.result["cotorsion_pair"] = pr.ok
    rep.warnings.append(pr.note)
    return EXIT_OK if pr.ok else EXIT_NEGATIVE


def cmd_triple_verify(args, ctx, rep) -> int:
    if args:
        ctx.opts.triple = args[0]
    t = resolve_triple(ctx)
    U = universe(ctx)
    tr = ms.verify_triple(t, U)
    rep.result["universe_size"] = tr.universe_size
    rep.result["axioms"] = {c.axiom: c.passed for c in tr.checks}
    fails = tr.failures()
    if fails:
        rep.result["first_failure"] = {"axiom": fails[0].axiom, "detail": fails[0].detail or "none"}
    rep.warnings.append(tr.note)
    return EXIT_OK if tr.ok else EXIT_NEGATIVE


def cmd_classify(args, ctx, rep) -> int:
    _need(args, 1, "classify H --triple T")
    h = as_repmap(resolve(args[0], ctx))
    c = ms.classify(h, resolve_triple(ctx))
    rep.result.update(c.flags())
    return EXIT_OK


def cmd_homotopic(args, ctx, rep) -> int:
    _need(args, 2, "homotopic F G --triple T")
    f, g = as_repmap(resolve(args[0], ctx)), as_repmap(resolve(args[1], ctx))
    r = ms.homotopic(f, g, resolve_triple(ctx))
    rep.result["relation"] = r.relation
    return EXIT_OK if r.relation != "neither" else EXIT_NEGATIVE


def cmd_ho_hom(args, ctx, rep) -> int:
    _need(args, 2, "ho-hom X Y --triple T")
    X, Y = as_rep(resolve(args[0], ctx)), as_rep(resolve(args[1], ctx))
    h = ms.homotopy_hom(X, Y, resolve_triple(ctx))
    rep.result["dim"] = h.dim
    rep.result["hom_dim"] = h.hom_dim
    rep.result["null_rank"] = h.null_rank
    return EXIT_OK


def _cover(ctx: Context, M: dg.DiagModule) -> tuple[str, ...]:
    if ctx.opts.cover:
        return tuple(c.strip() for c in ctx.opts.cover.split(","))
    if tuple(M.poset.labels) == dg.P1_LABELS:
        return cech.P1_COVER
    raise CommandError("this command needs --cover")


def cmd_cech(args, ctx, rep) -> int:
    _need(args, 1, "cech MODULE [--cover a,b]")
    M = as_module(resolve(args[0], ctx))
    C = cech.cech_resolution(M, _cover(ctx, M))
    dd = C.d_squared_defects()
    hd = C.homotopy_defects()
    rep.result["cover"] = ",".join(C.cover)
    rep.result["length"] = C.length
    rep.result["terms"] = {f"C{p}": ",".join(C.joins[I] for I, _ in C.term(p)) for p in range(C.length + 1)}
    rep.result["d_squared_zero"] = not dd
    rep.result["homotopy_identities"] = not hd
    return EXIT_OK if not dd and not hd else EXIT_NEGATIVE


def cmd_cohomology(args, ctx, rep) -> int:
    _need(args, 1, "cohomology MODULE [--window LO..HI] [--cover a,b]")
    M = as_module(resolve(args[0], ctx))
    T = cech.cohomology(M, _cover(ctx, M), ctx.window())
    rep.result["window"] = f"{T.window[0]}..{T.window[1]}"
    for p, d in enumerate(T.dims):
        rep.result[f"H{p}"] = d
    rep.result["per_degree"] = {str(e): " ".join(str(x) for x in h) for e, h in T.per_degree.items() if any(h)}
    rep.warnings.extend(T.warnings)
    return EXIT_OK


def cmd_tensor(args, ctx, rep) -> int:
    _need(args, 2, "tensor X Y")
    X, Y = resolve(args[0], ctx), resolve(args[1], ctx)
    if isinstance(X, dg.DiagModule) and isinstance(Y, dg.DiagModule):
        T = dg.tensor_modules(X, Y)
        rep.result["generators"] = {v: T[v].ngens for v in T.poset.labels}
        rep.result["valid"] = dg.validate(T).ok
        rep.result["quasicoherent"] = bool(dg.is_quasicoherent(T))
        return EXIT_OK
    X, Y = as_rep(X), as_rep(Y)
    if not isinstance(X.quiver, reps.ComplexQuiver):
        T = cx.tensor_reps(X, Y)
        rep.result["dims"] = dims_of(T)
        return EXIT_OK
    T = cx.tensor_complexes(X, Y)
    rep.result["window"] = f"{T.quiver.lo}..{T.quiver.hi}"
    rep.result["total_dim"] = T.total_dim()
    rep.result["d_squared_zero"] = cx.d_squared_zero(T)
    rep.result["cohomology"] = {str(n): ",".join(map(str, d)) for n, d in cx.cohomology_dims(T).items() if any(d)}
    return EXIT_OK


def as_chain_map(f: reps.RepMap) -> reps.RepMap:
    """Maps of representations are read as chain maps of complexes concentrated in degree 0."""
    if isinstance(f.source.quiver, reps.ComplexQuiver):
        return f
    G = cx.grid(f.source.quiver.poset, 0, 0)
    return cx.assemble_map(cx.sphere(f.source, 0, G), cx.sphere(f.target, 0, G), {0: f})


def cmd_pushout_product(args, ctx, rep) -> int:
    _need(args, 2, "pushout-product F G")
    f, g = (as_chain_map(as_repmap(resolve(a, ctx))) for a in args)
    box, P = cx.pushout_product(f, g)
    mono = reps.is_mono(box)
    rep.result["source_dim"] = P.total_dim()
    rep.result["target_dim"] = box.target.total_dim()
    rep.result["inflation"] = mono
    if mono:
        C = reps.cokernel(box)[0]
        rep.result["cokernel_dim"] = C.total_dim()
        rep.result["cokernel_acyclic"] = cx.is_acyclic(C)
    return EXIT_OK if mono else EXIT_NEGATIVE


def cmd_bundle_check(args, ctx, rep) -> int:
    _need(args, 1, "bundle-check MODULE [--twists n,...]")
    M = as_module(resolve(args[0], ctx))
    b = cech.locally_projective(M)
    rep.result["locally_projective"] = b.locally_projective
    if not b:
        rep.result["failing_vertex"] = b.failing_vertex
        rep.result["invariant_factors"] = list(b.invariant_factors)
    ok = b.locally_projective
    if ctx.opts.twists:
        tw = [int(x) for x in ctx.opts.twists.split(",")]
        g = cech.twist_generation_check(M, tw, ctx.window())
        rep.result["generated_by_twists"] = g.generated
        rep.result["maps_used"] = g.maps_used
        ok = ok and g.generated
    return EXIT_OK if ok else EXIT_NEGATIVE


HANDLERS: dict[str, Callable] = {
    "validate": cmd_validate,
    "qcheck": cmd_qcheck,
    "hom": cmd_hom,
    "ext": cmd_ext,
    "lift": cmd_lift,
    "factorize": cmd_factorize,
    "approx": cmd_approx,
    "pair-check": cmd_pair_check,
    "triple-verify": cmd_triple_verify,
    "classify": cmd_classify,
    "homotopic": cmd_homotopic,
    "ho-hom": cmd_ho_hom,
    "cech": cmd_cech,
    "cohomology": cmd_cohomology,
    "tensor": cmd_tensor,
    "pushout-product": cmd_pushout_product,
    "bundle-check": cmd_bundle_check,
}


# -- entry point -------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcmodel", description="Exact homological algebra over poset ring diagrams.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("args", nargs="*")
    p.add_argument("-f", "--file", action="append", default=[], help="workspace file (repeatable)")
    p.add_argument("--window", help="degree window LO..HI")
    p.add_argument("--budget", type=int, default=None, help="small object argument step budget")
    p.add_argument("--universe", help="comma-separated object names")
    p.add_argument("--report", help="also write the report to this path")
    p.add_argument("--poset", help="poset for built-in representations (A<n> is a chain)")
    p.add_argument("--triple", help="triple name or kind")
    p.add_argument("--pair", help="projective, injective, cof:TRIPLE or tcof:TRIPLE")
    p.add_argument("--cover", help="comma-separated cover elements")
    p.add_argument("--twists", help="comma-separated twists for bundle-check")
    p.add_argument("--kind", choices=("cof-tfib", "tcof-fib"))
    p.add_argument("--degree", type=int, help="Ext degree")
    p.add_argument("--timing", action="store_true", help="append wall-clock timing to the report")
    return p


def _glue_values(argv: list[str]) -> list[str]:
    """Attach flag values so that windows like -4..4 are not read as options."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}" if a.startswith("--") else a + argv[i + 1])
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def load_workspace(paths: list[str]) -> Workspace:
    ws = Workspace()
    for p in paths:
        parse_file(p, ws)
    return ws


def run(argv: list[str], out=None) -> tuple[int, Report]:
    out = out or sys.stdout
    argv = list(argv)
    parser = build_parser()
    opts = parser.parse_args(_glue_values(argv))
    if opts.budget is None and os.environ.get("QCMODEL_BUDGET"):
        opts.budget = int(os.environ["QCMODEL_BUDGET"])
    echo = " ".join(argv)
    report = Report(echo)
    t0 = time.perf_counter()
    try:
        ws = load_workspace(opts.file)
        code = HANDLERS[opts.command](list(opts.args), Context(ws, opts), report)
        report.status = "ok" if code == EXIT_OK else "negative"
    except ParseError as e:
        code = EXIT_ERROR
        report.status = "error"
        report.result = {"error": e.kind, "message": e.message, "line": e.line, "path": e.path}
    except Exception as e:  # every failure becomes an error report with exit status 2
        code = EXIT_ERROR
        report.status = "error"
        report.result = {"error": type(e).__name__, "message": f"{opts.command}: {e}"}
    if opts.timing:
        report.timing = time.perf_counter() - t0
    text = report.render()
    out.write(text)
    if opts.report:
        Path(opts.report).write_text(text, encoding="ascii")
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
