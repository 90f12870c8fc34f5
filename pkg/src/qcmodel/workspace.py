"""The text input language: parsing workspaces and serializing them back.

    file     := def*
    def      := poset | ringrep | module | morphism | complex | triple
    poset    := "poset" NAME "{" "elements:" id* ";" "relations:" (id "<=" id [","])* ";" "}"
    ringrep  := "ringrep" NAME "on" NAME "{" (id ":" ring ";")* "}"
    ring     := "field" | "poly(" VAR ")" | "ipoly(" VAR ")" | "laurent(" VAR ")"
    module   := "module" NAME "over" NAME "{" mstmt* "}"
    mstmt    := "at" id ["over" ring] ":" "gens" (INT | "(" int,* ")") ["rels" matrix] ";"
              | "map" id "->" id ":" matrix ";"
    morphism := "morphism" NAME ":" NAME "->" NAME "{" (id ":" matrix ";")* "}"
    complex  := "complex" NAME "over" NAME "window" INT ".." INT "{" (INT ":" NAME ";" | "d" INT ":" NAME ";")* "}"
    triple   := "triple" NAME "=" KIND ["(" arg,* ")"] ";"
    matrix   := "[" [row ("," row)*] "]"      row := "[" poly ("," poly)* "]"

``module M over P`` with P a poset means the constant field representation
on P.  Comments run from ``#`` to the end of the line; all tokens are ASCII.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from qcmodel import complexes as cx
from qcmodel import diagram as dg
from qcmodel import reps
from qcmodel.errors import InputReferenceError, InputSyntaxError, InputValidationError, InvalidObject, QCError
from qcmodel.exact_arith import FIELD, FPModule, RingMatrix, RingSpec, ipoly, laurent, poly
from qcmodel.linalg import Mat

TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<op><=|->|\.\.|[{}\[\]();:,=+\-*/^])
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int


def tokenize(text: str, path: str | None = None) -> list[Tok]:
    out, line, pos = [], 1, 0
    while pos < len(text):
        m = TOKEN.match(text, pos)
        if m is None:
            raise InputSyntaxError(f"unexpected character {text[pos]!r}", line, path)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
        elif kind not in ("ws", "comment"):
            out.append(Tok(kind, m.group(), line))
        pos = m.end()
    out.append(Tok("eof", "", line))
    return out


# -- definitions -------------------------------------------------------------------------------


@dataclass
class Definition:
    kind: str
    name: str
    value: object
    line: int
    path: str | None = None
    spec: dict = field(default_factory=dict)

    @property
    def site(self) -> str:
        return f"{self.path or '<input>'}:{self.line}"


@dataclass
class TripleSpec:
    kind: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(self.args)})" if self.args else self.kind


@dataclass
class ComplexDef:
    """A bounded complex over a constant field representation, with its named parts."""

    rep: reps.Rep
    poset_name: str
    window: tuple[int, int]
    components: dict[int, str]
    differentials: dict[int, str]


class Workspace:
    def __init__(self):
        self.defs: dict[str, Definition] = {}

    def __contains__(self, name: str) -> bool:
        return name in self.defs

    def __len__(self) -> int:
        return len(self.defs)

    def __iter__(self) -> Iterator[Definition]:
        return iter(self.defs.values())

    def add(self, d: Definition) -> None:
        old = self.defs.get(d.name)
        if old is not None:
            raise InputReferenceError(f"duplicate definition of {d.name!r} at {d.site}; first defined at {old.site}", d.line, d.path)
        self.defs[d.name] = d

    def get(self, name: str, kind: str | tuple[str, ...] | None = None, line: int | None = None, path: str | None = None) -> Definition:
        d = self.defs.get(name)
        if d is None:
            raise InputReferenceError(f"unknown name {name!r}", line, path)
        kinds = (kind,) if isinstance(kind, str) else kind
        if kinds and d.kind not in kinds:
            raise InputReferenceError(f"{name!r} is a {d.kind}, expected {' or '.join(kinds)}", line, path)
        return d

    def value(self, name: str, kind=None):
        return self.get(name, kind).value


# -- expressions -----------------------------------------------------------------------------------


def parse_ring(kw: str, var: str | None) -> RingSpec:
    if kw == "field":
        return FIELD
    ctor = {"poly": poly, "ipoly": ipoly, "laurent": laurent}.get(kw)
    if ctor is None or var is None:
        raise ValueError(f"unknown ring {kw!r}")
    return ctor(var)


class Parser:
    def __init__(self, text: str, path: str | None = None, ws: Workspace | None = None):
        self.toks = tokenize(text, path)
        self.i = 0
        self.path = path
        self.ws = ws if ws is not None else Workspace()

    # token helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def err(self, msg: str, cls=InputSyntaxError):
        return cls(msg, self.tok.line, self.path)

    def next(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("op", "id"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Tok:
        if self.tok.text != text or self.tok.kind not in ("op", "id"):
            raise self.err(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def name(self) -> str:
        if self.tok.kind != "id":
            raise self.err(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.next().text

    def ident(self) -> str:
        """A vertex label: a name or a non-negative integer."""
        if self.tok.kind not in ("id", "int"):
            raise self.err(f"expected a vertex label, found {self.tok.text or 'end of input'!r}")
        return self.next().text

    def integer(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "int":
            raise self.err(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        v = int(self.next().text)
        return -v if neg else v

    def ring(self) -> RingSpec:
        kw = self.name()
        var = None
        if kw != "field":
            self.expect("(")
            var = self.name()
            self.expect(")")
        try:
            return parse_ring(kw, var)
        except ValueError as e:
            raise self.err(str(e)) from None

    def number(self) -> Fraction:
        if self.tok.kind != "int":
            raise self.err(f"expected a number, found {self.tok.text!r}")
        v = Fraction(int(self.next().text))
        if self.accept("/"):
            if self.tok.kind != "int":
                raise self.err("expected a denominator")
            den = int(self.next().text)
            if den == 0:
                raise self.err("zero denominator")
            v /= den
        return v

    def poly(self, ring: RingSpec):
        terms: dict[int, Fraction] = {}
        sign = -1 if self.accept("-") else 1
        while True:
            coeff, exp = Fraction(1), 0
            have = False
            if self.tok.kind == "int":
                coeff = self.number()
                have = True
                if self.accept("*"):
                    have = False
            if not have or self.tok.kind == "id":
                if self.tok.kind != "id":
                    raise self.err("expected a coefficient or a variable")
                var = self.next().text
                if ring.is_field or var != ring.var:
                    raise self.err(f"variable {var!r} does not belong to {ring}", InputValidationError)
                exp = 1
                if self.accept("^"):
                    exp = self.integer()
            if not ring.allows(exp):
                raise self.err(f"exponent {exp} is not allowed in {ring}", InputValidationError)
            terms[exp] = terms.get(exp, 0) + sign * coeff
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        return ring.element(terms)

    def matrix(self, ring: RingSpec, shape: tuple[int, int]) -> RingMatrix:
        self.expect("[")
        rows = []
        if not self.accept("]"):
            while True:
                self.expect("[")
                row = [self.poly(ring)]
                while self.accept(","):
                    row.append(self.poly(ring))
                self.expect("]")
                rows.append(row)
                if self.accept("]"):
                    break
                self.expect(",")
        m, n = shape
        if not rows:
            if m and n:
                raise self.err(f"empty matrix where {m}x{n} was expected", InputValidationError)
            return RingMatrix.zeros(ring, m, n)
        if len(rows) != m or any(len(r) != n for r in rows):
            got = (len(rows), len(rows[0]))
            raise self.err(f"matrix has shape {got[0]}x{got[1]}, expected {m}x{n}", InputValidationError)
        return RingMatrix(ring, rows, m, n)

    def free_matrix(self, ring: RingSpec) -> list[list]:
        """A matrix whose shape is read off the text (relation matrices)."""
        self.expect("[")
        rows = []
        if not self.accept("]"):
            while True:
                self.expect("[")
                row = [self.poly(ring)]
                while self.accept(","):
                    row.append(self.poly(ring))
                self.expect("]")
                rows.append(row)
                if self.accept("]"):
                    break
                self.expect(",")
        if rows and len({len(r) for r in rows}) != 1:
            raise self.err("ragged matrix", InputValidationError)
        return rows

    # definitions
    def parse(self) -> Workspace:
        while self.tok.kind != "eof":
            kw = self.tok
            if kw.kind != "id":
                raise self.err(f"expected a definition keyword, found {kw.text!r}")
            handler = {
                "poset": self.poset,
                "ringrep": self.ringrep,
                "module": self.module,
                "morphism": self.morphism,
                "complex": self.complex,
                "triple": self.triple,
            }.get(kw.text)
            if handler is None:
                raise self.err(f"unknown definition keyword {kw.text!r}")
            self.next()
            d = handler(kw.line)
            self.ws.add(d)
        return self.ws

    def _def(self, kind, name, value, line, **spec) -> Definition:
        return Definition(kind, name, value, line, self.path, spec)

    def poset(self, line: int) -> Definition:
        name = self.name()
        self.expect("{")
        self.expect("elements")
        self.expect(":")
        elems = []
        while not self.accept(";"):
            elems.append(self.ident())
        rels = []
        if self.accept("relations"):
            self.expect(":")
            while not self.accept(";"):
                a = self.ident()
                self.expect("<=")
                b = self.ident()
                rels.append((a, b))
                self.accept(",")
        self.expect("}")
        try:
            P = dg.FinitePoset(elems, rels, name=name)
        except InvalidObject as e:
            raise InputValidationError(str(e), line, self.path) from None
        return self._def("poset", name, P, line)

    def _poset_ref(self) -> tuple[str, dg.FinitePoset]:
        line = self.tok.line
        pname = self.name()
        return pname, self.ws.get(pname, "poset", line, self.path).value

    def ringrep(self, line: int) -> Definition:
        name = self.name()
        self.expect("on")
        pname, P = self._poset_ref()
        self.expect("{")
        rings = {}
        while not self.accept("}"):
            v = self.ident()
            self.expect(":")
            rings[v] = self.ring()
            self.expect(";")
        try:
            R = dg.RingRep(P, rings, name=name)
        except (InvalidObject, QCError) as e:
            raise InputValidationError(str(e), line, self.path) from None
        return self._def("ringrep", name, R, line, poset=pname)

    def _rep_ref(self) -> tuple[str, dg.RingRep]:
        line = self.tok.line
        rname = self.name()
        d = self.ws.get(rname, ("ringrep", "poset"), line, self.path)
        if d.kind == "poset":
            return rname, dg.constant_rep(d.value)
        return rname, d.value

    def module(self, line: int) -> Definition:
        name = self.name()
        self.expect("over")
        rname, R = self._rep_ref()
        P = R.poset
        self.expect("{")
        mods: dict[str, FPModule] = {}
        pending: list[tuple[str, str, int, int]] = []
        while not self.accept("}"):
            sline = self.tok.line
            if self.accept("at"):
                v = self.ident()
                if v not in P.labels:
                    raise InputReferenceError(f"{v!r} is not a vertex of {rname}", sline, self.path)
                ring = R.ring(v)
                if self.accept("over"):
                    ring = self.ring()
                self.expect(":")
                self.expect("gens")
                if self.accept("("):
                    degs = []
                    if not self.accept(")"):
                        degs.append(self.integer())
                        while self.accept(","):
                            degs.append(self.integer())
                        self.expect(")")
                    g, degrees = len(degs), tuple(degs)
                else:
                    g, degrees = self.integer(), None
                rel = RingMatrix.zeros(ring, g, 0)
                if self.accept("rels"):
                    rows = self.free_matrix(ring)
                    if rows:
                        if len(rows) != g:
                            raise InputValidationError(f"relation matrix needs {g} rows", sline, self.path)
                        rel = RingMatrix(ring, rows, g, len(rows[0]))
                self.expect(";")
                if v in mods:
                    raise InputReferenceError(f"vertex {v!r} given twice", sline, self.path)
                try:
                    mods[v] = FPModule(ring, g, rel, degrees)
                except ValueError as e:
                    raise InputValidationError(str(e), sline, self.path) from None
            elif self.accept("map"):
                a = self.ident()
                self.expect("->")
                b = self.ident()
                self.expect(":")
                for x in (a, b):
                    if x not in P.labels:
                        raise InputReferenceError(f"{x!r} is not a vertex of {rname}", sline, self.path)
                # shapes depend on the vertex modules; remember the token position
                pending.append((a, b, self.i, sline))
                self._skip_matrix()
                self.expect(";")
            else:
                raise self.err(f"expected 'at' or 'map', found {self.tok.text!r}")
        for v in P.labels:
            mods.setdefault(v, dg.zero_fp(R.ring(v)))
        maps = {}
        end = self.i
        for a, b, pos, sline in pending:
            if not P.leq(a, b) or a == b:
                raise InputValidationError(f"no transition {a} -> {b}: not a strict relation", sline, self.path)
            self.i = pos
            maps[(a, b)] = self.matrix(mods[b].ring, (mods[b].ngens, mods[a].ngens))
        self.i = end
        try:
            M = dg.DiagModule(R, mods, maps, name=name)
        except (InvalidObject, QCError, ValueError, TypeError) as e:
            raise InputValidationError(str(e), line, self.path) from None
        rep = dg.validate(M)
        if not rep.ok:
            raise InputValidationError(f"module {name}: {rep.violations[0]}", line, self.path)
        return self._def("module", name, M, line, over=rname)

    def _skip_matrix(self) -> None:
        depth = 0
        while True:
            t = self.next()
            if t.kind == "eof":
                raise self.err("unterminated matrix")
            if t.text == "[":
                depth += 1
            elif t.text == "]":
                depth -= 1
                if depth == 0:
                    return

    def morphism(self, line: int) -> Definition:
        name = self.name()
        self.expect(":")
        sline = self.tok.line
        src_name = self.name()
        self.expect("->")
        tgt_name = self.name()
        M = self.ws.get(src_name, "module", sline, self.path).value
        N = self.ws.get(tgt_name, "module", sline, self.path).value
        if M.rep != N.rep:
            raise InputValidationError("source and target live over different representations", line, self.path)
        self.expect("{")
        maps = {}
        while not self.accept("}"):
            v = self.ident()
            if v not in M.poset.labels:
                raise InputReferenceError(f"{v!r} is not a vertex", self.tok.line, self.path)
            self.expect(":")
            maps[v] = self.matrix(N.ring(v), (N[v].ngens, M[v].ngens))
            self.expect(";")
        f = dg.DiagMorphism(M, N, maps, name=name)
        rep = f.validate()
        if not rep.ok:
            raise InputValidationError(f"morphism {name}: {rep.violations[0]}", line, self.path)
        return self._def("morphism", name, f, line, source=src_name, target=tgt_name)

    def complex(self, line: int) -> Definition:
        name = self.name()
        self.expect("over")
        pname, P = self._poset_ref()
        self.expect("window")
        lo = self.integer()
        self.expect("..")
        hi = self.integer()
        if hi < lo:
            raise InputValidationError("empty degree window", line, self.path)
        self.expect("{")
        comps, diffs = {}, {}
        while not self.accept("}"):
            if self.accept("d"):
                n = self.integer()
                self.expect(":")
                diffs[n] = self.name()
            else:
                n = self.integer()
                self.expect(":")
                comps[n] = self.name()
            self.expect(";")
        G = cx.grid(P, lo, hi)
        try:
            comp_reps = {n: to_rep(self._module_value(m, line)) for n, m in comps.items()}
            diff_maps = {n: to_repmap(self._morphism_value(f, line)) for n, f in diffs.items()}
            for n, f in diff_maps.items():
                if n not in comp_reps or n + 1 not in comp_reps:
                    raise InvalidObject(f"differential from degree {n} needs components in degrees {n} and {n + 1}")
                if f.source != comp_reps[n] or f.target != comp_reps[n + 1]:
                    raise InvalidObject(f"differential from degree {n} does not connect the listed components")
            X = cx.assemble(G, comp_reps, diff_maps, name=name)
        except InvalidObject as e:
            raise InputValidationError(f"complex {name}: {e}", line, self.path) from None
        value = ComplexDef(X, pname, (lo, hi), comps, diffs)
        return self._def("complex", name, value, line, poset=pname)

    def _module_value(self, name: str, line: int) -> dg.DiagModule:
        return self.ws.get(name, "module", line, self.path).value

    def _morphism_value(self, name: str, line: int) -> dg.DiagMorphism:
        return self.ws.get(name, "morphism", line, self.path).value

    def triple(self, line: int) -> Definition:
        name = self.name()
        self.expect("=")
        parts = [self.name()]
        while self.accept("-"):
            parts.append(self.name())
        kind = "-".join(parts)
        args = []
        if self.accept("("):
            if not self.accept(")"):
                args.append(self._arg())
                while self.accept(","):
                    args.append(self._arg())
                self.expect(")")
        self.expect(";")
        spec = TripleSpec(kind, tuple(args))
        if kind not in TRIPLE_KINDS:
            raise InputValidationError(f"unknown triple kind {kind!r}", line, self.path)
        if args and args[0] not in self.ws and not re.fullmatch(r"A\d+", args[0]):
            raise InputReferenceError(f"unknown poset {args[0]!r}", line, self.path)
        return self._def("triple", name, spec, line)

    def _arg(self) -> str:
        if self.tok.kind in ("int",) or self.tok.text == "-":
            lo = self.integer()
            if self.accept(".."):
                return f"{lo}..{self.integer()}"
            return str(lo)
        return self.name()


TRIPLE_KINDS = ("projective", "injective", "injective-model", "even-dimension")


def parse_text(text: str, path: str | None = None, ws: Workspace | None = None) -> Workspace:
    return Parser(text, path, ws).parse()


def parse_file(path: str | Path, ws: Workspace | None = None) -> Workspace:
    p = Path(path)
    return parse_text(p.read_text(encoding="ascii"), str(p), ws)


# -- the field-representation world ------------------------------------------------------------


def _to_mat(m: RingMatrix) -> Mat:
    return Mat([[x.as_dict().get(0, 0) for x in row] for row in m.rows], m.nrows, m.ncols)


def _require_field(M: dg.DiagModule) -> None:
    for v in M.poset.labels:
        if not M.ring(v).is_field:
            raise InvalidObject(f"{M.name}: vertex {v} is over {M.ring(v)}; poset representations need the field")


def to_rep(M: dg.DiagModule) -> reps.Rep:
    """A module over the constant field representation as a poset representation."""
    _require_field(M)
    Q = cx.poset_quiver(M.poset)
    pruned = {v: M[v].pruned() for v in M.poset.labels}
    dims = {v: pruned[v][0].ngens for v in M.poset.labels}
    mats = {}
    for k, (a, b) in enumerate(Q.arrows):
        A = pruned[b][1] @ M.maps[(a, b)] @ pruned[a][2]
        mats[k] = _to_mat(A)
    return reps.Rep(Q, dims, mats, name=M.name)


def to_repmap(f: dg.DiagMorphism) -> reps.RepMap:
    X, Y = to_rep(f.source), to_rep(f.target)
    mats = {}
    for v in f.source.poset.labels:
        ps, pt = f.source[v].pruned(), f.target[v].pruned()
        mats[v] = _to_mat(pt[1] @ f.maps[v] @ ps[2])
    return reps.RepMap(X, Y, mats)


def _rm(m: Mat) -> RingMatrix:
    return RingMatrix(FIELD, [[FIELD.const(x) for x in row] for row in m.rows], m.nrows, m.ncols)


def from_rep(X: reps.Rep, rep: dg.RingRep | None = None, name: str | None = None) -> dg.DiagModule:
    """The poset representation X as a module over the constant field representation."""
    P = X.quiver.poset
    R = rep or dg.constant_rep(P)
    mods = {v: FPModule.free(FIELD, X.dims[v]) for v in P.labels}
    maps = {}
    for k, (a, b) in enumerate(X.quiver.arrows):
        maps[(a, b)] = _rm(X.mats[k])
    return dg.DiagModule(R, mods, maps, name=name or X.name)


def from_repmap(f: reps.RepMap, source: dg.DiagModule, target: dg.DiagModule, name: str | None = None) -> dg.DiagMorphism:
    return dg.DiagMorphism(source, target, {v: _rm(f.mats[v]) for v in source.poset.labels}, name=name)


# -- serialization ------------------------------------------------------------------------------------


def _fmt_matrix(m: RingMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m.rows) + "]"


def serialize_poset(name: str, P: dg.FinitePoset) -> str:
    rels = ", ".join(f"{a} <= {b}" for a, b in P.hasse_edges())
    return f"poset {name} {{\n  elements: {' '.join(P.labels)};\n  relations: {rels};\n}}\n"


def serialize_ringrep(name: str, poset_name: str, R: dg.RingRep) -> str:
    body = "".join(f"  {v}: {R.ring(v)};\n" for v in R.poset.labels)
    return f"ringrep {name} on {poset_name} {{\n{body}}}\n"


def serialize_module(name: str, over: str, M: dg.DiagModule) -> str:
    lines = [f"module {name} over {over} {{"]
    for v in M.poset.labels:
        m = M[v]
        ring = f" over {m.ring}" if m.ring != M.rep.ring(v) else ""
        gens = f"({', '.join(str(d) for d in m.degrees)})" if m.degrees is not None else str(m.ngens)
        rels = f" rels {_fmt_matrix(m.relations)}" if m.relations.ncols and m.ngens else ""
        lines.append(f"  at {v}{ring}: gens {gens}{rels};")
    for (a, b), A in M.maps.items():
        if a == b or A.nrows == 0 or A.ncols == 0:
            continue
        lines.append(f"  map {a} -> {b}: {_fmt_matrix(A)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_morphism(name: str, src: str, tgt: str, f: dg.DiagMorphism) -> str:
    lines = [f"morphism {name} : {src} -> {tgt} {{"]
    for v, A in f.maps.items():
        if A.nrows and A.ncols:
            lines.append(f"  {v}: {_fmt_matrix(A)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_complex(name: str, c: ComplexDef) -> str:
    lines = [f"complex {name} over {c.poset_name} window {c.window[0]}..{c.window[1]} {{"]
    for n in sorted(c.components):
        lines.append(f"  {n}: {c.components[n]};")
    for n in sorted(c.differentials):
        lines.append(f"  d {n}: {c.differentials[n]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize(ws: Workspace) -> str:
    """Text that parses back to a definition-equal workspace."""
    out = []
    for d in ws:
        if d.kind == "poset":
            out.append(serialize_poset(d.name, d.value))
        elif d.kind == "ringrep":
            out.append(serialize_ringrep(d.name, d.spec["poset"], d.value))
        elif d.kind == "module":
            out.append(serialize_module(d.name, d.spec["over"], d.value))
        elif d.kind == "morphism":
            out.append(serialize_morphism(d.name, d.spec["source"], d.spec["target"], d.value))
        elif d.kind == "complex":
            out.append(serialize_complex(d.name, d.value))
        elif d.kind == "triple":
            out.append(f"triple {d.name} = {d.value};\n")
    return "\n".join(out)


def definition_equal(a: Definition, b: Definition) -> bool:
    if a.kind != b.kind or a.name != b.name:
        return False
    x, y = a.value, b.value
    if a.kind == "module":
        return x.structure_equal(y)
    if a.kind == "morphism":
        return x.source.structure_equal(y.source) and x.target.structure_equal(y.target) and dict(x.maps) == dict(y.maps)
    if a.kind == "complex":
        return x.rep == y.rep and x.components == y.components and x.differentials == y.differentials
    if a.kind == "triple":
        return x.kind == y.kind and x.args == y.args
    return x == y


def workspaces_equal(a: Workspace, b: Workspace) -> bool:
    if list(a.defs) != list(b.defs):
        return False
    return all(definition_equal(a.defs[k], b.defs[k]) for k in a.defs)
