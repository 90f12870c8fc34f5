"""Finite posets, ring representations and modules over them.

A module over a ring representation R stores, for every vertex z, a finitely
presented module M(z) and, for every comparable pair y <= z, the transition
M(y) -> M(z) as a matrix of generator images.  Vertex modules may live over a
localization S_z of R(z) (direct images do); since localizations are ring
epimorphisms, R(z)-linear and S_z-linear maps between such modules coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from qcmodel.errors import InvalidObject, UnsupportedRing, WindowRequired
from qcmodel.exact_arith import (
    FIELD,
    FPModule,
    GradedPiece,
    PresentedMap,
    RingElement,
    RingMap,
    RingMatrix,
    RingSpec,
    base_change,
    block_diag_rm,
    fp_cokernel,
    fp_kernel,
    hstack_rm,
    ipoly,
    laurent,
    piece_map,
    poly,
    solve_linear,
    _window_sum,
    _mult_within,
)
from qcmodel.linalg import Mat, hstack, vstack


# -- posets -----------------------------------------------------------------------


class FinitePoset:
    """A finite partial order on string labels.

    ``relations`` may be any generating set of pairs (a, b) meaning a <= b;
    the reflexive-transitive closure is taken and antisymmetry is checked.
    """

    def __init__(self, labels: Sequence[str], relations: Iterable[tuple[str, str]] = (), name: str | None = None):
        labels = [str(x) for x in labels]
        if len(set(labels)) != len(labels):
            raise InvalidObject("poset labels must be distinct")
        self.name = name
        self.labels: tuple[str, ...] = tuple(labels)
        self.index = {x: i for i, x in enumerate(labels)}
        n = len(labels)
        le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in relations:
            if a not in self.index or b not in self.index:
                raise InvalidObject(f"relation {a} <= {b} mentions an unknown element")
            le[self.index[a]][self.index[b]] = True
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if le[i][j] and le[j][i]:
                    raise InvalidObject(f"order is not antisymmetric: {labels[i]} and {labels[j]}")
        self._le = tuple(tuple(r) for r in le)
        self.generating_relations = tuple((str(a), str(b)) for a, b in relations)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        labels = [str(i) for i in range(n)]
        return cls(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)], name=f"A{n}")

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinitePoset) and self.labels == other.labels and self._le == other._le

    def __hash__(self) -> int:
        return hash((self.labels, self._le))

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.labels)}, {self.hasse_edges()})"

    def leq(self, a: str, b: str) -> bool:
        return self._le[self.index[a]][self.index[b]]

    def lt(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b)

    def pairs(self) -> list[tuple[str, str]]:
        """All comparable pairs a <= b, identities included, in label order."""
        return [(a, b) for a in self.labels for b in self.labels if self.leq(a, b)]

    def hasse_edges(self) -> list[tuple[str, str]]:
        out = []
        for a in self.labels:
            for b in self.labels:
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in self.labels):
                    out.append((a, b))
        return out

    def up(self, a: str) -> list[str]:
        return [b for b in self.labels if self.leq(a, b)]

    def down(self, a: str) -> list[str]:
        return [b for b in self.labels if self.leq(b, a)]

    def join(self, a: str, b: str) -> str | None:
        ub = [c for c in self.labels if self.leq(a, c) and self.leq(b, c)]
        least = [c for c in ub if all(self.leq(c, d) for d in ub)]
        return least[0] if least else None

    def join_all(self, elems: Iterable[str]) -> str | None:
        elems = list(elems)
        if not elems:
            return None
        acc = elems[0]
        for e in elems[1:]:
            acc = self.join(acc, e)
            if acc is None:
                return None
        return acc

    def is_upper_semilattice(self) -> bool:
        return all(self.join(a, b) is not None for a in self.labels for b in self.labels)

    def linear_extension(self) -> list[str]:
        return sorted(self.labels, key=lambda a: (len(self.down(a)), self.index[a]))


# -- ring representations ------------------------------------------------------------


@dataclass(frozen=True)
class MonomialRing:
    """k[monomials] inside a multivariate Laurent ring, given by monoid generators.

    ``gens`` are exponent vectors; ``units`` are the generators that are also
    inverted.  Used only to record ring diagrams as data.
    """

    label: str
    gens: tuple[tuple[int, ...], ...]
    units: tuple[bool, ...]

    def contains_monomial(self, v: Sequence[int]) -> bool:
        # generators are linearly independent; find the rational combination
        k = len(self.gens)
        n = len(v)
        A = Mat([[g[i] for g in self.gens] for i in range(n)], n, k)
        sol = A.solve(Mat([[x] for x in v], n, 1))
        if sol is None:
            return False
        for c, unit in zip(sol.col(0), self.units):
            if Fraction(c).denominator != 1:
                return False
            if c < 0 and not unit:
                return False
        return True

    def contains(self, other: "MonomialRing") -> bool:
        for g, u in zip(other.gens, other.units):
            if not self.contains_monomial(g):
                return False
            if u and not self.contains_monomial([-x for x in g]):
                return False
        return True

    def __str__(self) -> str:
        return self.label


class RingRep:
    """A functor from a finite poset to rings, specified on comparable pairs.

    Univariate rings carry certified localization maps; MonomialRing
    vertices are data only and module operations over them are refused.
    """

    def __init__(self, poset: FinitePoset, rings: Mapping[str, RingSpec | MonomialRing], name: str | None = None):
        self.poset = poset
        self.name = name
        missing = [v for v in poset.labels if v not in rings]
        if missing:
            raise InvalidObject(f"ring representation misses vertices {missing}")
        self.rings = MappingProxyType({v: rings[v] for v in poset.labels})
        self.univariate = all(isinstance(r, RingSpec) for r in self.rings.values())
        self._maps: dict[tuple[str, str], RingMap] = {}
        problems = self.validate()
        if problems:
            raise InvalidObject("; ".join(problems))

    def __eq__(self, other) -> bool:
        return isinstance(other, RingRep) and self.poset == other.poset and dict(self.rings) == dict(other.rings)

    def __hash__(self) -> int:
        return hash((self.poset, tuple(self.rings.items())))

    def __repr__(self) -> str:
        return f"RingRep({self.name or ''}: {', '.join(f'{v}={r}' for v, r in self.rings.items())})"

    def ring(self, v: str):
        return self.rings[v]

    def map(self, a: str, b: str) -> RingMap:
        if not self.univariate:
            raise UnsupportedRing("ring maps of a multivariate diagram are data only")
        key = (a, b)
        if key not in self._maps:
            if not self.poset.leq(a, b):
                raise InvalidObject(f"{a} is not below {b}")
            self._maps[key] = RingMap.canonical(self.rings[a], self.rings[b])
        return self._maps[key]

    def validate(self) -> list[str]:
        out = []
        P = self.poset
        for a, b in P.pairs():
            ra, rb = self.rings[a], self.rings[b]
            if isinstance(ra, MonomialRing) or isinstance(rb, MonomialRing):
                if not (isinstance(ra, MonomialRing) and isinstance(rb, MonomialRing) and rb.contains(ra)):
                    out.append(f"no inclusion {a} -> {b}")
                continue
            try:
                self.map(a, b)
            except ValueError as exc:
                out.append(f"edge {a} -> {b}: {exc}")
        if not out and self.univariate:
            for a, b in P.pairs():
                if a == b and self.map(a, b).certificate != "identity":
                    out.append(f"R({a}) -> R({a}) is not the identity")
                for c in P.up(b):
                    if self.map(b, c).after(self.map(a, b)) != self.map(a, c):
                        out.append(f"composite {a} -> {b} -> {c} differs from {a} -> {c}")
        return out

    def require_univariate(self) -> None:
        if not self.univariate:
            raise UnsupportedRing("module operations need univariate (Euclidean) vertex rings")

    def is_continuous(self) -> bool:
        """R(y) (x) R(z) over R(x) -> R(y v z) bijective for all x <= y, z (window arithmetic)."""
        self.require_univariate()
        P = self.poset
        if not P.is_upper_semilattice():
            return False
        for x in P.labels:
            for y in P.up(x):
                for z in P.up(x):
                    ry, rz = self.rings[y], self.rings[z]
                    if ry.is_field or rz.is_field:
                        expected = ry if rz == self.rings[x] else rz if ry == self.rings[x] else None
                        if expected is None or expected != self.rings[P.join(y, z)]:
                            if not (ry == rz == self.rings[P.join(y, z)]):
                                return False
                        continue
                    if _window_sum(ry, rz) != self.rings[P.join(y, z)]:
                        return False
        return True


def constant_rep(poset: FinitePoset, ring: RingSpec = FIELD) -> RingRep:
    return RingRep(poset, {v: ring for v in poset.labels}, name=f"const({poset.name or 'P'})")


P1_LABELS = ("u0", "u1", "u01")


def p1_ringrep(var: str = "x") -> RingRep:
    P = FinitePoset(P1_LABELS, [("u0", "u01"), ("u1", "u01")], name="P1")
    return RingRep(P, {"u0": poly(var), "u1": ipoly(var), "u01": laurent(var)}, name="P1")


def p2_ringrep() -> RingRep:
    """The seven-vertex ring diagram of the projective plane, as data."""
    labels = ("U0", "U1", "U2", "U01", "U02", "U12", "U012")
    rel = [
        ("U0", "U01"), ("U0", "U02"),
        ("U1", "U01"), ("U1", "U12"),
        ("U2", "U02"), ("U2", "U12"),
        ("U01", "U012"), ("U02", "U012"), ("U12", "U012"),
    ]
    P = FinitePoset(labels, rel, name="P2")

    def ratio(i: int, j: int) -> tuple[int, ...]:
        v = [0, 0, 0]
        v[i] += 1
        v[j] -= 1
        return tuple(v)

    rings = {
        "U0": MonomialRing("k[x1/x0, x2/x0]", (ratio(1, 0), ratio(2, 0)), (False, False)),
        "U1": MonomialRing("k[x0/x1, x2/x1]", (ratio(0, 1), ratio(2, 1)), (False, False)),
        "U2": MonomialRing("k[x0/x2, x1/x2]", (ratio(0, 2), ratio(1, 2)), (False, False)),
        "U01": MonomialRing("k[x2/x0, (x1/x0)^+-1]", (ratio(2, 0), ratio(1, 0)), (False, True)),
        "U02": MonomialRing("k[x1/x2, (x0/x2)^+-1]", (ratio(1, 2), ratio(0, 2)), (False, True)),
        "U12": MonomialRing("k[x0/x1, (x2/x1)^+-1]", (ratio(0, 1), ratio(2, 1)), (False, True)),
        "U012": MonomialRing("k[(x1/x0)^+-1, (x2/x0)^+-1]", (ratio(1, 0), ratio(2, 0)), (True, True)),
    }
    return RingRep(P, rings, name="P2")


# -- modules ---------------------------------------------------------------------------


def zero_fp(ring: RingSpec, graded: bool = True) -> FPModule:
    return FPModule(ring, 0, RingMatrix.zeros(ring, 0, 0), () if graded else None)


def _localizes(base: RingSpec, ring: RingSpec) -> bool:
    if base == ring:
        return True
    try:
        RingMap.canonical(base, ring)
    except ValueError:
        return False
    return True


def _rho(a: RingSpec, b: RingSpec) -> RingMap:
    return RingMap.canonical(a, b)


def _zero_columns(M: FPModule, cols: RingMatrix) -> list[int]:
    """Indices of columns that are not zero in M."""
    bad = []
    for j in range(cols.ncols):
        c = cols.submatrix(range(cols.nrows), [j])
        if not M.contains(c):
            bad.append(j)
    return bad


@dataclass(frozen=True)
class Violation:
    kind: str
    edge: tuple[str, ...]
    index: int | None
    message: str

    def __str__(self) -> str:
        where = " -> ".join(self.edge)
        idx = "" if self.index is None else f" generator {self.index}"
        return f"{self.kind} at {where}{idx}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


class DiagModule:
    """A module over a univariate ring representation."""

    def __init__(
        self,
        rep: RingRep,
        modules: Mapping[str, FPModule],
        maps: Mapping[tuple[str, str], RingMatrix] | None = None,
        name: str | None = None,
        complete: bool = True,
    ):
        rep.require_univariate()
        self.rep = rep
        self.name = name
        P = rep.poset
        mods = {}
        for v in P.labels:
            m = modules.get(v)
            if m is None:
                m = zero_fp(rep.ring(v))
            mods[v] = m
        self.modules = MappingProxyType(mods)
        maps = dict(maps or {})
        full: dict[tuple[str, str], RingMatrix] = {}
        for a, b in P.pairs():
            if (a, b) in maps:
                full[(a, b)] = maps[(a, b)]
            elif a == b:
                full[(a, b)] = RingMatrix.identity(mods[a].ring, mods[a].ngens)
        if complete:
            # fill composites along Hasse paths, in order of increasing gap
            for a, b in sorted(P.pairs(), key=lambda p: len(P.down(p[1])) - len(P.down(p[0]))):
                if (a, b) in full:
                    continue
                mid = next((c for c in P.labels if P.lt(a, c) and P.lt(c, b) and (a, c) in full and (c, b) in full), None)
                if mid is not None:
                    full[(a, b)] = self._compose_pair(full, mods, a, mid, b)
                elif mods[a].ngens == 0 or mods[b].ngens == 0:
                    full[(a, b)] = RingMatrix.zeros(mods[b].ring, mods[b].ngens, mods[a].ngens)
                else:
                    raise InvalidObject(f"no transition given for {a} -> {b}")
        self.maps = MappingProxyType(full)

    @staticmethod
    def _compose_pair(full, mods, a, mid, b) -> RingMatrix:
        first = full[(a, mid)]
        second = full[(mid, b)]
        rho = _rho(mods[mid].ring, mods[b].ring)
        return second @ rho.apply_matrix(first)

    # -- basic accessors --------------------------------------------------------

    @property
    def poset(self) -> FinitePoset:
        return self.rep.poset

    def __getitem__(self, v: str) -> FPModule:
        return self.modules[v]

    def ring(self, v: str) -> RingSpec:
        return self.modules[v].ring

    def transition(self, a: str, b: str) -> RingMatrix:
        return self.maps[(a, b)]

    def push(self, a: str, b: str, col: RingMatrix) -> RingMatrix:
        """Image of columns of M(a) under the transition to M(b)."""
        return self.maps[(a, b)] @ _rho(self.ring(a), self.ring(b)).apply_matrix(col)

    def __repr__(self) -> str:
        gens = ", ".join(f"{v}:{m.ngens}/{m.relations.ncols}" for v, m in self.modules.items())
        return f"DiagModule({self.name or ''} {gens})"

    def structure_equal(self, other: "DiagModule") -> bool:
        return self.rep == other.rep and dict(self.modules) == dict(other.modules) and dict(self.maps) == dict(other.maps)

    def with_map(self, a: str, b: str, m: RingMatrix) -> "DiagModule":
        maps = dict(self.maps)
        maps[(a, b)] = m
        return DiagModule(self.rep, self.modules, maps, name=self.name)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.modules.values())

    def graded(self) -> bool:
        return all(m.degrees is not None or m.ring.is_field for m in self.modules.values())

    def renamed(self, name: str) -> "DiagModule":
        return DiagModule(self.rep, self.modules, self.maps, name=name)


def validate(M: DiagModule) -> ValidationReport:
    """Every violated module axiom, with the witnessing pair and generator."""
    out: list[Violation] = []
    P = M.poset
    for v in P.labels:
        m = M[v]
        if not _localizes(M.rep.ring(v), m.ring):
            out.append(Violation("ring", (v,), None, f"{m.ring} is not a localization of {M.rep.ring(v)}"))
    for a, b in P.pairs():
        A = M.maps.get((a, b))
        if A is None:
            out.append(Violation("missing", (a, b), None, "no transition map"))
            continue
        ma, mb = M[a], M[b]
        if A.shape != (mb.ngens, ma.ngens) or A.ring != mb.ring:
            out.append(Violation("shape", (a, b), None, f"transition has shape {A.shape} over {A.ring}"))
            continue
        if not _localizes(ma.ring, mb.ring):
            out.append(Violation("ring", (a, b), None, f"no localization {ma.ring} -> {mb.ring}"))
            continue
        if a == b:
            diff = A - RingMatrix.identity(ma.ring, ma.ngens)
            for j in _zero_columns(mb, diff):
                out.append(Violation("identity", (a, a), j, "M(a -> a) is not the identity"))
            continue
        img = A @ _rho(ma.ring, mb.ring).apply_matrix(ma.relations)
        for j in _zero_columns(mb, img):
            out.append(Violation("relation", (a, b), j, f"relation {j} of M({a}) is not sent to zero"))
        if ma.degrees is not None and mb.degrees is not None:
            for k in range(ma.ngens):
                for i in range(mb.ngens):
                    for e, _ in A[i, k].terms:
                        if e + mb.degrees[i] != ma.degrees[k]:
                            out.append(Violation("degree", (a, b), k, "transition is not homogeneous of degree 0"))
                            break
    if out:
        return ValidationReport(tuple(out))
    for a, b in P.pairs():
        for c in P.up(b):
            if a == b or b == c:
                continue
            lhs = M.push(b, c, M.maps[(a, b)])
            rhs = M.maps[(a, c)]
            for j in _zero_columns(M[c], lhs - rhs):
                out.append(Violation("composite", (a, b, c), j, f"M({b}->{c}) o M({a}->{b}) != M({a}->{c})"))
    return ValidationReport(tuple(out))


# -- morphisms -----------------------------------------------------------------------------


class DiagMorphism:
    """Vertex maps f(z): M(z) -> N(z) given on generators (columns over N's vertex ring)."""

    def __init__(self, source: DiagModule, target: DiagModule, maps: Mapping[str, RingMatrix], name: str | None = None):
        if source.rep != target.rep:
            raise InvalidObject("morphism between modules over different ring representations")
        self.source = source
        self.target = target
        self.name = name
        full = {}
        for v in source.poset.labels:
            m = maps.get(v)
            if m is None:
                m = RingMatrix.zeros(target.ring(v), target[v].ngens, source[v].ngens)
            if m.shape != (target[v].ngens, source[v].ngens):
                raise InvalidObject(f"vertex map at {v} has shape {m.shape}")
            full[v] = m
        self.maps = MappingProxyType(full)

    def __repr__(self) -> str:
        return f"DiagMorphism({self.name or ''}: {self.source.name} -> {self.target.name})"

    def __getitem__(self, v: str) -> RingMatrix:
        return self.maps[v]

    def _lifted_source(self, v: str) -> FPModule:
        s = self.source[v]
        t = self.target.ring(v)
        return s if s.ring == t else base_change(s, _rho(s.ring, t))

    def presented(self, v: str) -> PresentedMap:
        return PresentedMap(self._lifted_source(v), self.target[v], self.maps[v])

    def __add__(self, other: "DiagMorphism") -> "DiagMorphism":
        return DiagMorphism(self.source, self.target, {v: self.maps[v] + other.maps[v] for v in self.maps})

    def __neg__(self) -> "DiagMorphism":
        return DiagMorphism(self.source, self.target, {v: -m for v, m in self.maps.items()})

    def __sub__(self, other: "DiagMorphism") -> "DiagMorphism":
        return self + (-other)

    def scale(self, c) -> "DiagMorphism":
        return DiagMorphism(self.source, self.target, {v: m.scale(c) for v, m in self.maps.items()})

    def is_zero(self) -> bool:
        return all(self.target[v].contains(m) for v, m in self.maps.items())

    def equals(self, other: "DiagMorphism") -> bool:
        return (self - other).is_zero()

    def validate(self) -> ValidationReport:
        out = []
        M, N = self.source, self.target
        for v in M.poset.labels:
            if not _localizes(M.ring(v), N.ring(v)):
                out.append(Violation("ring", (v,), None, f"cannot map {M.ring(v)}-module into {N.ring(v)}-module"))
                continue
            f = self.maps[v]
            img = f @ _rho(M.ring(v), N.ring(v)).apply_matrix(M[v].relations)
            for j in _zero_columns(N[v], img):
                out.append(Violation("relation", (v,), j, "relation not sent to zero"))
        if out:
            return ValidationReport(tuple(out))
        for a, b in M.poset.hasse_edges():
            lhs = N.push(a, b, self.maps[a])
            rhs = self.maps[b] @ _rho(M.ring(b), N.ring(b)).apply_matrix(M.maps[(a, b)])
            for j in _zero_columns(N[b], lhs - rhs):
                out.append(Violation("square", (a, b), j, "square does not commute"))
        return ValidationReport(tuple(out))


def compose(g: DiagMorphism, f: DiagMorphism) -> DiagMorphism:
    """g o f."""
    if f.target.rep != g.source.rep:
        raise InvalidObject("morphisms are not composable")
    out = {}
    for v in f.maps:
        out[v] = g.maps[v] @ _rho(f.target.ring(v), g.target.ring(v)).apply_matrix(f.maps[v])
    return DiagMorphism(f.source, g.target, out)


def identity(M: DiagModule) -> DiagMorphism:
    return DiagMorphism(M, M, {v: RingMatrix.identity(M.ring(v), M[v].ngens) for v in M.poset.labels}, name="id")


def zero_module(rep: RingRep) -> DiagModule:
    return DiagModule(rep, {}, name="0")


def zero_morphism(M: DiagModule, N: DiagModule) -> DiagMorphism:
    return DiagMorphism(M, N, {})


def direct_sum(mods: Sequence[DiagModule]) -> tuple[DiagModule, list[DiagMorphism], list[DiagMorphism]]:
    """The biproduct with its injections and projections."""
    if not mods:
        raise InvalidObject("direct sum of nothing; use zero_module")
    rep = mods[0].rep
    P = rep.poset
    vmods = {}
    for v in P.labels:
        rings = {m.ring(v) for m in mods if m[v].ngens}
        ring = rings.pop() if len(rings) == 1 else mods[0].ring(v)
        if rings:
            raise UnsupportedRing(f"direct summands at {v} live over different rings")
        parts = [m[v] if m[v].ring == ring else zero_fp(ring) for m in mods]
        graded = all(p.degrees is not None for p in parts)
        degs = tuple(d for p in parts for d in p.degrees) if graded else None
        rel = block_diag_rm(ring, [p.relations for p in parts]) if parts else RingMatrix.zeros(ring, 0, 0)
        vmods[v] = FPModule(ring, sum(p.ngens for p in parts), rel, degs)
    maps = {(a, b): block_diag_rm(vmods[b].ring, [_as_ring(m.maps[(a, b)], vmods[b].ring) for m in mods]) for a, b in P.pairs()}
    S = DiagModule(rep, vmods, maps, name=" + ".join(m.name or "?" for m in mods))
    inj, proj = [], []
    offs = {v: 0 for v in P.labels}
    for m in mods:
        im, pm = {}, {}
        for v in P.labels:
            R = vmods[v].ring
            n = vmods[v].ngens
            k = m[v].ngens
            o = offs[v]
            im[v] = RingMatrix(R, [[R.one() if (i == o + j) else R.zero() for j in range(k)] for i in range(n)], n, k)
            pm[v] = RingMatrix(R, [[R.one() if (j == o + i) else R.zero() for j in range(n)] for i in range(k)], k, n)
            offs[v] += k
        inj.append(DiagMorphism(m, S, im))
        proj.append(DiagMorphism(S, m, pm))
    return S, inj, proj


def _as_ring(m: RingMatrix, ring: RingSpec) -> RingMatrix:
    if m.ring == ring:
        return m
    if m.nrows * m.ncols == 0:
        return RingMatrix.zeros(ring, m.nrows, m.ncols)
    return _rho(m.ring, ring).apply_matrix(m)


def morphism_sum(maps: Sequence[DiagMorphism], S: DiagModule, inj: Sequence[DiagMorphism] | None = None) -> DiagMorphism:
    """The map out of a direct sum S given by its components."""
    T = maps[0].target
    out = {}
    for v in S.poset.labels:
        out[v] = hstack_rm(T.ring(v), [_as_ring(f.maps[v], T.ring(v)) for f in maps], T[v].ngens)
    return DiagMorphism(S, T, out)


def cokernel(f: DiagMorphism) -> tuple[DiagModule, DiagMorphism]:
    N = f.target
    mods = {v: fp_cokernel(f.presented(v)) for v in N.poset.labels}
    C = DiagModule(N.rep, mods, dict(N.maps), name=f"coker")
    proj = DiagMorphism(N, C, {v: RingMatrix.identity(N.ring(v), N[v].ngens) for v in N.poset.labels})
    return C, proj


def kernel(f: DiagMorphism) -> tuple[DiagModule, DiagMorphism]:
    M, N = f.source, f.target
    for v in M.poset.labels:
        if M.ring(v) != N.ring(v):
            raise UnsupportedRing("kernels need equal vertex rings on both sides")
    mods, gens = {}, {}
    for v in M.poset.labels:
        K, g = fp_kernel(f.presented(v))
        mods[v] = K
        gens[v] = g
    maps = {}
    for a, b in M.poset.pairs():
        if a == b:
            continue
        img = M.push(a, b, gens[a])
        Rb = M.ring(b)
        if gens[b].ncols == 0 or img.ncols == 0:
            maps[(a, b)] = RingMatrix.zeros(Rb, gens[b].ncols, gens[a].ncols)
            continue
        big = hstack_rm(Rb, [gens[b], M[b].relations], M[b].ngens)
        sol = solve_linear(big, img)
        if sol is None:
            raise InvalidObject("kernel transition could not be solved; is f a morphism?")
        maps[(a, b)] = sol.submatrix(range(gens[b].ncols), range(img.ncols))
    K = DiagModule(M.rep, mods, maps, name="ker")
    return K, DiagMorphism(K, M, gens)


def image(f: DiagMorphism) -> tuple[DiagModule, DiagMorphism]:
    _, p = cokernel(f)
    return kernel(p)


def is_mono(f: DiagMorphism) -> bool:
    return all(f.presented(v).is_injective() for v in f.source.poset.labels)


def is_epi(f: DiagMorphism) -> bool:
    return all(f.presented(v).is_surjective() for v in f.source.poset.labels)


def is_iso(f: DiagMorphism) -> bool:
    return is_mono(f) and is_epi(f)


# -- quasi-coherence ----------------------------------------------------------------------


@dataclass(frozen=True)
class QCReport:
    quasicoherent: bool
    failing_edge: tuple[str, str] | None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.quasicoherent


def base_change_map(M: DiagModule, a: str, b: str) -> PresentedMap:
    """M(a) (x) R(b) -> M(b), m (x) r |-> M(a->b)(m) r, as a presented map."""
    ma, mb = M[a], M[b]
    T = _window_sum(ma.ring, M.rep.ring(b))
    if T is None or T != mb.ring:
        raise UnsupportedRing(f"base change of M({a}) to vertex {b} lands over {T}, not {mb.ring}")
    src = base_change(ma, _rho(ma.ring, T))
    return PresentedMap(src, mb, M.maps[(a, b)])


def is_quasicoherent(M: DiagModule) -> QCReport:
    for a, b in M.poset.pairs():
        if a == b:
            continue
        phi = base_change_map(M, a, b)
        if not phi.is_surjective():
            return QCReport(False, (a, b), "base-change map is not surjective")
        if not phi.is_injective():
            return QCReport(False, (a, b), "base-change map is not injective")
    return QCReport(True, None)


# -- generators and homs ------------------------------------------------------------------


def free_rank_one(ring: RingSpec, degree: int = 0) -> FPModule:
    return FPModule.free(ring, 1, [degree])


def projective_generator(rep: RingRep, i: str) -> DiagModule:
    rep.require_univariate()
    P = rep.poset
    mods = {}
    for v in P.labels:
        mods[v] = free_rank_one(rep.ring(v)) if P.leq(i, v) else zero_fp(rep.ring(v))
    maps = {}
    for a, b in P.pairs():
        R = rep.ring(b)
        if P.leq(i, a):
            maps[(a, b)] = RingMatrix.identity(R, 1)
    return DiagModule(rep, mods, maps, name=f"P_{i}")


def structure_sheaf(rep: RingRep) -> DiagModule:
    rep.require_univariate()
    mods = {v: free_rank_one(rep.ring(v)) for v in rep.poset.labels}
    maps = {(a, b): RingMatrix.identity(rep.ring(b), 1) for a, b in rep.poset.pairs()}
    return DiagModule(rep, mods, maps, name="R")


class GeneratorHom:
    """The bijection Hom(P_i, M) <-> M(i)."""

    def __init__(self, i: str, M: DiagModule):
        self.i = i
        self.module = M
        self.generator = projective_generator(M.rep, i)

    def to_element(self, f: DiagMorphism) -> RingMatrix:
        return f.maps[self.i]

    def from_element(self, v: RingMatrix) -> DiagMorphism:
        M = self.module
        P = M.poset
        maps = {}
        for z in P.labels:
            if P.leq(self.i, z):
                maps[z] = M.push(self.i, z, v)
        return DiagMorphism(self.generator, M, maps)

    def element_basis(self, window: tuple[int, int] | None = None) -> list[RingMatrix]:
        """A Q-basis of M(i), degreewise within the window when infinite."""
        m = self.module[self.i]
        if m.ring.is_field:
            win = (0, 0)
        else:
            if m.degrees is None:
                raise WindowRequired("element bases need graded vertex modules")
            tors, free = m.structure()
            if free and window is None:
                raise WindowRequired("M(i) is infinite-dimensional; supply a degree window")
            if window is None:
                window = _torsion_window(m)
            win = window
        out = []
        for e in range(win[0], win[1] + 1):
            pc = GradedPiece(m, e)
            for c in range(pc.dim):
                col = pc.sect.col(c)
                out.append(RingMatrix.from_columns(m.ring, [pc.vector_to_column(col)], m.ngens))
        return out

    def basis(self, window: tuple[int, int] | None = None) -> list[DiagMorphism]:
        return [self.from_element(v) for v in self.element_basis(window)]


def _torsion_window(m: FPModule) -> tuple[int, int]:
    """A degree window containing every nonzero piece of a graded torsion module."""
    lo = min(m.degrees, default=0)
    hi = max(m.degrees, default=0)
    span = 0
    for j in range(m.relations.ncols):
        for i in range(m.ngens):
            x = m.relations[i, j]
            if x:
                span = max(span, x.max_exp - x.min_exp)
    span = max(span, sum(abs(x.max_exp) + abs(x.min_exp) for r in m.relations.rows for x in r if x))
    return (lo - span, hi + span)


def hom_from_generator(i: str, M: DiagModule) -> GeneratorHom:
    return GeneratorHom(i, M)


def _default_window(M: DiagModule, N: DiagModule, window):
    if window is not None:
        return window
    if all(M.ring(v).is_field and N.ring(v).is_field for v in M.poset.labels):
        return (0, 0)
    raise WindowRequired("hom spaces over polynomial vertex rings need a degree window")


def hom_space(M: DiagModule, N: DiagModule, window: tuple[int, int] | None = None) -> list[DiagMorphism]:
    """A Q-basis of Hom(M, N) (homogeneous maps with degree in the window)."""
    if M.rep != N.rep:
        raise InvalidObject("modules over different ring representations")
    win = _default_window(M, N, window)
    for v in M.poset.labels:
        if not _localizes(M.ring(v), N.ring(v)):
            raise UnsupportedRing(f"cannot map a {M.ring(v)}-module into a {N.ring(v)}-module")
        for X in (M, N):
            if X[v].degrees is None and not X.ring(v).is_field:
                raise WindowRequired("hom spaces need graded vertex presentations")
    out = []
    for d in range(win[0], win[1] + 1):
        out.extend(_hom_degree(M, N, d))
    return out


def _hom_degree(M: DiagModule, N: DiagModule, d: int) -> list[DiagMorphism]:
    P = M.poset
    labels = P.labels
    pieces: dict[tuple[str, int], GradedPiece] = {}

    def piece(v: str, e: int) -> GradedPiece:
        key = (v, e)
        if key not in pieces:
            pieces[key] = GradedPiece(N[v], e)
        return pieces[key]

    src = {v: M[v] if M.ring(v) == N.ring(v) else base_change(M[v], _rho(M.ring(v), N.ring(v))) for v in labels}
    offsets: dict[tuple[str, int], int] = {}
    nvar = 0
    for v in labels:
        for a, deg in enumerate(src[v].grading()):
            offsets[(v, a)] = nvar
            nvar += piece(v, deg + d).dim
    if nvar == 0:
        return []
    eqs: list[list] = []

    def add_block(block_rows: int, terms: list[tuple[int, Mat]]) -> None:
        rows = [[0] * nvar for _ in range(block_rows)]
        for off, m in terms:
            for r in range(m.nrows):
                row = rows[r]
                for c, x in enumerate(m.rows[r]):
                    if x:
                        row[off + c] += x
        eqs.extend(r for r in rows if any(r))

    for v in labels:
        m = src[v]
        rdegs = m.relation_degrees()
        degs = m.grading()
        for j in range(m.relations.ncols):
            if rdegs[j] is None:
                continue
            tp = piece(v, rdegs[j] + d)
            if tp.dim == 0:
                continue
            terms = []
            for a in range(m.ngens):
                rho = m.relations[a, j]
                if rho:
                    sp = piece(v, degs[a] + d)
                    if sp.dim:
                        terms.append((offsets[(v, a)], tp.proj @ _mult_within(rho, sp, tp) @ sp.sect))
            add_block(tp.dim, terms)
    for y, z in P.hasse_edges():
        my, mz = src[y], src[z]
        Nyz = N.maps[(y, z)]
        rho_n = _rho(N.ring(y), N.ring(z))
        Myz = _rho(M.ring(z), N.ring(z)).apply_matrix(M.maps[(y, z)])
        for a, e in enumerate(my.grading()):
            tp = piece(z, e + d)
            if tp.dim == 0:
                continue
            terms = []
            sy = piece(y, e + d)
            if sy.dim:
                terms.append((offsets[(y, a)], tp.proj @ piece_map(Nyz, rho_n, sy, tp) @ sy.sect))
            for k, dk in enumerate(mz.grading()):
                c = Myz[k, a]
                if c:
                    sz = piece(z, dk + d)
                    if sz.dim:
                        terms.append((offsets[(z, k)], -(tp.proj @ _mult_within(c, sz, tp) @ sz.sect)))
            add_block(tp.dim, terms)
    sol = Mat(eqs, len(eqs), nvar).nullspace() if eqs else Mat.identity(nvar)
    out = []
    for s in range(sol.ncols):
        vec = sol.col(s)
        maps = {}
        for v in labels:
            cols = []
            for a, deg in enumerate(src[v].grading()):
                sp = piece(v, deg + d)
                o = offsets[(v, a)]
                y = vec[o : o + sp.dim]
                free = sp.sect @ Mat([[x] for x in y], sp.dim, 1) if sp.dim else Mat.zeros(len(sp.basis), 1)
                cols.append(sp.vector_to_column(free.col(0)) if sp.basis else [N.ring(v).zero()] * N[v].ngens)
            maps[v] = RingMatrix.from_columns(N.ring(v), cols, N[v].ngens)
        out.append(DiagMorphism(M, N, maps))
    return out


# -- projective line -------------------------------------------------------------------------


def p1_twist(n: int, rep: RingRep | None = None) -> DiagModule:
    """O(n): generator degrees 0 at u0 and u01, n at u1; u1 -> u01 is x^n."""
    rep = rep or p1_ringrep()
    L = rep.ring("u01")
    mods = {
        "u0": FPModule.free(rep.ring("u0"), 1, [0]),
        "u1": FPModule.free(rep.ring("u1"), 1, [n]),
        "u01": FPModule.free(L, 1, [0]),
    }
    maps = {
        ("u0", "u01"): RingMatrix.identity(L, 1),
        ("u1", "u01"): RingMatrix(L, [[L.monomial(n)]], 1, 1),
    }
    return DiagModule(rep, mods, maps, name=f"O({n})")


def p1_twist_map(m: int, n: int, coeffs: Sequence, rep: RingRep | None = None) -> DiagMorphism:
    """O(m) -> O(n) given by the homogeneous form sum c_k x^k (0 <= k <= n-m).

    At u0 the generator goes to sum c_k x^k; at u1 to sum c_k x^(k-(n-m)).
    """
    rep = rep or p1_ringrep()
    M, N = p1_twist(m, rep), p1_twist(n, rep)
    d = n - m
    if len(coeffs) != d + 1:
        raise InvalidObject(f"need {d + 1} coefficients for a map O({m}) -> O({n})")
    f0 = rep.ring("u0").element({k: c for k, c in enumerate(coeffs)})
    f1 = rep.ring("u1").element({k - d: c for k, c in enumerate(coeffs)})
    f01 = rep.ring("u01").element({k: c for k, c in enumerate(coeffs)})
    maps = {
        "u0": RingMatrix(f0.ring, [[f0]], 1, 1),
        "u1": RingMatrix(f1.ring, [[f1]], 1, 1),
        "u01": RingMatrix(f01.ring, [[f01]], 1, 1),
    }
    return DiagMorphism(M, N, maps)


def tensor_vertex(a: FPModule, b: FPModule) -> FPModule:
    """Tensor product of presented modules over the same ring."""
    if a.ring != b.ring:
        raise UnsupportedRing("tensor factors over different rings")
    R = a.ring
    Ia = RingMatrix.identity(R, a.ngens)
    Ib = RingMatrix.identity(R, b.ngens)
    from qcmodel.exact_arith import kron_rm

    rel = hstack_rm(R, [kron_rm(a.relations, Ib), kron_rm(Ia, b.relations)], a.ngens * b.ngens)
    degs = None
    if a.degrees is not None and b.degrees is not None:
        degs = tuple(x + y for x in a.degrees for y in b.degrees)
    return FPModule(R, a.ngens * b.ngens, rel, degs)


def tensor_modules(M: DiagModule, N: DiagModule) -> DiagModule:
    """Vertexwise tensor product over R."""
    from qcmodel.exact_arith import kron_rm

    if M.rep != N.rep:
        raise InvalidObject("tensor of modules over different representations")
    mods = {v: tensor_vertex(M[v], N[v]) for v in M.poset.labels}
    maps = {(a, b): kron_rm(M.maps[(a, b)], N.maps[(a, b)]) for a, b in M.poset.pairs()}
    return DiagModule(M.rep, mods, maps, name=f"{M.name}*{N.name}")


def tensor_morphisms(f: DiagMorphism, g: DiagMorphism) -> DiagMorphism:
    from qcmodel.exact_arith import kron_rm

    S = tensor_modules(f.source, g.source)
    T = tensor_modules(f.target, g.target)
    return DiagMorphism(S, T, {v: kron_rm(f.maps[v], g.maps[v]) for v in S.poset.labels})


def is_locally_free_vertex(m: FPModule) -> bool:
    return m.is_free()
