"""Ext groups, lifting problems, the small object argument and cotorsion pairs.

Everything here works in the abelian category of finite-dimensional
representations of a thin quiver (a finite poset, or the degree grid of
bounded complexes over one), with all short exact sequences as conflations.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from qcmodel import reps
from qcmodel.errors import (
    BudgetExceeded,
    FactorNotInLeftClass,
    GeneratorMissing,
    InvalidObject,
    PairNotHereditary,
    SquareNotCommutative,
)
from qcmodel.linalg import Mat
from qcmodel.reps import (
    Filtration,
    LinearSystem,
    Rep,
    RepMap,
    cokernel,
    complement_basis,
    compose,
    coordinates,
    direct_sum,
    hom_basis,
    identity,
    is_conflation,
    is_epi,
    is_mono,
    kernel,
    projective_cover,
    pushout,
    pullback,
)

DEFAULT_BUDGET = int(os.environ.get("QCMODEL_BUDGET", "32"))
SUBSET_CAP = 8


# -- conflations ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class Conflation:
    """0 -> X -i-> Y -d-> Z -> 0."""

    i: RepMap
    d: RepMap

    @property
    def left(self) -> Rep:
        return self.i.source

    @property
    def middle(self) -> Rep:
        return self.i.target

    @property
    def right(self) -> Rep:
        return self.d.target

    def is_valid(self) -> bool:
        return self.i.target == self.d.source and is_conflation(self.i, self.d)

    def is_split(self) -> bool:
        return reps.solve_factorization(identity(self.right), self.d, "left") is not None


def conflation_from_mono(i: RepMap) -> Conflation:
    _, d = cokernel(i)
    return Conflation(i, d)


def conflation_from_epi(d: RepMap) -> Conflation:
    _, i = kernel(d)
    return Conflation(i, d)


def induced_from(legs: Sequence[RepMap], maps: Sequence[RepMap]) -> RepMap | None:
    """Some h: P -> T with h o legs[k] == maps[k] for all k (legs share target P)."""
    P = legs[0].target
    T = maps[0].target
    ls = LinearSystem()
    Q = P.quiver
    var = {v: ls.unknown(T.dims[v], P.dims[v]) for v in Q.vertices}
    reps._morphism_equations(ls, var, P, T)
    for leg, m in zip(legs, maps):
        for v in Q.vertices:
            ls.equation((T.dims[v], leg.source.dims[v]), [(Mat.identity(T.dims[v]), var[v], leg.mats[v])], m.mats[v])
    sol = ls.solve()
    return None if sol is None else RepMap(P, T, {v: sol[var[v]] for v in Q.vertices})


def induced_into(legs: Sequence[RepMap], maps: Sequence[RepMap]) -> RepMap | None:
    """Some h: S -> Q with legs[k] o h == maps[k] for all k (legs share source Q)."""
    Qo = legs[0].source
    S = maps[0].source
    ls = LinearSystem()
    quiv = Qo.quiver
    var = {v: ls.unknown(Qo.dims[v], S.dims[v]) for v in quiv.vertices}
    reps._morphism_equations(ls, var, S, Qo)
    for leg, m in zip(legs, maps):
        for v in quiv.vertices:
            ls.equation((leg.target.dims[v], S.dims[v]), [(leg.mats[v], var[v], Mat.identity(S.dims[v]))], m.mats[v])
    sol = ls.solve()
    return None if sol is None else RepMap(S, Qo, {v: sol[var[v]] for v in quiv.vertices})


def induced_on_cokernels(f: RepMap, c1: RepMap, c2: RepMap) -> RepMap:
    """Given f: Y -> Y' and cokernel projections c1: Y -> C, c2: Y' -> C', the map C -> C'."""
    h = induced_from([c1], [compose(c2, f)])
    if h is None:
        raise InvalidObject("map does not descend to the cokernels")
    return h


# -- Ext -----------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """0 -> K -k-> P -p-> X -> 0 with P projective (a projective cover)."""

    k: RepMap
    p: RepMap


def presentation(X: Rep) -> Presentation:
    cov = projective_cover(X)
    _, k = kernel(cov.map)
    return Presentation(k, cov.map)


@dataclass
class ExtData:
    """Ext^1(X, Y) as Hom(K, Y) modulo restrictions from Hom(P, Y)."""

    X: Rep
    Y: Rep
    pres: Presentation
    hom_KY: list
    restricted: list
    classes: list

    @property
    def dim(self) -> int:
        return len(self.classes)

    def coordinates(self, phi: RepMap) -> list:
        """Coordinates of the class of phi: K -> Y in the chosen class basis."""
        basis = self.classes + self.restricted
        c = coordinates(phi, basis)
        if c is None:
            raise InvalidObject("map is not a morphism K -> Y")
        return c[: len(self.classes)]

    def conflation(self, phi: RepMap) -> Conflation:
        E, legP, legY = pushout(self.pres.k, phi)
        d = induced_from([legP, legY], [self.pres.p, reps.zero_map(self.Y, self.X)])
        return Conflation(legY, d)

    def witnesses(self) -> list[Conflation]:
        return [self.conflation(phi) for phi in self.classes]

    def class_of(self, c: Conflation) -> list:
        """Coordinates of the extension class of 0 -> Y -> E -> X -> 0."""
        alpha = reps.solve_factorization(self.pres.p, c.d, "left")
        if alpha is None:
            raise InvalidObject("deflation does not admit a lift of the cover")
        phi = reps.solve_factorization(compose(alpha, self.pres.k), c.i, "left")
        return self.coordinates(phi)

    def combination(self, coeffs: Sequence) -> RepMap:
        out = reps.zero_map(self.pres.k.source, self.Y)
        for c, phi in zip(coeffs, self.classes):
            if c:
                out = out + phi.scale(c)
        return out


def ext_data(X: Rep, Y: Rep) -> ExtData:
    pres = presentation(X)
    K = pres.k.source
    hom_KY = hom_basis(K, Y)
    restricted = [compose(psi, pres.k) for psi in hom_basis(pres.p.source, Y)]
    restricted = [r for r in complement_basis(restricted, [])]
    classes = complement_basis(hom_KY, restricted)
    return ExtData(X, Y, pres, hom_KY, restricted, classes)


@dataclass(frozen=True)
class Ext1Result:
    dim: int
    witnesses: tuple


def ext1(X: Rep, Y: Rep, witnesses: bool = True) -> Ext1Result:
    data = ext_data(X, Y)
    return Ext1Result(data.dim, tuple(data.witnesses()) if witnesses else ())


def ext1_dim(X: Rep, Y: Rep) -> int:
    pres = presentation(X)
    K = pres.k.source
    if K.total_dim() == 0 or Y.total_dim() == 0:
        return 0
    hKY = len(hom_basis(K, Y))
    restricted = [compose(psi, pres.k) for psi in hom_basis(pres.p.source, Y)]
    return hKY - reps.span_rank(restricted)


def syzygy(X: Rep, n: int = 1) -> Rep:
    for _ in range(n):
        X = presentation(X).k.source
    return X


def extn(X: Rep, Y: Rep, n: int) -> int:
    if n < 1:
        raise ValueError("extn needs n >= 1")
    return ext1_dim(syzygy(X, n - 1), Y)


def euler_form_chain(x: Sequence[int], y: Sequence[int]) -> int:
    """Euler form of the linearly oriented chain: sum x_i y_i - sum x_i y_(i+1)."""
    return sum(a * b for a, b in zip(x, y)) - sum(x[i] * y[i + 1] for i in range(len(x) - 1))


# -- lifting ----------------------------------------------------------------------------------------------


def lifting(f: RepMap, g: RepMap, u: RepMap, v: RepMap) -> RepMap | None:
    """A diagonal h: B -> X with h o f == u and g o h == v for the square
    A -f-> B, A -u-> X, X -g-> Y, B -v-> Y; None if no filler exists."""
    if compose(g, u) != compose(v, f):
        raise SquareNotCommutative("g o u != v o f")
    B, X = f.target, g.source
    Q = B.quiver
    ls = LinearSystem()
    var = {w: ls.unknown(X.dims[w], B.dims[w]) for w in Q.vertices}
    reps._morphism_equations(ls, var, B, X)
    for w in Q.vertices:
        ls.equation((X.dims[w], f.source.dims[w]), [(Mat.identity(X.dims[w]), var[w], f.mats[w])], u.mats[w])
        ls.equation((g.target.dims[w], B.dims[w]), [(g.mats[w], var[w], Mat.identity(B.dims[w]))], v.mats[w])
    sol = ls.solve()
    return None if sol is None else RepMap(B, X, {w: sol[var[w]] for w in Q.vertices})


@dataclass
class SquareSpace:
    """Commutative squares from i: A -> B to g: Z -> Y, modulo the fillable ones."""

    squares: list
    fillable_rank: int
    obstructions: list

    @property
    def all_fillable(self) -> bool:
        return not self.obstructions


def square_space(i: RepMap, g: RepMap) -> SquareSpace:
    A, B = i.source, i.target
    Z, Y = g.source, g.target
    U = hom_basis(A, Z)
    V = hom_basis(B, Y)
    nu, nv = len(U), len(V)
    if nu + nv == 0:
        return SquareSpace([], 0, [])
    # constraint: sum a_j g U_j - sum b_l V_l i = 0
    cols = [compose(g, x).flat() for x in U] + [(-compose(x, i)).flat() for x in V]
    n = len(cols[0]) if cols else 0
    if n:
        M = Mat.from_columns(cols, n)
        sol = M.nullspace()
    else:
        sol = Mat.identity(nu + nv)
    squares = []
    for c in range(sol.ncols):
        vec = sol.col(c)
        u = reps.combine(U, vec[:nu], A, Z) if nu else reps.zero_map(A, Z)
        v = reps.combine(V, vec[nu:], B, Y) if nv else reps.zero_map(B, Y)
        squares.append((u, v, tuple(vec)))
    fill = []
    for h in hom_basis(B, Z):
        hu = compose(h, i)
        hv = compose(g, h)
        cu = coordinates(hu, U) if nu else []
        cv = coordinates(hv, V) if nv else []
        fill.append(tuple(cu) + tuple(cv))
    width = nu + nv
    base = [list(x) for x in fill]
    r = Mat.from_columns(base, width).rank() if base else 0
    fr = r
    obstructions = []
    for u, v, vec in squares:
        trial = base + [list(vec)]
        r2 = Mat.from_columns(trial, width).rank()
        if r2 > r:
            base, r = trial, r2
            obstructions.append((u, v))
    return SquareSpace(squares, fr, obstructions)


def has_rlp(i: RepMap, g: RepMap) -> bool:
    """i has the left lifting property against g (every square has a filler)."""
    sp = square_space(i, g)
    for u, v, _ in sp.squares:
        if lifting(i, g, u, v) is None:
            return False
    return True


# -- generating inflations ------------------------------------------------------------------------------


@dataclass(frozen=True)
class GenMember:
    """An inflation k: K -> G^I with its deflation p: G^I -> S."""

    k: RepMap
    p: RepMap | None
    label: object = None

    @property
    def source(self) -> Rep:
        return self.k.source

    @property
    def target(self) -> Rep:
        return self.k.target

    def cokernel(self) -> Rep:
        return self.p.target if self.p is not None else cokernel(self.k)[0]


@dataclass(frozen=True)
class GeneratingInflations:
    members: tuple

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @classmethod
    def from_maps(cls, maps: Sequence[RepMap]) -> "GeneratingInflations":
        out = []
        for m in maps:
            if not is_mono(m):
                raise InvalidObject("generating maps must be inflations")
            C, p = cokernel(m)
            out.append(GenMember(m, p, C))
        return cls(tuple(out))

    def validate(self) -> list[str]:
        bad = []
        for n, m in enumerate(self.members):
            if not is_mono(m.k):
                bad.append(f"member {n} is not an inflation")
            if m.p is not None and not (is_epi(m.p) and reps.is_exact_at(m.k, m.p)):
                bad.append(f"member {n} is not a conflation")
        return bad


def default_generator(quiver) -> Rep:
    return direct_sum([reps.projective(quiver, v) for v in quiver.vertices])[0]


def generating_inflations(S: Sequence[Rep], G: Rep | None = None) -> GeneratingInflations:
    """For each s in S and each subset I of a basis of Hom(G, s) with G^I -> s
    surjective, the kernel inflation k_I.  Subsets are enumerated when the
    basis has at most SUBSET_CAP elements; otherwise only the full basis is used."""
    members = []
    for s in S:
        quiver = s.quiver
        if G is None:
            G = default_generator(quiver)
        basis = hom_basis(G, s)
        if not basis:
            if s.total_dim() == 0:
                Z = reps.zero_rep(quiver)
                members.append(GenMember(identity(Z), reps.zero_map(Z, s), s))
            continue
        subsets = []
        if len(basis) <= SUBSET_CAP:
            for r in range(1, len(basis) + 1):
                subsets.extend(combinations(range(len(basis)), r))
        else:
            subsets = [tuple(range(len(basis)))]
        for I in subsets:
            GI, _, _ = direct_sum([G] * len(I))
            p = reps.hstack_maps([basis[j] for j in I], GI)
            if not is_epi(p):
                continue
            _, k = kernel(p)
            members.append(GenMember(k, p, s))
    return GeneratingInflations(tuple(members))


def presentation_inflations(S: Sequence[Rep]) -> GeneratingInflations:
    """One member per s: the kernel of a projective cover of s."""
    out = []
    for s in S:
        pr = presentation(s)
        out.append(GenMember(pr.k, pr.p, s))
    return GeneratingInflations(tuple(out))


# -- the small object argument ----------------------------------------------------------------------------


@dataclass(frozen=True)
class CellStep:
    """One pushout: cells sum(A_c) -> sum(B_c) attached to Z along u, giving Z'."""

    members: tuple
    attach: tuple
    bottoms: tuple
    cell_map: RepMap
    attach_map: RepMap
    new_object: Rep
    inclusion: RepMap
    cell_leg: RepMap


@dataclass
class ICellRecord:
    source_map: RepMap
    generators: GeneratingInflations
    steps: list = field(default_factory=list)

    @property
    def start(self) -> Rep:
        return self.source_map.target

    def composite(self) -> RepMap:
        f = self.source_map
        for st in self.steps:
            f = compose(st.inclusion, f)
        return f

    def object(self) -> Rep:
        return self.steps[-1].new_object if self.steps else self.start

    def replay(self) -> bool:
        """Recompute every pushout from the recorded attaching data and compare."""
        Z = self.start
        for st in self.steps:
            if st.attach_map.target != Z:
                return False
            P, leg_b, leg_z = pushout(st.cell_map, st.attach_map)
            if P != st.new_object or leg_z != st.inclusion or leg_b != st.cell_leg:
                return False
            Z = P
        return True


def _attach(Z: Rep, cells: Sequence[tuple[GenMember, RepMap]]) -> tuple:
    As = [m.source for m, _ in cells]
    Bs = [m.target for m, _ in cells]
    SA, injA, _ = direct_sum(As, Z.quiver)
    SB, _, _ = direct_sum(Bs, Z.quiver)
    cell_map = reps.direct_sum_maps([m.k for m, _ in cells])
    attach = reps.hstack_maps([u for _, u in cells], SA)
    P, leg_b, leg_z = pushout(cell_map, attach)
    return cell_map, attach, P, leg_b, leg_z


def small_object_factorize(
    I: GeneratingInflations, h: RepMap, budget: int | None = None
) -> tuple[ICellRecord, RepMap]:
    """Factor h = g o f with f a finite relative I-cell complex and g having
    the right lifting property against every member of I."""
    budget = DEFAULT_BUDGET if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be at least 1")
    X, Y = h.source, h.target
    record = ICellRecord(identity(X), I)
    Z, g = X, h
    for _ in range(budget + 1):
        cells, vs = [], []
        for n, m in enumerate(I.members):
            sp = square_space(m.k, g)
            for u, v in sp.obstructions:
                cells.append((n, m, u))
                vs.append(v)
        if not cells:
            return record, g
        if len(record.steps) >= budget:
            raise BudgetExceeded(f"small object argument did not stabilize in {budget} steps", partial=(record, g))
        cell_map, attach, P, leg_b, leg_z = _attach(Z, [(m, u) for _, m, u in cells])
        SB = cell_map.target
        vmap = reps.hstack_maps(vs, SB)
        g_new = induced_from([leg_z, leg_b], [g, vmap])
        if g_new is None:
            raise InvalidObject("pushout does not carry the induced map")
        record.steps.append(
            CellStep(
                members=tuple(n for n, _, _ in cells),
                attach=tuple(u for _, _, u in cells),
                bottoms=tuple(vs),
                cell_map=cell_map,
                attach_map=attach,
                new_object=P,
                inclusion=leg_z,
                cell_leg=leg_b,
            )
        )
        Z, g = P, g_new
    raise BudgetExceeded("unreachable", partial=(record, g))  # pragma: no cover


def verify_rlp(I: GeneratingInflations, g: RepMap) -> bool:
    return all(has_rlp(m.k, g) for m in I.members)


def image_subobject(f: RepMap) -> RepMap:
    """The inclusion of the image of f into its target."""
    _, inc = reps.image(f)
    return inc


def filtration_from_subobjects(X: Rep, monos: Sequence[RepMap], labels: Sequence[Rep]) -> Filtration:
    """Filtration from an increasing chain of subobjects m_k: X_k -> X (last one iso)."""
    objs = [m.source for m in monos]
    steps = []
    for a, b in zip(monos, monos[1:]):
        s = reps.solve_factorization(a, b, "left")
        if s is None:
            raise InvalidObject("subobjects are not nested")
        steps.append(s)
    return reps.filtration_from_chain(objs, steps, labels)


def cell_filtration(record: ICellRecord) -> tuple[Rep, RepMap, Filtration]:
    """The cokernel of the composite inflation, filtered cell by cell."""
    f = record.composite()
    C, q = cokernel(f)
    Q = C.quiver
    monos = [reps.RepMap(reps.zero_rep(Q), C)]
    labels = []
    Zfinal_maps = []
    # maps from each intermediate object to the final one
    tail = identity(record.object())
    for st in reversed(record.steps):
        Zfinal_maps.append(tail)
        tail = compose(tail, st.inclusion)
    Zfinal_maps.reverse()
    for st, to_final in zip(record.steps, Zfinal_maps):
        cells = st.cell_map
        # split the cell leg by summand
        Bs = [record.generators.members[n].target for n in st.members]
        SB, injB, _ = direct_sum(Bs, Q)
        prev = compose(q, compose(to_final, st.inclusion))
        pieces = [prev]
        for c, n in enumerate(st.members):
            leg = compose(q, compose(to_final, compose(st.cell_leg, injB[c])))
            pieces.append(leg)
            SS, _, _ = direct_sum([p.source for p in pieces], Q)
            joint = reps.hstack_maps(pieces, SS)
            monos.append(image_subobject(joint))
            labels.append(record.generators.members[n].cokernel())
    if not record.steps:
        return C, q, Filtration((C,), (), (), ())
    return C, q, filtration_from_subobjects(C, monos, labels)


# -- approximations ------------------------------------------------------------------------------------------


@dataclass
class Approximations:
    """0 -> X -> B_X -> A_X -> 0 and 0 -> B^X -> A^X -> X -> 0."""

    first: Conflation
    first_filtration: Filtration
    second: Conflation
    second_filtration: Filtration
    record: ICellRecord


def check_generator(S: Sequence[Rep], quiver) -> None:
    for v in quiver.vertices:
        P = reps.projective(quiver, v)
        if reps.find_filtration(P, S) is None:
            raise GeneratorMissing(f"projective at {v} is not filtered by the given set")


def special_preenvelope(S: Sequence[Rep], X: Rep, budget: int | None = None) -> tuple[Conflation, Filtration, ICellRecord]:
    """0 -> X -> B -> A -> 0 with Ext^1(S, B) = 0 and A filtered by S."""
    I = presentation_inflations([s for s in S if s.total_dim()])
    Z0 = reps.zero_rep(X.quiver)
    record, g = small_object_factorize(I, RepMap(X, Z0), budget)
    f = record.composite()
    C, q, filt = cell_filtration(record)
    return Conflation(f, q), filt, record


def special_precover(S: Sequence[Rep], X: Rep, budget: int | None = None) -> tuple[Conflation, Filtration]:
    """0 -> B -> A -> X -> 0 by pushing a projective presentation along the
    preenvelope of its syzygy."""
    pres = presentation(X)
    K = pres.k.source
    conf_K, filt_K, _ = special_preenvelope(S, K, budget)
    A, leg_P, leg_B = pushout(pres.k, conf_K.i)
    d = induced_from([leg_P, leg_B], [pres.p, reps.zero_map(conf_K.middle, X)])
    second = Conflation(leg_B, d)
    # filtration: P first (filtered by S), then the preimage of A_K's filtration
    P = pres.p.source
    fP = reps.find_filtration(P, S)
    if fP is None:
        raise GeneratorMissing("projective cover is not filtered by the given set")
    # A -> A_K: induced from P -> 0 ... the map B_K -> A_K on the B leg, zero on P
    to_AK = induced_from([leg_P, leg_B], [reps.zero_map(P, conf_K.right), conf_K.d])
    Q = X.quiver
    monos, labels = [], []
    # subobjects of P pushed into A
    incs_P = _filtration_monos(fP)
    for m in incs_P:
        monos.append(image_subobject(compose(leg_P, m)))
    labels.extend(fP.labels)
    for m in _filtration_monos(filt_K)[1:]:
        Qb, pa, pb = pullback(to_AK, m)
        monos.append(image_subobject(pa))
    labels.extend(filt_K.labels)
    filt = filtration_from_subobjects(A, monos, labels)
    return second, filt


def _filtration_monos(F: Filtration) -> list[RepMap]:
    """Inclusions of every filtration stage into the top."""
    top = F.top
    out = []
    n = len(F.objects)
    for k in range(n):
        m = identity(F.objects[k])
        for st in F.steps[k:]:
            m = compose(st, m)
        out.append(m)
    return out


def approximation_sequences(S: Sequence[Rep], X: Rep, budget: int | None = None, check: bool = True) -> Approximations:
    if check:
        check_generator(S, X.quiver)
    first, f1, record = special_preenvelope(S, X, budget)
    second, f2 = special_precover(S, X, budget)
    return Approximations(first, f1, second, f2, record)


# -- cotorsion pairs -----------------------------------------------------------------------------------------


@dataclass
class PairReport:
    orthogonal: bool
    left_maximal: bool
    right_maximal: bool
    orthogonality_failures: list
    left_missing: list
    right_missing: list
    hereditary: bool | None = None
    ext2_failures: list = field(default_factory=list)
    note: str = "checked within the supplied universe only"

    @property
    def ok(self) -> bool:
        return self.orthogonal and self.left_maximal and self.right_maximal

    def __bool__(self) -> bool:
        return self.ok


def _member(obj: Rep, cls) -> bool:
    if callable(cls):
        return bool(cls(obj))
    return any(reps.find_isomorphism(obj, c) is not None for c in cls)


def is_cotorsion_pair(A, B, universe: Sequence[Rep]) -> PairReport:
    """Mutual Ext^1-orthogonality, and maximality of both classes within the universe.

    A and B may be lists (compared up to isomorphism) or predicates."""
    Aobj = [u for u in universe if _member(u, A)]
    Bobj = [u for u in universe if _member(u, B)]
    fails = [(a, b) for a in Aobj for b in Bobj if ext1_dim(a, b)]
    left_missing = []
    for u in universe:
        if u in Aobj:
            continue
        if all(ext1_dim(u, b) == 0 for b in Bobj):
            left_missing.append(u)
    right_missing = []
    for u in universe:
        if u in Bobj:
            continue
        if all(ext1_dim(a, u) == 0 for a in Aobj):
            right_missing.append(u)
    return PairReport(not fails, not left_missing, not right_missing, fails, left_missing, right_missing)


def is_hereditary(A, B, universe: Sequence[Rep]) -> PairReport:
    rep = is_cotorsion_pair(A, B, universe)
    Aobj = [u for u in universe if _member(u, A)]
    Bobj = [u for u in universe if _member(u, B)]
    e2 = [(a, b) for a in Aobj for b in Bobj if extn(a, b, 2)]
    rep.hereditary = rep.ok and not e2
    rep.ext2_failures = e2
    return rep


def eklof_check(B: Sequence[Rep], filt: Filtration) -> bool:
    for k, lab in enumerate(filt.labels):
        for b in B:
            if ext1_dim(lab, b):
                raise FactorNotInLeftClass(f"factor {k} has Ext^1 with a member of B")
    return all(ext1_dim(filt.top, b) == 0 for b in B)


# -- horseshoe --------------------------------------------------------------------------------------------------


@dataclass
class Horseshoe:
    """Rows: the conflation, the B-row, the A-row; columns: approximations."""

    rows: tuple
    columns: tuple

    def validate(self, in_A: Callable[[Rep], bool] | None = None, in_B: Callable[[Rep], bool] | None = None) -> list[str]:
        out = []
        for n, c in enumerate(self.rows):
            if not c.is_valid():
                out.append(f"row {n} is not a conflation")
        for n, c in enumerate(self.columns):
            if not c.is_valid():
                out.append(f"column {n} is not a conflation")
        top, mid, bot = self.rows
        cx, cy, cz = self.columns
        squares = [
            (compose(mid.i, cx.i), compose(cy.i, top.i)),
            (compose(mid.d, cy.i), compose(cz.i, top.d)),
            (compose(bot.i, cx.d), compose(cy.d, mid.i)),
            (compose(bot.d, cy.d), compose(cz.d, mid.d)),
        ]
        for n, (a, b) in enumerate(squares):
            if a != b:
                out.append(f"square {n} does not commute")
        if in_B is not None and not in_B(cy.middle):
            out.append("middle B object is not in the right class")
        if in_A is not None and not in_A(cy.right):
            out.append("middle A object is not in the left class")
        return out


def horseshoe(conf: Conflation, approx_x: Conflation, approx_z: Conflation) -> Horseshoe:
    X, Y, Z = conf.left, conf.middle, conf.right
    BX, AX = approx_x.middle, approx_x.right
    BZ, AZ = approx_z.middle, approx_z.right
    # E: push the conflation out along X -> B_X
    E, e_y, e_b = pushout(conf.i, approx_x.i)
    e_z = induced_from([e_y, e_b], [conf.d, reps.zero_map(BX, Z)])
    xi_conf = Conflation(e_b, e_z)
    dZ = ext_data(Z, BX)
    xi = dZ.class_of(xi_conf)
    dBZ = ext_data(BZ, BX)
    images = []
    for phi in dBZ.classes:
        c = dBZ.conflation(phi)
        # pull back along Z -> B_Z
        Pb, pa, pz = pullback(c.d, approx_z.i)
        i_new = induced_into([pa, pz], [c.i, reps.zero_map(BX, Z)])
        images.append(dZ.class_of(Conflation(i_new, pz)))
    if dZ.dim:
        A = Mat.from_columns(images, dZ.dim) if images else Mat.zeros(dZ.dim, 0)
        sol = A.solve(Mat([[x] for x in xi], dZ.dim, 1))
        if sol is None:
            raise PairNotHereditary(f"extension class does not lift; Ext^2(A_Z, B_X) = {extn(AZ, BX, 2)}")
        lam = sol.col(0)
    else:
        lam = [0] * dBZ.dim
    mid_conf = dBZ.conflation(dBZ.combination(lam))
    BY = mid_conf.middle
    m = _solve_middle(E, e_b, e_z, mid_conf, approx_z.i)
    if m is None:
        raise PairNotHereditary("could not realize the lifted extension on the middle objects")
    iy = compose(m, e_y)
    AY, qy = cokernel(iy)
    col_y = Conflation(iy, qy)
    a_row_i = induced_on_cokernels(mid_conf.i, approx_x.d, qy)
    a_row_d = induced_on_cokernels(mid_conf.d, qy, approx_z.d)
    rows = (conf, mid_conf, Conflation(a_row_i, a_row_d))
    cols = (approx_x, col_y, approx_z)
    return Horseshoe(rows, cols)


def _solve_middle(E: Rep, e_b: RepMap, e_z: RepMap, mid: Conflation, cz: RepMap) -> RepMap | None:
    """m: E -> B_Y with m o e_b == mid.i and mid.d o m == cz o e_z."""
    BY = mid.middle
    Q = E.quiver
    ls = LinearSystem()
    var = {v: ls.unknown(BY.dims[v], E.dims[v]) for v in Q.vertices}
    reps._morphism_equations(ls, var, E, BY)
    rhs2 = compose(cz, e_z)
    for v in Q.vertices:
        ls.equation((BY.dims[v], e_b.source.dims[v]), [(Mat.identity(BY.dims[v]), var[v], e_b.mats[v])], mid.i.mats[v])
        ls.equation((mid.d.target.dims[v], E.dims[v]), [(mid.d.mats[v], var[v], Mat.identity(E.dims[v]))], rhs2.mats[v])
    sol = ls.solve()
    return None if sol is None else RepMap(E, BY, {v: sol[var[v]] for v in Q.vertices})


# -- WFS <-> cotorsion pair ----------------------------------------------------------------------------------------


def inflations_with_cokernel_in(A: Sequence[Rep], universe: Sequence[Rep]) -> list[RepMap]:
    """Sample of the left WFS class: 0 -> a and the Ext witnesses u -> E with cokernel a."""
    out = []
    for a in A:
        Z = reps.zero_rep(a.quiver)
        out.append(RepMap(Z, a))
        for u in universe:
            for c in ext1(a, u).witnesses:
                out.append(c.i)
    return out


def deflations_with_kernel_in(B: Sequence[Rep], universe: Sequence[Rep]) -> list[RepMap]:
    """Sample of the right WFS class: b -> 0 and the Ext witnesses E -> u with kernel b."""
    out = []
    for b in B:
        Z = reps.zero_rep(b.quiver)
        out.append(RepMap(b, Z))
        for u in universe:
            for c in ext1(u, b).witnesses:
                out.append(c.d)
    return out


def recover_left_class(right_maps: Sequence[RepMap], universe: Sequence[Rep]) -> list[Rep]:
    """Objects u with 0 -> u lifting against every sampled right map."""
    out = []
    for u in universe:
        i = RepMap(reps.zero_rep(u.quiver), u)
        if all(has_rlp(i, g) for g in right_maps):
            out.append(u)
    return out


def recover_right_class(left_maps: Sequence[RepMap], universe: Sequence[Rep]) -> list[Rep]:
    """Objects u with u -> 0 having the right lifting property against every sampled left map."""
    out = []
    for u in universe:
        g = RepMap(u, reps.zero_rep(u.quiver))
        if all(has_rlp(i, g) for i in left_maps):
            out.append(u)
    return out


# -- cotorsion pairs generated by a set --------------------------------------------------------------------


@dataclass
class CotorsionPair:
    """The pair generated by a finite set S: right class S-perp, left class its left orthogonal.

    ``in_left`` and ``in_right`` are decision procedures for the two classes;
    ``left_generators`` (optional) are used for second-type approximations."""

    S: tuple
    in_left: Callable[[Rep], bool]
    in_right: Callable[[Rep], bool]
    name: str = "pair"

    def preenvelope(self, X: Rep, budget: int | None = None) -> Conflation:
        """0 -> X -> B -> A -> 0 with B in the right class and A S-filtered."""
        if self.in_right(X):
            return Conflation(identity(X), reps.zero_map(X, reps.zero_rep(X.quiver)))
        conf, _, _ = special_preenvelope(self.S, X, budget)
        return conf

    def precover(self, X: Rep, budget: int | None = None) -> Conflation:
        """0 -> B -> A -> X -> 0 with A in the left class and B in the right class."""
        if self.in_left(X):
            return Conflation(reps.zero_map(reps.zero_rep(X.quiver), X), identity(X))
        conf, _ = special_precover(self.S, X, budget)
        return conf


def right_orthogonal(S: Sequence[Rep]) -> Callable[[Rep], bool]:
    return lambda X: all(ext1_dim(s, X) == 0 for s in S)


def projective_pair(quiver) -> CotorsionPair:
    """(projectives, all)."""
    S = tuple(reps.projective(quiver, v) for v in quiver.vertices)
    return CotorsionPair(S, reps.is_projective, lambda X: True, "proj")


def injective_pair(quiver) -> CotorsionPair:
    """(all, injectives), generated by the simples."""
    S = tuple(reps.simple(quiver, v) for v in quiver.vertices)
    return CotorsionPair(S, lambda X: True, reps.is_injective, "inj")
