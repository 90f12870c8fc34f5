"""Geometry over finite upper semilattices.

Inverse and direct image functors between QcoR and modules over a single
vertex ring, the Cech resolution of a quasi-coherent module with its
per-vertex contracting homotopy, global sections as a finite limit, Cech
cohomology of twists on the projective line, and locally projective modules.

Vertex modules of a direct image F_x*(N) live over R(x v y), a localization
of R(y); block maps between Cech summands are therefore kept separately
instead of being packed into one matrix per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from qcmodel import diagram as dg
from qcmodel.diagram import DiagModule, DiagMorphism, RingRep, _as_ring, _rho
from qcmodel.errors import CoverInvalid, InvalidObject, UnsupportedRing, WindowRequired
from qcmodel.exact_arith import (
    FPModule,
    GradedPiece,
    PresentedMap,
    RingMatrix,
    RingSpec,
    _window_sum,
    base_change,
    hstack_rm,
    piece_map,
    solve_linear,
)
from qcmodel.linalg import Mat, hstack, vstack

# -- semilattices ------------------------------------------------------------------------------


def _pushout_ring(rx: RingSpec, ry: RingSpec, rz: RingSpec) -> RingSpec | None:
    """R(y) (x)_{R(x)} R(z) when it is again a whitelisted ring."""
    if ry == rx:
        return rz
    if rz == rx:
        return ry
    if rx.is_field:
        # Q[x] (x)_Q Q[x] is a polynomial ring in two variables
        return None
    return _window_sum(ry, rz)


@dataclass(frozen=True)
class SemilatticeRep:
    """A univariate ring representation of an upper semilattice.

    ``certificates[(x, y, z)]`` records whether R(y) (x)_{R(x)} R(z) -> R(y v z)
    is bijective, for every x <= y and x <= z.
    """

    rep: RingRep
    joins: Mapping[tuple[str, str], str]
    certificates: Mapping[tuple[str, str, str], bool]

    @property
    def poset(self):
        return self.rep.poset

    @property
    def continuous(self) -> bool:
        return all(self.certificates.values())

    def failing_triples(self) -> list[tuple[str, str, str]]:
        return [k for k, ok in self.certificates.items() if not ok]

    def join(self, a: str, b: str) -> str:
        return self.joins[(a, b)]

    def join_all(self, elems: Sequence[str]) -> str:
        it = iter(elems)
        acc = next(it)
        for e in it:
            acc = self.joins[(acc, e)]
        return acc


def semilattice_rep(rep: RingRep | SemilatticeRep) -> SemilatticeRep:
    if isinstance(rep, SemilatticeRep):
        return rep
    rep.require_univariate()
    P = rep.poset
    joins = {}
    for a in P.labels:
        for b in P.labels:
            j = P.join(a, b)
            if j is None:
                raise InvalidObject(f"{a} and {b} have no least upper bound")
            joins[(a, b)] = j
    certs = {}
    for x in P.labels:
        for y in P.up(x):
            for z in P.up(x):
                t = _pushout_ring(rep.ring(x), rep.ring(y), rep.ring(z))
                certs[(x, y, z)] = t is not None and t == rep.ring(joins[(y, z)])
    return SemilatticeRep(rep, joins, certs)


# -- inverse and direct images -----------------------------------------------------------------------


def inverse_image(x: str, M: DiagModule) -> FPModule:
    """F_x^*(M) = M(x)."""
    if x not in M.poset.labels:
        raise InvalidObject(f"{x} is not a vertex")
    return M[x]


def direct_image(x: str, N: FPModule, rep: RingRep | SemilatticeRep, name: str | None = None) -> DiagModule:
    """F_x*(N): y |-> N (x) R(x v y), with transitions induced by the ring maps."""
    S = semilattice_rep(rep)
    R = S.rep
    if x not in R.poset.labels:
        raise InvalidObject(f"{x} is not a vertex")
    if N.ring != R.ring(x):
        raise UnsupportedRing(f"direct image from {x} needs a module over {R.ring(x)}, got {N.ring}")
    P = R.poset
    mods = {}
    for y in P.labels:
        w = S.join(x, y)
        mods[y] = N if w == x else base_change(N, _rho(N.ring, R.ring(w)))
    maps = {}
    for a, b in P.pairs():
        maps[(a, b)] = RingMatrix.identity(mods[b].ring, N.ngens)
    D = DiagModule(R, mods, maps, name=name or f"F_{x}*")
    report = dg.validate(D)
    if not report.ok:
        raise InvalidObject(f"direct image failed validation: {report.violations[0]}")
    return D


def direct_image_map(x: str, phi: PresentedMap, rep: RingRep | SemilatticeRep) -> DiagMorphism:
    """F_x*(phi) for an R(x)-linear map phi."""
    S = semilattice_rep(rep)
    A = direct_image(x, phi.source, S)
    B = direct_image(x, phi.target, S)
    maps = {y: _as_ring(phi.matrix, B.ring(y)) for y in S.poset.labels}
    return DiagMorphism(A, B, maps)


def _inverse_on_generators(A: RingMatrix, source: FPModule, target: FPModule) -> RingMatrix:
    """S with A S = 1 modulo target relations, for an isomorphism A: source -> target.

    Both modules are over the same ring; columns of S are source coordinates.
    """
    R = target.ring
    g = target.ngens
    if g == 0:
        return RingMatrix.zeros(R, source.ngens, 0)
    big = hstack_rm(R, [A, target.relations], g)
    sol = solve_linear(big, RingMatrix.identity(R, g))
    if sol is None:
        raise InvalidObject("map is not surjective; no inverse on generators")
    return sol.submatrix(range(source.ngens), range(g))


def _require_qc(M: DiagModule) -> None:
    rep = dg.is_quasicoherent(M)
    if not rep:
        raise InvalidObject(f"module is not quasi-coherent (edge {rep.failing_edge}: {rep.reason})")


def unit_map(x: str, M: DiagModule, rep: SemilatticeRep | None = None) -> DiagMorphism:
    """The unit M -> F_x* F_x^* M of a quasi-coherent M.

    At y it is M(y) -> M(x v y) followed by the inverse of the base-change
    isomorphism M(x) (x) R(x v y) -> M(x v y).
    """
    S = semilattice_rep(rep or M.rep)
    _require_qc(M)
    D = direct_image(x, M[x], S)
    maps = {}
    for y in M.poset.labels:
        w = S.join(x, y)
        T = M.maps[(y, w)]
        beta = M.maps[(x, w)]
        binv = _inverse_on_generators(beta, D[y], M[w])
        maps[y] = binv @ T
    return DiagMorphism(M, D, maps, name=f"unit_{x}")


@dataclass(frozen=True)
class AdjunctionWitness:
    x: str
    unit: DiagMorphism
    counit: PresentedMap
    unit_valid: bool
    counit_valid: bool
    left_triangle: bool
    right_triangle: bool

    @property
    def ok(self) -> bool:
        return self.unit_valid and self.counit_valid and self.left_triangle and self.right_triangle


def adjunction_witness(x: str, M: DiagModule, N: FPModule) -> AdjunctionWitness:
    """Unit on M, counit on N and both triangle identities, checked exactly."""
    S = semilattice_rep(M.rep)
    eta = unit_map(x, M, S)
    # F_x^* F_x* N = N (x) R(x v x) = N, so the counit is the identity on generators
    eps = PresentedMap(N, N, RingMatrix.identity(N.ring, N.ngens))
    # eps_{M(x)} o eta_x = id_{M(x)}
    left = PresentedMap(M[x], M[x], eta.maps[x] - RingMatrix.identity(M.ring(x), M[x].ngens)).is_zero()
    # F_x*(eps_N) o eta_{F_x* N} = id
    D = direct_image(x, N, S)
    eta_D = unit_map(x, D, S)
    back = direct_image_map(x, eps, S)
    right = dg.compose(back, eta_D).equals(dg.identity(D))
    return AdjunctionWitness(
        x=x,
        unit=eta,
        counit=eps,
        unit_valid=eta.validate().ok,
        counit_valid=eps.is_well_defined(),
        left_triangle=left,
        right_triangle=right,
    )


def adjoint_transpose(x: str, M: DiagModule, g: PresentedMap) -> DiagMorphism:
    """The morphism M -> F_x*(N) corresponding to g: M(x) -> N."""
    S = semilattice_rep(M.rep)
    return dg.compose(direct_image_map(x, g, S), unit_map(x, M, S))


# -- Cech resolution --------------------------------------------------------------------------------

Index = tuple[int, ...]


def _block_compose(g: RingMatrix, f: RingMatrix) -> RingMatrix:
    return g @ _as_ring(f, g.ring)


def _sorted_sign(j: int, J: Index) -> tuple[int, Index]:
    """(sign, sorted index) for alpha_{j, J}; sign 0 on a repeated index."""
    if j in J:
        return 0, J
    pos = sum(1 for i in J if i < j)
    return (-1) ** pos, tuple(sorted(J + (j,)))


@dataclass
class CechComplex:
    """0 -> M -> C^0 M -> ... -> C^n M -> 0 with its contracting homotopy.

    ``terms[p]`` lists (index, module) for p = -1..n, term -1 being M itself.
    ``differential[p][(I, J)]`` is the block M_J -> M_I of d: C^(p-1) -> C^p.
    ``homotopy[z][p][(J, I)]`` is the block M_I(z) -> M_J(z) of s: C^p(z) -> C^(p-1)(z).
    """

    module: DiagModule
    cover: tuple[str, ...]
    joins: dict[Index, str]
    terms: dict[int, list[tuple[Index, DiagModule]]]
    differential: dict[int, dict[tuple[Index, Index], DiagMorphism]]
    homotopy: dict[str, dict[int, dict[tuple[Index, Index], RingMatrix]]]
    chosen: dict[str, int] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.cover) - 1

    def term(self, p: int) -> list[tuple[Index, DiagModule]]:
        return self.terms.get(p, [])

    def _summand(self, p: int, I: Index) -> DiagModule:
        return dict(self.terms[p])[I]

    def d_squared_defects(self) -> list[tuple[int, str, Index, Index]]:
        """Every (p, vertex, source, target) where d o d: C^(p-1) -> C^(p+1) is nonzero."""
        out = []
        for p in range(0, self.length + 1):
            for K, TK in self.term(p + 1):
                for I, _ in self.term(p - 1):
                    for z in self.module.poset.labels:
                        acc = None
                        for L, _ in self.term(p):
                            a = self.differential[p + 1].get((K, L))
                            b = self.differential[p].get((L, I))
                            if a is None or b is None:
                                continue
                            c = _block_compose(a.maps[z], b.maps[z])
                            acc = c if acc is None else acc + c
                        if acc is not None and not TK[z].contains(acc):
                            out.append((p, z, I, K))
        return out

    def homotopy_defects(self) -> list[tuple[int, str, Index, Index]]:
        """Every (p, vertex, source, target) where d s + s d differs from the identity."""
        out = []
        n = self.length
        for z in self.module.poset.labels:
            s = self.homotopy[z]
            for p in range(-1, n + 1):
                for K, TK in self.term(p):
                    tz = TK[z]
                    for I, _ in self.term(p):
                        acc = RingMatrix.identity(tz.ring, tz.ngens) if I == K else RingMatrix.zeros(tz.ring, tz.ngens, self._summand(p, I)[z].ngens)
                        acc = -acc
                        for L, _ in self.term(p + 1):
                            a = s.get(p + 1, {}).get((K, L))
                            b = self.differential.get(p + 1, {}).get((L, I))
                            if a is not None and b is not None:
                                acc = acc + _block_compose(a, b.maps[z])
                        for L, _ in self.term(p - 1):
                            a = self.differential.get(p, {}).get((K, L))
                            b = s.get(p, {}).get((L, I))
                            if a is not None and b is not None:
                                acc = acc + _block_compose(a.maps[z], b)
                        if not tz.contains(acc):
                            out.append((p, z, I, K))
        return out

    def verify(self) -> bool:
        return not self.d_squared_defects() and not self.homotopy_defects()


def check_cover(S: SemilatticeRep, cover: Sequence[str]) -> dict[str, int]:
    """For each vertex z the smallest cover index j with x_j <= z; CoverInvalid otherwise."""
    P = S.poset
    if not cover:
        raise CoverInvalid("empty cover")
    for c in cover:
        if c not in P.labels:
            raise CoverInvalid(f"{c} is not a vertex")
    if len(set(cover)) != len(cover):
        raise CoverInvalid("repeated cover element")
    reachable = set()
    for r in range(1, len(cover) + 1):
        for sub in combinations(cover, r):
            reachable.add(S.join_all(sub))
    missing = [z for z in P.labels if z not in reachable]
    if missing:
        raise CoverInvalid(f"vertices {missing} are not joins of cover elements")
    return {z: next(j for j, c in enumerate(cover) if P.leq(c, z)) for z in P.labels}


def cech_resolution(M: DiagModule, cover: Sequence[str]) -> CechComplex:
    """The Cech resolution of a quasi-coherent M for the given cover."""
    S = semilattice_rep(M.rep)
    cover = tuple(cover)
    chosen = check_cover(S, cover)
    _require_qc(M)
    n = len(cover) - 1
    P = M.poset
    joins: dict[Index, str] = {}
    terms: dict[int, list[tuple[Index, DiagModule]]] = {-1: [((), M)]}
    for p in range(n + 1):
        row = []
        for I in combinations(range(n + 1), p + 1):
            x = S.join_all([cover[i] for i in I])
            joins[I] = x
            row.append((I, direct_image(x, M[x], S, name=f"M_{''.join(map(str, I))}")))
        terms[p] = row
    units = {(i,): unit_map(cover[i], M, S) for i in range(n + 1)}

    differential: dict[int, dict[tuple[Index, Index], DiagMorphism]] = {0: {}}
    for (I, D) in terms[0]:
        differential[0][(I, ())] = units[I]
    for p in range(1, n + 1):
        blocks = {}
        src = dict(terms[p - 1])
        for I, D in terms[p]:
            xi = joins[I]
            for k in range(len(I)):
                J = I[:k] + I[k + 1 :]
                T = M.maps[(joins[J], xi)]
                maps = {z: _as_ring(T, D.ring(z)).scale((-1) ** k) for z in P.labels}
                blocks[(I, J)] = DiagMorphism(src[J], D, maps)
        differential[p] = blocks

    homotopy: dict[str, dict[int, dict[tuple[Index, Index], RingMatrix]]] = {}
    for z in P.labels:
        j = chosen[z]
        per: dict[int, dict[tuple[Index, Index], RingMatrix]] = {}
        # s: C^0(z) -> M(z) is the base-change map of the chosen summand
        per[0] = {((), (j,)): M.maps[(cover[j], z)]}
        for p in range(1, n + 1):
            blocks = {}
            tgt = dict(terms[p - 1])
            src = dict(terms[p])
            for J, DJ in terms[p - 1]:
                sign, I = _sorted_sign(j, J)
                if not sign:
                    continue
                # x_j <= z, so M_I(z) and M_J(z) are the same base change; invert the transition
                A = _as_ring(M.maps[(joins[J], joins[I])], src[I].ring(z))
                inv = _inverse_on_generators(A, DJ[z], src[I][z])
                blocks[(J, I)] = inv.scale(sign)
            per[p] = blocks
        homotopy[z] = per
    return CechComplex(M, cover, joins, terms, differential, homotopy, chosen)


# -- global sections and cohomology --------------------------------------------------------------------


def _pieces(N: DiagModule, e: int) -> dict[str, GradedPiece]:
    out = {}
    for v in N.poset.labels:
        m = N[v]
        if m.degrees is None and not m.ring.is_field:
            raise WindowRequired("global sections need graded vertex presentations")
        out[v] = GradedPiece(m, e)
    return out


@dataclass(frozen=True)
class SectionSpace:
    """Degree-e global sections as a subspace of the product of vertex pieces."""

    module: DiagModule
    degree: int
    pieces: Mapping[str, GradedPiece]
    offsets: Mapping[str, int]
    basis: Mat

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def ambient(self) -> int:
        return sum(p.dim for p in self.pieces.values())

    def coordinates(self, v: Mat) -> Mat:
        sol = self.basis.solve(v)
        if sol is None:
            raise InvalidObject("vector is not a global section")
        return sol


def section_space(N: DiagModule, e: int) -> SectionSpace:
    """The equalizer of the diagram N in degree e (the finite limit)."""
    pcs = _pieces(N, e)
    offsets, tot = {}, 0
    for v in N.poset.labels:
        offsets[v] = tot
        tot += pcs[v].dim
    rows: list[list] = []
    for y, z in N.poset.hasse_edges():
        py, pz = pcs[y], pcs[z]
        if pz.dim == 0:
            continue
        A = pz.proj @ piece_map(N.maps[(y, z)], _rho(N.ring(y), N.ring(z)), py, pz) @ py.sect if py.dim else Mat.zeros(pz.dim, 0)
        for r in range(pz.dim):
            row = [0] * tot
            for c in range(py.dim):
                row[offsets[y] + c] += A[r, c]
            row[offsets[z] + r] -= 1
            rows.append(row)
    if tot == 0:
        basis = Mat.zeros(0, 0)
    elif rows:
        basis = Mat(rows, len(rows), tot).nullspace()
    else:
        basis = Mat.identity(tot)
    return SectionSpace(N, e, pcs, offsets, basis)


def sections_map(f: DiagMorphism, src: SectionSpace, tgt: SectionSpace) -> Mat:
    """Matrix of Gamma(f) in degree e with respect to the section bases."""
    if src.dim == 0 or tgt.dim == 0:
        return Mat.zeros(tgt.dim, src.dim)
    M, N = f.source, f.target
    blocks = []
    for v in M.poset.labels:
        ps, pt = src.pieces[v], tgt.pieces[v]
        if pt.dim == 0:
            continue
        if ps.dim == 0:
            part = Mat.zeros(pt.dim, src.dim)
        else:
            A = pt.proj @ piece_map(f.maps[v], _rho(M.ring(v), N.ring(v)), ps, pt) @ ps.sect
            sel = src.basis.submatrix(range(src.offsets[v], src.offsets[v] + ps.dim), range(src.dim))
            part = A @ sel
        blocks.append(part)
    img = vstack(blocks, src.dim) if blocks else Mat.zeros(0, src.dim)
    return tgt.coordinates(img)


def _module_window(M: DiagModule) -> tuple[int, int]:
    degs = []
    for m in M.modules.values():
        if m.degrees is not None:
            degs.extend(m.degrees)
            degs.extend(d for d in m.relation_degrees() if d is not None)
        elif not m.ring.is_field:
            raise WindowRequired("module carries no grading; supply a degree window")
    D = max((abs(d) for d in degs), default=0)
    return (-(D + 2), D + 2)


def _all_fields(M: DiagModule) -> bool:
    return all(M.ring(v).is_field for v in M.poset.labels)


@dataclass(frozen=True)
class GlobalSections:
    window: tuple[int, int]
    dims: Mapping[int, int]

    @property
    def total(self) -> int:
        return sum(self.dims.values())


def global_sections(N: DiagModule, window: tuple[int, int] | None = None) -> GlobalSections:
    """Dimension table of Gamma(N) = lim N, degree by degree."""
    if window is None:
        if not _all_fields(N):
            raise WindowRequired("global sections of a module over polynomial rings need a degree window")
        window = (0, 0)
    return GlobalSections(window, {e: section_space(N, e).dim for e in range(window[0], window[1] + 1)})


def sections_via_hom(N: DiagModule, window: tuple[int, int]) -> GlobalSections:
    """The same table computed as Hom_R(R, N) by the hom solver."""
    R = dg.structure_sheaf(N.rep)
    return GlobalSections(window, {e: len(dg.hom_space(R, N, (e, e))) for e in range(window[0], window[1] + 1)})


@dataclass(frozen=True)
class CohomologyTable:
    window: tuple[int, int]
    per_degree: Mapping[int, tuple[int, ...]]
    warnings: tuple[str, ...] = ()

    @property
    def dims(self) -> tuple[int, ...]:
        rows = list(self.per_degree.values())
        if not rows:
            return ()
        return tuple(sum(r[p] for r in rows) for p in range(len(rows[0])))

    def h(self, p: int) -> int:
        d = self.dims
        return d[p] if 0 <= p < len(d) else 0


def cech_sections_complex(C: CechComplex, e: int) -> tuple[list[Mat], list[int]]:
    """Matrices of Gamma(C^0) -> Gamma(C^1) -> ... in degree e, and the term dimensions."""
    spaces = {p: [(I, section_space(D, e)) for I, D in C.term(p)] for p in range(0, C.length + 1)}
    mats = []
    for p in range(1, C.length + 1):
        src, tgt = spaces[p - 1], spaces[p]
        rows = []
        for I, T in tgt:
            row = []
            for J, Sp in src:
                f = C.differential[p].get((I, J))
                row.append(sections_map(f, Sp, T) if f is not None else Mat.zeros(T.dim, Sp.dim))
            rows.append(hstack(row, T.dim))
        ncols = sum(Sp.dim for _, Sp in src)
        mats.append(vstack(rows, ncols))
    dims = [sum(Sp.dim for _, Sp in spaces[p]) for p in range(0, C.length + 1)]
    return mats, dims


def cohomology(M: DiagModule, cover: Sequence[str], window: tuple[int, int] | None = None) -> CohomologyTable:
    """H^p as cohomology of the global sections of the Cech resolution, per degree."""
    if window is None:
        window = (0, 0) if _all_fields(M) else _module_window(M)
    C = cech_resolution(M, cover)
    per = {}
    for e in range(window[0], window[1] + 1):
        mats, dims = cech_sections_complex(C, e)
        ranks = [m.rank() if m.nrows and m.ncols else 0 for m in mats]
        h = []
        for p, dp in enumerate(dims):
            r_out = ranks[p] if p < len(ranks) else 0
            r_in = ranks[p - 1] if p >= 1 else 0
            h.append(dp - r_out - r_in)
        per[e] = tuple(h)
    warnings = []
    for e in {window[0], window[1]}:
        if any(per[e]):
            warnings.append(f"nonzero cohomology in boundary degree {e}; widen the window")
    return CohomologyTable(window, per, tuple(sorted(warnings)))


# -- projective line --------------------------------------------------------------------------------

P1_COVER = ("u0", "u1")


@dataclass(frozen=True)
class TwistHom:
    m: int
    n: int
    direct: int
    via_sections: int

    @property
    def agree(self) -> bool:
        return self.direct == self.via_sections

    @property
    def dim(self) -> int:
        return self.direct


def hom_twists(m: int, n: int, rep: RingRep | None = None) -> TwistHom:
    """dim Hom(O(m), O(n)), by the constraint solver and as H^0(O(n - m))."""
    rep = rep or dg.p1_ringrep()
    w = abs(m) + abs(n) + 2
    direct = len(dg.hom_space(dg.p1_twist(m, rep), dg.p1_twist(n, rep), (-w, w)))
    via = cohomology(dg.p1_twist(n - m, rep), P1_COVER).h(0)
    return TwistHom(m, n, direct, via)


@dataclass(frozen=True)
class BundleReport:
    locally_projective: bool
    failing_vertex: str | None
    invariant_factors: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.locally_projective


def locally_projective(M: DiagModule) -> BundleReport:
    """Every vertex module free (no non-unit invariant factor)."""
    for v in M.poset.labels:
        m = M[v]
        if not (m.ring.is_field or m.ring.kind == "laurent"):
            raise UnsupportedRing(f"no projectivity test over {m.ring}")
        tors, _ = m.structure()
        if tors:
            return BundleReport(False, v, tuple(str(t) for t in tors))
    return BundleReport(True, None)


def vertexwise_flat(M: DiagModule) -> bool:
    """Torsion-free at every vertex; for finitely generated modules over a PID this is flatness."""
    return all(not M[v].structure()[0] for v in M.poset.labels)


@dataclass(frozen=True)
class GenerationReport:
    generated: bool
    twists: tuple[int, ...]
    maps_used: int
    window: tuple[int, int]

    def __bool__(self) -> bool:
        return self.generated


def twist_generation_check(M: DiagModule, twists: Sequence[int], window: tuple[int, int] | None = None) -> GenerationReport:
    """Whether the canonical map from a sum of twists (over all homs in the window) onto M is epi."""
    if tuple(M.poset.labels) != dg.P1_LABELS:
        raise UnsupportedRing("twist generation is defined on the projective line diagram")
    if window is None:
        lo, hi = _module_window(M)
        w = max(abs(t) for t in twists) if twists else 0
        window = (lo - w, hi + w)
    maps = []
    for t in twists:
        maps.extend(dg.hom_space(dg.p1_twist(t, M.rep), M, window))
    if not maps:
        return GenerationReport(M.is_zero(), tuple(twists), 0, window)
    S, inj, _ = dg.direct_sum([f.source for f in maps])
    total = dg.morphism_sum(maps, S, inj)
    return GenerationReport(dg.is_epi(total), tuple(twists), len(maps), window)
