"""Bounded cochain complexes.

Two backends share the sign conventions below:

* complexes of finite-dimensional poset representations, stored as
  representations of the degree grid ``ComplexQuiver(poset, lo, hi)``; every
  homological construction of ``homotopy_algebra`` applies to them directly;
* ``ModuleComplex``: complexes of diagram modules over a ring representation
  (used on the P^1 diagram for tensor products with twists).

Sign rules: the tensor differential on X^i (x) Y^j is d_X (x) 1 + (-1)^i 1 (x) d_Y;
for f in Hom(Y^i, Z^j) the hom differential is d_Z f - (-1)^(j-i) f d_Y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from qcmodel import diagram as dg
from qcmodel import reps
from qcmodel.errors import InvalidObject
from qcmodel.exact_arith import RingMatrix, fp_kernel, hstack_rm, solve_linear
from qcmodel.linalg import Mat, kron
from qcmodel.reps import ComplexQuiver, LinearSystem, PosetQuiver, Rep, RepMap, compose

# -- grids ---------------------------------------------------------------------------------------------


@lru_cache(maxsize=None)
def poset_quiver(poset) -> PosetQuiver:
    return PosetQuiver(poset)


@lru_cache(maxsize=None)
def grid(poset, lo: int, hi: int) -> ComplexQuiver:
    if hi < lo:
        raise ValueError("empty degree window")
    return ComplexQuiver(poset, lo, hi)


@lru_cache(maxsize=None)
def _indices(G: ComplexQuiver) -> tuple[dict, dict]:
    """(hasse arrow index by (a, b, n), differential arrow index by (i, n))."""
    hasse, diff = {}, {}
    for k, ((a, n), (b, m)) in enumerate(G.arrows):
        if n == m:
            hasse[(a, b, n)] = k
        else:
            diff[(a, n)] = k
    return hasse, diff


def degrees(G: ComplexQuiver) -> range:
    return range(G.lo, G.hi + 1)


def component(X: Rep, n: int) -> Rep:
    G = X.quiver
    PQ = poset_quiver(G.poset)
    if not G.lo <= n <= G.hi:
        return reps.zero_rep(PQ)
    hasse, _ = _indices(G)
    dims = {i: X.dims[(i, n)] for i in G.poset.labels}
    mats = {k: X.mats[hasse[(a, b, n)]] for k, (a, b) in enumerate(PQ.arrows)}
    return Rep(PQ, dims, mats)


def differential(X: Rep, n: int) -> RepMap:
    G = X.quiver
    src, tgt = component(X, n), component(X, n + 1)
    if not (G.lo <= n < G.hi):
        return reps.zero_map(src, tgt)
    _, diff = _indices(G)
    return RepMap(src, tgt, {i: X.mats[diff[(i, n)]] for i in G.poset.labels})


def map_component(f: RepMap, n: int) -> RepMap:
    G = f.source.quiver
    src, tgt = component(f.source, n), component(f.target, n)
    if not G.lo <= n <= G.hi:
        return reps.zero_map(src, tgt)
    return RepMap(src, tgt, {i: f.mats[(i, n)] for i in G.poset.labels})


def support(X: Rep) -> tuple[int, int] | None:
    G = X.quiver
    degs = [n for n in degrees(G) if any(X.dims[(i, n)] for i in G.poset.labels)]
    return (min(degs), max(degs)) if degs else None


def assemble(G: ComplexQuiver, comps: Mapping[int, Rep], diffs: Mapping[int, RepMap] | None = None, name: str | None = None) -> Rep:
    """The complex with the given components and differentials (d^n: X^n -> X^(n+1))."""
    diffs = dict(diffs or {})
    hasse, diff = _indices(G)
    dims, mats = {}, {}
    for n, M in comps.items():
        if M.total_dim() == 0:
            continue
        if not G.lo <= n <= G.hi:
            raise InvalidObject(f"component in degree {n} lies outside the window [{G.lo}, {G.hi}]")
        for i in G.poset.labels:
            dims[(i, n)] = M.dims[i]
        for k, (a, b) in enumerate(M.quiver.arrows):
            mats[hasse[(a, b, n)]] = M.mats[k]
    for n, d in diffs.items():
        if d.is_zero():
            continue
        if not (G.lo <= n < G.hi):
            raise InvalidObject(f"differential from degree {n} leaves the window")
        if not d.is_morphism():
            raise InvalidObject(f"differential from degree {n} is not a morphism")
        for i in G.poset.labels:
            mats[diff[(i, n)]] = d.mats[i]
    X = Rep(G, dims, mats, name=name)
    for n in degrees(G):
        if not compose(differential(X, n + 1), differential(X, n)).is_zero():
            raise InvalidObject(f"d o d != 0 at degree {n}")
    return X


def assemble_map(X: Rep, Y: Rep, comps: Mapping[int, RepMap]) -> RepMap:
    G = X.quiver
    mats = {}
    for n, f in comps.items():
        if not G.lo <= n <= G.hi:
            if not f.is_zero():
                raise InvalidObject(f"map component in degree {n} lies outside the window")
            continue
        for i in G.poset.labels:
            mats[(i, n)] = f.mats[i]
    return RepMap(X, Y, mats)


def d_squared_zero(X: Rep) -> bool:
    G = X.quiver
    return all(compose(differential(X, n + 1), differential(X, n)).is_zero() for n in degrees(G))


def is_chain_map(f: RepMap) -> bool:
    return f.is_morphism()


# -- discs, spheres, shifts, cones -------------------------------------------------------------------


def disc(M: Rep, n: int, G: ComplexQuiver) -> Rep:
    """D^n(M): M -1-> M in degrees n, n+1."""
    if M.total_dim() == 0:
        return reps.zero_rep(G)
    return assemble(G, {n: M, n + 1: M}, {n: reps.identity(M)}, name=f"D{n}({M.name})")


def sphere(M: Rep, n: int, G: ComplexQuiver) -> Rep:
    """S^n(M): M in degree n."""
    return assemble(G, {n: M}, name=f"S{n}({M.name})")


def shift(X: Rep, k: int, G: ComplexQuiver | None = None) -> Rep:
    """X[k]^n = X^(n+k) with differential (-1)^k d."""
    G = G or X.quiver
    Gx = X.quiver
    comps = {n - k: component(X, n) for n in degrees(Gx)}
    s = -1 if k % 2 else 1
    diffs = {n - k: differential(X, n).scale(s) for n in degrees(Gx)}
    return assemble(G, comps, diffs, name=f"{X.name}[{k}]")


def shift_map(f: RepMap, k: int, G: ComplexQuiver | None = None) -> RepMap:
    S = shift(f.source, k, G)
    T = shift(f.target, k, G)
    return assemble_map(S, T, {n - k: map_component(f, n) for n in degrees(f.source.quiver)})


@dataclass(frozen=True)
class Cone:
    """cone(f)^n = X^(n+1) + Y^n with d = [[-d_X, 0], [f, d_Y]]."""

    object: Rep
    inclusion: RepMap
    projection: RepMap


def cone(f: RepMap) -> Cone:
    X, Y = f.source, f.target
    G = X.quiver
    comps, diffs, incs, projs, blocks = {}, {}, {}, {}, {}
    for n in degrees(G):
        S, inj, proj = reps.direct_sum([component(X, n + 1), component(Y, n)])
        comps[n] = S
        blocks[n] = (S, inj, proj)
    if component(X, G.lo).total_dim():
        # X^lo would sit in degree lo - 1 of the cone
        raise InvalidObject("cone needs one free degree below the support of the source")
    for n in degrees(G):
        S, inj, proj = blocks[n]
        if n + 1 > G.hi:
            continue
        T, tinj, tproj = blocks[n + 1]
        dX = differential(X, n + 1)
        dY = differential(Y, n)
        fn = map_component(f, n + 1)
        d = compose(tinj[0], compose(dX.scale(-1), proj[0]))
        d = d + compose(tinj[1], compose(fn, proj[0]))
        d = d + compose(tinj[1], compose(dY, proj[1]))
        diffs[n] = d
    C = assemble(G, comps, diffs, name=f"cone")
    inc = assemble_map(Y, C, {n: compose(blocks[n][1][1], reps.identity(component(Y, n))) for n in degrees(G)})
    Xs = shift(X, 1)
    pr = assemble_map(C, Xs, {n: blocks[n][2][0] for n in degrees(G)})
    return Cone(C, inc, pr)


# -- cohomology -------------------------------------------------------------------------------------------


def cycles(X: Rep, n: int) -> tuple[Rep, RepMap]:
    return reps.kernel(differential(X, n))


def cohomology_object(X: Rep, n: int) -> Rep:
    Z, z = cycles(X, n)
    b = reps.solve_factorization(differential(X, n - 1), z, "left")
    H, _ = reps.cokernel(b)
    return H


def cohomology_objects(X: Rep) -> dict[int, Rep]:
    return {n: cohomology_object(X, n) for n in degrees(X.quiver)}


def cohomology_dims(X: Rep) -> dict[int, tuple[int, ...]]:
    """Dimension vector of H^n per degree, by ranks only."""
    G = X.quiver
    out = {}
    for n in degrees(G):
        dn, dp = differential(X, n), differential(X, n - 1)
        out[n] = tuple(X.dims[(i, n)] - dn.mats[i].rank() - dp.mats[i].rank() for i in G.poset.labels)
    return out


def is_acyclic(X: Rep) -> bool:
    return all(not any(v) for v in cohomology_dims(X).values())


def induced_on_cohomology(f: RepMap, n: int) -> RepMap:
    from qcmodel.homotopy_algebra import induced_on_cokernels

    X, Y = f.source, f.target
    ZX, zx = cycles(X, n)
    ZY, zy = cycles(Y, n)
    g = reps.solve_factorization(compose(map_component(f, n), zx), zy, "left")
    bx = reps.solve_factorization(differential(X, n - 1), zx, "left")
    by = reps.solve_factorization(differential(Y, n - 1), zy, "left")
    _, cx = reps.cokernel(bx)
    _, cy = reps.cokernel(by)
    return induced_on_cokernels(g, cx, cy)


def is_quasi_isomorphism(f: RepMap) -> bool:
    """Checked on cohomology objects directly (independent of cones)."""
    return all(reps.is_iso(induced_on_cohomology(f, n)) for n in degrees(f.source.quiver))


def is_in_tilde(pred: Callable[[Rep], bool], X: Rep) -> bool:
    """Acyclic, with every component and every cycle object satisfying pred."""
    if not is_acyclic(X):
        return False
    for n in degrees(X.quiver):
        if not pred(component(X, n)) or not pred(cycles(X, n)[0]):
            return False
    return True


def is_complex_of(pred: Callable[[Rep], bool], X: Rep) -> bool:
    return all(pred(component(X, n)) for n in degrees(X.quiver))


def homotopy_map(s: Mapping[int, RepMap], X: Rep, Y: Rep) -> RepMap:
    """d s + s d for s^n: X^n -> Y^(n-1)."""
    G = X.quiver
    comps = {}
    for n in degrees(G):
        Xn, Yn = component(X, n), component(Y, n)
        out = reps.zero_map(Xn, Yn)
        sn = s.get(n)
        if sn is not None:
            out = out + compose(differential(Y, n - 1), sn)
        sn1 = s.get(n + 1)
        if sn1 is not None:
            out = out + compose(sn1, differential(X, n))
        comps[n] = out
    return assemble_map(X, Y, comps)


def is_null_homotopic(f: RepMap) -> RepMap | None:
    """A chain homotopy s with f = d s + s d (as a map into Y with shifted data), or None."""
    X, Y = f.source, f.target
    G = X.quiver
    ls = LinearSystem()
    var = {}
    for n in degrees(G):
        if n - 1 < G.lo:
            continue
        for i in G.poset.labels:
            var[(i, n)] = ls.unknown(Y.dims[(i, n - 1)], X.dims[(i, n)])
    PQ = poset_quiver(G.poset)
    # s^n must be poset-rep morphisms X^n -> Y^(n-1)
    for n in degrees(G):
        if n - 1 < G.lo:
            continue
        Xn, Yp = component(X, n), component(Y, n - 1)
        for k, (a, b) in enumerate(PQ.arrows):
            if Yp.dims[b] and Xn.dims[a]:
                ls.equation(
                    (Yp.dims[b], Xn.dims[a]),
                    [(Yp.mats[k], var[(a, n)], Mat.identity(Xn.dims[a])), (Mat.identity(Yp.dims[b]).scale(-1), var[(b, n)], Xn.mats[k])],
                )
    for n in degrees(G):
        dYp = differential(Y, n - 1)
        dX = differential(X, n)
        for i in G.poset.labels:
            terms = []
            if (i, n) in var:
                terms.append((dYp.mats[i], var[(i, n)], Mat.identity(X.dims[(i, n)])))
            if (i, n + 1) in var:
                terms.append((Mat.identity(Y.dims[(i, n)]), var[(i, n + 1)], dX.mats[i]))
            shape = (Y.dims[(i, n)], X.dims[(i, n)])
            if terms:
                ls.equation(shape, terms, f.mats[(i, n)])
            elif not f.mats[(i, n)].is_zero():
                return None
    sol = ls.solve()
    if sol is None:
        return None
    s = {}
    for n in degrees(G):
        if n - 1 < G.lo:
            continue
        s[n] = RepMap(component(X, n), component(Y, n - 1), {i: sol[var[(i, n)]] for i in G.poset.labels})
    return s


# -- tensor and internal hom of poset representations -------------------------------------------------


def tensor_reps(M: Rep, N: Rep) -> Rep:
    """Vertexwise tensor product (the tensor over a constant field representation)."""
    Q = M.quiver
    dims = {v: M.dims[v] * N.dims[v] for v in Q.vertices}
    mats = {k: kron(M.mats[k], N.mats[k]) for k in range(len(Q.arrows))}
    return Rep(Q, dims, mats, name=f"{M.name}*{N.name}")


def tensor_rep_maps(f: RepMap, g: RepMap) -> RepMap:
    S = tensor_reps(f.source, g.source)
    T = tensor_reps(f.target, g.target)
    return RepMap(S, T, {v: kron(f.mats[v], g.mats[v]) for v in S.quiver.vertices})


class InternalHom:
    """Hom(M, N)(i) = Hom(M restricted to the up-set of i, N restricted likewise)."""

    def __init__(self, M: Rep, N: Rep):
        Q = M.quiver
        P = Q.poset
        self.M, self.N = M, N
        self.ups = {i: [k for k in P.labels if P.leq(i, k)] for i in P.labels}
        self.basis = {}
        for i in P.labels:
            up = set(self.ups[i])
            ls = LinearSystem()
            var = {k: ls.unknown(N.dims[k], M.dims[k]) for k in self.ups[i]}
            for a_idx, (a, b) in enumerate(Q.arrows):
                if a in up and b in up and N.dims[b] and M.dims[a]:
                    ls.equation(
                        (N.dims[b], M.dims[a]),
                        [(N.mats[a_idx], var[a], Mat.identity(M.dims[a])), (Mat.identity(N.dims[b]).scale(-1), var[b], M.mats[a_idx])],
                    )
            sols = ls.nullspace()
            self.basis[i] = [{k: s[var[k]] for k in self.ups[i]} for s in sols]
        dims = {i: len(self.basis[i]) for i in P.labels}
        mats = {}
        for a_idx, (a, b) in enumerate(Q.arrows):
            cols = [self.coords(b, {k: e[k] for k in self.ups[b]}) for e in self.basis[a]]
            mats[a_idx] = Mat.from_columns(cols, dims[b]) if cols else Mat.zeros(dims[b], 0)
        self.rep = Rep(Q, dims, mats, name=f"Hom({M.name},{N.name})")

    def _flat(self, i, elem: Mapping) -> tuple:
        return tuple(x for k in self.ups[i] for x in elem[k].flat())

    def coords(self, i, elem: Mapping) -> list:
        B = self.basis[i]
        if not B:
            if any(not elem[k].is_zero() for k in self.ups[i]):
                raise InvalidObject("element is not a morphism on the up-set")
            return []
        flat = self._flat(i, elem)
        A = Mat.from_columns([self._flat(i, e) for e in B], len(flat))
        sol = A.solve(Mat([[x] for x in flat], len(flat), 1))
        if sol is None:
            raise InvalidObject("element is not a morphism on the up-set")
        return list(sol.col(0))

    def element(self, i, vec: Sequence) -> dict:
        out = {k: Mat.zeros(self.N.dims[k], self.M.dims[k]) for k in self.ups[i]}
        for c, e in zip(vec, self.basis[i]):
            if c:
                out = {k: out[k] + e[k].scale(c) for k in out}
        return out


@lru_cache(maxsize=4096)
def internal_hom(M: Rep, N: Rep) -> InternalHom:
    return InternalHom(M, N)


def ihom_map(src: InternalHom, tgt: InternalHom, act: Callable[[object, Mat], Mat]) -> RepMap:
    """The map Hom(M, N) -> Hom(M', N') applying act(k, matrix) per vertex k."""
    Q = src.M.quiver
    mats = {}
    for i in Q.vertices:
        cols = [tgt.coords(i, {k: act(k, e[k]) for k in src.ups[i]}) for e in src.basis[i]]
        mats[i] = Mat.from_columns(cols, tgt.rep.dims[i]) if cols else Mat.zeros(tgt.rep.dims[i], 0)
    return RepMap(src.rep, tgt.rep, mats)


# -- tensor and hom complexes ------------------------------------------------------------------------------


def tensor_complexes(X: Rep, Y: Rep, G: ComplexQuiver | None = None) -> Rep:
    GX, GY = X.quiver, Y.quiver
    if G is None:
        G = grid(GX.poset, GX.lo + GY.lo, GX.hi + GY.hi)
    PQ = poset_quiver(GX.poset)
    layout = {}
    for n in range(GX.lo + GY.lo, GX.hi + GY.hi + 1):
        pairs = [(a, n - a) for a in degrees(GX) if GY.lo <= n - a <= GY.hi]
        pairs = [(a, b) for a, b in pairs if component(X, a).total_dim() and component(Y, b).total_dim()]
        parts = [tensor_reps(component(X, a), component(Y, b)) for a, b in pairs]
        S, inj, proj = reps.direct_sum(parts, PQ)
        layout[n] = (pairs, S, inj, proj)
    comps = {n: layout[n][1] for n in layout}
    diffs = {}
    for n in layout:
        if n + 1 not in layout:
            continue
        pairs, S, inj, proj = layout[n]
        tpairs, T, tinj, tproj = layout[n + 1]
        tindex = {p: k for k, p in enumerate(tpairs)}
        d = reps.zero_map(S, T)
        for k, (a, b) in enumerate(pairs):
            Xa, Yb = component(X, a), component(Y, b)
            if (a + 1, b) in tindex:
                blk = tensor_rep_maps(differential(X, a), reps.identity(Yb))
                d = d + compose(tinj[tindex[(a + 1, b)]], compose(blk, proj[k]))
            if (a, b + 1) in tindex:
                blk = tensor_rep_maps(reps.identity(Xa), differential(Y, b)).scale(-1 if a % 2 else 1)
                d = d + compose(tinj[tindex[(a, b + 1)]], compose(blk, proj[k]))
        diffs[n] = d
    comps = {n: c for n, c in comps.items() if c.total_dim()}
    diffs = {n: d for n, d in diffs.items() if not d.is_zero()}
    return assemble(G, comps, diffs, name=f"{X.name}*{Y.name}")


def hom_complexes(Y: Rep, Z: Rep, G: ComplexQuiver | None = None) -> Rep:
    GY, GZ = Y.quiver, Z.quiver
    if G is None:
        G = grid(GY.poset, GZ.lo - GY.hi, GZ.hi - GY.lo)
    PQ = poset_quiver(GY.poset)
    layout = {}
    for n in range(GZ.lo - GY.hi, GZ.hi - GY.lo + 1):
        pairs = [(a, a + n) for a in degrees(GY) if GZ.lo <= a + n <= GZ.hi]
        pairs = [(a, c) for a, c in pairs if component(Y, a).total_dim() and component(Z, c).total_dim()]
        ih = [internal_hom(component(Y, a), component(Z, c)) for a, c in pairs]
        S, inj, proj = reps.direct_sum([h.rep for h in ih], PQ)
        layout[n] = (pairs, ih, S, inj, proj)
    diffs = {}
    for n in layout:
        if n + 1 not in layout:
            continue
        pairs, ih, S, inj, proj = layout[n]
        tpairs, tih, T, tinj, tproj = layout[n + 1]
        tindex = {p: k for k, p in enumerate(tpairs)}
        d = reps.zero_map(S, T)
        sign = -1 if n % 2 else 1
        for k, (a, c) in enumerate(pairs):
            if (a, c + 1) in tindex:
                t = tindex[(a, c + 1)]
                dz = differential(Z, c)
                blk = ihom_map(ih[k], tih[t], lambda v, m, dz=dz: dz.mats[v] @ m)
                d = d + compose(tinj[t], compose(blk, proj[k]))
            if (a - 1, c) in tindex:
                t = tindex[(a - 1, c)]
                dy = differential(Y, a - 1)
                blk = ihom_map(ih[k], tih[t], lambda v, m, dy=dy: (m @ dy.mats[v]).scale(-sign))
                d = d + compose(tinj[t], compose(blk, proj[k]))
        diffs[n] = d
    comps = {n: layout[n][2] for n in layout if layout[n][2].total_dim()}
    diffs = {n: d for n, d in diffs.items() if not d.is_zero()}
    return assemble(G, comps, diffs, name=f"Hom({Y.name},{Z.name})")


def unit_complex(poset, G: ComplexQuiver) -> Rep:
    """S^0 of the constant representation."""
    PQ = poset_quiver(poset)
    R = Rep(PQ, {i: 1 for i in poset.labels}, {k: Mat.identity(1) for k in range(len(PQ.arrows))}, name="R")
    return sphere(R, 0, G)


def pushout_product(f: RepMap, g: RepMap, G: ComplexQuiver | None = None) -> tuple[RepMap, Rep]:
    """f [] g : (B(x)C) +_(A(x)C) (A(x)D) -> B(x)D, with its source."""
    A, B = f.source, f.target
    C, D = g.source, g.target
    GA, GC = A.quiver, C.quiver
    if G is None:
        G = grid(GA.poset, GA.lo + GC.lo, GA.hi + GC.hi)
    AC = tensor_complexes(A, C, G)
    BC = tensor_complexes(B, C, G)
    AD = tensor_complexes(A, D, G)
    BD = tensor_complexes(B, D, G)
    f_C = _tensor_chain_maps(f, reps.identity(C), AC, BC)
    A_g = _tensor_chain_maps(reps.identity(A), g, AC, AD)
    P, leg1, leg2 = reps.pushout(f_C, A_g)
    B_g = _tensor_chain_maps(reps.identity(B), g, BC, BD)
    f_D = _tensor_chain_maps(f, reps.identity(D), AD, BD)
    from qcmodel.homotopy_algebra import induced_from

    h = induced_from([leg1, leg2], [B_g, f_D])
    if h is None:
        raise InvalidObject("pushout-product map does not exist; are f and g chain maps?")
    return h, P


def _tensor_chain_maps(f: RepMap, g: RepMap, S: Rep, T: Rep) -> RepMap:
    """f (x) g between tensor complexes laid out as in tensor_complexes (no signs: degree-0 maps)."""
    X, Y = f.source, g.source
    X2, Y2 = f.target, g.target
    GS = S.quiver
    mats = {}
    for n in degrees(GS):
        spairs = _pairs(X, Y, n)
        tpairs = _pairs(X2, Y2, n)
        Sn, Tn = component(S, n), component(T, n)
        _, sinj, sproj = reps.direct_sum([tensor_reps(component(X, a), component(Y, b)) for a, b in spairs], Sn.quiver)
        _, tinj, tproj = reps.direct_sum([tensor_reps(component(X2, a), component(Y2, b)) for a, b in tpairs], Tn.quiver)
        tindex = {p: k for k, p in enumerate(tpairs)}
        out = reps.zero_map(Sn, Tn)
        for k, p in enumerate(spairs):
            if p in tindex:
                blk = tensor_rep_maps(map_component(f, p[0]), map_component(g, p[1]))
                t = tindex[p]
                out = out + RepMap(Sn, Tn, {v: (tinj[t].mats[v] @ blk.mats[v]) @ sproj[k].mats[v] for v in Sn.quiver.vertices})
        for i in GS.poset.labels:
            mats[(i, n)] = out.mats[i]
    return RepMap(S, T, mats)


def _pairs(X: Rep, Y: Rep, n: int) -> list:
    GX, GY = X.quiver, Y.quiver
    pairs = [(a, n - a) for a in degrees(GX) if GY.lo <= n - a <= GY.hi]
    return [(a, b) for a, b in pairs if component(X, a).total_dim() and component(Y, b).total_dim()]


# -- lifted cotorsion pairs ------------------------------------------------------------------------------------


@dataclass
class LiftedApproximation:
    """0 -> X -> B -> A -> 0 of acyclic complexes, assembled degreewise."""

    inflation: RepMap
    deflation: RepMap
    horseshoes: dict = field(default_factory=dict)

    @property
    def B(self) -> Rep:
        return self.inflation.target

    @property
    def A(self) -> Rep:
        return self.deflation.target


def lift_cotorsion(pair, X: Rep, budget: int | None = None) -> LiftedApproximation:
    """First-type approximation of an acyclic complex X in the lifted pair.

    ``pair`` is a ``homotopy_algebra.CotorsionPair`` on the component category;
    the cycle objects are approximated and the short exact pieces
    0 -> Z^n -> X^n -> Z^(n+1) -> 0 are combined with the horseshoe lemma."""
    from qcmodel import homotopy_algebra as ha

    if not is_acyclic(X):
        raise InvalidObject("lift_cotorsion needs an acyclic complex")
    G = X.quiver
    Z, z = {}, {}
    for n in degrees(G):
        Z[n], z[n] = cycles(X, n)
    approx = {n: pair.preenvelope(Z[n], budget) for n in degrees(G)}
    shoes = {}
    B_comps, A_comps, inf_comps, def_comps = {}, {}, {}, {}
    for n in degrees(G):
        Zn1, zn1 = (Z[n + 1], z[n + 1]) if n + 1 <= G.hi else (reps.zero_rep(z[n].source.quiver), None)
        # X^n -> Z^(n+1), corestriction of the differential
        if zn1 is not None:
            p = reps.solve_factorization(differential(X, n), zn1, "left")
        else:
            p = reps.zero_map(component(X, n), Zn1)
        conf = ha.Conflation(z[n], p)
        if not conf.is_valid():
            raise InvalidObject(f"cycle sequence at degree {n} is not exact")
        right = approx[n + 1] if zn1 is not None else ha.Conflation(reps.identity(Zn1), reps.zero_map(Zn1, Zn1))
        hs = ha.horseshoe(conf, approx[n], right)
        shoes[n] = hs
        B_comps[n] = hs.rows[1].middle
        A_comps[n] = hs.rows[2].middle
        inf_comps[n] = hs.columns[1].i
        def_comps[n] = hs.columns[1].d
    Bd, Ad = {}, {}
    for n in degrees(G):
        if n + 1 > G.hi:
            continue
        Bd[n] = compose(shoes[n + 1].rows[1].i, shoes[n].rows[1].d)
        Ad[n] = compose(shoes[n + 1].rows[2].i, shoes[n].rows[2].d)
    B = assemble(G, B_comps, Bd, name="B")
    A = assemble(G, A_comps, Ad, name="A")
    inf = assemble_map(X, B, inf_comps)
    dfl = assemble_map(B, A, def_comps)
    if not (inf.is_morphism() and dfl.is_morphism()):
        raise InvalidObject("assembled approximation maps are not chain maps")
    return LiftedApproximation(inf, dfl, shoes)


# -- the Ext adjunction ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtAdjunctionReport:
    module_side: int
    complex_side: int
    acyclic: bool

    @property
    def mono_ok(self) -> bool:
        return self.module_side <= self.complex_side

    @property
    def iso_ok(self) -> bool:
        return not self.acyclic or self.module_side == self.complex_side

    @property
    def ok(self) -> bool:
        return self.mono_ok and self.iso_ok


def ext_adjunction_check(X: Rep, Y: Rep, n: int) -> ExtAdjunctionReport:
    """dim Ext^1(X, Z^n(Y)) against dim Ext^1(S^n(X), Y) in complexes."""
    from qcmodel.homotopy_algebra import ext1_dim

    G = Y.quiver
    Zn, _ = cycles(Y, n)
    lhs = ext1_dim(X, Zn)
    rhs = ext1_dim(sphere(X, n, G), Y)
    return ExtAdjunctionReport(lhs, rhs, is_acyclic(Y))


# -- complexes of diagram modules ------------------------------------------------------------------------------


class ModuleComplex:
    """A bounded complex of diagram modules: components[n], diffs[n]: X^n -> X^(n+1)."""

    def __init__(self, rep, components: Mapping[int, dg.DiagModule], diffs: Mapping[int, dg.DiagMorphism] | None = None, name: str | None = None):
        self.rep = rep
        self.components = {n: M for n, M in sorted(components.items())}
        self.diffs = {}
        for n, M in self.components.items():
            d = (diffs or {}).get(n)
            nxt = self.components.get(n + 1)
            if d is None:
                if nxt is not None:
                    d = dg.zero_morphism(M, nxt)
            if d is not None:
                if nxt is None:
                    raise InvalidObject(f"differential from degree {n} has no target component")
                self.diffs[n] = d
        self.name = name

    def degrees(self) -> list[int]:
        return list(self.components)

    def component(self, n: int) -> dg.DiagModule:
        M = self.components.get(n)
        return M if M is not None else dg.zero_module(self.rep)

    def differential(self, n: int) -> dg.DiagMorphism:
        d = self.diffs.get(n)
        return d if d is not None else dg.zero_morphism(self.component(n), self.component(n + 1))

    def d_squared_defects(self) -> list[int]:
        bad = []
        for n in self.components:
            if n + 1 in self.diffs and n in self.diffs:
                if not dg.compose(self.diffs[n + 1], self.diffs[n]).is_zero():
                    bad.append(n)
        return bad

    def validate(self) -> list[str]:
        out = []
        for n, d in self.diffs.items():
            if not d.validate().ok:
                out.append(f"differential {n} is not a morphism")
        out += [f"d o d != 0 at degree {n}" for n in self.d_squared_defects()]
        return out


def module_sphere(M: dg.DiagModule, n: int = 0) -> ModuleComplex:
    return ModuleComplex(M.rep, {n: M}, name=f"S{n}({M.name})")


def module_unit(rep) -> ModuleComplex:
    return module_sphere(dg.structure_sheaf(rep), 0)


def _module_layout(X: ModuleComplex, Y: ModuleComplex) -> dict:
    layout = {}
    for a in X.degrees():
        for b in Y.degrees():
            layout.setdefault(a + b, []).append((a, b))
    return layout


def tensor_module_complexes(X: ModuleComplex, Y: ModuleComplex) -> ModuleComplex:
    layout = _module_layout(X, Y)
    comps, blocks = {}, {}
    for n, pairs in layout.items():
        parts = [dg.tensor_modules(X.component(a), Y.component(b)) for a, b in pairs]
        S, inj, proj = dg.direct_sum(parts)
        comps[n] = S
        blocks[n] = (pairs, S, inj, proj)
    diffs = {}
    for n, (pairs, S, inj, proj) in blocks.items():
        if n + 1 not in blocks:
            continue
        tpairs, T, tinj, tproj = blocks[n + 1]
        tindex = {p: k for k, p in enumerate(tpairs)}
        d = dg.zero_morphism(S, T)
        for k, (a, b) in enumerate(pairs):
            if (a + 1, b) in tindex:
                blk = dg.tensor_morphisms(X.differential(a), dg.identity(Y.component(b)))
                d = d + dg.compose(tinj[tindex[(a + 1, b)]], dg.compose(blk, proj[k]))
            if (a, b + 1) in tindex:
                blk = dg.tensor_morphisms(dg.identity(X.component(a)), Y.differential(b)).scale(-1 if a % 2 else 1)
                d = d + dg.compose(tinj[tindex[(a, b + 1)]], dg.compose(blk, proj[k]))
        diffs[n] = d
    return ModuleComplex(X.rep, comps, diffs, name=f"{X.name}*{Y.name}")


def tensor_module_maps(f: Mapping[int, dg.DiagMorphism], g: Mapping[int, dg.DiagMorphism], X: ModuleComplex, Y: ModuleComplex, X2: ModuleComplex, Y2: ModuleComplex) -> dict:
    """Degreewise f (x) g between tensor complexes laid out as above."""
    S = tensor_module_complexes(X, Y)
    T = tensor_module_complexes(X2, Y2)
    lay_s = _module_layout(X, Y)
    lay_t = _module_layout(X2, Y2)
    out = {}
    for n, pairs in lay_s.items():
        Sn = S.component(n)
        Tn = T.component(n)
        tpairs = lay_t.get(n, [])
        if not tpairs:
            out[n] = dg.zero_morphism(Sn, Tn)
            continue
        _, sinj, sproj = dg.direct_sum([dg.tensor_modules(X.component(a), Y.component(b)) for a, b in pairs])
        _, tinj, tproj = dg.direct_sum([dg.tensor_modules(X2.component(a), Y2.component(b)) for a, b in tpairs])
        tindex = {p: k for k, p in enumerate(tpairs)}
        h = dg.zero_morphism(Sn, Tn)
        for k, (a, b) in enumerate(pairs):
            if (a, b) not in tindex:
                continue
            fa = f.get(a) or dg.zero_morphism(X.component(a), X2.component(a))
            gb = g.get(b) or dg.zero_morphism(Y.component(b), Y2.component(b))
            blk = dg.tensor_morphisms(fa, gb)
            t = tindex[(a, b)]
            mats = {v: tinj[t].maps[v] @ blk.maps[v] @ sproj[k].maps[v] for v in Sn.poset.labels}
            h = h + dg.DiagMorphism(Sn, Tn, mats)
        out[n] = h
    return out


def module_identity_map(X: ModuleComplex) -> dict:
    return {n: dg.identity(M) for n, M in X.components.items()}


@dataclass(frozen=True)
class UnitLawReport:
    isomorphisms: bool
    commutes: bool

    @property
    def ok(self) -> bool:
        return self.isomorphisms and self.commutes


def unit_law_check(X: ModuleComplex) -> UnitLawReport:
    """X (x) S^0(R) -> X, identity on generators, is an isomorphism of complexes."""
    U = module_unit(X.rep)
    T = tensor_module_complexes(X, U)
    isos, comm = True, True
    maps = {}
    for n in X.degrees():
        Tn, Xn = T.component(n), X.component(n)
        m = dg.DiagMorphism(Tn, Xn, {v: RingMatrix.identity(Xn.ring(v), Xn[v].ngens) for v in Xn.poset.labels})
        if not m.validate().ok or not dg.is_iso(m):
            isos = False
        maps[n] = m
    for n in X.degrees():
        if n + 1 in maps:
            lhs = dg.compose(X.differential(n), maps[n])
            rhs = dg.compose(maps[n + 1], T.differential(n))
            if not lhs.equals(rhs):
                comm = False
    return UnitLawReport(isos, comm)


def module_complex_exact_at(X: ModuleComplex, n: int) -> bool:
    """ker d^n == im d^(n-1) at every vertex, over the vertex rings."""
    Xn = X.component(n)
    for v in Xn.poset.labels:
        M = Xn[v]
        if M.ngens == 0:
            continue
        K, gens = fp_kernel(X.differential(n).presented(v))
        if gens.ncols == 0:
            continue
        dp = X.differential(n - 1)
        img = dp.maps[v] if dp.source[v].ngens else RingMatrix.zeros(M.ring, M.ngens, 0)
        span = hstack_rm(M.ring, [img, M.relations], M.ngens)
        if span.ncols == 0:
            if not M.contains(gens):
                return False
            continue
        if solve_linear(span, gens) is None:
            return False
    return True


def module_complex_acyclic(X: ModuleComplex) -> bool:
    return all(module_complex_exact_at(X, n) for n in X.degrees())


@dataclass
class ModulePushoutProduct:
    """f [] g degreewise, with the checks: inflation, cokernel = C (x) D, triviality."""

    inflation: bool
    cokernel_matches: bool
    cokernel_acyclic: bool
    source_components: dict
    maps: dict


def module_pushout_product(
    f: Mapping[int, dg.DiagMorphism], g: Mapping[int, dg.DiagMorphism], A: ModuleComplex, B: ModuleComplex, C: ModuleComplex, D: ModuleComplex
) -> ModulePushoutProduct:
    """f: A -> B and g: C -> D degreewise monomorphisms of complexes of diagram modules."""
    AC = tensor_module_complexes(A, C)
    BC = tensor_module_complexes(B, C)
    AD = tensor_module_complexes(A, D)
    BD = tensor_module_complexes(B, D)
    fC = tensor_module_maps(f, module_identity_map(C), A, C, B, C)
    Ag = tensor_module_maps(module_identity_map(A), g, A, C, A, D)
    Bg = tensor_module_maps(module_identity_map(B), g, B, C, B, D)
    fD = tensor_module_maps(f, module_identity_map(D), A, D, B, D)
    Cf = _module_cokernel_complex(f, A, B)
    Cg = _module_cokernel_complex(g, C, D)
    CD = tensor_module_complexes(Cf, Cg)
    infl, match = True, True
    sources, maps = {}, {}
    for n in BD.degrees():
        BCn, ADn, BDn = BC.component(n), AD.component(n), BD.component(n)
        S, inj, proj = dg.direct_sum([BCn, ADn])
        ACn = AC.component(n)
        a = fC.get(n) or dg.zero_morphism(ACn, BCn)
        b = Ag.get(n) or dg.zero_morphism(ACn, ADn)
        rel = dg.compose(inj[0], a) - dg.compose(inj[1], b)
        P, q = dg.cokernel(rel)
        bg = Bg.get(n) or dg.zero_morphism(BCn, BDn)
        fd = fD.get(n) or dg.zero_morphism(ADn, BDn)
        # the map out of the pushout has the same generator matrices as [Bg | fD]
        h = dg.morphism_sum([bg, fd], S)
        box = dg.DiagMorphism(P, BDn, dict(h.maps))
        if not box.validate().ok or not dg.is_mono(box):
            infl = False
        Q, _ = dg.cokernel(box)
        CDn = CD.component(n)
        canon = dg.DiagMorphism(Q, CDn, {v: RingMatrix.identity(CDn.ring(v), CDn[v].ngens) for v in CDn.poset.labels})
        if Q.modules.keys() != CDn.modules.keys() or any(Q[v].ngens != CDn[v].ngens for v in CDn.poset.labels):
            match = False
        elif not canon.validate().ok or not dg.is_iso(canon):
            match = False
        sources[n] = P
        maps[n] = box
    return ModulePushoutProduct(infl, match, module_complex_acyclic(CD), sources, maps)


def _module_cokernel_complex(f: Mapping[int, dg.DiagMorphism], A: ModuleComplex, B: ModuleComplex) -> ModuleComplex:
    comps = {}
    for n in B.degrees():
        fn = f.get(n) or dg.zero_morphism(A.component(n), B.component(n))
        comps[n], _ = dg.cokernel(fn)
    diffs = {}
    for n in B.degrees():
        if n + 1 in comps:
            d = B.differential(n)
            diffs[n] = dg.DiagMorphism(comps[n], comps[n + 1], dict(d.maps))
    return ModuleComplex(B.rep, comps, diffs, name=f"coker")
