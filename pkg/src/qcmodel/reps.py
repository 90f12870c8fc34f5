"""Finite-dimensional representations of thin quivers over Q.

Two quivers are used: the Hasse quiver of a finite poset (representations
of the poset with the constant field) and the degree grid of bounded
complexes of such representations.  Both are "thin": between two vertices
there is at most one nonzero path class, which is what makes the
projectives and injectives below one-dimensional at every vertex.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping, Sequence

from qcmodel.errors import InvalidObject
from qcmodel.linalg import (
    Mat,
    block_diag,
    column_basis,
    complement_coordinates,
    hstack,
    q,
    rref_rows,
    vstack,
)

Vertex = Hashable


# -- quivers ---------------------------------------------------------------------------------


class Quiver:
    """A thin quiver with relations, described by its arrows and reachability."""

    vertices: tuple
    arrows: tuple

    def __init__(self, vertices: Sequence[Vertex], arrows: Sequence[tuple[Vertex, Vertex]]):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.out_arrows: dict = {v: [] for v in self.vertices}
        self.in_arrows: dict = {v: [] for v in self.vertices}
        for k, (s, t) in enumerate(self.arrows):
            self.out_arrows[s].append(k)
            self.in_arrows[t].append(k)
        self._paths: dict = {}

    def reach(self, v: Vertex, w: Vertex) -> bool:
        raise NotImplementedError

    def path(self, v: Vertex, w: Vertex) -> list[int]:
        """A representative arrow sequence from v to w (empty for v == w)."""
        key = (v, w)
        if key in self._paths:
            return self._paths[key]
        if not self.reach(v, w):
            raise InvalidObject(f"no nonzero path {v} -> {w}")
        prev = {v: None}
        dq = deque([v])
        while dq:
            u = dq.popleft()
            if u == w:
                break
            for k in self.out_arrows[u]:
                t = self.arrows[k][1]
                if t not in prev and self.reach(t, w):
                    prev[t] = (u, k)
                    dq.append(t)
        seq = []
        u = w
        while prev[u] is not None:
            u0, k = prev[u]
            seq.append(k)
            u = u0
        seq.reverse()
        self._paths[key] = seq
        return seq

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self):
        return (self.vertices, self.arrows)


class PosetQuiver(Quiver):
    def __init__(self, poset):
        self.poset = poset
        super().__init__(poset.labels, poset.hasse_edges())

    def reach(self, v, w) -> bool:
        return self.poset.leq(v, w)

    def key(self):
        return ("poset", self.poset)


class ComplexQuiver(Quiver):
    """Vertices (i, n) for poset elements i and degrees lo <= n <= hi.

    Arrows are the Hasse arrows inside each degree followed by the
    differentials (i, n) -> (i, n + 1).  Relations: squares commute and
    consecutive differentials compose to zero.
    """

    def __init__(self, poset, lo: int, hi: int):
        self.poset = poset
        self.lo = lo
        self.hi = hi
        verts = [(i, n) for n in range(lo, hi + 1) for i in poset.labels]
        arrows = [((a, n), (b, n)) for n in range(lo, hi + 1) for a, b in poset.hasse_edges()]
        arrows += [((i, n), (i, n + 1)) for n in range(lo, hi) for i in poset.labels]
        super().__init__(verts, arrows)
        self.diff_arrows = {(i, n): k for k, ((i, n), (j, m)) in enumerate(self.arrows) if m == n + 1}

    def reach(self, v, w) -> bool:
        (i, n), (j, m) = v, w
        return self.poset.leq(i, j) and m - n in (0, 1)

    def key(self):
        return ("complex", self.poset, self.lo, self.hi)


# -- representations --------------------------------------------------------------------------


class Rep:
    """A representation: a vector space Q^d(v) per vertex and a matrix per arrow."""

    __slots__ = ("quiver", "dims", "mats", "name", "_hash")

    def __init__(self, quiver: Quiver, dims: Mapping, mats: Mapping[int, Mat] | None = None, name: str | None = None):
        self.quiver = quiver
        self.dims = MappingProxyType({v: int(dims.get(v, 0)) for v in quiver.vertices})
        mats = dict(mats or {})
        full = {}
        for k, (s, t) in enumerate(quiver.arrows):
            m = mats.get(k)
            if m is None:
                m = Mat.zeros(self.dims[t], self.dims[s])
            if m.shape != (self.dims[t], self.dims[s]):
                raise InvalidObject(f"arrow {s} -> {t}: matrix {m.shape}, dims {self.dims[t]}x{self.dims[s]}")
            full[k] = m
        self.mats = MappingProxyType(full)
        self.name = name
        self._hash = None

    def __repr__(self) -> str:
        dv = ",".join(str(self.dims[v]) for v in self.quiver.vertices)
        return f"Rep({self.name + ': ' if self.name else ''}{dv})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rep):
            return NotImplemented
        return self.quiver == other.quiver and dict(self.dims) == dict(other.dims) and dict(self.mats) == dict(other.mats)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.quiver, tuple(self.dims.items()), tuple(self.mats.items())))
        return self._hash

    def dim(self, v) -> int:
        return self.dims[v]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def path_map(self, v, w) -> Mat:
        """The structure map along the (unique) path class v -> w."""
        m = Mat.identity(self.dims[v])
        for k in self.quiver.path(v, w):
            m = self.mats[k] @ m
        return m

    def relation_defects(self) -> list[tuple]:
        """Pairs (v, w) where two paths disagree, or a zero path class acts nonzero."""
        Q = self.quiver
        bad = []
        for v in Q.vertices:
            if not self.dims[v]:
                continue
            # all path composites from v, deduplicated by value
            seen = {v: {Mat.identity(self.dims[v])}}
            frontier = [v]
            while frontier:
                nxt = []
                for u in frontier:
                    for k in Q.out_arrows[u]:
                        t = Q.arrows[k][1]
                        new = {self.mats[k] @ m for m in seen[u]}
                        old = seen.setdefault(t, set())
                        if not new <= old:
                            old |= new
                            nxt.append(t)
                frontier = nxt
                if len(seen) > 4 * len(Q.vertices) ** 2:
                    break
            for w, ms in seen.items():
                if Q.reach(v, w):
                    if len(ms) > 1:
                        bad.append((v, w))
                elif any(not m.is_zero() for m in ms):
                    bad.append((v, w))
        return bad

    def renamed(self, name: str) -> "Rep":
        r = Rep(self.quiver, self.dims, self.mats, name=name)
        return r


class RepMap:
    """A morphism of representations: one matrix per vertex."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: Rep, target: Rep, mats: Mapping | None = None):
        if source.quiver != target.quiver:
            raise InvalidObject("morphism between representations of different quivers")
        self.source = source
        self.target = target
        mats = dict(mats or {})
        full = {}
        for v in source.quiver.vertices:
            m = mats.get(v)
            if m is None:
                m = Mat.zeros(target.dims[v], source.dims[v])
            if m.shape != (target.dims[v], source.dims[v]):
                raise InvalidObject(f"vertex {v}: map shape {m.shape} for dims {target.dims[v]}x{source.dims[v]}")
            full[v] = m
        self.mats = MappingProxyType(full)

    def __repr__(self) -> str:
        return f"RepMap({self.source!r} -> {self.target!r})"

    def __getitem__(self, v) -> Mat:
        return self.mats[v]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and dict(self.mats) == dict(other.mats)

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(self.mats.items())))

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, {v: self.mats[v] + other.mats[v] for v in self.mats})

    def __sub__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, {v: self.mats[v] - other.mats[v] for v in self.mats})

    def __neg__(self) -> "RepMap":
        return RepMap(self.source, self.target, {v: -m for v, m in self.mats.items()})

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target, {v: m.scale(c) for v, m in self.mats.items()})

    def __matmul__(self, other: "RepMap") -> "RepMap":
        return compose(self, other)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())

    def flat(self) -> tuple:
        return tuple(x for v in self.source.quiver.vertices for x in self.mats[v].flat())

    def is_morphism(self) -> bool:
        X, Y = self.source, self.target
        for k, (s, t) in enumerate(X.quiver.arrows):
            if Y.mats[k] @ self.mats[s] != self.mats[t] @ X.mats[k]:
                return False
        return True

    def rank(self) -> int:
        return sum(m.rank() for m in self.mats.values())


def compose(g: RepMap, f: RepMap) -> RepMap:
    """g o f."""
    if f.target != g.source:
        raise InvalidObject("maps are not composable")
    return RepMap(f.source, g.target, {v: g.mats[v] @ f.mats[v] for v in f.mats})


def identity(X: Rep) -> RepMap:
    return RepMap(X, X, {v: Mat.identity(X.dims[v]) for v in X.quiver.vertices})


def zero_map(X: Rep, Y: Rep) -> RepMap:
    return RepMap(X, Y)


def zero_rep(quiver: Quiver) -> Rep:
    return Rep(quiver, {}, name="0")


def combine(maps: Sequence[RepMap], coeffs: Sequence, source: Rep | None = None, target: Rep | None = None) -> RepMap:
    if not maps:
        return RepMap(source, target)
    out = maps[0].scale(coeffs[0])
    for m, c in zip(maps[1:], coeffs[1:]):
        if c:
            out = out + m.scale(c)
    return out


# -- linear systems with matrix unknowns --------------------------------------------------------


class LinearSystem:
    """Equations sum_k L_k X_k R_k = C over matrix unknowns X_k, solved exactly."""

    def __init__(self):
        self.blocks: list[tuple[int, int]] = []
        self.offsets: list[int] = []
        self.nvars = 0
        self.rows: list[dict[int, object]] = []
        self.rhs: list = []

    def unknown(self, p: int, q_: int) -> int:
        self.blocks.append((p, q_))
        self.offsets.append(self.nvars)
        self.nvars += p * q_
        return len(self.blocks) - 1

    def equation(self, shape: tuple[int, int], terms: Sequence[tuple[Mat, int, Mat]], const: Mat | None = None) -> None:
        """Add the matrix equation sum L X_k R = const (const defaults to zero)."""
        r, c = shape
        eq = [dict() for _ in range(r * c)]
        for L, k, R in terms:
            p, qq = self.blocks[k]
            off = self.offsets[k]
            Lr = L.rows
            Rr = R.rows
            for i in range(r):
                li = Lr[i]
                for a in range(p):
                    la = li[a]
                    if not la:
                        continue
                    ra = Rr
                    for b in range(qq):
                        rb = ra[b]
                        base = off + a * qq + b
                        for j in range(c):
                            x = rb[j]
                            if x:
                                d = eq[i * c + j]
                                d[base] = d.get(base, 0) + la * x
        for idx, d in enumerate(eq):
            d = {k: v for k, v in d.items() if v}
            cval = const.rows[idx // c][idx % c] if const is not None else 0
            if d or cval:
                self.rows.append(d)
                self.rhs.append(cval)

    def _dense(self) -> list[list]:
        out = []
        for d in self.rows:
            row = [0] * self.nvars
            for k, v in d.items():
                row[k] = v
            out.append(row)
        return out

    def nullspace(self) -> list[list[Mat]]:
        """A basis of homogeneous solutions, each split into its unknown blocks."""
        if any(self.rhs):
            raise ValueError("system is inhomogeneous")
        if self.nvars == 0:
            return []
        if not self.rows:
            sol = Mat.identity(self.nvars)
        else:
            sol = Mat(self._dense(), len(self.rows), self.nvars).nullspace()
        return [self._split(sol.col(j)) for j in range(sol.ncols)]

    def solve(self) -> list[Mat] | None:
        """One particular solution, or None."""
        if self.nvars == 0:
            return self._split([]) if not any(self.rhs) else None
        if not self.rows:
            return self._split([0] * self.nvars)
        A = Mat(self._dense(), len(self.rows), self.nvars)
        b = Mat([[x] for x in self.rhs], len(self.rhs), 1)
        x = A.solve(b)
        if x is None:
            return None
        return self._split(x.col(0))

    def _split(self, vec: Sequence) -> list[Mat]:
        out = []
        for (p, qq), off in zip(self.blocks, self.offsets):
            out.append(Mat([[vec[off + a * qq + b] for b in range(qq)] for a in range(p)], p, qq))
        return out


# -- hom spaces -----------------------------------------------------------------------------------


def _hom_system(X: Rep, Y: Rep) -> tuple[LinearSystem, dict]:
    Q = X.quiver
    ls = LinearSystem()
    var = {v: ls.unknown(Y.dims[v], X.dims[v]) for v in Q.vertices}
    for k, (s, t) in enumerate(Q.arrows):
        if Y.dims[t] == 0 or X.dims[s] == 0:
            continue
        ls.equation(
            (Y.dims[t], X.dims[s]),
            [(Y.mats[k], var[s], Mat.identity(X.dims[s])), (Mat.identity(Y.dims[t]).scale(-1), var[t], X.mats[k])],
        )
    return ls, var


def hom_basis(X: Rep, Y: Rep) -> list[RepMap]:
    """A Q-basis of Hom(X, Y)."""
    if X.quiver != Y.quiver:
        raise InvalidObject("representations of different quivers")
    ls, var = _hom_system(X, Y)
    out = []
    for sol in ls.nullspace():
        out.append(RepMap(X, Y, {v: sol[var[v]] for v in X.quiver.vertices}))
    return out


def hom_dim(X: Rep, Y: Rep) -> int:
    return len(hom_basis(X, Y))


def coordinates(f: RepMap, basis: Sequence[RepMap]) -> list | None:
    """Coefficients of f in the span of basis, or None."""
    if not basis:
        return [] if f.is_zero() else None
    A = Mat.from_columns([b.flat() for b in basis], len(f.flat()))
    sol = A.solve(Mat([[x] for x in f.flat()], len(f.flat()), 1))
    return None if sol is None else list(sol.col(0))


def span_rank(maps: Sequence[RepMap]) -> int:
    if not maps:
        return 0
    n = len(maps[0].flat())
    return Mat.from_columns([m.flat() for m in maps], n).rank()


def complement_basis(space: Sequence[RepMap], sub: Sequence[RepMap]) -> list[RepMap]:
    """Members of ``space`` (a basis) completing a basis of span(sub) to span(space)."""
    if not space:
        return []
    n = len(space[0].flat())
    base = [m.flat() for m in sub]
    out = []
    r = Mat.from_columns(base, n).rank() if base else 0
    for m in space:
        trial = base + [m.flat()]
        r2 = Mat.from_columns(trial, n).rank()
        if r2 > r:
            base = trial
            r = r2
            out.append(m)
    return out


# -- kernels, cokernels, sums ---------------------------------------------------------------------


def left_inverse(N: Mat) -> Mat:
    """A left inverse of a full column rank matrix."""
    if N.ncols == 0:
        return Mat.zeros(0, N.nrows)
    _, piv = rref_rows(N.T.rows, N.nrows)
    sub = N.submatrix(piv, range(N.ncols))
    inv = sub.inverse()
    rows = []
    for i in range(N.ncols):
        row = [0] * N.nrows
        for k, p in enumerate(piv):
            row[p] = inv[i, k]
        rows.append(row)
    return Mat(rows, N.ncols, N.nrows)


def _projection(W: Mat) -> tuple[Mat, Mat]:
    """(pi, sigma) for the quotient of Q^n by the column span of W."""
    n = W.nrows
    comp = complement_coordinates(W) if W.ncols else list(range(n))
    sigma = Mat.from_columns([[1 if i == c else 0 for i in range(n)] for c in comp], n)
    if W.ncols == 0 or len(comp) == n:
        return sigma.T, sigma
    Wb = column_basis(W)
    inv = hstack([Wb, sigma]).inverse()
    pi = inv.submatrix(range(Wb.ncols, n), range(n))
    return pi, sigma


def cokernel(f: RepMap) -> tuple[Rep, RepMap]:
    Y = f.target
    Q = Y.quiver
    pis, sigmas = {}, {}
    for v in Q.vertices:
        pis[v], sigmas[v] = _projection(f.mats[v])
    dims = {v: pis[v].nrows for v in Q.vertices}
    mats = {k: pis[t] @ Y.mats[k] @ sigmas[s] for k, (s, t) in enumerate(Q.arrows)}
    C = Rep(Q, dims, mats, name="coker")
    return C, RepMap(Y, C, pis)


def cokernel_section(f: RepMap) -> dict:
    """Vertexwise linear sections of the cokernel projection."""
    return {v: _projection(f.mats[v])[1] for v in f.target.quiver.vertices}


def kernel(f: RepMap) -> tuple[Rep, RepMap]:
    X = f.source
    Q = X.quiver
    Ns = {v: f.mats[v].nullspace() for v in Q.vertices}
    Linv = {v: left_inverse(Ns[v]) for v in Q.vertices}
    dims = {v: Ns[v].ncols for v in Q.vertices}
    mats = {k: Linv[t] @ X.mats[k] @ Ns[s] for k, (s, t) in enumerate(Q.arrows)}
    K = Rep(Q, dims, mats, name="ker")
    return K, RepMap(K, X, Ns)


def image(f: RepMap) -> tuple[Rep, RepMap]:
    _, p = cokernel(f)
    return kernel(p)


def direct_sum(objs: Sequence[Rep], quiver: Quiver | None = None) -> tuple[Rep, list[RepMap], list[RepMap]]:
    if not objs:
        Z = zero_rep(quiver)
        return Z, [], []
    Q = objs[0].quiver
    dims = {v: sum(X.dims[v] for X in objs) for v in Q.vertices}
    mats = {k: block_diag([X.mats[k] for X in objs]) for k in range(len(Q.arrows))}
    S = Rep(Q, dims, mats, name="+".join(X.name or "?" for X in objs))
    inj, proj = [], []
    offs = {v: 0 for v in Q.vertices}
    for X in objs:
        im, pm = {}, {}
        for v in Q.vertices:
            n, k, o = dims[v], X.dims[v], offs[v]
            im[v] = Mat([[1 if i == o + j else 0 for j in range(k)] for i in range(n)], n, k)
            pm[v] = Mat([[1 if j == o + i else 0 for j in range(n)] for i in range(k)], k, n)
            offs[v] += k
        inj.append(RepMap(X, S, im))
        proj.append(RepMap(S, X, pm))
    return S, inj, proj


def hstack_maps(maps: Sequence[RepMap], S: Rep) -> RepMap:
    """The map out of a direct sum S with the given components."""
    T = maps[0].target
    return RepMap(S, T, {v: hstack([m.mats[v] for m in maps]) if maps else Mat.zeros(T.dims[v], 0) for v in S.quiver.vertices})


def vstack_maps(maps: Sequence[RepMap], S: Rep) -> RepMap:
    """The map into a direct sum S with the given components."""
    X = maps[0].source
    return RepMap(X, S, {v: vstack([m.mats[v] for m in maps]) for v in X.quiver.vertices})


def direct_sum_maps(maps: Sequence[RepMap]) -> RepMap:
    S, _, _ = direct_sum([m.source for m in maps])
    T, _, _ = direct_sum([m.target for m in maps])
    return RepMap(S, T, {v: block_diag([m.mats[v] for m in maps]) for v in S.quiver.vertices})


def pushout(a: RepMap, b: RepMap) -> tuple[Rep, RepMap, RepMap]:
    """Pushout of Y <-a- X -b-> Z: returns (P, Y -> P, Z -> P)."""
    if a.source != b.source:
        raise InvalidObject("pushout legs must share their source")
    S, inj, _ = direct_sum([a.target, b.target])
    d = compose(inj[0], a) - compose(inj[1], b)
    P, p = cokernel(d)
    return P, compose(p, inj[0]), compose(p, inj[1])


def pullback(a: RepMap, b: RepMap) -> tuple[Rep, RepMap, RepMap]:
    """Pullback of Y -a-> X <-b- Z: returns (Q, Q -> Y, Q -> Z)."""
    if a.target != b.target:
        raise InvalidObject("pullback legs must share their target")
    S, _, proj = direct_sum([a.source, b.source])
    d = compose(a, proj[0]) - compose(b, proj[1])
    K, k = kernel(d)
    return K, compose(proj[0], k), compose(proj[1], k)


def is_mono(f: RepMap) -> bool:
    return all(m.rank() == m.ncols for m in f.mats.values())


def is_epi(f: RepMap) -> bool:
    return all(m.rank() == m.nrows for m in f.mats.values())


def is_iso(f: RepMap) -> bool:
    return all(m.nrows == m.ncols and m.rank() == m.nrows for m in f.mats.values())


def inverse(f: RepMap) -> RepMap:
    return RepMap(f.target, f.source, {v: m.inverse() for v, m in f.mats.items()})


def is_exact_at(f: RepMap, g: RepMap) -> bool:
    """im f == ker g at every vertex."""
    if not compose(g, f).is_zero():
        return False
    for v in f.target.quiver.vertices:
        if f.mats[v].rank() + g.mats[v].rank() != f.target.dims[v]:
            return False
    return True


def is_conflation(i: RepMap, d: RepMap) -> bool:
    return is_mono(i) and is_epi(d) and is_exact_at(i, d)


def solve_factorization(target: RepMap, through: RepMap, side: str) -> RepMap | None:
    """Some h with through o h == target (side='left', h into through's source),
    or h o through == target (side='right', h out of through's target)."""
    if side == "left":
        X, Z = target.source, through.source
        ls = LinearSystem()
        var = {v: ls.unknown(Z.dims[v], X.dims[v]) for v in X.quiver.vertices}
        _morphism_equations(ls, var, X, Z)
        for v in X.quiver.vertices:
            ls.equation((target.target.dims[v], X.dims[v]), [(through.mats[v], var[v], Mat.identity(X.dims[v]))], target.mats[v])
        sol = ls.solve()
        return None if sol is None else RepMap(X, Z, {v: sol[var[v]] for v in X.quiver.vertices})
    Y, W = through.target, target.target
    ls = LinearSystem()
    var = {v: ls.unknown(W.dims[v], Y.dims[v]) for v in Y.quiver.vertices}
    _morphism_equations(ls, var, Y, W)
    for v in Y.quiver.vertices:
        S = through.source
        ls.equation((W.dims[v], S.dims[v]), [(Mat.identity(W.dims[v]), var[v], through.mats[v])], target.mats[v])
    sol = ls.solve()
    return None if sol is None else RepMap(Y, W, {v: sol[var[v]] for v in Y.quiver.vertices})


def _morphism_equations(ls: LinearSystem, var: dict, X: Rep, Y: Rep) -> None:
    for k, (s, t) in enumerate(X.quiver.arrows):
        if Y.dims[t] == 0 or X.dims[s] == 0:
            continue
        ls.equation(
            (Y.dims[t], X.dims[s]),
            [(Y.mats[k], var[s], Mat.identity(X.dims[s])), (Mat.identity(Y.dims[t]).scale(-1), var[t], X.mats[k])],
        )


# -- projectives, injectives, covers, envelopes ----------------------------------------------------


def projective(quiver: Quiver, v) -> Rep:
    """The indecomposable projective at v: Q at every w reachable from v."""
    dims = {w: 1 if quiver.reach(v, w) else 0 for w in quiver.vertices}
    mats = {k: Mat.identity(1) for k, (s, t) in enumerate(quiver.arrows) if dims[s] and dims[t]}
    return Rep(quiver, dims, mats, name=f"P[{_vname(v)}]")


def injective(quiver: Quiver, v) -> Rep:
    """The indecomposable injective at v: Q at every w from which v is reachable."""
    dims = {w: 1 if quiver.reach(w, v) else 0 for w in quiver.vertices}
    mats = {k: Mat.identity(1) for k, (s, t) in enumerate(quiver.arrows) if dims[s] and dims[t]}
    return Rep(quiver, dims, mats, name=f"I[{_vname(v)}]")


def simple(quiver: Quiver, v) -> Rep:
    return Rep(quiver, {v: 1}, name=f"S[{_vname(v)}]")


def _vname(v) -> str:
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


def map_from_projective(P: Rep, v, X: Rep, x: Sequence) -> RepMap:
    """The map P_v -> X sending the generator to x in X(v)."""
    Q = X.quiver
    col = Mat([[c] for c in x], X.dims[v], 1)
    mats = {}
    for w in Q.vertices:
        if P.dims[w]:
            mats[w] = X.path_map(v, w) @ col
    return RepMap(P, X, mats)


def map_to_injective(X: Rep, I: Rep, v, phi: Sequence) -> RepMap:
    """The map X -> I_v whose vertex-v component is the functional phi."""
    Q = X.quiver
    row = Mat([list(phi)], 1, X.dims[v])
    mats = {}
    for w in Q.vertices:
        if I.dims[w]:
            mats[w] = row @ X.path_map(w, v)
    return RepMap(X, I, mats)


def top_basis(X: Rep, v) -> list[list]:
    """Vectors of X(v) spanning a complement of the images of incoming arrows."""
    Q = X.quiver
    n = X.dims[v]
    ims = [X.mats[k] for k in Q.in_arrows[v] if X.dims[Q.arrows[k][0]]]
    W = hstack(ims) if ims else Mat.zeros(n, 0)
    comp = complement_coordinates(W) if W.ncols else list(range(n))
    return [[1 if i == c else 0 for i in range(n)] for c in comp]


def socle_basis(X: Rep, v) -> Mat:
    Q = X.quiver
    n = X.dims[v]
    outs = [X.mats[k] for k in Q.out_arrows[v] if X.dims[Q.arrows[k][1]]]
    if not outs:
        return Mat.identity(n)
    return vstack(outs).nullspace()


@dataclass(frozen=True)
class Cover:
    """A projective cover P -> X (epi) with its summands and generator vectors."""

    object: Rep
    map: RepMap
    summands: tuple
    vertices: tuple


def projective_cover(X: Rep) -> Cover:
    Q = X.quiver
    pieces, verts, maps = [], [], []
    for v in Q.vertices:
        for x in top_basis(X, v):
            P = projective(Q, v)
            pieces.append(P)
            verts.append(v)
            maps.append((P, v, x))
    if not pieces:
        Z = zero_rep(Q)
        return Cover(Z, RepMap(Z, X), (), ())
    S, _, _ = direct_sum(pieces)
    f = hstack_maps([map_from_projective(P, v, X, x) for P, v, x in maps], S)
    return Cover(S, f, tuple(pieces), tuple(verts))


def injective_envelope(X: Rep) -> Cover:
    Q = X.quiver
    pieces, legs, verts = [], [], []
    for v in Q.vertices:
        B = socle_basis(X, v)
        if B.ncols == 0:
            continue
        L = left_inverse(B)
        for r in range(L.nrows):
            I = injective(Q, v)
            pieces.append(I)
            legs.append(map_to_injective(X, I, v, L.rows[r]))
            verts.append(v)
    if not pieces:
        Z = zero_rep(Q)
        return Cover(Z, RepMap(X, Z), (), ())
    S, _, _ = direct_sum(pieces)
    f = vstack_maps(legs, S)
    return Cover(S, f, tuple(pieces), tuple(verts))


def is_projective(X: Rep) -> bool:
    c = projective_cover(X)
    return c.object.total_dim() == X.total_dim()


def is_injective(X: Rep) -> bool:
    c = injective_envelope(X)
    return c.object.total_dim() == X.total_dim()


# -- isomorphism and filtrations -----------------------------------------------------------------


def find_isomorphism(X: Rep, Y: Rep, seed: int = 0, tries: int = 24) -> RepMap | None:
    """An isomorphism X -> Y, found among seeded random combinations of Hom(X, Y)."""
    if X.dim_vector() != Y.dim_vector():
        return None
    if X.total_dim() == 0:
        return RepMap(X, Y)
    basis = hom_basis(X, Y)
    if not basis:
        return None
    for b in basis:
        if is_iso(b):
            return b
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randint(-7, 7) for _ in basis]
        f = combine(basis, coeffs)
        if is_iso(f):
            return f
    return None


def is_isomorphic(X: Rep, Y: Rep) -> bool:
    return find_isomorphism(X, Y) is not None


def find_mono(S: Rep, X: Rep, seed: int = 0, tries: int = 16) -> RepMap | None:
    """A monomorphism S -> X, if one turns up among basis sums and seeded combinations."""
    if S.total_dim() == 0:
        return RepMap(S, X)
    if any(S.dims[v] > X.dims[v] for v in S.quiver.vertices):
        return None
    basis = hom_basis(S, X)
    for b in basis:
        if is_mono(b):
            return b
    if len(basis) > 1:
        rng = random.Random(seed)
        for _ in range(tries):
            f = combine(basis, [rng.randint(-7, 7) for _ in basis])
            if is_mono(f):
                return f
    return None


@dataclass(frozen=True)
class Filtration:
    """0 = X_0 -> X_1 -> ... -> X_n = X with each step an inflation.

    ``steps[k]`` is the inclusion X_k -> X_{k+1}; ``labels[k]`` is the object
    its cokernel is isomorphic to, witnessed by ``witnesses[k]``.
    """

    objects: tuple
    steps: tuple
    labels: tuple
    witnesses: tuple

    @property
    def top(self) -> Rep:
        return self.objects[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def validate(self) -> list[str]:
        out = []
        if self.objects and self.objects[0].total_dim() != 0:
            out.append("filtration does not start at zero")
        for k, (st, lab, w) in enumerate(zip(self.steps, self.labels, self.witnesses)):
            if not is_mono(st):
                out.append(f"step {k} is not an inflation")
                continue
            C, _ = cokernel(st)
            if w.source != C or w.target != lab or not is_iso(w) or not w.is_morphism():
                # the cokernel representative may be recomputed; fall back to an iso search
                if find_isomorphism(C, lab) is None:
                    out.append(f"cokernel of step {k} is not isomorphic to its label")
        return out


def filtration_from_chain(objects: Sequence[Rep], steps: Sequence[RepMap], labels: Sequence[Rep]) -> Filtration:
    ws = []
    for st, lab in zip(steps, labels):
        C, _ = cokernel(st)
        w = find_isomorphism(C, lab)
        if w is None:
            raise InvalidObject("filtration step cokernel does not match its label")
        ws.append(w)
    return Filtration(tuple(objects), tuple(steps), tuple(labels), tuple(ws))


def find_filtration(X: Rep, S: Sequence[Rep], limit: int = 2000) -> Filtration | None:
    """An S-filtration of X found by depth-first search, or None.

    The search builds the filtration from the top: it looks for an
    epimorphism X -> s with s in S, recurses on the kernel, and then reads
    the chain of kernels bottom-up.
    """
    Q = X.quiver
    budget = [limit]
    nonzero = [s for s in S if s.total_dim()]

    def search(Y: Rep) -> list | None:
        # returns list of (kernel inclusion K -> Y, label) from the top down
        if Y.total_dim() == 0:
            return []
        budget[0] -= 1
        if budget[0] < 0:
            return None
        for s in nonzero:
            if any(s.dims[v] > Y.dims[v] for v in Q.vertices):
                continue
            e = _find_epi(Y, s)
            if e is None:
                continue
            K, k = kernel(e)
            rest = search(K)
            if rest is not None:
                return [(k, s)] + rest
        return None

    chain = search(X)
    if chain is None:
        return None
    # chain: X = Y0 >- k0 - K1 >- k1 - K2 ...; build bottom-up inclusions
    objects = [zero_rep(Q)]
    steps, labels = [], []
    incs = [k for k, _ in chain]
    labs = [s for _, s in chain]
    n = len(incs)
    # the subobjects from the bottom: K_n = 0 -> K_{n-1} -> ... -> K_0 = X
    subs = [k.source for k in incs]  # K_1 .. K_n (K_n is zero)
    subs = [X] + subs
    objects = list(reversed(subs))
    steps = [incs[i] for i in reversed(range(n))]
    labels = [labs[i] for i in reversed(range(n))]
    return filtration_from_chain(objects, steps, labels)


def _find_epi(Y: Rep, s: Rep, seed: int = 0, tries: int = 12) -> RepMap | None:
    basis = hom_basis(Y, s)
    for b in basis:
        if is_epi(b):
            return b
    if len(basis) > 1:
        rng = random.Random(seed)
        for _ in range(tries):
            f = combine(basis, [rng.randint(-7, 7) for _ in basis])
            if is_epi(f):
                return f
    return None


def from_poset_dims(quiver: PosetQuiver, dims: Mapping, mats: Mapping[tuple, Mat]) -> Rep:
    """Build a poset representation with arrow matrices keyed by Hasse edges."""
    idx = {e: k for k, e in enumerate(quiver.arrows)}
    return Rep(quiver, dims, {idx[e]: m for e, m in mats.items()})


def arrow_index(quiver: Quiver, s, t) -> int:
    for k, e in enumerate(quiver.arrows):
        if e == (s, t):
            return k
    raise KeyError((s, t))
