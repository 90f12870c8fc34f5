"""Seeded random objects shared by the test modules."""

from __future__ import annotations

import random

from qcmodel import complexes as cx
from qcmodel import reps
from qcmodel.diagram import FinitePoset
from qcmodel.linalg import Mat


def chain_quiver(n: int) -> reps.PosetQuiver:
    return cx.poset_quiver(FinitePoset.chain(n))


def rand_mat(rng: random.Random, m: int, n: int, lo: int = -2, hi: int = 2) -> Mat:
    return Mat([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)], m, n)


def rand_chain_rep(rng: random.Random, Q: reps.PosetQuiver, maxdim: int = 2) -> reps.Rep:
    """Any matrices give a representation of a linearly oriented chain."""
    dims = {v: rng.randint(0, maxdim) for v in Q.vertices}
    mats = {k: rand_mat(rng, dims[t], dims[s]) for k, (s, t) in enumerate(Q.arrows)}
    return reps.Rep(Q, dims, mats)


def rand_map(rng: random.Random, X: reps.Rep, Y: reps.Rep) -> reps.RepMap:
    basis = reps.hom_basis(X, Y)
    if not basis:
        return reps.zero_map(X, Y)
    return reps.combine(basis, [rng.randint(-2, 2) for _ in basis], X, Y)


def indecomposables(Q: reps.PosetQuiver) -> list[reps.Rep]:
    """Simples, projectives and injectives, without repeats."""
    out = []
    for v in Q.vertices:
        for X in (reps.simple(Q, v), reps.projective(Q, v), reps.injective(Q, v)):
            if X not in out:
                out.append(X)
    return out


def rand_complex(
    rng: random.Random, G: reps.ComplexQuiver, pieces: int = 2, maxdim: int = 1, span: tuple[int, int] | None = None
) -> reps.Rep:
    """A direct sum of random discs and spheres supported in ``span`` (default: all of G)."""
    lo, hi = span or (G.lo, G.hi)
    Q = cx.poset_quiver(G.poset)
    parts = []
    for _ in range(pieces):
        M = rand_chain_rep(rng, Q, maxdim)
        if rng.random() < 0.5 and hi > lo:
            parts.append(cx.disc(M, rng.randint(lo, hi - 1), G))
        else:
            parts.append(cx.sphere(M, rng.randint(lo, hi), G))
    X, _, _ = reps.direct_sum(parts, G)
    return X
