import random

import pytest
import sympy
from _gen import chain_quiver, rand_chain_rep, rand_map, rand_mat
from hypothesis import given, settings
from hypothesis import strategies as st

from qcmodel import _kernel_py, linalg, reps
from qcmodel.linalg import Mat

seeds = st.integers(0, 10**6)
SLOW = settings(max_examples=40, deadline=None)


# -- linear algebra kernel -------------------------------------------------------------------------------


@SLOW
@given(seeds, st.integers(1, 5), st.integers(1, 5))
def test_rank_and_nullspace_match_sympy(seed, m, n):
    rng = random.Random(seed)
    A = rand_mat(rng, m, n)
    S = sympy.Matrix([[A[i, j] for j in range(n)] for i in range(m)])
    assert A.rank() == S.rank()
    N = A.nullspace()
    assert (A @ N).is_zero()
    assert N.shape[1] == n - S.rank()


@SLOW
@given(seeds, st.integers(1, 6), st.integers(1, 6))
def test_compiled_kernel_matches_reference(seed, m, n):
    if linalg.KERNEL != "compiled":
        pytest.skip("compiled kernel not built")
    from qcmodel import _kernel

    rng = random.Random(seed)
    rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
    assert _kernel.echelon(rows, n) == _kernel_py.echelon(rows, n)


def test_rational_entries_are_exact():
    A = Mat([[1, 2], [3, 4]])
    assert A.inverse() @ A == Mat.identity(2)
    assert A.inverse()[0, 1] == 1


# -- representations ------------------------------------------------------------------------------------


def rand_pair(seed: int):
    rng = random.Random(seed)
    Q = chain_quiver(rng.randint(1, 3))
    return rng, rand_chain_rep(rng, Q), rand_chain_rep(rng, Q)


@SLOW
@given(seeds)
def test_hom_basis_consists_of_morphisms(seed):
    rng, X, Y = rand_pair(seed)
    basis = reps.hom_basis(X, Y)
    assert all(f.is_morphism() for f in basis)
    assert reps.span_rank(basis) == len(basis)


@SLOW
@given(seeds)
def test_kernel_cokernel_exact(seed):
    rng, X, Y = rand_pair(seed)
    f = rand_map(rng, X, Y)
    _, k = reps.kernel(f)
    _, c = reps.cokernel(f)
    assert reps.is_mono(k) and reps.is_epi(c)
    assert reps.compose(f, k).is_zero() and reps.compose(c, f).is_zero()
    assert reps.is_exact_at(k, f)
    assert reps.is_exact_at(f, c)


@SLOW
@given(seeds)
def test_projective_cover_is_epi_from_projective(seed):
    _, X, _ = rand_pair(seed)
    cov = reps.projective_cover(X)
    assert reps.is_epi(cov.map)
    assert reps.is_projective(cov.object)
    env = reps.injective_envelope(X)
    assert reps.is_mono(env.map) and reps.is_injective(env.object)


@SLOW
@given(seeds)
def test_pushout_square_commutes(seed):
    rng, X, Y = rand_pair(seed)
    Z = rand_chain_rep(rng, X.quiver)
    a, b = rand_map(rng, X, Y), rand_map(rng, X, Z)
    P, la, lb = reps.pushout(a, b)
    assert reps.compose(la, a) == reps.compose(lb, b)
    Pb, pa, pb = reps.pullback(la, lb)
    assert reps.compose(la, pa) == reps.compose(lb, pb)


@SLOW
@given(seeds)
def test_isomorphism_found_after_base_change(seed):
    rng, X, _ = rand_pair(seed)
    # conjugate X by random invertible matrices
    g = {}
    for v in X.quiver.vertices:
        d = X.dims[v]
        while True:
            m = rand_mat(rng, d, d)
            if m.rank() == d:
                break
        g[v] = m
    mats = {k: g[t] @ X.mats[k] @ g[s].inverse() for k, (s, t) in enumerate(X.quiver.arrows)}
    Y = reps.Rep(X.quiver, X.dims, mats)
    iso = reps.find_isomorphism(X, Y)
    assert iso is not None and reps.is_iso(iso)


def test_thin_chain_objects():
    Q = chain_quiver(2)
    assert reps.projective(Q, "0").dim_vector() == (1, 1)
    assert reps.projective(Q, "1").dim_vector() == (0, 1)
    assert reps.injective(Q, "0").dim_vector() == (1, 0)
    assert reps.simple(Q, "1") == reps.projective(Q, "1")


def test_filtration_of_p0():
    Q = chain_quiver(2)
    S0, S1, P0 = reps.simple(Q, "0"), reps.simple(Q, "1"), reps.projective(Q, "0")
    F = reps.find_filtration(P0, [S0, S1])
    assert F is not None
    assert [reps.is_isomorphic(a, b) for a, b in zip(F.labels, [S1, S0])] == [True, True]
    assert reps.find_filtration(S0, [S1]) is None


def test_relation_defects_on_grid():
    from qcmodel import complexes as cx
    from qcmodel.diagram import FinitePoset

    G = cx.grid(FinitePoset.chain(1), 0, 2)
    one = Mat.identity(1)
    arrows = {reps.arrow_index(G, ("0", 0), ("0", 1)): one, reps.arrow_index(G, ("0", 1), ("0", 2)): one}
    X = reps.Rep(G, {("0", 0): 1, ("0", 1): 1, ("0", 2): 1}, arrows)
    assert X.relation_defects() == [(("0", 0), ("0", 2))]
