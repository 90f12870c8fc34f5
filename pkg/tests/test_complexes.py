import random

import pytest
from _gen import rand_chain_rep, rand_complex
from hypothesis import given, settings
from hypothesis import strategies as st

from qcmodel import complexes as cx
from qcmodel import diagram as dg
from qcmodel import homotopy_algebra as ha
from qcmodel import reps
from qcmodel.diagram import FinitePoset
from qcmodel.errors import InvalidObject

seeds = st.integers(0, 10**6)
SLOW = settings(max_examples=25, deadline=None)


@pytest.fixture(scope="module")
def G():
    return cx.grid(FinitePoset.chain(2), -1, 1)


def test_spheres_and_discs(G):
    Q = cx.poset_quiver(G.poset)
    S0 = reps.simple(Q, "0")
    D = cx.disc(S0, 0, G)
    assert cx.support(D) == (0, 1)
    assert cx.is_acyclic(D) and cx.d_squared_zero(D)
    S = cx.sphere(S0, 0, G)
    assert cx.cohomology_dims(S)[0] == (1, 0)
    assert not cx.is_acyclic(S)


def test_cone_of_zero_source(G):
    rng = random.Random(1)
    X = rand_complex(rng, G, span=(0, 1))
    Z = reps.zero_rep(G)
    C = cx.cone(reps.RepMap(Z, X))
    assert reps.is_isomorphic(C.object, X)


def test_cone_of_identity_is_acyclic(G):
    Q = cx.poset_quiver(G.poset)
    S = cx.sphere(reps.simple(Q, "1"), 0, G)
    C = cx.cone(reps.identity(S))
    assert cx.is_acyclic(C.object)
    assert cx.is_chain_map(C.inclusion) and cx.is_chain_map(C.projection)


def test_cone_needs_room_below(G):
    Q = cx.poset_quiver(G.poset)
    S = cx.sphere(reps.simple(Q, "0"), -1, G)
    with pytest.raises(InvalidObject):
        cx.cone(reps.identity(S))


@SLOW
@given(seeds)
def test_tensor_and_hom_square_to_zero(seed):
    rng = random.Random(seed)
    G = cx.grid(FinitePoset.chain(rng.randint(1, 2)), -1, 1)
    X, Y = rand_complex(rng, G), rand_complex(rng, G)
    assert cx.d_squared_zero(X)
    assert cx.d_squared_zero(cx.tensor_complexes(X, Y))
    assert cx.d_squared_zero(cx.hom_complexes(X, Y))


@SLOW
@given(seeds)
def test_disc_sums_are_acyclic(seed):
    rng = random.Random(seed)
    G = cx.grid(FinitePoset.chain(2), -1, 2)
    Q = cx.poset_quiver(G.poset)
    parts = [cx.disc(rand_chain_rep(rng, Q), rng.randint(-1, 1), G) for _ in range(2)]
    X = reps.direct_sum(parts, G)[0]
    assert cx.is_acyclic(X)
    assert cx.is_null_homotopic(reps.identity(X)) is not None


def _regrid(X, G):
    g = X.quiver
    comps = {n: cx.component(X, n) for n in cx.degrees(g)}
    return cx.assemble(G, comps, {n: cx.differential(X, n) for n in cx.degrees(g) if n + 1 <= g.hi})


@SLOW
@given(seeds)
def test_hom_tensor_adjunction_dimensions(seed):
    rng = random.Random(seed)
    P = FinitePoset.chain(rng.randint(1, 2))
    G = cx.grid(P, 0, 1)
    X, Y, Z = rand_complex(rng, G), rand_complex(rng, G), rand_complex(rng, cx.grid(P, 0, 2))
    H = cx.hom_complexes(Y, Z)
    assert reps.hom_dim(cx.tensor_complexes(X, Y), Z) == reps.hom_dim(_regrid(X, H.quiver), H)


def test_quasi_isomorphism(G):
    Q = cx.poset_quiver(G.poset)
    S1, P0 = reps.simple(Q, "1"), reps.projective(Q, "0")
    # the projective resolution 0 -> S1 -> P0 of S0, shifted so P0 sits in degree 0
    inc = reps.hom_basis(S1, P0)[0]
    X = cx.assemble(G, {-1: S1, 0: P0}, {-1: inc})
    S0 = reps.simple(Q, "0")
    q = cx.assemble_map(X, cx.sphere(S0, 0, G), {0: reps.hom_basis(P0, S0)[0]})
    assert cx.is_chain_map(q)
    assert cx.is_quasi_isomorphism(q)
    assert not cx.is_quasi_isomorphism(cx.assemble_map(X, cx.sphere(S0, 0, G), {}))


def test_splice_is_acyclic(G):
    Q = cx.poset_quiver(G.poset)
    S0, S1, P0 = reps.simple(Q, "0"), reps.simple(Q, "1"), reps.projective(Q, "0")
    inc, quot = reps.hom_basis(S1, P0)[0], reps.hom_basis(P0, S0)[0]
    X = cx.assemble(G, {-1: S1, 0: P0, 1: S0}, {-1: inc, 0: quot})
    assert cx.d_squared_zero(X) and cx.is_acyclic(X)
    Y = cx.assemble(G, {-1: S1, 0: P0, 1: S0}, {-1: inc})
    assert cx.cohomology_dims(Y)[1] == (1, 0)


@SLOW
@given(seeds)
def test_disc_hom_adjunction(seed):
    rng = random.Random(seed)
    G = cx.grid(FinitePoset.chain(2), -1, 1)
    M = rand_chain_rep(rng, cx.poset_quiver(G.poset))
    Y = rand_complex(rng, G)
    n = rng.randint(-1, 0)
    assert reps.hom_dim(cx.disc(M, n, G), Y) == reps.hom_dim(M, cx.component(Y, n))


def test_shift_moves_support(G):
    Q = cx.poset_quiver(G.poset)
    S = cx.sphere(reps.simple(Q, "0"), 0, G)
    assert cx.support(cx.shift(S, 1)) == (-1, -1)


def test_lift_cotorsion_zero_complex(G):
    pair = ha.injective_pair(cx.poset_quiver(G.poset))
    L = cx.lift_cotorsion(pair, reps.zero_rep(G))
    assert L.B.is_zero() and L.A.is_zero()


def test_lift_cotorsion_on_a_cone():
    G = cx.grid(FinitePoset.chain(2), -1, 1)
    Q = cx.poset_quiver(G.poset)
    pair = ha.injective_pair(Q)
    X = cx.cone(reps.identity(cx.sphere(reps.simple(Q, "1"), 0, G))).object
    L = cx.lift_cotorsion(pair, X)
    assert ha.Conflation(L.inflation, L.deflation).is_valid()
    assert cx.is_in_tilde(pair.in_right, L.B)
    assert cx.is_in_tilde(pair.in_left, L.A)


def test_lift_cotorsion_rejects_cohomology(G):
    pair = ha.injective_pair(cx.poset_quiver(G.poset))
    S = cx.sphere(reps.simple(cx.poset_quiver(G.poset), "0"), 0, G)
    with pytest.raises(InvalidObject):
        cx.lift_cotorsion(pair, S)


def test_ext_adjunction_instances(G):
    Q = cx.poset_quiver(G.poset)
    S0, S1 = reps.simple(Q, "0"), reps.simple(Q, "1")
    D = cx.disc(S1, -1, G)
    rep = cx.ext_adjunction_check(S0, D, 0)
    assert rep.acyclic and rep.ok and rep.module_side == rep.complex_side == 1
    rep = cx.ext_adjunction_check(S0, cx.sphere(S1, 0, G), 0)
    assert rep.mono_ok


@SLOW
@given(seeds)
def test_ext_adjunction_monotone(seed):
    rng = random.Random(seed)
    G = cx.grid(FinitePoset.chain(2), -1, 1)
    X = rand_chain_rep(rng, cx.poset_quiver(G.poset), 1)
    Y = rand_complex(rng, G, 1)
    assert cx.ext_adjunction_check(X, Y, 0).ok


def test_pushout_product_of_inclusions(G):
    rng = random.Random(5)
    A, E = rand_complex(rng, G, 1, span=(0, 0)), rand_complex(rng, G, 1, span=(0, 0))
    B, inj, _ = reps.direct_sum([A, E])
    f = inj[0]
    box, _ = cx.pushout_product(f, f)
    assert reps.is_mono(box)


def test_unit_law_on_twists():
    for n in (-1, 0, 2):
        assert cx.unit_law_check(cx.module_sphere(dg.p1_twist(n))).ok
    s = dg.p1_twist_map(0, 1, [1, 1])
    X = cx.ModuleComplex(s.source.rep, {0: s.source, 1: s.target}, {0: s})
    assert X.validate() == []
    assert cx.unit_law_check(X).ok


def test_module_complex_d_squared_defect():
    s = dg.p1_twist_map(0, 1, [1, 0])
    t = dg.p1_twist_map(1, 2, [1, 0])
    X = cx.ModuleComplex(s.source.rep, {0: s.source, 1: s.target, 2: t.target}, {0: s, 1: t})
    assert X.d_squared_defects() == [0]


def test_module_exactness():
    O = dg.p1_twist(0)
    D = cx.ModuleComplex(O.rep, {0: O, 1: O}, {0: dg.identity(O)})
    assert cx.module_complex_acyclic(D)
    assert not cx.module_complex_acyclic(cx.module_sphere(O))
