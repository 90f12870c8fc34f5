import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcmodel import diagram as dg
from qcmodel.errors import InvalidObject, UnsupportedRing
from qcmodel.exact_arith import FIELD, FPModule, RingMatrix


@pytest.fixture(scope="module")
def P1():
    return dg.p1_ringrep()


def chain_rep(n: int = 2):
    return dg.constant_rep(dg.FinitePoset.chain(n))


# -- posets --------------------------------------------------------------------------------------------


def test_poset_rejects_cycles():
    with pytest.raises(InvalidObject):
        dg.FinitePoset(["a", "b"], [("a", "b"), ("b", "a")])


def test_poset_transitive_closure():
    P = dg.FinitePoset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert P.leq("a", "c") and not P.leq("c", "a")
    assert set(P.hasse_edges()) == {("a", "b"), ("b", "c")}


@given(st.integers(1, 5))
def test_chain_order(n):
    P = dg.FinitePoset.chain(n)
    assert all(P.leq(str(i), str(j)) == (i <= j) for i in range(n) for j in range(n))


# -- validation --------------------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [-2, 0, 2, 3])
def test_twists_validate_and_are_quasicoherent(P1, n):
    M = dg.p1_twist(n, P1)
    assert dg.validate(M).ok
    assert dg.is_quasicoherent(M).quasicoherent


def test_zeroed_transition_is_caught(P1):
    M = dg.p1_twist(2, P1)
    L = P1.ring("u01")
    maps = dict(M.maps)
    maps[("u1", "u01")] = RingMatrix.zeros(L, 1, 1)
    # a zero transition is still a module, but base change fails there
    zeroed = dg.DiagModule(P1, dict(M.modules), maps, complete=False)
    assert dg.validate(zeroed).ok
    assert dg.is_quasicoherent(zeroed).failing_edge == ("u1", "u01")
    maps = dict(M.maps)
    maps[("u0", "u0")] = RingMatrix.zeros(P1.ring("u0"), 1, 1)
    rep = dg.validate(dg.DiagModule(P1, dict(M.modules), maps, complete=False))
    assert not rep.ok
    assert rep.violations[0].kind == "identity" and rep.violations[0].edge == ("u0", "u0")


def test_zero_module_validates(P1):
    assert dg.validate(dg.zero_module(P1)).ok


def test_projective_generator_not_quasicoherent(P1):
    rep = dg.is_quasicoherent(dg.projective_generator(P1, "u0"))
    assert not rep.quasicoherent
    assert rep.failing_edge is not None


def test_structure_sheaf_quasicoherent(P1):
    assert dg.is_quasicoherent(dg.structure_sheaf(P1))


# -- generators and homs ----------------------------------------------------------------------------------


def test_projective_generators_on_chain():
    R = chain_rep()
    P0, P1_ = dg.projective_generator(R, "0"), dg.projective_generator(R, "1")
    assert (P0["0"].ngens, P0["1"].ngens) == (1, 1)
    assert P0.maps[("0", "1")] == RingMatrix.identity(FIELD, 1)
    assert (P1_["0"].ngens, P1_["1"].ngens) == (0, 1)


def _simple0(R):
    return dg.DiagModule(R, {"0": FPModule.free(FIELD, 1), "1": FPModule.free(FIELD, 0)})


def test_hom_from_generator_is_evaluation():
    R = chain_rep()
    S0 = _simple0(R)
    assert len(dg.hom_space(dg.projective_generator(R, "1"), S0)) == 0
    assert len(dg.hom_space(dg.projective_generator(R, "0"), S0)) == 1
    P0 = dg.projective_generator(R, "0")
    gh = dg.hom_from_generator("0", P0)
    f = gh.from_element(RingMatrix(FIELD, [[1]]))
    assert dict(f.maps) == dict(dg.identity(P0).maps)


def test_kernel_cokernel_image():
    R = chain_rep()
    P0, P1_ = dg.projective_generator(R, "0"), dg.projective_generator(R, "1")
    K, _ = dg.kernel(dg.identity(P0))
    assert all(K[v].is_zero() for v in K.poset.labels)
    inc = dg.hom_space(P1_, P0)
    assert len(inc) == 1
    C, _ = dg.cokernel(inc[0])
    assert C["0"].structure() == ([], 1)
    assert C["1"].is_zero()
    I, _ = dg.image(dg.zero_morphism(P0, P0))
    assert all(I[v].is_zero() for v in I.poset.labels)


def test_twist_hom_dimensions(P1):
    assert dg.hom_space(dg.p1_twist(1, P1), dg.p1_twist(0, P1), (-4, 4)) == []
    assert len(dg.hom_space(dg.p1_twist(0, P1), dg.p1_twist(2, P1), (-4, 4))) == 3


@settings(max_examples=15, deadline=None)
@given(st.integers(-3, 3), st.integers(0, 3), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_twist_maps_compose(m, d, cs):
    f = dg.p1_twist_map(m, m + d, cs[: d + 1])
    assert f.validate().ok
    g = dg.p1_twist_map(m + d, m + d + 1, [1, 1])
    h = dg.compose(g, f)
    assert h.validate().ok
    assert h.source == f.source and h.target == g.target


def test_tensor_of_twists_is_twist(P1):
    T = dg.tensor_modules(dg.p1_twist(1, P1), dg.p1_twist(2, P1))
    assert dg.is_quasicoherent(T)
    assert len(dg.hom_space(dg.p1_twist(3, P1), T, (-6, 6))) == 1
    assert len(dg.hom_space(T, dg.p1_twist(3, P1), (-6, 6))) == 1


def test_direct_sum_injections(P1):
    S, inj, proj = dg.direct_sum([dg.p1_twist(0, P1), dg.p1_twist(1, P1)])
    for i, p in zip(inj, proj):
        assert dg.is_iso(dg.compose(p, i))


def test_p2_is_data_only():
    R = dg.p2_ringrep()
    assert not R.univariate
    with pytest.raises(UnsupportedRing):
        dg.structure_sheaf(R)
