import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcmodel import cech
from qcmodel import diagram as dg
from qcmodel.errors import CoverInvalid, InvalidObject, WindowRequired
from qcmodel.exact_arith import FIELD, FPModule, RingMatrix


@pytest.fixture(scope="module")
def P1():
    return dg.p1_ringrep()


def O(n, rep=None):
    return dg.p1_twist(n, rep)


@pytest.mark.parametrize("n,h0,h1", [(2, 3, 0), (0, 1, 0), (-1, 0, 0), (-2, 0, 1), (-4, 0, 3)])
def test_twist_cohomology(P1, n, h0, h1):
    table = cech.cohomology(O(n, P1), cech.P1_COVER)
    assert (table.h(0), table.h(1)) == (h0, h1)
    assert table.warnings == ()


def test_cohomology_in_a_window(P1):
    table = cech.cohomology(O(-2, P1), cech.P1_COVER, (-4, 4))
    assert table.per_degree[-1] == (0, 1)
    assert sum(h1 for _, h1 in table.per_degree.values()) == 1


def test_resolution_verifies(P1):
    for n in (-3, 0, 3):
        assert cech.cech_resolution(O(n, P1), cech.P1_COVER).verify()


@pytest.mark.parametrize("m,n,dim", [(1, 0, 0), (0, 0, 1), (-1, 2, 4)])
def test_hom_twists_examples(P1, m, n, dim):
    th = cech.hom_twists(m, n, P1)
    assert th.dim == dim and th.agree


def test_hom_twists_agree_both_ways(P1):
    for m in range(-4, 5):
        for n in range(-4, 5):
            th = cech.hom_twists(m, n, P1)
            assert th.agree, (m, n)
            assert th.dim == max(n - m + 1, 0)


def test_global_sections_two_ways(P1):
    for n in (-1, 0, 2):
        M = O(n, P1)
        assert cech.global_sections(M, (-3, 3)) == cech.sections_via_hom(M, (-3, 3))
    assert cech.global_sections(O(2, P1), (-4, 4)).total == 3


def test_global_sections_need_a_window(P1):
    with pytest.raises(WindowRequired):
        cech.global_sections(O(0, P1))


# -- inverse and direct images ------------------------------------------------------------------------------


@pytest.mark.parametrize("x", ["u0", "u1", "u01"])
@pytest.mark.parametrize("n", [-2, 0, 3])
def test_adjunction_triangles(P1, x, n):
    M = O(n, P1)
    N = cech.inverse_image(x, M)
    assert cech.adjunction_witness(x, M, N).ok


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_adjunction_on_random_sums(seed):
    rng = random.Random(seed)
    P1 = dg.p1_ringrep()
    M = dg.direct_sum([O(rng.randint(-3, 3), P1) for _ in range(rng.randint(1, 2))])[0]
    x = rng.choice(["u0", "u1", "u01"])
    N = dg.p1_twist(rng.randint(-2, 2), P1)[x]
    assert cech.adjunction_witness(x, M, N).ok


def test_unit_at_u1_is_a_power_of_x(P1):
    n = 3
    eta = cech.unit_map("u0", O(n, P1))
    assert eta.validate().ok
    # at u1 the unit is O(n)(u1) -> O(n)(u01) written in the u0 generator
    assert eta.maps["u1"][0, 0].terms == ((n, 1),)
    assert eta.maps["u0"] == RingMatrix.identity(P1.ring("u0"), 1)


def test_unit_needs_quasicoherence(P1):
    with pytest.raises(InvalidObject):
        cech.unit_map("u0", dg.projective_generator(P1, "u0"))


def test_direct_image_is_quasicoherent_and_inverse(P1):
    for x in ("u0", "u1", "u01"):
        N = O(1, P1)[x]
        D = cech.direct_image(x, N, P1)
        assert dg.validate(D).ok and dg.is_quasicoherent(D)
        assert cech.vertexwise_flat(D)
        assert cech.inverse_image(x, D) == N


def test_direct_image_checks_the_ring(P1):
    from qcmodel.errors import UnsupportedRing

    with pytest.raises(UnsupportedRing):
        cech.direct_image("u0", FPModule.free(FIELD, 1), P1)


# -- covers -------------------------------------------------------------------------------------------------


def test_invalid_covers(P1):
    S = cech.semilattice_rep(P1)
    for cover in [(), ("u0",), ("u0", "u0"), ("u0", "zz")]:
        with pytest.raises(CoverInvalid):
            cech.check_cover(S, cover)
    assert cech.check_cover(S, ("u0", "u1")) == {"u0": 0, "u1": 1, "u01": 0}


def test_single_element_cover():
    R = dg.constant_rep(dg.FinitePoset.chain(1))
    M = dg.DiagModule(R, {"0": FPModule.free(FIELD, 2)})
    C = cech.cech_resolution(M, ("0",))
    assert C.length == 0 and C.verify()
    assert cech.cohomology(M, ("0",)).dims == (2,)


def test_zero_module(P1):
    table = cech.cohomology(dg.zero_module(P1), cech.P1_COVER)
    assert all(v == 0 for v in table.dims)


# -- locally projective modules --------------------------------------------------------------------------------


def test_twists_are_locally_projective(P1):
    assert cech.locally_projective(dg.direct_sum([O(-1, P1), O(2, P1)])[0])


def test_cokernel_of_a_section_is_not_locally_projective(P1):
    # a section of O(1) vanishes at one point, so the cokernel is torsion there
    s = dg.p1_twist_map(-1, 0, [1, 1], P1)
    C, _ = dg.cokernel(s)
    rep = cech.locally_projective(C)
    assert not rep and rep.failing_vertex is not None


def test_twist_generation(P1):
    M = O(2, P1)
    assert cech.twist_generation_check(M, [0])
    assert not cech.twist_generation_check(M, [3])
    assert cech.twist_generation_check(dg.zero_module(P1), [])
