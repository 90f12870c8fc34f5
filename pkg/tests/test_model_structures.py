import pytest
from _gen import chain_quiver

from qcmodel import complexes as cx
from qcmodel import model_structures as ms
from qcmodel import reps
from qcmodel.errors import InvalidObject, UniverseTooLarge


@pytest.fixture(scope="module")
def A2():
    Q = chain_quiver(2)
    S0, S1, P0 = reps.simple(Q, "0"), reps.simple(Q, "1"), reps.projective(Q, "0")
    return {"Q": Q, "Z": reps.zero_rep(Q), "S0": S0, "S1": S1, "P0": P0}


def test_projective_triple_verifies(A2):
    U = [A2["Z"], A2["S0"], A2["S1"], A2["P0"], reps.direct_sum([A2["P0"], A2["S1"]])[0]]
    rep = ms.verify_triple(ms.projective_triple(A2["Q"]), U)
    assert rep.ok, [c.axiom for c in rep.failures()]
    assert rep.universe_size == len(U)


def test_injective_triple_verifies(A2):
    U = [A2["Z"], A2["S0"], A2["S1"], A2["P0"]]
    assert ms.verify_triple(ms.injective_triple(A2["Q"]), U).ok


def test_even_dimension_triple_fails(A2):
    U = [A2["Z"], A2["S0"], A2["S1"], A2["P0"]]
    rep = ms.verify_triple(ms.even_dimension_triple(), U, completeness=False)
    assert not rep.ok
    assert rep.failures()


def test_universe_cap(A2):
    with pytest.raises(UniverseTooLarge):
        ms.verify_triple(ms.projective_triple(A2["Q"]), [A2["S0"]] * 5, cap=4)


def test_classify_identity(A2):
    t = ms.projective_triple(A2["Q"])
    c = ms.classify(reps.identity(A2["S0"]), t)
    assert all(c.flags().values())


def test_classify_inclusion(A2):
    # S1 -> P0 is mono with cokernel S0, which is not projective
    t = ms.projective_triple(A2["Q"])
    inc = reps.hom_basis(A2["S1"], A2["P0"])[0]
    c = ms.classify(inc, t)
    assert not c.cofibration and not c.fibration
    assert c.weak_equivalence


def test_factorize_to_zero(A2):
    t = ms.projective_triple(A2["Q"])
    h = reps.RepMap(A2["S0"], A2["Z"])
    for which in ("cof-tfib", "tcof-fib"):
        fac = ms.factorize(h, t, which)
        assert reps.compose(fac.g, fac.f) == h
        assert reps.is_mono(fac.f) and reps.is_epi(fac.g)
    fac = ms.factorize(h, t, "cof-tfib")
    assert reps.is_projective(reps.cokernel(fac.f)[0])
    with pytest.raises(ValueError):
        ms.factorize(h, t, "other")


def test_factorize_needs_pairs(A2):
    with pytest.raises(InvalidObject):
        ms.factorize(reps.identity(A2["S0"]), ms.even_dimension_triple())


def test_homotopic_equal_maps(A2):
    t = ms.projective_triple(A2["Q"])
    f = reps.identity(A2["P0"])
    assert ms.homotopic(f, f, t).relation == "both"


def test_maps_through_projectives_are_null(A2):
    # P0 -> S0 factors through the projective P0, so it is null
    t = ms.projective_triple(A2["Q"])
    f = reps.hom_basis(A2["P0"], A2["S0"])[0]
    assert ms.homotopic(f, reps.zero_map(A2["P0"], A2["S0"]), t).relation == "both"
    assert ms.homotopy_hom(A2["S0"], A2["S1"], t).dim == 0


def test_nonparallel_maps_rejected(A2):
    t = ms.projective_triple(A2["Q"])
    with pytest.raises(InvalidObject):
        ms.homotopic(reps.identity(A2["S0"]), reps.identity(A2["S1"]), t)


def test_null_homotopy_on_complexes():
    G = cx.grid(chain_quiver(1).poset, -1, 1)
    k = reps.simple(cx.poset_quiver(G.poset), "0")
    D = cx.disc(k, 0, G)
    # the identity of a disc is null-homotopic
    assert cx.is_null_homotopic(reps.identity(D)) is not None
    S = cx.sphere(k, 0, G)
    assert cx.is_null_homotopic(reps.identity(S)) is None
    t = ms.injective_complex_model(G)
    assert ms.homotopic(reps.identity(D), reps.zero_map(D, D), t).relation != "neither"


def test_suspension_and_cofiber_sequence(A2):
    t = ms.injective_triple(A2["Q"])
    SX, first = ms.suspension(A2["S1"], t)
    assert first.is_valid()
    assert reps.is_isomorphic(SX, A2["S0"])
    u = reps.hom_basis(A2["S1"], A2["P0"])[0]
    seq = ms.cofiber_sequence(u, t)
    assert seq.validate(t) == []


def test_replacements(A2):
    t = ms.projective_triple(A2["Q"])
    CX, p = ms.cofibrant_replacement(A2["S0"], t)
    assert reps.is_projective(CX) and reps.is_epi(p)
    t = ms.injective_triple(A2["Q"])
    FY, i = ms.fibrant_replacement(A2["S1"], t)
    assert reps.is_injective(FY) and reps.is_mono(i)


def test_frobenius(A2):
    U = [A2["Z"], A2["S0"], A2["S1"], A2["P0"]]
    assert ms.frobenius_check(ms.projective_triple(A2["Q"]), U) == []
