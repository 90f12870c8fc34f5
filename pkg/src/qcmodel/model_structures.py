"""Hovey triples (C, W, F) on categories of finite-dimensional representations.

A triple is described by three membership predicates and the two cotorsion
pairs (C, W n F) and (C n W, F) whose approximation sequences drive
factorizations, replacements and the homotopy relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from qcmodel import complexes as cx
from qcmodel import homotopy_algebra as ha
from qcmodel import reps
from qcmodel.errors import BudgetExceeded, FactorizationBudgetExceeded, InvalidObject, UniverseTooLarge
from qcmodel.reps import Rep, RepMap, compose

UNIVERSE_CAP = 12

Pred = Callable[[Rep], bool]


@dataclass
class HoveyTriple:
    C: Pred
    W: Pred
    F: Pred
    cof_pair: ha.CotorsionPair | None = None
    tcof_pair: ha.CotorsionPair | None = None
    name: str = "triple"
    budget: int | None = None

    def trivially_fibrant(self, X: Rep) -> bool:
        return self.W(X) and self.F(X)

    def trivially_cofibrant(self, X: Rep) -> bool:
        return self.C(X) and self.W(X)


def _and(p: Pred, q: Pred) -> Pred:
    return lambda X: p(X) and q(X)


# -- standard triples ----------------------------------------------------------------------------------


def projective_triple(quiver) -> HoveyTriple:
    """(projectives, all, all): both pairs are (Proj, all)."""
    pp = ha.projective_pair(quiver)
    every = lambda X: True
    return HoveyTriple(reps.is_projective, every, every, pp, pp, "proj-all-all")


def injective_triple(quiver) -> HoveyTriple:
    """(all, all, injectives): both pairs are (all, Inj)."""
    ip = ha.injective_pair(quiver)
    every = lambda X: True
    return HoveyTriple(every, every, reps.is_injective, ip, ip, "all-all-inj")


def complex_of_injectives(X: Rep) -> bool:
    return cx.is_complex_of(reps.is_injective, X)


def injective_complex_model(G: reps.ComplexQuiver) -> HoveyTriple:
    """(all, acyclic, complexes of injectives) on bounded complexes in the window G.

    (C, W n F) = (all, contractible complexes of injectives) is generated by the
    simples of the grid; (C n W, F) = (acyclic, complexes of injectives) by the
    discs D^n(S_i) with both degrees inside the window."""
    every = lambda X: True
    acyclic = cx.is_acyclic
    simples = tuple(reps.simple(G, v) for v in G.vertices)
    PQ = cx.poset_quiver(G.poset)
    discs = tuple(cx.disc(reps.simple(PQ, i), n, G) for n in range(G.lo, G.hi) for i in G.poset.labels)
    cof = ha.CotorsionPair(simples, every, _and(acyclic, complex_of_injectives), "all/contractible-injective")
    tcof = ha.CotorsionPair(discs, acyclic, complex_of_injectives, "acyclic/complexes-of-injectives")
    return HoveyTriple(every, acyclic, complex_of_injectives, cof, tcof, "injective-model")


def even_dimension_triple() -> HoveyTriple:
    every = lambda X: True
    return HoveyTriple(every, lambda X: X.total_dim() % 2 == 0, every, None, None, "all-even-all")


# -- verification --------------------------------------------------------------------------------------


@dataclass
class AxiomCheck:
    axiom: str
    passed: bool
    witness: object = None
    detail: str = ""


@dataclass
class TripleReport:
    checks: list
    universe_size: int
    note: str = "checked within the supplied universe only"

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def get(self, axiom: str) -> AxiomCheck:
        return next(c for c in self.checks if c.axiom == axiom)


def _extensions(a: Rep, c: Rep) -> list[ha.Conflation]:
    """The split extension and one witness per basis class of Ext^1(c, a)."""
    S, inj, proj = reps.direct_sum([a, c])
    out = [ha.Conflation(inj[0], proj[1])]
    out.extend(ha.ext1(c, a).witnesses)
    return out


def verify_triple(t: HoveyTriple, universe: Sequence[Rep], cap: int = UNIVERSE_CAP, completeness: bool = True) -> TripleReport:
    universe = list(universe)
    if len(universe) > cap:
        raise UniverseTooLarge(f"universe has {len(universe)} objects; the cap is {cap}")
    if not universe:
        return TripleReport([AxiomCheck(a, True, None, "vacuous") for a in ("retracts", "two-of-three", "cof-pair", "tcof-pair")], 0, "empty universe: every axiom holds vacuously")
    checks = []

    # retract closure of W, via the retracts X, Y of X + Y
    wit = None
    for k, X in enumerate(universe):
        for Y in universe[k:]:
            S, _, _ = reps.direct_sum([X, Y])
            if t.W(S) and not (t.W(X) and t.W(Y)):
                wit = (X, Y)
                break
        if wit:
            break
    checks.append(AxiomCheck("retracts", wit is None, wit, "W contains X + Y but not both summands" if wit else ""))

    # 2-out-of-3 for extensions
    wit = None
    for a in universe:
        for c in universe:
            for conf in _extensions(a, c):
                flags = (t.W(conf.left), t.W(conf.middle), t.W(conf.right))
                if sum(flags) == 2:
                    wit = conf
                    break
            if wit:
                break
        if wit:
            break
    checks.append(AxiomCheck("two-of-three", wit is None, wit, "exactly two terms of a conflation lie in W" if wit else ""))

    W_F = _and(t.W, t.F)
    C_W = _and(t.C, t.W)
    for label, (L, R), pair in (("cof-pair", (t.C, W_F), t.cof_pair), ("tcof-pair", (C_W, t.F), t.tcof_pair)):
        rep = ha.is_cotorsion_pair(L, R, universe)
        detail = ""
        if not rep.ok:
            detail = "orthogonality" if not rep.orthogonal else "maximality"
        checks.append(AxiomCheck(label, rep.ok, rep if not rep.ok else None, detail))
        if completeness:
            checks.append(_completeness(label, L, R, pair, universe, t.budget))
    return TripleReport(checks, len(universe))


def _completeness(label: str, L: Pred, R: Pred, pair, universe, budget) -> AxiomCheck:
    axiom = label + "-complete"
    if pair is None:
        return AxiomCheck(axiom, False, None, "no approximation constructor supplied")
    for X in universe:
        try:
            first = pair.preenvelope(X, budget)
            second = pair.precover(X, budget)
        except BudgetExceeded as e:
            return AxiomCheck(axiom, False, X, f"budget exceeded: {e}")
        if not (first.is_valid() and R(first.middle) and L(first.right)):
            return AxiomCheck(axiom, False, (X, first), "first approximation leaves the classes")
        if not (second.is_valid() and L(second.middle) and R(second.left)):
            return AxiomCheck(axiom, False, (X, second), "second approximation leaves the classes")
    return AxiomCheck(axiom, True)


# -- factorizations and classification ------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    f: RepMap
    g: RepMap
    kind: str

    @property
    def middle(self) -> Rep:
        return self.f.target


def _pair_or_fail(pair):
    if pair is None:
        raise InvalidObject("the triple has no approximation constructor for this factorization")
    return pair


def factorize(h: RepMap, t: HoveyTriple, which: str = "cof-tfib") -> Factorization:
    """h = g o f with (f, g) in (Cof, TFib) or (TCof, Fib)."""
    try:
        if which == "cof-tfib":
            return _factor_cof_tfib(h, t)
        if which == "tcof-fib":
            return _factor_tcof_fib(h, t)
    except BudgetExceeded as e:
        raise FactorizationBudgetExceeded(str(e), partial=e.partial) from e
    raise ValueError("which must be 'cof-tfib' or 'tcof-fib'")


def _factor_cof_tfib(h: RepMap, t: HoveyTriple) -> Factorization:
    pair = _pair_or_fail(t.cof_pair)
    X, Y = h.source, h.target
    if reps.is_mono(h) and t.C(reps.cokernel(h)[0]):
        return Factorization(h, reps.identity(Y), "cof-tfib")
    # X -> Y + B_X is an inflation; Y + B_X -> Y has kernel B_X in W n F
    first = pair.preenvelope(X, t.budget)
    S, inj, proj = reps.direct_sum([Y, first.middle])
    i = compose(inj[0], h) + compose(inj[1], first.i)
    Q, q = reps.cokernel(i)
    # pull the quotient back along a second approximation of it
    second = pair.precover(Q, t.budget)
    Yp, to_S, to_A = reps.pullback(q, second.d)
    f = ha.induced_into([to_S, to_A], [i, reps.zero_map(X, second.middle)])
    if f is None:
        raise InvalidObject("pullback does not receive the inflation")
    g = compose(proj[0], to_S)
    return Factorization(f, g, "cof-tfib")


def _factor_tcof_fib(h: RepMap, t: HoveyTriple) -> Factorization:
    pair = _pair_or_fail(t.tcof_pair)
    X, Y = h.source, h.target
    if reps.is_epi(h) and t.F(reps.kernel(h)[0]):
        return Factorization(reps.identity(X), h, "tcof-fib")
    second = pair.precover(Y, t.budget)
    S, inj, proj = reps.direct_sum([X, second.middle])
    d = compose(h, proj[0]) + compose(second.d, proj[1])
    K, k = reps.kernel(d)
    first = pair.preenvelope(K, t.budget)
    E, leg_S, leg_B = reps.pushout(k, first.i)
    g = ha.induced_from([leg_S, leg_B], [d, reps.zero_map(first.middle, Y)])
    if g is None:
        raise InvalidObject("pushout does not carry the deflation")
    f = compose(leg_S, inj[0])
    return Factorization(f, g, "tcof-fib")


@dataclass
class MorphismClassification:
    cofibration: bool
    trivial_cofibration: bool
    fibration: bool
    trivial_fibration: bool
    weak_equivalence: bool
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict:
        return {
            "cofibration": self.cofibration,
            "trivial_cofibration": self.trivial_cofibration,
            "fibration": self.fibration,
            "trivial_fibration": self.trivial_fibration,
            "weak_equivalence": self.weak_equivalence,
        }


def classify(h: RepMap, t: HoveyTriple) -> MorphismClassification:
    wit = {}
    mono, epi = reps.is_mono(h), reps.is_epi(h)
    cok = reps.cokernel(h)[0] if mono else None
    ker = reps.kernel(h)[0] if epi else None
    cof = mono and t.C(cok)
    tcof = cof and t.W(cok)
    fib = epi and t.F(ker)
    tfib = fib and t.W(ker)
    wit["cokernel"] = cok
    wit["kernel"] = ker
    fac = factorize(h, t, "cof-tfib")
    cf = reps.cokernel(fac.f)[0]
    weq = t.W(cf)
    wit["factorization"] = fac
    return MorphismClassification(cof, tcof, fib, tfib, weq, wit)


# -- homotopy -----------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class HomotopyResult:
    relation: str
    left_witness: RepMap | None
    right_witness: RepMap | None


def homotopic(f: RepMap, g: RepMap, t: HoveyTriple) -> HomotopyResult:
    """Right: f - g lifts along the (C n W, F)-precover of the target.
    Left: f - g extends along the (C, W n F)-preenvelope of the source."""
    if f.source != g.source or f.target != g.target:
        raise InvalidObject("homotopy is defined for parallel maps")
    diff = f - g
    X, Y = f.source, f.target
    right = left = None
    if diff.is_zero():
        z = reps.zero_map(X, Y)
        return HomotopyResult("both", z, z)
    second = _pair_or_fail(t.tcof_pair).precover(Y, t.budget)
    right = reps.solve_factorization(diff, second.d, "left")
    first = _pair_or_fail(t.cof_pair).preenvelope(X, t.budget)
    left = reps.solve_factorization(diff, first.i, "right")
    rel = {(True, True): "both", (True, False): "left", (False, True): "right", (False, False): "neither"}[(left is not None, right is not None)]
    return HomotopyResult(rel, left, right)


def cofibrant_replacement(X: Rep, t: HoveyTriple) -> tuple[Rep, RepMap]:
    """(CX, CX -> X), a trivial fibration from a cofibrant object."""
    if t.C(X):
        return X, reps.identity(X)
    fac = factorize(reps.RepMap(reps.zero_rep(X.quiver), X), t, "cof-tfib")
    return fac.middle, fac.g


def fibrant_replacement(Y: Rep, t: HoveyTriple) -> tuple[Rep, RepMap]:
    """(FY, Y -> FY), a trivial cofibration into a fibrant object."""
    if t.F(Y):
        return Y, reps.identity(Y)
    fac = factorize(reps.RepMap(Y, reps.zero_rep(Y.quiver)), t, "tcof-fib")
    return fac.middle, fac.f


@dataclass
class HomotopyHom:
    dim: int
    classes: list
    hom_dim: int
    null_rank: int
    CX: Rep
    FY: Rep


def homotopy_hom(X: Rep, Y: Rep, t: HoveyTriple) -> HomotopyHom:
    """Hom(CX, FY) modulo maps factoring through the (C, W n F)-preenvelope of CX."""
    CX, _ = cofibrant_replacement(X, t)
    FY, _ = fibrant_replacement(Y, t)
    H = reps.hom_basis(CX, FY)
    first = _pair_or_fail(t.cof_pair).preenvelope(CX, t.budget)
    null = [compose(h, first.i) for h in reps.hom_basis(first.middle, FY)]
    null = reps.complement_basis(null, []) if null else []
    classes = reps.complement_basis(H, null) if H else []
    return HomotopyHom(len(classes), classes, len(H), len(null), CX, FY)


def homotopy_class_equal(f: RepMap, g: RepMap, t: HoveyTriple) -> bool:
    return homotopic(f, g, t).relation != "neither"


# -- suspension and cofiber sequences ----------------------------------------------------------------------


def suspension(X: Rep, t: HoveyTriple) -> tuple[Rep, ha.Conflation]:
    """Sigma X := A_X from the fixed (C, W n F)-preenvelope 0 -> X -> B_X -> A_X -> 0."""
    first = _pair_or_fail(t.cof_pair).preenvelope(X, t.budget)
    return first.right, first


@dataclass
class CofiberSequence:
    u: RepMap
    v: RepMap
    w: RepMap
    top: ha.Conflation
    bottom: ha.Conflation

    def validate(self, t: HoveyTriple) -> list[str]:
        out = []
        if not self.top.is_valid():
            out.append("top row is not a conflation")
        if not self.bottom.is_valid():
            out.append("bottom row is not a conflation")
        if not t.W(self.top.middle):
            out.append("middle of the top row is not trivial")
        return out


def cofiber_sequence(u: RepMap, t: HoveyTriple) -> CofiberSequence:
    """X -u-> Y -v-> Z -w-> Sigma X with Z the pushout of Y <- X -> B_X."""
    SX, first = suspension(u.source, t)
    Z, v, leg_B = reps.pushout(u, first.i)
    w = ha.induced_from([v, leg_B], [reps.zero_map(u.target, SX), first.d])
    if w is None:
        raise InvalidObject("pushout does not map to the suspension")
    return CofiberSequence(u, v, w, first, ha.Conflation(v, w))


def frobenius_check(t: HoveyTriple, universe: Sequence[Rep]) -> list:
    """Objects of C n F n W must be Ext-projective and Ext-injective among C n F."""
    cf = [X for X in universe if t.C(X) and t.F(X)]
    bad = []
    for w in cf:
        if not t.W(w):
            continue
        for X in cf:
            if ha.ext1_dim(w, X) or ha.ext1_dim(X, w):
                bad.append((w, X))
    return bad
