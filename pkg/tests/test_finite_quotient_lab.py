import random
from fractions import Fraction

import pytest

from thetacorr.cyclotomic import CycNum, CycVal
from thetacorr.finite_quotient_lab import (
    ConjugacyClasses, FiniteQuotient, coset_counts, coset_reps, d1_quotient, d1_structure, double_cosets,
    e1_quotient, e1_sl2_set, induced_character, r_odd_lemma, semidirect, semidirect_double_cosets,
    sl2_quotient,
)
from thetacorr.local_field import FieldParams
from thetacorr.residues import Residues, closure


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (5, 1)])
def test_sl2_orders(p, k):
    # |SL2(Z/p^k)| = p^(3k) (1 - p^-2)
    assert sl2_quotient(p, 0, k).order == p ** (3 * k - 2) * (p * p - 1)


def test_filtration_quotient_orders():
    p = 3
    assert sl2_quotient(p, 1, 2).order == p**3
    assert sl2_quotient(p, 1, 3).order == p**6
    assert e1_quotient(p, 0, 1).order == p + 1
    assert e1_quotient(p, 1, 3).order == p**2
    assert d1_quotient(p, 0, 1).order == p + 1
    assert d1_quotient(p, 1, 3).order == p**3  # q^2 from D1_1/D1_2, q from D1_2/D1_3
    assert d1_quotient(p, 0, 5).order == (p + 1) * p**6


def test_quotients_are_closed():
    assert sl2_quotient(3, 0, 1).is_closed()
    assert d1_quotient(3, 0, 3).is_closed()
    G = sl2_quotient(3, 1, 3)
    assert G.is_closed(samples=200, rng=random.Random(0))


def _brute_double_cosets(H, G, K):
    return {frozenset(G.mul(G.mul(h, x), k) for h in H.elements for k in K.elements) for x in G.elements}


def test_double_cosets_against_brute_force():
    R = Residues(3, 2, 1)
    G = sl2_quotient(3, 0, 1)
    upper = G.subgroup("U", [x for x in G.elements if x[2] == 0 and x[0] == 1])
    diag = G.subgroup("T", [x for x in G.elements if x[1] == 0 and x[2] == 0])
    borel = G.subgroup("B", [x for x in G.elements if x[2] == 0])
    for H, K in [(upper, upper), (borel, borel), (upper, diag), (diag, diag)]:
        dc = double_cosets(H, G, K)
        assert dc.count == len(_brute_double_cosets(H, G, K))
        assert sum(dc.sizes) == G.order
    assert double_cosets(borel, G, borel).count == 2  # Bruhat
    assert R.L == 1


def test_semidirect_reduction_against_full_double_cosets():
    # orbit count on the kernel equals the honest double-coset count in the semidirect groups
    p, n = 3, 2
    r = (n + 2) // 2
    R = Residues(p, 2, n + 1)
    A = e1_sl2_set(R, "E1", r - 1)
    C = e1_sl2_set(R, "E1", r)
    C0 = e1_sl2_set(R, "E1_0", r)
    GA, GC, GC0 = semidirect(R, A, "A"), semidirect(R, C, "C"), semidirect(R, C0, "C0")
    for SH, SK, H, K in [(C, C, GC, GC), (C, C0, GC, GC0), (C0, C0, GC0, GC0)]:
        assert semidirect_double_cosets(R, SH, A, SK).count == double_cosets(H, GA, K).count


def test_coset_counts_p3():
    checks = coset_counts(3)
    assert [c.computed for c in checks] == [3, 9, 3, 18, 9, 5]
    assert all(c.ok for c in checks)


def test_coset_counts_budget():
    from thetacorr.beta_characters import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        coset_counts(5, budget=1000)


@pytest.mark.parametrize("p", [3, 5])
def test_d1_mod_d1_1_is_cyclic(p):
    s = d1_structure(p)
    assert s["order"] == p + 1
    assert s["is_cyclic"]
    assert s["commutator_contains_D1_1"]
    R = Residues(p, FieldParams(p).z, 1)
    assert len(closure([s["generator"]], R.qmul, (1, 0, 0, 0))) == p + 1


def test_r_odd_lemma_small():
    s = r_odd_lemma(FieldParams(3, N=8), 4, samples=25, rng=random.Random(2))
    assert s["r"] == 3 and s["equal"] and s["contains"]
    assert s["factor1_in_E1"] == s["factor2_in_D1_r"] == s["factor3_in_D1_n+1"] == 25
    with pytest.raises(ValueError):
        r_odd_lemma(FieldParams(3), 2)


# ---- characters on SL2(F_3)


@pytest.fixture(scope="module")
def sl2_f3():
    G = sl2_quotient(3, 0, 1)
    return G, ConjugacyClasses(G)


def test_conjugacy_classes_of_sl2_f3(sl2_f3):
    G, cls = sl2_f3
    assert G.order == 24
    assert len(cls) == 7
    assert sorted(cls.sizes) == [1, 1, 4, 4, 4, 4, 6]


def test_induced_characters_obey_frobenius(sl2_f3):
    G, cls = sl2_f3
    one = G.subgroup("1", [G.identity])
    reg = induced_character({G.identity: CycVal(3)}, one, G, cls)
    assert reg.degree().rational() == 24
    assert reg.inner(reg).rational() == 24
    U = G.subgroup("U", [x for x in G.elements if x[2] == 0 and x[0] == 1])
    triv = induced_character({u: CycVal(3) for u in U.elements}, U, G, cls)
    unit = induced_character({g: CycVal(3) for g in G.elements}, G, G, cls)
    assert triv.degree().rational() == len(coset_reps(G, U)) == 8
    assert triv.inner(unit).rational() == 1
    psi = {u: CycVal(3, 1, u[1]) for u in U.elements}
    ind = induced_character(psi, U, G, cls)
    norm = ind.inner(ind).rational()
    assert norm is not None and norm.denominator == 1 and norm >= 1
    assert ind.is_integral()
    half = ind.scale(Fraction(1, 2))
    assert (half + half - ind).inner(unit) == CycNum(3)
