import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetacorr.cyclotomic import CycVal
from thetacorr.local_field import FieldParams, chi
from thetacorr.quaternion import QuatNum
from thetacorr.sampling import rand_D1, rand_ext, rand_SL2
from thetacorr.theta_checks import rand_in_lattice, rand_w_dual, rand_x
from thetacorr.theta_lattice import (
    LATTICE_A, G1Action, G2Action, VVec, YFunc, action_scalar, closed_form, dual_lattice, expected_A_dual,
    extract_b1, extract_b2, form_V, form_W, form_WW, heisenberg_model, in_HM, lattice_from, match_check,
    tensor, weil_HM_action, y_proportional,
)

F = FieldParams(3, N=12)
seeds = st.integers(0, 2**32)


def vvec(rng):
    return VVec(rand_ext(F, rng), rand_ext(F, rng))


def big(rng, L=LATTICE_A):
    return rand_in_lattice(F, L, rng)


# ---- lattices


def test_dual_of_A():
    As = dual_lattice(LATTICE_A, F)
    assert As == expected_A_dual() == lattice_from(0, (0, -1))
    assert dual_lattice(As, F) == LATTICE_A


def test_A_is_a_good_lattice():
    As = dual_lattice(LATTICE_A, F)
    assert As.scale(1) <= LATTICE_A < As
    assert LATTICE_A.index_in(As) == 4  # |A*/A| = q^4


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_dual_of_scaled_lattice(k):
    As = dual_lattice(LATTICE_A, F)
    Mk = LATTICE_A.scale(k)
    assert dual_lattice(Mk, F) == As.scale(-k)
    assert dual_lattice(dual_lattice(Mk, F), F) == Mk


def test_dual_is_the_chi_integral_annihilator():
    rng = random.Random(0)
    As = dual_lattice(LATTICE_A, F)
    for _ in range(20):
        a, s = big(rng), big(rng, As)
        assert chi(form_WW(a, s)).is_one()
    # a vector just outside A* pairs nontrivially with some basis vector of A
    outside = big(rng, As.scale(-1))
    if not As.contains(outside):
        assert any(not chi(form_WW(outside, g)).is_one() for g in LATTICE_A.generators(F))


# ---- forms


@given(seeds)
def test_form_is_alternating_and_factors_on_tensors(seed):
    rng = random.Random(seed)
    x, y = big(rng), big(rng)
    assert form_WW(x, x).is_zero()
    assert form_WW(x, y) == -form_WW(y, x)
    v, v2, w, w2 = vvec(rng), vvec(rng), rand_w_dual(F, rng), rand_w_dual(F, rng)
    assert form_WW(tensor(v, w), tensor(v2, w2)) == (form_V(v, v2) * form_W(w, w2).conj()).trace()


@given(seeds)
def test_dual_pair_actions_preserve_the_form_and_commute(seed):
    rng = random.Random(seed)
    g1 = G1Action(rand_SL2(F, rng, 1))
    g2 = G2Action(rand_D1(F, rng))
    x, y = big(rng), big(rng)
    for g in (g1, g2):
        assert form_WW(g.apply(x), g.apply(y)) == form_WW(x, y)
    lhs, rhs = g1.apply(g2.apply(x)), g2.apply(g1.apply(x))
    assert all((a - b).is_zero() for a, b in zip(lhs.x, rhs.x))


# ---- finite Heisenberg model


def test_heisenberg_model_dimension_and_center():
    H = heisenberg_model(F)
    assert H.dim == 9
    for t in range(3):
        assert H.central(t).scalar() == H.chi_prime(t) == CycVal(3, 1, t)


def test_heisenberg_commutation_relations_sampled():
    H = heisenberg_model(FieldParams(5))
    rng = random.Random(1)
    els = H.elements()
    pairs = [(rng.choice(els), rng.choice(els)) for _ in range(300)]
    assert H.commutation_check(pairs)["failures"] == 0


def test_residue_pairing_matches_chi_of_the_form():
    H = heisenberg_model(F)
    As = dual_lattice(LATTICE_A, F)
    rng = random.Random(3)
    for _ in range(30):
        a, b = big(rng, As), big(rng, As)
        assert CycVal(3, 1, H.pairing(H.reduce(a), H.reduce(b))) == chi(form_WW(a, b))


def test_rho_A_is_trivial_on_A():
    H = heisenberg_model(F)
    rng = random.Random(4)
    assert all(H.rho_A(big(rng)).is_identity() for _ in range(10))


# ---- the Y-space and the action of H_M


def test_y_functions_are_covariant_translates():
    H = heisenberg_model(F)
    As = dual_lattice(LATTICE_A, F)
    rng = random.Random(5)
    s = big(rng, As.scale(-1))
    f = YFunc(s, rand_x(H, rng))
    a = big(rng, As)
    g = YFunc(s + a, f.at(s + a, H, As))
    assert y_proportional(f, g, H, As)


@pytest.mark.parametrize("k", [1, 2])
def test_filtration_subgroups_lie_in_H_M(k):
    rng = random.Random(k)
    assert in_HM(G1Action(rand_SL2(F, rng, k + 1)), k, F)
    assert in_HM(G2Action(rand_D1(F, rng, 2 * k + 2)), k, F)
    assert not in_HM(G1Action(F_mat(3)), k, F)


def F_mat(v):
    from thetacorr.unitary_groups import Mat2

    return Mat2.of(F, 1, F.num(1) * F.num(3) ** -v, 0, 1)


def test_action_outside_H_M_is_rejected():
    H = heisenberg_model(F)
    rng = random.Random(8)
    f = YFunc(big(rng, dual_lattice(LATTICE_A, F).scale(-1)), rand_x(H, rng))
    with pytest.raises(ValueError):
        weil_HM_action(G1Action(F_mat(3)), f, 1, H)


def test_deep_elements_act_trivially():
    H = heisenberg_model(F)
    As = dual_lattice(LATTICE_A, F)
    rng = random.Random(6)
    f = YFunc(big(rng, As.scale(-1)), rand_x(H, rng))
    for act in (G1Action(rand_SL2(F, rng, 3)), G2Action(rand_D1(F, rng, 6))):
        assert weil_HM_action(act, f, 1, H).value == f.value


# ---- matching elements


def test_matching_element_examples():
    one, zero = F.ext(1), F.ext(0)
    rng = random.Random(7)
    w = rand_w_dual(F, rng)
    r = match_check(VVec(one, zero), w, 1)
    assert r["det_b1"].is_zero() and r["N_b2"].is_zero() and r["det_eq_norm"]
    for k in (1, 2):
        w2 = QuatNum(w.a, w.c) * F.num(3) ** -k
        assert w2.norm() == w.norm() * F.num(3) ** (-2 * k)
        b2 = extract_b2(VVec(one, F.alpha), w2, k)
        assert b2 == QuatNum.of(F, F.alpha * w2.norm() * 3)


@given(seeds, st.sampled_from([1, 2]))
def test_det_b1_equals_norm_b2(seed, k):
    rng = random.Random(seed)
    v, w = vvec(rng), rand_w_dual(F, rng)
    r = match_check(v, w, k)
    assert r["det_eq_norm"] and r["closed_form"] and r["charpoly"]
    assert r["b1_traceless"] and r["b2_traceless"] and r["b1_F_matrix"]
    assert closed_form(v, w, k) == r["det_b1"]


@given(seeds)
def test_action_scalar_is_psi_b1(seed):
    from thetacorr.beta_characters import psi_b

    rng = random.Random(seed)
    k = 1
    v, w = vvec(rng), rand_w_dual(F, rng)
    s = tensor(VVec(v.a * F.num(3) ** -k, v.b * F.num(3) ** -k), w)
    h = rand_SL2(F, rng, k + 1)
    assert action_scalar(G1Action(h), s) == psi_b(extract_b1(v, w, k), h)


def test_translating_y_by_A_gives_a_proportional_function():
    from thetacorr.theta_lattice import basis_x, y_func

    H = heisenberg_model(F)
    As = dual_lattice(LATTICE_A, F)
    rng = random.Random(12)
    w = big(rng, As.scale(-1))
    x = rand_x(H, rng)
    for _ in range(5):
        assert y_proportional(y_func(w + big(rng), x), y_func(w, x), H, As)
    # translation by A* alone is not enough: rho_A moves a basis vector off its line
    a = next(g for g in As.generators(F) if not LATTICE_A.contains(g) and not H.rho_A(g).scalar())
    e0 = basis_x(3, H.dim, 0)
    assert not y_proportional(y_func(w + a, e0), y_func(w, e0), H, As)
