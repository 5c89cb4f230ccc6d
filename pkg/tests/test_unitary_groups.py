import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetacorr.local_field import FieldParams
from thetacorr.quaternion import QuatNum
from thetacorr.sampling import rand_D1, rand_E1, rand_ext, rand_SL2
from thetacorr.unitary_groups import (
    GrpElemU2, GrpElemU11, Mat2, central, embed_E_in_M2, filtration_member, hilbert90, is_in_group,
    section_d, sigma, sigma_prime,
)

F = FieldParams(3, N=12)
seeds = st.integers(0, 2**32)


def u11(rng, level=1):
    return GrpElemU11(rand_SL2(F, rng, level), rand_E1(F, rng))


def u2(rng, level=0):
    return GrpElemU2(rand_D1(F, rng, level), rand_E1(F, rng))


@given(seeds)
def test_iota_is_a_ring_embedding(seed):
    rng = random.Random(seed)
    x, y = rand_ext(F, rng), rand_ext(F, rng)
    assert embed_E_in_M2(x * y) == embed_E_in_M2(x) * embed_E_in_M2(y)
    assert embed_E_in_M2(x).det() == F.ext(x.norm())


@given(seeds)
def test_section_of_the_determinant(seed):
    lam = rand_E1(F, random.Random(seed))
    mu = hilbert90(lam)
    assert mu.valuation() == 0
    assert mu / mu.conj() == lam
    d = section_d(lam)
    assert d.det() == lam
    assert is_in_group("U11", d)


@given(seeds)
def test_u11_semidirect_product_matches_matrices(seed):
    rng = random.Random(seed)
    x, y, w = u11(rng), u11(rng), u11(rng)
    assert (x * y).mat() == x.mat() * y.mat()
    assert (x * y) * w == x * (y * w)
    assert is_in_group("U11", x.mat())
    assert (x * x.inv()) == GrpElemU11.identity(F)
    assert GrpElemU11.from_matrix(x.mat()) == x


@given(seeds)
def test_sigma_is_an_automorphism(seed):
    rng = random.Random(seed)
    lam, g, h = rand_E1(F, rng), rand_SL2(F, rng, 1), rand_SL2(F, rng, 1)
    assert sigma(lam, g * h) == sigma(lam, g) * sigma(lam, h)
    assert sigma(lam, g).det() == F.ext(1)
    assert sigma(lam, g).is_F()
    mu = rand_E1(F, rng)
    assert sigma(lam * mu, g) == sigma(lam, sigma(mu, g))


@given(seeds)
def test_u2_semidirect_product_matches_matrices(seed):
    rng = random.Random(seed)
    x, y = u2(rng), u2(rng)
    assert (x * y).mat() == x.mat() * y.mat()
    assert is_in_group("U2", x.mat())
    assert x * x.inv() == GrpElemU2.identity(F)
    assert GrpElemU2.from_matrix(x.mat()) == x


@given(seeds)
def test_sigma_prime_is_an_automorphism(seed):
    rng = random.Random(seed)
    lam, h, k = rand_E1(F, rng), rand_D1(F, rng), rand_D1(F, rng)
    assert sigma_prime(lam, h * k) == sigma_prime(lam, h) * sigma_prime(lam, k)
    assert sigma_prime(lam, h).norm() == 1


@given(seeds)
def test_central_copy_commutes(seed):
    rng = random.Random(seed)
    c, x = central(rand_E1(F, rng)), u11(rng, 0)
    assert c * x == x * c
    assert is_in_group("U11", c.mat())


def test_filtration_membership_levels():
    rng = random.Random(5)
    for r in (1, 2, 3):
        g = rand_SL2(F, rng, r)
        assert filtration_member("SL2_r", g, r)
        assert filtration_member("SL2_r_minus", g, r)
        assert filtration_member("K1_r", GrpElemU11(g, rand_E1(F, rng)), r)
        assert filtration_member("D1_r_semidirect", rand_D1(F, rng, r), r)
    g = Mat2.of(F, 1, 3, 0, 1)
    assert filtration_member("SL2_r", g, 1) and not filtration_member("SL2_r", g, 2)
    lower = Mat2.of(F, 1, 0, 3, 1)
    assert filtration_member("SL2_r_minus", lower, 1) and not filtration_member("SL2_r_minus", lower, 2)
    assert not filtration_member("SL2_r", Mat2.of(F, 2, 0, 0, 2), 1)
    with pytest.raises(ValueError):
        filtration_member("K3_r", g, 1)


def test_e1_times_deep_sl2_is_in_K1():
    rng = random.Random(11)
    for _ in range(10):
        x = GrpElemU11(rand_SL2(F, rng, 2), rand_E1(F, rng))
        assert filtration_member("K1_r", x, 2)
        assert filtration_member("K1_r", x.mat(), 2)
    assert not filtration_member("K1_r", GrpElemU11(Mat2.of(F, 1, 1, 0, 1), F.ext(1)), 1)


def test_right_multiplication_matrix_is_a_homomorphism():
    rng = random.Random(3)
    h, k = rand_D1(F, rng), rand_D1(F, rng)
    x, y = GrpElemU2(h, F.ext(1)), GrpElemU2(k, F.ext(1))
    assert (x * y).mat() == x.mat() * y.mat()
    assert (x * y).h == h * k
    assert GrpElemU2.identity(F).h == QuatNum.of(F, 1)
